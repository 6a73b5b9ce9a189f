"""Spectrum of the king-move Cayley graph and the bounds it gives.

The adjacency operator M joins x to x + y for every nonzero y in
{-1,0,1}^d.  Its eigenvectors are the characters chi_y(x) = exp(2 pi i y.x/n)
(coordinatewise for unequal sides) with eigenvalue
-1 + prod_j (1 + 2 cos(2 pi y_j / n_j)).  For a +-1 signing f the quadratic
form f^T M f is bounded below by lambda_min * N, which caps ordered pair
counts between the two sign classes and hence word counts.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .torus import Labeling, TorusShape
from .words import Word, require_admissible

FLOOR_SLACK = 1e-6
SCAN_LIMIT = 1 << 22
TIE_TOL = 1e-12


def cycle_factor(k: int, n: int) -> float:
    """1 + 2 cos(2 pi k / n), exact at angles that are multiples of pi/3 or pi/2."""
    q = Fraction(k % n, n)
    exact = {Fraction(0): 3.0, Fraction(1, 4): 1.0, Fraction(1, 2): -1.0, Fraction(3, 4): 1.0,
             Fraction(1, 3): 0.0, Fraction(2, 3): 0.0, Fraction(1, 6): 2.0, Fraction(5, 6): 2.0}
    if q in exact:
        return exact[q]
    return 1.0 + 2.0 * math.cos(2.0 * math.pi * k / n)


def cycle_factors(n: int) -> np.ndarray:
    return np.array([cycle_factor(k, n) for k in range(n)])


def eigenvalue(y, shape: TorusShape) -> float:
    """Eigenvalue of the character with frequency vector y."""
    return -1.0 + math.prod(cycle_factor(k, n) for k, n in zip(y, shape.dims))


def eigenvalue_by_multiplicity(y, n: int) -> float:
    """Same value for an n^d torus, grouped by how many coordinates equal each k."""
    b = Counter(int(k) % n for k in y)
    return -1.0 + math.prod(cycle_factor(k, n) ** bk for k, bk in sorted(b.items()))


def spectrum(shape: TorusShape) -> np.ndarray:
    """All N eigenvalues, indexed by frequency in storage order."""
    out = np.ones(1)
    for n in shape.dims:
        out = np.multiply.outer(out, cycle_factors(n)).reshape(-1)
    return out - 1.0


def lambda_min(shape: TorusShape) -> tuple[float, list[tuple[int, ...]]]:
    """Smallest eigenvalue and every frequency attaining it.

    Above SCAN_LIMIT points only frequencies built from per-coordinate extreme
    factors are examined; the value is still exact because the product is
    multilinear in the factors.
    """
    if shape.total_points <= SCAN_LIMIT:
        lam = spectrum(shape)
        best = float(lam.min())
        hits = np.flatnonzero(lam <= best + TIE_TOL)
        return best, [shape.point(int(i)) for i in hits]
    cands = []
    for n in shape.dims:
        f = cycle_factors(n)
        cands.append(sorted({int(np.argmin(f)), int(np.argmax(f))} |
                            {int(k) for k in np.flatnonzero(f == f.min())}))
    best = math.inf
    found: list[tuple[int, ...]] = []
    for y in itertools.product(*cands):
        v = eigenvalue(y, shape)
        if v < best - TIE_TOL:
            best, found = v, [y]
        elif v <= best + TIE_TOL:
            best = min(best, v)
            found.append(y)
    return best, found


# --- signings and the quadratic form ---------------------------------------

def signing(lab: Labeling, positive) -> np.ndarray:
    """+1 where the label is in ``positive``, -1 elsewhere."""
    pos = [i for i, c in enumerate(lab.alphabet) if c in set(positive)]
    return np.where(np.isin(lab.cells, pos), 1, -1).astype(np.int64)


def quadratic_form(f: np.ndarray, shape: TorusShape) -> int:
    """sum over ordered adjacent (x, x+y) of f(x) f(x+y), by neighbour sweep."""
    f = np.asarray(f, dtype=np.int64).reshape(-1)
    return int((f[:, None] * f[shape.neighbor_table]).sum())


def character_coefficients(f: np.ndarray, shape: TorusShape) -> np.ndarray:
    """a_y = (1/N) sum_x f(x) conj(chi_y(x)), shaped like the torus."""
    grid = np.asarray(f, dtype=float).reshape(shape.dims)
    return np.fft.fftn(grid) / shape.total_points


def character_coefficients_direct(f: np.ndarray, shape: TorusShape) -> np.ndarray:
    """Slow O(N^2) evaluation of the defining sum; reference for tests."""
    f = np.asarray(f, dtype=float).reshape(-1)
    xs = shape.coords()
    dims = np.array(shape.dims, dtype=float)
    phase = (xs[:, None, :] * xs[None, :, :] / dims).sum(axis=2)
    chars = np.exp(-2j * np.pi * phase)
    return (chars @ f / shape.total_points).reshape(shape.dims)


def character(y, shape: TorusShape) -> np.ndarray:
    xs = shape.coords()
    phase = (xs * (np.array(y) / np.array(shape.dims, dtype=float))).sum(axis=1)
    return np.exp(2j * np.pi * phase)


def spectral_expansion(f: np.ndarray, shape: TorusShape) -> float:
    """N * sum_y |a_y|^2 lambda_y, which equals f^T M f."""
    a = character_coefficients(f, shape).reshape(-1)
    return float(shape.total_points * np.sum(np.abs(a) ** 2 * spectrum(shape)))


# --- bounds ------------------------------------------------------------------

@dataclass(frozen=True)
class SpectralBound:
    pair_bound: float
    word_bound: int | None
    lambda_min: float
    exact_case: bool
    sharp: bool
    equality_possible: bool | None = None

    def to_json(self) -> dict:
        return {
            "pair_bound": self.pair_bound,
            "word_bound": self.word_bound,
            "lambda_min": self.lambda_min,
            "exact_case": self.exact_case,
            "sharp": self.sharp,
            "equality_possible": self.equality_possible,
        }


def pair_bound(shape: TorusShape, sharp: bool = False) -> SpectralBound:
    """Upper bound on ordered pairs between the two classes of any +-1 signing."""
    d, n_pts = shape.d, shape.total_points
    lam, _ = lambda_min(shape)
    exact = lam == -1.0 - 3 ** (d - 1)
    if sharp and not exact:
        value = ((3**d - 1) - lam) * n_pts / 4
    else:
        value = float(3 ** (d - 1) * n_pts)
    return SpectralBound(value, None, lam, exact, sharp)


def word_bound(w: Word, shape: TorusShape, sharp: bool = False) -> SpectralBound:
    require_admissible(w)
    pb = pair_bound(shape, sharp)
    wb = math.floor(pb.pair_bound / (w.r - 1) + FLOOR_SLACK)
    possible = any(n % w.period == 0 for n in shape.dims)
    return SpectralBound(pb.pair_bound, wb, pb.lambda_min, pb.exact_case, sharp, possible)


def exact_word_bound(w: Word, shape: TorusShape) -> Fraction:
    """3^(d-1) N / (r-1) as an exact rational; equality needs this to be attained."""
    return Fraction(3 ** (shape.d - 1) * shape.total_points, w.r - 1)


# --- eigensystem verification -----------------------------------------------

def apply_adjacency(v: np.ndarray, shape: TorusShape) -> np.ndarray:
    """M v by direct neighbour sweep."""
    return v[shape.neighbor_table].sum(axis=1)


def apply_tensor_form(v: np.ndarray, shape: TorusShape) -> np.ndarray:
    """((B + I)^{(x) d} - I) v via one cycle-graph sweep per axis."""
    grid = np.asarray(v).reshape(shape.dims)
    out = grid
    for ax in range(shape.d):
        out = out + np.roll(out, 1, axis=ax) + np.roll(out, -1, axis=ax)
    return (out - grid).reshape(-1)


def dense_adjacency(shape: TorusShape) -> np.ndarray:
    n_pts = shape.total_points
    m = np.zeros((n_pts, n_pts))
    rows = np.repeat(np.arange(n_pts), shape.direction_count)
    np.add.at(m, (rows, shape.neighbor_table.reshape(-1)), 1.0)
    return m


def verify_eigensystem(shape: TorusShape, limit: int = 10_000, dense_limit: int = 2048,
                       seed: int = 0) -> dict:
    """Residual check of every character against the closed-form eigenvalue.

    Also compares the neighbour sweep with the tensor-product form on every
    character plus a few random vectors and, for small tori, the closed-form
    spectrum with a dense symmetric eigensolver.
    """
    n_pts = shape.total_points
    if n_pts > limit:
        raise ValueError(f"torus has {n_pts} points, above the verification limit {limit}")
    lam = spectrum(shape)
    worst_res = 0.0
    worst_tensor = 0.0
    for idx in range(n_pts):
        y = shape.point(idx)
        chi = character(y, shape)
        mchi = apply_adjacency(chi, shape)
        worst_res = max(worst_res, float(np.max(np.abs(mchi - lam[idx] * chi))))
        worst_tensor = max(worst_tensor, float(np.max(np.abs(mchi - apply_tensor_form(chi, shape)))))
    rng = np.random.default_rng(seed)
    for _ in range(4):
        v = rng.standard_normal(n_pts)
        worst_tensor = max(worst_tensor, float(np.max(np.abs(
            apply_adjacency(v, shape) - apply_tensor_form(v, shape)))))

    d = shape.d
    lam_min, attaining = lambda_min(shape)
    report = {
        "dims": list(shape.dims),
        "points": n_pts,
        "max_residual": worst_res,
        "tensor_max_diff": worst_tensor,
        "lambda_max": float(lam.max()),
        "lambda_max_expected": 3**d - 1,
        "lambda_min": lam_min,
        "lambda_min_even": -1 - 3 ** (d - 1),
        "lambda_min_attaining": [list(y) for y in attaining],
        "any_even_side": any(n % 2 == 0 for n in shape.dims),
        "dense_max_diff": None,
    }
    if n_pts <= dense_limit:
        dense = np.linalg.eigvalsh(dense_adjacency(shape))
        report["dense_max_diff"] = float(np.max(np.abs(np.sort(dense) - np.sort(lam))))
    return report
