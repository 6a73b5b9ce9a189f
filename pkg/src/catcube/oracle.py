"""Ground truth by enumeration at small shapes.

``brute_force`` scans every labeling over the word's letters,
``brute_force_pairs`` every A/non-A split, and ``constrained_extremal_scan``
only labelings that already have the structure an extremal labeling must
have (even-position letters on alternate hyperplanes, letters constant on
transverse parity classes).  Results never depend on the worker count: the
rank range is cut into fixed blocks and merged in rank order.
"""

from __future__ import annotations

import itertools
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .constructions import (ConstructionError, is_generalized_ps, transverse_classes,
                            valid_axes)
from .counting import window_table
from .spectral import SpectralBound, exact_word_bound, pair_bound, word_bound
from .torus import Labeling, TorusShape
from .words import Word, require_admissible

log = logging.getLogger(__name__)

SEARCH_GUARD = 10**8
ARGMAX_CAP = 10**5
BLOCKS = 64


class GuardError(ValueError):
    pass


@dataclass
class ExtremalReport:
    shape: TorusShape
    word: str
    alphabet: str
    mode: str
    max_count: int
    argmax_count: int | None
    argmax: list[Labeling] | None
    bound: SpectralBound
    sharp_bound: SpectralBound
    attained: bool
    theorem_equality: bool
    all_argmax_are_ps: bool | None
    labelings_scanned: int
    wall_time: float = field(default=0.0, compare=False)
    extra: dict = field(default_factory=dict)

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "dims": list(self.shape.dims),
            "word": self.word,
            "alphabet": self.alphabet,
            "mode": self.mode,
            "labelings_scanned": self.labelings_scanned,
            "max_count": self.max_count,
            "argmax_count": self.argmax_count,
            "argmax": None if self.argmax is None else [lab.letters() for lab in self.argmax],
            "bound": self.bound.to_json(),
            "sharp_bound": self.sharp_bound.to_json(),
            "attained": self.attained,
            "theorem_equality": self.theorem_equality,
            "all_argmax_are_ps": self.all_argmax_are_ps,
        }
        out.update(self.extra)
        if timing:
            out["wall_time"] = self.wall_time
        return out


def _decode(rank: int, n_cells: int, k: int) -> np.ndarray:
    cells = np.zeros(n_cells, dtype=np.uint8)
    for i in range(n_cells - 1, -1, -1):
        rank, cells[i] = divmod(rank, k)
    return cells


def _rank(cells: np.ndarray, k: int) -> int:
    r = 0
    for c in cells:
        r = r * k + int(c)
    return r


def _blocks(lo: int, hi: int, n: int) -> list[tuple[int, int]]:
    edges = np.linspace(lo, hi, min(n, hi - lo) + 1).astype(np.int64)
    edges[0], edges[-1] = lo, hi
    return [(int(a), int(b)) for a, b in zip(edges[:-1], edges[1:]) if b > a]


def _run_blocks(fn, blocks, workers: int):
    if workers <= 1:
        return [fn(b) for b in blocks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, blocks))


def _merge(results, cap: int):
    best = max(r[0] for r in results)
    n_best = 0
    ranks: list[int] = []
    for b, nb, rec in results:
        if b != best:
            continue
        n_best += nb
        room = cap - len(ranks)
        if room > 0:
            ranks.extend(int(x) for x in rec[:room])
    return best, n_best, ranks


def brute_force(w: Word, shape: TorusShape, values_only: bool = False, workers: int = 1,
                fix_first: bool = False, cap: int = ARGMAX_CAP) -> ExtremalReport:
    """Exact maximum of the occurrence count over all labelings by w's letters.

    ``fix_first`` (values-only) pins cell 0 to w's first letter; any labeling
    with an occurrence has a translate of that form, so the maximum is
    unchanged whenever it is positive.
    """
    t0 = time.perf_counter()
    alphabet = w.alphabet
    k, n_cells = len(alphabet), shape.total_points
    total = k**n_cells
    if total > SEARCH_GUARD:
        raise GuardError(
            f"{k}^{n_cells} = {total} labelings exceeds the guard {SEARCH_GUARD}; "
            f"largest feasible torus for {k} letters has {_frontier(k)} cells")
    windows = np.ascontiguousarray(window_table(shape, w.r), dtype=np.int64)
    codes = np.array([alphabet.index(c) for c in w.letters], dtype=np.int64)
    ptr, idx = _kernels.incidence(windows, n_cells)

    lo, hi = 0, total
    if fix_first:
        values_only = True
        lo = codes[0] * k ** (n_cells - 1)
        hi = lo + k ** (n_cells - 1)
    rec_cap = 1 if values_only else cap

    def run(block):
        a, b = block
        return _kernels.scan_block(a, b, n_cells, k, codes, windows, ptr, idx, rec_cap)

    results = _run_blocks(run, _blocks(lo, hi, BLOCKS), workers)
    best, n_best, ranks = _merge(results, rec_cap)

    argmax = None
    all_ps = None
    if not values_only:
        argmax = [Labeling(shape, alphabet, _decode(r, n_cells, k)) for r in ranks]
        if len(argmax) == n_best and w.admissible:
            all_ps = all(is_generalized_ps(lab, w).member for lab in argmax)
    return _report(w, shape, "values-only" if values_only else "full-argmax", best,
                   None if values_only else n_best, argmax, all_ps, hi - lo,
                   time.perf_counter() - t0)


def _frontier(k: int) -> int:
    n = 0
    while k ** (n + 1) <= SEARCH_GUARD:
        n += 1
    return n


def _report(w, shape, mode, best, n_best, argmax, all_ps, scanned, elapsed, extra=None):
    if w.admissible:
        bound = word_bound(w, shape)
        sharp = word_bound(w, shape, sharp=True)
        equal = best == exact_word_bound(w, shape)
    else:
        bound = sharp = SpectralBound(float("nan"), None, float("nan"), False, False)
        equal = False
    rep = ExtremalReport(shape, w.letters, w.alphabet, mode, int(best), n_best, argmax, bound,
                         sharp, bound.word_bound is not None and best == bound.word_bound,
                         bool(equal), all_ps, int(scanned), elapsed, extra or {})
    log.info("%s on %s: max %d (%d maximizers) in %.2fs", w, shape, best,
             -1 if n_best is None else n_best, elapsed)
    return rep


# --- pair maximization -------------------------------------------------------

def parity_stripe_masks(shape: TorusShape) -> list[int]:
    """Bitmasks (bit i = cell i) of the loci {x : x_k = e (mod 2)} for even sides."""
    coords = shape.coords()
    out = []
    for axis, n in enumerate(shape.dims):
        if n % 2:
            continue
        for e in (0, 1):
            sel = np.flatnonzero(coords[:, axis] % 2 == e)
            out.append(sum(1 << int(i) for i in sel))
    return sorted(out)


def _mask_string(mask: int, n_cells: int) -> str:
    return "".join("A" if (mask >> i) & 1 else "-" for i in range(n_cells))


def brute_force_pairs(shape: TorusShape, workers: int = 1) -> dict:
    """Max of #(A, non-A) ordered adjacent pairs over all 2^N loci of A."""
    t0 = time.perf_counter()
    n_cells = shape.total_points
    if 2**n_cells > SEARCH_GUARD:
        raise GuardError(f"2^{n_cells} signings exceeds the guard {SEARCH_GUARD}")
    nbr = np.ascontiguousarray(shape.neighbor_table, dtype=np.int64)
    best, n_best, masks = _kernels.scan_pairs(n_cells, nbr, ARGMAX_CAP)
    log.info("pairs on %s: max %d in %.2fs", shape, best, time.perf_counter() - t0)
    masks = sorted(int(m) for m in masks)
    stripes = parity_stripe_masks(shape)
    nominal = pair_bound(shape)
    sharp = pair_bound(shape, sharp=True)
    return {
        "dims": list(shape.dims),
        "signings_scanned": 2**n_cells,
        "max_pairs": int(best),
        "maximizer_count": int(n_best),
        "maximizers": [_mask_string(m, n_cells) for m in masks],
        "stripe_count": len(stripes),
        "maximizers_are_stripes": bool(stripes) and masks == stripes,
        "pair_bound": nominal.pair_bound,
        "sharp_pair_bound": sharp.pair_bound,
        "attained": best == nominal.pair_bound,
    }


# --- constrained census ------------------------------------------------------

CONSTRAINED_GUARD = 10**7


def constrained_extremal_scan(w: Word, shape: TorusShape, batch: int = 4096) -> ExtremalReport:
    """Census over labelings with the forced extremal structure.

    For every axis of even length and each parity e, even-position letters
    of w fill the hyperplanes x_axis = e (mod 2) and odd-position letters the
    others; each (transverse parity class, axis coordinate) block gets one
    letter.  Only maximizers within this subspace are found, so when full
    enumeration is out of reach the result is conditional on that structure.
    """
    t0 = time.perf_counter()
    require_admissible(w)
    if not valid_axes(w, shape):
        raise ConstructionError(f"no side of {shape} is a multiple of {w.period} (2r-2 for {w})")
    alphabet = w.alphabet
    k = len(alphabet)
    odd_codes = sorted(alphabet.index(c) for c in w.odd_letters)
    even_codes = sorted(alphabet.index(c) for c in w.even_letters)
    windows = window_table(shape, w.r)
    codes = np.array([alphabet.index(c) for c in w.letters], dtype=np.uint8)
    coords = shape.coords()

    best = -1
    found: dict[bytes, np.ndarray] = {}
    scanned = 0
    for axis in range(1, shape.d + 1):
        if shape.dims[axis - 1] % 2:
            continue
        classes = transverse_classes(shape, axis)
        moduli = np.array([2 if n % 2 == 0 else 1 for i, n in enumerate(shape.dims, 1) if i != axis],
                          dtype=np.int64)
        trans = np.delete(coords, axis - 1, axis=1) % moduli
        class_of = np.array([classes.index(tuple(t)) for t in trans], dtype=np.int64)
        h = coords[:, axis - 1]
        block_of = class_of * shape.dims[axis - 1] + h
        n_blocks = len(classes) * shape.dims[axis - 1]
        for parity in (0, 1):
            block_h = np.arange(n_blocks) % shape.dims[axis - 1]
            options = [even_codes if hh % 2 == parity else odd_codes for hh in block_h]
            size = int(np.prod([len(o) for o in options], dtype=object))
            if scanned + size > CONSTRAINED_GUARD:
                raise GuardError(f"constrained census exceeds {CONSTRAINED_GUARD} labelings")
            scanned += size
            combos = itertools.product(*options)
            while True:
                chunk = np.array(list(itertools.islice(combos, batch)), dtype=np.uint8)
                if chunk.size == 0:
                    break
                cells = chunk[:, block_of]
                counts = np.all(cells[:, windows] == codes, axis=2).sum(axis=1)
                top = int(counts.max())
                if top > best:
                    best = top
                    found.clear()
                if top == best:
                    for row in cells[counts == best]:
                        found.setdefault(row.tobytes(), row.copy())

    ordered = sorted(found.values(), key=lambda c: _rank(c, k))
    argmax = [Labeling(shape, alphabet, c) for c in ordered]
    matches = [is_generalized_ps(lab, w) for lab in argmax]
    nonuniform = sum(1 for m in matches if m.member and len({p for _, p in m.params.phases}) > 1)
    extra = {
        "conditional": True,
        "ps_members_among_maximizers": sum(m.member for m in matches),
        "nonuniform_phase_maximizers": nonuniform,
        "phase_freedom_survives": nonuniform > 0,
    }
    return _report(w, shape, "constrained", best, len(argmax), argmax,
                   all(m.member for m in matches), scanned, time.perf_counter() - t0, extra)
