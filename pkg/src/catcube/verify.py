"""Cross-module identity checks on seeded random labelings."""

from __future__ import annotations

import numpy as np

from .counting import count_pairs, count_word, pair_count_matrix
from .spectral import (character_coefficients, pair_bound, quadratic_form, signing,
                       spectral_expansion, verify_eigensystem)
from .torus import Labeling, TorusShape
from .words import Word

PARSEVAL_TOL = 1e-9
EXPANSION_TOL = 1e-6
EIGEN_TOL = 1e-9

CAT = Word("CAT")
LION = Word("LION")


def _subword_ok(lab: Labeling, w: Word) -> tuple[bool, int]:
    """(r-1) #(w) <= #(odd letter, even letter); returns the slack."""
    slack = count_pairs(lab, w.odd_letters, w.even_letters) - (w.r - 1) * count_word(lab, w).word_count
    return slack >= 0, slack


def run_identity_suite(shape: TorusShape, trials: int, seed: int,
                       eigen_limit: int = 10_000) -> dict:
    rng = np.random.default_rng(seed)
    n_pts, d = shape.total_points, shape.d
    degree_total = (3**d - 1) * n_pts
    sharp = pair_bound(shape, sharp=True).pair_bound
    nominal = pair_bound(shape).pair_bound

    quad_fail = pair_total_fail = sym_fail = sub_fail = bound_fail = 0
    worst_parseval = worst_expansion = 0.0
    min_sub_slack = None
    max_pairs = 0
    check_lion = min(shape.dims) >= LION.r
    for _ in range(trials):
        lab = Labeling(shape, "CAT", rng.integers(0, 3, n_pts))
        f = signing(lab, "A")
        q = quadratic_form(f, shape)
        pairs = count_pairs(lab, "A", "CT")
        quad_fail += degree_total - q != 4 * pairs
        max_pairs = max(max_pairs, pairs)
        bound_fail += pairs > sharp + 1e-9

        a = character_coefficients(f, shape)
        worst_parseval = max(worst_parseval, abs(float(np.sum(np.abs(a) ** 2)) - 1.0))
        worst_expansion = max(worst_expansion, abs(q - spectral_expansion(f, shape)))

        mat = pair_count_matrix(lab)
        pair_total_fail += int(mat.sum()) != degree_total
        sym_fail += not np.array_equal(mat, mat.T)

        ok, slack = _subword_ok(lab, CAT)
        if check_lion:
            lion = Labeling(shape, "LION", rng.integers(0, 4, n_pts))
            ok2, slack2 = _subword_ok(lion, LION)
            ok, slack = ok and ok2, min(slack, slack2)
        sub_fail += not ok
        min_sub_slack = slack if min_sub_slack is None else min(min_sub_slack, slack)

    identities = {
        "quadratic_form": {"pass": quad_fail == 0, "failures": quad_fail, "exact": True},
        "parseval": {"pass": worst_parseval < PARSEVAL_TOL, "worst_residual": worst_parseval,
                     "tolerance": PARSEVAL_TOL},
        "spectral_expansion": {"pass": worst_expansion < EXPANSION_TOL,
                               "worst_residual": worst_expansion, "tolerance": EXPANSION_TOL},
        "pair_total": {"pass": pair_total_fail == 0, "failures": pair_total_fail, "exact": True},
        "pair_symmetry": {"pass": sym_fail == 0, "failures": sym_fail, "exact": True},
        "subword_inequality": {"pass": sub_fail == 0, "failures": sub_fail,
                               "min_slack": min_sub_slack, "words": ["CAT"] + (["LION"] if check_lion else [])},
        "pair_bound": {"pass": bound_fail == 0, "failures": bound_fail, "max_pairs_seen": max_pairs},
    }
    if n_pts <= eigen_limit:
        eig = verify_eigensystem(shape, limit=eigen_limit)
        identities["eigenvectors"] = {"pass": eig["max_residual"] < EIGEN_TOL,
                                      "worst_residual": eig["max_residual"], "tolerance": EIGEN_TOL}
        identities["tensor_identity"] = {"pass": eig["tensor_max_diff"] < EIGEN_TOL,
                                         "worst_residual": eig["tensor_max_diff"], "tolerance": EIGEN_TOL}
    return {
        "dims": list(shape.dims),
        "trials": trials,
        "seed": seed,
        "identities": identities,
        "all_pass": all(v["pass"] for v in identities.values()),
        "nominal_pair_bound": nominal,
        "sharp_pair_bound": sharp,
        "sharp_below_nominal": sharp < nominal,
    }
