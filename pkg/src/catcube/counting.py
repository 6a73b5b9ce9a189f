"""Exact occurrence and ordered-pair counts on a labeled torus.

An occurrence of a word w of length r is a pair (x, y) of a start point and
a king-move direction with label(x + t*y) = w[t] for t = 0..r-1.  Every
(x, y) is counted, so a palindrome placed once is counted twice.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

import numpy as np

from .torus import Direction, Labeling, Point, TorusShape, all_directions
from .words import Word


@dataclass(frozen=True)
class OccurrenceCount:
    word_count: int
    by_direction: dict[Direction, int] | None = None


@lru_cache(maxsize=64)
def window_table(shape: TorusShape, length: int) -> np.ndarray:
    """(N * (3^d - 1), length) flat indices, rows ordered point-major then direction."""
    table = shape.progression_table(length).reshape(-1, length)
    table.setflags(write=False)
    return table


def word_codes(lab_alphabet: str, w: Word) -> np.ndarray | None:
    """Alphabet indices of w's letters, or None if some letter is missing."""
    try:
        return np.array([lab_alphabet.index(c) for c in w.letters], dtype=np.int64)
    except ValueError:
        return None


def match_mask(lab: Labeling, w: Word) -> np.ndarray:
    """Boolean (N, 3^d - 1) mask of the (x, y) pairs spelling w."""
    shape = lab.shape
    codes = word_codes(lab.alphabet, w)
    if codes is None:
        return np.zeros((shape.total_points, shape.direction_count), dtype=bool)
    windows = window_table(shape, w.r)
    hit = np.all(lab.cells[windows] == codes, axis=1)
    return hit.reshape(shape.total_points, shape.direction_count)


def count_word(lab: Labeling, w: Word, by_direction: bool = False) -> OccurrenceCount:
    if min(lab.shape.dims) < w.r:
        warnings.warn(f"side length below word length {w.r}; progressions wrap onto themselves",
                      stacklevel=2)
    mask = match_mask(lab, w)
    total = int(mask.sum())
    per_dir = None
    if by_direction:
        sums = mask.sum(axis=0)
        per_dir = {y: int(c) for y, c in zip(all_directions(lab.shape), sums)}
    return OccurrenceCount(total, per_dir)


def enumerate_occurrences(lab: Labeling, w: Word) -> list[tuple[Point, Direction]]:
    """Witnesses (x, y) in point-major, then direction, order."""
    dirs = all_directions(lab.shape)
    xs, js = np.nonzero(match_mask(lab, w))
    return [(lab.shape.point(int(x)), dirs[int(j)]) for x, j in zip(xs, js)]


def participation(lab: Labeling, w: Word) -> np.ndarray:
    """Number of occurrences of w each cell belongs to (as any of its r points)."""
    mask = match_mask(lab, w).reshape(-1)
    windows = window_table(lab.shape, w.r)[mask]
    return np.bincount(windows.reshape(-1), minlength=lab.shape.total_points)


def letter_mask(lab: Labeling, letters: Iterable[str]) -> np.ndarray:
    wanted = [i for i, c in enumerate(lab.alphabet) if c in set(letters)]
    return np.isin(lab.cells, wanted)


def count_pairs(lab: Labeling, first: Iterable[str], second: Iterable[str]) -> int:
    """Ordered pairs (x, x+y) with label(x) in ``first`` and label(x+y) in ``second``."""
    a = letter_mask(lab, first)
    b = letter_mask(lab, second)
    nbr = lab.shape.neighbor_table
    return int(np.count_nonzero(a[:, None] & b[nbr]))


def pair_count_matrix(lab: Labeling) -> np.ndarray:
    """k x k matrix of ordered adjacent letter-pair counts; sums to N * (3^d - 1)."""
    k = len(lab.alphabet)
    nbr = lab.shape.neighbor_table
    src = np.repeat(lab.cells.astype(np.int64), nbr.shape[1])
    dst = lab.cells[nbr.reshape(-1)].astype(np.int64)
    return np.bincount(src * k + dst, minlength=k * k).reshape(k, k)


def odd_even_pairs(lab: Labeling, w: Word) -> int:
    """Ordered adjacent pairs from an odd-position letter of w to an even-position one."""
    return count_pairs(lab, w.odd_letters, w.even_letters)
