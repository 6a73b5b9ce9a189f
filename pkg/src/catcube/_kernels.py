"""Compiled inner loops for exhaustive scans and local search.

Labelings are enumerated as base-K odometers over the flat cell array with
cell N-1 as the fastest digit, so rank -> cells is a plain base-K expansion.
After each odometer step only the windows touching the changed suffix of
cells are re-evaluated.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def _window_hit(cells, windows, codes, w):
    r = codes.shape[0]
    for t in range(r):
        if cells[windows[w, t]] != codes[t]:
            return 0
    return 1


@njit(cache=True, nogil=True)
def scan_block(start, stop, n_cells, k, codes, windows, inc_ptr, inc_idx, cap):
    """Scan ranks [start, stop); return (best, n_best, recorded ranks).

    ``inc_ptr``/``inc_idx`` is a CSR list of the windows incident to each
    cell.  At most ``cap`` maximizer ranks are kept; n_best is always exact.
    """
    cells = np.zeros(n_cells, dtype=np.int64)
    rem = start
    for i in range(n_cells - 1, -1, -1):
        cells[i] = rem % k
        rem //= k

    n_win = windows.shape[0]
    hit = np.zeros(n_win, dtype=np.int64)
    count = 0
    for w in range(n_win):
        hit[w] = _window_hit(cells, windows, codes, w)
        count += hit[w]

    stamp = np.zeros(n_win, dtype=np.int64)
    best = -1
    n_best = 0
    rec = np.empty(cap, dtype=np.int64)
    step = 0
    rank = start
    while True:
        if count > best:
            best = count
            n_best = 0
        if count == best:
            if n_best < cap:
                rec[n_best] = rank
            n_best += 1
        rank += 1
        if rank >= stop:
            break
        # odometer increment; cells lo..n_cells-1 change
        lo = n_cells - 1
        while True:
            cells[lo] += 1
            if cells[lo] == k:
                cells[lo] = 0
                lo -= 1
            else:
                break
        step += 1
        for c in range(lo, n_cells):
            for q in range(inc_ptr[c], inc_ptr[c + 1]):
                w = inc_idx[q]
                if stamp[w] != step:
                    stamp[w] = step
                    h = _window_hit(cells, windows, codes, w)
                    count += h - hit[w]
                    hit[w] = h
    return best, n_best, rec[:min(n_best, cap)]


@njit(cache=True, nogil=True)
def scan_pairs(n_cells, nbr, cap):
    """Max over all A/non-A splits of ordered pairs (A, non-A); bit i of the mask = cell i is A."""
    total = 1 << n_cells
    n_dir = nbr.shape[1]
    inside = np.zeros(n_cells, dtype=np.int64)
    best = -1
    n_best = 0
    rec = np.empty(cap, dtype=np.int64)
    for mask in range(total):
        for i in range(n_cells):
            inside[i] = (mask >> i) & 1
        value = 0
        for i in range(n_cells):
            if inside[i]:
                for j in range(n_dir):
                    if not inside[nbr[i, j]]:
                        value += 1
        if value > best:
            best = value
            n_best = 0
        if value == best:
            if n_best < cap:
                rec[n_best] = mask
            n_best += 1
    return best, n_best, rec[:min(n_best, cap)]


@njit(cache=True, nogil=True)
def move_delta(cells, cell, letter, windows, codes, inc_ptr, inc_idx):
    """Change in the number of matching windows if ``cell`` took ``letter``."""
    old = cells[cell]
    before = 0
    for q in range(inc_ptr[cell], inc_ptr[cell + 1]):
        before += _window_hit(cells, windows, codes, inc_idx[q])
    cells[cell] = letter
    after = 0
    for q in range(inc_ptr[cell], inc_ptr[cell + 1]):
        after += _window_hit(cells, windows, codes, inc_idx[q])
    cells[cell] = old
    return after - before


def incidence(windows: np.ndarray, n_cells: int) -> tuple[np.ndarray, np.ndarray]:
    """CSR list of distinct windows touching each cell."""
    w_ids = np.repeat(np.arange(windows.shape[0], dtype=np.int64), windows.shape[1])
    pairs = np.unique(np.stack([windows.reshape(-1), w_ids], axis=1), axis=0)
    ptr = np.zeros(n_cells + 1, dtype=np.int64)
    np.add.at(ptr, pairs[:, 0] + 1, 1)
    return np.cumsum(ptr), np.ascontiguousarray(pairs[:, 1])
