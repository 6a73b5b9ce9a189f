"""Seeded hill climbing for good labelings where enumeration cannot reach.

Each restart draws from its own PCG64 stream seeded with (seed, restart),
so restarts can run in any order or in parallel and the merged result (highest
count, then lowest restart index) is reproducible.
"""

from __future__ import annotations

import hashlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .counting import count_word, window_table
from .spectral import word_bound
from .torus import Labeling, TorusShape
from .words import Word


@dataclass(frozen=True)
class SearchConfig:
    seed: int = 0
    restarts: int = 8
    max_plateau_moves: int = 200
    initializer: str = "random"
    max_passes: int = 10_000

    def __post_init__(self):
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.initializer not in ("random", "ps-truncated"):
            raise ValueError(f"unknown initializer {self.initializer!r}")


@dataclass
class SearchResult:
    word: str
    labeling: Labeling
    count: int
    word_bound: int | None
    restart: int
    history: list[int]
    trace_hash: str
    config: SearchConfig = field(repr=False)

    @property
    def gap(self) -> int | None:
        return None if self.word_bound is None else self.word_bound - self.count

    def to_json(self) -> dict:
        return {
            "word": self.word,
            "dims": list(self.labeling.shape.dims),
            "seed": self.config.seed,
            "restarts": self.config.restarts,
            "initializer": self.config.initializer,
            "max_plateau_moves": self.config.max_plateau_moves,
            "best_count": self.count,
            "word_bound": self.word_bound,
            "bound_gap": self.gap,
            "best_restart": self.restart,
            "best_so_far": self.history,
            "trace_hash": self.trace_hash,
            "labeling": self.labeling.letters(),
        }


def ps_truncated(w: Word, shape: TorusShape) -> np.ndarray:
    """Back-and-forth cycle written along axis 1, cut off wherever the side ends."""
    alphabet = w.alphabet
    cycle = np.array([alphabet.index(c) for c in w.back_and_forth()], dtype=np.int64)
    h = shape.coords()[:, 0]
    return cycle[h % w.period]


def _climb(w: Word, shape: TorusShape, cfg: SearchConfig, restart: int, windows, codes, ptr, idx):
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([cfg.seed, restart])))
    k = len(w.alphabet)
    n_cells = shape.total_points
    if cfg.initializer == "random":
        cells = rng.integers(0, k, n_cells).astype(np.int64)
    else:
        cells = ps_truncated(w, shape)
    count = int(np.all(cells[windows] == codes, axis=1).sum())
    best, best_cells = count, cells.copy()
    trace = hashlib.sha256()
    plateau_left = cfg.max_plateau_moves

    for _ in range(cfg.max_passes):
        improved = False
        for cell in rng.permutation(n_cells):
            for letter in rng.permutation(k):
                if letter == cells[cell]:
                    continue
                delta = _kernels.move_delta(cells, cell, letter, windows, codes, ptr, idx)
                if delta > 0:
                    cells[cell] = letter
                    count += delta
                    trace.update(np.array([cell, letter, count], dtype=np.int64).tobytes())
                    improved = True
                    break
        if count > best:
            best, best_cells = count, cells.copy()
        if improved:
            continue
        if plateau_left <= 0:
            break
        sideways = [(c, l) for c in range(n_cells) for l in range(k) if l != cells[c]
                    and _kernels.move_delta(cells, c, l, windows, codes, ptr, idx) == 0]
        if not sideways:
            break
        c, l = sideways[int(rng.integers(len(sideways)))]
        cells[c] = l
        plateau_left -= 1
        trace.update(np.array([c, l, count], dtype=np.int64).tobytes())
    return best, best_cells, trace.hexdigest()


def local_search(w: Word, shape: TorusShape, cfg: SearchConfig = SearchConfig(),
                 workers: int = 1) -> SearchResult:
    windows = np.ascontiguousarray(window_table(shape, w.r), dtype=np.int64)
    codes = np.array([w.alphabet.index(c) for c in w.letters], dtype=np.int64)
    ptr, idx = _kernels.incidence(windows, shape.total_points)

    def run(restart):
        return _climb(w, shape, cfg, restart, windows, codes, ptr, idx)

    restarts = range(cfg.restarts)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(run, restarts))
    else:
        outcomes = [run(i) for i in restarts]

    history = []
    best_i = 0
    for i, (c, _, _) in enumerate(outcomes):
        if c > outcomes[best_i][0]:
            best_i = i
        history.append(outcomes[best_i][0])
    digest = hashlib.sha256("".join(o[2] for o in outcomes).encode()).hexdigest()

    count, cells, _ = outcomes[best_i]
    lab = Labeling(shape, w.alphabet, cells.astype(np.uint8))
    recount = count_word(lab, w).word_count
    if recount != count:
        raise AssertionError(f"incremental count {count} disagrees with recount {recount}")
    bound = word_bound(w, shape).word_bound if w.admissible else None
    if bound is not None and count > bound:
        raise AssertionError(f"count {count} exceeds the spectral bound {bound}")
    return SearchResult(w.letters, lab, count, bound, best_i, history, digest, cfg)
