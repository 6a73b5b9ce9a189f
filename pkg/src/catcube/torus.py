"""Discrete tori, king-move directions and letter labelings.

A torus is the group Z/n_1 x ... x Z/n_d.  Points are tuples of residues and
labelings store one alphabet index per point in row-major order (last
coordinate varies fastest), so a 2-D labeling reads like the grid it draws.
"""

from __future__ import annotations

import io
import itertools
import math
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

MAX_DIM = 8
MAX_POINTS = 2**31
MIN_SIDE = 3

Point = tuple[int, ...]
Direction = tuple[int, ...]


class ShapeError(ValueError):
    pass


class LabelingFormatError(ValueError):
    """Raised by :func:`read_labeling`; carries the 1-based line/column."""

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class TorusShape:
    dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(n) for n in self.dims)
        object.__setattr__(self, "dims", dims)
        if not 1 <= len(dims) <= MAX_DIM:
            raise ShapeError(f"dimension must be in [1, {MAX_DIM}], got {len(dims)}")
        if any(n < MIN_SIDE for n in dims):
            raise ShapeError(f"every side length must be >= {MIN_SIDE}, got {dims}")
        if math.prod(dims) > MAX_POINTS:
            raise ShapeError(f"torus has more than 2^31 points: {dims}")

    @classmethod
    def parse(cls, text: str) -> "TorusShape":
        """Accept ``8,8``, ``4x4x4`` or ``8 8``."""
        text = text.strip()
        parts = re.split(r"\s*[,x]\s*|\s+", text) if text else []
        if not parts or not all(p.isdigit() for p in parts):
            raise ShapeError(f"cannot parse dims {text!r}")
        return cls(tuple(int(p) for p in parts))

    @property
    def d(self) -> int:
        return len(self.dims)

    @property
    def total_points(self) -> int:
        return math.prod(self.dims)

    @property
    def direction_count(self) -> int:
        return 3**self.d - 1

    def __str__(self):
        return "x".join(map(str, self.dims))

    def points(self) -> Iterable[Point]:
        """All points in storage order."""
        return itertools.product(*(range(n) for n in self.dims))

    def flat_index(self, p: Sequence[int]) -> int:
        return int(np.ravel_multi_index(tuple(c % n for c, n in zip(p, self.dims)), self.dims))

    def point(self, flat: int) -> Point:
        return tuple(int(c) for c in np.unravel_index(flat, self.dims))

    def coords(self) -> np.ndarray:
        """(N, d) array of every point's coordinates in storage order."""
        grids = np.indices(self.dims).reshape(self.d, -1)
        return np.ascontiguousarray(grids.T)

    @cached_property
    def neighbor_table(self) -> np.ndarray:
        """(N, 3^d - 1) array; entry [x, j] is the flat index of x + directions[j]."""
        return self.progression_table(2)[:, :, 1]

    def progression_table(self, length: int) -> np.ndarray:
        """(N, 3^d - 1, length) flat indices of x + t*y for t = 0..length-1."""
        coords = self.coords()
        dirs = np.array(all_directions(self), dtype=np.int64)
        dims = np.array(self.dims, dtype=np.int64)
        steps = np.arange(length, dtype=np.int64)
        pts = coords[:, None, None, :] + steps[None, None, :, None] * dirs[None, :, None, :]
        pts %= dims
        strides = np.array([math.prod(self.dims[i + 1:]) for i in range(self.d)], dtype=np.int64)
        return pts @ strides


def all_directions(shape: TorusShape | int) -> list[Direction]:
    """Nonzero vectors of {-1,0,1}^d in odometer order (first coordinate slowest)."""
    d = shape if isinstance(shape, int) else shape.d
    return [y for y in itertools.product((-1, 0, 1), repeat=d) if any(y)]


def negate(y: Direction) -> Direction:
    return tuple(-c for c in y)


def advance(p: Point, y: Direction, t: int, shape: TorusShape) -> Point:
    """Return p + t*y reduced coordinatewise."""
    if t < 0:
        raise ValueError("step count must be non-negative")
    return tuple((c + t * s) % n for c, s, n in zip(p, y, shape.dims))


@dataclass(frozen=True, eq=False)
class Labeling:
    """Assignment of alphabet letters to every point of a torus.

    ``cells`` holds alphabet indices; it is copied into a read-only uint8
    array so instances behave as values.
    """

    shape: TorusShape
    alphabet: str
    cells: np.ndarray = field(repr=False)

    def __post_init__(self):
        if len(set(self.alphabet)) != len(self.alphabet) or not self.alphabet:
            raise ValueError(f"alphabet must be non-empty with distinct letters: {self.alphabet!r}")
        if len(self.alphabet) > 255:
            raise ValueError("alphabet too large")
        cells = np.array(self.cells, dtype=np.uint8).reshape(-1)
        if cells.size != self.shape.total_points:
            raise ValueError(f"expected {self.shape.total_points} cells, found {cells.size}")
        if cells.size and int(cells.max()) >= len(self.alphabet):
            raise ValueError("cell index outside alphabet")
        cells.setflags(write=False)
        object.__setattr__(self, "cells", cells)

    @classmethod
    def from_string(cls, shape: TorusShape, alphabet: str, letters: str) -> "Labeling":
        letters = "".join(letters.split())
        index = {c: i for i, c in enumerate(alphabet)}
        try:
            cells = [index[c] for c in letters]
        except KeyError as exc:
            raise ValueError(f"letter {exc.args[0]!r} not in alphabet {alphabet!r}") from None
        return cls(shape, alphabet, np.array(cells, dtype=np.uint8))

    @classmethod
    def from_grid(cls, rows: Sequence[str], alphabet: str | None = None) -> "Labeling":
        """Build a 2-D labeling from equal-length rows of letters."""
        rows = ["".join(r.split()) for r in rows]
        if alphabet is None:
            alphabet = "".join(dict.fromkeys("".join(rows)))
        return cls.from_string(TorusShape((len(rows), len(rows[0]))), alphabet, "".join(rows))

    def letters(self) -> str:
        return "".join(self.alphabet[i] for i in self.cells)

    def letter_at(self, p: Sequence[int]) -> str:
        return self.alphabet[self.cells[self.shape.flat_index(p)]]

    def grid(self) -> np.ndarray:
        return self.cells.reshape(self.shape.dims)

    def translate(self, by: Sequence[int]) -> "Labeling":
        """Labeling l' with l'(x + by) = l(x)."""
        moved = np.roll(self.grid(), tuple(by), axis=tuple(range(self.shape.d)))
        return Labeling(self.shape, self.alphabet, moved.reshape(-1))

    def key(self) -> bytes:
        return write_labeling(self).encode()

    def __eq__(self, other):
        if not isinstance(other, Labeling):
            return NotImplemented
        return (self.shape == other.shape and self.alphabet == other.alphabet
                and np.array_equal(self.cells, other.cells))

    def __hash__(self):
        return hash((self.shape, self.alphabet, self.cells.tobytes()))


HEADER = "torus v1"


def write_labeling(lab: Labeling) -> str:
    dims = lab.shape.dims
    out = io.StringIO()
    out.write(f"{HEADER}\ndims: {' '.join(map(str, dims))}\nalphabet: {lab.alphabet}\n")
    width = dims[-1]
    slice_rows = dims[-2] if len(dims) >= 2 else 1
    text = lab.letters()
    for row in range(len(text) // width):
        if len(dims) >= 3 and row and row % slice_rows == 0:
            out.write("\n")
        out.write(text[row * width:(row + 1) * width])
        out.write("\n")
    return out.getvalue()


def read_labeling(text: str | bytes) -> Labeling:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if len(lines) < 3:
        raise LabelingFormatError("truncated header", len(lines) + 1)
    if lines[0].rstrip("\r") != HEADER:
        raise LabelingFormatError(f"expected {HEADER!r}", 1)

    dims_line = lines[1].rstrip("\r")
    if not dims_line.startswith("dims: "):
        raise LabelingFormatError("expected 'dims: n1 ... nd'", 2)
    try:
        dims = tuple(int(tok) for tok in dims_line[6:].split(" "))
        shape = TorusShape(dims)
    except ValueError as exc:
        raise LabelingFormatError(f"bad dims: {exc}", 2, 7) from None

    alpha_line = lines[2].rstrip("\r")
    if not alpha_line.startswith("alphabet: ") or len(alpha_line) == 10:
        raise LabelingFormatError("expected 'alphabet: <letters>'", 3)
    alphabet = alpha_line[10:]
    for col, ch in enumerate(alphabet):
        if ch.isspace() or alphabet.index(ch) != col:
            raise LabelingFormatError(f"alphabet letter {ch!r} repeated or blank", 3, 11 + col)

    index = {c: i for i, c in enumerate(alphabet)}
    width = dims[-1]
    cells: list[int] = []
    rows: list[tuple[int, str]] = []
    for lineno, raw in enumerate(lines[3:], start=4):
        line = raw.rstrip("\r")
        if line == "":
            continue
        for col, ch in enumerate(line, start=1):
            if ch not in index:
                raise LabelingFormatError(f"unknown letter {ch!r}", lineno, col)
        rows.append((lineno, line))
        cells.extend(index[c] for c in line)
    if len(cells) != shape.total_points:
        raise LabelingFormatError(
            f"expected {shape.total_points} cells, found {len(cells)}", len(lines) + 1)
    for lineno, line in rows:
        if len(line) != width:
            raise LabelingFormatError(
                f"expected {width} letters per row, found {len(line)}", lineno, min(len(line), width) + 1)
    return Labeling(shape, alphabet, np.array(cells, dtype=np.uint8))
