"""Striped extremal labelings (generalized Patchell-Spiro labelings).

Coordinates follow storage order: in a 2-D labeling coordinate 1 is the row
and coordinate 2 the column.  The stripes of the classical 8x8 picture run
down the columns, so they are hyperplanes orthogonal to axis 2; a drawing
with (x, y) = (column, row) is the transpose of the point tuple used here.

A member is fixed by an axis (1-based), a parity, and a phase for each
transverse parity class.  Along the axis the letters follow the
back-and-forth cycle w_1 .. w_r w_{r-1} .. w_2 of period 2r-2; the cell at
axis coordinate h in class c gets cycle position (h + phase[c] - parity - 1)
mod (2r-2).  Phases are even, so the even-position letters of w always sit on
the hyperplanes h = parity (mod 2).  For CAT, phase 0 is the epsilon_y = 1
choice and phase 2 is epsilon_y = 3.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .counting import count_word
from .torus import Labeling, TorusShape
from .words import Word, require_admissible

FAMILY_LIMIT = 1 << 20

CAT = Word("CAT")


class ConstructionError(ValueError):
    pass


def transverse_moduli(shape: TorusShape, axis: int) -> tuple[int, ...]:
    """Parity-class modulus per transverse coordinate: 2 for even sides, 1 for odd ones.

    An odd side has no well-defined parity under wrap-around, so it does not
    split the classes.
    """
    return tuple(math.gcd(2, n) for i, n in enumerate(shape.dims, start=1) if i != axis)


def transverse_classes(shape: TorusShape, axis: int) -> list[tuple[int, ...]]:
    return list(itertools.product(*(range(m) for m in transverse_moduli(shape, axis))))


@dataclass(frozen=True)
class PSParams:
    shape: TorusShape
    axis: int
    parity: int
    phases: tuple[tuple[tuple[int, ...], int], ...]

    @classmethod
    def make(cls, shape: TorusShape, axis: int, parity: int, phases) -> "PSParams":
        """``phases`` is a mapping class -> phase, a sequence in class order, or one int."""
        classes = transverse_classes(shape, axis)
        if isinstance(phases, int):
            table = {c: phases for c in classes}
        elif isinstance(phases, dict):
            table = {tuple(c): int(p) for c, p in phases.items()}
        else:
            phases = list(phases)
            if len(phases) != len(classes):
                raise ConstructionError(
                    f"need {len(classes)} phases (one per transverse class), got {len(phases)}")
            table = dict(zip(classes, (int(p) for p in phases)))
        missing = [c for c in classes if c not in table]
        if missing:
            raise ConstructionError(f"no phase for transverse classes {missing}")
        return cls(shape, axis, parity, tuple((c, table[c]) for c in classes))

    def phase_map(self) -> dict[tuple[int, ...], int]:
        return dict(self.phases)

    def to_json(self) -> dict:
        return {"dims": list(self.shape.dims), "axis": self.axis, "parity": self.parity,
                "phases": [p for _, p in self.phases]}


def cat_params(shape: TorusShape, axis: int, parity: int, eps) -> PSParams:
    """PSParams from the CAT convention epsilon_y in {1, 3} (scalar, list or mapping)."""
    def conv(e):
        if e not in (1, 3):
            raise ConstructionError(f"epsilon must be 1 or 3, got {e}")
        return e - 1
    if isinstance(eps, int):
        phases = conv(eps)
    elif isinstance(eps, dict):
        phases = {c: conv(e) for c, e in eps.items()}
    else:
        phases = [conv(e) for e in eps]
    return PSParams.make(shape, axis, parity, phases)


def _check(p: PSParams, w: Word) -> None:
    d = p.shape.d
    if not 1 <= p.axis <= d:
        raise ConstructionError(f"axis must be in [1, {d}], got {p.axis}")
    if p.parity not in (0, 1):
        raise ConstructionError(f"parity must be 0 or 1, got {p.parity}")
    n_axis = p.shape.dims[p.axis - 1]
    if n_axis % w.period:
        raise ConstructionError(
            f"side {n_axis} along axis {p.axis} is not a multiple of {w.period} (2r-2 for {w})")
    for c, ph in p.phases:
        if ph % 2 or not 0 <= ph < w.period:
            raise ConstructionError(f"phase for class {c} must be an even residue mod {w.period}, got {ph}")


def _class_index(shape: TorusShape, axis: int) -> tuple[np.ndarray, np.ndarray]:
    """Axis coordinate and transverse-class tuple of every cell."""
    coords = shape.coords()
    h = coords[:, axis - 1]
    trans = np.delete(coords, axis - 1, axis=1) % np.array(transverse_moduli(shape, axis), dtype=np.int64)
    return h, trans


def build_ps_cat(p: PSParams) -> Labeling:
    """Direct congruence form for CAT over alphabet ``CAT``.

    A where x_axis = parity (mod 2); otherwise C where x_axis = eps + parity
    (mod 4) and T where x_axis = eps + 2 + parity (mod 4), eps = phase + 1.
    """
    _check(p, CAT)
    h, trans = _class_index(p.shape, p.axis)
    eps_of = {c: ph + 1 for c, ph in p.phases}
    eps = np.array([eps_of[tuple(t)] for t in trans], dtype=np.int64)
    cells = np.full(p.shape.total_points, 1, dtype=np.uint8)  # A
    odd = (h - p.parity) % 2 == 1
    cells[odd & ((h - eps - p.parity) % 4 == 0)] = 0  # C
    cells[odd & ((h - eps - 2 - p.parity) % 4 == 0)] = 2  # T
    return Labeling(p.shape, "CAT", cells)


def build_ps_word(w: Word, p: PSParams) -> Labeling:
    require_admissible(w)
    _check(p, w)
    alphabet = w.alphabet
    cycle = np.array([alphabet.index(c) for c in w.back_and_forth()], dtype=np.uint8)
    h, trans = _class_index(p.shape, p.axis)
    phase_of = p.phase_map()
    phase = np.array([phase_of[tuple(t)] for t in trans], dtype=np.int64)
    pos = (h + phase - p.parity - 1) % w.period
    return Labeling(p.shape, alphabet, cycle[pos])


def valid_axes(w: Word, shape: TorusShape) -> list[int]:
    return [i for i, n in enumerate(shape.dims, start=1) if n % w.period == 0]


def iter_params(w: Word, shape: TorusShape):
    axes = valid_axes(w, shape)
    if not axes:
        raise ConstructionError(
            f"no side of {shape} is a multiple of {w.period} (2r-2 for {w})")
    choices = range(0, w.period, 2)
    for axis in axes:
        classes = transverse_classes(shape, axis)
        for parity in (0, 1):
            for combo in itertools.product(choices, repeat=len(classes)):
                yield PSParams(shape, axis, parity, tuple(zip(classes, combo)))


def family_size_upper(w: Word, shape: TorusShape) -> int:
    return sum(2 * (w.r - 1) ** len(transverse_classes(shape, a)) for a in valid_axes(w, shape))


@dataclass(frozen=True)
class FamilyMember:
    labeling: Labeling
    params: PSParams
    count: int


def enumerate_ps_family(w: Word, shape: TorusShape) -> list[FamilyMember]:
    """Every distinct striped labeling for w on this torus, each tagged with its count.

    Duplicates (possible when two parameter choices give the same cells) keep
    the first parameters in enumeration order.
    """
    require_admissible(w)
    if family_size_upper(w, shape) > FAMILY_LIMIT:
        raise ConstructionError(f"family too large to enumerate (> {FAMILY_LIMIT})")
    seen: set[bytes] = set()
    members = []
    for p in iter_params(w, shape):
        lab = build_ps_word(w, p)
        key = lab.cells.tobytes()
        if key in seen:
            continue
        seen.add(key)
        members.append(FamilyMember(lab, p, count_word(lab, w).word_count))
    return members


def cat_family_formula(d: int) -> int:
    """d * 2^(2^(d-1) + 1): axis choices x parities x epsilon maps."""
    return d * 2 ** (2 ** (d - 1) + 1)


@dataclass(frozen=True)
class PSMatch:
    member: bool
    params: PSParams | None
    count: int
    attains_bound: bool


def _relabel(lab: Labeling, alphabet: str) -> np.ndarray | None:
    """Cells re-expressed over ``alphabet``; None if lab uses a letter outside it."""
    remap = np.full(len(lab.alphabet), 255, dtype=np.uint8)
    for i, c in enumerate(lab.alphabet):
        if c in alphabet:
            remap[i] = alphabet.index(c)
    cells = remap[lab.cells]
    return None if np.any(cells == 255) else cells


def is_generalized_ps(lab: Labeling, w: Word = CAT) -> PSMatch:
    """Recover striped-family parameters from the cells, if any exist.

    Cells in different transverse classes never constrain each other, so for
    each axis and parity a class either admits some phase reproducing all of
    its cells or the labeling is not a member for that axis and parity.  The
    smallest admissible phase is reported.
    """
    count = count_word(lab, w).word_count if w.admissible else 0
    attains = w.admissible and count * (w.r - 1) == 3 ** (lab.shape.d - 1) * lab.shape.total_points
    cells = _relabel(lab, w.alphabet) if w.admissible else None
    if cells is None:
        return PSMatch(False, None, count, attains)
    alphabet = w.alphabet
    cycle = np.array([alphabet.index(c) for c in w.back_and_forth()], dtype=np.uint8)
    shape = lab.shape
    for axis in valid_axes(w, shape):
        h, trans = _class_index(shape, axis)
        classes = transverse_classes(shape, axis)
        for parity in (0, 1):
            phases = []
            for c in classes:
                sel = np.all(trans == c, axis=1)
                hc, want = h[sel], cells[sel]
                ok = [ph for ph in range(0, w.period, 2)
                      if np.array_equal(cycle[(hc + ph - parity - 1) % w.period], want)]
                if not ok:
                    break
                phases.append(ok[0])
            else:
                return PSMatch(True, PSParams(shape, axis, parity, tuple(zip(classes, phases))),
                               count, attains)
    return PSMatch(False, None, count, attains)
