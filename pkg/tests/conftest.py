import itertools

import numpy as np
import pytest

from catcube.torus import Labeling, TorusShape, advance, all_directions

FIG1_LEFT = ["CATACATA"] * 8
FIG1_RIGHT = ["CATACATA", "TACATACA"] * 4


def naive_count(lab: Labeling, word: str) -> int:
    """Occurrence count straight from the definition, one point at a time."""
    total = 0
    for x in lab.shape.points():
        for y in all_directions(lab.shape):
            if all(lab.letter_at(advance(x, y, t, lab.shape)) == word[t] for t in range(len(word))):
                total += 1
    return total


def naive_pairs(lab: Labeling, first: str, second: str) -> int:
    total = 0
    for x in lab.shape.points():
        for y in all_directions(lab.shape):
            if lab.letter_at(x) in first and lab.letter_at(advance(x, y, 1, lab.shape)) in second:
                total += 1
    return total


def random_labeling(rng, dims, alphabet="CAT"):
    shape = TorusShape(dims)
    return Labeling(shape, alphabet, rng.integers(0, len(alphabet), shape.total_points))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def fig1_left():
    return Labeling.from_grid(FIG1_LEFT, "CAT")


@pytest.fixture
def fig1_right():
    return Labeling.from_grid(FIG1_RIGHT, "CAT")
