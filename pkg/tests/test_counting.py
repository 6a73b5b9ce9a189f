import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from catcube.constructions import CAT
from catcube.counting import (count_pairs, count_word, enumerate_occurrences, pair_count_matrix,
                              participation)
from catcube.spectral import quadratic_form, signing
from catcube.torus import Labeling, TorusShape, advance
from catcube.words import Word

from conftest import naive_count, naive_pairs, random_labeling

CATA = Labeling.from_string(TorusShape((4,)), "CAT", "CATA")


def test_one_dimensional_example():
    # all 8 (x, y) pairs on Z/4 enumerated by hand: only x=0 spells CAT, both ways
    assert count_word(CATA, CAT).word_count == naive_count(CATA, "CAT") == 2
    assert enumerate_occurrences(CATA, CAT) == [((0,), (-1,)), ((0,), (1,))]


def test_one_dimensional_pairs():
    assert count_pairs(CATA, "A", "C") == naive_pairs(CATA, "A", "C") == 2
    assert count_pairs(CATA, "A", "T") == 2


def test_figure_labelings(fig1_left, fig1_right):
    assert count_word(fig1_left, CAT).word_count == 96
    assert count_word(fig1_right, CAT).word_count == 96
    assert count_pairs(fig1_left, "A", "C") + count_pairs(fig1_left, "A", "T") == 192


def test_all_a():
    lab = Labeling(TorusShape((4, 5)), "CAT", np.ones(20))
    assert count_word(lab, CAT).word_count == 0
    assert count_pairs(lab, "A", "C") == 0
    assert enumerate_occurrences(lab, CAT) == []


def test_missing_letter_counts_zero():
    lab = Labeling.from_string(TorusShape((4,)), "CA", "CACA")
    assert count_word(lab, CAT).word_count == 0


def test_short_side_warns():
    lab = Labeling.from_string(TorusShape((3,)), "LION", "LIO")
    with pytest.warns(UserWarning):
        count_word(lab, Word("LION"))


def test_by_direction_sums(fig1_right):
    occ = count_word(fig1_right, CAT, by_direction=True)
    assert sum(occ.by_direction.values()) == occ.word_count
    assert occ.by_direction[(0, 1)] == occ.by_direction[(0, -1)] == 16
    assert occ.by_direction[(1, 0)] == 0


def test_participation_matches_figure_caption(fig1_left, fig1_right):
    for lab in (fig1_left, fig1_right):
        part = participation(lab, CAT)
        letters = np.array(list(lab.letters()))
        assert set(part[letters == "A"]) == {3}
        assert set(part[letters != "A"]) == {6}


def test_witnesses_replay(rng):
    lab = random_labeling(rng, (5, 6))
    wits = enumerate_occurrences(lab, CAT)
    assert len(wits) == count_word(lab, CAT).word_count
    for x, y in wits:
        assert "".join(lab.letter_at(advance(x, y, t, lab.shape)) for t in range(3)) == "CAT"


@pytest.mark.parametrize("dims", [(3,), (5,), (3, 4), (4, 4), (3, 3, 3)])
def test_against_definition(rng, dims):
    for _ in range(3):
        lab = random_labeling(rng, dims)
        assert count_word(lab, CAT).word_count == naive_count(lab, "CAT")
        assert count_pairs(lab, "A", "CT") == naive_pairs(lab, "A", "CT")


def test_lion_against_definition(rng):
    lab = random_labeling(rng, (4, 5), "LION")
    assert count_word(lab, Word("LION")).word_count == naive_count(lab, "LION")


dims_st = st.lists(st.integers(3, 5), min_size=1, max_size=3).map(tuple)


@pytest.mark.filterwarnings("ignore:side length")
@settings(max_examples=40, deadline=None)
@given(dims_st, st.integers(0, 2**32 - 1), st.sampled_from(["CAT", "LION", "FELINE", "ABA"]))
def test_reversal_symmetry(dims, seed, word):
    rng = np.random.default_rng(seed)
    w = Word(word)
    lab = random_labeling(rng, dims, w.alphabet)
    assert count_word(lab, w).word_count == count_word(lab, w.reversed()).word_count


@settings(max_examples=40, deadline=None)
@given(dims_st, st.integers(0, 2**32 - 1))
def test_translation_invariance(dims, seed):
    rng = np.random.default_rng(seed)
    lab = random_labeling(rng, dims)
    shift = tuple(int(rng.integers(n)) for n in dims)
    moved = lab.translate(shift)
    assert count_word(lab, CAT).word_count == count_word(moved, CAT).word_count
    assert count_pairs(lab, "A", "C") == count_pairs(moved, "A", "C")


@settings(max_examples=40, deadline=None)
@given(dims_st, st.integers(0, 2**32 - 1))
def test_pair_matrix_properties(dims, seed):
    rng = np.random.default_rng(seed)
    lab = random_labeling(rng, dims)
    mat = pair_count_matrix(lab)
    assert mat.sum() == lab.shape.total_points * lab.shape.direction_count
    assert np.array_equal(mat, mat.T)
    assert mat[1, 0] == count_pairs(lab, "A", "C")


@settings(max_examples=60, deadline=None)
@given(dims_st, st.integers(0, 2**32 - 1))
def test_quadratic_form_identity(dims, seed):
    rng = np.random.default_rng(seed)
    lab = random_labeling(rng, dims)
    shape = lab.shape
    lhs = 4 * (count_pairs(lab, "A", "C") + count_pairs(lab, "A", "T"))
    assert lhs + quadratic_form(signing(lab, "A"), shape) == (3**shape.d - 1) * shape.total_points


@settings(max_examples=60, deadline=None)
@given(dims_st, st.integers(0, 2**32 - 1), st.sampled_from(["CAT", "LION", "TIGER", "FELINE"]))
def test_subword_bound(dims, seed, word):
    rng = np.random.default_rng(seed)
    w = Word(word)
    lab = random_labeling(rng, dims, w.alphabet)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        occ = count_word(lab, w).word_count
    assert (w.r - 1) * occ <= count_pairs(lab, w.odd_letters, w.even_letters)


def test_palindrome_counts_both_directions():
    lab = Labeling.from_string(TorusShape((5,)), "AB", "ABAAA")
    # one placement of ABA read in both directions
    assert count_word(lab, Word("ABA")).word_count == 2
