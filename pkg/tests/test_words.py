import pytest
from hypothesis import given, strategies as st

from catcube.words import Word, check_word


@pytest.mark.parametrize("word", ["CAT", "LION", "TIGER", "FELINE"])
def test_admissible_words(word):
    assert Word(word).admissible


def test_cat_verdict():
    v = check_word("CAT")
    assert v.all_distinct and v.parity_ok and v.pair_ok and v.offending_pair is None


def test_feline_repeats_a_letter_but_is_admissible():
    v = check_word("FELINE")
    assert not v.all_distinct
    assert v.admissible


def test_elephant_rejected_for_el():
    v = check_word("ELEPHANT")
    assert v.parity_ok
    assert not v.pair_ok
    assert v.offending_pair == ("E", "L")
    assert not v.admissible


def test_double_letter_fails_parity():
    v = check_word("AA")
    assert not v.parity_ok
    assert v.pair_ok


def test_short_word_rejected():
    with pytest.raises(ValueError):
        check_word("C")


def test_parity_split():
    w = Word("FELINE")
    assert w.odd_letters == {"F", "L", "N"}
    assert w.even_letters == {"E", "I"}
    assert w.back_and_forth() == "FELINENILE"
    assert Word("CAT").back_and_forth() == "CATA"
    assert len(Word("LION").back_and_forth()) == Word("LION").period == 6


words = st.text(alphabet="ABCDEFG", min_size=2, max_size=9)


@given(st.permutations("ABCDEFGH").flatmap(lambda p: st.integers(2, 8).map(lambda r: "".join(p[:r]))))
def test_distinct_letters_always_admissible(word):
    v = check_word(word)
    assert v.all_distinct and v.admissible


@given(words, st.permutations("ABCDEFG"))
def test_renaming_invariance(word, perm):
    table = dict(zip("ABCDEFG", perm))
    a = check_word(word)
    b = check_word("".join(table[c] for c in word))
    assert (a.all_distinct, a.parity_ok, a.pair_ok) == (b.all_distinct, b.parity_ok, b.pair_ok)
    if a.offending_pair:
        assert b.offending_pair == tuple(table[c] for c in a.offending_pair)


@given(words)
def test_offending_pair_iff_pair_fails(word):
    v = check_word(word)
    assert (v.offending_pair is None) == v.pair_ok
    if v.all_distinct:
        assert v.parity_ok and v.pair_ok


@given(words)
def test_reversal(word):
    fwd, rev = check_word(word), check_word(word[::-1])
    assert fwd.pair_ok == rev.pair_ok
    if len(word) % 2 == 1:
        assert fwd.admissible == rev.admissible
