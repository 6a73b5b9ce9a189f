"""Word admissibility and the odd/even letter split.

A word is admissible when (1) no letter sits at both an odd and an even
position and (2) no unordered pair of letters is adjacent more than once.
Such words obey the same spectral bound as CAT.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class WordVerdict:
    all_distinct: bool
    parity_ok: bool
    pair_ok: bool
    offending_pair: tuple[str, str] | None

    @property
    def admissible(self) -> bool:
        return self.parity_ok and self.pair_ok


def check_word(letters: str) -> WordVerdict:
    if len(letters) < 2:
        raise ValueError(f"word must have at least 2 letters, got {letters!r}")
    odd = set(letters[0::2])
    even = set(letters[1::2])
    first_seen: dict[frozenset[str], tuple[str, str]] = {}
    offending = None
    for a, b in zip(letters, letters[1:]):
        pair = frozenset((a, b))
        if pair in first_seen:
            offending = first_seen[pair]
            break
        first_seen[pair] = (a, b)
    return WordVerdict(
        all_distinct=len(set(letters)) == len(letters),
        parity_ok=not (odd & even),
        pair_ok=offending is None,
        offending_pair=offending,
    )


@dataclass(frozen=True)
class Word:
    """A letter sequence with its verdict computed up front.

    ``odd_letters`` are the letters at 1-based positions 1, 3, 5, ... and
    ``even_letters`` those at positions 2, 4, ...; the two sets may overlap
    for inadmissible words.
    """

    letters: str
    verdict: WordVerdict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "verdict", check_word(self.letters))

    @property
    def r(self) -> int:
        return len(self.letters)

    @property
    def odd_letters(self) -> frozenset[str]:
        return frozenset(self.letters[0::2])

    @property
    def even_letters(self) -> frozenset[str]:
        return frozenset(self.letters[1::2])

    @property
    def admissible(self) -> bool:
        return self.verdict.admissible

    @property
    def alphabet(self) -> str:
        """Distinct letters in order of first appearance."""
        return "".join(dict.fromkeys(self.letters))

    @property
    def period(self) -> int:
        return 2 * self.r - 2

    def back_and_forth(self) -> str:
        """One period of w_1 ... w_r w_{r-1} ... w_2."""
        return self.letters + self.letters[-2:0:-1]

    def reversed(self) -> "Word":
        return Word(self.letters[::-1])

    def __str__(self):
        return self.letters

    def verdict_json(self) -> dict:
        v = self.verdict
        return {
            "word": self.letters,
            "r": self.r,
            "all_distinct": v.all_distinct,
            "parity_ok": v.parity_ok,
            "pair_ok": v.pair_ok,
            "offending_pair": "".join(v.offending_pair) if v.offending_pair else None,
            "admissible": v.admissible,
        }


def require_admissible(w: Word) -> None:
    if not w.admissible:
        v = w.verdict
        why = "a letter appears at both odd and even positions" if not v.parity_ok else \
            f"the pair {''.join(v.offending_pair)} is adjacent more than once"
        raise ValueError(f"word {w} is not admissible: {why}")
