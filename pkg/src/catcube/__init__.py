"""Word occurrences on discrete tori: counts, extremal constructions, spectral bounds."""

__version__ = "0.1.0"
