"""Factor sets of words, extension graphs, return words and Stallings foldings."""

from ._core import (
    FactorSet,
    TreesetError,
    builtin_sources,
    coset_automaton,
    height,
    is_free,
    membership,
    minimal_automaton,
    reduce,
    stallings,
)

__all__ = [
    "FactorSet",
    "TreesetError",
    "builtin_sources",
    "coset_automaton",
    "height",
    "is_free",
    "membership",
    "minimal_automaton",
    "reduce",
    "stallings",
]
