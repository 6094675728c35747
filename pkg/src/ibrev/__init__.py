"""Iterated belief revision over total preorders on propositional valuations."""

from ibrev.counteracts import counteracts
from ibrev.logic import Language, ModelSet, default_language, entails, equivalent, models, parse
from ibrev.operators import OPERATORS, get_operator, revise_sequence
from ibrev.postulates import POSTULATES, Budget, verify
from ibrev.preorder import TotalPreorder, belief_set, faithful_from_kb, min_models

__version__ = "0.1.0"

__all__ = [
    "Budget",
    "Language",
    "ModelSet",
    "OPERATORS",
    "POSTULATES",
    "TotalPreorder",
    "belief_set",
    "counteracts",
    "default_language",
    "entails",
    "equivalent",
    "faithful_from_kb",
    "get_operator",
    "min_models",
    "models",
    "parse",
    "revise_sequence",
    "verify",
]
