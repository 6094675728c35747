"""Iterated revision operators as pure maps ``(state, input) -> state``.

All results are normalized (contiguous, nonempty levels), so structural
equality of states is equality of the underlying preorders.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Union

from ibrev.errors import EmptyInputError, LanguageMismatchError
from ibrev.logic import ModelSet
from ibrev.preorder import InputSequence, TotalPreorder, _raw, min_mask

LevelFn = Callable[[tuple, int], tuple]


def natural_levels(levels: tuple, a: int) -> tuple:
    m = min_mask(levels, a)
    if m == levels[0]:
        return levels
    return (m,) + tuple(x for x in (lvl & ~m for lvl in levels) if x)


def lexicographic_levels(levels: tuple, a: int) -> tuple:
    if not a:
        raise EmptyInputError()
    inside = [lvl & a for lvl in levels]
    outside = [lvl & ~a for lvl in levels]
    return tuple(x for x in inside + outside if x)


def backwards_levels(levels: tuple, a: int) -> tuple:
    if not a:
        raise EmptyInputError()
    out = []
    for lvl in levels:
        for x in (lvl & a, lvl & ~a):
            if x:
                out.append(x)
    return tuple(out)


def restrained_levels(levels: tuple, a: int) -> tuple:
    m = min_mask(levels, a)
    out = [m]
    for lvl in levels:
        rest = lvl & ~m
        for x in (rest & a, rest & ~a):
            if x:
                out.append(x)
    return tuple(out)


def composite_levels(levels: tuple, a: int) -> tuple:
    return natural_levels(backwards_levels(levels, a), a)


@dataclass(frozen=True)
class RevisionOperator:
    """A named revision operator.

    ``levels_fn`` works on raw level bitmasks; calling the operator works on
    :class:`TotalPreorder` and :class:`ModelSet` values.
    """

    name: str
    levels_fn: LevelFn

    def __call__(self, state: TotalPreorder, a: ModelSet) -> TotalPreorder:
        if a.lang != state.lang:
            raise LanguageMismatchError("input and state use different languages")
        if not a:
            raise EmptyInputError()
        out = self.levels_fn(state.levels, a.mask)
        if out is state.levels:
            return state
        return _raw(state.lang, out)

    apply = __call__

    def __str__(self):
        return self.name


natural = RevisionOperator("natural", natural_levels)
lexicographic = RevisionOperator("lexicographic", lexicographic_levels)
restrained = RevisionOperator("restrained", restrained_levels)
backwards = RevisionOperator("backwards", backwards_levels)
composite = RevisionOperator("composite", composite_levels)

OPERATORS: dict[str, RevisionOperator] = {
    op.name: op for op in (natural, lexicographic, restrained, backwards, composite)
}

#: Operators that place ``min(a)`` at the bottom of the result.
RAGM_OPERATORS = ("natural", "lexicographic", "restrained", "composite")


def get_operator(name: Union[str, RevisionOperator]) -> RevisionOperator:
    if isinstance(name, RevisionOperator):
        return name
    try:
        return OPERATORS[name]
    except KeyError:
        raise ValueError(f"unknown operator {name!r}; choose from {', '.join(OPERATORS)}") from None


def revise_sequence(
    op: RevisionOperator,
    state: TotalPreorder,
    seq: Union[InputSequence, Iterable[ModelSet]],
) -> TotalPreorder:
    """Left fold of ``op`` over the inputs."""
    inputs = list(seq)
    if not inputs:
        raise ValueError("an input sequence must be nonempty")
    for i, a in enumerate(inputs):
        try:
            state = op(state, a)
        except EmptyInputError:
            raise EmptyInputError(index=i) from None
    return state
