"""The counteracts relation between two inputs relative to a preorder.

``alpha`` and ``beta`` counteract when the most plausible ``alpha``-worlds all
falsify ``beta`` and the most plausible ``beta``-worlds all falsify ``alpha``.
Three independent routes are provided: the order form (:func:`counteracts`),
the strict-witness form (:func:`counteracts_via_witnesses`) and the revision
form (:func:`counteracts_by_revision`), which actually runs two revisions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from ibrev.errors import EmptyInputError, LanguageMismatchError
from ibrev.logic import ModelSet
from ibrev.operators import RevisionOperator, restrained
from ibrev.preorder import TotalPreorder, believes, min_mask


def _check(order: TotalPreorder, alpha: ModelSet, beta: ModelSet):
    if alpha.lang != order.lang or beta.lang != order.lang:
        raise LanguageMismatchError("query and state use different languages")
    if not alpha or not beta:
        raise EmptyInputError("counteracts needs consistent inputs")


def counteracts_mask(levels, a: int, b: int) -> bool:
    return not (min_mask(levels, a) & b) and not (min_mask(levels, b) & a)


def counteracts_wrt(order: TotalPreorder, alpha: ModelSet, beta: ModelSet) -> bool:
    """Counteracts relative to any total preorder ``order``.

    With the single-level preorder this is plain logical inconsistency.
    """
    _check(order, alpha, beta)
    return counteracts_mask(order.levels, alpha.mask, beta.mask)


def counteracts(state: TotalPreorder, alpha: ModelSet, beta: ModelSet) -> bool:
    return counteracts_wrt(state, alpha, beta)


def counteracts_via_witnesses(state: TotalPreorder, alpha: ModelSet, beta: ModelSet) -> bool:
    """True iff some alpha-world and some beta-world are both strictly more
    plausible than every most-plausible (alpha and beta)-world.

    Inconsistent ``alpha``/``beta`` count as counteracting.
    """
    _check(state, alpha, beta)
    both = alpha & beta
    if not both:
        return True
    r = state.ranks
    floor = min(r[x] for x in both)
    return any(r[v] < floor for v in alpha) and any(r[w] < floor for w in beta)


def counteracts_by_revision(
    state: TotalPreorder,
    alpha: ModelSet,
    beta: ModelSet,
    op: RevisionOperator = restrained,
) -> bool:
    """Revise by each input and test that the other's negation is believed."""
    _check(state, alpha, beta)
    return believes(op(state, alpha), ~beta) and believes(op(state, beta), ~alpha)


@dataclass(frozen=True)
class CounteractQuery:
    state: TotalPreorder
    alpha: ModelSet
    beta: ModelSet

    def __post_init__(self):
        _check(self.state, self.alpha, self.beta)

    def holds(self) -> bool:
        return counteracts(self.state, self.alpha, self.beta)


def counteracts_table(order: TotalPreorder) -> np.ndarray:
    """Boolean matrix ``T[a, b]`` over all masks (row/column 0 is the empty set, left False).

    Only meant for languages with at most 3 atoms.
    """
    if order.lang.size > 8:
        raise ValueError("counteracts tables are limited to 8 valuations")
    size = 1 << order.lang.size
    mins = np.zeros(size, dtype=np.int64)
    for a in range(1, size):
        mins[a] = min_mask(order.levels, a)
    masks = np.arange(size, dtype=np.int64)
    t = ((mins[:, None] & masks[None, :]) == 0) & ((mins[None, :] & masks[:, None]) == 0)
    t[0, :] = False
    t[:, 0] = False
    return t


def nonconverse_array(order: TotalPreorder) -> np.ndarray:
    """``W[a, b, g]`` is True when ``g`` does not counteract ``b`` but ``a | g`` does.

    Indices are model-set masks; any index 0 (the empty set) is False.
    """
    t = counteracts_table(order)
    size = t.shape[0]
    masks = np.arange(size)
    union = masks[:, None] | masks[None, :]
    w = t[union, :] & ~t[None, :, :]  # w[a, g, b]
    w[0, :, :] = False
    w[:, 0, :] = False
    w[:, :, 0] = False
    return w.transpose(0, 2, 1)


def disjunction_nonconverse_witnesses(order: TotalPreorder) -> Iterator[tuple[ModelSet, ModelSet, ModelSet]]:
    """Yield ``(alpha, beta, gamma)`` triples where gamma does not counteract
    beta but ``alpha | gamma`` does, in ascending ``(alpha, beta, gamma)``
    mask order. Every triple of nonempty model sets is covered.
    """
    lang = order.lang
    for a, b, g in zip(*np.nonzero(nonconverse_array(order))):
        yield ModelSet(lang, int(a)), ModelSet(lang, int(b)), ModelSet(lang, int(g))
