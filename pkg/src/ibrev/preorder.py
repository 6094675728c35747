"""Total preorders over valuations, used as epistemic states.

A state is stored as a tuple of level bitmasks, most plausible level first.
Levels are nonempty, pairwise disjoint and cover every valuation, so two
states are equal exactly when they induce the same preorder.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from functools import cached_property
from math import comb
from typing import Iterable, Iterator, Mapping, Sequence, Union

from ibrev.errors import EmptyInputError, InvalidPreorderError, LanguageMismatchError
from ibrev.logic import Language, ModelSet

LevelSpec = Union[ModelSet, int, Iterable[Union[int, str]]]


@dataclass(frozen=True)
class TotalPreorder:
    lang: Language
    levels: tuple[int, ...]
    _validate: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "levels", tuple(self.levels))
        if self._validate:
            _check_partition(self.lang, self.levels)

    def __hash__(self):
        return self._hash

    @cached_property
    def _hash(self):
        return hash((self.lang, self.levels))

    @cached_property
    def ranks(self) -> tuple[int, ...]:
        """``ranks[v]`` is the level index of valuation ``v``."""
        r = [0] * self.lang.size
        for i, lvl in enumerate(self.levels):
            for v in _bits(lvl):
                r[v] = i
        return tuple(r)

    def rank(self, v: Union[int, str]) -> int:
        if isinstance(v, str):
            v = self.lang.valuation(v)
        return self.ranks[v]

    def leq(self, v, w) -> bool:
        return self.rank(v) <= self.rank(w)

    def lt(self, v, w) -> bool:
        return self.rank(v) < self.rank(w)

    @property
    def height(self) -> int:
        return len(self.levels)

    def level_sets(self) -> list[ModelSet]:
        return [ModelSet(self.lang, m) for m in self.levels]

    def to_json(self) -> list[list[str]]:
        return [ms.bitstrings() for ms in self.level_sets()]

    def __str__(self):
        return " ".join(str(ms) for ms in self.level_sets())

    @classmethod
    def parse(cls, lang: Language, text: str) -> "TotalPreorder":
        """Read the canonical text form, e.g. ``{11 10} {01 00}``."""
        groups = re.findall(r"\{([^{}]*)\}", text)
        rest = re.sub(r"\{[^{}]*\}", "", text)
        if rest.strip() or not groups:
            raise InvalidPreorderError(f"cannot read levels from {text!r}")
        levels = []
        for g in groups:
            items = g.replace(",", " ").split()
            try:
                levels.append(ModelSet.of(lang, items).mask)
            except ValueError as exc:
                raise InvalidPreorderError(str(exc)) from None
        return from_levels(lang, levels)


def _bits(mask: int) -> Iterator[int]:
    v = 0
    while mask:
        if mask & 1:
            yield v
        mask >>= 1
        v += 1


def _check_partition(lang: Language, levels: Sequence[int]):
    seen = 0
    for i, lvl in enumerate(levels):
        if lvl == 0:
            raise InvalidPreorderError(f"level {i} is empty")
        if lvl & seen:
            raise InvalidPreorderError(f"level {i} overlaps an earlier level")
        if lvl & ~lang.full_mask:
            raise InvalidPreorderError(f"level {i} contains valuations outside the language")
        seen |= lvl
    if seen != lang.full_mask:
        missing = ModelSet(lang, lang.full_mask & ~seen)
        raise InvalidPreorderError(f"valuations {missing} are unranked")


def _level_mask(lang: Language, spec: LevelSpec) -> int:
    if isinstance(spec, ModelSet):
        if spec.lang != lang:
            raise LanguageMismatchError("level over a different language")
        return spec.mask
    if isinstance(spec, int):
        return spec
    return ModelSet.of(lang, spec).mask


def from_levels(lang: Language, levels: Sequence[LevelSpec]) -> TotalPreorder:
    """Build a state from levels listed most plausible first."""
    return TotalPreorder(lang, tuple(_level_mask(lang, s) for s in levels))


def _raw(lang: Language, levels) -> TotalPreorder:
    # trusted constructor for operator results
    return TotalPreorder(lang, tuple(levels), _validate=False)


def uniform(lang: Language) -> TotalPreorder:
    return _raw(lang, (lang.full_mask,))


def faithful_from_kb(kb: ModelSet) -> TotalPreorder:
    """Two-level state: the models of ``kb`` below everything else."""
    if not kb:
        raise EmptyInputError("knowledge base has no models")
    rest = kb.lang.full_mask & ~kb.mask
    return _raw(kb.lang, (kb.mask, rest) if rest else (kb.mask,))


def normalize(lang: Language, rankmap: Mapping[Union[int, str], int]) -> TotalPreorder:
    """Compress an arbitrary total rank map into contiguous levels."""
    ranks: dict[int, int] = {}
    for k, r in rankmap.items():
        v = lang.valuation(k) if isinstance(k, str) else k
        ranks[v] = r
    if set(ranks) != set(lang.valuations()):
        raise InvalidPreorderError("rank map must assign every valuation")
    by_rank: dict[int, int] = {}
    for v, r in ranks.items():
        by_rank[r] = by_rank.get(r, 0) | (1 << v)
    return _raw(lang, tuple(by_rank[r] for r in sorted(by_rank)))


def min_models(state: TotalPreorder, a: ModelSet) -> ModelSet:
    if a.lang != state.lang:
        raise LanguageMismatchError("input and state use different languages")
    return ModelSet(state.lang, min_mask(state.levels, a.mask))


def min_mask(levels: Sequence[int], a: int) -> int:
    for lvl in levels:
        m = lvl & a
        if m:
            return m
    raise EmptyInputError()


def belief_set(state: TotalPreorder) -> ModelSet:
    return ModelSet(state.lang, state.levels[0])


def believes(state: TotalPreorder, a: ModelSet) -> bool:
    if a.lang != state.lang:
        raise LanguageMismatchError("input and state use different languages")
    return state.levels[0] & ~a.mask == 0


@dataclass(frozen=True)
class InputSequence:
    inputs: tuple[ModelSet, ...]

    def __post_init__(self):
        inputs = tuple(self.inputs)
        object.__setattr__(self, "inputs", inputs)
        if not inputs:
            raise ValueError("an input sequence must be nonempty")
        for i, a in enumerate(inputs):
            if not a:
                raise EmptyInputError(index=i)
        if len({a.lang for a in inputs}) != 1:
            raise LanguageMismatchError("inputs use different languages")

    def __iter__(self):
        return iter(self.inputs)

    def __len__(self):
        return len(self.inputs)


# -- enumeration ------------------------------------------------------------


def _submasks_ascending(m: int) -> Iterator[int]:
    s = (0 - m) & m
    while s:
        yield s
        if s == m:
            return
        s = (s - m) & m


def enumerate_level_tuples(universe: int) -> Iterator[tuple[int, ...]]:
    """Every ordered partition of the bits of ``universe`` into nonempty blocks.

    Levels are chosen bottom-up; at each step the candidate level runs over the
    nonempty submasks of the remaining valuations in ascending numeric order.
    """
    stack: list[int] = []

    def rec(rem):
        for s in _submasks_ascending(rem):
            stack.append(s)
            if s == rem:
                yield tuple(stack)
            else:
                yield from rec(rem & ~s)
            stack.pop()

    if universe == 0:
        return iter(())
    return rec(universe)


def enumerate_preorders(lang: Language) -> Iterator[TotalPreorder]:
    """Lazily yield every total preorder over the valuations of ``lang`` once."""
    for levels in enumerate_level_tuples(lang.full_mask):
        yield _raw(lang, levels)


def count_ordered_partitions(k: int) -> int:
    """Number of total preorders on a ``k``-element set (the Fubini number)."""
    a = [1]
    for n in range(1, k + 1):
        a.append(sum(comb(n, j) * a[n - j] for j in range(1, n + 1)))
    return a[k]


def count_preorders(lang: Language) -> int:
    return count_ordered_partitions(lang.size)


def _stirling2_table(n: int) -> list[list[int]]:
    s = [[0] * (n + 1) for _ in range(n + 1)]
    s[0][0] = 1
    for i in range(1, n + 1):
        for k in range(1, i + 1):
            s[i][k] = k * s[i - 1][k] + s[i - 1][k - 1]
    return s


def sample_preorder(lang: Language, seed: int) -> TotalPreorder:
    """Deterministic pseudo-random state for ``(lang, seed)``.

    The number of levels ``k`` is uniform on ``1..|V|``; given ``k`` the
    assignment of valuations to levels is uniform over all surjective
    assignments. That is the distribution obtained by assigning each valuation
    a uniform level and rejecting non-surjective draws, but it is sampled
    directly (set partition via Stirling numbers, then a random block order)
    so large ``k`` does not stall.
    """
    rng = random.Random(f"{lang.atoms}:{seed}")
    size = lang.size
    k = rng.randint(1, size)
    table = _stirling2_table(size)
    # Walk valuations from the top. At (n, open_left) valuation n-1 either opens
    # a fresh block (prob S(n-1, open_left-1) / S(n, open_left)) or joins one of
    # the open_left blocks still to be opened further down, uniformly.
    members = [0] * k
    opened = 0
    pending: list[tuple[int, int]] = []
    open_left = k
    for n in range(size, 0, -1):
        v = n - 1
        if rng.randrange(table[n][open_left]) < table[n - 1][open_left - 1]:
            members[opened] |= 1 << v
            opened += 1
            open_left -= 1
        else:
            pending.append((v, opened + rng.randrange(open_left)))
    for v, b in pending:
        members[b] |= 1 << v
    rng.shuffle(members)
    return _raw(lang, tuple(members))
