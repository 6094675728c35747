"""Propositional language, formulas and their model sets.

Valuations are integers in ``range(2 ** n)``. The bitstring of a valuation
lists atom values in declaration order, so with atoms ``(p, q)`` the string
``"01"`` means ``p = 0, q = 1`` and corresponds to the integer 1. The first
declared atom is therefore the most significant bit.

A :class:`ModelSet` is a bitmask over the valuations of one language: bit
``v`` is set iff valuation ``v`` is a member. Everything downstream of this
module works on model sets only, so two equivalent formulas can never be told
apart by any revision operator.

Formula grammar (whitespace insignificant)::

    formula := iff
    iff     := imp ("<->" imp)*
    imp     := or ("->" or)*
    or      := and ("|" and)*
    and     := not ("&" not)*
    not     := "~" not | atom | "true" | "false" | "(" formula ")"

Precedence is ``~ > & > | > -> > <->``. ``&`` and ``|`` associate to the
left; ``->`` and ``<->`` associate to the right.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property, reduce
from typing import Iterable, Iterator, Union

from ibrev.errors import FormulaSyntaxError, LanguageMismatchError, UnknownAtomError

MAX_ATOMS = 16
_ATOM_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")
_KEYWORDS = frozenset({"true", "false"})


@dataclass(frozen=True)
class Language:
    atoms: tuple[str, ...]

    def __post_init__(self):
        atoms = tuple(self.atoms)
        object.__setattr__(self, "atoms", atoms)
        if not 1 <= len(atoms) <= MAX_ATOMS:
            raise ValueError(f"a language needs between 1 and {MAX_ATOMS} atoms, got {len(atoms)}")
        for a in atoms:
            if not isinstance(a, str) or not _ATOM_RE.match(a) or a in _KEYWORDS:
                raise ValueError(f"invalid atom name {a!r}")
        if len(set(atoms)) != len(atoms):
            raise ValueError(f"duplicate atom names in {atoms}")

    @classmethod
    def of(cls, *atoms: str) -> "Language":
        if len(atoms) == 1 and not isinstance(atoms[0], str):
            atoms = tuple(atoms[0])
        return cls(tuple(atoms))

    @property
    def n(self) -> int:
        return len(self.atoms)

    @property
    def size(self) -> int:
        """Number of valuations, ``2 ** n``."""
        return 1 << len(self.atoms)

    @property
    def full_mask(self) -> int:
        return (1 << self.size) - 1

    @cached_property
    def atom_masks(self) -> dict[str, int]:
        n = self.n
        masks = {}
        for i, a in enumerate(self.atoms):
            shift = n - 1 - i
            m = 0
            for v in range(self.size):
                if (v >> shift) & 1:
                    m |= 1 << v
            masks[a] = m
        return masks

    def bits(self, v: int) -> str:
        return format(v, f"0{self.n}b")

    def valuation(self, bits: str) -> int:
        if len(bits) != self.n or set(bits) - {"0", "1"}:
            raise ValueError(f"{bits!r} is not a valuation over {self.n} atoms")
        return int(bits, 2)

    def assignment(self, v: int) -> dict[str, bool]:
        n = self.n
        return {a: bool((v >> (n - 1 - i)) & 1) for i, a in enumerate(self.atoms)}

    def valuations(self) -> range:
        return range(self.size)

    def __str__(self):
        return " ".join(self.atoms)


def default_language(n: int) -> Language:
    """Language with ``n`` conventionally named atoms (p, q, r, s, ...)."""
    names = "pqrstuvwxyzabcdefghijklmno"
    if not 1 <= n <= MAX_ATOMS:
        raise ValueError(f"atom count must be in 1..{MAX_ATOMS}")
    return Language(tuple(names[:n]))


def _popcount(x: int) -> int:
    return bin(x).count("1")


@dataclass(frozen=True)
class ModelSet:
    lang: Language
    mask: int

    def __post_init__(self):
        if self.mask < 0 or self.mask > self.lang.full_mask:
            raise ValueError("model set mask out of range for its language")

    @classmethod
    def empty(cls, lang: Language) -> "ModelSet":
        return cls(lang, 0)

    @classmethod
    def universe(cls, lang: Language) -> "ModelSet":
        return cls(lang, lang.full_mask)

    @classmethod
    def of(cls, lang: Language, members: Iterable[Union[int, str]]) -> "ModelSet":
        m = 0
        for v in members:
            if isinstance(v, str):
                v = lang.valuation(v)
            elif not 0 <= v < lang.size:
                raise ValueError(f"valuation {v} out of range")
            m |= 1 << v
        return cls(lang, m)

    def _check(self, other: "ModelSet"):
        if not isinstance(other, ModelSet):
            return NotImplemented
        if other.lang != self.lang:
            raise LanguageMismatchError(f"model sets over different languages: ({self.lang}) vs ({other.lang})")
        return None

    def __and__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return ModelSet(self.lang, self.mask & other.mask)

    def __or__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return ModelSet(self.lang, self.mask | other.mask)

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return ModelSet(self.lang, self.mask & ~other.mask)

    def __invert__(self):
        return ModelSet(self.lang, self.lang.full_mask & ~self.mask)

    def complement(self) -> "ModelSet":
        return ~self

    def __contains__(self, v) -> bool:
        if isinstance(v, str):
            v = self.lang.valuation(v)
        return bool((self.mask >> v) & 1)

    def __iter__(self) -> Iterator[int]:
        m, v = self.mask, 0
        while m:
            if m & 1:
                yield v
            m >>= 1
            v += 1

    def __len__(self):
        return _popcount(self.mask)

    def __bool__(self):
        return self.mask != 0

    def issubset(self, other: "ModelSet") -> bool:
        self._check(other)
        return self.mask & ~other.mask == 0

    def bitstrings(self) -> list[str]:
        """Members as bitstrings, highest valuation first (``11 10 01 00``)."""
        return [self.lang.bits(v) for v in sorted(self, reverse=True)]

    def __str__(self):
        return "{" + " ".join(self.bitstrings()) + "}"

    def __repr__(self):
        return f"ModelSet({self})"


def entails(a: ModelSet, b: ModelSet) -> bool:
    """``a |= b`` read semantically: every model of ``a`` is a model of ``b``."""
    return a.issubset(b)


def equivalent(a: ModelSet, b: ModelSet) -> bool:
    if a.lang != b.lang:
        raise LanguageMismatchError(f"model sets over different languages: ({a.lang}) vs ({b.lang})")
    return a.mask == b.mask


# -- formulas ---------------------------------------------------------------


class Formula:
    __slots__ = ()

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class Const(Formula):
    value: bool


@dataclass(frozen=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


TOP = Const(True)
BOTTOM = Const(False)

_TOKEN_RE = re.compile(r"\s*(?:(<->|->|[~&|()])|([A-Za-z][A-Za-z0-9_]*))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            start = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise FormulaSyntaxError(f"unexpected character {text[start]!r}", _byte_offset(text, start))
        if m.group(1):
            tokens.append(("op", m.group(1), m.start(1)))
        else:
            tokens.append(("id", m.group(2), m.start(2)))
        pos = m.end()
    return tokens


def _byte_offset(text: str, index: int) -> int:
    return len(text[:index].encode("utf-8"))


class _Parser:
    def __init__(self, text: str, lang: Language):
        self.text = text
        self.lang = lang
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def offset(self):
        tok = self.peek()
        return _byte_offset(self.text, tok[2] if tok else len(self.text))

    def accept(self, op):
        tok = self.peek()
        if tok is not None and tok[0] == "op" and tok[1] == op:
            self.i += 1
            return True
        return False

    def parse(self) -> Formula:
        f = self.iff()
        if self.peek() is not None:
            raise FormulaSyntaxError(f"unexpected {self.peek()[1]!r}", self.offset())
        return f

    def _right_chain(self, sub, op, node):
        parts = [sub()]
        while self.accept(op):
            parts.append(sub())
        return reduce(lambda r, l: node(l, r), reversed(parts[:-1]), parts[-1])

    def _left_chain(self, sub, op, node):
        f = sub()
        while self.accept(op):
            f = node(f, sub())
        return f

    def iff(self):
        return self._right_chain(self.imp, "<->", Iff)

    def imp(self):
        return self._right_chain(self.disj, "->", Implies)

    def disj(self):
        return self._left_chain(self.conj, "|", Or)

    def conj(self):
        return self._left_chain(self.neg, "&", And)

    def neg(self):
        tok = self.peek()
        if tok is None:
            raise FormulaSyntaxError("unexpected end of input", self.offset())
        kind, value, _ = tok
        if kind == "op" and value == "~":
            self.i += 1
            return Not(self.neg())
        if kind == "op" and value == "(":
            self.i += 1
            f = self.iff()
            if not self.accept(")"):
                raise FormulaSyntaxError("expected ')'", self.offset())
            return f
        if kind == "id":
            self.i += 1
            if value == "true":
                return TOP
            if value == "false":
                return BOTTOM
            if value not in self.lang.atom_masks:
                raise UnknownAtomError(value)
            return Atom(value)
        raise FormulaSyntaxError(f"unexpected {value!r}", self.offset())


def parse(text: str, lang: Language) -> Formula:
    """Parse ``text`` into a formula over ``lang``.

    Raises :class:`FormulaSyntaxError` (with a byte offset) on malformed input
    and :class:`UnknownAtomError` for atoms not declared in ``lang``.
    """
    if not text or not text.strip():
        raise FormulaSyntaxError("empty formula", 0)
    return _Parser(text, lang).parse()


_PREC = {Iff: 1, Implies: 2, Or: 3, And: 4}
_SYMBOL = {Iff: "<->", Implies: "->", Or: "|", And: "&"}
_RIGHT_ASSOC = (Iff, Implies)


def _prec(f: Formula) -> int:
    return _PREC.get(type(f), 5)


def to_text(f: Formula) -> str:
    """Render with the fewest parentheses that still round-trip through :func:`parse`."""
    if isinstance(f, Const):
        return "true" if f.value else "false"
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Not):
        inner = to_text(f.arg)
        return "~" + (inner if _prec(f.arg) >= 5 else f"({inner})")
    p = _PREC[type(f)]
    left, right = to_text(f.left), to_text(f.right)
    if isinstance(f, _RIGHT_ASSOC):
        wrap_left, wrap_right = _prec(f.left) <= p, _prec(f.right) < p
    else:
        wrap_left, wrap_right = _prec(f.left) < p, _prec(f.right) <= p
    if wrap_left:
        left = f"({left})"
    if wrap_right:
        right = f"({right})"
    return f"{left} {_SYMBOL[type(f)]} {right}"


def atoms_of(f: Formula) -> set[str]:
    if isinstance(f, Const):
        return set()
    if isinstance(f, Atom):
        return {f.name}
    if isinstance(f, Not):
        return atoms_of(f.arg)
    return atoms_of(f.left) | atoms_of(f.right)


def evaluate(f: Formula, assignment: dict[str, bool]) -> bool:
    """Truth value of ``f`` under a single assignment."""
    if isinstance(f, Const):
        return f.value
    if isinstance(f, Atom):
        return assignment[f.name]
    if isinstance(f, Not):
        return not evaluate(f.arg, assignment)
    l, r = evaluate(f.left, assignment), evaluate(f.right, assignment)
    if isinstance(f, And):
        return l and r
    if isinstance(f, Or):
        return l or r
    if isinstance(f, Implies):
        return (not l) or r
    return l == r


def _mask(f: Formula, lang: Language) -> int:
    full = lang.full_mask
    if isinstance(f, Const):
        return full if f.value else 0
    if isinstance(f, Atom):
        try:
            return lang.atom_masks[f.name]
        except KeyError:
            raise UnknownAtomError(f.name) from None
    if isinstance(f, Not):
        return full & ~_mask(f.arg, lang)
    l, r = _mask(f.left, lang), _mask(f.right, lang)
    if isinstance(f, And):
        return l & r
    if isinstance(f, Or):
        return l | r
    if isinstance(f, Implies):
        return (full & ~l) | r
    return full & ~(l ^ r)


def models(f: Union[Formula, str], lang: Language) -> ModelSet:
    """The set of valuations of ``lang`` satisfying ``f`` (text is parsed first)."""
    if isinstance(f, str):
        f = parse(f, lang)
    return ModelSet(lang, _mask(f, lang))


def describe(ms: ModelSet) -> str:
    """A formula (disjunction of full conjunctions) whose models are ``ms``."""
    if not ms:
        return "false"
    if ms.mask == ms.lang.full_mask:
        return "true"
    terms = []
    for v in sorted(ms, reverse=True):
        lits = [a if val else f"~{a}" for a, val in ms.lang.assignment(v).items()]
        terms.append(" & ".join(lits))
    if len(terms) == 1:
        return terms[0]
    return " | ".join(f"({t})" if len(ms.lang.atoms) > 1 else t for t in terms)
