"""Executable postulates for iterated revision and sweep drivers.

Each postulate is a check over an instance ``(state, inputs)``. A check
returns ``None`` when its antecedent fails (the instance is vacuous), or a
boolean verdict otherwise; vacuous instances count as satisfied but are
tallied separately.

Belief sets are compared through their model sets. For theories ``X, Y``:
``X`` is a subset of ``Y`` iff ``[Y]`` is a subset of ``[X]``, a sentence is
in ``X`` iff ``[X]`` is inside its models, and ``X`` together with ``Y`` is
inconsistent iff ``[X]`` and ``[Y]`` are disjoint.

Quantification over formulas is replaced by quantification over nonempty
model sets, which exhausts the semantic input space: 15 inputs over two
atoms, 255 over three.
"""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Optional, Sequence, Union

from ibrev.counteracts import counteracts_mask
from ibrev.errors import ArityError, EmptyInputError, LanguageMismatchError
from ibrev.logic import Language, ModelSet
from ibrev.operators import RevisionOperator, get_operator, restrained
from ibrev.preorder import (
    InputSequence,
    TotalPreorder,
    _raw,
    count_preorders,
    enumerate_preorders,
    min_mask,
    sample_preorder,
)

SYNTACTIC = "syntactic"
SEMANTIC = "semantic"
SEQUENCE = "sequence"


class _Memo:
    """Memoized raw application of one operator."""

    def __init__(self, op: RevisionOperator, full: int):
        self.fn = op.levels_fn
        self.full = full
        self.table: dict = {}
        self.rank_table: dict = {}

    def __call__(self, levels, a):
        key = (levels, a)
        try:
            return self.table[key]
        except KeyError:
            out = self.table[key] = self.fn(levels, a)
            return out

    def ranks(self, levels, size):
        try:
            return self.rank_table[levels]
        except KeyError:
            r = [0] * size
            for i, lvl in enumerate(levels):
                v = 0
                while lvl:
                    if lvl & 1:
                        r[v] = i
                    lvl >>= 1
                    v += 1
            self.rank_table[levels] = r
            return r


# -- syntactic postulates (two-step revisions) ---------------------------------


def _ragm(rev, e, a):
    return rev(e, a)[0] == min_mask(e, a)


def _c1(rev, e, a, b):
    if b & ~a:
        return None
    return rev(rev(e, a), b)[0] == rev(e, b)[0]


def _c2(rev, e, a, b):
    if b & a:
        return None
    return rev(rev(e, a), b)[0] == rev(e, b)[0]


def _c3(rev, e, a, b):
    if rev(e, b)[0] & ~a:
        return None
    return rev(rev(e, a), b)[0] & ~a == 0


def _c4(rev, e, a, b):
    if not rev(e, b)[0] & a:
        return None
    return rev(rev(e, a), b)[0] & a != 0


def _p(rev, e, a, b):
    if not rev(e, b)[0] & a:
        return None
    return rev(rev(e, a), b)[0] & ~a == 0


def _d(rev, e, a, b):
    if not counteracts_mask(e, a, b):
        return None
    return rev(rev(e, a), b)[0] & a == 0


def _cb(rev, e, a, b):
    if rev(e, a)[0] & b:
        return None
    return rev(rev(e, a), b)[0] == rev(e, b)[0]


def _rec(rev, e, a, b):
    if not a & b:
        return None
    return rev(rev(e, a), b)[0] & ~a == 0


def _c1p(rev, e, a, b):
    if not rev(e, b)[0] & a:
        return None
    if not a & b:
        return False  # consequent would revise by an inconsistent input
    return rev(rev(e, a), b)[0] == rev(e, a & b)[0]


def _c2d(rev, e, a, b):
    if not counteracts_mask(e, a, b):
        return None
    return rev(rev(e, a), b)[0] == rev(e, b)[0]


def _t(rev, e, a, b):
    two_step = rev(rev(e, a), b)[0]
    if counteracts_mask(e, a, b):
        return two_step == rev(e, b)[0]
    # not counteracting implies a & b is consistent
    return two_step == rev(e, a & b)[0]


def _u(rev, e, a, b):
    after = rev(rev(e, a), b)[0]
    if not after & a:
        return None
    return after & ~a == 0


def _s(rev, e, a, b):
    na = rev.full & ~a
    if not na:
        return None  # revising by the negation of a tautology is undefined
    if rev(e, a)[0] & b or rev(e, na)[0] & b:
        return None
    ea = rev(e, a)
    return rev(rev(ea, na), b)[0] == rev(ea, b)[0]


def _disj_sets(rev, e, a, b, g):
    b1 = rev(rev(e, a), b)[0]
    b2 = rev(rev(e, g), b)[0]
    bo = rev(rev(e, a | g), b)[0]
    return b1, b2, bo


def _disj1(rev, e, a, b, g):
    b1, b2, bo = _disj_sets(rev, e, a, b, g)
    return bo & ~(b1 | b2) == 0


def _disj2(rev, e, a, b, g):
    b1, b2, bo = _disj_sets(rev, e, a, b, g)
    return b1 & ~bo == 0 or b2 & ~bo == 0


# -- semantic postulates (pointwise over valuation pairs) -----------------------


def _pairs_check(rev, e, a, cond):
    size = rev.full.bit_length()
    new = rev(e, a)
    r, r2 = rev.ranks(e, size), rev.ranks(new, size)
    bottom = new[0]
    seen = False
    for v in range(size):
        va = (a >> v) & 1
        vb = (bottom >> v) & 1
        for w in range(size):
            verdict = cond(r[v], r[w], r2[v], r2[w], va, (a >> w) & 1, vb, (bottom >> w) & 1)
            if verdict is None:
                continue
            seen = True
            if not verdict:
                return False
    return True if seen else None


def _cr1(o_v, o_w, n_v, n_w, va, wa, vb, wb):
    if va and wa:
        return (o_v <= o_w) == (n_v <= n_w)
    return None


def _cr2(o_v, o_w, n_v, n_w, va, wa, vb, wb):
    if not va and not wa:
        return (o_v <= o_w) == (n_v <= n_w)
    return None


def _cr3(o_v, o_w, n_v, n_w, va, wa, vb, wb):
    if va and not wa:
        return not o_v < o_w or n_v < n_w
    return None


def _cr4(o_v, o_w, n_v, n_w, va, wa, vb, wb):
    if va and not wa:
        return not o_v <= o_w or n_v <= n_w
    return None


def _pr(o_v, o_w, n_v, n_w, va, wa, vb, wb):
    if va and not wa:
        return not o_v <= o_w or n_v < n_w
    return None


def _dr(o_v, o_w, n_v, n_w, va, wa, vb, wb):
    if not va and wa and not wb:
        return not o_v < o_w or n_v < n_w
    return None


def _rr(o_v, o_w, n_v, n_w, va, wa, vb, wb):
    if vb or wb:
        return None
    expected = o_v < o_w or (o_v <= o_w and (va or not wa))
    return (n_v <= n_w) == bool(expected)


def _ur(o_v, o_w, n_v, n_w, va, wa, vb, wb):
    if va and not wa:
        return n_v != n_w
    return None


def _cbr(o_v, o_w, n_v, n_w, va, wa, vb, wb):
    if vb or wb:
        return None
    return (n_v <= n_w) == (o_v <= o_w)


def _r(o_v, o_w, n_v, n_w, va, wa, vb, wb):
    if va and not wa:
        return n_v < n_w
    return None


def _semantic(cond):
    def check(rev, e, a):
        return _pairs_check(rev, e, a, cond)

    return check


# -- sequence postulates --------------------------------------------------------


def _fold(rev, e, seq):
    for g in seq:
        e = rev(e, g)
    return e


def _o(rev, e, seq):
    bel = e[0]
    if any(not bel & g for g in seq):
        return None
    return _fold(rev, e, seq)[0] & ~bel == 0


def _q(rev, e, a, seq):
    ea = rev(e, a)
    if e[0] & ea[0]:
        return None
    if any(not e[0] & g or not ea[0] & g for g in seq):
        return None
    final = _fold(rev, ea, seq)[0]
    return final & ~ea[0] == 0 and final & ~e[0] != 0


@dataclass(frozen=True)
class Postulate:
    id: str
    kind: str
    arity: int  # number of single inputs; sequence postulates add one sequence
    check: Callable = field(repr=False)
    summary: str = ""


_TABLE = [
    Postulate("RAGM", SYNTACTIC, 1, _ragm, "bottom level of E*a is min(a, E)"),
    Postulate("C1", SYNTACTIC, 2, _c1, "b |= a  =>  B(E*a*b) = B(E*b)"),
    Postulate("C2", SYNTACTIC, 2, _c2, "b |= ~a  =>  B(E*a*b) = B(E*b)"),
    Postulate("C3", SYNTACTIC, 2, _c3, "a in B(E*b)  =>  a in B(E*a*b)"),
    Postulate("C4", SYNTACTIC, 2, _c4, "~a not in B(E*b)  =>  ~a not in B(E*a*b)"),
    Postulate("P", SYNTACTIC, 2, _p, "~a not in B(E*b)  =>  a in B(E*a*b)"),
    Postulate("D", SYNTACTIC, 2, _d, "a, b counteract  =>  ~a in B(E*a*b)"),
    Postulate("CB", SYNTACTIC, 2, _cb, "~b in B(E*a)  =>  B(E*a*b) = B(E*b)"),
    Postulate("REC", SYNTACTIC, 2, _rec, "a & b consistent  =>  a in B(E*a*b)"),
    Postulate("C1P", SYNTACTIC, 2, _c1p, "~a not in B(E*b)  =>  B(E*a*b) = B(E*(a&b))"),
    Postulate("C2D", SYNTACTIC, 2, _c2d, "a, b counteract  =>  B(E*a*b) = B(E*b)"),
    Postulate("T", SYNTACTIC, 2, _t, "B(E*a*b) = B(E*b) if a, b counteract else B(E*(a&b))"),
    Postulate("U", SYNTACTIC, 2, _u, "~a not in B(E*a*b)  =>  a in B(E*a*b)"),
    Postulate("S", SYNTACTIC, 2, _s, "~b in B(E*a), B(E*~a)  =>  B(E*a*~a*b) = B(E*a*b)"),
    Postulate("DISJ1", SYNTACTIC, 3, _disj1, "B(E*a*b) & B(E*g*b) within B(E*(a|g)*b)"),
    Postulate("DISJ2", SYNTACTIC, 3, _disj2, "B(E*(a|g)*b) within B(E*a*b) | B(E*g*b)"),
    Postulate("CR1", SEMANTIC, 1, _semantic(_cr1), "order among a-worlds kept"),
    Postulate("CR2", SEMANTIC, 1, _semantic(_cr2), "order among ~a-worlds kept"),
    Postulate("CR3", SEMANTIC, 1, _semantic(_cr3), "a-world strictly below ~a-world stays so"),
    Postulate("CR4", SEMANTIC, 1, _semantic(_cr4), "a-world weakly below ~a-world stays so"),
    Postulate("PR", SEMANTIC, 1, _semantic(_pr), "a-world weakly below ~a-world becomes strictly below"),
    Postulate("DR", SEMANTIC, 1, _semantic(_dr), "~a-world strictly below non-minimal a-world stays so"),
    Postulate("RR", SEMANTIC, 1, _semantic(_rr), "outside the bottom, old order with ties split by a"),
    Postulate("UR", SEMANTIC, 1, _semantic(_ur), "no a-world tied with a ~a-world"),
    Postulate("CBR", SEMANTIC, 1, _semantic(_cbr), "outside the bottom, old order kept exactly"),
    Postulate("R", SEMANTIC, 1, _semantic(_r), "every a-world strictly below every ~a-world"),
    Postulate("O", SEQUENCE, 0, _o, "E compatible with G  =>  B(E) within B(E*G)"),
    Postulate("Q", SEQUENCE, 1, _q, "E, E*a compatible with G, B(E), B(E*a) clash  =>  B(E*a) kept, B(E) not"),
]

POSTULATES: dict[str, Postulate] = {p.id: p for p in _TABLE}

#: Paired syntactic / semantic formulations that coincide under RAGM.
CORRESPONDENCES = (
    ("C1", "CR1"),
    ("C2", "CR2"),
    ("C3", "CR3"),
    ("C4", "CR4"),
    ("P", "PR"),
    ("D", "DR"),
    ("U", "UR"),
    ("CB", "CBR"),
    ("REC", "R"),
)


def get_postulate(pid: Union[str, Postulate]) -> Postulate:
    if isinstance(pid, Postulate):
        return pid
    try:
        return POSTULATES[pid.upper()]
    except KeyError:
        raise ValueError(f"unknown postulate {pid!r}") from None


# -- instances and single checks ---------------------------------------------------


@dataclass(frozen=True)
class Instance:
    """A state plus the quantified inputs of one postulate.

    For sequence postulates the inputs are the single inputs (``Q`` has one)
    followed by the sequence.
    """

    state: TotalPreorder
    inputs: tuple[ModelSet, ...]

    def __post_init__(self):
        object.__setattr__(self, "inputs", tuple(self.inputs))
        for i, a in enumerate(self.inputs):
            if a.lang != self.state.lang:
                raise LanguageMismatchError("instance inputs use a different language")
            if not a:
                raise EmptyInputError(index=i)

    def to_json(self) -> dict:
        return {"state": self.state.to_json(), "inputs": [a.bitstrings() for a in self.inputs]}

    def __str__(self):
        return f"state {self.state} inputs " + " ".join(str(a) for a in self.inputs)


def _run(p: Postulate, op: RevisionOperator, state: TotalPreorder, masks: Sequence[int]):
    rev = _Memo(op, state.lang.full_mask)
    if p.kind == SEQUENCE:
        singles, seq = masks[: p.arity], tuple(masks[p.arity :])
        if not seq:
            raise ArityError(f"{p.id} needs a nonempty input sequence")
        return p.check(rev, state.levels, *singles, seq)
    return p.check(rev, state.levels, *masks)


def evaluate(p, op, inst: Instance) -> Optional[bool]:
    """Raw verdict: ``None`` when vacuous, else whether the postulate holds."""
    p = get_postulate(p)
    op = get_operator(op)
    masks = [a.mask for a in inst.inputs]
    if p.kind == SEQUENCE:
        if len(masks) <= p.arity:
            raise ArityError(f"{p.id} needs {p.arity} input(s) plus a nonempty sequence")
    elif len(masks) != p.arity:
        raise ArityError(f"{p.id} takes {p.arity} input(s), got {len(masks)}")
    return _run(p, op, inst.state, masks)


def check_syntactic(p, op, inst: Instance) -> bool:
    p = get_postulate(p)
    if p.kind != SYNTACTIC:
        raise ArityError(f"{p.id} is not a syntactic postulate")
    return evaluate(p, op, inst) is not False


def check_semantic(p, op, state: TotalPreorder, a: ModelSet) -> bool:
    p = get_postulate(p)
    if p.kind != SEMANTIC:
        raise ArityError(f"{p.id} is not a semantic postulate")
    if not a:
        raise EmptyInputError()
    return evaluate(p, op, Instance(state, (a,))) is not False


def check_sequence(p, op, state: TotalPreorder, seq, alpha: Optional[ModelSet] = None) -> bool:
    p = get_postulate(p)
    if p.kind != SEQUENCE:
        raise ArityError(f"{p.id} is not a sequence postulate")
    seq = seq if isinstance(seq, InputSequence) else InputSequence(tuple(seq))
    singles = () if alpha is None else (alpha,)
    if len(singles) != p.arity:
        raise ArityError(f"{p.id} takes {p.arity} single input(s) besides the sequence")
    return evaluate(p, op, Instance(state, singles + seq.inputs)) is not False


# -- reports ------------------------------------------------------------------------


@dataclass
class PostulateReport:
    operator: str
    postulate: str
    mode: str
    instances_checked: int = 0
    vacuous_count: int = 0
    violations: int = 0
    first_counterexample: Optional[Instance] = None
    complete: bool = True

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def to_json(self) -> dict:
        return {
            "operator": self.operator,
            "postulate": self.postulate,
            "mode": self.mode,
            "instances_checked": self.instances_checked,
            "vacuous_count": self.vacuous_count,
            "violations": self.violations,
            "first_counterexample": None if self.first_counterexample is None else self.first_counterexample.to_json(),
        }

    def to_text(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        line = (
            f"{self.operator:<14} {self.postulate:<6} {self.mode:<10} {verdict}  "
            f"checked={self.instances_checked} vacuous={self.vacuous_count} violations={self.violations}"
        )
        if not self.complete:
            line += "  (budget exceeded, partial)"
        if self.first_counterexample is not None:
            line += f"\n    counterexample: {self.first_counterexample}"
        return line


@dataclass(frozen=True)
class Budget:
    samples: int = 1000
    seed: int = 0
    max_seq_len: int = 3
    max_instances: Optional[int] = 10_000_000


# -- sweep drivers -------------------------------------------------------------------


def _per_state_count(p: Postulate, n_inputs: int, max_seq_len: int) -> int:
    if p.kind != SEQUENCE:
        return n_inputs ** p.arity
    seqs = sum(n_inputs**k for k in range(1, max_seq_len + 1))
    return n_inputs ** p.arity * seqs


def _sequence_tuples(inputs, max_seq_len) -> Iterator[tuple]:
    for k in range(1, max_seq_len + 1):
        yield from itertools.product(inputs, repeat=k)


class _Tally:
    def __init__(self, limit):
        self.checked = 0
        self.vacuous = 0
        self.violations = 0
        self.first = None
        self.limit = limit

    def add(self, verdict, make_instance):
        self.checked += 1
        if verdict is None:
            self.vacuous += 1
        elif not verdict:
            self.violations += 1
            if self.first is None:
                self.first = make_instance()

    def add_vacuous(self, k):
        self.checked += k
        self.vacuous += k

    @property
    def full(self):
        return self.limit is not None and self.checked >= self.limit


def _sweep_state(p: Postulate, rev: _Memo, lang: Language, levels, inputs, max_seq_len, tally: _Tally):
    """Check every input tuple for one state, in canonical order."""

    def inst(masks):
        return lambda: Instance(_raw(lang, levels), tuple(ModelSet(lang, m) for m in masks))

    check = p.check
    if p.kind != SEQUENCE:
        for masks in itertools.product(inputs, repeat=p.arity):
            tally.add(check(rev, levels, *masks), inst(masks))
            if tally.full:
                return
        return

    total_seqs = sum(len(inputs) ** k for k in range(1, max_seq_len + 1))
    bel = levels[0]
    if p.id == "O":
        # sequences holding an input inconsistent with B(E) are vacuous
        ok = [g for g in inputs if bel & g]
        compatible = sum(len(ok) ** k for k in range(1, max_seq_len + 1))
        tally.add_vacuous(total_seqs - compatible)
        for seq in _sequence_tuples(ok, max_seq_len):
            tally.add(check(rev, levels, seq), inst(seq))
            if tally.full:
                return
        return
    if p.id == "Q":
        for a in inputs:
            ea = rev(levels, a)
            if bel & ea[0]:
                tally.add_vacuous(total_seqs)
            else:
                ok = [g for g in inputs if bel & g and ea[0] & g]
                compatible = sum(len(ok) ** k for k in range(1, max_seq_len + 1))
                tally.add_vacuous(total_seqs - compatible)
                for seq in _sequence_tuples(ok, max_seq_len):
                    tally.add(check(rev, levels, a, seq), inst((a,) + seq))
                    if tally.full:
                        return
            if tally.full:
                return
        return
    for singles in itertools.product(inputs, repeat=p.arity):
        for seq in _sequence_tuples(inputs, max_seq_len):
            tally.add(check(rev, levels, *singles, seq), inst(singles + seq))
            if tally.full:
                return


def _exhaustive_chunk(args):
    op_name, pid, atoms, max_seq_len, start, stop, limit = args
    lang = Language(atoms)
    p = POSTULATES[pid]
    rev = _Memo(get_operator(op_name), lang.full_mask)
    inputs = list(range(1, lang.full_mask + 1))
    tally = _Tally(limit)
    states = itertools.islice(enumerate_preorders(lang), start, stop)
    for s in states:
        _sweep_state(p, rev, lang, s.levels, inputs, max_seq_len, tally)
        if tally.full:
            break
    return tally.checked, tally.vacuous, tally.violations, tally.first


def _exhaustive(p: Postulate, op: RevisionOperator, lang: Language, budget: Budget, workers: int) -> PostulateReport:
    if lang.size > 4 and (p.arity >= 2 or p.kind == SEQUENCE):
        raise ValueError(
            f"exhaustive checking of {p.id} needs at most 2 atoms; use sample mode for larger languages"
        )
    n_states = count_preorders(lang)
    total = n_states * _per_state_count(p, lang.full_mask, budget.max_seq_len)
    limit = budget.max_instances
    report = PostulateReport(op.name, p.id, "exhaustive")
    if not _registered(op) or workers <= 1 or (limit is not None and total > limit):
        results = [_exhaustive_serial(p, op, lang, budget.max_seq_len, limit)]
    else:
        bounds = [n_states * i // workers for i in range(workers + 1)]
        jobs = [
            (op.name, p.id, lang.atoms, budget.max_seq_len, bounds[i], bounds[i + 1], None)
            for i in range(workers)
        ]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_exhaustive_chunk, jobs))
    for checked, vacuous, violations, first in results:
        report.instances_checked += checked
        report.vacuous_count += vacuous
        report.violations += violations
        if report.first_counterexample is None and first is not None:
            report.first_counterexample = first
    report.complete = report.instances_checked >= total
    return report


def _exhaustive_serial(p, op, lang, max_seq_len, limit):
    rev = _Memo(op, lang.full_mask)
    inputs = list(range(1, lang.full_mask + 1))
    tally = _Tally(limit)
    for s in enumerate_preorders(lang):
        _sweep_state(p, rev, lang, s.levels, inputs, max_seq_len, tally)
        if tally.full:
            break
    return tally.checked, tally.vacuous, tally.violations, tally.first


def _registered(op: RevisionOperator) -> bool:
    # worker processes look operators up by name
    from ibrev.operators import OPERATORS

    return OPERATORS.get(op.name) is op


def _sample_instances(lang: Language, p: Postulate, budget: Budget) -> Iterator[tuple]:
    """Seeded stream of ``(levels, masks)``; sequence postulates append a
    sequence of uniform length in ``1..max_seq_len``."""
    rng = random.Random(budget.seed)
    top = lang.full_mask
    for _ in range(budget.samples):
        state = sample_preorder(lang, rng.getrandbits(64))
        singles = tuple(rng.randint(1, top) for _ in range(p.arity))
        if p.kind == SEQUENCE:
            k = rng.randint(1, budget.max_seq_len)
            yield state.levels, singles, tuple(rng.randint(1, top) for _ in range(k))
        else:
            yield state.levels, singles, None


def _sampled(p: Postulate, op: RevisionOperator, lang: Language, budget: Budget) -> PostulateReport:
    rev = _Memo(op, lang.full_mask)
    tally = _Tally(budget.max_instances)
    for levels, singles, seq in _sample_instances(lang, p, budget):
        masks = singles + (seq or ())
        make = lambda levels=levels, masks=masks: Instance(
            _raw(lang, levels), tuple(ModelSet(lang, m) for m in masks)
        )
        if seq is None:
            tally.add(p.check(rev, levels, *singles), make)
        else:
            tally.add(p.check(rev, levels, *singles, seq), make)
        if tally.full:
            break
    return PostulateReport(
        op.name,
        p.id,
        "sample",
        tally.checked,
        tally.vacuous,
        tally.violations,
        tally.first,
        complete=tally.checked >= budget.samples,
    )


def verify(
    op,
    postulates: Iterable,
    lang: Language,
    mode: str = "exhaustive",
    budget: Optional[Budget] = None,
    workers: int = 1,
) -> list[PostulateReport]:
    """One report per postulate, in the order given.

    Exhaustive mode walks states in :func:`enumerate_preorders` order and input
    tuples in ascending mask order (sequences by length, then
    lexicographically), so the first counterexample is canonical and the
    result does not depend on ``workers``. Sample mode is a deterministic
    function of ``budget.seed``.
    """
    op = get_operator(op)
    budget = budget or Budget()
    if mode not in ("exhaustive", "sample"):
        raise ValueError(f"unknown mode {mode!r}")
    reports = []
    for pid in postulates:
        p = get_postulate(pid)
        if mode == "exhaustive":
            reports.append(_exhaustive(p, op, lang, budget, workers))
        else:
            reports.append(_sampled(p, op, lang, budget))
    return reports


def compare_operators(op, oracle, lang: Language, mode: str = "exhaustive", budget: Optional[Budget] = None) -> PostulateReport:
    """Bit-exact agreement of two operators on single revisions.

    The report's postulate field reads ``ORACLE:<oracle name>``; a violation is
    an ``(state, input)`` pair on which the resulting states differ.
    """
    op, oracle = get_operator(op), get_operator(oracle)
    budget = budget or Budget()
    report = PostulateReport(op.name, f"ORACLE:{oracle.name}", mode)
    tally = _Tally(budget.max_instances)
    if mode == "exhaustive":
        pairs = (
            (s.levels, (a,)) for s in enumerate_preorders(lang) for a in range(1, lang.full_mask + 1)
        )
    elif mode == "sample":
        pairs = ((levels, singles) for levels, singles, _ in _sample_instances(lang, POSTULATES["RAGM"], budget))
    else:
        raise ValueError(f"unknown mode {mode!r}")
    for levels, (a,) in pairs:
        same = op.levels_fn(levels, a) == oracle.levels_fn(levels, a)
        tally.add(same, lambda levels=levels, a=a: Instance(_raw(lang, levels), (ModelSet(lang, a),)))
        if tally.full:
            break
    report.instances_checked = tally.checked
    report.vacuous_count = tally.vacuous
    report.violations = tally.violations
    report.first_counterexample = tally.first
    expected = count_preorders(lang) * lang.full_mask if mode == "exhaustive" else budget.samples
    report.complete = tally.checked >= expected
    return report


# -- meta-level cross checks ----------------------------------------------------------


@dataclass
class MetaReport:
    operator: str
    verdicts: dict[str, bool]
    pairs: list[tuple[str, str, bool, bool]]
    rr_premises: bool
    matches_restrained: Optional[bool]

    @property
    def consistent(self) -> bool:
        """Every paired verdict agrees, and the RR characterization holds."""
        pairs_ok = all(a == b for _, _, a, b in self.pairs)
        rr_ok = self.verdicts["RR"] == self.rr_premises
        unique_ok = self.matches_restrained is not False
        return pairs_ok and rr_ok and unique_ok

    def to_text(self) -> str:
        lines = [f"meta cross-check for {self.operator}"]
        for syn, sem, a, b in self.pairs:
            mark = "agree" if a == b else "DISAGREE"
            lines.append(f"  {syn:<4} {'pass' if a else 'fail'}   {sem:<4} {'pass' if b else 'fail'}   {mark}")
        lines.append(f"  RAGM+CR1+CR2+PR+DR: {'pass' if self.rr_premises else 'fail'}   RR: {'pass' if self.verdicts['RR'] else 'fail'}")
        if self.matches_restrained is not None:
            lines.append(f"  bit-exact agreement with restrained: {self.matches_restrained}")
        return "\n".join(lines)


def cross_check_meta(op, lang: Language) -> MetaReport:
    """Exhaustively confirm the syntactic/semantic correspondences on ``op``.

    When ``op`` satisfies RAGM, CR1, CR2, PR and DR it must coincide with
    restrained revision; that is checked bit-exactly.
    """
    op = get_operator(op)
    needed = {x for pair in CORRESPONDENCES for x in pair} | {"RAGM", "RR"}
    order = [p.id for p in _TABLE if p.id in needed]
    verdicts = {r.postulate: r.passed for r in verify(op, order, lang)}
    pairs = [(a, b, verdicts[a], verdicts[b]) for a, b in CORRESPONDENCES]
    premises = all(verdicts[x] for x in ("RAGM", "CR1", "CR2", "PR", "DR"))
    matches = None
    if premises:
        matches = compare_operators(op, restrained, lang).passed
    return MetaReport(op.name, verdicts, pairs, premises, matches)
