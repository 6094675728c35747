"""Line-oriented scenario scripts: scripted revisions with assertions.

Example::

    atoms bird red
    op restrained
    kb "bird"
    revise "red"
    revise "~bird"
    assert-believes "red"

Directives:

``atoms A B ...``
    Declare the language; must come first.
``op NAME``
    Select the operator for subsequent ``revise`` steps (may be repeated).
``kb "F"`` / ``levels {..} {..}``
    Initial state: the two-level state for ``F``, or explicit levels listed
    most plausible first.
``revise "F"`` / ``revise NAME "F"``
    Revise by ``F`` with the current (or the named) operator.
``assert-believes "F"`` / ``assert-not-believes "F"`` / ``assert-state {..}``
``counteracts "F" "G"`` / ``assert-counteracts`` / ``assert-not-counteracts``
``show``

Any step may carry an operator guard, ``[restrained,composite] assert-believes "p"``,
and then only runs while one of those operators is the scenario operator.
``#`` starts a comment.
"""

from __future__ import annotations

import shlex
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence, Union

from ibrev.counteracts import counteracts
from ibrev.errors import EmptyInputError, IbrevError
from ibrev.logic import Language, describe, models
from ibrev.operators import OPERATORS, get_operator
from ibrev.preorder import TotalPreorder, believes, belief_set, faithful_from_kb


class ScenarioError(IbrevError, ValueError):
    def __init__(self, message, line=None):
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)
        self.line = line


_ARGS = {
    "op": 1,
    "kb": 1,
    "assert-believes": 1,
    "assert-not-believes": 1,
    "counteracts": 2,
    "assert-counteracts": 2,
    "assert-not-counteracts": 2,
    "show": 0,
}


@dataclass(frozen=True)
class Step:
    line: int
    kind: str
    args: tuple = ()
    guard: Optional[frozenset] = None
    op: Optional[str] = None  # per-step operator on revise
    text: str = ""


@dataclass
class Scenario:
    lang: Language
    initial: TotalPreorder
    steps: list[Step] = field(default_factory=list)
    name: str = "scenario"


@dataclass
class RunResult:
    transcript: list[str]
    assertions: list[tuple[int, str, bool]]
    final: Optional[TotalPreorder]
    exit_status: int
    operator: Optional[str] = None
    abort_step: Optional[int] = None

    @property
    def failed(self) -> int:
        return sum(1 for *_, ok in self.assertions if not ok)

    @property
    def text(self) -> str:
        return "\n".join(self.transcript) + "\n"


def _split(rest: str, line: int) -> list[str]:
    try:
        return shlex.split(rest, posix=True)
    except ValueError as exc:
        raise ScenarioError(str(exc), line) from None


def _parse_levels(lang: Language, rest: str, line: int) -> TotalPreorder:
    try:
        return TotalPreorder.parse(lang, rest)
    except IbrevError as exc:
        raise ScenarioError(str(exc), line) from None


def _check_formula(lang, text, line):
    try:
        models(text, lang)
    except IbrevError as exc:
        raise ScenarioError(f"bad formula {text!r}: {exc}", line) from None


def parse_scenario(text: str, name: str = "scenario") -> Scenario:
    lang = None
    initial = None
    steps: list[Step] = []
    have_op = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip() if '"' not in raw else _strip_comment(raw).strip()
        if not body:
            continue
        guard = None
        if body.startswith("["):
            end = body.find("]")
            if end < 0:
                raise ScenarioError("unterminated operator guard", lineno)
            names = [g.strip() for g in body[1:end].split(",") if g.strip()]
            for g in names:
                if g not in OPERATORS:
                    raise ScenarioError(f"unknown operator {g!r} in guard", lineno)
            guard = frozenset(names)
            body = body[end + 1 :].strip()
        word, _, rest = body.partition(" ")
        rest = rest.strip()
        if word == "atoms":
            if lang is not None:
                raise ScenarioError("atoms declared twice", lineno)
            try:
                lang = Language(tuple(rest.split()))
            except ValueError as exc:
                raise ScenarioError(str(exc), lineno) from None
            continue
        if lang is None:
            raise ScenarioError("the first directive must be 'atoms'", lineno)
        if word == "levels":
            if initial is not None:
                raise ScenarioError("initial state given twice", lineno)
            initial = _parse_levels(lang, rest, lineno)
            continue
        if word == "assert-state":
            st = _parse_levels(lang, rest, lineno)
            steps.append(Step(lineno, word, (st,), guard, text=body))
            continue
        args = _split(rest, lineno)
        if word == "revise":
            op = None
            if len(args) == 2:
                op, args = args[0], args[1:]
                if op not in OPERATORS:
                    raise ScenarioError(f"unknown operator {op!r}", lineno)
            if len(args) != 1:
                raise ScenarioError("revise takes one quoted formula", lineno)
            if initial is None:
                raise ScenarioError("revise before an initial state (kb or levels)", lineno)
            if op is None and not have_op:
                raise ScenarioError("no operator selected before the first revise", lineno)
            _check_formula(lang, args[0], lineno)
            steps.append(Step(lineno, word, tuple(args), guard, op, body))
            continue
        if word not in _ARGS:
            raise ScenarioError(f"unknown directive {word!r}", lineno)
        if len(args) != _ARGS[word]:
            raise ScenarioError(f"{word} takes {_ARGS[word]} argument(s)", lineno)
        if word == "op":
            if args[0] not in OPERATORS:
                raise ScenarioError(f"unknown operator {args[0]!r}", lineno)
            have_op = True
            steps.append(Step(lineno, word, tuple(args), guard, text=body))
            continue
        if word == "kb":
            if initial is not None:
                raise ScenarioError("initial state given twice", lineno)
            _check_formula(lang, args[0], lineno)
            kb = models(args[0], lang)
            if not kb:
                raise ScenarioError("knowledge base is inconsistent", lineno)
            initial = faithful_from_kb(kb)
            continue
        for a in args:
            _check_formula(lang, a, lineno)
        steps.append(Step(lineno, word, tuple(args), guard, text=body))
    if lang is None:
        raise ScenarioError("empty scenario: no 'atoms' directive")
    if initial is None:
        raise ScenarioError("no initial state (kb or levels)")
    return Scenario(lang, initial, steps, name)


def _strip_comment(raw: str) -> str:
    quoted = False
    for i, ch in enumerate(raw):
        if ch == '"':
            quoted = not quoted
        elif ch == "#" and not quoted:
            return raw[:i]
    return raw


def load_scenario(path: Union[str, Path]) -> Scenario:
    path = Path(path)
    return parse_scenario(path.read_text(), name=path.name)


def _beliefs(state: TotalPreorder) -> str:
    b = belief_set(state)
    return f"{b} = {describe(b)}"


def run_scenario(s: Scenario, override: Optional[str] = None) -> RunResult:
    """Apply the steps in order and record a deterministic transcript.

    ``override`` replaces every ``op`` directive (used by :func:`compare`);
    operators named on individual ``revise`` steps still apply.
    """
    lang = s.lang
    state = s.initial
    current = override
    out = [f"scenario {s.name}", f"atoms {lang}", f"initial {state}"]
    if override:
        out.append(f"operator {override} (override)")
    assertions: list[tuple[int, str, bool]] = []

    def record(step, ok, detail=""):
        assertions.append((step.line, step.text, ok))
        out.append(f"[{step.line}] {step.text}: {'PASS' if ok else 'FAIL'}{detail}")

    idx = 0  # index of the revision step, counted from 0
    for step in s.steps:
        if step.guard is not None and (current or "") not in step.guard:
            out.append(f"[{step.line}] skipped (guard {','.join(sorted(step.guard))})")
            continue
        kind = step.kind
        if kind == "op":
            if override is None:
                current = step.args[0]
                out.append(f"[{step.line}] op {current}")
            continue
        if kind == "revise":
            name = step.op or current
            if name is None:
                raise ScenarioError("no operator selected", step.line)
            a = models(step.args[0], lang)
            try:
                state = get_operator(name)(state, a)
            except EmptyInputError:
                out.append(f'[{step.line}] error: revision step {idx} has inconsistent input "{step.args[0]}"')
                out.append("result: ABORTED")
                return RunResult(out, assertions, state, 2, override, abort_step=idx)
            idx += 1
            out.append(f'[{step.line}] revise {name} "{step.args[0]}" -> {state}')
        elif kind == "show":
            out.append(f"[{step.line}] state {state}  beliefs {_beliefs(state)}")
        elif kind == "assert-believes":
            record(step, believes(state, models(step.args[0], lang)))
        elif kind == "assert-not-believes":
            record(step, not believes(state, models(step.args[0], lang)))
        elif kind == "assert-state":
            expected = step.args[0]
            ok = expected == state
            record(step, ok, "" if ok else f" (actual {state})")
        elif kind in ("counteracts", "assert-counteracts", "assert-not-counteracts"):
            a, b = (models(x, lang) for x in step.args)
            if not a or not b:
                raise ScenarioError("counteracts needs consistent formulas", step.line)
            holds = counteracts(state, a, b)
            if kind == "counteracts":
                out.append(f'[{step.line}] counteracts "{step.args[0]}" "{step.args[1]}": {str(holds).lower()}')
            else:
                record(step, holds if kind == "assert-counteracts" else not holds)
    failed = sum(1 for *_, ok in assertions if not ok)
    out.append(f"final {state}  beliefs {_beliefs(state)}")
    out.append(f"result: {'PASS' if not failed else 'FAIL'} ({len(assertions)} assertions, {failed} failed)")
    return RunResult(out, assertions, state, 1 if failed else 0, override or current)


@dataclass
class CompareResult:
    runs: dict[str, RunResult]

    @property
    def exit_status(self) -> int:
        return max(r.exit_status for r in self.runs.values())

    def table(self) -> str:
        width = max(len(n) for n in self.runs) + 2
        lines = [f"{'operator':<{width}}status   final beliefs"]
        for name, r in self.runs.items():
            status = {0: "PASS", 1: "FAIL", 2: "ABORT"}[r.exit_status]
            lines.append(f"{name:<{width}}{status:<9}{_beliefs(r.final)}")
        return "\n".join(lines)

    @property
    def text(self) -> str:
        parts = [self.table(), ""]
        for name, r in self.runs.items():
            parts.append(f"== {name} ==")
            parts.extend(r.transcript)
            parts.append("")
        return "\n".join(parts)


def compare(ops: Sequence[str], s: Scenario) -> CompareResult:
    if len(ops) < 2:
        raise ValueError("compare needs at least two operators")
    for name in ops:
        get_operator(name)
    return CompareResult({name: run_scenario(s, override=name) for name in ops})
