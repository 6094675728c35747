"""Command-line entry point: ``ibrev run|compare|verify|counteracts|corpus|meta``.

Exit codes: 0 success, 1 failed assertion / violation / expectation mismatch,
2 usage, parse or budget error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from ibrev import corpus
from ibrev.counteracts import counteracts
from ibrev.errors import IbrevError
from ibrev.logic import Language, default_language, models
from ibrev.operators import OPERATORS, get_operator
from ibrev.postulates import POSTULATES, Budget, compare_operators, cross_check_meta, verify
from ibrev.preorder import TotalPreorder, min_models
from ibrev.scenario import compare, load_scenario, run_scenario

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _language(text: str) -> Language:
    text = text.strip()
    if text.isdigit():
        return default_language(int(text))
    return Language(tuple(x for x in text.replace(",", " ").split() if x))


def _scenario(ref: str):
    if ref.startswith("corpus:"):
        return corpus.load(ref[len("corpus:") :])
    path = Path(ref)
    if not path.exists():
        raise UsageError(f"no such scenario file: {ref}")
    return load_scenario(path)


def _op_list(text: str) -> list[str]:
    names = [x.strip() for x in text.split(",") if x.strip()]
    for n in names:
        get_operator(n)
    return names


def cmd_run(args, out) -> int:
    result = run_scenario(_scenario(args.file))
    out.write(result.text)
    return result.exit_status


def cmd_compare(args, out) -> int:
    ops = _op_list(args.ops)
    if len(ops) < 2:
        raise UsageError("--ops needs at least two operators")
    res = compare(ops, _scenario(args.file))
    out.write(res.text)
    return res.exit_status


def _postulate_ids(text):
    if text is None:
        return []
    if text.strip().lower() == "all":
        return list(POSTULATES)
    ids = [x.strip().upper() for x in text.split(",") if x.strip()]
    for pid in ids:
        if pid not in POSTULATES:
            raise UsageError(f"unknown postulate {pid!r}; choose from {', '.join(POSTULATES)}")
    return ids


def _read_expectations(path):
    """JSON object mapping a postulate id (or ``ORACLE:<name>``) to
    ``"pass"``/``"fail"`` or a boolean (true = pass)."""
    try:
        raw = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read expectations {path}: {exc}") from None
    if not isinstance(raw, dict):
        raise UsageError("expectations must be a JSON object")
    exp = {}
    for k, v in raw.items():
        if isinstance(v, str) and v.lower() in ("pass", "fail"):
            exp[k.upper() if not k.startswith("ORACLE:") else k] = v.lower() == "pass"
        elif isinstance(v, bool):
            exp[k.upper() if not k.startswith("ORACLE:") else k] = v
        else:
            raise UsageError(f"bad expectation for {k!r}: {v!r}")
    return exp


def cmd_verify(args, out) -> int:
    lang = _language(args.atoms)
    op = get_operator(args.operator)
    ids = _postulate_ids(args.postulates)
    if not ids and not args.oracle:
        raise UsageError("give --postulates, --oracle or both")
    if args.mode == "exhaustive" and args.samples is not None:
        raise UsageError("--samples only applies to --mode sample")
    budget = Budget(
        samples=args.samples if args.samples is not None else 1000,
        seed=args.seed,
        max_seq_len=args.max_seq_len,
        max_instances=args.max_instances,
    )
    try:
        reports = verify(op, ids, lang, args.mode, budget, workers=args.workers)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.oracle:
        reports.append(compare_operators(op, args.oracle, lang, args.mode, budget))

    if args.format == "json":
        text = "".join(json.dumps(r.to_json(), sort_keys=True) + "\n" for r in reports)
    else:
        text = "".join(r.to_text() + "\n" for r in reports)
    if args.out:
        Path(args.out).write_text(text)
    else:
        out.write(text)

    if any(not r.complete for r in reports):
        sys.stderr.write("budget exceeded: some reports are partial\n")
        return EXIT_USAGE
    if args.expect:
        expected = _read_expectations(args.expect)
        status = EXIT_OK
        for r in reports:
            want = expected.get(r.postulate)
            if want is not None and want != r.passed:
                sys.stderr.write(
                    f"expectation mismatch: {r.postulate} expected {'pass' if want else 'fail'}\n"
                )
                status = EXIT_FAIL
        return status
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def cmd_counteracts(args, out) -> int:
    lang = _language(args.atoms)
    state = TotalPreorder.parse(lang, args.state)
    a, b = models(args.alpha, lang), models(args.beta, lang)
    holds = counteracts(state, a, b)
    out.write(f"state {state}\n")
    out.write(f"min(alpha) {min_models(state, a)}\n")
    out.write(f"min(beta)  {min_models(state, b)}\n")
    out.write(f"counteracts: {str(holds).lower()}\n")
    return EXIT_OK


def cmd_corpus(args, out) -> int:
    if args.classroom:
        try:
            n, m = (int(x) for x in args.classroom.split(","))
        except ValueError:
            raise UsageError("--classroom takes BOYS,GIRLS") from None
        out.write(corpus.classroom_source(n, m))
    elif args.name:
        out.write(corpus.source(args.name))
    else:
        out.write("".join(n + "\n" for n in corpus.names()))
    return EXIT_OK


def cmd_meta(args, out) -> int:
    rep = cross_check_meta(args.operator, _language(args.atoms))
    out.write(rep.to_text() + "\n")
    return EXIT_OK if rep.consistent else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ibrev", description="Iterated belief revision workbench")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run a scenario file (or corpus:NAME)")
    p.add_argument("file")
    p.set_defaults(fn=cmd_run)

    p = sub.add_parser("compare", help="run a scenario under several operators")
    p.add_argument("--ops", required=True, help="comma-separated operator names")
    p.add_argument("file")
    p.set_defaults(fn=cmd_compare)

    p = sub.add_parser("verify", help="check postulates for an operator")
    p.add_argument("--atoms", required=True, help="atom count or comma-separated names")
    p.add_argument("--operator", required=True, choices=sorted(OPERATORS))
    p.add_argument("--postulates", help="comma-separated ids or 'all'")
    p.add_argument("--mode", choices=("exhaustive", "sample"), default="exhaustive")
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-seq-len", type=int, default=3)
    p.add_argument("--max-instances", type=int, default=10_000_000)
    p.add_argument("--oracle", choices=sorted(OPERATORS))
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out")
    p.add_argument("--expect", help="JSON file of expected verdicts")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("counteracts", help="decide counteracts for two formulas")
    p.add_argument("--atoms", required=True)
    p.add_argument("--state", required=True, help='levels, e.g. "{11 10} {01 00}"')
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)
    p.set_defaults(fn=cmd_counteracts)

    p = sub.add_parser("corpus", help="list or print bundled scenarios")
    p.add_argument("name", nargs="?")
    p.add_argument("--classroom", metavar="BOYS,GIRLS")
    p.set_defaults(fn=cmd_corpus)

    p = sub.add_parser("meta", help="syntactic/semantic correspondence check")
    p.add_argument("--atoms", default="2")
    p.add_argument("--operator", required=True, choices=sorted(OPERATORS))
    p.set_defaults(fn=cmd_meta)
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.fn(args, out)
    except (UsageError, IbrevError, ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        sys.stderr.write(f"ibrev: error: {msg}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
