"""Bundled scenario scripts and the parameterized classroom template."""

from __future__ import annotations

from importlib import resources

from ibrev.scenario import Scenario, parse_scenario

SUFFIX = ".scn"


def names() -> list[str]:
    return sorted(
        p.name[: -len(SUFFIX)]
        for p in resources.files(__package__).iterdir()
        if p.name.endswith(SUFFIX)
    )


def source(name: str) -> str:
    if name not in names():
        raise KeyError(f"no bundled scenario {name!r}; available: {', '.join(names())}")
    return resources.files(__package__).joinpath(name + SUFFIX).read_text()


def load(name: str) -> Scenario:
    return parse_scenario(source(name), name=name)


def classroom_source(n_boys: int, n_girls: int) -> str:
    """Competition-winner scenario for a class of ``n_boys`` and ``n_girls``.

    Atoms ``p1..pn`` read "boy i won" and ``q1..qm`` "girl j won". Exactly one
    student won, spelled out as at-least-one plus pairwise exclusion, and that
    constraint is conjoined to the knowledge base and to every input. The
    agent first believes some boy won, then every boy in turn claims that
    either he or a girl won.
    """
    if n_boys < 1 or n_girls < 1 or n_boys + n_girls > 16:
        raise ValueError("need at least one boy and one girl, at most 16 students")
    boys = [f"p{i}" for i in range(1, n_boys + 1)]
    girls = [f"q{j}" for j in range(1, n_girls + 1)]
    everyone = boys + girls
    pairs = [f"~({x} & {y})" for i, x in enumerate(everyone) for y in everyone[i + 1 :]]
    sigma = " & ".join([f"({' | '.join(everyone)})"] + pairs)
    phi = f"({' | '.join(boys)})"
    some_girl = " | ".join(girls)
    lines = [
        f"# classroom: {n_boys} boys, {n_girls} girls",
        "atoms " + " ".join(everyone),
        "op restrained",
        f'kb "{phi} & {sigma}"',
    ]
    for b in boys:
        lines.append(f'revise "(~{phi} | {b}) & {sigma}"')
    lines += [
        "show",
        f'[restrained,composite,natural] assert-believes "{boys[-1]}"',
        f'[lexicographic] assert-believes "{some_girl}"',
    ]
    return "\n".join(lines) + "\n"


def classroom(n_boys: int, n_girls: int) -> Scenario:
    return parse_scenario(classroom_source(n_boys, n_girls), name=f"classroom_{n_boys}_{n_girls}")
