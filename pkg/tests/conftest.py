import sys

import pytest
from hypothesis import strategies as st

from ibrev.logic import And, Atom, Const, Iff, Implies, Language, Not, Or, default_language
from ibrev.preorder import normalize

L1 = default_language(1)
L2 = default_language(2)
L3 = default_language(3)


def formulas(lang: Language, max_leaves=12):
    leaves = st.one_of(st.sampled_from([Const(True), Const(False)]), st.sampled_from([Atom(a) for a in lang.atoms]))

    def extend(children):
        return st.one_of(
            children.map(Not),
            st.builds(And, children, children),
            st.builds(Or, children, children),
            st.builds(Implies, children, children),
            st.builds(Iff, children, children),
        )

    return st.recursive(leaves, extend, max_leaves=max_leaves)


def preorders(lang: Language):
    """Arbitrary states via random rank maps (independent of the sampler)."""
    return st.lists(st.integers(0, lang.size - 1), min_size=lang.size, max_size=lang.size).map(
        lambda ranks: normalize(lang, dict(enumerate(ranks)))
    )


def inputs(lang: Language):
    return st.integers(1, lang.full_mask)


@pytest.fixture
def l2():
    return L2


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda x: int(x.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
