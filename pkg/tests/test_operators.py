import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import L2, L3, preorders
from ibrev.errors import EmptyInputError, LanguageMismatchError
from ibrev.logic import ModelSet, default_language, models
from ibrev.operators import (
    OPERATORS,
    RAGM_OPERATORS,
    backwards,
    composite,
    get_operator,
    lexicographic,
    natural,
    restrained,
    revise_sequence,
)
from ibrev.preorder import TotalPreorder, believes, enumerate_preorders, faithful_from_kb, min_models


def st2(text):
    return TotalPreorder.parse(L2, text)


def m(text, lang=L2):
    return models(text, lang)


# Reference implementations over rank maps, written from the ordering
# conditions rather than from level manipulation.
def rank_reference(name, s, a):
    r, V = s.ranks, range(s.lang.size)
    inside = lambda v: a >> v & 1
    lo = min(r[v] for v in V if inside(v))
    bottom = {v for v in V if inside(v) and r[v] == lo}

    def key(v):
        if name == "natural":
            return (0,) if v in bottom else (1, r[v])
        if name == "lexicographic":
            return (0 if inside(v) else 1, r[v])
        if name == "restrained":
            return (0,) if v in bottom else (1, r[v], 0 if inside(v) else 1)
        if name == "backwards":
            return (r[v], 0 if inside(v) else 1)
        raise KeyError(name)

    keys = sorted({key(v) for v in V})
    levels = tuple(sum(1 << v for v in V if key(v) == k) for k in keys)
    return TotalPreorder(s.lang, levels)


class TestTraces:
    def test_red_bird_natural(self):
        e = faithful_from_kb(m("p"))  # atoms read (bird, red)
        e1 = natural(e, m("q"))
        assert str(e1) == "{11} {10} {01 00}"
        e2 = natural(e1, m("~p"))
        assert str(e2) == "{01 00} {11} {10}"
        assert not believes(e2, m("q"))

    def test_red_bird_restrained(self):
        e1 = restrained(faithful_from_kb(m("p")), m("q"))
        assert str(e1) == "{11} {10} {01} {00}"
        e2 = restrained(e1, m("~p"))
        assert str(e2) == "{01} {11} {10} {00}"
        assert believes(e2, m("q"))

    def test_lexicographic(self):
        assert str(lexicographic(st2("{11 10} {01 00}"), m("q"))) == "{11} {01} {10} {00}"

    def test_john_mary(self):
        e = st2("{10 01} {11 00}")
        out = restrained(restrained(e, m("p")), m("q"))
        assert str(out) == "{01} {10} {11} {00}"
        lex = lexicographic(lexicographic(e, m("p")), m("q"))
        assert believes(lex, m("p & q"))

    def test_backwards(self):
        assert str(backwards(st2("{11 10} {01 00}"), m("~q"))) == "{10} {11} {00} {01}"
        assert str(backwards(st2("{11 10 01} {00}"), m("p & ~q"))) == "{10} {11 01} {00}"

    def test_conditional_chain_sequence(self):
        e = st2("{11 10 01 00}")
        out = revise_sequence(restrained, e, [m("p"), m("p -> q"), m("~q")])
        assert str(out) == "{10} {11} {00} {01}"

    def test_red_bird_2_split(self):
        # atoms read (red, bird)
        e = faithful_from_kb(m("p"))
        seq = [m("p -> q"), m("~q")]
        assert believes(revise_sequence(restrained, e, seq), m("p"))
        lex = revise_sequence(lexicographic, e, seq)
        assert str(lex) == "{00} {10} {11} {01}"
        assert believes(lex, m("~p"))


class TestContracts:
    @pytest.mark.parametrize("name", sorted(OPERATORS))
    def test_empty_input(self, name):
        with pytest.raises(EmptyInputError):
            OPERATORS[name](st2("{11 10} {01 00}"), m("false"))

    def test_language_mismatch(self):
        with pytest.raises(LanguageMismatchError):
            restrained(st2("{11 10 01 00}"), models("p", default_language(3)))

    def test_sequence_reports_index(self):
        with pytest.raises(EmptyInputError) as e:
            revise_sequence(natural, st2("{11 10 01 00}"), [m("p"), m("q"), m("false")])
        assert e.value.index == 2

    def test_get_operator(self):
        assert get_operator("restrained") is restrained
        with pytest.raises(ValueError):
            get_operator("dp")


@pytest.mark.parametrize("name", ["natural", "lexicographic", "restrained", "backwards"])
def test_matches_rank_reference_exhaustively(name):
    op = OPERATORS[name]
    for s in enumerate_preorders(L2):
        for a in range(1, 16):
            assert op(s, ModelSet(L2, a)) == rank_reference(name, s, a)


@given(preorders(L3), st.integers(1, 255), st.sampled_from(["natural", "lexicographic", "restrained", "backwards"]))
def test_matches_rank_reference_three_atoms(s, a, name):
    assert OPERATORS[name](s, ModelSet(L3, a)) == rank_reference(name, s, a)


def test_composite_equals_restrained_exhaustively():
    for s in enumerate_preorders(L2):
        for a in range(1, 16):
            x = ModelSet(L2, a)
            assert composite(s, x) == restrained(s, x)


@given(preorders(L3), st.integers(1, 255))
def test_composite_equals_restrained_three_atoms(s, a):
    x = ModelSet(L3, a)
    assert composite(s, x) == restrained(s, x)


@given(preorders(L3), st.integers(1, 255), st.sampled_from(RAGM_OPERATORS))
def test_ragm_bottom_level(s, a, name):
    x = ModelSet(L3, a)
    out = OPERATORS[name](s, x)
    assert out.levels[0] == min_models(s, x).mask


@given(preorders(L3), st.integers(1, 255), st.sampled_from(RAGM_OPERATORS))
def test_order_within_input_and_outside_kept(s, a, name):
    # CR1 and CR2 for all admissible operators
    out = OPERATORS[name](s, ModelSet(L3, a))
    for v in range(8):
        for w in range(8):
            if (a >> v & 1) == (a >> w & 1):
                assert s.leq(v, w) == out.leq(v, w)


@given(preorders(L3), st.integers(1, 255), st.sampled_from(sorted(OPERATORS)))
def test_result_believes_input_when_ragm_or_refines(s, a, name):
    x = ModelSet(L3, a)
    out = OPERATORS[name](s, x)
    TotalPreorder(L3, out.levels)  # normalized and valid
    if name != "backwards":
        assert believes(out, x)


@given(preorders(L3), st.integers(1, 255), st.sampled_from(["lexicographic", "restrained", "natural"]))
def test_idempotent_on_repeat(s, a, name):
    op = OPERATORS[name]
    x = ModelSet(L3, a)
    once = op(s, x)
    if name == "natural":
        assert op(once, x) == once
    else:
        assert op(op(once, x), x) == op(once, x)


@given(preorders(L3), st.integers(1, 255))
def test_backwards_refines_old_order(s, a):
    out = backwards(s, ModelSet(L3, a))
    for v in range(8):
        for w in range(8):
            if s.lt(v, w):
                assert out.lt(v, w)
