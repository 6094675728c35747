import json

import pytest

from conftest import L2, L3
from ibrev.errors import ArityError, EmptyInputError
from ibrev.logic import ModelSet, models
from ibrev.operators import RevisionOperator, restrained, restrained_levels
from ibrev.postulates import (
    CORRESPONDENCES,
    POSTULATES,
    Budget,
    Instance,
    check_semantic,
    check_sequence,
    check_syntactic,
    compare_operators,
    cross_check_meta,
    evaluate,
    get_postulate,
    verify,
)
from ibrev.preorder import TotalPreorder, min_mask


def st2(text):
    return TotalPreorder.parse(L2, text)


def m(text):
    return models(text, L2)


def _flipped_levels(levels, a):
    # restrained, but same-level ties broken against the input
    out = list(restrained_levels(levels, a))
    bottom, rest = out[0], out[1:]
    fixed, i = [bottom], 0
    while i < len(rest):
        lvl = rest[i]
        if i + 1 < len(rest) and lvl & a and not rest[i + 1] & a:
            # only swap parts that came from one original level
            orig = next(x for x in levels if x & lvl)
            if orig & rest[i + 1] == rest[i + 1]:
                fixed += [rest[i + 1], lvl]
                i += 2
                continue
        fixed.append(lvl)
        i += 1
    return tuple(fixed)


def _merged_levels(levels, a):
    out = restrained_levels(levels, a)
    if len(out) >= 3:
        return out[:-2] + (out[-2] | out[-1],)
    return out


FLIPPED = RevisionOperator("restrained-flipped", _flipped_levels)
MERGED = RevisionOperator("restrained-merged", _merged_levels)
CHAR_AGM_P_D = ["RAGM", "C1", "C2", "P", "D"]
CHAR_AGM_C4_U_D = ["RAGM", "C1", "C2", "C4", "U", "D"]


def verdicts(op, ids):
    return {r.postulate: r.passed for r in verify(op, ids, L2)}


class TestSingleChecks:
    def test_natural_violates_p(self):
        inst = Instance(st2("{00} {01} {11 10}"), (m("~q"), m("p")))
        assert evaluate("P", "natural", inst) is False
        assert check_syntactic("P", "restrained", inst)

    def test_lexicographic_violates_d(self):
        inst = Instance(st2("{00} {01} {10} {11}"), (m("~q"), ModelSet.of(L2, ["10", "01"])))
        assert not check_syntactic("D", "lexicographic", inst)
        assert check_syntactic("D", "restrained", inst)

    def test_vacuous(self):
        # C1 needs b |= a
        inst = Instance(st2("{11 10 01 00}"), (m("p"), m("q")))
        assert evaluate("C1", "natural", inst) is None
        assert check_syntactic("C1", "natural", inst)

    def test_s_is_vacuous_for_tautology(self):
        inst = Instance(st2("{11} {10 01 00}"), (m("true"), m("q")))
        assert evaluate("S", "lexicographic", inst) is None

    def test_semantic_r(self):
        # restrained keeps the old order among non-minimal worlds, so R fails
        s = st2("{01} {11} {10 00}")
        a = ModelSet.of(L2, ["11", "10"])
        assert str(restrained(s, a)) == "{11} {01} {10} {00}"
        assert not check_semantic("R", "restrained", s, a)
        assert check_semantic("R", "lexicographic", s, a)

    def test_semantic_r_holds_when_inputs_all_reach_bottom(self):
        s = st2("{01} {11 10 00}")
        a = ModelSet.of(L2, ["11", "10"])
        assert str(restrained(s, a)) == "{11 10} {01} {00}"
        assert check_semantic("R", "restrained", s, a)

    def test_sequence_checks(self):
        s = st2("{11} {10} {01 00}")
        assert check_sequence("O", "restrained", s, [m("p"), m("q | ~p"), m("q")])
        assert check_sequence("Q", "restrained", s, [m("q")], alpha=m("~p"))

    def test_arity_errors(self):
        s = st2("{11 10 01 00}")
        with pytest.raises(ArityError):
            evaluate("C1", "natural", Instance(s, (m("p"),)))
        with pytest.raises(ArityError):
            check_semantic("C1", "natural", s, m("p"))
        with pytest.raises(ArityError):
            check_sequence("Q", "natural", s, [m("p")])
        with pytest.raises(EmptyInputError):
            Instance(s, (m("p"), m("false")))
        with pytest.raises(ValueError):
            get_postulate("C9")


class TestCharacterizations:
    def test_restrained_satisfies_p_d_characterization(self):
        assert all(verdicts(restrained, CHAR_AGM_P_D).values())

    def test_restrained_satisfies_c4_u_characterization(self):
        assert all(verdicts(restrained, CHAR_AGM_C4_U_D).values())

    @pytest.mark.parametrize("mutant", [FLIPPED, MERGED], ids=["flipped", "merged"])
    def test_mutants_fail_both_characterizations(self, mutant):
        assert not all(verdicts(mutant, CHAR_AGM_P_D).values())
        assert not all(verdicts(mutant, CHAR_AGM_C4_U_D).values())

    def test_flipped_keeps_ragm_but_fails_p(self):
        v = verdicts(FLIPPED, ["RAGM", "C1", "C2", "P", "PR"])
        assert v == {"RAGM": True, "C1": True, "C2": True, "P": False, "PR": False}

    def test_natural_profile(self):
        v = verdicts("natural", ["C1", "C2", "C3", "C4", "CB", "CBR", "P", "U"])
        assert v == {"C1": True, "C2": True, "C3": True, "C4": True, "CB": True, "CBR": True, "P": False, "U": False}

    def test_lexicographic_profile(self):
        v = verdicts("lexicographic", ["C1", "C2", "REC", "R", "U", "UR", "P", "D"])
        assert v == {"C1": True, "C2": True, "REC": True, "R": True, "U": True, "UR": True, "P": True, "D": False}

    @pytest.mark.parametrize("op", ["natural", "lexicographic", "restrained", FLIPPED])
    def test_compact_reductions(self, op):
        v = verdicts(op, ["C1", "P", "C1P", "C2", "D", "C2D"])
        assert v["C1P"] == (v["C1"] and v["P"])
        assert v["C2D"] == (v["C2"] and v["D"])

    @pytest.mark.parametrize("op", ["natural", "lexicographic", "restrained", "composite", FLIPPED, MERGED])
    def test_t_singles_out_restrained(self, op):
        v = verdicts(op, ["RAGM", "T"])
        same = compare_operators(op, restrained, L2).passed
        assert (v["RAGM"] and v["T"]) == same

    @pytest.mark.parametrize("op", ["natural", "lexicographic", "restrained", FLIPPED, MERGED])
    def test_c4_and_u_give_p(self, op):
        v = verdicts(op, ["RAGM", "C4", "U", "P"])
        if v["RAGM"] and v["C4"] and v["U"]:
            assert v["P"]

    def test_restrained_sequence_and_disjunction(self):
        ok = verdicts(restrained, ["O", "Q", "S", "DISJ1", "DISJ2"])
        assert all(ok.values())

    def test_lexicographic_disjunction(self):
        assert all(verdicts("lexicographic", ["DISJ1", "DISJ2"]).values())

    def test_backwards_is_not_ragm(self):
        assert not verdicts("backwards", ["RAGM"])["RAGM"]


class TestMeta:
    @pytest.mark.parametrize("op", ["natural", "lexicographic", "restrained"])
    def test_correspondences(self, op):
        rep = cross_check_meta(op, L2)
        assert rep.consistent, rep.to_text()
        for syn, sem, a, b in rep.pairs:
            assert a == b, (syn, sem)

    def test_restrained_rr_premises(self):
        rep = cross_check_meta("restrained", L2)
        assert rep.rr_premises and rep.verdicts["RR"] and rep.matches_restrained

    def test_all_pairs_listed(self):
        ids = {x for pair in CORRESPONDENCES for x in pair}
        assert ids <= set(POSTULATES)


class TestReports:
    def test_instance_counts(self):
        reps = {r.postulate: r for r in verify(restrained, ["RAGM", "C1", "DISJ1", "CR1"], L2)}
        assert reps["RAGM"].instances_checked == 75 * 15
        assert reps["CR1"].instances_checked == 75 * 15
        assert reps["C1"].instances_checked == 75 * 15**2
        assert reps["DISJ1"].instances_checked == 75 * 15**3

    def test_sequence_counts(self):
        (o,) = verify(restrained, ["O"], L2, budget=Budget(max_seq_len=2))
        assert o.instances_checked == 75 * (15 + 15**2)
        assert o.complete and o.passed

    def test_json_fields(self):
        (r,) = verify("natural", ["P"], L2)
        data = json.loads(json.dumps(r.to_json()))
        assert set(data) == {
            "operator", "postulate", "mode", "instances_checked",
            "vacuous_count", "violations", "first_counterexample",
        }
        assert data["first_counterexample"] == {
            "state": [["00"], ["01"], ["11", "10"]],
            "inputs": [["10", "00"], ["11", "10"]],
        }

    def test_first_counterexample_reproduces(self):
        (r,) = verify("natural", ["P"], L2)
        assert evaluate("P", "natural", r.first_counterexample) is False

    def test_workers_do_not_change_results(self):
        ids = ["P", "D", "CB", "DISJ2", "O"]
        serial = [r.to_json() for r in verify("natural", ids, L2, workers=1)]
        parallel = [r.to_json() for r in verify("natural", ids, L2, workers=2)]
        assert serial == parallel

    def test_budget_marks_partial(self):
        (r,) = verify(restrained, ["C1"], L2, budget=Budget(max_instances=100))
        assert not r.complete and r.instances_checked == 100

    def test_exhaustive_refuses_big_language(self):
        with pytest.raises(ValueError):
            verify(restrained, ["C1"], L3)

    def test_sample_mode_deterministic(self):
        b = Budget(samples=500, seed=11)
        one = [r.to_json() for r in verify("lexicographic", ["D", "Q"], L3, "sample", b)]
        two = [r.to_json() for r in verify("lexicographic", ["D", "Q"], L3, "sample", b)]
        assert one == two
        assert one[0]["instances_checked"] == 500

    def test_oracle_sample_three_atoms(self):
        r = compare_operators("composite", restrained, L3, "sample", Budget(samples=2000, seed=7))
        assert r.postulate == "ORACLE:restrained"
        assert r.instances_checked == 2000 and r.violations == 0

    def test_oracle_detects_difference(self):
        r = compare_operators("natural", restrained, L2)
        assert r.violations > 0
        s = r.first_counterexample.state
        a = r.first_counterexample.inputs[0]
        assert min_mask(s.levels, a.mask)  # well-formed witness
