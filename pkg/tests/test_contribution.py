import pytest

from checker.contribution import (
    ContributionVerdict,
    closed_under,
    full_contribution,
    proper_subsets,
    semantically_independent,
)
from checker.extended import (
    ExtendedStateF,
    build_se,
    build_sf,
    followed_prop,
    in_coalition_prop,
    structurally_independent,
)
from checker.oracle import path_follows
from core.errors import SizeLimitExceeded
from logic.formulas import eventually_goal
from logic.parser import parse_goal
from scenarios.trains import two_trains

PASSED = parse_goal("F passed")
P = parse_goal("F p")


class TestExtendedStructures:
    def test_sf_size(self, trains):
        sf = build_sf(trains)
        assert len(sf.states) == 15
        assert sum(1 for state in sf.states if state.prev is None) == 5

    def test_sf_followed_labels(self, trains):
        sf = build_sf(trains)
        q = trains.state_id
        assert sf.labeling[ExtendedStateF(q("q0"), q("q2"))] == {followed_prop("a1"), followed_prop("a2")}
        assert sf.labeling[ExtendedStateF(q("q0"), q("q1"))] == frozenset()
        assert sf.labeling[ExtendedStateF(q("q0"), q("q4"))] == {"crash", followed_prop("a1")}
        assert sf.labeling[ExtendedStateF(None, q("q3"))] == {"passed"}

    def test_sf_transitions_remember_the_source(self, trains):
        sf = build_sf(trains)
        start = ExtendedStateF(None, 0)
        assert sf.transition[(start, ("go", "wait"))] == ExtendedStateF(0, trains.state_id("q2"))
        assert sf.available(0, start) == {"go", "wait"}

    @pytest.mark.parametrize("u1,u2", [(3, 2), (2, 3), (2, 2)])
    def test_sf_matches_rule_following_for_single_agents(self, u1, u2):
        somas = two_trains(u1, u2)
        sf = build_sf(somas)
        paths = [[0, 0, 1, 3], [0, 2, 3], [0, 1, 1, 3], [0, 4, 4], [0, 2, 2, 3]]
        for names in ([], ["a1"], ["a2"]):
            coalition = somas.coalition(names)
            for path in paths:
                assert sf.path_follows(coalition, path) == path_follows(somas, coalition, path)

    def test_se_marks_local_communication(self, trains):
        se = build_se(trains, trains.coalition(["a1"]))
        assert in_coalition_prop("a1") not in se.labeling[trains.state_id("q0")]
        assert in_coalition_prop("a1") in se.labeling[trains.state_id("q1")]
        assert "passed" in se.labeling[trains.state_id("q3")]

    def test_structural_independence(self, trains):
        assert structurally_independent(trains, trains.all_agents, 0)
        assert not structurally_independent(trains, trains.coalition(["a1"]), 0)
        # From q1 on a1 only reads its own message.
        assert structurally_independent(trains, trains.coalition(["a1"]), trains.state_id("q1"))


class TestFullContribution:
    @pytest.mark.parametrize("u1,u2", [(3, 2), (2, 3), (2, 2)])
    def test_two_trains(self, u1, u2):
        somas = two_trains(u1, u2)
        verdict = full_contribution(somas, somas.all_agents, 0, PASSED)
        assert verdict == ContributionVerdict(somas.all_agents, PASSED, True, True, True, None)
        assert verdict.full
        for name in ("a1", "a2"):
            single = full_contribution(somas, somas.coalition([name]), 0, PASSED)
            assert not single.full
            assert not single.semantic

    def test_semantic_but_not_structural(self, contrast_models):
        somas, _ = contrast_models
        a1 = somas.coalition(["a1"])
        assert semantically_independent(somas, a1, 0, P)
        assert not structurally_independent(somas, a1, 0)
        assert not full_contribution(somas, a1, 0, P).full
        assert full_contribution(somas, somas.all_agents, 0, P).full

    def test_structural_but_not_semantic(self, contrast_models):
        _, somas = contrast_models
        a1 = somas.coalition(["a1"])
        assert structurally_independent(somas, a1, 0)
        assert not semantically_independent(somas, a1, 0, P)
        assert full_contribution(somas, somas.all_agents, 0, P).full

    def test_witness_breaks_minimality(self, delegation):
        coalition = delegation.coalition(["a", "e"])
        verdict = full_contribution(delegation, coalition, 0, parse_goal("F psi_a"))
        assert verdict.semantic and verdict.structural
        assert not verdict.minimal
        assert verdict.witness == delegation.coalition(["a"])

    def test_size_limit(self, trains):
        with pytest.raises(SizeLimitExceeded):
            full_contribution(trains, trains.all_agents, 0, PASSED, limit=1)

    def test_eventually_goal_helper(self):
        assert eventually_goal(parse_goal("F passed").right) == PASSED


def test_proper_subsets_order(delegation):
    subsets = list(proper_subsets(delegation, delegation.coalition(["e", "a", "b"])))
    assert [delegation.agent_names(s) for s in subsets] == [
        ("a",), ("b",), ("e",), ("a", "b"), ("a", "e"), ("b", "e"),
    ]


def test_closed_under():
    inputs = {0: frozenset({0, 1}), 1: frozenset({1}), 2: frozenset()}
    assert closed_under(inputs, {0, 1})
    assert closed_under(inputs, {1})
    assert not closed_under(inputs, {0})
