import pytest

from checker.labeling import check
from core.computations import star_computation
from core.errors import InputError, UnboundNameError
from core.somas import Lasso
from core.validation import validate
from logic.formulas import Com
from logic.parser import parse_formula
from scenarios.community import (
    CommunityConfig,
    community_model,
    config_from_dict,
    config_to_dict,
    eval_com,
    table_one,
)
from scenarios.delegation import TASK_PARTS, state_name
from scenarios.trains import two_trains


class TestCommunity:
    def test_states_follow_the_schedule(self, community):
        assert community.states == ("q0", "q1", "q2", "q3", "q4")
        label = community.cgs.label
        assert label(0) == {"reg_u1_m1", "reg_u2_m2", "reg_u3_m3", "reg_u4_m1", "query_u1_u2"}
        assert label(1) == {"reg_u1_m1", "reg_u3_m3", "reg_u4_m1", "transit_u2", "query_u1_u2"}
        assert {"reg_u1_m1", "reg_u2_m1", "query_u3_u4"} <= label(2)
        assert label(4) == {"reg_u1_m1", "reg_u2_m1", "reg_u3_m3", "reg_u4_m3"}

    def test_star_computation_walks_the_schedule(self, community):
        assert star_computation(community, 0) == Lasso((0, 1, 2, 3), (4,))

    def test_com_atoms(self, community):
        both = Com(frozenset({"u1", "u2", "u3", "u4"}), frozenset({"m1", "m3"}))
        assert eval_com(community, table_one(), 4, both)
        assert not eval_com(community, table_one(), 3, both)
        assert check(community, 2, parse_formula("com({u1,u2},{m1})"))
        assert not check(community, 0, parse_formula("com({u1,u2},{m1})"))
        # Users without interests are trivially satisfied.
        assert eval_com(community, table_one(), 0, Com(frozenset(), frozenset({"m2"})))

    def test_com_rejects_unknown_agents(self, community):
        with pytest.raises(UnboundNameError):
            check(community, 0, parse_formula("com({u9},{m1})"))

    def test_empty_schedule_stays_put(self):
        cfg = CommunityConfig(**{**table_one().__dict__, "query_schedule": ()})
        somas = community_model(cfg)
        assert somas.states == ("q0",)
        assert star_computation(somas, 0) == Lasso((), (0,))

    def test_shared_middle_agent_needs_no_step(self):
        cfg = CommunityConfig(
            users=("u1", "u2"),
            middles=("m1",),
            interests={"u1": frozenset({"u2"})},
            initial_registration={"u1": "m1", "u2": "m1"},
        )
        somas = community_model(cfg)
        assert somas.states == ("q0",)
        assert check(somas, 0, parse_formula("com({u1},{m1})"))

    def test_config_round_trip(self):
        data = config_to_dict(table_one())
        assert data["initial"] == {"u1": "m1", "u2": "m2", "u3": "m3", "u4": "m1"}
        assert "schedule" not in data
        assert config_from_dict(data) == table_one()

    def test_config_with_schedule(self):
        data = {**config_to_dict(table_one()), "schedule": [["u3", "u4"]]}
        cfg = config_from_dict(data)
        assert cfg.schedule() == (("u3", "u4"),)
        assert len(community_model(cfg).states) == 3

    def test_config_missing_key(self):
        with pytest.raises(InputError):
            config_from_dict({"users": ["u1"], "middles": ["m1"]})

    @pytest.mark.parametrize(
        "u3,u4",
        [
            ((), ()),
            (("u1",), ("u2",)),
            (("u1", "u2", "u4"), ("u1",)),
            (("u2",), ("u3", "u1")),
        ],
    )
    def test_first_pair_meets_whatever_the_others_want(self, u3, u4):
        interests = {**table_one().interests, "u3": frozenset(u3), "u4": frozenset(u4)}
        somas = community_model(CommunityConfig(**{**table_one().__dict__, "interests": interests}))
        assert check(somas, 0, parse_formula("<u1,u2,m1,m2> F com({u1,u2},{m1})"))

    @pytest.mark.parametrize(
        "change",
        [
            {"users": ()},
            {"middles": ("m1", "u1")},
            {"interests": {"u1": frozenset({"u1"})}},
            {"interests": {"u7": frozenset({"u1"})}},
            {"initial_registration": {"u1": "m1"}},
            {"query_schedule": (("u1", "u9"),)},
        ],
    )
    def test_invalid_configs(self, change):
        cfg = CommunityConfig(**{**table_one().__dict__, **change})
        with pytest.raises(InputError):
            cfg.validate()


class TestTaskDelegation:
    def test_states(self, delegation):
        assert len(delegation.states) == 32
        assert delegation.state_name(0) == "q0"
        assert state_name(frozenset({"e", "a"})) == "q_ae"

    def test_goal_labels(self, delegation):
        done = delegation.cgs.label(delegation.state_id("q_abde"))
        assert {"psi_a", "psi_de", "psi_abe"} <= done
        assert "psi" not in done
        assert set(TASK_PARTS) <= delegation.cgs.label(delegation.state_id("q_abcde"))

    def test_star_computation(self, delegation):
        q = delegation.state_id
        assert star_computation(delegation, 0) == Lasso((0, q("q_ae"), q("q_abde")), (q("q_abcde"),))

    def test_finished_agents_only_idle(self, delegation):
        assert validate(delegation) == []
        q = delegation.state_id("q_ae")
        a, b = delegation.coalition(["a"]), delegation.coalition(["b"])
        assert [action for _, action in delegation.rule(min(a)).table(q)] == ["idle"]
        assert [action for _, action in delegation.rule(min(b)).table(q)] == ["work", "idle"]
        assert delegation.rule(min(a)).partners(q) == a


class TestTwoTrains:
    def test_less_urgent_first_train_waits(self):
        somas = two_trains(2, 3)
        assert star_computation(somas, 0) == Lasso((0, 1), (3,))

    def test_absorbing_states(self, trains):
        for name in ("q3", "q4"):
            q = trains.state_id(name)
            assert trains.cgs.successors(q) == {q}
