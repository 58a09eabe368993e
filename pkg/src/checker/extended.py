"""Extended structures that turn rule-following and communication locality into propositions.

S^F remembers the previous state, so each state can say whether the step into
it was compatible with an agent's rule (``followed_<agent>``). S^E marks the
states where an agent only queries coalition members (``InA_<agent>``).
"""
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Mapping, Optional, Sequence, Tuple

from core.computations import out_reachable, prescribed_action
from core.somas import AgentId, Coalition, JointAction, Somas, StateId


def followed_prop(agent: str) -> str:
    return f"followed_{agent}"


def in_coalition_prop(agent: str) -> str:
    return f"InA_{agent}"


@dataclass(frozen=True)
class ExtendedStateF:
    """``prev`` is None for the initial copy of a state."""

    prev: Optional[StateId]
    curr: StateId


@dataclass(frozen=True)
class ExtendedStructureF:
    somas: Somas
    states: Tuple[ExtendedStateF, ...]
    labeling: Mapping[ExtendedStateF, FrozenSet[str]]
    transition: Mapping[Tuple[ExtendedStateF, JointAction], ExtendedStateF]

    def available(self, a: AgentId, state: ExtendedStateF) -> FrozenSet[str]:
        return self.somas.cgs.actions_of(a, state.curr)

    def lift(self, path: Sequence[StateId]) -> List[ExtendedStateF]:
        """The S^F image of a base path."""
        if not path:
            return []
        lifted = [ExtendedStateF(None, path[0])]
        for prev, curr in zip(path, path[1:]):
            lifted.append(ExtendedStateF(prev, curr))
        return lifted

    def path_follows(self, coalition: Coalition, path: Sequence[StateId]) -> bool:
        """Every non-initial state of the lifted path is labeled followed_a for all a in the coalition."""
        wanted = {followed_prop(self.somas.agents[a]) for a in coalition}
        return all(wanted <= self.labeling[state] for state in self.lift(path)[1:])


@dataclass(frozen=True)
class ExtendedStructureE:
    somas: Somas
    coalition: Coalition
    labeling: Mapping[StateId, FrozenSet[str]]


def build_sf(somas: Somas) -> ExtendedStructureF:
    cgs = somas.cgs
    labeling: Dict[ExtendedStateF, FrozenSet[str]] = {}
    for q in cgs.state_ids():
        labeling[ExtendedStateF(None, q)] = cgs.label(q)

    for source in cgs.state_ids():
        prescribed = {a: prescribed_action(somas, a, source) for a in cgs.agent_ids()}
        for target in sorted(cgs.successors(source)):
            vectors = [vector for vector, t in cgs.moves(source) if t == target]
            followed = {
                followed_prop(cgs.agents[a])
                for a, action in prescribed.items()
                if any(vector[a] == action for vector in vectors)
            }
            labeling[ExtendedStateF(source, target)] = cgs.label(target) | followed

    transition = {}
    for state in labeling:
        for vector, target in cgs.moves(state.curr):
            transition[(state, vector)] = ExtendedStateF(state.curr, target)

    return ExtendedStructureF(somas, tuple(sorted(labeling, key=_order)), labeling, transition)


def _order(state: ExtendedStateF):
    return (-1 if state.prev is None else state.prev, state.curr)


def build_se(somas: Somas, coalition: Coalition) -> ExtendedStructureE:
    cgs = somas.cgs
    members = frozenset(coalition)
    labeling = {}
    for q in cgs.state_ids():
        marks = {
            in_coalition_prop(cgs.agents[a]) for a in members if somas.rule(a).partners(q) <= members
        }
        labeling[q] = cgs.label(q) | marks
    return ExtendedStructureE(somas, members, labeling)


def structurally_independent(somas: Somas, coalition: Coalition, q: StateId) -> bool:
    """No member queries an outsider anywhere on the computations where the coalition follows its rules."""
    members = frozenset(coalition)
    se = build_se(somas, members)
    wanted = {in_coalition_prop(somas.agents[a]) for a in members}
    return all(wanted <= se.labeling[s] for s in out_reachable(somas, members, q))
