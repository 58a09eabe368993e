"""Concurrent game structures extended with communication-based local rules.

A model is built once and never mutated: every table is a read-only mapping,
agents and states are addressed by their index and named through the
``agents``/``states`` tuples.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import (
    Any,
    Callable,
    Dict,
    FrozenSet,
    Iterable,
    Iterator,
    List,
    Mapping,
    Optional,
    Tuple,
    Union,
)

from core.errors import InputError
from core.guards import Guard

AgentId = int
StateId = int
JointAction = Tuple[str, ...]
Coalition = FrozenSet[AgentId]

INT_MESSAGE = "int"
PROPS_MESSAGE = "props"


@dataclass(frozen=True)
class Message:
    """What an agent communicates at a state: an integer or a set of propositions."""

    tag: str
    payload: Union[int, FrozenSet[str]]

    @classmethod
    def integer(cls, value: int) -> "Message":
        return cls(INT_MESSAGE, int(value))

    @classmethod
    def propositions(cls, props: Iterable[str]) -> "Message":
        return cls(PROPS_MESSAGE, frozenset(props))

    @property
    def is_int(self) -> bool:
        return self.tag == INT_MESSAGE


@dataclass(frozen=True)
class Cgs:
    agents: Tuple[str, ...]
    states: Tuple[str, ...]
    props: Tuple[str, ...]
    labeling: Mapping[StateId, FrozenSet[str]]
    actions: Tuple[str, ...]
    available: Mapping[Tuple[AgentId, StateId], FrozenSet[str]]
    transition: Mapping[Tuple[StateId, JointAction], StateId]

    @property
    def agent_count(self) -> int:
        return len(self.agents)

    def agent_ids(self) -> range:
        return range(len(self.agents))

    def state_ids(self) -> range:
        return range(len(self.states))

    def label(self, q: StateId) -> FrozenSet[str]:
        return self.labeling.get(q, frozenset())

    def actions_of(self, a: AgentId, q: StateId) -> FrozenSet[str]:
        return self.available.get((a, q), frozenset())

    def joint_actions(self, q: StateId) -> Iterator[JointAction]:
        """Enumerate D(q) in a stable order."""
        choices = [sorted(self.actions_of(a, q)) for a in self.agent_ids()]
        return product(*choices)

    @cached_property
    def _moves(self) -> Dict[StateId, Tuple[Tuple[JointAction, StateId], ...]]:
        grouped: Dict[StateId, List[Tuple[JointAction, StateId]]] = {q: [] for q in self.state_ids()}
        for (q, vector), target in self.transition.items():
            grouped.setdefault(q, []).append((vector, target))
        return {q: tuple(sorted(moves)) for q, moves in grouped.items()}

    def moves(self, q: StateId) -> Tuple[Tuple[JointAction, StateId], ...]:
        """All (joint action, successor) pairs leaving ``q``."""
        return self._moves.get(q, ())

    def successors(self, q: StateId) -> FrozenSet[StateId]:
        return frozenset(target for _, target in self.moves(q))


@dataclass(frozen=True)
class LocalRule:
    """Who an agent queries (tau) and the guarded action table it follows (gamma)."""

    tau: Mapping[StateId, FrozenSet[AgentId]]
    gamma: Mapping[StateId, Tuple[Tuple[Guard, str], ...]]

    def partners(self, q: StateId) -> FrozenSet[AgentId]:
        return self.tau.get(q, frozenset())

    def table(self, q: StateId) -> Tuple[Tuple[Guard, str], ...]:
        return self.gamma.get(q, ())


# Evaluates a community atom at a state; installed by scenario builders.
AtomHook = Callable[["Somas", StateId, Any], bool]


@dataclass(frozen=True)
class Somas:
    cgs: Cgs
    internals: Mapping[Tuple[AgentId, StateId], Message]
    rules: Mapping[AgentId, LocalRule]
    atom_hook: Optional[AtomHook] = field(default=None, compare=False)
    name: str = field(default="somas", compare=False)

    @property
    def agents(self) -> Tuple[str, ...]:
        return self.cgs.agents

    @property
    def states(self) -> Tuple[str, ...]:
        return self.cgs.states

    @property
    def all_agents(self) -> Coalition:
        return frozenset(self.cgs.agent_ids())

    @cached_property
    def _agent_index(self) -> Dict[str, AgentId]:
        return {name: i for i, name in enumerate(self.cgs.agents)}

    @cached_property
    def _state_index(self) -> Dict[str, StateId]:
        return {name: q for q, name in enumerate(self.cgs.states)}

    @cached_property
    def cache(self) -> Dict[Any, Any]:
        """Memo for pure per-model results (prescribed actions)."""
        return {}

    def agent_id(self, name: str) -> AgentId:
        try:
            return self._agent_index[name]
        except KeyError:
            raise InputError(f"unknown agent {name!r}") from None

    def state_id(self, name: str) -> StateId:
        try:
            return self._state_index[name]
        except KeyError:
            raise InputError(f"unknown state {name!r}") from None

    def coalition(self, names: Iterable[str]) -> Coalition:
        return frozenset(self.agent_id(name) for name in names)

    def agent_names(self, coalition: Iterable[AgentId]) -> Tuple[str, ...]:
        return tuple(sorted(self.cgs.agents[a] for a in coalition))

    def state_name(self, q: StateId) -> str:
        return self.cgs.states[q]

    def check_agent(self, a: AgentId) -> None:
        if not 0 <= a < self.cgs.agent_count:
            raise InputError(f"unknown agent id {a}")

    def check_state(self, q: StateId) -> None:
        if not 0 <= q < len(self.cgs.states):
            raise InputError(f"unknown state id {q}")

    def rule(self, a: AgentId) -> LocalRule:
        self.check_agent(a)
        try:
            return self.rules[a]
        except KeyError:
            raise InputError(f"agent {self.cgs.agents[a]} has no local rule") from None


@dataclass(frozen=True)
class Lasso:
    """A computation written as a finite prefix followed by a cycle repeated forever."""

    prefix: Tuple[StateId, ...]
    cycle: Tuple[StateId, ...]

    @property
    def states(self) -> FrozenSet[StateId]:
        return frozenset(self.prefix) | frozenset(self.cycle)

    def unroll(self, length: int) -> List[StateId]:
        path = list(self.prefix)
        while len(path) < length:
            path.extend(self.cycle)
        return path[:length]
