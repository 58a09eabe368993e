import logging
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Set, Tuple, Union

from core.errors import ModelFormatError
from core.guards import Guard, parse_guard
from core.somas import AtomHook, Cgs, LocalRule, Message, Somas

logger = logging.getLogger(__name__)


class SomasBuilder:
    """Assembles a Somas from name-based tables."""

    def __init__(self, agents: Sequence[str], states: Sequence[str], props: Optional[Iterable[str]] = None,
                 actions: Optional[Iterable[str]] = None):
        if not agents:
            raise ModelFormatError("a model needs at least one agent")
        if not states:
            raise ModelFormatError("a model needs at least one state")
        for kind, names in (("agent", agents), ("state", states)):
            if len(set(names)) != len(names):
                raise ModelFormatError(f"duplicate {kind} names")
        self.agents = tuple(agents)
        self.states = tuple(states)
        # Undeclared propositions and actions are declared on first use.
        self.derive_props = props is None
        self.derive_actions = actions is None
        self.props: List[str] = list(dict.fromkeys(props or ()))
        self.actions: List[str] = list(dict.fromkeys(actions or ()))
        self._agent = {name: i for i, name in enumerate(self.agents)}
        self._state = {name: i for i, name in enumerate(self.states)}
        self.labeling: Dict[int, Set[str]] = {q: set() for q in range(len(self.states))}
        self.available: Dict[Tuple[int, int], FrozenSet[str]] = {}
        self.transition: Dict[Tuple[int, Tuple[str, ...]], int] = {}
        self.internals: Dict[Tuple[int, int], Message] = {}
        self.tau: Dict[int, Dict[int, FrozenSet[int]]] = {}
        self.gamma: Dict[int, Dict[int, Tuple[Tuple[Guard, str], ...]]] = {}

    def agent(self, name: str) -> int:
        try:
            return self._agent[name]
        except KeyError:
            raise ModelFormatError(f"unknown agent {name!r}") from None

    def state(self, name: str) -> int:
        try:
            return self._state[name]
        except KeyError:
            raise ModelFormatError(f"unknown state {name!r}") from None

    def label(self, state: str, props: Iterable[str]) -> "SomasBuilder":
        self.labeling[self.state(state)].update(props)
        return self

    def allow(self, agent: str, state: str, actions: Iterable[str]) -> "SomasBuilder":
        actions = frozenset(actions)
        if self.derive_actions:
            self.actions.extend(sorted(actions - set(self.actions)))
        self.available[(self.agent(agent), self.state(state))] = actions
        return self

    def move(self, state: str, moves: Union[Mapping[str, str], Sequence[str]], target: str) -> "SomasBuilder":
        """Add the transition taken at ``state`` when agents play ``moves`` (by agent name or in agent order)."""
        if isinstance(moves, Mapping):
            missing = set(self.agents) - set(moves)
            extra = set(moves) - set(self.agents)
            if missing or extra:
                raise ModelFormatError(
                    f"transition from {state} must give one action per agent "
                    f"(missing {sorted(missing)}, unknown {sorted(extra)})"
                )
            vector = tuple(moves[name] for name in self.agents)
        else:
            vector = tuple(moves)
            if len(vector) != len(self.agents):
                raise ModelFormatError(f"transition from {state} has {len(vector)} actions for {len(self.agents)} agents")
        key = (self.state(state), vector)
        to = self.state(target)
        if self.transition.get(key, to) != to:
            raise ModelFormatError(f"conflicting transitions from {state} on {'/'.join(vector)}")
        self.transition[key] = to
        return self

    def internal(self, agent: str, state: str, message: Message) -> "SomasBuilder":
        self.internals[(self.agent(agent), self.state(state))] = message
        return self

    def rule(self, agent: str, state: str, tau: Iterable[str],
             gamma: Sequence[Tuple[Union[str, Guard], str]]) -> "SomasBuilder":
        a, q = self.agent(agent), self.state(state)
        self.tau.setdefault(a, {})[q] = frozenset(self.agent(name) for name in tau)
        table = []
        for guard, action in gamma:
            if isinstance(guard, str):
                guard = parse_guard(guard, self.agents)
            table.append((guard, action))
        self.gamma.setdefault(a, {})[q] = tuple(table)
        return self

    def build(self, name: str = "somas", atom_hook: Optional[AtomHook] = None) -> Somas:
        if self.derive_props:
            for labels in self.labeling.values():
                for prop in sorted(labels):
                    if prop not in self.props:
                        self.props.append(prop)
        cgs = Cgs(
            agents=self.agents,
            states=self.states,
            props=tuple(self.props),
            labeling={q: frozenset(labels) for q, labels in self.labeling.items()},
            actions=tuple(self.actions),
            available=dict(self.available),
            transition=dict(self.transition),
        )
        rules = {
            a: LocalRule(self.tau.get(a, {}), self.gamma.get(a, {}))
            for a in set(self.tau) | set(self.gamma)
        }
        logger.debug("built model %s: %d agents, %d states", name, len(self.agents), len(self.states))
        return Somas(cgs, dict(self.internals), rules, atom_hook, name)
