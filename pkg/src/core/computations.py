"""Restricted computations: what happens when a coalition follows its local rules."""
import logging
from collections import deque
from typing import Dict, FrozenSet, Iterable, List

from core.errors import GuardIncomplete, InputError
from core.guards import evaluate_guard
from core.somas import AgentId, Lasso, Message, Somas, StateId

logger = logging.getLogger(__name__)


def messages_at(somas: Somas, a: AgentId, q: StateId) -> Dict[AgentId, Message]:
    """M(q) for agent ``a``: the message of every partner in tau_a(q), keyed by sender."""
    somas.check_state(q)
    received = {}
    for i in sorted(somas.rule(a).partners(q)):
        try:
            received[i] = somas.internals[(i, q)]
        except KeyError:
            raise InputError(
                f"agent {somas.agents[i]} has no message at state {somas.state_name(q)}"
            ) from None
    return received


def prescribed_action(somas: Somas, a: AgentId, q: StateId) -> str:
    """Action of the first guard of gamma_a(q) that holds."""
    key = ("prescribed", a, q)
    action = somas.cache.get(key)
    if action is not None:
        return action
    received = messages_at(somas, a, q)
    for guard, candidate in somas.rule(a).table(q):
        if evaluate_guard(guard, received):
            somas.cache[key] = candidate
            return candidate
    raise GuardIncomplete(somas.agents[a], somas.state_name(q))


def restricted_successors(somas: Somas, coalition: Iterable[AgentId], q: StateId) -> FrozenSet[StateId]:
    somas.check_state(q)
    prescribed = {a: prescribed_action(somas, a, q) for a in coalition}
    return frozenset(
        target
        for vector, target in somas.cgs.moves(q)
        if all(vector[a] == action for a, action in prescribed.items())
    )


def restricted_graph(somas: Somas, coalition: Iterable[AgentId]) -> Dict[StateId, FrozenSet[StateId]]:
    """Successor sets of every state under the coalition's rules."""
    members = frozenset(coalition)
    return {q: restricted_successors(somas, members, q) for q in somas.cgs.state_ids()}


def out_reachable(somas: Somas, coalition: Iterable[AgentId], q: StateId) -> FrozenSet[StateId]:
    """States visited by some computation of out(q, rules of the coalition)."""
    members = frozenset(coalition)
    somas.check_state(q)
    seen = {q}
    frontier = deque([q])
    while frontier:
        current = frontier.popleft()
        for nxt in restricted_successors(somas, members, current):
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return frozenset(seen)


def communication_inputs(somas: Somas, states: Iterable[StateId]) -> Dict[AgentId, FrozenSet[AgentId]]:
    """For every agent b, the agents b queries at some state of ``states``."""
    visited = list(states)
    inputs = {}
    for b in somas.cgs.agent_ids():
        rule = somas.rule(b)
        inputs[b] = frozenset().union(*(rule.partners(s) for s in visited))
    return inputs


def star_computation(somas: Somas, q: StateId) -> Lasso:
    """The single computation from ``q`` when every agent follows its rules."""
    everyone = somas.all_agents
    path: List[StateId] = []
    index: Dict[StateId, int] = {}
    current = q
    while current not in index:
        index[current] = len(path)
        path.append(current)
        successors = restricted_successors(somas, everyone, current)
        if len(successors) != 1:
            raise InputError(
                f"state {somas.state_name(current)} has {len(successors)} successors "
                "under the prescribed joint action"
            )
        (current,) = successors
    start = index[current]
    lasso = Lasso(tuple(path[:start]), tuple(path[start:]))
    logger.debug("star computation from %s: prefix=%s cycle=%s", somas.state_name(q), lasso.prefix, lasso.cycle)
    return lasso
