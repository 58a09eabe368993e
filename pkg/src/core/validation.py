import logging
from dataclasses import dataclass
from typing import List, Optional

from core.guards import evaluate_guard, guard_agents, guard_reads
from core.somas import PROPS_MESSAGE, Somas

logger = logging.getLogger(__name__)

EMPTY_ACTION_SET = "empty action set"
UNKNOWN_ACTION = "unknown action"
MISSING_TRANSITION = "missing transition"
STRAY_TRANSITION = "transition outside available moves"
BAD_TARGET = "transition target unknown"
LABEL_OUTSIDE_PROPS = "label outside props"
MISSING_INTERNAL = "missing internal"
MESSAGE_OUTSIDE_LABEL = "message outside labeling"
MISSING_RULE = "missing rule"
EMPTY_TAU = "empty tau"
EMPTY_GAMMA = "empty gamma"
ACTION_UNAVAILABLE = "action unavailable"
GUARD_OUTSIDE_TAU = "guard reads outside tau"
GUARD_KIND = "guard kind mismatch"
GUARD_INCOMPLETE = "guard incomplete"


@dataclass(frozen=True)
class Violation:
    kind: str
    agent: Optional[str]
    state: Optional[str]
    detail: str = ""

    def __str__(self) -> str:
        where = []
        if self.agent:
            where.append(f"agent {self.agent}")
        if self.state:
            where.append(f"state {self.state}")
        text = f"{self.kind} ({', '.join(where)})" if where else self.kind
        return f"{text}: {self.detail}" if self.detail else text


def validate(somas: Somas) -> List[Violation]:
    """Every violated model invariant, with agent/state coordinates. Empty means valid."""
    cgs = somas.cgs
    agents, states = cgs.agents, cgs.states
    props = set(cgs.props)
    actions = set(cgs.actions)
    report: List[Violation] = []

    for q in cgs.state_ids():
        stray = cgs.label(q) - props
        if stray:
            report.append(Violation(LABEL_OUTSIDE_PROPS, None, states[q], ", ".join(sorted(stray))))

    for q in cgs.state_ids():
        for a in cgs.agent_ids():
            available = cgs.actions_of(a, q)
            if not available:
                report.append(Violation(EMPTY_ACTION_SET, agents[a], states[q]))
            unknown = available - actions
            if unknown:
                report.append(Violation(UNKNOWN_ACTION, agents[a], states[q], ", ".join(sorted(unknown))))

        legal = set(cgs.joint_actions(q))
        for vector in sorted(legal):
            if (q, vector) not in cgs.transition:
                report.append(Violation(MISSING_TRANSITION, None, states[q], "/".join(vector)))
        for vector, target in cgs.moves(q):
            if vector not in legal:
                report.append(Violation(STRAY_TRANSITION, None, states[q], "/".join(vector)))
            if not 0 <= target < len(states):
                report.append(Violation(BAD_TARGET, None, states[q], str(target)))

    for a in cgs.agent_ids():
        for q in cgs.state_ids():
            message = somas.internals.get((a, q))
            if message is None:
                report.append(Violation(MISSING_INTERNAL, agents[a], states[q]))
            elif message.tag == PROPS_MESSAGE and not message.payload <= cgs.label(q):
                extra = ", ".join(sorted(message.payload - cgs.label(q)))
                report.append(Violation(MESSAGE_OUTSIDE_LABEL, agents[a], states[q], extra))

    for a in cgs.agent_ids():
        if a not in somas.rules:
            report.append(Violation(MISSING_RULE, agents[a], None))
            continue
        for q in cgs.state_ids():
            report.extend(_check_rule(somas, a, q))

    if report:
        logger.debug("model %s has %d violations", somas.name, len(report))
    return report


def _check_rule(somas: Somas, a: int, q: int) -> List[Violation]:
    cgs = somas.cgs
    agent, state = cgs.agents[a], cgs.states[q]
    rule = somas.rules[a]
    tau = rule.partners(q)
    table = rule.table(q)
    found: List[Violation] = []
    if not tau:
        found.append(Violation(EMPTY_TAU, agent, state))
    if not table:
        found.append(Violation(EMPTY_GAMMA, agent, state))
        return found

    for _, action in table:
        if action not in cgs.actions_of(a, q):
            found.append(Violation(ACTION_UNAVAILABLE, agent, state, action))
    readable = True
    for guard, _ in table:
        outside = guard_agents(guard) - tau
        if outside:
            names = ", ".join(sorted(cgs.agents[i] for i in outside))
            found.append(Violation(GUARD_OUTSIDE_TAU, agent, state, names))
            readable = False
    if not readable or any((i, q) not in somas.internals for i in tau):
        return found

    received = {i: somas.internals[(i, q)] for i in tau}
    mismatched = False
    for guard, _ in table:
        for i, expects_int in sorted(guard_reads(guard)):
            if received[i].is_int != expects_int:
                wanted = "an integer" if expects_int else "a proposition set"
                detail = f"guard expects {wanted} message from {cgs.agents[i]}, got {received[i].tag}"
                found.append(Violation(GUARD_KIND, agent, state, detail))
                mismatched = True
    if mismatched:
        return found

    for guard, _ in table:
        if evaluate_guard(guard, received):
            return found
    found.append(Violation(GUARD_INCOMPLETE, agent, state))
    return found
