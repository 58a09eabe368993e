"""Five agents finishing parts of a task that depend on each other.

An agent can only finish its part after the agents it queries have finished
theirs: b waits for a and e, d waits for e, c waits for b and d. States record
which agents are done; each agent tells the others whether it is done.
"""
from itertools import combinations, product
from typing import Dict, FrozenSet, List

from core.builder import SomasBuilder
from core.somas import Message, Somas

AGENTS = ("a", "b", "c", "d", "e")

PARENTS: Dict[str, FrozenSet[str]] = {
    "a": frozenset(),
    "b": frozenset({"a", "e"}),
    "c": frozenset({"b", "d"}),
    "d": frozenset({"e"}),
    "e": frozenset(),
}

# Goal propositions and the agents that must be done for each.
TASK_PARTS = {
    "psi_a": frozenset({"a"}),
    "psi_de": frozenset({"d", "e"}),
    "psi_abe": frozenset({"a", "b", "e"}),
    "psi": frozenset(AGENTS),
}


def state_name(done: FrozenSet[str]) -> str:
    return "q_" + "".join(sorted(done)) if done else "q0"


def _all_progress() -> List[FrozenSet[str]]:
    sets = []
    for size in range(len(AGENTS) + 1):
        sets.extend(frozenset(group) for group in combinations(AGENTS, size))
    return sets


def _work_guard(agent: str) -> str:
    clauses = [f"has(msg({p}), done_{p})" for p in sorted(PARENTS[agent])]
    clauses.append(f"!has(msg({agent}), done_{agent})")
    return " && ".join(clauses)


def task_delegation() -> Somas:
    progress = _all_progress()
    props = [f"done_{agent}" for agent in AGENTS] + list(TASK_PARTS)
    builder = SomasBuilder(AGENTS, [state_name(done) for done in progress], props=props, actions=("work", "idle"))

    for done in progress:
        state = state_name(done)
        builder.label(state, [f"done_{agent}" for agent in done])
        builder.label(state, [prop for prop, needed in TASK_PARTS.items() if needed <= done])
        for agent in AGENTS:
            builder.allow(agent, state, ["idle"] if agent in done else ["work", "idle"])
            builder.internal(agent, state, Message.propositions([f"done_{agent}"] if agent in done else []))
            table = [("true", "idle")] if agent in done else [(_work_guard(agent), "work"), ("true", "idle")]
            builder.rule(agent, state, PARENTS[agent] | {agent}, table)

        choices = [["idle"] if agent in done else ["work", "idle"] for agent in AGENTS]
        for vector in product(*choices):
            finished = {
                agent for agent, action in zip(AGENTS, vector) if action == "work" and PARENTS[agent] <= done
            }
            builder.move(state, vector, state_name(done | finished))

    return builder.build("task_delegation")
