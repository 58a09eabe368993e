"""Random and parametric model families for fuzzing and scaling runs.

Every generated model is valid: each agent sends one kind of message, reads
only its own partners, and ends every action table with a ``true`` guard.
"""
import random
from itertools import product
from typing import List, Optional, Sequence

from core.builder import SomasBuilder
from core.somas import Message, Somas
from logic.formulas import (
    And,
    CoalitionGlobally,
    CoalitionNext,
    CoalitionUntil,
    Formula,
    Globally,
    Next,
    Not,
    Prop,
    TemporalGoal,
    Top,
    Until,
)

PROPS = ("p", "q")


def _subset(rng: random.Random, items: Sequence[str]) -> List[str]:
    return [item for item in items if rng.random() < 0.5]


def _random_guard(rng: random.Random, agent_kinds: dict, partners: Sequence[str]) -> str:
    ints = [a for a in partners if agent_kinds[a] == "int"]
    sets = [a for a in partners if agent_kinds[a] == "props"]
    options = []
    if len(ints) >= 2:
        left, right = rng.sample(ints, 2)
        options.append(f"msg({left}) {rng.choice(['<', '<=', '==', '>=', '>'])} msg({right})")
    if ints:
        options.append(f"msg({rng.choice(ints)}) {rng.choice(['<', '>=', '=='])} {rng.randint(0, 3)}")
    if sets:
        options.append(f"has(msg({rng.choice(sets)}), {rng.choice(PROPS)})")
    if not options:
        return "true"
    guard = rng.choice(options)
    return f"!{guard}" if rng.random() < 0.25 else guard


def random_somas(
    rng: random.Random,
    max_states: int = 6,
    max_agents: int = 3,
    max_actions: int = 2,
    name: str = "random",
) -> Somas:
    states = [f"s{i}" for i in range(rng.randint(1, max_states))]
    agents = [f"a{i}" for i in range(rng.randint(1, max_agents))]
    actions = [f"act{i}" for i in range(max(1, max_actions))]
    builder = SomasBuilder(agents, states, props=PROPS, actions=actions)
    kinds = {agent: rng.choice(["int", "props"]) for agent in agents}

    for state in states:
        label = _subset(rng, PROPS)
        builder.label(state, label)
        available = {}
        for agent in agents:
            available[agent] = sorted(set(_subset(rng, actions)) or {rng.choice(actions)})
            builder.allow(agent, state, available[agent])
            if kinds[agent] == "int":
                builder.internal(agent, state, Message.integer(rng.randint(0, 3)))
            else:
                builder.internal(agent, state, Message.propositions(_subset(rng, label)))
        for vector in product(*(available[agent] for agent in agents)):
            builder.move(state, vector, rng.choice(states))
        for agent in agents:
            partners = [agent] + _subset(rng, [other for other in agents if other != agent])
            gamma = [
                (_random_guard(rng, kinds, partners), rng.choice(available[agent]))
                for _ in range(rng.randint(0, 2))
            ]
            gamma.append(("true", rng.choice(available[agent])))
            builder.rule(agent, state, partners, gamma)
    return builder.build(name)


def random_formula(rng: random.Random, somas: Somas, depth: int = 3) -> Formula:
    """A random state formula over p, q and the agents of ``somas``."""
    if depth <= 0 or rng.random() < 0.2:
        return Top() if rng.random() < 0.15 else Prop(rng.choice(PROPS))
    coalition = frozenset(_subset(rng, somas.agents))
    kind = rng.randrange(6)
    if kind == 0:
        return Not(random_formula(rng, somas, depth - 1))
    if kind == 1:
        return And(random_formula(rng, somas, depth - 1), random_formula(rng, somas, depth - 1))
    if kind == 2:
        return CoalitionNext(coalition, random_formula(rng, somas, depth - 1))
    if kind == 3:
        return CoalitionGlobally(coalition, random_formula(rng, somas, depth - 1))
    return CoalitionUntil(coalition, random_formula(rng, somas, depth - 1), random_formula(rng, somas, depth - 1))


def random_goal(rng: random.Random, somas: Somas, depth: int = 2) -> TemporalGoal:
    kind = rng.randrange(3)
    if kind == 0:
        return Next(random_formula(rng, somas, depth))
    if kind == 1:
        return Globally(random_formula(rng, somas, depth))
    return Until(random_formula(rng, somas, depth) if rng.random() < 0.5 else Top(), random_formula(rng, somas, depth))


def ring_somas(n_states: int) -> Somas:
    """Two agents on a ring of states; ``a`` may stay put, ``b`` always pushes on. p marks the last state."""
    states = [f"s{i}" for i in range(n_states)]
    builder = SomasBuilder(("a", "b"), states, props=PROPS, actions=("go", "stay"))
    builder.label(states[-1], ["p"])
    for i, state in enumerate(states):
        nxt = states[(i + 1) % n_states]
        builder.allow("a", state, ["go", "stay"])
        builder.allow("b", state, ["go"])
        builder.move(state, ("go", "go"), nxt)
        builder.move(state, ("stay", "go"), state)
        builder.internal("a", state, Message.integer(i))
        builder.internal("b", state, Message.integer(0))
        builder.rule("a", state, ["a", "b"], [("msg(a) >= msg(b)", "go"), ("true", "stay")])
        builder.rule("b", state, ["b"], [("true", "go")])
    return builder.build(f"ring_{n_states}")


def independent_agents_somas(n_agents: int, n_states: Optional[int] = None, chained: bool = False) -> Somas:
    """Agents take turns moving a token along a line; p marks the end of the line.

    At state k the agent k mod n either plays ``go`` (advance) or ``stop``
    (stay), everyone else waits. Agents query only themselves, or with
    ``chained`` also the agent before them.
    """
    agents = [f"a{i}" for i in range(n_agents)]
    n_states = n_agents + 1 if n_states is None else n_states
    states = [f"s{k}" for k in range(n_states)]
    builder = SomasBuilder(agents, states, props=PROPS, actions=("go", "stop", "wait"))
    builder.label(states[-1], ["p"])
    for k, state in enumerate(states):
        last = k == n_states - 1
        active = None if last else agents[k % n_agents]
        for i, agent in enumerate(agents):
            builder.internal(agent, state, Message.integer(0))
            partners = [agent]
            if chained and i > 0:
                partners.append(agents[i - 1])
            if agent == active:
                builder.allow(agent, state, ["go", "stop"])
                gamma = [(f"msg({partners[-1]}) >= 0", "go"), ("true", "stop")]
            else:
                builder.allow(agent, state, ["wait"])
                gamma = [("true", "wait")]
            builder.rule(agent, state, partners, gamma)
        wait = {agent: "wait" for agent in agents}
        if active is None:
            builder.move(state, wait, state)
        else:
            builder.move(state, {**wait, active: "go"}, states[k + 1])
            builder.move(state, {**wait, active: "stop"}, state)
    return builder.build(f"turns_{n_agents}" + ("_chained" if chained else ""))
