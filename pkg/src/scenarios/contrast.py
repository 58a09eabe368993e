"""Two small models separating semantic from structural independence.

In both, a1 and a2 act at q0 and the system then rests at q1 (labeled p) or q2.
"""
from core.builder import SomasBuilder
from core.somas import Message, Somas

AGENTS = ("a1", "a2")
STATES = ("q0", "q1", "q2")


def _skeleton() -> SomasBuilder:
    builder = SomasBuilder(AGENTS, STATES, props=["p"], actions=("alpha", "beta"))
    builder.label("q1", ["p"])
    for agent in AGENTS:
        builder.allow(agent, "q0", ["alpha", "beta"])
        for state in ("q1", "q2"):
            builder.allow(agent, state, ["alpha"])
            builder.rule(agent, state, [agent], [("true", "alpha")])
        for state in STATES:
            builder.internal(agent, state, Message.integer(1))
    builder.move("q1", ("alpha", "alpha"), "q1")
    builder.move("q2", ("alpha", "alpha"), "q2")
    return builder


def semantic_not_structural() -> Somas:
    """a1 reaches p whatever a2 does, but consults a2 before acting."""
    builder = _skeleton()
    for a2 in ("alpha", "beta"):
        builder.move("q0", ("alpha", a2), "q1")
        builder.move("q0", ("beta", a2), "q2")
    builder.rule("a1", "q0", AGENTS, [("msg(a2) >= 0", "alpha"), ("true", "alpha")])
    builder.rule("a2", "q0", ["a2"], [("true", "alpha")])
    return builder.build("semantic_not_structural")


def structural_not_semantic() -> Somas:
    """Neither agent talks to the other, but p needs both to play alpha."""
    builder = _skeleton()
    for a1 in ("alpha", "beta"):
        for a2 in ("alpha", "beta"):
            builder.move("q0", (a1, a2), "q1" if (a1, a2) == ("alpha", "alpha") else "q2")
    builder.rule("a1", "q0", ["a1"], [("true", "alpha")])
    builder.rule("a2", "q0", ["a2"], [("true", "alpha")])
    return builder.build("structural_not_semantic")
