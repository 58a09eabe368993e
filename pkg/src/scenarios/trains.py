"""Two trains sharing a tunnel.

Both trains start in front of the tunnel (q0). q1 and q2 have one train in
the tunnel, q3 is "both passed" and q4 is the crash. q3 and q4 are absorbing.
At q0 each train compares urgencies with the other one; afterwards each train
only reads its own message.
"""
from core.builder import SomasBuilder
from core.somas import Message, Somas

AGENTS = ("a1", "a2")
STATES = ("q0", "q1", "q2", "q3", "q4")

# (state, a1, a2) -> target
MOVES = {
    ("q0", "go", "go"): "q4",
    ("q0", "go", "wait"): "q2",
    ("q0", "wait", "go"): "q1",
    ("q0", "wait", "wait"): "q0",
    ("q1", "go", "wait"): "q3",
    ("q1", "wait", "wait"): "q1",
    ("q2", "wait", "go"): "q3",
    ("q2", "wait", "wait"): "q2",
    ("q3", "wait", "wait"): "q3",
    ("q4", "wait", "wait"): "q4",
}

AVAILABLE = {
    "q0": (("go", "wait"), ("go", "wait")),
    "q1": (("go", "wait"), ("wait",)),
    "q2": (("wait",), ("go", "wait")),
    "q3": (("wait",), ("wait",)),
    "q4": (("wait",), ("wait",)),
}


def _build(u1: int, u2: int, first_guard: str, name: str, deadlock: bool) -> Somas:
    props = ["passed", "crash"] + (["deadlock"] if deadlock else [])
    builder = SomasBuilder(AGENTS, STATES, props=props, actions=("go", "wait"))
    builder.label("q3", ["passed"]).label("q4", ["crash"])
    if deadlock and u1 == u2:
        builder.label("q0", ["deadlock"])

    for state, choices in AVAILABLE.items():
        for agent, actions in zip(AGENTS, choices):
            builder.allow(agent, state, actions)
    for (state, m1, m2), target in MOVES.items():
        builder.move(state, (m1, m2), target)

    for state in STATES:
        builder.internal("a1", state, Message.integer(u1))
        builder.internal("a2", state, Message.integer(u2))

    builder.rule("a1", "q0", AGENTS, [(first_guard, "go"), ("true", "wait")])
    builder.rule("a2", "q0", AGENTS, [("msg(a1) < msg(a2)", "go"), ("true", "wait")])
    builder.rule("a1", "q1", ["a1"], [("true", "go")])
    builder.rule("a2", "q1", ["a2"], [("true", "wait")])
    builder.rule("a1", "q2", ["a1"], [("true", "wait")])
    builder.rule("a2", "q2", ["a2"], [("true", "go")])
    for state in ("q3", "q4"):
        builder.rule("a1", state, ["a1"], [("true", "wait")])
        builder.rule("a2", state, ["a2"], [("true", "wait")])
    return builder.build(name)


def two_trains(u1: int, u2: int) -> Somas:
    """a1 goes first when at least as urgent as a2."""
    return _build(u1, u2, "msg(a1) >= msg(a2)", "two_trains", deadlock=False)


def two_trains_strict(u1: int, u2: int) -> Somas:
    """a1 goes first only when strictly more urgent; on a tie both wait at q0, labeled deadlock."""
    return _build(u1, u2, "msg(a1) > msg(a2)", "two_trains_strict", deadlock=True)
