"""Guard expressions of local-rule action tables.

Text form::

    true | msg(a) OP msg(b) | msg(a) OP INT | has(msg(a), p) | !E | E && E | E || E | (E)

Agent names are resolved to indices when parsed, so a guard only ever sees
the message map ``agent index -> Message`` it is evaluated against.
"""
import operator
from dataclasses import dataclass
from typing import Any, Callable, Dict, FrozenSet, Mapping, Sequence, Tuple, Union

from lark import Lark, Transformer, v_args
from lark.exceptions import UnexpectedInput, VisitError

from core.errors import FormulaSyntaxError, GuardTypeError, UnboundNameError

GUARD_GRAMMAR = r"""
?start: disj

?disj: conj
     | disj "||" conj          -> any_of

?conj: neg
     | conj "&&" neg           -> all_of

?neg: "!" neg                  -> negate
    | atom

?atom: "true"                  -> always
     | msg OP msg              -> compare_messages
     | msg OP SIGNED_INT       -> compare_constant
     | "has" "(" msg "," NAME ")" -> has
     | "(" disj ")"

msg: "msg" "(" NAME ")"

OP: /<=|>=|==|<|>/
NAME: /[A-Za-z_][A-Za-z0-9_]*/

%import common.SIGNED_INT
%import common.WS
%ignore WS
"""

_COMPARATORS: Dict[str, Callable[[int, int], bool]] = {
    "<": operator.lt,
    "<=": operator.le,
    "==": operator.eq,
    ">=": operator.ge,
    ">": operator.gt,
}


@dataclass(frozen=True)
class Always:
    pass


@dataclass(frozen=True)
class CompareMessages:
    left: int
    op: str
    right: int


@dataclass(frozen=True)
class CompareConstant:
    agent: int
    op: str
    value: int


@dataclass(frozen=True)
class Has:
    agent: int
    prop: str


@dataclass(frozen=True)
class NotGuard:
    body: "Guard"


@dataclass(frozen=True)
class AndGuard:
    left: "Guard"
    right: "Guard"


@dataclass(frozen=True)
class OrGuard:
    left: "Guard"
    right: "Guard"


Guard = Union[Always, CompareMessages, CompareConstant, Has, NotGuard, AndGuard, OrGuard]

_parser = Lark(GUARD_GRAMMAR, parser="lalr")


@v_args(inline=True)
class _GuardBuilder(Transformer):
    def __init__(self, agents: Sequence[str]):
        super().__init__()
        self.index = {name: i for i, name in enumerate(agents)}

    def msg(self, name):
        try:
            return self.index[str(name)]
        except KeyError:
            raise UnboundNameError(f"guard reads msg({name}) of an undeclared agent") from None

    def always(self):
        return Always()

    def compare_messages(self, left, op, right):
        return CompareMessages(left, str(op), right)

    def compare_constant(self, agent, op, value):
        return CompareConstant(agent, str(op), int(value))

    def has(self, agent, prop):
        return Has(agent, str(prop))

    def negate(self, body):
        return NotGuard(body)

    def all_of(self, left, right):
        return AndGuard(left, right)

    def any_of(self, left, right):
        return OrGuard(left, right)


def parse_guard(text: str, agents: Sequence[str]) -> Guard:
    """Parse a guard string, resolving ``msg(name)`` against ``agents``."""
    if not text or not text.strip():
        raise FormulaSyntaxError("empty guard", text)
    try:
        tree = _parser.parse(text)
    except UnexpectedInput as e:
        raise FormulaSyntaxError(
            "guard syntax error", text, _position(e, text), getattr(e, "line", None), getattr(e, "column", None)
        ) from None
    try:
        return _GuardBuilder(agents).transform(tree)
    except VisitError as e:
        raise e.orig_exc from None


def _position(error: UnexpectedInput, text: str) -> int:
    pos = getattr(error, "pos_in_stream", None)
    if pos is None or pos < 0:
        return len(text)
    return pos


def guard_agents(guard: Guard) -> FrozenSet[int]:
    """Agents whose messages the guard reads."""
    if isinstance(guard, CompareMessages):
        return frozenset((guard.left, guard.right))
    if isinstance(guard, (CompareConstant, Has)):
        return frozenset((guard.agent,))
    if isinstance(guard, NotGuard):
        return guard_agents(guard.body)
    if isinstance(guard, (AndGuard, OrGuard)):
        return guard_agents(guard.left) | guard_agents(guard.right)
    return frozenset()


def guard_reads(guard: Guard) -> FrozenSet[Tuple[int, bool]]:
    """``(agent, expects_int)`` for every message read anywhere in the guard."""
    if isinstance(guard, CompareMessages):
        return frozenset(((guard.left, True), (guard.right, True)))
    if isinstance(guard, CompareConstant):
        return frozenset(((guard.agent, True),))
    if isinstance(guard, Has):
        return frozenset(((guard.agent, False),))
    if isinstance(guard, NotGuard):
        return guard_reads(guard.body)
    if isinstance(guard, (AndGuard, OrGuard)):
        return guard_reads(guard.left) | guard_reads(guard.right)
    return frozenset()


def _read(messages: Mapping[int, Any], agent: int, want_int: bool):
    try:
        message = messages[agent]
    except KeyError:
        raise GuardTypeError(f"guard reads the message of agent {agent}, which was not received") from None
    if message.is_int != want_int:
        kind = "integer" if want_int else "proposition set"
        raise GuardTypeError(f"guard expects an {kind} message from agent {agent}, got {message.tag}")
    return message.payload


def evaluate_guard(guard: Guard, messages: Mapping[int, Any]) -> bool:
    if isinstance(guard, Always):
        return True
    if isinstance(guard, CompareMessages):
        return _COMPARATORS[guard.op](_read(messages, guard.left, True), _read(messages, guard.right, True))
    if isinstance(guard, CompareConstant):
        return _COMPARATORS[guard.op](_read(messages, guard.agent, True), guard.value)
    if isinstance(guard, Has):
        return guard.prop in _read(messages, guard.agent, False)
    if isinstance(guard, NotGuard):
        return not evaluate_guard(guard.body, messages)
    if isinstance(guard, AndGuard):
        return evaluate_guard(guard.left, messages) and evaluate_guard(guard.right, messages)
    if isinstance(guard, OrGuard):
        return evaluate_guard(guard.left, messages) or evaluate_guard(guard.right, messages)
    raise TypeError(f"not a guard: {guard!r}")


# Binding strength used to decide where parentheses are needed.
_OR, _AND, _NOT, _ATOM = range(4)


def _strength(guard: Guard) -> int:
    if isinstance(guard, OrGuard):
        return _OR
    if isinstance(guard, AndGuard):
        return _AND
    if isinstance(guard, NotGuard):
        return _NOT
    return _ATOM


def render_guard(guard: Guard, agents: Sequence[str]) -> str:
    def wrap(child: Guard, minimum: int) -> str:
        text = render_guard(child, agents)
        return f"({text})" if _strength(child) < minimum else text

    if isinstance(guard, Always):
        return "true"
    if isinstance(guard, CompareMessages):
        return f"msg({agents[guard.left]}) {guard.op} msg({agents[guard.right]})"
    if isinstance(guard, CompareConstant):
        return f"msg({agents[guard.agent]}) {guard.op} {guard.value}"
    if isinstance(guard, Has):
        return f"has(msg({agents[guard.agent]}), {guard.prop})"
    if isinstance(guard, NotGuard):
        return "!" + wrap(guard.body, _NOT)
    if isinstance(guard, AndGuard):
        # && and || are parsed left-associative
        return f"{wrap(guard.left, _AND)} && {wrap(guard.right, _NOT)}"
    if isinstance(guard, OrGuard):
        return f"{wrap(guard.left, _OR)} || {wrap(guard.right, _AND)}"
    raise TypeError(f"not a guard: {guard!r}")
