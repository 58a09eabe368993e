"""ATL-Gamma formula syntax tree.

Only the core connectives are node types; ``false``, ``||``, ``->`` and
``<A> F`` are built from them by helper constructors.
"""
from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Set, Tuple, Union

Names = FrozenSet[str]


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Prop:
    name: str


@dataclass(frozen=True)
class Com:
    """Every user in ``users`` shares a middle agent from ``middles`` with each user it is interested in."""

    users: Names
    middles: Names


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class CoalitionNext:
    coalition: Names
    body: "Formula"


@dataclass(frozen=True)
class CoalitionGlobally:
    coalition: Names
    body: "Formula"


@dataclass(frozen=True)
class CoalitionUntil:
    coalition: Names
    left: "Formula"
    right: "Formula"


Formula = Union[Top, Prop, Com, Not, And, CoalitionNext, CoalitionGlobally, CoalitionUntil]
Temporal = (CoalitionNext, CoalitionGlobally, CoalitionUntil)


@dataclass(frozen=True)
class Next:
    body: Formula

    def bind(self, coalition: Iterable[str]) -> Formula:
        return CoalitionNext(frozenset(coalition), self.body)


@dataclass(frozen=True)
class Globally:
    body: Formula

    def bind(self, coalition: Iterable[str]) -> Formula:
        return CoalitionGlobally(frozenset(coalition), self.body)


@dataclass(frozen=True)
class Until:
    left: Formula
    right: Formula

    def bind(self, coalition: Iterable[str]) -> Formula:
        return CoalitionUntil(frozenset(coalition), self.left, self.right)


TemporalGoal = Union[Next, Globally, Until]


def false() -> Formula:
    return Not(Top())


def Or(left: Formula, right: Formula) -> Formula:
    return Not(And(Not(left), Not(right)))


def Implies(left: Formula, right: Formula) -> Formula:
    return Not(And(left, Not(right)))


def eventually(coalition: Iterable[str], body: Formula) -> Formula:
    return CoalitionUntil(frozenset(coalition), Top(), body)


def eventually_goal(body: Formula) -> TemporalGoal:
    return Until(Top(), body)


def split_goal(formula: Formula) -> Tuple[Names, TemporalGoal]:
    """Separate a coalition formula into its coalition and its temporal goal."""
    if isinstance(formula, CoalitionNext):
        return formula.coalition, Next(formula.body)
    if isinstance(formula, CoalitionGlobally):
        return formula.coalition, Globally(formula.body)
    if isinstance(formula, CoalitionUntil):
        return formula.coalition, Until(formula.left, formula.right)
    raise ValueError(f"not a coalition formula: {render_formula(formula)}")


def children(formula: Formula) -> Tuple[Formula, ...]:
    if isinstance(formula, (Not, CoalitionNext, CoalitionGlobally)):
        return (formula.body,)
    if isinstance(formula, (And, CoalitionUntil)):
        return (formula.left, formula.right)
    return ()


def subformulas(formula: Formula) -> List[Formula]:
    """Post-order list of distinct subformulas; ``formula`` itself comes last."""
    order: List[Formula] = []
    seen: Set[Formula] = set()

    def visit(node: Formula) -> None:
        if node in seen:
            return
        for child in children(node):
            visit(child)
        seen.add(node)
        order.append(node)

    visit(formula)
    return order


def coalition_names(formula: Formula) -> FrozenSet[str]:
    """Agent names used by coalitions of ``formula``."""
    names: Set[str] = set()
    for node in subformulas(formula):
        if isinstance(node, Temporal):
            names |= node.coalition
    return frozenset(names)


def com_atoms(formula: Formula) -> List[Com]:
    return [node for node in subformulas(formula) if isinstance(node, Com)]


def depth(formula: Formula) -> int:
    """Nesting depth of coalition operators."""
    inner = max((depth(child) for child in children(formula)), default=0)
    return inner + 1 if isinstance(formula, Temporal) else inner


_AND, _UNARY, _ATOM = range(3)


def _strength(formula: Formula) -> int:
    if isinstance(formula, And):
        return _AND
    if isinstance(formula, (Not,) + Temporal):
        return _UNARY
    return _ATOM


def _wrap(formula: Formula, minimum: int) -> str:
    text = render_formula(formula)
    return f"({text})" if _strength(formula) < minimum else text


def _names(names: Iterable[str]) -> str:
    return ",".join(sorted(names))


def render_formula(formula: Formula) -> str:
    if isinstance(formula, Top):
        return "true"
    if isinstance(formula, Prop):
        return formula.name
    if isinstance(formula, Com):
        return f"com({{{_names(formula.users)}}},{{{_names(formula.middles)}}})"
    if isinstance(formula, Not):
        if isinstance(formula.body, Top):
            return "false"
        return "!" + _wrap(formula.body, _UNARY)
    if isinstance(formula, And):
        return f"{_wrap(formula.left, _AND)} && {_wrap(formula.right, _UNARY)}"
    if isinstance(formula, Temporal):
        return f"<{_names(formula.coalition)}> {render_goal(split_goal(formula)[1])}"
    raise TypeError(f"not a formula: {formula!r}")


def render_goal(goal: TemporalGoal) -> str:
    if isinstance(goal, Next):
        return "X " + _wrap(goal.body, _UNARY)
    if isinstance(goal, Globally):
        return "G " + _wrap(goal.body, _UNARY)
    if isinstance(goal, Until):
        if isinstance(goal.left, Top):
            return "F " + _wrap(goal.right, _UNARY)
        return f"({render_formula(goal.left)} U {render_formula(goal.right)})"
    raise TypeError(f"not a temporal goal: {goal!r}")
