#
# Text syntax for ATL-Gamma formulas and temporal goals
#
#   !f   f && g   f || g   f -> g   true   false   p   com({u1,u2},{m1})
#   <a,b> X f   <a,b> G f   <a,b> F f   <a,b> (f U g)   <> G f
#
# Goals are the temporal part alone: X f, G f, F f, (f U g).
#
from lark import Lark, Transformer, v_args
from lark.exceptions import UnexpectedInput

from core.errors import FormulaSyntaxError
from logic.formulas import (
    And,
    Com,
    CoalitionGlobally,
    CoalitionNext,
    CoalitionUntil,
    Formula,
    Globally,
    Implies,
    Next,
    Not,
    Or,
    Prop,
    TemporalGoal,
    Top,
    Until,
    false,
)

FORMULA_GRAMMAR = r"""
?formula: disjunction
        | disjunction "->" formula         -> implies

?disjunction: conjunction
            | disjunction "||" conjunction -> lor

?conjunction: unary
            | conjunction "&&" unary       -> land

?unary: "!" unary                          -> lnot
      | coalition "X" unary                -> next
      | coalition "G" unary                -> globally
      | coalition "F" unary                -> eventually
      | coalition "(" formula "U" formula ")" -> until
      | atom

?atom: "true"                              -> top
     | "false"                             -> bottom
     | "com" "(" name_set "," name_set ")" -> com
     | NAME                                -> prop
     | "(" formula ")"

goal: "X" unary                            -> next_goal
    | "G" unary                            -> globally_goal
    | "F" unary                            -> eventually_goal
    | "(" formula "U" formula ")"          -> until_goal

coalition: "<" names? ">"
name_set: "{" names? "}"
names: NAME ("," NAME)*

NAME: /[A-Za-z_][A-Za-z0-9_]*/

%import common.WS
%ignore WS
"""


@v_args(inline=True)
class FormulaBuilder(Transformer):
    """Turns lark parse trees into formula nodes."""

    def names(self, *tokens):
        return frozenset(str(token) for token in tokens)

    def coalition(self, names=frozenset()):
        return names

    def name_set(self, names=frozenset()):
        return names

    def top(self):
        return Top()

    def bottom(self):
        return false()

    def prop(self, name):
        return Prop(str(name))

    def com(self, users, middles):
        return Com(users, middles)

    def lnot(self, body):
        return Not(body)

    def land(self, left, right):
        return And(left, right)

    def lor(self, left, right):
        return Or(left, right)

    def implies(self, left, right):
        return Implies(left, right)

    def next(self, coalition, body):
        return CoalitionNext(coalition, body)

    def globally(self, coalition, body):
        return CoalitionGlobally(coalition, body)

    def eventually(self, coalition, body):
        return CoalitionUntil(coalition, Top(), body)

    def until(self, coalition, left, right):
        return CoalitionUntil(coalition, left, right)

    def next_goal(self, body):
        return Next(body)

    def globally_goal(self, body):
        return Globally(body)

    def eventually_goal(self, body):
        return Until(Top(), body)

    def until_goal(self, left, right):
        return Until(left, right)


_parser = Lark(FORMULA_GRAMMAR, parser="lalr", start=["formula", "goal"])


def _parse(text: str, start: str, what: str):
    if text is None or not text.strip():
        raise FormulaSyntaxError(f"empty {what}", text or "", 0)
    try:
        tree = _parser.parse(text, start=start)
    except UnexpectedInput as e:
        position = getattr(e, "pos_in_stream", None)
        if position is None or position < 0:
            position = len(text)
        raise FormulaSyntaxError(
            f"{what} syntax error", text, position, getattr(e, "line", None), getattr(e, "column", None)
        ) from None
    return FormulaBuilder().transform(tree)


def parse_formula(text: str) -> Formula:
    return _parse(text, "formula", "formula")


def parse_goal(text: str) -> TemporalGoal:
    """Parse a temporal goal such as ``F passed`` or ``(p U q)``."""
    return _parse(text, "goal", "goal")
