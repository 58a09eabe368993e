from logic.formulas import (
    And,
    CoalitionGlobally,
    CoalitionNext,
    CoalitionUntil,
    Com,
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
    coalition_names,
    com_atoms,
    eventually,
    eventually_goal,
    false,
    render_formula,
    render_goal,
    split_goal,
    subformulas,
)
from logic.parser import parse_formula, parse_goal

__all__ = [
    "And",
    "CoalitionGlobally",
    "CoalitionNext",
    "CoalitionUntil",
    "Com",
    "Formula",
    "Globally",
    "Implies",
    "Next",
    "Not",
    "Or",
    "Prop",
    "TemporalGoal",
    "Top",
    "Until",
    "coalition_names",
    "com_atoms",
    "eventually",
    "eventually_goal",
    "false",
    "parse_formula",
    "parse_goal",
    "render_formula",
    "render_goal",
    "split_goal",
    "subformulas",
]
