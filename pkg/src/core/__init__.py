from core.builder import SomasBuilder
from core.computations import (
    communication_inputs,
    messages_at,
    out_reachable,
    prescribed_action,
    restricted_graph,
    restricted_successors,
    star_computation,
)
from core.errors import (
    ConfigError,
    FormulaSyntaxError,
    GuardIncomplete,
    GuardTypeError,
    InputError,
    MissingAtomHook,
    ModelFormatError,
    SizeLimitExceeded,
    SomasError,
    UnboundNameError,
)
from core.guards import Guard, evaluate_guard, parse_guard, render_guard
from core.somas import Cgs, Lasso, LocalRule, Message, Somas
from core.validation import Violation, validate

__all__ = [
    "Cgs",
    "ConfigError",
    "FormulaSyntaxError",
    "Guard",
    "GuardIncomplete",
    "GuardTypeError",
    "InputError",
    "Lasso",
    "LocalRule",
    "Message",
    "MissingAtomHook",
    "ModelFormatError",
    "SizeLimitExceeded",
    "Somas",
    "SomasBuilder",
    "SomasError",
    "UnboundNameError",
    "Violation",
    "communication_inputs",
    "evaluate_guard",
    "messages_at",
    "out_reachable",
    "parse_guard",
    "prescribed_action",
    "render_guard",
    "restricted_graph",
    "restricted_successors",
    "star_computation",
    "validate",
]
