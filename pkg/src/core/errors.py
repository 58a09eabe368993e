from typing import Optional


class SomasError(Exception):
    """Base class for every error raised by the verifier."""


class InputError(SomasError, ValueError):
    """Unknown names, bad paths and other caller mistakes."""


class ModelFormatError(InputError):
    """A model, scenario or query file does not follow the expected format."""


class FormulaSyntaxError(InputError):
    """Raised when a formula or a guard expression cannot be parsed."""

    def __init__(self, message: str, text: str, position: Optional[int] = None,
                 line: Optional[int] = None, column: Optional[int] = None):
        self.text = text
        self.position = position
        self.line = line
        self.column = column
        where = f" at position {position}" if position is not None else ""
        super().__init__(f"{message}{where}: {text!r}")


class UnboundNameError(InputError):
    """A coalition or atom names an agent the model does not declare."""


class GuardIncomplete(SomasError):
    """No guard of an agent's action table is true at a state."""

    def __init__(self, agent: str, state: str):
        self.agent = agent
        self.state = state
        super().__init__(f"no guard of agent {agent} holds at state {state}")


class GuardTypeError(SomasError):
    """A guard compares or inspects a message payload of the wrong kind."""


class MissingAtomHook(SomasError):
    """A community atom was evaluated on a model without an atom evaluator."""


class SizeLimitExceeded(SomasError):
    """An enumeration went past its configured bound."""


class ConfigError(SomasError):
    """Invalid environment configuration."""
