"""Exception hierarchy shared by all qaml modules."""


class QamlError(Exception):
    """Base class for all qaml errors."""


class InvalidBitstring(QamlError):
    pass


class QubitCountExceeded(QamlError):
    pass


class NonFiniteAngle(QamlError):
    pass


class TargetOutOfRange(QamlError):
    pass


class DuplicateTarget(QamlError):
    pass


class ArityMismatch(QamlError):
    pass


class UnknownGate(QamlError):
    pass


class OracleSizeExceeded(QamlError):
    pass


class DuplicateBasisState(QamlError):
    pass


class LengthMismatch(QamlError):
    pass


class EmptyInput(QamlError):
    pass


class NonFiniteFeature(QamlError):
    pass


class ZeroVector(QamlError):
    pass


class ParamCountMismatch(QamlError):
    pass


class NonFiniteParam(QamlError):
    pass


class QubitMismatch(QamlError):
    pass


class EmptyDataset(QamlError):
    pass


class ConfigError(QamlError):
    pass


class DatasetError(QamlError):
    pass


class ParseError(QamlError):
    """Syntax or validation error in a circuit DSL program.

    Carries a 1-based (line, column) position pointing into the source text
    and the token that triggered the error.
    """

    def __init__(self, line: int, column: int, message: str, offending_token: str = ""):
        self.line = line
        self.column = column
        self.message = message
        self.offending_token = offending_token
        super().__init__(f"line {line}, column {column}: {message}")
