"""Typed errors shared across the engine.

Every failure mode a caller can act on gets its own class so that scripts
and the command line can branch on type rather than on message text.
"""

from __future__ import annotations


class QDTError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(QDTError):
    """Operands have incompatible shapes or live on different spaces."""


class HermiticityError(QDTError):
    """A matrix that must be Hermitian is not, beyond tolerance."""


class UnitarityError(QDTError):
    """A matrix that must be unitary is not, beyond tolerance."""


class NormalizationError(QDTError):
    """A vector or coefficient row that must have unit norm does not."""


class InvariantError(QDTError):
    """A structural invariant is violated beyond tolerance.

    ``path`` locates the offending object when the violation was detected
    while validating a scenario document (JSON-path style, e.g.
    ``$.alternative_basis.vectors[1]``); it is ``None`` for violations
    raised from direct library calls.
    """

    def __init__(self, message: str, path: str | None = None):
        super().__init__(message if path is None else f"{path}: {message}")
        self.path = path
        self.detail = message


class ZeroProbabilityConditioning(QDTError):
    """Conditioning on an outcome whose probability vanishes is undefined."""


class IncompleteMeasureError(QDTError):
    """An operation requires projectors that resolve the identity."""


class ScenarioSyntaxError(QDTError):
    """Scenario text is not well-formed JSON.  Carries line and column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class SchemaError(QDTError):
    """Scenario document violates the schema.  Carries a JSON-path."""

    def __init__(self, message: str, path: str):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.detail = message
