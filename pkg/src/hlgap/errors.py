"""Domain error types with stable machine-readable codes.

Every error raised by the library for a violated precondition derives from
``HlGapError`` and carries a ``code`` string that the CLI maps onto exit
status 1 diagnostics.
"""

from __future__ import annotations


class HlGapError(Exception):
    """Base class for all domain errors."""

    code = "domain-error"


class DimensionMismatch(HlGapError):
    code = "dimension-mismatch"


class SingularMatrix(HlGapError):
    code = "singular-matrix"


class NonBinaryInput(HlGapError):
    code = "non-binary-input"


class ZeroDiagonal(HlGapError):
    code = "zero-diagonal"


class NotVoltageGraph(HlGapError):
    code = "not-voltage-graph"


class ZeroEigenvalue(HlGapError):
    code = "zero-eigenvalue"


class NoPositiveEigenvalue(HlGapError):
    code = "no-positive-eigenvalue"


class NoNegativeEigenvalue(HlGapError):
    code = "no-negative-eigenvalue"


class DefiniteMatrix(HlGapError):
    code = "definite-matrix"


class NotAPermutation(HlGapError):
    code = "not-a-permutation"


class NotBridgeable(HlGapError):
    code = "not-bridgeable"


class ColumnConstraintViolated(HlGapError):
    code = "column-constraint-violated"


class InfeasiblePoint(HlGapError):
    """LMI certification failed at the queried (mu, eta) point."""

    code = "infeasible-point"

    def __init__(self, message: str, margins: tuple[float, ...] = ()):
        super().__init__(message)
        self.margins = margins


class SpecInvalid(HlGapError):
    code = "spec-invalid"


class NoFeasibleCandidate(HlGapError):
    code = "no-feasible-candidate"


class UnknownBuiltin(HlGapError):
    code = "unknown-builtin"


class FormatError(ValueError):
    """Malformed input file (graph/bridge JSON contract violation).

    Not a domain error: the CLI reports it with exit status 2.
    """
