"""Exception hierarchy shared across the package.

Every exception carries a stable machine-readable ``code`` so the CLI can
map failures to exit codes and error strings without string matching.
"""

from __future__ import annotations


class JacderError(Exception):
    """Base class for all domain errors raised by this package."""

    code = "error"


class ConstantInput(JacderError):
    """An operation that needs a nonconstant polynomial got a constant."""

    code = "constant_input"


class BothZero(JacderError):
    """gcd of two zero polynomials is undefined."""

    code = "both_zero"


class InconsistentSystem(JacderError):
    """An affine linear system has no solution."""

    code = "inconsistent_system"


class NotDivergenceFree(JacderError):
    """A potential was requested for a derivation with nonzero divergence."""

    code = "not_divergence_free"


class NotClosed(JacderError):
    """The polynomial is a proper composite theta(p) with deg theta >= 2."""

    code = "not_closed"


class NotInCentralizer(JacderError):
    """The derivation does not commute with the reference derivation."""

    code = "not_in_centralizer"


class NotRankTwo(JacderError):
    """A rank-2 basis decomposition was requested for a rank-1 result."""

    code = "not_rank_two"


class DivisibilityViolation(JacderError):
    """A divisibility step that the rank-2 structure guarantees failed."""

    code = "divisibility_violation"


class NotUnitEigenpair(JacderError):
    """commuting_pair_construct needs apply(D_f, g) = g exactly."""

    code = "not_unit_eigenpair"


class BoundTooSmall(JacderError):
    """The requested solver degree bound is below deg f."""

    code = "bound_too_small"


class InternalInconsistency(JacderError):
    """A cross-check that must hold by construction failed; report a bug."""

    code = "internal_inconsistency"


class ParseError(JacderError):
    """Invalid expression text; carries the 0-based offset of the failure."""

    code = "parse_error"

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.message = message
        self.position = position
