"""Exception hierarchy shared by all slopewalk modules.

Three bases map onto the CLI exit codes: bad inputs / unmet preconditions
(exit 2), failed verification of otherwise well-formed data (exit 3), and
internal invariant breaches that signal a bug or a corrupted build (exit 4).
"""


class SlopewalkError(Exception):
    """Base class for all package errors."""


class PreconditionError(SlopewalkError):
    """An operation was called outside its documented domain."""


class VerificationFailure(SlopewalkError):
    """A check over well-formed data did not come out clean."""


class InvariantError(SlopewalkError):
    """An internal consistency guarantee was violated; this is a bug."""


# -- padic ------------------------------------------------------------------

class EmptyPolynomial(PreconditionError):
    """All polynomial coefficients are zero; no Newton polygon exists."""


# -- qseries ----------------------------------------------------------------

class NonUnitConstantTerm(PreconditionError):
    """Series inversion requires a nonzero constant term."""


class InsufficientPrecision(PreconditionError):
    """Known coefficients do not determine the requested result."""


# -- spaces -----------------------------------------------------------------

class ParityError(PreconditionError):
    """Weight/level combination admits no forms of the requested kind."""


class DependentGenerators(InvariantError):
    """Graded-ring generator monomials failed the independence check."""


class ResidualNonzero(InvariantError):
    """An operator solve left a nonzero residual past the pivot rows."""


class NoUniqueSlope(PreconditionError):
    """The characteristic polynomial has no unique root at the target slope."""


class IrrationalEigenvalue(PreconditionError):
    """The requested eigenvalue is not rational; out of supported scope."""


class RepeatedRoot(PreconditionError):
    """The Hecke polynomial has a double root; the refinement ratio is 1."""


# -- weightspace / eigencurve -----------------------------------------------

class CenterOfWeightSpace(PreconditionError):
    """The weight character (k=2, m=0) has w = 0; no valuation exists."""


class NotInBoundary(PreconditionError):
    """The weight character lies outside the boundary annulus 0 < v(w) < 3."""


class NonIntegralIndex(PreconditionError):
    """slope / v(w) is not a positive integer; inconsistent point data."""


class NotPotentiallyCrystalline(PreconditionError):
    """The twin involution is only defined on potentially crystalline points."""


# -- pingpong ---------------------------------------------------------------

class ConstraintViolated(PreconditionError):
    """A walk-construction constraint (such as 2^m - 1 > i) fails."""


# -- fixtures ---------------------------------------------------------------

class FixtureMismatch(VerificationFailure):
    """An independent oracle disagrees with a frozen fixture value."""

    def __init__(self, fixture_id: str, expected, got):
        super().__init__(f"fixture {fixture_id!r}: expected {expected!r}, recomputed {got!r}")
        self.fixture_id = fixture_id
        self.expected = expected
        self.got = got
