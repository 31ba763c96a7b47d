"""Exception types shared across the package."""


class QtoricError(Exception):
    """Base class for errors raised by this package."""


class ValidationError(QtoricError, ValueError):
    """Input data violates a structural invariant (bad polytope, bad matrix shape, ...)."""


class CapabilityError(QtoricError, RuntimeError):
    """Request exceeds a documented resource cap (e.g. facet count, search bound)."""


class TorsionError(QtoricError, ValueError):
    """A graded quotient has torsion; the engine refuses to truncate it silently."""


class NoMonomialBasisError(QtoricError, RuntimeError):
    """No subset of monomials gives an integral basis of the quotient in some degree."""
