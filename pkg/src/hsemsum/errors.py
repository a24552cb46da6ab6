"""Exception hierarchy shared across the package.

All domain failures derive from :class:`HsemError` so the CLI can map them
to a single exit code.
"""


class HsemError(Exception):
    """Base class for all domain errors raised by this package."""


class SingularBasis(HsemError):
    """Lattice basis determinant is (numerically) zero."""


class BallTooLarge(HsemError):
    """Requested ball enumeration exceeds the configured point cap."""


class PoleAtNonpositiveInteger(HsemError):
    """Gamma function evaluated at a nonpositive integer."""


class PoleAtOne(HsemError):
    """Riemann zeta evaluated at its pole s = 1."""


class DomainError(HsemError):
    """Argument outside the supported domain of a special function."""


class InvalidB(HsemError):
    """Kummer M with second parameter a nonpositive integer."""


class ConvergenceFailure(HsemError):
    """A series failed to reach tolerance within its term cap."""


class AtPole(HsemError):
    """Continued lattice sum requested at (or too close to) a pole."""


class OrderTooHigh(HsemError):
    """Requested expansion or derivative order above the supported cap."""


class OrderTooLow(HsemError):
    """Requested order below the absolutely convergent range."""


class InsufficientSmoothness(HsemError):
    """Field does not supply derivatives of the order an operator needs."""


class EpsilonTooLarge(HsemError):
    """SEM regularisation radius not smaller than the lattice spacing."""


class AtGammaPole(HsemError):
    """Closed-form Hadamard integral at a pole of Gamma(1 - nu/2)."""


class NotConvergent(HsemError):
    """Brute-force series requested outside its convergent regime."""
