"""Local expansion operator for singular lattice sums.

Assembles the differential operator whose coefficients are continued lattice
moment sums, applies it to smooth fields, evaluates the closed-form
finite-part integral of a Gaussian, and combines both into the O(1)
approximation of the singular sum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from typing import Dict, Tuple

import numpy as np

from .epstein import (ExponentLike, InteractionExponent, as_exponent,
                      epstein_z0_square, hadamard_poly_ball, s_pq,
                      solid_harmonic_moment)
from .errors import (AtGammaPole, AtPole, ConvergenceFailure, EpsilonTooLarge,
                     InsufficientSmoothness, OrderTooHigh)
from .specfun import gamma, kummer_m, pochhammer, zeta_near_one_tail

_MAX_ELL = 12
_POLE_TOL = 1e-9


# ---------------------------------------------------------------------------
# Smooth fields

class SmoothField:
    """Evaluable field with mixed partial derivatives up to ``max_order``."""

    max_order: int = 0

    def value(self, x) -> float:
        return self.partial(0, 0, x)

    def partial(self, a: int, b: int, x) -> float:
        raise NotImplementedError

    def values(self, pts: np.ndarray) -> np.ndarray:
        """Vectorized ``value`` over an (N, 2) array of points."""
        return np.array([self.value(p) for p in pts])


def _hermite(n: int, t: float) -> float:
    """Physicists' Hermite polynomial H_n(t) by recurrence."""
    h0, h1 = 1.0, 2.0 * t
    if n == 0:
        return h0
    for k in range(1, n):
        h0, h1 = h1, 2.0 * t * h1 - 2.0 * k * h0
    return h1


@dataclass(frozen=True)
class GaussianField(SmoothField):
    """g(x) = exp(-|x - center|^2 / lam^2), with analytic derivatives.

    The mixed partials factor into one-dimensional Hermite polynomials:
    partial(a, b, x) = (-1/lam)^(a+b) H_a(t1) H_b(t2) exp(-t1^2 - t2^2)
    with t = (x - center) / lam.
    """

    lam: float
    center: Tuple[float, float] = (0.0, 0.0)
    max_order: int = 64

    def partial(self, a: int, b: int, x) -> float:
        t1 = (x[0] - self.center[0]) / self.lam
        t2 = (x[1] - self.center[1]) / self.lam
        return ((-1.0 / self.lam) ** (a + b) * _hermite(a, t1) * _hermite(b, t2)
                * math.exp(-(t1 * t1 + t2 * t2)))

    def values(self, pts: np.ndarray) -> np.ndarray:
        d1 = (pts[:, 0] - self.center[0]) / self.lam
        d2 = (pts[:, 1] - self.center[1]) / self.lam
        return np.exp(-(d1 * d1 + d2 * d2))


@dataclass(frozen=True)
class ConstantField(SmoothField):
    """g identically equal to ``c``; all derivatives vanish."""

    c: float = 1.0
    max_order: int = 64

    def partial(self, a: int, b: int, x) -> float:
        return self.c if a == 0 and b == 0 else 0.0

    def values(self, pts: np.ndarray) -> np.ndarray:
        return np.full(len(pts), self.c)


# ---------------------------------------------------------------------------
# Operator assembly

@dataclass(frozen=True)
class HsemOperator:
    """Local expansion operator of order ``ell`` on the lattice h * Z^2.

    ``coeffs[(p, q)]`` multiplies the even mixed partial d1^{2p} d2^{2q};
    only p + q <= ell entries are stored (odd derivatives drop out by the
    fourfold symmetry of the square lattice).
    """

    ell: int
    nu: InteractionExponent
    h: float
    coeffs: Dict[Tuple[int, int], float] = dc_field(repr=False)


def _check_order_and_poles(ell: int, nu: InteractionExponent) -> None:
    if ell < 0:
        raise ValueError("ell must be nonnegative")
    if ell > _MAX_ELL:
        raise OrderTooHigh(f"operator order {ell} above cap {_MAX_ELL}")
    for k in range(ell + 1):
        if abs(nu.nu - (2.0 + 2.0 * k)) <= _POLE_TOL:
            raise AtPole(
                f"operator coefficient pole at nu = {2 + 2 * k} (order k = {k})")


def build_operator(ell: int, nu: ExponentLike, h: float = 1.0) -> HsemOperator:
    """Assemble the operator via the binomial moment reduction.

    The order-k block of the defining sum contributes, for p + q = k,

        coeffs(p, q) = binom(2k, 2p) / (2k)! * S_{p,q}(nu - 2k) * h^{2k - nu},

    where S_{p,q} is the continued moment sum of z1^{2p} z2^{2q}. The shift
    nu -> nu - 2k and the power h^{2k - nu} come from the |z|^{2k} carried by
    the 2k-fold directional derivative.
    """
    ex = as_exponent(nu)
    _check_order_and_poles(ell, ex)
    if h <= 0.0:
        raise ValueError("h must be positive")
    coeffs: Dict[Tuple[int, int], float] = {}
    for k in range(ell + 1):
        shifted = ex.nu - 2.0 * k
        scale = h ** (2.0 * k - ex.nu) / math.factorial(2 * k)
        for p in range(k // 2 + 1):
            q = k - p
            val = scale * math.comb(2 * k, 2 * p) * s_pq(p, q, shifted).value
            coeffs[(p, q)] = val
            coeffs[(q, p)] = val
    return HsemOperator(ell, ex, float(h), coeffs)


def build_operator_solid_harmonic(ell: int, nu: ExponentLike) -> HsemOperator:
    """Assemble the h = 1 operator via the solid-harmonic decomposition.

    The 2k-th directional-derivative power expands on the circle as a cosine
    polynomial, cos^{2k} = sum_m a_{2m}^{(2k)} cos(2m .), pairing the
    harmonic moment sums with A_{2m}(nabla) Laplacian^{k-m}. Serves as an
    independent route to the same coefficient table as :func:`build_operator`.
    """
    ex = as_exponent(nu)
    _check_order_and_poles(ell, ex)
    coeffs: Dict[Tuple[int, int], float] = {}
    for k in range(ell + 1):
        for p in range(k + 1):
            coeffs[(p, k - p)] = 0.0
    for k in range(ell + 1):
        shifted = ex.nu - 2.0 * k
        for m in range(k + 1):
            if m == 0:
                a = math.comb(2 * k, k) / 4.0 ** k
            else:
                a = 2.0 * math.comb(2 * k, k - m) / 4.0 ** k
            c = a * solid_harmonic_moment(m, shifted).value / math.factorial(2 * k)
            # A_{2m}(nabla) = sum_j (-1)^j binom(2m, 2j) d1^{2(m-j)} d2^{2j}
            # Laplacian^{k-m} = sum_r binom(k-m, r) d1^{2(k-m-r)} d2^{2r}
            for j in range(m + 1):
                aj = (-1.0) ** j * math.comb(2 * m, 2 * j)
                for r in range(k - m + 1):
                    key = (m - j + k - m - r, j + r)
                    coeffs[key] += c * aj * math.comb(k - m, r)
    return HsemOperator(ell, ex, 1.0, coeffs)


def apply_operator(op: HsemOperator, fld: SmoothField, x) -> float:
    """Contract the coefficient table with the field's even partials at x."""
    if fld.max_order < 2 * op.ell:
        raise InsufficientSmoothness(
            f"field supports order {fld.max_order}, operator needs {2 * op.ell}")
    return math.fsum(c * fld.partial(2 * p, 2 * q, x)
                     for (p, q), c in op.coeffs.items())


# ---------------------------------------------------------------------------
# Near nu = 2 the constant operator coefficient and the finite-part integral
# are both O(1/(nu - 2)) with opposite signs; summing their double-precision
# values loses ~|nu - 2|^{-1} * eps absolutely. The pole parts cancel in
# closed form, so the pair is evaluated from unamplified small quantities.

_PAIR_WINDOW = 0.2

# Taylor coefficients of Gamma(1 - d) = 1 + sum_{k>=1} c_k d^k at d = 0
_GAMMA_ONE_MINUS = (
    1.0,
    0.57721566490153286061,
    0.9890559953279725554,
    0.90747907608088628902,
    0.98172808683440018734,
    0.9819950689031452021,
    0.99314911462127619315,
    0.99600176044243153397,
    0.99810569378312892198,
    0.99902526762195486779,
    0.99951565607277744107,
    0.99975659750860128703,
    0.99987827131513327573,
)

# Taylor coefficients b_k of the Dirichlet beta function at s = 1
_BETA_AT_ONE = (
    0.78539816339744830962,
    0.19290131679691242936,
    -0.077070862214667941702,
    0.01581380986760061669,
    -0.00059635894615866350246,
    -0.00068541771462760912967,
    0.00024709612368159673698,
    -0.000047021539175798856883,
    4.9111097721571057108e-6,
    7.4996917158740368151e-8,
    -1.4745016219447459755e-7,
    3.4228333298936601421e-8,
    -4.9181552241006950515e-9,
)


def _kummer_tail_rho(delta: float, t: float) -> float:
    """rho(delta, t) = sum_{k>=1} [prod_{j=1}^{k-1} (j - delta)] t^k / (k!)^2.

    Satisfies M(1 + delta, 1, -t) = exp(-t) (1 - delta * rho); all terms are
    positive for t > 0 and |delta| < 1, so no cancellation occurs.
    """
    term = t
    total = t
    for k in range(2, 500):
        term *= (k - 1.0 - delta) * t / (k * k)
        total += term
        if term <= 1e-18 * (abs(total) + 1.0):
            return total
    raise ConvergenceFailure("Kummer tail series did not converge in 500 terms")


def _pair_near_pole(nu: float, lam: float, t: float, h: float) -> float:
    """Z0(nu) h^{-nu} g + (finite-part Gaussian integral) / h^2 for nu near 2.

    With s = nu/2, delta = s - 1 (exact in floating point) and t the squared
    scaled distance |x|^2 / lam^2:

        pair = h^{-nu} e^{-t} [ (delta B - pi q) / delta + (pi + delta B) T ]

    where 4 beta(s) = pi + delta B, T = zeta(s) - 1/delta, and q collects the
    small multiplicative corrections of the integral term.
    """
    delta = nu / 2.0 - 1.0
    big_b = 0.0
    for k in range(len(_BETA_AT_ONE) - 1, 0, -1):
        big_b = 4.0 * _BETA_AT_ONE[k] + delta * big_b
    gamma_tilde = 0.0
    for k in range(len(_GAMMA_ONE_MINUS) - 1, 0, -1):
        gamma_tilde = -_GAMMA_ONE_MINUS[k] + delta * gamma_tilde
    w = math.expm1(-2.0 * delta * math.log(lam / h))
    rho = _kummer_tail_rho(delta, t)
    u1, u2, u3 = w, -delta * rho, -delta * gamma_tilde
    q = math.fsum((u1, u2, u3, u1 * u2, u1 * u3, u2 * u3, u1 * u2 * u3))
    big_k = delta * big_b - math.pi * q
    tail = zeta_near_one_tail(delta)
    return (h ** (-nu) * math.exp(-t)
            * (big_k / delta + (math.pi + delta * big_b) * tail))


# ---------------------------------------------------------------------------
# Finite-part integral of a Gaussian and the combined approximation

def hadamard_gaussian(nu: ExponentLike, lam: float, x) -> float:
    """Finite-part integral over R^2 of exp(-|y|^2/lam^2) / |x - y|^nu.

    Closed form: pi Gamma(1 - nu/2) lam^{2 - nu} M(nu/2, 1, -|x|^2/lam^2)
    with M the confluent hypergeometric function. Poles of Gamma(1 - nu/2)
    at even positive nu are rejected.
    """
    v = as_exponent(nu).nu
    half = v / 2.0
    if half >= 0.5 and abs(half - round(half)) <= _POLE_TOL:
        raise AtGammaPole(f"finite-part Gaussian integral pole at nu = {v:g}")
    if lam <= 0.0:
        raise ValueError("lam must be positive")
    z = -(x[0] * x[0] + x[1] * x[1]) / (lam * lam)
    return (math.pi * gamma(1.0 - half).value * lam ** (2.0 - v)
            * kummer_m(half, 1.0, z).value)


def sem_epsilon_operator(ell: int, nu: ExponentLike, epsilon: float,
                         h: float = 1.0) -> HsemOperator:
    """Operator variant absorbing the ball-regularized integral.

    Starts from :func:`build_operator` and subtracts, for each k <= ell, the
    finite-part ball contribution

        (2 pi / h^2) (1/2)_k / ((2k)! k!) eps^{2+2k-nu} / (nu - (2+2k))

    distributed over Laplacian^k = sum_{p+q=k} binom(k, p) d1^{2p} d2^{2q}.
    Every correction carries a positive power of eps when nu < 2, so the
    variant converges to the plain operator as eps -> 0 in that regime.
    """
    if epsilon <= 0.0:
        raise ValueError("epsilon must be positive")
    if epsilon >= h:
        raise EpsilonTooLarge(
            f"epsilon = {epsilon:g} must stay below the lattice spacing {h:g}")
    base = build_operator(ell, nu, h)
    v = base.nu.nu
    coeffs = dict(base.coeffs)
    for k in range(ell + 1):
        corr = (-(2.0 * math.pi / (h * h)) * pochhammer(0.5, k)
                / (math.factorial(2 * k) * math.factorial(k))
                * epsilon ** (2.0 + 2.0 * k - v) / (v - (2.0 + 2.0 * k)))
        for p in range(k + 1):
            q = k - p
            coeffs[(p, q)] += corr * math.comb(k, p)
    return HsemOperator(ell, base.nu, base.h, coeffs)


def evaluate_sum(op: HsemOperator, fld: GaussianField, x) -> float:
    """O(1) approximation of the primed sum using a prebuilt operator.

    Equal to apply_operator(op, fld, x) plus the finite-part Gaussian
    integral over the covolume; near nu = 2 the two O(1/(nu - 2)) leading
    contributions are combined through their analytic pole cancellation,
    which removes the otherwise dominant rounding amplification.
    """
    if fld.max_order < 2 * op.ell:
        raise InsufficientSmoothness(
            f"field supports order {fld.max_order}, operator needs {2 * op.ell}")
    v = op.nu.nu
    dx = (x[0] - fld.center[0], x[1] - fld.center[1])
    rest = math.fsum(c * fld.partial(2 * p, 2 * q, x)
                     for (p, q), c in op.coeffs.items() if (p, q) != (0, 0))
    if abs(v - 2.0) < _PAIR_WINDOW:
        t = (dx[0] * dx[0] + dx[1] * dx[1]) / (fld.lam * fld.lam)
        return rest + _pair_near_pole(v, fld.lam, t, op.h)
    head = op.coeffs[(0, 0)] * fld.partial(0, 0, x)
    return rest + head + hadamard_gaussian(op.nu, fld.lam, dx) / (op.h * op.h)


def hsem_sum(ell: int, nu: ExponentLike, fld: GaussianField, x,
             h: float = 1.0) -> float:
    """O(1) approximation of the primed lattice sum of g(y) / |y - x|^nu.

    Local operator applied to g at x plus the finite-part Gaussian integral
    divided by the covolume h^2. The point x must lie on the lattice h * Z^2
    so the excluded singular term matches the primed sum.
    """
    return evaluate_sum(build_operator(ell, nu, h), fld, x)


__all__ = [
    "SmoothField", "GaussianField", "ConstantField", "HsemOperator",
    "build_operator", "build_operator_solid_harmonic", "apply_operator",
    "hadamard_gaussian", "sem_epsilon_operator", "hsem_sum", "evaluate_sum",
    "hadamard_poly_ball", "epstein_z0_square",
]
