"""Meromorphically continued lattice sums for the square lattice.

Provides the Epstein zeta Z0, the moment sums C_n and S_{p,q}, the
solid-harmonic moments, pole bookkeeping, and the closed-form Hadamard
finite-part integral of a polynomial over a ball. All continued sums have
simple poles on nu = 2 + 2k only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence, Union

from .errors import AtPole, ConvergenceFailure
from .specfun import (bessel_k, chebyshev_even_deriv_at_zero, dirichlet_beta,
                      gamma, pochhammer, riemann_zeta)

_POLE_TOL = 1e-9
_SERIES_INDEX_CAP = 40
_SERIES_RTOL = 1e-17


@dataclass(frozen=True)
class InteractionExponent:
    """Real interaction exponent with pole bookkeeping.

    ``nearest_pole`` is set iff nu lies within 1e-9 of some 2 + 2k, k >= 0,
    the pole locations of the continued moment sums in two dimensions.
    """

    nu: float
    nearest_pole: Optional[float] = None


ExponentLike = Union[float, InteractionExponent]


def make_exponent(nu: float) -> InteractionExponent:
    k = round((nu - 2.0) / 2.0)
    if k >= 0 and abs(nu - (2.0 + 2.0 * k)) <= _POLE_TOL:
        return InteractionExponent(float(nu), 2.0 + 2.0 * k)
    return InteractionExponent(float(nu), None)


def as_exponent(nu: ExponentLike) -> InteractionExponent:
    if isinstance(nu, InteractionExponent):
        return nu
    return make_exponent(float(nu))


@dataclass(frozen=True)
class MomentSum:
    """Continued value of a lattice moment sum Sum' z1^{2p} z2^{2q} / |z|^{nu+2p+2q}."""

    p: int
    q: int
    nu: float
    value: float
    abs_error_bound: float


def _require_off_pole(nu: InteractionExponent) -> float:
    if abs(nu.nu - 2.0) <= _POLE_TOL:
        raise AtPole(f"continued sum has a simple pole at nu = 2 (nu = {nu.nu:g})")
    return nu.nu


def epstein_z0_square(nu: ExponentLike) -> MomentSum:
    """Epstein zeta of the square lattice: Z0(nu) = 4 zeta(nu/2) beta(nu/2)."""
    v = _require_off_pole(as_exponent(nu))
    z = riemann_zeta(v / 2.0)
    b = dirichlet_beta(v / 2.0)
    val = 4.0 * z.value * b.value
    err = 4.0 * (abs(z.value) * b.abs_error_bound + abs(b.value) * z.abs_error_bound)
    return MomentSum(0, 0, v, val, err)


def _zeta_deriv_neg_even(j: int) -> float:
    """zeta'(-2j) = (-1)^j (2j)! zeta(2j+1) / (2 (2pi)^{2j}) for j >= 1."""
    z = riemann_zeta(2.0 * j + 1.0).value
    return ((-1.0) ** j * math.factorial(2 * j) * z
            / (2.0 * (2.0 * math.pi) ** (2 * j)))


def _cn_prefactor(n: int, nu: float) -> float:
    """2 sqrt(pi) Gamma(nu/2 + n - 1/2) zeta(nu - 1) / Gamma(nu/2 + n).

    At nu = 1 - 2(m + n) (odd, nonpositive for the relevant m >= 0) the
    Gamma factor has a simple pole and zeta(nu - 1) a trivial zero; the
    product is continued by its finite limit using zeta'(-2(m+n)).
    """
    a = nu / 2.0 + n - 0.5
    b = nu / 2.0 + n
    if a <= 0.25 and abs(a - round(a)) <= 1e-10:
        m = int(round(-a))
        j = m + n
        limit = ((-1.0) ** m / math.factorial(m)) * 2.0 * _zeta_deriv_neg_even(j)
        return 2.0 * math.sqrt(math.pi) * limit / gamma(b).value
    return (2.0 * math.sqrt(math.pi) * gamma(a).value
            * riemann_zeta(nu - 1.0).value / gamma(b).value)


@lru_cache(maxsize=8192)
def _c_n_value(n: int, nu: float) -> tuple[float, float]:
    """(value, error bound) of C_n(nu) via the Bessel double series."""
    pref = _cn_prefactor(n, nu)
    half = (nu - 1.0) / 2.0
    series = 0.0
    for z1 in range(1, _SERIES_INDEX_CAP + 1):
        row_head = None
        converged = False
        for z2 in range(1, _SERIES_INDEX_CAP // z1 + 1):
            k = bessel_k(abs(half + n), 2.0 * math.pi * z1 * z2).value
            term = (z2 / z1) ** half * (z1 * z2 * math.pi) ** n * k
            if row_head is None:
                row_head = term
            series += term
            if abs(term) <= _SERIES_RTOL * max(abs(series), abs(pref), 1e-300):
                converged = True
                break
        if not converged:
            raise ConvergenceFailure(
                f"C_{n}({nu:g}) Bessel series hit the index cap")
        if abs(row_head) <= _SERIES_RTOL * max(abs(series), abs(pref), 1e-300):
            break
    else:
        raise ConvergenceFailure(f"C_{n}({nu:g}) Bessel series hit the index cap")
    scale = 8.0 * math.pi ** (nu / 2.0) / gamma(nu / 2.0 + n).value
    value = pref + scale * series
    return value, abs(value) * 1e-12 + 1e-300


def c_n(n: int, nu: ExponentLike) -> MomentSum:
    """C_n(nu) = continued Sum' z1^{2n} / |z|^{nu + 2n} over Z^2, n >= 1."""
    if n < 1:
        raise ValueError("c_n requires n >= 1; use epstein_z0_square for n = 0")
    v = _require_off_pole(as_exponent(nu))
    value, err = _c_n_value(n, v)
    return MomentSum(n, 0, v, value, err)


def _moment_c(n: int, nu: float) -> float:
    """C_n with the C_0 := Z0 convention."""
    if n == 0:
        return epstein_z0_square(nu).value
    return _c_n_value(n, nu)[0]


def s_pq(p: int, q: int, nu: ExponentLike) -> MomentSum:
    """Continued Sum' z1^{2p} z2^{2q} / |z|^{nu + 2p + 2q} over Z^2.

    Reduces z2^{2q} = (|z|^2 - z1^2)^q binomially onto the C_n family.
    """
    v = _require_off_pole(as_exponent(nu))
    total = math.fsum(
        math.comb(q, r) * (-1.0) ** r * _moment_c(p + r, v)
        for r in range(q + 1)
    )
    return MomentSum(p, q, v, total, abs(total) * 1e-11 + 1e-300)


def solid_harmonic_moment(m: int, nu: ExponentLike) -> MomentSum:
    """Continued Sum' A_{2m}(z) / |z|^{nu + 2m} with A_k(z) = Re((z1 + i z2)^k).

    Expands A_{2m} on the unit circle as T_{2m}(cos phi) and Taylor-expands
    the Chebyshev polynomial at zero, so the value is
    sum_{k=0}^{m} T_{2m}^{(2k)}(0) / (2k)! * C_k(nu) with C_0 := Z0.
    """
    v = _require_off_pole(as_exponent(nu))
    total = math.fsum(
        chebyshev_even_deriv_at_zero(m, k) / math.factorial(2 * k)
        * _moment_c(k, v)
        for k in range(m + 1)
    )
    return MomentSum(m, 0, v, total, abs(total) * 1e-11 + 1e-300)


def hadamard_poly_ball(delta: float, laplacian_values: Sequence[float],
                       nu: ExponentLike) -> float:
    """Finite-part integral of a polynomial P over the ball B_delta in 2D.

    ``laplacian_values[k]`` holds (Laplacian^k P)(0) for k = 0..m. The value
    is the meromorphic continuation in nu of the ordinary integral
    int_{B_delta} P(z) / |z|^nu dz, with simple poles at nu = 2 + 2k:

        -sum_k 2 pi (1/2)_k / ((2k)! k!) * delta^{2+2k-nu} / (nu - (2+2k))
              * (Laplacian^k P)(0)
    """
    if delta <= 0.0:
        raise ValueError("delta must be positive")
    v = as_exponent(nu).nu
    terms = []
    for k, lap in enumerate(laplacian_values):
        denom = v - (2.0 + 2.0 * k)
        if abs(denom) <= _POLE_TOL:
            raise AtPole(f"finite-part integral pole at nu = {2 + 2 * k}")
        terms.append(
            2.0 * math.pi * pochhammer(0.5, k)
            / (math.factorial(2 * k) * math.factorial(k))
            * delta ** (2.0 + 2.0 * k - v) / denom * lap
        )
    return -math.fsum(terms)
