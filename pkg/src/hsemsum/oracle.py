"""Independent brute-force references for the continued-sum machinery.

Direct singular lattice sums with certified Gaussian tail bounds, direct
Dirichlet moment series in the convergent regime, a brute-force operator
applier, and the periodic Bernoulli-function evaluator. Everything here is
deliberately simple and slow; it exists to check the O(1) pipeline.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BallTooLarge, NotConvergent, OrderTooLow
from .hsem import SmoothField
from .lattice import Z2, enumerate_ball

_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class TailBoundedSum:
    """Truncated sum with a certified upper bound on the omitted tail."""

    value: float
    truncation_radius: float
    tail_bound: float


@dataclass(frozen=True)
class BernoulliEval:
    """One evaluation of the periodic Bernoulli function of order ell."""

    ell: int
    point: tuple
    value: float
    truncation_radius: float


def _sorted_by_norm(pts: np.ndarray) -> np.ndarray:
    """Stable reorder by increasing |z| (then lexicographic) for compensated
    accumulation from small to large magnitudes."""
    norms = pts[:, 0] ** 2 + pts[:, 1] ** 2
    order = np.argsort(norms, kind="stable")
    return pts[order]


def gaussian_tail_bound(radius: float, lam: float, x_norm: float,
                        nu: float) -> float:
    """Certified bound on sum_{|y| > R} exp(-|y|^2/lam^2) / |y - x|^nu.

    Each omitted lattice point owns a unit cell inside |u| > R - sqrt(2)/2,
    and the summand at y is bounded by its radial envelope at |u| - sqrt(2)/2,
    so the sum is below 2 pi int_{R'}^inf f(s) (s + sqrt(2)/2) ds with
    R' = R - sqrt(2) and f(s) = exp(-s^2/lam^2) (s - |x|)^{-nu} for nu >= 0
    (|y - x| >= |y| - |x|). The algebraic factor is monotone on s > |x| and
    is frozen at its endpoint value; the Gaussian integral is closed-form.
    For nu < 0 the growing factor (s + |x|)^{-nu} is absorbed into half the
    Gaussian decay, which is again monotone once s > lam sqrt(-nu).
    """
    rp = radius - _SQRT2
    if nu >= 0.0:
        if rp <= x_norm:
            return math.inf
        envelope = (rp - x_norm) ** (-nu)
        a = lam
    else:
        if rp <= lam * math.sqrt(-nu) * _SQRT2:
            return math.inf
        # freeze the decreasing product (s + |x|)^{-nu} exp(-s^2/(2 lam^2))
        # at the endpoint; the remaining exp(-s^2/(2 lam^2)) half stays in
        # the closed-form integral below via the widened scale a.
        envelope = (rp + x_norm) ** (-nu) * math.exp(-rp * rp / (2.0 * lam * lam))
        a = lam * _SQRT2
    integral = (a * a / 2.0 * math.exp(-rp * rp / (a * a))
                + (_SQRT2 / 2.0) * (a * math.sqrt(math.pi) / 2.0)
                * math.erfc(rp / a))
    return 2.0 * math.pi * envelope * integral


def brute_force_sum(nu: float, fld: SmoothField, x, tol: float,
                    lam: float = None) -> TailBoundedSum:
    """Direct primed sum over Z^2 of g(y) / |y - x|^nu, tail below ``tol``.

    ``lam`` is the Gaussian width used for the tail bound; it defaults to the
    field's own ``lam`` attribute and must dominate the field's decay.
    """
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    if lam is None:
        lam = getattr(fld, "lam", None)
    if lam is None:
        raise ValueError("a Gaussian decay width is required for the tail bound")
    x = (float(x[0]), float(x[1]))
    x_norm = math.hypot(x[0], x[1])
    radius = max(3.0 * lam, lam * math.sqrt(max(-nu, 0.0)) * 2.0) + x_norm + 4.0
    while gaussian_tail_bound(radius, lam, x_norm, nu) >= tol:
        radius *= 1.3
        if radius > 1e5:
            raise BallTooLarge(f"tail bound cannot reach tol = {tol:g}")
    pts = _sorted_by_norm(enumerate_ball(Z2, radius))
    g = fld.values(pts)
    d1 = pts[:, 0] - x[0]
    d2 = pts[:, 1] - x[1]
    dist2 = d1 * d1 + d2 * d2
    keep = dist2 > 1e-18  # primed sum: drop y = x
    terms = g[keep] * dist2[keep] ** (-nu / 2.0)
    return TailBoundedSum(math.fsum(terms), radius,
                          gaussian_tail_bound(radius, lam, x_norm, nu))


def _algebraic_tail_bound(radius: float, nu: float) -> float:
    """Certified bound on sum_{|z| > R} |z|^{-nu} over Z^2 for nu > 2."""
    rp = radius - _SQRT2
    return 2.0 * math.pi * (rp ** (2.0 - nu) / (nu - 2.0)
                            + (_SQRT2 / 2.0) * rp ** (1.0 - nu) / (nu - 1.0))


def brute_force_moment(p: int, q: int, nu: float,
                       radius: float) -> TailBoundedSum:
    """Direct Sum' z1^{2p} z2^{2q} / |z|^{nu + 2p + 2q} over |z| <= radius.

    The summand is bounded by |z|^{-nu}, so the series converges absolutely
    for nu > 2; a margin of 0.5 is enforced so the tail bound stays usable.
    """
    if nu <= 2.5:
        raise NotConvergent(f"direct moment series needs nu > 2.5, got {nu:g}")
    if radius < 50.0:
        raise ValueError("radius must be at least 50")
    pts = _sorted_by_norm(enumerate_ball(Z2, radius))
    norm2 = pts[:, 0] ** 2 + pts[:, 1] ** 2
    keep = norm2 > 0
    pts, norm2 = pts[keep], norm2[keep]
    terms = (pts[:, 0] ** (2 * p) * pts[:, 1] ** (2 * q)
             * norm2 ** (-(nu + 2.0 * p + 2.0 * q) / 2.0))
    return TailBoundedSum(math.fsum(terms), radius,
                          _algebraic_tail_bound(radius, nu))


def brute_force_operator(ell: int, nu: float, fld: SmoothField, x,
                         radius: float) -> float:
    """Direct convergent-regime evaluation of the local expansion operator.

    Sums (1/(2k)!) <z, grad>^{2k} g(x) / |z|^nu over the ball for k <= ell,
    expanding the directional power binomially onto the field's partials.
    Requires nu > 2 + 2 ell + 0.5 so the largest moment still converges.
    """
    if nu <= 2.0 + 2.0 * ell + 0.5:
        raise NotConvergent(
            f"operator series needs nu > {2 + 2 * ell + 0.5:g}, got {nu:g}")
    pts = _sorted_by_norm(enumerate_ball(Z2, radius))
    norm2 = pts[:, 0] ** 2 + pts[:, 1] ** 2
    keep = norm2 > 0
    pts, norm2 = pts[keep], norm2[keep]
    inv = norm2 ** (-nu / 2.0)
    total = []
    for k in range(ell + 1):
        scale = 1.0 / math.factorial(2 * k)
        for j in range(2 * k + 1):
            partial = fld.partial(j, 2 * k - j, x)
            if partial == 0.0:
                continue
            moment = math.fsum(pts[:, 0] ** j * pts[:, 1] ** (2 * k - j) * inv)
            total.append(scale * math.comb(2 * k, j) * moment * partial)
    return math.fsum(total)


def bernoulli_eval(ell: int, y, radius: float = 200.0) -> BernoulliEval:
    """Periodic Bernoulli function of order ell at y, by its Fourier series.

    value = (-1)^{ell+1} Sum'_{|z| <= radius} cos(2 pi <z, y>) / |2 pi z|^{2(ell+1)}.
    Absolute convergence needs 2(ell + 1) > 2, hence ell >= 1.
    """
    if ell < 1:
        raise OrderTooLow("Bernoulli evaluation requires ell >= 1")
    y = (float(y[0]), float(y[1]))
    pts = _sorted_by_norm(enumerate_ball(Z2, radius))
    norm2 = pts[:, 0] ** 2 + pts[:, 1] ** 2
    keep = norm2 > 0
    pts, norm2 = pts[keep], norm2[keep]
    phase = 2.0 * math.pi * (pts[:, 0] * y[0] + pts[:, 1] * y[1])
    power = ell + 1.0
    terms = np.cos(phase) / ((2.0 * math.pi) ** 2 * norm2) ** power
    value = (-1.0) ** (ell + 1) * math.fsum(terms)
    return BernoulliEval(ell, y, value, radius)
