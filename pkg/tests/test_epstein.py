"""Continued lattice moment sums against direct series and closed forms."""

import math

import pytest

from hsemsum import (InteractionExponent, as_exponent, brute_force_moment,
                     c_n, epstein_z0_square, hadamard_poly_ball, make_exponent,
                     s_pq, solid_harmonic_moment)
from hsemsum.errors import AtPole
from hsemsum.specfun import dirichlet_beta, riemann_zeta


def test_exponent_pole_bookkeeping():
    assert make_exponent(3.0).nearest_pole is None
    assert make_exponent(2.0).nearest_pole == 2.0
    assert make_exponent(6.0 + 5e-10).nearest_pole == 6.0
    assert make_exponent(2.001).nearest_pole is None
    assert make_exponent(0.0).nearest_pole is None  # poles start at 2
    ex = InteractionExponent(4.5)
    assert as_exponent(ex) is ex
    assert as_exponent(4.5).nu == 4.5


def test_z0_factorization():
    for nu in (3.0, 4.0, 5.0, 2.001):
        expected = 4.0 * riemann_zeta(nu / 2.0).value * dirichlet_beta(nu / 2.0).value
        assert epstein_z0_square(nu).value == pytest.approx(expected,
                                                            rel=1e-15)
    with pytest.raises(AtPole):
        epstein_z0_square(2.0)


def test_z0_against_direct_series():
    direct = brute_force_moment(0, 0, 4.0, 800.0)
    closed = epstein_z0_square(4.0).value
    assert abs(closed - direct.value) < direct.tail_bound + 1e-12


def test_c1_is_half_z0():
    for nu in (1.0, 1.5, 2.001, 3.0, 4.5, 7.0):
        assert c_n(1, nu).value == pytest.approx(
            epstein_z0_square(nu).value / 2.0, rel=1e-11)
    with pytest.raises(ValueError):
        c_n(0, 5.0)
    with pytest.raises(AtPole):
        c_n(1, 2.0)


def test_s_pq_against_direct_series():
    # absolutely convergent regime: the continued value must match the
    # truncated Dirichlet series within its certified tail bound
    for nu, radius in ((5.0, 800.0), (6.5, 120.0)):
        for p in range(4):
            for q in range(4 - p):
                direct = brute_force_moment(p, q, nu, radius)
                cont = s_pq(p, q, nu).value
                assert abs(cont - direct.value) < 1e-8


def test_s_pq_symmetry():
    for nu in (1.5, 2.001, 3.0, 4.5):
        for p in range(5):
            for q in range(5 - p):
                a = s_pq(p, q, nu).value
                b = s_pq(q, p, nu).value
                assert a == pytest.approx(b, rel=1e-11)


def test_solid_harmonic_moment():
    # m = 1: Sum' (z1^2 - z2^2)/|z|^{nu+2} vanishes by x <-> y symmetry
    for nu in (1.5, 3.0, 4.5, 7.0):
        z0 = abs(epstein_z0_square(nu).value)
        assert abs(solid_harmonic_moment(1, nu).value) < 1e-11 * z0
    # m = 0 reduces to Z0 itself
    assert solid_harmonic_moment(0, 3.0).value == pytest.approx(
        epstein_z0_square(3.0).value, rel=1e-15)


def test_c_n_continuity_at_exceptional_prefactor_points():
    # at nu in {1, 3} the prefactor is a Gamma-pole times a zeta trivial
    # zero; the limit branch must connect continuously to nearby values
    for n in (1, 2, 3):
        for nu0 in (1.0, 3.0):
            mid = c_n(n, nu0).value
            lo = c_n(n, nu0 - 1e-7).value
            hi = c_n(n, nu0 + 1e-7).value
            assert mid == pytest.approx((lo + hi) / 2.0, rel=1e-6, abs=1e-9)


def test_hadamard_poly_ball_constant():
    # P = 1: finite-part integral of |z|^{-nu} over B_delta is the ordinary
    # integral 2 pi delta^{2-nu}/(2-nu) whenever nu < 2
    for nu, delta in ((1.0, 0.5), (0.5, 2.0)):
        expected = 2.0 * math.pi * delta ** (2.0 - nu) / (2.0 - nu)
        assert hadamard_poly_ball(delta, [1.0], nu) == pytest.approx(
            expected, rel=1e-14)
    # continuation flips sign of the k = 0 term for nu > 2
    assert hadamard_poly_ball(1.0, [1.0], 4.0) == pytest.approx(
        -2.0 * math.pi / 2.0, rel=1e-14)


def test_hadamard_poly_ball_laplacian_term():
    # P with (Laplacian P)(0) = L contributes
    # -2 pi (1/2) / (2! 1!) delta^{4-nu} / (nu - 4) * L
    delta, nu, lap = 1.5, 1.0, 3.0
    expected = (2.0 * math.pi * delta ** (2.0 - nu) / (2.0 - nu)
                - 2.0 * math.pi * 0.5 / 2.0 * delta ** (4.0 - nu)
                / (nu - 4.0) * lap)
    assert hadamard_poly_ball(delta, [1.0, lap], nu) == pytest.approx(
        expected, rel=1e-14)


def test_hadamard_poly_ball_errors():
    with pytest.raises(ValueError):
        hadamard_poly_ball(0.0, [1.0], 1.0)
    with pytest.raises(AtPole):
        hadamard_poly_ball(1.0, [1.0], 2.0)
    with pytest.raises(AtPole):
        hadamard_poly_ball(1.0, [1.0, 1.0], 4.0)
