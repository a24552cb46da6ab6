"""Brute-force reference sums: values, tail bounds, Bernoulli function."""

import math
import random

import pytest

from hsemsum import (ConstantField, GaussianField, bernoulli_eval,
                     brute_force_moment, brute_force_operator,
                     brute_force_sum, epstein_z0_square)
from hsemsum.errors import BallTooLarge, NotConvergent, OrderTooLow
from hsemsum.oracle import gaussian_tail_bound


def test_narrow_gaussian_single_term_dominance():
    # lambda = 0.1: only y = (0, 0) contributes above 1e-40, so the sum is
    # g(0) / |(5,5)|^nu up to that dust
    result = brute_force_sum(2.001, GaussianField(0.1), (5.0, 5.0), 1e-12)
    expected = 50.0 ** (-2.001 / 2.0)
    assert result.value == pytest.approx(expected, abs=1e-14)


def test_zero_field_sums_to_zero():
    result = brute_force_sum(2.5, ConstantField(0.0), (1.0, 0.0), 1e-10,
                             lam=1.0)
    assert result.value == 0.0


def test_interaction_free_sum_factorizes():
    # nu = 0: Sum' e^{-|y|^2/4} equals the squared 1D theta sum minus the
    # excluded origin term
    result = brute_force_sum(0.0, GaussianField(2.0), (0.0, 0.0), 1e-13)
    one_dim = math.fsum(math.exp(-n * n / 4.0) for n in range(-60, 61))
    assert result.value == pytest.approx(one_dim ** 2 - 1.0, abs=1e-12)


def test_tail_bound_soundness_randomized():
    rng = random.Random(20260823)
    for _ in range(20):
        lam = rng.uniform(0.5, 3.0)
        x = (float(rng.randint(-3, 3)), float(rng.randint(-3, 3)))
        nu = rng.uniform(-1.0, 6.0)
        fld = GaussianField(lam)
        coarse = brute_force_sum(nu, fld, x, 1e-6)
        fine = brute_force_sum(nu, fld, x, 1e-13)
        assert abs(coarse.value - fine.value) <= coarse.tail_bound
        assert coarse.tail_bound >= 0.0
        assert fine.truncation_radius >= coarse.truncation_radius


def test_tail_bound_monotone_in_radius():
    for nu in (-1.0, 0.0, 3.0):
        bounds = [gaussian_tail_bound(r, 2.0, 1.0, nu)
                  for r in (12.0, 16.0, 24.0, 40.0)]
        assert all(a > b for a, b in zip(bounds, bounds[1:]))


def test_brute_force_sum_guards():
    with pytest.raises(ValueError):
        brute_force_sum(2.0, GaussianField(1.0), (0.0, 0.0), 0.0)
    with pytest.raises(ValueError):
        brute_force_sum(2.0, ConstantField(1.0), (0.0, 0.0), 1e-8)
    with pytest.raises(BallTooLarge):
        brute_force_sum(2.0, GaussianField(3000.0), (0.0, 0.0), 1e-10)


def test_moment_symmetry_exact():
    a = brute_force_moment(2, 1, 5.0, 80.0)
    b = brute_force_moment(1, 2, 5.0, 80.0)
    assert a.value == b.value


def test_moment_guards():
    with pytest.raises(NotConvergent):
        brute_force_moment(0, 0, 2.4, 100.0)
    with pytest.raises(ValueError):
        brute_force_moment(0, 0, 5.0, 30.0)


def test_operator_order_zero_is_weighted_moment():
    fld = GaussianField(3.0)
    x = (1.0, 2.0)
    direct = brute_force_operator(0, 6.0, fld, x, 100.0)
    moment = brute_force_moment(0, 0, 6.0, 100.0)
    assert direct == pytest.approx(moment.value * fld.value(x), rel=1e-14)


def test_operator_constant_field_ignores_order():
    fld = ConstantField(1.0)
    values = [brute_force_operator(ell, 12.0, fld, (0.0, 0.0), 80.0)
              for ell in (0, 1, 3)]
    assert values[0] == values[1] == values[2]
    assert values[0] == pytest.approx(epstein_z0_square(12.0).value, rel=1e-10)


def test_operator_convergence_guard():
    with pytest.raises(NotConvergent):
        brute_force_operator(3, 8.0, GaussianField(2.0), (0.0, 0.0), 100.0)


def test_bernoulli_max_norm_value():
    # at the lattice point the series is Z0(2(ell+1)) / (2 pi)^{2(ell+1)}
    got = bernoulli_eval(1, (0.0, 0.0)).value
    expected = epstein_z0_square(4.0).value / (2.0 * math.pi) ** 4
    assert got == pytest.approx(expected, abs=1e-6)
    # the lattice point is the maximum in magnitude
    off = bernoulli_eval(1, (0.5, 0.5)).value
    assert abs(off) < abs(got)


def test_bernoulli_periodic_and_even():
    a = bernoulli_eval(2, (0.3, 0.7))
    b = bernoulli_eval(2, (1.3, 0.7))
    c = bernoulli_eval(2, (-0.3, -0.7))
    assert a.value == pytest.approx(b.value, abs=1e-13)
    assert a.value == c.value  # evenness is exact: same cosine arguments


def test_bernoulli_order_guard():
    with pytest.raises(OrderTooLow):
        bernoulli_eval(0, (0.25, 0.25))
