"""O(1) evaluation of singular long-range lattice sums on 2D lattices.

The singular sum Sum'_{y in Z^2} g(y) / |y - x|^nu is approximated by a
local differential operator with continued lattice-sum coefficients applied
to g at x, plus a closed-form finite-part integral. Brute-force oracles with
certified tail bounds validate every step.
"""

from .epstein import (InteractionExponent, MomentSum, as_exponent, c_n,
                      epstein_z0_square, hadamard_poly_ball, make_exponent,
                      s_pq, solid_harmonic_moment)
from .errors import HsemError
from .hsem import (ConstantField, GaussianField, HsemOperator, SmoothField,
                   apply_operator, build_operator,
                   build_operator_solid_harmonic, evaluate_sum,
                   hadamard_gaussian, hsem_sum, sem_epsilon_operator)
from .lattice import Z2, Lattice2, dual_lattice, enumerate_ball, make_lattice
from .oracle import (BernoulliEval, TailBoundedSum, bernoulli_eval,
                     brute_force_moment, brute_force_operator,
                     brute_force_sum)
from .specfun import (SpecialValue, bessel_k, chebyshev_even_deriv_at_zero,
                      dirichlet_beta, gamma, kummer_m, pizetti_p, pochhammer,
                      riemann_zeta)

__version__ = "0.1.0"

__all__ = [
    "HsemError",
    "Lattice2", "make_lattice", "dual_lattice", "enumerate_ball", "Z2",
    "SpecialValue", "gamma", "riemann_zeta", "dirichlet_beta", "bessel_k",
    "kummer_m", "pochhammer", "pizetti_p", "chebyshev_even_deriv_at_zero",
    "InteractionExponent", "MomentSum", "make_exponent", "as_exponent",
    "epstein_z0_square", "c_n", "s_pq", "solid_harmonic_moment",
    "hadamard_poly_ball",
    "SmoothField", "GaussianField", "ConstantField", "HsemOperator",
    "build_operator", "build_operator_solid_harmonic", "apply_operator",
    "evaluate_sum", "hadamard_gaussian", "sem_epsilon_operator", "hsem_sum",
    "TailBoundedSum", "BernoulliEval", "brute_force_sum",
    "brute_force_moment", "brute_force_operator", "bernoulli_eval",
    "__version__",
]
