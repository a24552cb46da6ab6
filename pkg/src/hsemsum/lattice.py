"""Two-dimensional lattices: basis, dual, metric invariants, ball enumeration."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BallTooLarge, SingularBasis

_DET_THRESHOLD = 1e-12
_DEFAULT_POINT_CAP = 50_000_000


@dataclass(frozen=True)
class Lattice2:
    """A full-rank lattice in R^2.

    ``basis`` columns generate the lattice; ``dual_basis`` columns generate
    the reciprocal lattice (``dual_basis.T @ basis == I``). All values are
    immutable after construction.
    """

    basis: np.ndarray
    covolume: float
    dual_basis: np.ndarray
    min_dist: float
    dual_min_dist: float
    kissing_count: int


def _gauss_reduce(b1: np.ndarray, b2: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Lagrange-Gauss reduction of a 2D basis; returns (shortest, other)."""
    b1, b2 = b1.astype(float).copy(), b2.astype(float).copy()
    while True:
        if b1 @ b1 > b2 @ b2:
            b1, b2 = b2, b1
        mu = round(float(b1 @ b2) / float(b1 @ b1))
        if mu == 0:
            return b1, b2
        b2 = b2 - mu * b1


def _shortest_norm(basis: np.ndarray) -> float:
    b1, b2 = _gauss_reduce(basis[:, 0], basis[:, 1])
    best = math.inf
    for i in (-1, 0, 1):
        for j in (-1, 0, 1):
            if i == 0 and j == 0:
                continue
            v = i * b1 + j * b2
            best = min(best, float(np.hypot(v[0], v[1])))
    return best


def make_lattice(basis) -> Lattice2:
    """Build a :class:`Lattice2` from a 2x2 basis matrix (columns generate).

    Raises :class:`SingularBasis` if ``|det|`` falls below 1e-12.
    """
    m = np.asarray(basis, dtype=float).reshape(2, 2)
    det = float(np.linalg.det(m))
    if abs(det) < _DET_THRESHOLD:
        raise SingularBasis(f"basis determinant {det:g} below threshold")
    dual = np.linalg.inv(m).T
    min_dist = _shortest_norm(m)
    dual_min = _shortest_norm(dual)

    # count dual vectors of minimal norm by exhaustive enumeration
    dual_lat_stub = Lattice2(dual.copy(), abs(1.0 / det), m.copy(), dual_min,
                             min_dist, 0)
    pts = enumerate_ball(dual_lat_stub, dual_min * (1.0 + 1e-9))
    norms = np.hypot(pts[:, 0], pts[:, 1])
    kissing = int(np.count_nonzero(np.abs(norms - dual_min) <= 1e-9 * dual_min))

    m.setflags(write=False)
    dual.setflags(write=False)
    return Lattice2(m, abs(det), dual, min_dist, dual_min, kissing)


def dual_lattice(lat: Lattice2) -> Lattice2:
    """The reciprocal lattice as a Lattice2 in its own right."""
    return make_lattice(lat.dual_basis)


def enumerate_ball(lat: Lattice2, radius: float,
                   max_points: int = _DEFAULT_POINT_CAP) -> np.ndarray:
    """All lattice points with |z| <= radius, origin included.

    Returns an (N, 2) array ordered lexicographically by the integer
    coordinates, so results are reproducible. Raises :class:`BallTooLarge`
    if the bounding box would exceed ``max_points`` candidates.
    """
    if radius <= 0:
        raise ValueError("radius must be positive")
    inv = np.linalg.inv(lat.basis)
    # |n_i| <= radius * ||row_i(M^-1)|| bounds the integer coordinates
    row_norms = np.hypot(inv[:, 0], inv[:, 1])
    n1 = int(math.floor(radius * row_norms[0] + 1e-12))
    n2 = int(math.floor(radius * row_norms[1] + 1e-12))
    count = (2 * n1 + 1) * (2 * n2 + 1)
    if count > max_points:
        raise BallTooLarge(f"{count} candidate points exceed cap {max_points}")
    i = np.arange(-n1, n1 + 1)
    j = np.arange(-n2, n2 + 1)
    ii, jj = np.meshgrid(i, j, indexing="ij")
    coords = np.stack([ii.ravel(), jj.ravel()], axis=1)  # lexicographic
    pts = coords @ lat.basis.T
    mask = pts[:, 0] ** 2 + pts[:, 1] ** 2 <= radius * radius
    return pts[mask]


#: the integer lattice Z^2, used pervasively by the oracle module
Z2 = make_lattice(np.eye(2))
