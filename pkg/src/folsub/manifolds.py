"""Closed-manifold backends and the Levi-Civita calculus on them.

Two backends cover the example catalog:

* :class:`ChartManifold` - a product of circles with a globally periodic
  metric given in closed form.  Points are chart coordinates taken modulo
  the periods; all derivatives come from second-order jets of the metric.
* :class:`InvariantFrameManifold` - a homogeneous space presented by an
  orthonormal invariant frame with constant structure coefficients.  Every
  geometric field is point-independent, so a point is just a tag and the
  connection coefficients come from the Koszul formula on the structure
  constants.

Both expose the same small protocol (``seed``, ``metric_jets``,
``gamma_jets``, ``structure_constants``), so the connection, curvature and
divergence routines below are written once.  Index conventions:
``gamma[k][i][j]`` multiplies direction i and argument j, and the curvature
components satisfy ``(R(X, Y)V)^l = R[l][k][i][j] V^k X^i Y^j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import jets
from .errors import EvaluationError
from .jets import Jet, d_of, mat_inverse, stack_values, value_of

Point = np.ndarray


@dataclass(frozen=True)
class TangentVector:
    """Components in the backend basis at a base point."""

    components: np.ndarray
    base: Point


@dataclass(frozen=True)
class ChartManifold:
    """Product of circles with a periodic closed-form metric.

    ``metric`` maps a list of coordinate jets to a nested m x m list of
    jets/constants; it must be smooth and periodic in each coordinate.
    """

    dim: int
    periods: tuple[float, ...]
    metric: Callable[[Sequence[Jet]], list]
    name: str = "chart"

    def __post_init__(self):
        if len(self.periods) != self.dim:
            raise ValueError("one period per coordinate required")
        if any(p <= 0 for p in self.periods):
            raise ValueError("periods must be positive")

    @property
    def structure_constants(self) -> np.ndarray:
        return np.zeros((self.dim, self.dim, self.dim))

    def seed(self, points, order: int = 2) -> list[Jet]:
        return jets.variables(points, order)

    def wrap(self, points) -> np.ndarray:
        return np.mod(np.asarray(points, dtype=float), np.asarray(self.periods))

    def base_point(self) -> Point:
        return np.zeros(self.dim)

    def random_points(self, rng: np.random.Generator, size=()) -> np.ndarray:
        if isinstance(size, int):
            size = (size,)
        return rng.uniform(0.0, 1.0, size + (self.dim,)) * np.asarray(self.periods)

    def metric_jets(self, coords):
        return self.metric(coords)

    def gamma_jets(self, coords, g=None):
        m = self.dim
        if g is None:
            g = self.metric(coords)
        ginv = mat_inverse(g)
        dg = [[[d_of(g[i][j], k) for k in range(m)] for j in range(m)] for i in range(m)]
        gamma = []
        for k in range(m):
            gk = []
            for i in range(m):
                row = []
                for j in range(m):
                    acc = 0.0
                    for l in range(m):
                        acc = acc + ginv[k][l] * (dg[l][j][i] + dg[l][i][j] - dg[i][j][l])
                    row.append(acc * 0.5)
                gk.append(row)
            gamma.append(gk)
        return gamma

    def volume_density(self, points) -> np.ndarray:
        coords = self.seed(points, order=0)
        g = self.metric(coords)
        batch = np.asarray(points, dtype=float).shape[:-1]
        rows = [stack_values(row, batch) for row in g]
        gval = np.stack(rows, axis=-2)
        return np.sqrt(np.linalg.det(gval))


@dataclass(frozen=True)
class InvariantFrameManifold:
    """Homogeneous backend: orthonormal invariant frame, constant structure.

    ``structure_constants[k, i, j]`` is the e_k component of [e_i, e_j].
    Only point-independent (constant-component) fields are meaningful here;
    the total Riemannian volume is supplied by the scenario.
    """

    dim: int
    structure_constants: np.ndarray
    volume: float
    name: str = "invariant"

    def __post_init__(self):
        c = np.asarray(self.structure_constants, dtype=float)
        object.__setattr__(self, "structure_constants", c)
        if c.shape != (self.dim, self.dim, self.dim):
            raise ValueError("structure constants must be (m, m, m)")
        if np.max(np.abs(c + np.swapaxes(c, 1, 2))) > 0.0:
            raise ValueError("structure constants must be antisymmetric in the lower pair")
        jac = np.einsum("lia,ajk->lijk", c, c)
        resid = jac + np.einsum("lja,aki->lijk", c, c) + np.einsum("lka,aij->lijk", c, c)
        if np.max(np.abs(resid)) > 1e-12:
            raise ValueError("structure constants violate the Jacobi identity")
        if self.volume <= 0:
            raise ValueError("volume must be positive")

    def seed(self, points, order: int = 2) -> list[Jet]:
        return jets.variables(points, order)

    def wrap(self, points) -> np.ndarray:
        return np.asarray(points, dtype=float)

    def base_point(self) -> Point:
        return np.zeros(self.dim)

    def random_points(self, rng: np.random.Generator, size=()) -> np.ndarray:
        if isinstance(size, int):
            size = (size,)
        return np.zeros(size + (self.dim,))

    def metric_jets(self, coords):
        return jets.mat_identity(self.dim)

    def gamma_jets(self, coords, g=None):
        m = self.dim
        c = self.structure_constants
        # Koszul on an orthonormal invariant frame, indices lowered trivially.
        return [
            [[0.5 * (c[k, i, j] - c[i, j, k] + c[j, k, i]) for j in range(m)] for i in range(m)]
            for k in range(m)
        ]

    def volume_density(self, points) -> np.ndarray:
        return np.ones(np.asarray(points, dtype=float).shape[:-1])


Manifold = ChartManifold | InvariantFrameManifold


# -- connection-level helpers over component lists ---------------------------


def nabla_dir(manifold, gamma, comps, i: int):
    """Covariant derivative of a vector field in frame direction i."""
    m = manifold.dim
    return [
        d_of(comps[k], i) + sum(gamma[k][i][j] * comps[j] for j in range(m)) for k in range(m)
    ]


def nabla(manifold, gamma, Xc, Wc):
    """Covariant derivative of the field W along the vector X (components)."""
    m = manifold.dim
    out = [0.0] * m
    for i in range(m):
        Di = nabla_dir(manifold, gamma, Wc, i)
        out = [out[k] + Xc[i] * Di[k] for k in range(m)]
    return out


def lie_bracket(manifold, Xc, Yc):
    """[X, Y] components, including the anholonomic frame term."""
    m = manifold.dim
    c = manifold.structure_constants
    out = []
    for k in range(m):
        acc = 0.0
        for i in range(m):
            acc = acc + Xc[i] * d_of(Yc[k], i) - Yc[i] * d_of(Xc[k], i)
        for i in range(m):
            for j in range(m):
                cij = c[k, i, j]
                if cij != 0.0:
                    acc = acc + cij * Xc[i] * Yc[j]
        out.append(acc)
    return out


def riemann_jets(manifold, coords, gamma=None):
    """Curvature components R[l][k][i][j] at the seeded coordinates."""
    m = manifold.dim
    if gamma is None:
        gamma = manifold.gamma_jets(coords)
    c = manifold.structure_constants
    R = []
    for l in range(m):
        Rl = []
        for k in range(m):
            Rlk = []
            for i in range(m):
                row = []
                for j in range(m):
                    acc = d_of(gamma[l][j][k], i) - d_of(gamma[l][i][k], j)
                    for a in range(m):
                        acc = acc + gamma[a][j][k] * gamma[l][i][a] - gamma[a][i][k] * gamma[l][j][a]
                        cij = c[a, i, j]
                        if cij != 0.0:
                            acc = acc - cij * gamma[l][a][k]
                    row.append(acc)
                Rlk.append(row)
            Rl.append(Rlk)
        R.append(Rl)
    return R


def divergence_jets(manifold, coords, gamma, Xc):
    """Full divergence: trace of the covariant derivative of X."""
    m = manifold.dim
    acc = 0.0
    for k in range(m):
        acc = acc + nabla_dir(manifold, gamma, Xc, k)[k]
    return acc


def coordinate_field(i: int, m: int):
    return lambda coords: [1.0 if k == i else 0.0 for k in range(m)]


def constant_field(comps):
    vals = [float(c) for c in np.asarray(comps, dtype=float)]
    return lambda coords: list(vals)


# -- public operations --------------------------------------------------------


def metric_at(manifold, p: Point) -> np.ndarray:
    """Metric matrix at p; symmetric positive definite by contract."""
    p = np.asarray(p, dtype=float)
    coords = manifold.seed(p, order=0)
    g = manifold.metric_jets(coords)
    m = manifold.dim
    out = np.empty(p.shape[:-1] + (m, m))
    for i in range(m):
        for j in range(m):
            v = np.asarray(value_of(g[i][j]), dtype=float)
            if not np.all(np.isfinite(v)):
                raise EvaluationError(f"metric coefficient g[{i}][{j}] is non-finite at {p!r}")
            out[..., i, j] = v
    return out


def christoffel(manifold, p: Point) -> np.ndarray:
    """Connection coefficients gamma[k, i, j] at p."""
    p = np.asarray(p, dtype=float)
    coords = manifold.seed(p, order=1)
    gamma = manifold.gamma_jets(coords)
    m = manifold.dim
    out = np.empty(p.shape[:-1] + (m, m, m))
    for k in range(m):
        for i in range(m):
            for j in range(m):
                out[..., k, i, j] = value_of(gamma[k][i][j])
    return out


def covariant_derivative(manifold, X_field, Y_field, p: Point) -> TangentVector:
    """(nabla_X Y) at p for field evaluators X, Y."""
    p = np.asarray(p, dtype=float)
    coords = manifold.seed(p, order=1)
    gamma = manifold.gamma_jets(coords)
    comps = nabla(manifold, gamma, X_field(coords), Y_field(coords))
    return TangentVector(stack_values(comps, p.shape[:-1]), p)


def riemann_tensor(manifold, p: Point) -> np.ndarray:
    """Curvature components R[l, k, i, j] at p."""
    p = np.asarray(p, dtype=float)
    coords = manifold.seed(p, order=2)
    R = riemann_jets(manifold, coords)
    m = manifold.dim
    out = np.empty(p.shape[:-1] + (m, m, m, m))
    for l in range(m):
        for k in range(m):
            for i in range(m):
                for j in range(m):
                    out[..., l, k, i, j] = value_of(R[l][k][i][j])
    return out


def _components(v, p) -> np.ndarray:
    if isinstance(v, TangentVector):
        return np.asarray(v.components, dtype=float)
    return np.asarray(v, dtype=float)


def riemann(manifold, X, Y, V, p: Point) -> TangentVector:
    """R(X, Y)V at p for pointwise argument vectors."""
    p = np.asarray(p, dtype=float)
    R = riemann_tensor(manifold, p)
    comps = np.einsum(
        "...lkij,...k,...i,...j->...l", R, _components(V, p), _components(X, p), _components(Y, p)
    )
    return TangentVector(comps, p)


def divergence(manifold, X_field, p: Point):
    """Full divergence of the field X at p (trace of nabla X)."""
    p = np.asarray(p, dtype=float)
    coords = manifold.seed(p, order=1)
    gamma = manifold.gamma_jets(coords)
    return value_of(divergence_jets(manifold, coords, gamma, X_field(coords)))
