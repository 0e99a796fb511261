"""Catalog of closed foliated sub-Riemannian example manifolds.

Every scenario bundles a backend manifold, a distribution with orthonormal
frames, a foliation structure, analytically derived expected values with
provenance notes, a catalog of closed leaves, and property flags.  Flags are
claims: each one is re-measured numerically at construction over a sampling
grid, and a contradiction raises :class:`ConstructionError` rather than
shipping a mislabeled example.

The chart warps ship as closed-form profiles with explicit first and second
derivatives, so the expected-value fixtures are independent of the jet
machinery they are later compared against.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import jets
from .distribution import DistributionSpec, admissibility_residual
from .errors import ConstructionError
from .foliation import FoliationStructure, Geometry, integrability_residual
from .manifolds import ChartManifold, InvariantFrameManifold
from .quadrature import grid_for, total_volume

HARMONIC_TOL = 1e-9
ADMISSIBLE_TOL = 1e-8
CURV_INVARIANT_TOL = 1e-9
UMBILICAL_TOL = 1e-10
FRAME_TOL = 1e-12
INTEGRABILITY_TOL = 1e-9


@dataclass(frozen=True)
class Periodic1D:
    """Smooth 2*pi-periodic profile with closed-form first two derivatives."""

    fn: Callable
    d1: Callable
    d2: Callable

    def __call__(self, z):
        return jets.lift(z, self.fn, self.d1, self.d2)


TWO_PLUS_COS = Periodic1D(lambda z: 2.0 + np.cos(z), lambda z: -np.sin(z), lambda z: -np.cos(z))
TWO_PLUS_SIN = Periodic1D(lambda z: 2.0 + np.sin(z), lambda z: np.cos(z), lambda z: -np.sin(z))


def sine_profile(amplitude: float) -> Periodic1D:
    a = float(amplitude)
    return Periodic1D(lambda z: a * np.sin(z), lambda z: a * np.cos(z), lambda z: -a * np.sin(z))


def fourier_profile(const: float = 0.0, cos1: float = 0.0, sin1: float = 0.0) -> Periodic1D:
    """First-harmonic profile const + cos1 cos z + sin1 sin z."""
    return Periodic1D(
        lambda z: const + cos1 * np.cos(z) + sin1 * np.sin(z),
        lambda z: -cos1 * np.sin(z) + sin1 * np.cos(z),
        lambda z: -cos1 * np.cos(z) - sin1 * np.sin(z),
    )


@dataclass(frozen=True)
class LeafSpec:
    """A closed leaf: fixed transverse coordinates and leaf axes, or a volume."""

    name: str
    fixed: dict = field(default_factory=dict)
    axes: tuple = ()
    volume: float | None = None


@dataclass(frozen=True)
class ScenarioFlags:
    harmonic_perp: bool
    admissible: bool
    p_curvature_invariant: bool
    satisfies_pcurv_c: bool
    pcurv_c: float | None
    umbilical: bool


@dataclass(frozen=True)
class ExpectedValue:
    """A closed-form fixture (float or points -> array) plus its provenance."""

    value: object
    note: str


@dataclass(frozen=True)
class Scenario:
    name: str
    manifold: object
    dist: DistributionSpec
    fol: FoliationStructure
    flags: ScenarioFlags
    residuals: dict
    expected: dict
    leaves: tuple
    default_grid: tuple
    volume: float

    @property
    def n(self) -> int:
        return self.fol.n

    def leaf(self, name: str | None = None) -> LeafSpec:
        from .errors import UnsupportedLeafError

        if not self.leaves:
            raise UnsupportedLeafError(f"scenario {self.name} declares no closed leaves")
        if name is None:
            return self.leaves[0]
        for lf in self.leaves:
            if lf.name == name:
                return lf
        raise UnsupportedLeafError(f"scenario {self.name} has no leaf named {name!r}")


# -- numerical flag measurement ------------------------------------------------


def _sample_points(manifold, default_grid, extra_random: int = 32) -> np.ndarray:
    if isinstance(manifold, InvariantFrameManifold):
        return manifold.base_point()[None, :]
    capped = tuple(min(k, 16) for k in default_grid)
    pts = grid_for(manifold, capped).nodes
    rng = np.random.default_rng(20270)
    return np.concatenate([pts, manifold.random_points(rng, extra_random)], axis=0)


def _frame_gram_residual(geom) -> float:
    frames = [geom.E[..., i, :] for i in range(geom.n)] + [geom.Narr]
    for xi in geom.xis:
        frames.append(jets.stack_values(xi, geom.batch))
    worst = 0.0
    for a, u in enumerate(frames):
        for b, v in enumerate(frames):
            ip = np.einsum("...i,...ij,...j->...", u, geom.g_arr, v)
            worst = max(worst, float(np.max(np.abs(ip - (1.0 if a == b else 0.0)))))
    return worst


def _curvature_invariance_residual(geom) -> float:
    """Max off-leaf norm of R^P(e_i, e_j)e_k over leaf-frame triples."""
    T = np.einsum("...lkab,...Kk,...Ia,...Jb->...KIJl", geom.RP, geom.E, geom.E, geom.E)
    coeff = np.einsum("...ql,...KIJl->...KIJq", geom.E_low, T)
    tang = np.einsum("...KIJq,...ql->...KIJl", coeff, geom.E)
    off = T - tang
    norms = np.einsum("...KIJl,...lm,...KIJm->...KIJ", off, geom.g_arr, off)
    return float(np.sqrt(max(np.max(norms), 0.0)))


def _pcurv_constant_residual(geom, c: float) -> float:
    """Max deviation of R^P on D-frame triples from the constant-curvature form."""
    F = np.concatenate([geom.E, geom.Narr[..., None, :]], axis=-2)
    T = np.einsum("...lkab,...Kk,...Ia,...Jb->...IJKl", geom.RP, F, F, F)
    d = F.shape[-2]
    eye = np.eye(d)
    want = c * (
        np.einsum("JK,...Il->...IJKl", eye, F) - np.einsum("IK,...Jl->...IJKl", eye, F)
    )
    diff = T - want
    norms = np.einsum("...IJKl,...lm,...IJKm->...IJK", diff, geom.g_arr, diff)
    return float(np.sqrt(max(np.max(norms), 0.0)))


def _umbilical_residual(geom) -> float:
    H = geom.sigma_arr(1) / geom.n
    dev = geom.A_arr - H[..., None, None] * np.eye(geom.n)
    return float(np.max(np.abs(dev)))


def measure_scenario(fol: FoliationStructure, points, pcurv_c: float | None) -> dict:
    """Numerically measured residuals behind every scenario flag."""
    geom = Geometry(fol, points, order=2)
    hperp = np.sqrt(
        np.maximum(np.einsum("...i,...ij,...j->...", geom.Hperp_arr, geom.g_arr, geom.Hperp_arr), 0.0)
    )
    out = {
        "frame_orthonormality": _frame_gram_residual(geom),
        "integrability": integrability_residual(fol, points),
        "mean_curvature_perp_max": float(np.max(hperp)),
        "admissibility_max": admissibility_residual(fol.dist, fol, points),
        "p_curvature_invariance": _curvature_invariance_residual(geom),
        "umbilical_deviation": _umbilical_residual(geom),
        "shape_asymmetry": geom.A_asym,
    }
    if pcurv_c is not None:
        out["pcurv_constant"] = _pcurv_constant_residual(geom, pcurv_c)
    return out


def _finalize(
    name: str,
    manifold,
    dist: DistributionSpec,
    fol: FoliationStructure,
    declared: dict,
    expected: dict,
    leaves: tuple,
    default_grid: tuple,
) -> Scenario:
    points = _sample_points(manifold, default_grid)
    pcurv_c = declared.get("pcurv_c")
    res = measure_scenario(fol, points, pcurv_c)

    if res["frame_orthonormality"] > FRAME_TOL:
        raise ConstructionError(f"{name}: frames not orthonormal ({res['frame_orthonormality']:.2e})")
    if res["integrability"] > INTEGRABILITY_TOL:
        raise ConstructionError(f"{name}: leaf bundle not integrable ({res['integrability']:.2e})")

    measured = ScenarioFlags(
        harmonic_perp=res["mean_curvature_perp_max"] <= HARMONIC_TOL,
        admissible=res["admissibility_max"] <= ADMISSIBLE_TOL,
        p_curvature_invariant=res["p_curvature_invariance"] <= CURV_INVARIANT_TOL,
        satisfies_pcurv_c=pcurv_c is not None and res.get("pcurv_constant", np.inf) <= CURV_INVARIANT_TOL,
        pcurv_c=pcurv_c,
        umbilical=res["umbilical_deviation"] <= UMBILICAL_TOL,
    )
    for key in ("harmonic_perp", "admissible", "p_curvature_invariant", "satisfies_pcurv_c", "umbilical"):
        want = declared.get(key)
        if want is not None and want != getattr(measured, key):
            raise ConstructionError(
                f"{name}: declared {key}={want} contradicts measurement {getattr(measured, key)}"
            )

    grid = grid_for(manifold, default_grid if not isinstance(manifold, InvariantFrameManifold) else None)
    vol = total_volume(manifold, grid)
    return Scenario(
        name=name,
        manifold=manifold,
        dist=dist,
        fol=fol,
        flags=measured,
        residuals=res,
        expected=expected,
        leaves=leaves,
        default_grid=default_grid,
        volume=vol,
    )


# -- chart builders --------------------------------------------------------------


def build_flat_torus(m: int = 3, n: int = 1, periods: tuple | None = None) -> Scenario:
    """Flat m-torus, leaves spanned by the first n coordinates; everything vanishes."""
    if not 1 <= n < m - 1:
        raise ValueError("need 1 <= n < m - 1 so the orthogonal complement is nonempty")
    periods = tuple(float(p) for p in (periods or (1.0,) * m))
    man = ChartManifold(dim=m, periods=periods, metric=lambda coords: jets.mat_identity(m), name="flat_torus")

    leaf_frame = lambda coords: [[1.0 if k == i else 0.0 for k in range(m)] for i in range(n)]
    normal = lambda coords: [1.0 if k == n else 0.0 for k in range(m)]
    perp = lambda coords: [[1.0 if k == i else 0.0 for k in range(m)] for i in range(n + 1, m)]

    dist = DistributionSpec(man, n + 1, lambda coords: leaf_frame(coords) + [normal(coords)], perp)
    fol = FoliationStructure(dist, leaf_frame, normal, "leaves are coordinate subtori")
    expected = {
        "shape_operator": ExpectedValue(lambda pts: np.zeros(np.shape(pts)[:-1] + (n, n)), "flat metric"),
        "curvature_Z": ExpectedValue(lambda pts: np.zeros(np.shape(pts)), "flat metric"),
        "ricci_p_NN": ExpectedValue(0.0, "flat metric"),
        "admissibility_residual": ExpectedValue(0.0, "flat metric"),
        "mean_curvature_perp_norm": ExpectedValue(0.0, "flat metric"),
        "volume": ExpectedValue(float(np.prod(periods)), "product of periods"),
    }
    leaves = (LeafSpec("coordinate-leaf", fixed={i: 0.0 for i in range(n, m)}, axes=tuple(range(n))),)
    return _finalize(
        "flat_torus",
        man,
        dist,
        fol,
        declared=dict(
            harmonic_perp=True,
            admissible=True,
            p_curvature_invariant=True,
            satisfies_pcurv_c=True,
            pcurv_c=0.0,
            umbilical=True,
        ),
        expected=expected,
        leaves=leaves,
        default_grid=(4,) * m,
    )


def _check_positive(profile: Periodic1D, label: str):
    z = np.linspace(0.0, 2.0 * np.pi, 512)
    if np.min(profile.fn(z)) <= 0.0:
        raise ConstructionError(f"warp profile {label} is not strictly positive")


def build_warped_torus(
    m: int = 4,
    a: Periodic1D = TWO_PLUS_COS,
    b: Periodic1D = TWO_PLUS_SIN,
    name: str | None = None,
) -> Scenario:
    """Warped torus with z-dependent leaf scales; the primary admissible testbed.

    m = 4: metric dx^2 + a(z)^2 dy1^2 + b(z)^2 dy2^2 + dz^2, leaves the
    (y1, y2)-tori.  m = 3 drops the y2 factor.  The orthogonal complement is
    the flat x-circle, so it is harmonic, and the normal z-lines are geodesic.
    """
    if m not in (3, 4):
        raise ValueError("warped torus is implemented for m in {3, 4}")
    _check_positive(a, "a")
    if m == 4:
        _check_positive(b, "b")
    periods = (2.0 * np.pi,) * m
    zi = m - 1

    if m == 4:

        def metric(coords):
            av = a(coords[3])
            bv = b(coords[3])
            return [
                [1.0, 0.0, 0.0, 0.0],
                [0.0, av * av, 0.0, 0.0],
                [0.0, 0.0, bv * bv, 0.0],
                [0.0, 0.0, 0.0, 1.0],
            ]

        leaf_frame = lambda coords: [
            [0.0, 1.0 / a(coords[3]), 0.0, 0.0],
            [0.0, 0.0, 1.0 / b(coords[3]), 0.0],
        ]
        n = 2
    else:

        def metric(coords):
            av = a(coords[2])
            return [[1.0, 0.0, 0.0], [0.0, av * av, 0.0], [0.0, 0.0, 1.0]]

        leaf_frame = lambda coords: [[0.0, 1.0 / a(coords[2]), 0.0]]
        n = 1

    man = ChartManifold(dim=m, periods=periods, metric=metric, name=name or f"warped_torus_{m}")
    normal = lambda coords: [0.0] * zi + [1.0]
    perp = lambda coords: [[1.0] + [0.0] * (m - 1)]
    dist = DistributionSpec(man, n + 1, lambda coords: leaf_frame(coords) + [normal(coords)], perp)
    fol = FoliationStructure(dist, leaf_frame, normal, "leaves are coordinate subtori at fixed (x, z)")

    def expected_A(pts):
        z = np.asarray(pts)[..., zi]
        if m == 4:
            d = np.stack([-a.d1(z) / a.fn(z), -b.d1(z) / b.fn(z)], axis=-1)
        else:
            d = (-a.d1(z) / a.fn(z))[..., None]
        return d[..., :, None] * np.eye(n)

    def expected_ric(pts):
        z = np.asarray(pts)[..., zi]
        out = -a.d2(z) / a.fn(z)
        if m == 4:
            out = out - b.d2(z) / b.fn(z)
        return out

    umbilical = (a is b) or n == 1  # any 1x1 shape operator is trivially umbilical
    expected = {
        "shape_operator": ExpectedValue(expected_A, "hand-derived warped-product connection"),
        "ricci_p_NN": ExpectedValue(expected_ric, "hand-derived warped-product curvature"),
        "curvature_Z": ExpectedValue(lambda pts: np.zeros(np.shape(pts)), "z-lines are geodesics"),
        "admissibility_residual": ExpectedValue(0.0, "x-circle is flat and orthogonal"),
        "mean_curvature_perp_norm": ExpectedValue(0.0, "x-circle is flat"),
    }
    if m == 4:
        expected["volume"] = ExpectedValue(
            (2.0 * np.pi) ** 3 * _loop_integral(lambda z: a.fn(z) * b.fn(z)), "reduced 1-d integral"
        )
    else:
        expected["volume"] = ExpectedValue(
            (2.0 * np.pi) ** 2 * _loop_integral(a.fn), "reduced 1-d integral"
        )

    if m == 4:
        leaves = (LeafSpec("y-torus", fixed={0: 0.0, 3: 0.0}, axes=(1, 2)),)
        default_grid = (4, 4, 4, 32)
    else:
        leaves = (LeafSpec("y-circle", fixed={0: 0.0, 2: 0.0}, axes=(1,)),)
        default_grid = (4, 4, 32)

    return _finalize(
        name or f"warped_torus_{m}",
        man,
        dist,
        fol,
        declared=dict(harmonic_perp=True, admissible=True, umbilical=umbilical),
        expected=expected,
        leaves=leaves,
        default_grid=default_grid,
    )


def _loop_integral(fn, k: int = 4096) -> float:
    z = np.arange(k) * (2.0 * np.pi / k)
    return float(np.sum(fn(z)) * (2.0 * np.pi / k))


def build_tilted_torus(
    theta: Periodic1D | None = None,
    a: Periodic1D = TWO_PLUS_COS,
    b: Periodic1D = TWO_PLUS_SIN,
) -> Scenario:
    """Warped 4-torus with the unit normal rotated inside the distribution.

    The rotation profile theta(z) tilts N toward the y2-direction, which
    turns on the leaf curvature vector Z while keeping the leaf bundle
    integrable (the rotated frame still commutes with the y1-circle).  Leaves
    through z with sin(theta(z)) = 0 remain closed coordinate tori.
    """
    theta = theta or sine_profile(0.3)
    _check_positive(a, "a")
    _check_positive(b, "b")
    m, n = 4, 2
    periods = (2.0 * np.pi,) * m

    def metric(coords):
        av = a(coords[3])
        bv = b(coords[3])
        return [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, av * av, 0.0, 0.0],
            [0.0, 0.0, bv * bv, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ]

    def leaf_frame(coords):
        z = coords[3]
        c, s = jets.cos(theta(z)), jets.sin(theta(z))
        return [
            [0.0, 1.0 / a(z), 0.0, 0.0],
            [0.0, 0.0, c / b(z), -1.0 * s],
        ]

    def normal(coords):
        z = coords[3]
        c, s = jets.cos(theta(z)), jets.sin(theta(z))
        return [0.0, 0.0, s / b(z), c]

    perp = lambda coords: [[1.0, 0.0, 0.0, 0.0]]
    man = ChartManifold(dim=m, periods=periods, metric=metric, name="tilted_torus_4")
    dist = DistributionSpec(man, n + 1, lambda coords: leaf_frame(coords) + [normal(coords)], perp)
    fol = FoliationStructure(
        dist, leaf_frame, normal, "rotated frame still commutes with the y1-circle"
    )

    def expected_Z(pts):
        z = np.asarray(pts)[..., 3]
        th, dth = theta.fn(z), theta.d1(z)
        c, s = np.cos(th), np.sin(th)
        coeff = s * b.d1(z) / b.fn(z) + c * dth
        e2 = np.stack([np.zeros_like(z), np.zeros_like(z), c / b.fn(z), -s], axis=-1)
        return coeff[..., None] * e2

    def expected_A(pts):
        z = np.asarray(pts)[..., 3]
        th, dth = theta.fn(z), theta.d1(z)
        c, s = np.cos(th), np.sin(th)
        d = np.stack([-c * a.d1(z) / a.fn(z), -(c * b.d1(z) / b.fn(z) - s * dth)], axis=-1)
        return d[..., :, None] * np.eye(n)

    expected = {
        "curvature_Z": ExpectedValue(expected_Z, "hand frame-rotation computation"),
        "shape_operator": ExpectedValue(expected_A, "hand frame-rotation computation"),
        "admissibility_residual": ExpectedValue(0.0, "x-direction parallel for the metric"),
        "mean_curvature_perp_norm": ExpectedValue(0.0, "x-circle untouched by the tilt"),
        "volume": ExpectedValue(
            (2.0 * np.pi) ** 3 * _loop_integral(lambda z: a.fn(z) * b.fn(z)),
            "metric equals the warped torus metric",
        ),
    }
    leaves = ()
    if abs(float(theta.fn(0.0))) <= 1e-12:
        leaves = (LeafSpec("y-torus", fixed={0: 0.0, 3: 0.0}, axes=(1, 2)),)
    return _finalize(
        "tilted_torus_4",
        man,
        dist,
        fol,
        declared=dict(harmonic_perp=True, admissible=True),
        expected=expected,
        leaves=leaves,
        default_grid=(4, 4, 4, 48),
    )


# -- invariant-frame builders ------------------------------------------------------


def build_heisenberg() -> Scenario:
    """Heisenberg nilmanifold frame [X, Y] = T; D = span(X, T), complement Y.

    The distribution is genuinely non-integrable.  Every tensor in the
    verification chain vanishes, while the ambient Riemannian curvature does
    not: the projected and ambient curvature operators differ by 1/4 in the
    normal direction.
    """
    m = 3
    c = np.zeros((m, m, m))
    c[2, 0, 1] = 1.0
    c[2, 1, 0] = -1.0
    man = InvariantFrameManifold(dim=m, structure_constants=c, volume=1.0, name="heisenberg")

    leaf_frame = lambda coords: [[1.0, 0.0, 0.0]]
    normal = lambda coords: [0.0, 0.0, 1.0]
    perp = lambda coords: [[0.0, 1.0, 0.0]]
    dist = DistributionSpec(man, 2, lambda coords: leaf_frame(coords) + [normal(coords)], perp)
    fol = FoliationStructure(dist, leaf_frame, normal, "X spans a closed one-parameter subgroup")
    expected = {
        "shape_operator": ExpectedValue(lambda pts: np.zeros(np.shape(pts)[:-1] + (1, 1)), "Koszul on [X,Y]=T"),
        "curvature_Z": ExpectedValue(lambda pts: np.zeros(np.shape(pts)), "T-lines are geodesics"),
        "ricci_p_NN": ExpectedValue(0.0, "projected curvature vanishes on D"),
        "riemann_ricci_NN": ExpectedValue(0.25, "bi-invariant-style Koszul computation"),
        "admissibility_residual": ExpectedValue(0.5, "P nabla_Y T = X/2"),
        "mean_curvature_perp_norm": ExpectedValue(0.0, "nabla_Y Y = 0"),
        "volume": ExpectedValue(1.0, "declared lattice quotient volume"),
        "main_residual_r0": ExpectedValue(0.0, "all integrand terms vanish"),
    }
    leaves = (LeafSpec("x-circle", volume=1.0),)
    return _finalize(
        "heisenberg",
        man,
        dist,
        fol,
        declared=dict(
            harmonic_perp=True,
            admissible=False,
            satisfies_pcurv_c=True,
            pcurv_c=0.0,
            umbilical=True,
        ),
        expected=expected,
        leaves=leaves,
        default_grid=(1,),
    )


def build_round_s3() -> Scenario:
    """Unit round 3-sphere frame [e1, e2] = 2 e3 (cyclic); inadmissibility probe.

    Leaves are the great circles of e1, N = e2 and the complement e3.  The
    complement fails the parallel-normal condition with residual exactly 1,
    and the r = 0 integral formula picks up -2 times the total volume.
    """
    m = 3
    c = np.zeros((m, m, m))
    for (i, j, k) in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        c[k, i, j] = 2.0
        c[k, j, i] = -2.0
    vol = 2.0 * np.pi**2
    man = InvariantFrameManifold(dim=m, structure_constants=c, volume=vol, name="round_s3")

    leaf_frame = lambda coords: [[1.0, 0.0, 0.0]]
    normal = lambda coords: [0.0, 1.0, 0.0]
    perp = lambda coords: [[0.0, 0.0, 1.0]]
    dist = DistributionSpec(man, 2, lambda coords: leaf_frame(coords) + [normal(coords)], perp)
    fol = FoliationStructure(dist, leaf_frame, normal, "e1 spans a closed one-parameter subgroup")
    expected = {
        "shape_operator": ExpectedValue(lambda pts: np.zeros(np.shape(pts)[:-1] + (1, 1)), "invariant-frame Koszul"),
        "curvature_Z": ExpectedValue(lambda pts: np.zeros(np.shape(pts)), "e2-lines are geodesics"),
        "ricci_p_NN": ExpectedValue(2.0, "invariant-frame projected curvature"),
        "riemann_ricci_NN": ExpectedValue(1.0, "unit-sphere sectional curvature"),
        "admissibility_residual": ExpectedValue(1.0, "P nabla_{e3} e2 = -e1"),
        "mean_curvature_perp_norm": ExpectedValue(0.0, "nabla_{e3} e3 = 0"),
        "volume": ExpectedValue(vol, "unit round 3-sphere volume"),
        "main_residual_r0": ExpectedValue(-4.0 * np.pi**2, "-2 times the total volume"),
    }
    leaves = (LeafSpec("great-circle", volume=2.0 * np.pi),)
    return _finalize(
        "round_s3",
        man,
        dist,
        fol,
        declared=dict(
            harmonic_perp=True,
            admissible=False,
            satisfies_pcurv_c=True,
            pcurv_c=2.0,
            umbilical=True,
        ),
        expected=expected,
        leaves=leaves,
        default_grid=(1,),
    )


# -- catalog -------------------------------------------------------------------


BUILDERS = {
    "flat_torus": build_flat_torus,
    "warped_torus_3": lambda: build_warped_torus(3),
    "warped_torus_4": lambda: build_warped_torus(4),
    "warped_torus_4_umbilical": lambda: build_warped_torus(
        4, a=TWO_PLUS_COS, b=TWO_PLUS_COS, name="warped_torus_4_umbilical"
    ),
    "tilted_torus_4": build_tilted_torus,
    "heisenberg": build_heisenberg,
    "round_s3": build_round_s3,
}


def build(name: str) -> Scenario:
    try:
        builder = BUILDERS[name]
    except KeyError:
        raise KeyError(f"unknown scenario {name!r}; known: {sorted(BUILDERS)}") from None
    return builder()


def catalog_names() -> list[str]:
    return sorted(BUILDERS)
