import numpy as np
import pytest

from folsub import scenarios as scn


@pytest.fixture(scope="session")
def flat():
    return scn.build("flat_torus")


@pytest.fixture(scope="session")
def flat_wide():
    # higher leaf dimension, exercises r = 0..2 code paths on a flat background
    return scn.build_flat_torus(m=5, n=3)


@pytest.fixture(scope="session")
def warped3():
    return scn.build("warped_torus_3")


@pytest.fixture(scope="session")
def warped4():
    return scn.build("warped_torus_4")


@pytest.fixture(scope="session")
def warped4_umbilical():
    return scn.build("warped_torus_4_umbilical")


@pytest.fixture(scope="session")
def tilted():
    return scn.build("tilted_torus_4")


@pytest.fixture(scope="session")
def heisenberg():
    return scn.build("heisenberg")


@pytest.fixture(scope="session")
def round_s3():
    return scn.build("round_s3")


@pytest.fixture(scope="session")
def catalog(flat, warped3, warped4, warped4_umbilical, tilted, heisenberg, round_s3):
    return {
        s.name: s
        for s in (flat, warped3, warped4, warped4_umbilical, tilted, heisenberg, round_s3)
    }


def build_nonharmonic_torus():
    """Warped 3-torus whose orthogonal circle has z-dependent length.

    The complement direction is no longer geodesic, so the mean curvature of
    the orthogonal distribution is nonzero and the harmonicity hypothesis of
    the integral formulas genuinely fails.
    """
    from folsub.distribution import DistributionSpec
    from folsub.foliation import FoliationStructure
    from folsub.manifolds import ChartManifold
    from folsub.scenarios import TWO_PLUS_COS, TWO_PLUS_SIN, _finalize

    a, c = TWO_PLUS_COS, TWO_PLUS_SIN

    def metric(coords):
        av, cv = a(coords[2]), c(coords[2])
        return [[cv * cv, 0.0, 0.0], [0.0, av * av, 0.0], [0.0, 0.0, 1.0]]

    man = ChartManifold(dim=3, periods=(2 * np.pi,) * 3, metric=metric, name="nonharmonic_torus")
    leaf_frame = lambda coords: [[0.0, 1.0 / a(coords[2]), 0.0]]
    normal = lambda coords: [0.0, 0.0, 1.0]
    perp = lambda coords: [[1.0 / c(coords[2]), 0.0, 0.0]]
    dist = DistributionSpec(man, 2, lambda coords: leaf_frame(coords) + [normal(coords)], perp)
    fol = FoliationStructure(dist, leaf_frame, normal, "coordinate circles")
    return _finalize(
        "nonharmonic_torus",
        man,
        dist,
        fol,
        declared=dict(harmonic_perp=False, admissible=True),
        expected={},
        leaves=(),
        default_grid=(4, 4, 32),
    )


@pytest.fixture(scope="session")
def nonharmonic():
    return build_nonharmonic_torus()
