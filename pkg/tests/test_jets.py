import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from folsub import jets
from folsub.errors import LinearSolveError
from helpers import fd_gradient, fd_hessian

RNG = np.random.default_rng(2024)


def random_trig_function(rng, m=3):
    """Random smooth periodic scalar; returns both a float and a jet evaluator."""
    terms = []
    for _ in range(3):
        amp = rng.uniform(-1.0, 1.0)
        ks = rng.integers(-2, 3, m)
        ph = rng.uniform(0.0, 2 * np.pi, m)
        terms.append((amp, ks, ph))

    def plain(x):
        acc = 0.0
        for amp, ks, ph in terms:
            prod = amp
            for i in range(m):
                if ks[i]:
                    prod = prod * np.sin(ks[i] * x[i] + ph[i])
            acc += prod
        return acc

    def jet_eval(coords):
        acc = 0.0
        for amp, ks, ph in terms:
            prod = amp
            for i in range(m):
                if ks[i]:
                    prod = prod * jets.sin(coords[i] * float(ks[i]) + ph[i])
            acc = acc + prod
        return acc

    return plain, jet_eval


def test_jets_match_finite_differences_on_200_random_functions():
    m = 3
    worst = 0.0
    for _ in range(200):
        plain, jet_eval = random_trig_function(RNG, m)
        x = RNG.uniform(0, 2 * np.pi, m)
        j = jet_eval(jets.variables(x))
        assert abs(j.value - plain(x)) < 1e-12
        scale = max(1.0, float(np.max(np.abs(j.grad))), float(np.max(np.abs(j.hess))))
        worst = max(worst, float(np.max(np.abs(j.grad - fd_gradient(plain, x)))) / scale)
        worst = max(worst, float(np.max(np.abs(j.hess - fd_hessian(plain, x)))) / scale)
    assert worst <= 1e-6


def test_arithmetic_on_division_and_composition():
    x = jets.variables(np.array([0.7, -0.3]))
    f = jets.exp(jets.sin(x[0]) * x[1]) / (2.0 + jets.cos(x[0]))

    def plain(p):
        return np.exp(np.sin(p[0]) * p[1]) / (2.0 + np.cos(p[0]))

    p = np.array([0.7, -0.3])
    assert abs(f.value - plain(p)) < 1e-14
    assert np.max(np.abs(f.grad - fd_gradient(plain, p))) < 1e-8
    assert np.max(np.abs(f.hess - fd_hessian(plain, p))) < 1e-6


def test_order_degradation_through_derivative():
    x = jets.variables(np.array([0.2, 0.4]), order=2)
    f = jets.sin(x[0]) * x[1]
    df = f.d(0)
    assert f.order == 2 and df.order == 1
    assert abs(df.value - np.cos(0.2) * 0.4) < 1e-15
    assert abs(df.d(1).value - np.cos(0.2)) < 1e-15
    with pytest.raises(ValueError):
        df.d(1).d(0)


def test_coordinate_seeds():
    pts = np.array([[0.1, 0.2], [0.3, 0.4]])
    xs = jets.variables(pts)
    assert xs[0].value.shape == (2,)
    assert np.all(xs[0].grad[:, 0] == 1.0) and np.all(xs[0].grad[:, 1] == 0.0)
    assert np.all(xs[1].hess == 0.0)


@settings(max_examples=50)
@given(
    a=st.floats(-2, 2, allow_nan=False),
    b=st.floats(-2, 2, allow_nan=False),
    v=st.floats(0.3, 3.0),
)
def test_product_and_quotient_rules(a, b, v):
    x = jets.variables(np.array([v]))[0]
    f = jets.sin(x * a) + b
    g = 2.0 + jets.cos(x)
    prod = f * g
    quot = f / g
    fv, fg = np.sin(a * v) + b, a * np.cos(a * v)
    gv, gg = 2.0 + np.cos(v), -np.sin(v)
    assert abs(prod.grad[0] - (fv * gg + gv * fg)) < 1e-12
    assert abs(quot.grad[0] - (fg * gv - fv * gg) / gv**2) < 1e-12


def test_batched_matches_pointwise():
    pts = RNG.uniform(0, 2 * np.pi, (17, 3))
    plain, jet_eval = random_trig_function(np.random.default_rng(7), 3)
    batch = jet_eval(jets.variables(pts))
    for i in range(17):
        single = jet_eval(jets.variables(pts[i]))
        assert np.allclose(batch.value[i], single.value, atol=0, rtol=0)
        assert np.allclose(batch.hess[i], single.hess, atol=0, rtol=0)


def test_mat_inverse_and_identities():
    n = 4
    A = RNG.uniform(-1, 1, (n, n))
    A = A @ A.T + n * np.eye(n)
    nested = [[A[i, j] for j in range(n)] for i in range(n)]
    inv = jets.mat_inverse(nested)
    invarr = np.array([[jets.value_of(inv[i][j]) for j in range(n)] for i in range(n)])
    assert np.max(np.abs(invarr @ A - np.eye(n))) < 1e-12


def test_mat_inverse_rejects_singular():
    nested = [[1.0, 0.0], [0.0, 0.0]]
    with pytest.raises(LinearSolveError):
        jets.mat_inverse(nested)


def test_mat_inverse_on_jets_tracks_derivative():
    # d/dz of 1/(2+cos z)^2 for the diagonal metric entry
    z = jets.variables(np.array([0.6]))[0]
    a = 2.0 + jets.cos(z)
    inv = jets.mat_inverse([[a * a]])[0][0]
    zz = 0.6
    want = -2.0 * (-np.sin(zz)) / (2.0 + np.cos(zz)) ** 3
    assert abs(inv.grad[0] - want) < 1e-13
