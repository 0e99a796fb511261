"""Independent oracles shared by the test modules.

Everything here deliberately avoids the jet/connection machinery under test:
finite differences for derivatives, eigenvalue brute force for symmetric
functions, dense one-dimensional quadrature for reduced integrals, and
hand-derived closed forms for the warped and tilted example metrics.
"""

import numpy as np

TWO_PI = 2.0 * np.pi


def fd_gradient(f, x, h=1e-6):
    x = np.asarray(x, dtype=float)
    g = np.zeros_like(x)
    for i in range(x.size):
        e = np.zeros_like(x)
        e[i] = h
        g[i] = (f(x + e) - f(x - e)) / (2 * h)
    return g


def fd_hessian(f, x, h=1e-4):
    x = np.asarray(x, dtype=float)
    m = x.size
    H = np.zeros((m, m))
    f0 = f(x)
    for i in range(m):
        ei = np.zeros(m)
        ei[i] = h
        H[i, i] = (f(x + ei) - 2 * f0 + f(x - ei)) / h**2
        for j in range(i + 1, m):
            ej = np.zeros(m)
            ej[j] = h
            H[i, j] = H[j, i] = (
                f(x + ei + ej) - f(x + ei - ej) - f(x - ei + ej) + f(x - ei - ej)
            ) / (4 * h**2)
    return H


def eig_elementary_symmetric(A):
    """sigma_0..sigma_n from eigenvalues, coefficient recursion on prod(t + lam)."""
    lam = np.linalg.eigvalsh(np.asarray(A, dtype=float))
    coeffs = np.array([1.0])
    for ev in lam:
        coeffs = np.concatenate([coeffs, [0.0]])
        coeffs[1:] += ev * coeffs[:-1].copy()
    return coeffs


def loop_integral(fn, k=8192):
    """Dense trapezoid (= rectangle) rule on one period of a smooth function."""
    z = np.arange(k) * (TWO_PI / k)
    return float(np.sum(fn(z)) * (TWO_PI / k))


# hand-derived closed forms for the default warps a = 2 + cos z, b = 2 + sin z
def warp_a(z):
    return 2.0 + np.cos(z)


def warp_da(z):
    return -np.sin(z)


def warp_d2a(z):
    return -np.cos(z)


def warp_b(z):
    return 2.0 + np.sin(z)


def warp_db(z):
    return np.cos(z)


def warp_d2b(z):
    return -np.sin(z)


def tilted_rp_leaf(z, amp=0.3):
    """<R^P(e1, e2)e2, e1> on the tilted torus, hand Koszul computation."""
    th = amp * np.sin(z)
    c, s = np.cos(th), np.sin(th)
    alpha = warp_da(z) / warp_a(z)
    beta = warp_db(z) / warp_b(z)
    return -(c**2 * alpha * beta + s**2 * warp_d2a(z) / warp_a(z))


def tilted_rp_normal(z, amp=0.3):
    """<R^P(e1, e2)N, e1> on the tilted torus, hand Koszul computation."""
    th = amp * np.sin(z)
    c, s = np.cos(th), np.sin(th)
    alpha = warp_da(z) / warp_a(z)
    beta = warp_db(z) / warp_b(z)
    return s * c * (warp_d2a(z) / warp_a(z) - alpha * beta)
