"""Symmetric functions, Newton transformations, and their trace identities.

The workhorse routines are written over nested lists of generic scalars (see
``jets``), so a single implementation serves three callers: plain matrices,
batched stacks of matrices, and jet-valued operator fields on a manifold.
Coefficients of the characteristic polynomial are recovered from power sums
through Newton's identities; no eigendecomposition is involved, which keeps
the evaluation deterministic and exact for diagonal input.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

import numpy as np

from .jets import mat_identity, mat_mul, mat_trace, value_of


def _nested(A: np.ndarray) -> list[list]:
    n = A.shape[-1]
    return [[A[..., i, j] for j in range(n)] for i in range(n)]


def _stacked(nested) -> np.ndarray:
    rows = [np.stack([np.asarray(value_of(e), dtype=float) for e in row], axis=-1) for row in nested]
    return np.stack(rows, axis=-2)


def power_sums_nested(A) -> list:
    """tau_j = tr(A^j) for j = 1..n."""
    n = len(A)
    taus = []
    Ak = A
    for _ in range(n):
        taus.append(mat_trace(Ak))
        Ak = mat_mul(Ak, A)
    return taus


def sigmas_nested(A) -> list:
    """sigma_0..sigma_n of an n x n operator via Newton's identities."""
    n = len(A)
    taus = power_sums_nested(A)
    sig = [1.0]
    for k in range(1, n + 1):
        acc = 0.0
        for i in range(1, k + 1):
            term = sig[k - i] * taus[i - 1]
            acc = acc + (term if i % 2 == 1 else -term)
        sig.append(acc * (1.0 / k))
    return sig


def newton_transforms_nested(A, sigmas=None) -> list:
    """All T_0..T_n, by the recursion T_r = sigma_r Id - A T_{r-1}."""
    n = len(A)
    if sigmas is None:
        sigmas = sigmas_nested(A)
    eye = mat_identity(n)
    out = [eye]
    for r in range(1, n + 1):
        ATprev = mat_mul(A, out[-1])
        out.append([[sigmas[r] * eye[i][j] - ATprev[i][j] for j in range(n)] for i in range(n)])
    return out


def sigma_entry(sigmas, k: int):
    """sigma_k with indices above n identically zero."""
    return sigmas[k] if k < len(sigmas) else 0.0


# -- ndarray front ends ------------------------------------------------------


def power_sums(A: np.ndarray) -> np.ndarray:
    return np.stack([np.asarray(t, dtype=float) for t in power_sums_nested(_nested(np.asarray(A, dtype=float)))], axis=-1)


def sigma_values(A: np.ndarray) -> np.ndarray:
    return np.stack([np.asarray(s, dtype=float) + 0.0 * np.asarray(A, dtype=float)[..., 0, 0] for s in sigmas_nested(_nested(np.asarray(A, dtype=float)))], axis=-1)


def sigma(r: int, A: np.ndarray):
    n = np.asarray(A).shape[-1]
    if not 0 <= r <= n:
        raise ValueError(f"sigma index {r} outside 0..{n}")
    return sigma_values(A)[..., r]


def tau(j: int, A: np.ndarray):
    n = np.asarray(A).shape[-1]
    if not 1 <= j <= n:
        raise ValueError(f"tau index {j} outside 1..{n}")
    return power_sums(A)[..., j - 1]


@dataclass(frozen=True)
class SymmetricFunctions:
    """sigma_0..sigma_n, power sums tau_1..tau_n, and the mean H = sigma_1/n."""

    sigma: np.ndarray
    tau: np.ndarray
    H: np.ndarray


def symmetric_functions(A: np.ndarray) -> SymmetricFunctions:
    A = np.asarray(A, dtype=float)
    n = A.shape[-1]
    return SymmetricFunctions(sigma=sigma_values(A), tau=power_sums(A), H=sigma_values(A)[..., 1] / n)


def newton_transform(r: int, A: np.ndarray) -> np.ndarray:
    A = np.asarray(A, dtype=float)
    n = A.shape[-1]
    if not 0 <= r <= n:
        raise ValueError(f"Newton transformation index {r} outside 0..{n}")
    return _stacked(newton_transforms_nested(_nested(A))[r]) + 0.0 * A


def newton_transform_explicit(r: int, A: np.ndarray) -> np.ndarray:
    """Alternating-sum form sum_j (-1)^j sigma_{r-j} A^j, used as a cross-check."""
    A = np.asarray(A, dtype=float)
    n = A.shape[-1]
    if not 0 <= r <= n:
        raise ValueError(f"Newton transformation index {r} outside 0..{n}")
    sig = sigma_values(A)
    eye = np.broadcast_to(np.eye(n), A.shape).copy()
    out = np.zeros_like(A)
    Aj = eye
    for j in range(r + 1):
        out = out + (-1.0) ** j * sig[..., r - j, None, None] * Aj
        Aj = Aj @ A
    return out


def trace_identity_residuals(r: int, A: np.ndarray) -> np.ndarray:
    """Residuals of the three algebraic Newton-trace identities at index r.

    tr T_r = (n-r) sigma_r,
    tr(A T_r) = (r+1) sigma_{r+1},
    tr(A^2 T_r) = sigma_1 sigma_{r+1} - (r+2) sigma_{r+2}.
    Returns shape (..., 3).
    """
    A = np.asarray(A, dtype=float)
    n = A.shape[-1]
    if not 0 <= r <= n - 1:
        raise ValueError(f"trace identity index {r} outside 0..{n - 1}")
    sig = sigma_values(A)
    sget = lambda k: sig[..., k] if k <= n else np.zeros(A.shape[:-2])
    Tr = newton_transform(r, A)
    tr = lambda M: np.trace(M, axis1=-2, axis2=-1)
    r1 = tr(Tr) - (n - r) * sget(r)
    r2 = tr(A @ Tr) - (r + 1) * sget(r + 1)
    r3 = tr(A @ A @ Tr) - (sget(1) * sget(r + 1) - (r + 2) * sget(r + 2))
    return np.stack([r1, r2, r3], axis=-1)


# -- exact combinatorics for the umbilical and constant-curvature reductions --


def umbilical_coefficient_sum(n: int, r: int) -> Fraction:
    """sum_{i=0}^{r} (-1)^{r-i} C(n, i), exact."""
    return sum((Fraction((-1) ** (r - i)) * comb(n, i) for i in range(r + 1)), Fraction(0))


def umbilical_coefficient(n: int, r: int) -> Fraction:
    """((n-r)/n) C(n, r), exact; equals the alternating sum above."""
    return Fraction(n - r, n) * comb(n, r)


def binomial_reduction_sum(n: int, r: int) -> Fraction:
    """sum_{j=1}^{r} (-1)^{j-1} ((n-r+j)/n) C(n, r-j), exact.

    Collapses to C(n-2, r-1) for n >= 2.
    """
    return sum(
        (Fraction((-1) ** (j - 1)) * Fraction(n - r + j, n) * comb(n, r - j) for j in range(1, r + 1)),
        Fraction(0),
    )


def total_curvature_recursion_constant(n: int, c: float, vol: float) -> np.ndarray:
    """Iterate (r+2) S_{r+2} = c (n-r) S_r from S_0 = vol, S_1 = 0.

    S_r plays the role of the total r-th mean curvature of the foliation under
    the constant-curvature reduction of the main integral formula.
    """
    S = np.zeros(n + 1)
    S[0] = vol
    if n >= 1:
        S[1] = 0.0
    for r in range(0, n - 1):
        S[r + 2] = c * (n - r) * S[r] / (r + 2)
    return S


def total_curvature_closed_constant(n: int, r: int, c: float, vol: float) -> float:
    """Closed form: c^{r/2} C(n/2, r/2) vol for n, r even; 0 for odd r."""
    if r % 2 == 1:
        return 0.0
    if n % 2 != 0:
        raise ValueError("closed form stated for even leaf dimension only")
    return c ** (r // 2) * comb(n // 2, r // 2) * vol


def total_curvature_recursion_einstein(n: int, C: float, vol: float) -> np.ndarray:
    """Iterate S_{r+2} = C (n-r) / (n (r+2)) S_r from S_0 = vol, S_1 = 0."""
    S = np.zeros(n + 1)
    S[0] = vol
    if n >= 1:
        S[1] = 0.0
    for r in range(0, n - 1):
        S[r + 2] = C * (n - r) * S[r] / (n * (r + 2))
    return S


def total_curvature_closed_einstein(n: int, r: int, C: float, vol: float) -> float:
    """Closed form: (C/n)^{r/2} C(n/2, r/2) vol for n, r even; 0 for odd r."""
    if r % 2 == 1:
        return 0.0
    if n % 2 != 0:
        raise ValueError("closed form stated for even leaf dimension only")
    return (C / n) ** (r // 2) * comb(n // 2, r // 2) * vol


def umbilical_common_factor(n: int, r: int) -> float:
    """(r+1)! (n-r-1)! / (n-2)!, the ratio between the two umbilical integrands."""
    if n < 2:
        raise ValueError("umbilical reduction needs leaf dimension >= 2")
    return factorial(r + 1) * factorial(n - r - 1) / factorial(n - 2)


def umbilical_main_integrand(n: int, r: int, H: float, ric_nn: float, ric_zn: float) -> float:
    """Pointwise main-formula integrand for A = H Id, built from actual matrices.

    The two curvature-operator traces are substituted by operators consistent
    with umbilicity: the normal-direction operator has trace ric_nn, and the
    operator attached to A^{j-1} Z contributes H^{j-1} times an operator with
    trace ric_zn.
    """
    A = H * np.eye(n)
    sig = sigma_values(A)
    sget = lambda k: float(sig[k]) if k <= n else 0.0
    Ts = [newton_transform(k, A) for k in range(n + 1)]
    out = (r + 2) * sget(r + 2)
    out -= float(np.trace(Ts[r] @ ((ric_nn / n) * np.eye(n))))
    for j in range(1, r + 1):
        out -= (-1.0) ** (j - 1) * H ** (j - 1) * float(np.trace(Ts[r - j] @ ((ric_zn / n) * np.eye(n))))
    return out


def umbilical_reduced_integrand(n: int, r: int, H: float, ric_nn: float, ric_zn: float) -> float:
    """Pointwise integrand of the umbilical mean-curvature display.

    H^{r-1} (H^3 n (n-1)(n-r-1) - H (n-1)(r+1) ric_nn - r (r+1) ric_zn),
    with the H^{r-1} prefactor distributed so r = 0 carries no singularity.
    """
    out = H ** (r + 2) * n * (n - 1) * (n - r - 1)
    out -= H**r * (n - 1) * (r + 1) * ric_nn
    if r >= 1:
        out -= H ** (r - 1) * r * (r + 1) * ric_zn
    return out
