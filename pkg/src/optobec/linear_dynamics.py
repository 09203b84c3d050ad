"""Linearized fluctuation dynamics: drift and diffusion matrices, algebraic
stability, and the stationary covariance.

The fluctuation state vector is ordered [dX, dY, dq, dp, dQ, dP] (cavity
quadratures, mirror quadratures, condensate-mode quadratures), with vacuum
variance 1/2.  Stability is decided purely algebraically from the
characteristic polynomial (Routh-Hurwitz), and the stationary covariance V
solves A V + V A^T = -D by direct Kronecker vectorization; at fixed size 6
the 36-unknown dense solve costs microseconds and stays free of any
eigen/Schur machinery.
"""

from __future__ import annotations

import math
from typing import List, Optional

import numpy as np

from .model import DerivedQuantities
from .steady_state import MeanFieldBranch

_SQRT2 = math.sqrt(2.0)

#: accepted Lyapunov residual, relative to the diffusion scale
LYAPUNOV_RESIDUAL_RTOL = 1e-8


class NumericalError(RuntimeError):
    """A linear solve hit a singular or marginal system."""


def drift_matrix(branch: MeanFieldBranch, d: DerivedQuantities) -> np.ndarray:
    """Drift matrix of the linearized dynamics around a mean-field branch.

    A condensate-absent configuration has zeta = 0, which decouples the last
    two rows and columns; they are kept so the state dimension never changes.
    """
    g_m = _SQRT2 * d.xi * branch.alpha
    g_c = _SQRT2 * d.zeta * branch.alpha
    delta = branch.Delta
    a = np.zeros((6, 6))
    a[0, 0] = -d.kappa
    a[0, 1] = delta
    a[1, 0] = -delta
    a[1, 1] = -d.kappa
    a[1, 2] = g_m
    a[1, 4] = -g_c
    a[2, 3] = d.omega_m
    a[3, 0] = g_m
    a[3, 2] = -d.omega_m
    a[3, 3] = -d.gamma_m
    a[4, 4] = -d.gamma_c
    a[4, 5] = d.Omega_c
    a[5, 0] = -g_c
    a[5, 4] = -(d.Omega_c + d.omega_sw)
    a[5, 5] = -d.gamma_c
    return a


def diffusion_matrix(d: DerivedQuantities, bec_thermal: bool = False) -> np.ndarray:
    """Diagonal noise-covariance matrix feeding the Lyapunov equation.

    diag[kappa, kappa, 0, gamma_m (2 nbar + 1), gamma_c, gamma_c].  With
    ``bec_thermal`` the condensate entries pick up the thermal factor
    gamma_c (2 nbar_bec + 1) evaluated at the mode resonance; default off,
    matching the bare-damping convention for an isolated condensate.
    """
    g_c = d.gamma_c
    if bec_thermal:
        g_c = d.gamma_c * (2.0 * d.nbar_bec + 1.0)
    return np.diag([d.kappa, d.kappa, 0.0,
                    d.gamma_m * (2.0 * d.nbar + 1.0), g_c, g_c])


def characteristic_polynomial(a: np.ndarray) -> np.ndarray:
    """Coefficients of det(lambda I - A), ascending order, leading 1.

    Trace-based recurrence (no eigendecomposition): with M_1 = I and
    c_{n-1} = -tr(A), iterate M_k = A M_{k-1} + c_{n-k+1} I and
    c_{n-k} = -tr(A M_k)/k.  Exact for integer matrices up to rounding.
    """
    a = np.asarray(a, dtype=float)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("matrix must be square")
    coeffs = np.empty(n + 1)
    coeffs[n] = 1.0
    m = np.eye(n)
    c = -np.trace(a)
    coeffs[n - 1] = c
    for k in range(2, n + 1):
        m = a @ m + c * np.eye(n)
        c = -np.einsum("ij,ji->", a, m) / k
        coeffs[n - k] = c
    return coeffs


def _routh_first_column(coeffs_desc: List[float], eps_sign: float):
    """First Routh column for a monic polynomial (descending coefficients).

    Zero pivots in an otherwise nonzero row are replaced by
    eps_sign * 1e-30 * (row scale); an all-zero row is replaced by the
    derivative of the auxiliary polynomial built from the row above.
    Returns (first_column, used_eps, used_aux).
    """
    n = len(coeffs_desc) - 1
    width = n // 2 + 1
    rows = [
        [coeffs_desc[i] if i <= n else 0.0 for i in range(0, n + 1, 2)],
        [coeffs_desc[i] if i <= n else 0.0 for i in range(1, n + 1, 2)],
    ]
    for row in rows:
        row.extend([0.0] * (width - len(row)))
    used_eps = used_aux = False

    for j in range(1, n + 1):
        if j >= 2:
            prev, prev2 = rows[j - 1], rows[j - 2]
            pivot = prev[0]
            new = [(pivot * prev2[i + 1] - prev2[0] * prev[i + 1]) / pivot
                   for i in range(width - 1)] + [0.0]
            rows.append(new)
        row = rows[j]
        if all(x == 0.0 for x in row):
            # auxiliary polynomial of the row above has only even powers;
            # replace the zero row by its derivative
            used_aux = True
            degree = n - (j - 1)
            row = [rows[j - 1][i] * (degree - 2 * i) for i in range(width)]
            rows[j] = row
        if row[0] == 0.0:
            used_eps = True
            scale = max(abs(x) for x in row)
            rows[j] = [eps_sign * 1e-30 * scale] + row[1:]
    return [rows[j][0] for j in range(n + 1)], used_eps, used_aux


def _sign_changes(column) -> int:
    changes = 0
    prev = column[0]
    for x in column[1:]:
        if x == 0.0:
            continue
        if (x > 0.0) != (prev > 0.0):
            changes += 1
        prev = x
    return changes


def is_stable(coeffs) -> str:
    """Routh-Hurwitz verdict for a monic polynomial, ascending coefficients.

    Returns ``stable``, ``unstable`` or ``marginal``.  Any non-positive
    coefficient short-circuits to ``unstable`` (the positivity of every
    coefficient is necessary for strict stability; an exact zero always
    signals at least loss of strict stability).  ``marginal`` is returned
    when the sign decision depends on the epsilon perturbation of a zero
    pivot, or when an auxiliary-row replacement reveals imaginary-axis
    roots without any right-half-plane ones.
    """
    coeffs = [float(c) for c in coeffs]
    if len(coeffs) < 2:
        raise ValueError("polynomial must have degree >= 1")
    lead = coeffs[-1]
    if lead <= 0.0:
        raise ValueError("polynomial must be monic (positive leading coefficient)")
    if lead != 1.0:
        coeffs = [c / lead for c in coeffs]
    if any(c <= 0.0 for c in coeffs):
        return "unstable"

    desc = coeffs[::-1]
    col_p, eps_p, aux_p = _routh_first_column(desc, +1.0)
    changes_p = _sign_changes(col_p)
    if not eps_p and not aux_p:
        return "stable" if changes_p == 0 else "unstable"

    col_m, eps_m, aux_m = _routh_first_column(desc, -1.0)
    changes_m = _sign_changes(col_m)
    if changes_p != changes_m:
        return "marginal"
    if changes_p == 0:
        return "marginal" if (aux_p or aux_m or eps_p or eps_m) else "stable"
    return "unstable"


def solve_lyapunov(a: np.ndarray, d: np.ndarray) -> np.ndarray:
    """Stationary covariance V solving A V + V A^T = -D.

    Vectorizes to (I (x) A + A (x) I) vec(V) = -vec(D) and solves the dense
    n^2 x n^2 system by LU with partial pivoting, then symmetrizes.  The
    residual is checked against ``LYAPUNOV_RESIDUAL_RTOL`` times the largest
    diffusion entry; a singular or marginal drift raises
    :class:`NumericalError` instead of returning garbage.  The caller is
    expected to have verified stability first.
    """
    a = np.asarray(a, dtype=float)
    d = np.asarray(d, dtype=float)
    n = a.shape[0]
    eye = np.eye(n)
    coefficient = np.kron(eye, a) + np.kron(a, eye)
    try:
        vec = np.linalg.solve(coefficient, -d.reshape(-1))
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"Lyapunov system is singular: {exc}") from exc
    v = vec.reshape(n, n)
    v = 0.5 * (v + v.T)
    scale = np.abs(d).max()
    residual = np.abs(a @ v + v @ a.T + d).max()
    if not np.isfinite(residual) or residual > LYAPUNOV_RESIDUAL_RTOL * scale:
        raise NumericalError(
            f"Lyapunov residual {residual:.3e} exceeds "
            f"{LYAPUNOV_RESIDUAL_RTOL:.0e} * {scale:.3e}; drift is marginal or ill-conditioned")
    return v


def _rk4_step_matrix(a: np.ndarray, h: float) -> np.ndarray:
    """One-step propagator of the classical 4th-order scheme for du/dt = A u."""
    ha = h * a
    term = np.eye(a.shape[0])
    out = term.copy()
    for k in (1.0, 2.0, 3.0, 4.0):
        term = term @ ha / k
        out = out + term
    return out


def stability_oracle(a: np.ndarray, rng: Optional[np.random.Generator] = None) -> float:
    """Asymptotic growth/decay rate of du/dt = A u along a trajectory.

    Validation oracle (used by the tests, never by the solvers).  Propagates
    a random unit initial vector with the fixed-step 4th-order integrator;
    chunks of 2^17 steps are applied as a renormalized matrix power, which
    is algebraically identical to stepping and reaches a horizon far beyond
    1/|smallest rate| cheaply.  The rate is the least-squares slope of
    log ||u(t)|| over the trailing half of 64 uniformly spaced checkpoints.
    A negative return means decay (stable), positive means growth.
    """
    a = np.asarray(a, dtype=float)
    n = a.shape[0]
    scale = np.abs(a).max()
    if scale == 0.0:
        return 0.0
    if rng is None:
        rng = np.random.default_rng(0)

    h = 0.02 / scale
    step = _rk4_step_matrix(a, h)

    # chunk = step^(2^17), renormalized at every squaring
    chunk = step.copy()
    log_norm = 0.0
    for _ in range(17):
        chunk = chunk @ chunk
        s = np.abs(chunk).max()
        chunk /= s
        log_norm = 2.0 * log_norm + math.log(s)
    t_chunk = (2 ** 17) * h

    u = rng.normal(size=n)
    u /= np.linalg.norm(u)
    logs = np.empty(64)
    acc = 0.0
    for j in range(64):
        u = chunk @ u
        norm = np.linalg.norm(u)
        u /= norm
        acc += log_norm + math.log(norm)
        logs[j] = acc
    times = t_chunk * np.arange(1, 65)
    tail = slice(32, 64)
    slope = np.polyfit(times[tail], logs[tail], 1)[0]
    return float(slope)
