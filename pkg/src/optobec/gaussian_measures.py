"""Figures of merit extracted from the stationary covariance matrix:
incoherent mode occupations and bipartite logarithmic negativity.

Covariances follow the vacuum-variance-1/2 convention, so a mode in its
ground state contributes (V_xx + V_pp - 1)/2 = 0 incoherent quanta.  The
two-mode entanglement monotone is computed from the lowest symplectic
eigenvalue of the partially transposed 4x4 covariance of the selected
bipartition; determinants are taken at fixed size (2x2 closed form, LU for
the 4x4), no eigen machinery anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np

# roundoff guard for the symplectic discriminant, scaled by its natural
# square magnitude so hot thermal blocks do not trip on cancellation noise
_DISC_GUARD = 1e-12


@dataclass(frozen=True)
class Bipartition:
    """Two-mode selection out of the [field, mirror, condensate] ordering.

    ``first`` and ``second`` are the 0-based quadrature index pairs of the
    two modes; the reduced covariance lists ``first`` before ``second``.
    """

    name: str
    first: Tuple[int, int]
    second: Tuple[int, int]

    @property
    def indices(self) -> Tuple[int, int, int, int]:
        return self.first + self.second


MIRROR_FIELD = Bipartition("mirror-field", (2, 3), (0, 1))
ATOM_FIELD = Bipartition("atom-field", (4, 5), (0, 1))
MIRROR_ATOM = Bipartition("mirror-atom", (2, 3), (4, 5))

BIPARTITIONS = {bp.name: bp for bp in (MIRROR_FIELD, ATOM_FIELD, MIRROR_ATOM)}


@dataclass(frozen=True)
class EntanglementResult:
    """Logarithmic negativity and the symplectic eigenvalue it came from."""

    log_negativity: float  # E_N = max(0, -ln 2 eta_minus), >= 0
    eta_minus: float       # lowest symplectic eigenvalue of the partial transpose


def mirror_phonons(v: np.ndarray) -> float:
    """Effective incoherent phonon number of the mirror, (V_33 + V_44 - 1)/2."""
    return 0.5 * (v[2, 2] + v[3, 3] - 1.0)


def bogoliubov_excitations(v: np.ndarray) -> float:
    """Effective incoherent quanta in the condensate mode, (V_55 + V_66 - 1)/2."""
    return 0.5 * (v[4, 4] + v[5, 5] - 1.0)


def reduce_bipartition(v: np.ndarray, bp: Bipartition) -> np.ndarray:
    """4x4 covariance of the two selected modes, first-listed mode first."""
    idx = list(bp.indices)
    return np.asarray(v, dtype=float)[np.ix_(idx, idx)]


def _det2(m):
    return m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]


def _det4(m):
    # fixed-size LU with partial pivoting, in the dtype of the input
    # (extended-precision covariances go through unharmed)
    work = m.copy()
    det = work.dtype.type(1.0)
    for col in range(3):
        pivot = col + int(np.argmax(np.abs(work[col:, col])))
        if work[pivot, col] == 0.0:
            return work.dtype.type(0.0)
        if pivot != col:
            work[[col, pivot]] = work[[pivot, col]]
            det = -det
        det = det * work[col, col]
        for row in range(col + 1, 4):
            work[row, col:] = work[row, col:] - (work[row, col] / work[col, col]) * work[col, col:]
    return det * work[3, 3]


def log_negativity(v4: np.ndarray) -> EntanglementResult:
    """Logarithmic negativity of a two-mode covariance [[B, C], [C^T, B']].

    With Sigma = det B + det B' - 2 det C, the lowest symplectic eigenvalue
    of the partial transpose is eta_minus^2 = (Sigma - sqrt(Sigma^2 - 4 det V))/2,
    evaluated in the cancellation-free arrangement
    2 det V / (Sigma + sqrt(Sigma^2 - 4 det V)); then
    E_N = max(0, -ln 2 eta_minus).  A discriminant negative beyond the
    roundoff guard means the input is not a physical covariance and raises
    ValueError.  The arithmetic runs in the dtype of the input array.
    """
    v4 = np.asarray(v4)
    if v4.shape != (4, 4):
        raise ValueError("bipartite covariance must be 4x4")
    if not np.issubdtype(v4.dtype, np.floating):
        v4 = v4.astype(float)
    det_b = _det2(v4[:2, :2])
    det_bp = _det2(v4[2:, 2:])
    det_c = _det2(v4[:2, 2:])
    det_v = _det4(v4)

    sigma = det_b + det_bp - 2.0 * det_c
    disc = sigma * sigma - 4.0 * det_v
    guard = _DISC_GUARD * max(1.0, float(sigma * sigma))
    if disc < -guard:
        raise ValueError(
            f"covariance is not physical: symplectic discriminant {float(disc):.3e} < 0")
    disc = np.maximum(disc, type(disc)(0.0))
    eta_sq = 2.0 * det_v / (sigma + np.sqrt(disc)) if sigma > 0.0 else sigma
    if eta_sq <= 0.0:
        raise ValueError(
            f"covariance is not physical: eta_minus^2 = {float(eta_sq):.3e} <= 0")
    eta_minus = float(np.sqrt(eta_sq))
    return EntanglementResult(
        log_negativity=max(0.0, -float(np.log(2.0 * np.sqrt(eta_sq)))),
        eta_minus=eta_minus,
    )
