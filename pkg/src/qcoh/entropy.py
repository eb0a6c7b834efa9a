"""Entropy functionals in bits, plus majorization.

Logs are base 2 throughout and ``0 log 0 = 0``. Spectra are clamped (see
:meth:`DensityMatrix.spectrum`) before any logarithm is taken.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DimensionMismatch, InvalidDistribution, LengthMismatch, OutOfRange
from .qstate import DensityMatrix

SUM_TOL = 1e-9
NEG_TOL = 1e-12
SUPPORT_EIG_TOL = 1e-12
SUPPORT_WEIGHT_TOL = 1e-10


def as_prob_vector(p) -> np.ndarray:
    """Validate ``p`` as a probability vector and return it as a float array.

    Entries in ``[-1e-12, 0)`` are set to zero.
    """
    a = np.asarray(p, dtype=float)
    if a.ndim != 1 or a.size == 0:
        raise InvalidDistribution(f"probability vector must be 1-D and non-empty, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InvalidDistribution("probability vector has non-finite entries")
    lo = float(a.min())
    if lo < -NEG_TOL:
        raise InvalidDistribution(f"non-negativity violated: min entry = {lo:.3e}")
    if float(a.max()) > 1.0 + SUM_TOL:
        raise InvalidDistribution(f"entry exceeds 1: max entry = {float(a.max()):.12g}")
    s = float(a.sum())
    if abs(s - 1.0) > SUM_TOL:
        raise InvalidDistribution(f"normalization violated: |sum - 1| = {abs(s - 1.0):.3e}")
    return np.clip(a, 0.0, None)


def _h(p: np.ndarray) -> float:
    nz = p[p > 0]
    return float(-np.sum(nz * np.log2(nz))) + 0.0


def shannon(p) -> float:
    """Shannon entropy ``-sum p_i log2 p_i``."""
    return _h(as_prob_vector(p))


def binary_entropy(t: float) -> float:
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise OutOfRange(f"binary entropy argument must lie in [0, 1], got {t!r}")
    return _h(np.array([t, 1.0 - t]))


def von_neumann(rho: DensityMatrix) -> float:
    """Von Neumann entropy of ``rho`` in bits."""
    return _h(rho.spectrum())


def relative_entropy(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """Quantum relative entropy ``Tr rho log2 rho - Tr rho log2 sigma``.

    Returns ``math.inf`` when the support of ``rho`` is not contained in the
    support of ``sigma``: some eigenvalue of ``sigma`` below 1e-12 carries
    ``rho``-weight above 1e-10.
    """
    if rho.dim != sigma.dim:
        raise DimensionMismatch(f"relative entropy needs equal dims, got {rho.dim} and {sigma.dim}")
    lam, r = np.linalg.eigh(rho.data)
    mu, s = np.linalg.eigh(sigma.data)
    lam = np.clip(lam, 0.0, None)
    lam = lam / lam.sum()
    # overlap[i, j] = |<r_i|s_j>|^2
    overlap = np.abs(r.conj().T @ s) ** 2
    weight = lam @ overlap
    null = mu < SUPPORT_EIG_TOL
    if np.any(weight[null] > SUPPORT_WEIGHT_TOL):
        return math.inf
    nz = lam > 0
    first = float(np.sum(lam[nz] * np.log2(lam[nz])))
    keep = ~null
    second = float(np.sum(weight[keep] * np.log2(mu[keep])))
    val = first - second
    return max(val, 0.0) if val > -1e-9 else val


def majorizes(x, y) -> bool:
    """True iff ``y`` is majorized by ``x`` (``y`` prec ``x``).

    Both vectors are sorted descending; every partial sum of ``y`` must not
    exceed the matching partial sum of ``x``.
    """
    xv, yv = as_prob_vector(x), as_prob_vector(y)
    if xv.size != yv.size:
        raise LengthMismatch(f"majorization needs equal lengths, got {xv.size} and {yv.size}")
    cx = np.cumsum(np.sort(xv)[::-1])
    cy = np.cumsum(np.sort(yv)[::-1])
    return bool(np.all(cy <= cx + NEG_TOL)) and abs(cx[-1] - cy[-1]) <= SUM_TOL
