"""Basis-dependent and basis-independent relative-entropy coherence.

The basis-independent coherence of a d-dimensional state is its relative
entropy to the maximally mixed state, ``C(rho) = log2 d - S(rho)``. The
maximally mixed state is the only state diagonal in every basis.

For any basis ``B`` this splits exactly as::

    C(rho) = C^B(rho) + C(Phi^B(rho))

where ``Phi^B`` is complete dephasing in ``B`` and ``C^B`` is the usual
relative entropy of coherence. Repeated dephasing in a list of bases
telescopes the same way (:func:`chain_split`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import entropy
from .errors import BlochNormExceeded, DimensionMismatch, EmptyChain
from .qstate import (
    BLOCH_TOL,
    Basis,
    BlochVector,
    DensityMatrix,
    SeedLike,
    bloch_to_qubit,
    haar_random_unitary,
    make_rng,
)

CLAMP_TOL = 1e-9

__all__ = [
    "Basis",
    "CoherenceSplit",
    "ChainReport",
    "computational_basis",
    "fourier_basis",
    "dephase",
    "bi_coherence",
    "rel_ent_coherence",
    "theorem1_split",
    "chain_split",
    "is_mub",
    "is_bi_incoherent",
    "offdiagonal_norm",
    "mub_rotating_unitary",
    "max_coherence_over_unitaries",
    "max_coherent_mixed_state",
    "qubit_closed_forms",
]


def _clamp(x: float) -> float:
    return 0.0 if -CLAMP_TOL <= x < 0.0 else x


def _check(rho: DensityMatrix, b: Basis) -> None:
    if rho.dim != b.dim:
        raise DimensionMismatch(f"state dim {rho.dim} != basis dim {b.dim}")


@dataclass(frozen=True)
class CoherenceSplit:
    """``total = basis_part + residual``, all in bits."""

    total: float
    basis_part: float
    residual: float

    def as_dict(self) -> dict:
        return {"total": self.total, "basis_part": self.basis_part, "residual": self.residual}


@dataclass(frozen=True)
class ChainReport:
    """Outcome of dephasing successively in ``bases``.

    ``contributions[k]`` is the coherence removed by step ``k`` and
    ``residuals[k]`` the basis-independent coherence left after it; the last
    residual is ``residual``. ``states[k]`` is the state after step ``k``.
    """

    total: float
    contributions: tuple[float, ...]
    residuals: tuple[float, ...]
    states: tuple[DensityMatrix, ...] = field(repr=False)

    @property
    def residual(self) -> float:
        return self.residuals[-1]

    def as_dict(self) -> dict:
        return {
            "total": self.total,
            "contributions": list(self.contributions),
            "residuals": list(self.residuals),
            "residual": self.residual,
        }


def computational_basis(d: int) -> Basis:
    return Basis(np.eye(d))


def fourier_basis(d: int) -> Basis:
    """Columns ``(1/sqrt d) sum_j w^{jk} |j>`` with ``w = exp(2 pi i / d)``."""
    j = np.arange(d)
    return Basis(np.exp(2j * np.pi * np.outer(j, j) / d) / np.sqrt(d))


def _basis_probs(rho: DensityMatrix, b: Basis) -> np.ndarray:
    u = b.matrix
    p = np.einsum("ij,ik,kj->j", u.conj(), rho.data, u).real
    p = np.clip(p, 0.0, None)
    return p / p.sum()


def dephase(rho: DensityMatrix, b: Basis) -> DensityMatrix:
    """Completely dephase ``rho`` in basis ``b``: ``sum_i |a_i><a_i| rho |a_i><a_i|``."""
    _check(rho, b)
    u = b.matrix
    return DensityMatrix((u * _basis_probs(rho, b)) @ u.conj().T)


def bi_coherence(rho: DensityMatrix) -> float:
    return _clamp(math.log2(rho.dim) - entropy.von_neumann(rho))


def rel_ent_coherence(rho: DensityMatrix, b: Basis) -> float:
    """Relative entropy of coherence ``S(Phi^B(rho)) - S(rho)``."""
    _check(rho, b)
    return _clamp(entropy.von_neumann(dephase(rho, b)) - entropy.von_neumann(rho))


def theorem1_split(rho: DensityMatrix, b: Basis) -> CoherenceSplit:
    _check(rho, b)
    log_d = math.log2(rho.dim)
    s = entropy.von_neumann(rho)
    s_deph = entropy.von_neumann(dephase(rho, b))
    return CoherenceSplit(
        total=_clamp(log_d - s),
        basis_part=_clamp(s_deph - s),
        residual=_clamp(log_d - s_deph),
    )


def chain_split(rho: DensityMatrix, bases: Sequence[Basis]) -> ChainReport:
    """Telescoping decomposition of ``C(rho)`` along a sequence of dephasings."""
    bases = list(bases)
    if not bases:
        raise EmptyChain("chain of bases must be non-empty")
    for b in bases:
        _check(rho, b)
    log_d = math.log2(rho.dim)
    s_prev = entropy.von_neumann(rho)
    state = rho
    contributions, residuals, states = [], [], []
    for b in bases:
        state = dephase(state, b)
        s_next = entropy.von_neumann(state)
        contributions.append(_clamp(s_next - s_prev))
        residuals.append(_clamp(log_d - s_next))
        states.append(state)
        s_prev = s_next
    return ChainReport(
        total=_clamp(log_d - entropy.von_neumann(rho)),
        contributions=tuple(contributions),
        residuals=tuple(residuals),
        states=tuple(states),
    )


def is_mub(b1: Basis, b2: Basis, tol: float = 1e-10) -> bool:
    """True iff every squared overlap ``|<b2_j|b1_i>|^2`` is within ``tol`` of ``1/d``."""
    if b1.dim != b2.dim:
        raise DimensionMismatch(f"basis dims differ: {b1.dim} != {b2.dim}")
    ov = np.abs(b2.matrix.conj().T @ b1.matrix) ** 2
    return bool(np.all(np.abs(ov - 1.0 / b1.dim) <= tol))


def is_bi_incoherent(rho: DensityMatrix, tol: float = 1e-9) -> bool:
    return float(np.max(np.abs(rho.data - np.eye(rho.dim) / rho.dim))) <= tol


def offdiagonal_norm(rho: DensityMatrix, b: Basis) -> float:
    """Largest off-diagonal modulus of ``rho`` written in basis ``b``."""
    _check(rho, b)
    m = b.matrix.conj().T @ rho.data @ b.matrix
    return float(np.max(np.abs(m - np.diag(np.diag(m))))) if rho.dim > 1 else 0.0


def mub_rotating_unitary(rho: DensityMatrix, b: Basis) -> np.ndarray:
    """Unitary sending the eigenbasis of ``rho`` onto the Fourier rotation of ``b``.

    The image basis is mutually unbiased with ``b``, so dephasing the rotated
    state in ``b`` yields ``I/d``. Any orthonormal eigenbasis works when the
    spectrum is degenerate.
    """
    _check(rho, b)
    _, v = np.linalg.eigh(rho.data)
    target = b.matrix @ fourier_basis(rho.dim).matrix
    return target @ v.conj().T


def max_coherence_over_unitaries(
    rho: DensityMatrix, b: Basis, n_samples: int, seed: SeedLike = None
) -> tuple[float, float]:
    """Maximize ``C^B(U rho U^dagger)`` over global unitaries.

    Returns ``(supremum, sample_max)``. The supremum is evaluated at the
    constructive optimum from :func:`mub_rotating_unitary`, and equals
    ``C(rho)``. ``sample_max`` is the best value over ``n_samples`` Haar
    unitaries, or 0.0 when ``n_samples == 0`` (``C^B`` is never negative).
    """
    _check(rho, b)
    if n_samples < 0:
        raise ValueError(f"n_samples must be >= 0, got {n_samples}")
    supremum = rel_ent_coherence(rho.conjugate_by(mub_rotating_unitary(rho, b)), b)
    rng = make_rng(seed)
    sample_max = 0.0
    for _ in range(n_samples):
        u = haar_random_unitary(rho.dim, rng).matrix
        sample_max = max(sample_max, rel_ent_coherence(rho.conjugate_by(u), b))
    return supremum, sample_max


def max_coherent_mixed_state(spectrum, b: Basis) -> DensityMatrix:
    """``sum_j p_j |j'><j'|`` where ``{|j'>}`` is the Fourier rotation of ``b``."""
    p = entropy.as_prob_vector(spectrum)
    if p.size != b.dim:
        raise DimensionMismatch(f"spectrum length {p.size} != basis dim {b.dim}")
    w = b.matrix @ fourier_basis(b.dim).matrix
    return DensityMatrix((w * p) @ w.conj().T)


def qubit_closed_forms(v, axis: str = "Z") -> CoherenceSplit:
    """Closed-form qubit split for the Z (computational) or X (``|+>, |->``) basis."""
    x, y, z = (float(c) for c in v)
    r2 = x * x + y * y + z * z
    if r2 > 1.0 + BLOCH_TOL:
        raise BlochNormExceeded(f"Bloch vector norm invariant violated: |r|^2 = {r2:.12g} > 1")
    r = min(math.sqrt(r2), 1.0)
    comp = {"Z": z, "X": x}[axis.upper()]
    comp = max(-1.0, min(1.0, comp))
    h_r = entropy.binary_entropy((1 + r) / 2)
    h_c = entropy.binary_entropy((1 + comp) / 2)
    return CoherenceSplit(total=_clamp(1 - h_r), basis_part=_clamp(h_c - h_r), residual=_clamp(1 - h_c))


def bloch_split(v: BlochVector, axis: str = "Z") -> CoherenceSplit:
    """Numerical counterpart of :func:`qubit_closed_forms` via :func:`theorem1_split`."""
    b = computational_basis(2) if axis.upper() == "Z" else fourier_basis(2)
    return theorem1_split(bloch_to_qubit(v), b)
