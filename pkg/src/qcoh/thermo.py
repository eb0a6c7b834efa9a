"""Work extraction, Hamiltonian pinching and distillation rates.

Two unit conventions are offered for work:

``"bits_kT"``
    ``k_B T C(rho)``, entropies in bits, exactly as the bit-valued formula
    is usually quoted (default).
``"joules"``
    ``k_B T ln2 C(rho)``, the physical free-energy difference, which needs
    the entropy in nats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import entropy
from .coherence import _clamp, bi_coherence
from .errors import DimensionMismatch, NonpositiveTemperature, NotHermitian, NotSquare
from .qstate import DensityMatrix

K_B = 1.380649e-23  # J/K, exact SI value
HERMITIAN_TOL = 1e-9
DEGENERACY_RTOL = 1e-9
UNITS = ("bits_kT", "joules")


class Hamiltonian:
    __slots__ = ("_h", "energy_unit")

    def __init__(self, matrix, energy_unit: str = "J") -> None:
        h = np.array(matrix, dtype=complex)
        if h.ndim != 2 or h.shape[0] != h.shape[1] or h.shape[0] == 0:
            raise NotSquare(f"Hamiltonian must be square and non-empty, got shape {h.shape}")
        dev = float(np.max(np.abs(h - h.conj().T)))
        if dev > HERMITIAN_TOL:
            raise NotHermitian(f"Hermitian invariant violated: max|H - H^H| = {dev:.3e} > {HERMITIAN_TOL:g}")
        h = (h + h.conj().T) / 2
        h.setflags(write=False)
        self._h = h
        self.energy_unit = energy_unit

    @property
    def matrix(self) -> np.ndarray:
        return self._h

    @property
    def dim(self) -> int:
        return self._h.shape[0]

    def eigenprojectors(self) -> list[tuple[float, np.ndarray]]:
        """Projectors onto the energy eigenspaces, grouping levels within a relative 1e-9."""
        w, v = np.linalg.eigh(self._h)
        tol = DEGENERACY_RTOL * float(np.max(np.abs(w)))
        groups: list[list[int]] = []
        for k in range(len(w)):
            if groups and w[k] - w[groups[-1][0]] <= tol:
                groups[-1].append(k)
            else:
                groups.append([k])
        out = []
        for g in groups:
            vg = v[:, g]
            out.append((float(np.mean(w[g])), vg @ vg.conj().T))
        return out

    def __repr__(self) -> str:
        return f"Hamiltonian(dim={self.dim})"


@dataclass(frozen=True)
class WorkResult:
    value: float
    units: str

    def as_dict(self) -> dict:
        return {"value": self.value, "units": self.units}


def _scale(T: float, units: str) -> float:
    if not T > 0:
        raise NonpositiveTemperature(f"temperature must be > 0 K, got {T!r}")
    if units not in UNITS:
        raise ValueError(f"units must be one of {UNITS}, got {units!r}")
    return K_B * T * (math.log(2) if units == "joules" else 1.0)


def extractable_work(rho: DensityMatrix, T: float, units: str = "bits_kT") -> WorkResult:
    """Work extractable with a bath at temperature ``T``: ``k_B T C(rho)``."""
    return WorkResult(_scale(T, units) * bi_coherence(rho), units)


def hamiltonian_pinch(rho: DensityMatrix, h: Hamiltonian) -> DensityMatrix:
    """Pinch ``rho`` onto the energy eigenspaces: ``sum_k P_k rho P_k``.

    For a non-degenerate spectrum this is ``sum_k Tr(rho P_k) P_k``.
    """
    if rho.dim != h.dim:
        raise DimensionMismatch(f"state dim {rho.dim} != Hamiltonian dim {h.dim}")
    return DensityMatrix(sum(p @ rho.data @ p for _, p in h.eigenprojectors()))


def coherence_to_work(rho: DensityMatrix, h: Hamiltonian, T: float, units: str = "bits_kT") -> WorkResult:
    """Work from converting coherence in the energy basis: ``k_B T (S(sigma_H) - S(rho))``."""
    scale = _scale(T, units)
    sigma = hamiltonian_pinch(rho, h)
    gain = _clamp(entropy.von_neumann(sigma) - entropy.von_neumann(rho))
    return WorkResult(scale * gain, units)


def distillable_pure_count(rho: DensityMatrix, n: int) -> tuple[float, float]:
    """Asymptotic pure-state yield from ``n`` copies: ``(C(rho), n C(rho))``, not floored."""
    if n < 0:
        raise ValueError(f"number of copies must be >= 0, got {n}")
    rate = bi_coherence(rho)
    return rate, n * rate
