"""Kraus channels and the bit-flip example."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .coherence import computational_basis
from .duality import DualityBudget, duality_budget
from .errors import DimensionMismatch, IncompleteChannel, NotSquare, ProbabilityOutOfRange
from .qstate import PAULI_X, Basis, DensityMatrix, bloch_to_qubit

COMPLETENESS_TOL = 1e-9

EXAMPLE_BLOCH = (1 / math.sqrt(2), 1 / math.sqrt(3), 1 / math.sqrt(6))


class KrausChannel:
    """CPTP map given by Kraus operators with ``sum K^dagger K = I``."""

    __slots__ = ("_ops",)

    def __init__(self, operators: Sequence) -> None:
        ops = [np.array(k, dtype=complex) for k in operators]
        if not ops:
            raise IncompleteChannel("channel needs at least one Kraus operator")
        d = ops[0].shape[0] if ops[0].ndim == 2 else -1
        for k in ops:
            if k.ndim != 2 or k.shape != (d, d):
                raise NotSquare(f"Kraus operators must all be {d}x{d}, got shape {k.shape}")
        dev = float(np.max(np.abs(sum(k.conj().T @ k for k in ops) - np.eye(d))))
        if dev > COMPLETENESS_TOL:
            raise IncompleteChannel(f"completeness invariant violated: max|sum K^H K - I| = {dev:.3e}")
        for k in ops:
            k.setflags(write=False)
        self._ops = tuple(ops)

    @property
    def operators(self) -> tuple[np.ndarray, ...]:
        return self._ops

    @property
    def dim(self) -> int:
        return self._ops[0].shape[0]

    def __repr__(self) -> str:
        return f"KrausChannel(dim={self.dim}, n_ops={len(self._ops)})"


def apply_channel(rho: DensityMatrix, ch: KrausChannel) -> DensityMatrix:
    if rho.dim != ch.dim:
        raise DimensionMismatch(f"state dim {rho.dim} != channel dim {ch.dim}")
    return DensityMatrix(sum(k @ rho.data @ k.conj().T for k in ch.operators))


def _check_p(p: float) -> float:
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ProbabilityOutOfRange(f"probability must lie in [0, 1], got {p!r}")
    return p


def bit_flip(p: float) -> KrausChannel:
    """``E0 = sqrt(p) I``, ``E1 = sqrt(1 - p) X``; ``p`` is the no-flip probability."""
    p = _check_p(p)
    return KrausChannel([math.sqrt(p) * np.eye(2), math.sqrt(1 - p) * PAULI_X])


def bitflip_example_state(p: float) -> DensityMatrix:
    """Bloch state ``(1/sqrt2, 1/sqrt3, 1/sqrt6)`` after :func:`bit_flip` ``(p)``.

    Written out directly: diagonal ``(1 +- (2p-1)/sqrt6)/2`` and upper
    off-diagonal ``1/(2 sqrt2) + i (1-2p)/(2 sqrt3)``.
    """
    p = _check_p(p)
    s = (2 * p - 1) / math.sqrt(6)
    off = 1 / (2 * math.sqrt(2)) + 1j * (1 - 2 * p) / (2 * math.sqrt(3))
    return DensityMatrix([[(1 + s) / 2, off], [off.conjugate(), (1 - s) / 2]])


def example_input_state() -> DensityMatrix:
    return bloch_to_qubit(EXAMPLE_BLOCH)


@dataclass(frozen=True)
class SweepRow:
    p: float
    wave: float
    particle: float
    entanglement: float

    @classmethod
    def from_budget(cls, p: float, b: DualityBudget) -> "SweepRow":
        return cls(p, b.wave, b.particle, b.entanglement)


def bitflip_duality_sweep(p_grid: Sequence[float], b: Basis | None = None) -> list[SweepRow]:
    """Duality budget of the bit-flip example state at each ``p``."""
    b = computational_basis(2) if b is None else b
    rows = []
    for p in p_grid:
        rows.append(SweepRow.from_budget(float(p), duality_budget(bitflip_example_state(p), b)))
    return rows
