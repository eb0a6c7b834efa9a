"""Coherence / discord / entanglement ordering for two qubits.

Bell-diagonal states ``(I + sum_j c_j sigma_j (x) sigma_j) / 4`` admit closed
forms for all four quantities. :func:`discord_oracle` computes the symmetric
(measurement-induced, relative-entropy) discord of an arbitrary two-qubit
state by brute-force search over product projective measurements, and is
used to guard the discord closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import entropy
from .coherence import _clamp, bi_coherence, computational_basis, rel_ent_coherence
from .errors import DimensionMismatch, NotPositive
from .qstate import PAULIS, Basis, DensityMatrix

ORDER_TOL = 1e-9
PSD_TOL = 1e-9
BELL_DIAGONAL_TOL = 1e-9


@dataclass(frozen=True)
class BellDiagonalParams:
    c1: float
    c2: float
    c3: float

    def __post_init__(self) -> None:
        for name in ("c1", "c2", "c3"):
            v = float(getattr(self, name))
            if not -1.0 - 1e-12 <= v <= 1.0 + 1e-12:
                raise NotPositive(f"correlation {name} = {v!r} outside [-1, 1]")
            object.__setattr__(self, name, v)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.c1, self.c2, self.c3)


@dataclass(frozen=True)
class CorrelationReport:
    bi_coherence: float
    comp_coherence: float
    discord: float
    entanglement: float

    @property
    def hierarchy_ok(self) -> bool:
        return (
            self.bi_coherence >= self.comp_coherence - ORDER_TOL
            and self.comp_coherence >= self.discord - ORDER_TOL
            and self.discord >= self.entanglement - ORDER_TOL
        )

    def as_dict(self) -> dict:
        return {
            "bi_coherence": self.bi_coherence,
            "comp_coherence": self.comp_coherence,
            "discord": self.discord,
            "entanglement": self.entanglement,
            "hierarchy_ok": self.hierarchy_ok,
        }


def _params(params) -> BellDiagonalParams:
    if isinstance(params, BellDiagonalParams):
        return params
    return BellDiagonalParams(*params)


def _bell_matrix(p: BellDiagonalParams) -> np.ndarray:
    m = np.eye(4, dtype=complex)
    for c, s in zip(p.as_tuple(), PAULIS):
        m = m + c * np.kron(s, s)
    return m / 4


def bell_spectrum(params) -> np.ndarray:
    """Eigenvalues of the Bell-diagonal state, descending, by diagonalization."""
    p = _params(params)
    lam = np.linalg.eigvalsh(_bell_matrix(p))[::-1]
    if lam[-1] < -PSD_TOL:
        raise NotPositive(
            f"positivity invariant violated for c = {p.as_tuple()}: min eigenvalue = {lam[-1]:.3e}"
        )
    lam = np.clip(lam, 0.0, None)
    return lam / lam.sum()


def bell_diagonal(params) -> DensityMatrix:
    p = _params(params)
    bell_spectrum(p)
    return DensityMatrix(_bell_matrix(p))


def _xlog2x(t: float) -> float:
    return t * math.log2(t) if t > 0 else 0.0


def _measured_term(c: float) -> float:
    """``sum_{j=1,2} (1 + (-1)^j c)/2 log2(1 + (-1)^j c)`` with ``0 log 0 = 0``."""
    return sum(0.5 * _xlog2x(1 + s * c) for s in (-1.0, 1.0))


def bd_report(params) -> CorrelationReport:
    """Closed forms for a Bell-diagonal state.

    * ``C = 2 - H(lambda)``
    * ``C^B = C - f(c3)`` for the computational basis
    * ``D = C - f(max|c_j|)`` (symmetric discord)
    * ``E = 1 - H2(lambda_max)`` if ``lambda_max >= 1/2`` else 0

    with ``f(c) = sum_{s=+-1} (1 + s c)/2 log2(1 + s c)``.
    """
    p = _params(params)
    lam = bell_spectrum(p)
    c = 2.0 - entropy.shannon(lam)
    c_max = max(abs(p.c1), abs(p.c2), abs(p.c3))
    lam0 = float(lam[0])
    ent = 1.0 + _xlog2x(lam0) + _xlog2x(1.0 - lam0) if lam0 >= 0.5 else 0.0
    return CorrelationReport(
        bi_coherence=_clamp(c),
        comp_coherence=_clamp(c - _measured_term(p.c3)),
        discord=_clamp(c - _measured_term(c_max)),
        entanglement=_clamp(ent),
    )


def _angle_grid(n: int, stop: float, endpoint: bool, extra: tuple[float, ...]) -> np.ndarray:
    base = np.linspace(0.0, stop, n, endpoint=endpoint) if n > 0 else np.array([])
    g = np.concatenate([base, np.array(extra)])
    return np.unique(np.round(g, 15))


def measurement_directions(grid_steps: int) -> np.ndarray:
    """Unit vectors, one per projective qubit measurement on the grid.

    Polar angles cover ``[0, pi/2]`` and azimuths ``[0, 2 pi)`` with
    ``grid_steps`` points each; the x, y and z axes are always present.
    Directions equal up to sign describe the same measurement and are
    de-duplicated, keeping the first in (polar, azimuth) order.
    """
    if grid_steps < 1:
        raise ValueError(f"grid_steps must be >= 1, got {grid_steps}")
    thetas = _angle_grid(grid_steps, math.pi / 2, True, (0.0, math.pi / 2))
    phis = _angle_grid(grid_steps, 2 * math.pi, False, (0.0, math.pi / 2))
    seen: set = set()
    out = []
    for t in thetas:
        for f in phis:
            n = np.array([math.sin(t) * math.cos(f), math.sin(t) * math.sin(f), math.cos(t)])
            n[np.abs(n) < 1e-15] = 0.0
            key = tuple(np.round(n, 12))
            neg = tuple(np.round(-n, 12) + 0.0)
            if key in seen or neg in seen:
                continue
            seen.add(key)
            out.append(n)
    return np.array(out)


def _pauli_coordinates(rho: DensityMatrix) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    eye = np.eye(2)
    a = np.array([np.trace(rho.data @ np.kron(s, eye)).real for s in PAULIS])
    b = np.array([np.trace(rho.data @ np.kron(eye, s)).real for s in PAULIS])
    t = np.array([[np.trace(rho.data @ np.kron(s, r)).real for r in PAULIS] for s in PAULIS])
    return a, b, t


def discord_oracle(rho: DensityMatrix, grid_steps: int = 60, chunk: int = 64) -> float:
    """Symmetric discord ``min S(Phi_A (x) Phi_B (rho)) - S(rho)`` by grid search.

    Both local measurements range over :func:`measurement_directions`. For
    directions ``n`` and ``m`` the product-dephased state has outcome
    probabilities ``(1 + a n.r_A + b m.r_B + a b n.T.m) / 4`` for signs
    ``a, b``. The minimum is reduced in a fixed order, so ties resolve to the
    lexicographically first pair of angles.
    """
    if rho.dim != 4:
        raise DimensionMismatch(f"discord oracle needs a two-qubit state (dim 4), got dim {rho.dim}")
    dirs = measurement_directions(grid_steps)
    ra, rb, t = _pauli_coordinates(rho)
    alpha = dirs @ ra
    beta = dirs @ rb
    tm = dirs @ t  # row i is n_i^T T
    best = math.inf
    for start in range(0, len(dirs), chunk):
        al = alpha[start : start + chunk, None]
        gam = tm[start : start + chunk] @ dirs.T
        u = al + beta[None, :]
        v = al - beta[None, :]
        h = np.zeros_like(gam)
        for q in (1 + u + gam, 1 - u + gam, 1 + v - gam, 1 - v - gam):
            q *= 0.25
            np.maximum(q, 1e-300, out=q)
            h -= q * np.log2(q)
        best = min(best, float(h.min()))
    return _clamp(best - entropy.von_neumann(rho))


def _is_bell_diagonal(rho: DensityMatrix) -> BellDiagonalParams | None:
    if rho.dim != 4:
        return None
    c = [float(np.trace(rho.data @ np.kron(s, s)).real) for s in PAULIS]
    if any(abs(x) > 1 + 1e-9 for x in c):
        return None
    p = BellDiagonalParams(*(max(-1.0, min(1.0, x)) for x in c))
    if np.max(np.abs(_bell_matrix(p) - rho.data)) > BELL_DIAGONAL_TOL:
        return None
    return p


def hierarchy_check(rho: DensityMatrix, b: Basis | None = None) -> tuple[float, float, bool]:
    """Return ``(C, C^B, ordering_ok)``.

    For general states only ``C >= C^B`` is checked. When ``rho`` is
    Bell-diagonal the discord and entanglement legs are added from
    :func:`bd_report` (whose ``C^B`` refers to the computational basis).
    """
    if b is None:
        b = computational_basis(rho.dim)
    c = bi_coherence(rho)
    c_b = rel_ent_coherence(rho, b)
    ok = c >= c_b - ORDER_TOL
    params = _is_bell_diagonal(rho)
    if params is not None:
        ok = ok and bd_report(params).hierarchy_ok
    return c, c_b, ok
