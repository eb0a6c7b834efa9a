"""Wave-particle duality from the coherence split.

For a state ``rho`` measured in basis ``B``:

* particle  ``P = log2 d - S(Phi^B(rho))``, the coherence of the diagonal part;
* wave      ``W = C(rho) - C(Phi^B(rho))``, which equals ``C^B(rho)``;
* entanglement with a purifying reference system ``E = S(rho)``.

These three always add up to ``log2 d``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from . import entropy
from .coherence import _clamp, bi_coherence, computational_basis, dephase
from .errors import DimensionMismatch, MaximallyMixedInput, NotPure
from .qstate import Basis, DensityMatrix, PureState, purify, reduced_state

EQ_TOL = 1e-9


def _check(rho: DensityMatrix, b: Basis) -> None:
    if rho.dim != b.dim:
        raise DimensionMismatch(f"state dim {rho.dim} != basis dim {b.dim}")


@dataclass(frozen=True)
class DualityBudget:
    wave: float
    particle: float
    entanglement: float
    total: float

    def as_dict(self) -> dict:
        return {
            "wave": self.wave,
            "particle": self.particle,
            "entanglement": self.entanglement,
            "total": self.total,
        }

    @property
    def residual_error(self) -> float:
        return abs(self.wave + self.particle + self.entanglement - self.total)


def particle_measure(rho: DensityMatrix, b: Basis) -> float:
    _check(rho, b)
    return _clamp(math.log2(rho.dim) - entropy.von_neumann(dephase(rho, b)))


def wave_measure(rho: DensityMatrix, b: Basis) -> float:
    _check(rho, b)
    return _clamp(bi_coherence(rho) - bi_coherence(dephase(rho, b)))


def normalized_tradeoff(rho: DensityMatrix, b: Basis) -> tuple[float, float]:
    """Particle and wave measures divided by ``C(rho)``; they sum to one.

    Raises :class:`MaximallyMixedInput` when ``C(rho) <= 1e-9``, where the
    ratio is undefined.
    """
    _check(rho, b)
    c = bi_coherence(rho)
    if c <= EQ_TOL:
        raise MaximallyMixedInput(
            f"normalized trade-off undefined for the maximally mixed state: C(rho) = {c:.3e}"
        )
    return particle_measure(rho, b) / c, wave_measure(rho, b) / c


def purification_entanglement(rho: DensityMatrix) -> float:
    """Entropy of the system side of the explicit purification of ``rho``."""
    psi = purify(rho)
    return entropy.von_neumann(reduced_state(psi, (rho.dim, rho.dim), [0]))


def duality_budget(rho: DensityMatrix, b: Basis) -> DualityBudget:
    _check(rho, b)
    return DualityBudget(
        wave=wave_measure(rho, b),
        particle=particle_measure(rho, b),
        entanglement=_clamp(purification_entanglement(rho)),
        total=math.log2(rho.dim),
    )


@dataclass(frozen=True)
class PartyBudget:
    """Budget of one subsystem (or group) of a pure global state."""

    name: str
    dim: int
    wave: float
    particle: float
    entanglement: float

    @property
    def wave_plus_particle(self) -> float:
        return self.wave + self.particle

    @property
    def identity_error(self) -> float:
        return abs(self.wave + self.particle + self.entanglement - math.log2(self.dim))

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "dim": self.dim,
            "wave": self.wave,
            "particle": self.particle,
            "entanglement": self.entanglement,
            "identity_error": self.identity_error,
        }


@dataclass(frozen=True)
class MultipartiteReport:
    """Per-party budgets of a pure global state plus the derived relations.

    ``relations`` maps a relation name to ``(lhs, rhs, holds)``. Inequalities
    hold with 1e-9 slack, equalities within 1e-9. ``equality_expected`` is
    true for three parties when ``d_C = d_A d_B``.
    """

    parties: tuple[PartyBudget, ...]
    relations: dict
    equality_expected: bool

    def party(self, name: str) -> PartyBudget:
        for p in self.parties:
            if p.name == name:
                return p
        raise KeyError(name)

    @property
    def max_identity_error(self) -> float:
        return max(p.identity_error for p in self.parties)

    @property
    def all_ok(self) -> bool:
        return self.max_identity_error <= EQ_TOL and all(r[2] for r in self.relations.values())

    def as_dict(self) -> dict:
        return {
            "parties": [p.as_dict() for p in self.parties],
            "relations": {k: {"lhs": v[0], "rhs": v[1], "holds": v[2]} for k, v in self.relations.items()},
            "equality_expected": self.equality_expected,
        }


def _as_pure(state: Union[PureState, DensityMatrix]) -> PureState:
    if isinstance(state, PureState):
        return state
    purity = state.purity()
    if abs(purity - 1.0) > EQ_TOL:
        raise NotPure(f"global state must be pure: |Tr(rho^2) - 1| = {abs(purity - 1.0):.3e}")
    w, v = np.linalg.eigh(state.data)
    return PureState(v[:, -1])


def _party(name: str, psi: PureState, dims, keep, b: Basis) -> PartyBudget:
    rho = reduced_state(psi, dims, keep)
    _check(rho, b)
    return PartyBudget(
        name=name,
        dim=rho.dim,
        wave=wave_measure(rho, b),
        particle=particle_measure(rho, b),
        entanglement=_clamp(entropy.von_neumann(rho)),
    )


def multipartite_budget(
    state: Union[PureState, DensityMatrix],
    dims: Sequence[int],
    bases: Sequence[Basis] | None = None,
) -> MultipartiteReport:
    """Duality budgets of each party of a pure bipartite or tripartite state.

    Every entanglement term is the entropy of the party's reduced state,
    i.e. the entanglement across that party's cut of the pure global state.
    ``bases`` gives one basis per subsystem (computational by default); the
    AB group uses their tensor product.

    Relations checked for two parties ``(A, B)``:
      ``ab_shift``: ``log d_A + W_B + P_B = log d_B + W_A + P_A``;
      ``ab_equal``: ``W_A + P_A = W_B + P_B`` (only when ``d_A = d_B``).
    For three parties ``(A, B, C)``:
      ``a_plus_b_le_c``: ``W_A+P_A+W_B+P_B <= W_C+P_C``;
      ``ab_le_c``: ``W_AB+P_AB <= W_C+P_C``;
    both of which rely on ``d_C >= d_A d_B``.
    """
    psi = _as_pure(state)
    dims = tuple(int(x) for x in dims)
    if len(dims) not in (2, 3):
        raise DimensionMismatch(f"expected 2 or 3 subsystem dims, got {dims}")
    if int(np.prod(dims)) != psi.dim:
        raise DimensionMismatch(f"subsystem dims {dims} do not factorize total dimension {psi.dim}")
    if bases is None:
        bases = [computational_basis(d) for d in dims]
    bases = list(bases)
    if len(bases) != len(dims):
        raise DimensionMismatch(f"need one basis per subsystem: {len(bases)} bases for {len(dims)} parties")

    relations: dict = {}
    if len(dims) == 2:
        a = _party("A", psi, dims, [0], bases[0])
        b = _party("B", psi, dims, [1], bases[1])
        parties = (a, b)
        lhs = math.log2(a.dim) + b.wave_plus_particle
        rhs = math.log2(b.dim) + a.wave_plus_particle
        relations["ab_shift"] = (lhs, rhs, abs(lhs - rhs) <= EQ_TOL)
        if a.dim == b.dim:
            relations["ab_equal"] = (
                a.wave_plus_particle,
                b.wave_plus_particle,
                abs(a.wave_plus_particle - b.wave_plus_particle) <= EQ_TOL,
            )
        return MultipartiteReport(parties=parties, relations=relations, equality_expected=a.dim == b.dim)

    a = _party("A", psi, dims, [0], bases[0])
    b = _party("B", psi, dims, [1], bases[1])
    c = _party("C", psi, dims, [2], bases[2])
    ab = _party("AB", psi, dims, [0, 1], bases[0].tensor(bases[1]))
    lhs1 = a.wave_plus_particle + b.wave_plus_particle
    relations["a_plus_b_le_c"] = (lhs1, c.wave_plus_particle, lhs1 <= c.wave_plus_particle + EQ_TOL)
    relations["ab_le_c"] = (ab.wave_plus_particle, c.wave_plus_particle, ab.wave_plus_particle <= c.wave_plus_particle + EQ_TOL)
    equality = dims[2] == dims[0] * dims[1]
    if equality:
        relations["ab_eq_c"] = (
            ab.wave_plus_particle,
            c.wave_plus_particle,
            abs(ab.wave_plus_particle - c.wave_plus_particle) <= EQ_TOL,
        )
    return MultipartiteReport(parties=(a, b, c, ab), relations=relations, equality_expected=equality)
