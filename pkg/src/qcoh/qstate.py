"""Quantum states: density matrices, Bloch vectors, bases, purification and sampling.

Random sampling uses numpy's ``PCG64`` bit generator. An integer seed is
turned into ``numpy.random.Generator(PCG64(seed))``; independent streams for
sub-tasks are derived with ``numpy.random.SeedSequence(seed).spawn``. The
algorithm is fixed, so every sampled object is reproducible bit-for-bit per
seed on a given numpy version.
"""

from __future__ import annotations

from typing import NamedTuple, Sequence, Union

import numpy as np

from .errors import (
    BlochNormExceeded,
    DimensionMismatch,
    NotHermitian,
    NotNormalized,
    NotOrthonormal,
    NotPositive,
    NotSquare,
    NotUnitTrace,
    RankOutOfRange,
)

HERMITIAN_TOL = 1e-9
TRACE_TOL = 1e-9
PSD_TOL = 1e-9
NORM_TOL = 1e-9
UNITARY_TOL = 1e-10
BLOCH_TOL = 1e-12

SeedLike = Union[int, np.integer, np.random.Generator, np.random.SeedSequence, None]

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (PAULI_X, PAULI_Y, PAULI_Z)


def make_rng(seed: SeedLike) -> np.random.Generator:
    """Return a PCG64 generator for ``seed`` (generators pass through unchanged)."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.PCG64(seed))


def spawn_seeds(seed: int, n: int) -> list[np.random.SeedSequence]:
    """Split ``seed`` into ``n`` independent child seed sequences."""
    return np.random.SeedSequence(seed).spawn(n)


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex, copy=True)
    a.setflags(write=False)
    return a


class DensityMatrix:
    """Validated d x d Hermitian, unit-trace, positive semidefinite matrix.

    Construction checks the three invariants at tolerance 1e-9. A trace
    within tolerance of one is renormalized; anything further away raises
    :class:`NotUnitTrace`. The stored matrix is symmetrized and read-only.
    """

    __slots__ = ("_data", "_evals")

    def __init__(self, entries) -> None:
        a = np.asarray(entries, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
            raise NotSquare(f"density matrix must be square and non-empty, got shape {a.shape}")
        herm_dev = float(np.max(np.abs(a - a.conj().T)))
        if herm_dev > HERMITIAN_TOL:
            raise NotHermitian(
                f"Hermitian invariant violated: max|rho - rho^H| = {herm_dev:.3e} > {HERMITIAN_TOL:g}"
            )
        a = (a + a.conj().T) / 2
        tr = float(np.trace(a).real)
        if abs(tr - 1.0) > TRACE_TOL:
            raise NotUnitTrace(f"unit-trace invariant violated: |Tr(rho) - 1| = {abs(tr - 1.0):.3e} > {TRACE_TOL:g}")
        a = a / tr
        evals = np.linalg.eigvalsh(a)
        if evals[0] < -PSD_TOL:
            raise NotPositive(
                f"positivity invariant violated: min eigenvalue = {evals[0]:.3e} < -{PSD_TOL:g}"
            )
        self._data = _frozen(a)
        self._evals = evals
        self._evals.setflags(write=False)

    @classmethod
    def from_pure(cls, psi) -> "DensityMatrix":
        v = np.asarray(psi, dtype=complex).reshape(-1)
        return cls(np.outer(v, v.conj()) / np.vdot(v, v).real)

    @classmethod
    def maximally_mixed(cls, d: int) -> "DensityMatrix":
        return cls(np.eye(d) / d)

    @property
    def data(self) -> np.ndarray:
        return self._data

    @property
    def dim(self) -> int:
        return self._data.shape[0]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self._data, dtype=dtype)

    def __repr__(self) -> str:
        return f"DensityMatrix(dim={self.dim})"

    def eigvals(self) -> np.ndarray:
        """Raw ascending eigenvalues as computed at construction."""
        return self._evals

    def spectrum(self) -> np.ndarray:
        """Eigenvalues sorted descending, negatives clamped to 0 and renormalized."""
        lam = np.clip(self._evals[::-1], 0.0, None)
        return lam / lam.sum()

    def purity(self) -> float:
        return float(np.sum(np.abs(self._data) ** 2))

    def is_pure(self, tol: float = 1e-9) -> bool:
        return abs(self.purity() - 1.0) <= tol

    def conjugate_by(self, u) -> "DensityMatrix":
        """Return ``U rho U^dagger``."""
        u = np.asarray(u, dtype=complex)
        return DensityMatrix(u @ self._data @ u.conj().T)

    def tensor(self, other: "DensityMatrix") -> "DensityMatrix":
        return DensityMatrix(np.kron(self._data, other.data))


def new_density_matrix(entries) -> DensityMatrix:
    """Validate ``entries`` and wrap them as a :class:`DensityMatrix`."""
    return DensityMatrix(entries)


class PureState:
    """Unit-norm state vector."""

    __slots__ = ("_amps",)

    def __init__(self, amplitudes) -> None:
        v = np.asarray(amplitudes, dtype=complex).reshape(-1)
        if v.size == 0:
            raise NotNormalized("pure state must have at least one amplitude")
        norm = float(np.linalg.norm(v))
        if abs(norm - 1.0) > NORM_TOL:
            raise NotNormalized(f"unit-norm invariant violated: | ||psi|| - 1 | = {abs(norm - 1.0):.3e}")
        self._amps = _frozen(v / norm)

    @property
    def amplitudes(self) -> np.ndarray:
        return self._amps

    @property
    def dim(self) -> int:
        return self._amps.size

    def density(self) -> DensityMatrix:
        return DensityMatrix(np.outer(self._amps, self._amps.conj()))

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self._amps, dtype=dtype)

    def __repr__(self) -> str:
        return f"PureState(dim={self.dim})"


class BlochVector(NamedTuple):
    x: float
    y: float
    z: float

    def norm(self) -> float:
        return float(np.sqrt(self.x**2 + self.y**2 + self.z**2))


class Basis:
    """Ordered orthonormal basis stored as the columns of a unitary matrix.

    The matrix is also the transition matrix from the computational basis.
    """

    __slots__ = ("_u",)

    def __init__(self, vectors) -> None:
        u = np.asarray(vectors, dtype=complex)
        if u.ndim == 0:
            u = u.reshape(1, 1)
        if u.ndim != 2 or u.shape[0] != u.shape[1] or u.shape[0] == 0:
            raise NotSquare(f"basis matrix must be square and non-empty, got shape {u.shape}")
        dev = float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))))
        if dev > UNITARY_TOL:
            raise NotOrthonormal(f"orthonormality invariant violated: max|G - I| = {dev:.3e} > {UNITARY_TOL:g}")
        self._u = _frozen(u)

    @property
    def matrix(self) -> np.ndarray:
        return self._u

    @property
    def dim(self) -> int:
        return self._u.shape[0]

    def vector(self, i: int) -> np.ndarray:
        return self._u[:, i]

    def projectors(self) -> list[np.ndarray]:
        return [np.outer(self._u[:, i], self._u[:, i].conj()) for i in range(self.dim)]

    def tensor(self, other: "Basis") -> "Basis":
        return Basis(np.kron(self._u, other.matrix))

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self._u, dtype=dtype)

    def __repr__(self) -> str:
        return f"Basis(dim={self.dim})"


def bloch_to_qubit(v) -> DensityMatrix:
    """Map a Bloch vector ``(x, y, z)`` to ``(I + x X + y Y + z Z) / 2``."""
    x, y, z = (float(c) for c in v)
    n2 = x * x + y * y + z * z
    if n2 > 1.0 + BLOCH_TOL:
        raise BlochNormExceeded(f"Bloch vector norm invariant violated: |r|^2 = {n2:.12g} > 1")
    return DensityMatrix(0.5 * (np.eye(2) + x * PAULI_X + y * PAULI_Y + z * PAULI_Z))


def qubit_to_bloch(rho: DensityMatrix) -> BlochVector:
    if rho.dim != 2:
        raise DimensionMismatch(f"Bloch vector requires a qubit, got dim {rho.dim}")
    a = rho.data
    return BlochVector(2 * a[0, 1].real, -2 * a[0, 1].imag, (a[0, 0] - a[1, 1]).real)


def _canonical_eigh(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenpairs sorted by descending eigenvalue with a fixed phase convention.

    Each eigenvector's first non-negligible component is made real positive;
    ties (within 1e-12) are ordered lexicographically by eigenvector entries.
    """
    w, v = np.linalg.eigh(a)
    for k in range(v.shape[1]):
        col = v[:, k]
        j = int(np.argmax(np.abs(col) > 1e-12))
        v[:, k] = col * (abs(col[j]) / col[j])

    def key(k: int):
        col = v[:, k]
        lex = tuple(x for c in col for x in (-round(c.real, 12), -round(c.imag, 12)))
        return (-round(float(w[k]), 12),) + lex

    order = sorted(range(len(w)), key=key)
    return w[order], v[:, order]


def purify(rho: DensityMatrix) -> PureState:
    """Standard purification ``sum_k sqrt(lam_k) |psi_k> (x) |k>_R``.

    The reference system has the same dimension as ``rho``; eigenvalues are
    taken in descending order so the result is deterministic.
    """
    w, v = _canonical_eigh(rho.data)
    lam = np.clip(w, 0.0, None)
    lam = lam / lam.sum()
    d = rho.dim
    psi = np.zeros(d * d, dtype=complex)
    for k in range(d):
        if lam[k] > 0:
            psi += np.sqrt(lam[k]) * np.kron(v[:, k], np.eye(d)[k])
    return PureState(psi)


def _check_dims(dim: int, dims: Sequence[int]) -> tuple[int, ...]:
    dims = tuple(int(x) for x in dims)
    if any(x < 1 for x in dims) or int(np.prod(dims)) != dim:
        raise DimensionMismatch(f"subsystem dims {dims} do not factorize total dimension {dim}")
    return dims


def reduced_state(state: Union[DensityMatrix, PureState], dims: Sequence[int], keep: Sequence[int]) -> DensityMatrix:
    """Reduced density matrix on the subsystems listed in ``keep``.

    ``state`` is either a density matrix or a pure state on the tensor
    product with local dimensions ``dims``. Kept subsystems stay in the
    order given by ``dims``.
    """
    dims = _check_dims(state.dim, dims)
    keep = sorted(set(int(k) for k in keep))
    if any(k < 0 or k >= len(dims) for k in keep):
        raise DimensionMismatch(f"subsystem index out of range in {keep} for {len(dims)} parties")
    trace_out = [k for k in range(len(dims)) if k not in keep]
    dk = int(np.prod([dims[k] for k in keep])) if keep else 1
    if isinstance(state, PureState):
        psi = state.amplitudes.reshape(dims)
        m = np.transpose(psi, keep + trace_out).reshape(dk, -1)
        return DensityMatrix(m @ m.conj().T)
    n = len(dims)
    t = state.data.reshape(dims + dims)
    perm = keep + trace_out
    t = np.transpose(t, perm + [n + p for p in perm])
    dt = state.dim // dk
    t = t.reshape(dk, dt, dk, dt)
    return DensityMatrix(np.einsum("ajbj->ab", t))


def partial_trace(rho_ab: Union[DensityMatrix, PureState], dims: Sequence[int], keep: str = "A") -> DensityMatrix:
    """Trace out one side of a bipartite state; ``keep`` is ``"A"`` or ``"B"``."""
    if len(dims) != 2:
        raise DimensionMismatch(f"partial_trace expects two subsystem dims, got {tuple(dims)}")
    side = keep.upper()
    if side not in ("A", "B"):
        raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")
    return reduced_state(rho_ab, dims, [0] if side == "A" else [1])


def haar_random_unitary(d: int, seed: SeedLike = None) -> Basis:
    """Haar-distributed unitary via QR of a complex Ginibre matrix with phase fix."""
    if d < 1:
        raise DimensionMismatch(f"dimension must be >= 1, got {d}")
    rng = make_rng(seed)
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    diag = np.diag(r)
    q = q * (diag / np.abs(diag))
    return Basis(q)


def random_density_matrix(d: int, rank: int | None = None, seed: SeedLike = None, spectrum=None) -> DensityMatrix:
    """Random state ``U diag(p) U^dagger`` with Haar ``U``.

    ``p`` is a uniform random point on the probability simplex over ``rank``
    entries (zero elsewhere) unless an explicit ``spectrum`` is given.
    """
    rank = d if rank is None else int(rank)
    if not 1 <= rank <= d:
        raise RankOutOfRange(f"rank must satisfy 1 <= rank <= {d}, got {rank}")
    rng = make_rng(seed)
    if spectrum is None:
        p = np.zeros(d)
        p[:rank] = rng.dirichlet(np.ones(rank)) if rank > 1 else 1.0
    else:
        p = np.asarray(spectrum, dtype=float)
        if p.shape != (d,):
            raise DimensionMismatch(f"spectrum length {p.size} != dim {d}")
    u = haar_random_unitary(d, rng).matrix
    return DensityMatrix((u * p) @ u.conj().T)


def random_pure_state(d: int, seed: SeedLike = None) -> PureState:
    return PureState(haar_random_unitary(d, seed).matrix[:, 0])
