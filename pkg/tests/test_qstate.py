import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcoh import errors
from qcoh.entropy import von_neumann
from qcoh.qstate import (
    Basis,
    DensityMatrix,
    PureState,
    bloch_to_qubit,
    haar_random_unitary,
    new_density_matrix,
    partial_trace,
    purify,
    qubit_to_bloch,
    random_density_matrix,
    reduced_state,
)

from conftest import h2


def test_new_density_matrix_valid():
    rho = new_density_matrix(np.eye(2) / 2)
    assert rho.dim == 2
    pure = new_density_matrix(np.diag([1.0, 0.0]))
    assert pure.is_pure()


@pytest.mark.parametrize(
    "entries, exc",
    [
        (np.diag([0.9, 0.0]), errors.NotUnitTrace),
        (np.array([[0.5, 0.1], [0.0, 0.5]]), errors.NotHermitian),
        (np.diag([1.2, -0.2]), errors.NotPositive),
        (np.ones((2, 3)) / 2, errors.NotSquare),
    ],
)
def test_new_density_matrix_rejects(entries, exc):
    with pytest.raises(exc) as info:
        new_density_matrix(entries)
    assert "invariant" in str(info.value) or "square" in str(info.value)


def test_error_names_magnitude():
    with pytest.raises(errors.NotUnitTrace, match=r"1\.000e-01"):
        new_density_matrix(np.diag([0.9, 0.0]))


def test_trace_renormalized_within_tolerance():
    rho = new_density_matrix(np.diag([0.5 + 4e-10, 0.5]))
    assert abs(np.trace(rho.data).real - 1) < 1e-15


def test_small_negative_eigenvalue_clamped():
    rho = new_density_matrix(np.diag([1 + 5e-10, -5e-10]))
    assert np.all(rho.spectrum() >= 0)
    assert von_neumann(rho) == 0.0


def test_state_is_read_only():
    rho = new_density_matrix(np.eye(2) / 2)
    with pytest.raises(ValueError):
        rho.data[0, 0] = 1


def test_bloch_examples():
    assert np.allclose(bloch_to_qubit((0, 0, 0)).data, np.eye(2) / 2)
    assert np.allclose(bloch_to_qubit((0, 0, 1)).data, np.diag([1, 0]))
    rho = bloch_to_qubit((1 / np.sqrt(2), 1 / np.sqrt(3), 1 / np.sqrt(6)))
    assert rho.data[0, 1] == pytest.approx(1 / (2 * np.sqrt(2)) - 1j / (2 * np.sqrt(3)), abs=1e-15)
    assert rho.is_pure()


def test_bloch_norm_exceeded():
    with pytest.raises(errors.BlochNormExceeded):
        bloch_to_qubit((1, 1, 0))


def test_bloch_round_trip_grid():
    axis = np.linspace(-1, 1, 20)
    worst = 0.0
    for v in itertools.product(axis, repeat=3):
        if sum(c * c for c in v) <= 1:
            worst = max(worst, max(abs(a - b) for a, b in zip(qubit_to_bloch(bloch_to_qubit(v)), v)))
    assert worst <= 1e-12


@settings(max_examples=200, deadline=None)
@given(st.floats(-1, 1), st.floats(-1, 1), st.floats(-1, 1))
def test_bloch_round_trip_property(x, y, z):
    n = np.sqrt(x * x + y * y + z * z)
    if n > 1:
        x, y, z = x / n, y / n, z / n
    back = qubit_to_bloch(bloch_to_qubit((x, y, z)))
    assert np.allclose(back, (x, y, z), atol=1e-12)


def test_purify_pure_state():
    psi = purify(new_density_matrix(np.diag([1.0, 0.0])))
    assert np.allclose(psi.amplitudes, [1, 0, 0, 0])


def test_purify_maximally_mixed_is_maximally_entangled():
    psi = purify(DensityMatrix.maximally_mixed(2))
    schmidt = np.linalg.svd(psi.amplitudes.reshape(2, 2), compute_uv=False)
    assert np.allclose(schmidt, [1 / np.sqrt(2)] * 2, atol=1e-12)


def test_purify_schmidt_coefficients():
    psi = purify(new_density_matrix(np.diag([0.7, 0.3])))
    schmidt = np.linalg.svd(psi.amplitudes.reshape(2, 2), compute_uv=False)
    assert np.allclose(schmidt, [np.sqrt(0.7), np.sqrt(0.3)], atol=1e-12)
    reduced = partial_trace(psi, (2, 2), keep="A")
    assert von_neumann(reduced) == pytest.approx(h2(0.7), abs=1e-9)


def test_purify_is_deterministic_for_degenerate_spectrum():
    rho = random_density_matrix(3, seed=0, spectrum=[0.4, 0.4, 0.2])
    assert np.array_equal(purify(rho).amplitudes, purify(rho).amplitudes)


@pytest.mark.parametrize("d", [2, 3, 4])
def test_purify_round_trip(d):
    worst = 0.0
    for seed in range(67):
        rho = random_density_matrix(d, 1 + seed % d, seed)
        psi = purify(rho)
        back = partial_trace(psi, (d, d), keep="A")
        worst = max(worst, np.max(np.abs(back.data - rho.data)))
        assert von_neumann(partial_trace(psi, (d, d), keep="B")) == pytest.approx(von_neumann(rho), abs=1e-9)
    assert worst <= 1e-9


def test_partial_trace_bell_state():
    bell = PureState(np.array([1, 0, 0, 1]) / np.sqrt(2))
    assert np.allclose(partial_trace(bell, (2, 2), "A").data, np.eye(2) / 2)
    assert np.allclose(partial_trace(bell.density(), (2, 2), "B").data, np.eye(2) / 2)


def test_partial_trace_product():
    rho = random_density_matrix(2, seed=1)
    sigma = random_density_matrix(3, seed=2)
    prod = rho.tensor(sigma)
    assert np.allclose(partial_trace(prod, (2, 3), "A").data, rho.data, atol=1e-12)
    assert np.allclose(partial_trace(prod, (2, 3), "B").data, sigma.data, atol=1e-12)


def test_partial_trace_dimension_mismatch():
    with pytest.raises(errors.DimensionMismatch):
        partial_trace(DensityMatrix.maximally_mixed(4), (3, 2))


def test_reduced_state_matches_density_and_vector_paths(rng):
    psi = PureState(haar_random_unitary(12, rng).matrix[:, 0])
    for keep in ([0], [1], [2], [0, 2], [1, 2]):
        a = reduced_state(psi, (2, 3, 2), keep)
        b = reduced_state(psi.density(), (2, 3, 2), keep)
        assert np.allclose(a.data, b.data, atol=1e-12)


def test_haar_unitary_properties():
    u1 = haar_random_unitary(1, seed=3).matrix
    assert abs(abs(u1[0, 0]) - 1) < 1e-12
    u = haar_random_unitary(4, seed=7).matrix
    assert np.max(np.abs(u.conj().T @ u - np.eye(4))) <= 1e-10
    assert np.array_equal(u, haar_random_unitary(4, seed=7).matrix)
    assert not np.array_equal(u, haar_random_unitary(4, seed=8).matrix)


def test_haar_first_moment(rng):
    # E|U_00|^2 = 1/d for Haar measure
    vals = [abs(haar_random_unitary(3, rng).matrix[0, 0]) ** 2 for _ in range(4000)]
    assert np.mean(vals) == pytest.approx(1 / 3, abs=0.02)


def test_basis_rejects_non_orthonormal():
    with pytest.raises(errors.NotOrthonormal):
        Basis([[1, 1], [0, 1]])


def test_random_density_matrix_rank():
    pure = random_density_matrix(4, 1, seed=5)
    assert von_neumann(pure) == pytest.approx(0.0, abs=1e-9)
    mm = random_density_matrix(3, 3, seed=5, spectrum=[1 / 3] * 3)
    assert np.allclose(mm.data, np.eye(3) / 3, atol=1e-12)
    r2 = random_density_matrix(3, 2, seed=1)
    w = np.linalg.eigvalsh(r2.data)
    assert np.sum(w > 1e-12) == 2
    assert w.sum() == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(errors.RankOutOfRange):
        random_density_matrix(3, 4, seed=1)
    with pytest.raises(errors.RankOutOfRange):
        random_density_matrix(3, 0, seed=1)


def test_spectrum_unitary_invariance(rng):
    for _ in range(200):
        d = int(rng.integers(2, 6))
        rho = random_density_matrix(d, int(rng.integers(1, d + 1)), rng)
        u = haar_random_unitary(d, rng).matrix
        assert np.allclose(rho.conjugate_by(u).eigvals(), rho.eigvals(), atol=1e-9)
