import math

import numpy as np
import pytest

from qcoh import errors
from qcoh.channels import (
    EXAMPLE_BLOCH,
    KrausChannel,
    apply_channel,
    bit_flip,
    bitflip_duality_sweep,
    bitflip_example_state,
    example_input_state,
)
from qcoh.qstate import PAULI_X, Basis, DensityMatrix, bloch_to_qubit, qubit_to_bloch, random_density_matrix

from conftest import h2


def test_kraus_completeness():
    with pytest.raises(errors.IncompleteChannel):
        KrausChannel([0.9 * np.eye(2)])
    with pytest.raises(errors.IncompleteChannel):
        KrausChannel([])
    ch = KrausChannel([np.eye(3)])
    assert ch.dim == 3


def test_dimension_mismatch():
    with pytest.raises(errors.DimensionMismatch):
        apply_channel(DensityMatrix.maximally_mixed(3), bit_flip(0.5))


@pytest.mark.parametrize("p", [-0.1, 1.5, math.nan])
def test_bit_flip_range(p):
    with pytest.raises(errors.ProbabilityOutOfRange):
        bit_flip(p)


def test_bit_flip_endpoints():
    rho = random_density_matrix(2, seed=1)
    assert np.allclose(apply_channel(rho, bit_flip(1)).data, rho.data, atol=1e-15)
    assert np.allclose(apply_channel(rho, bit_flip(0)).data, PAULI_X @ rho.data @ PAULI_X, atol=1e-15)


@pytest.mark.parametrize("p", np.linspace(0, 1, 11))
def test_bit_flip_bloch_map(p, rng):
    for _ in range(5):
        v = rng.normal(size=3)
        v *= rng.uniform() / np.linalg.norm(v)
        out = qubit_to_bloch(apply_channel(bloch_to_qubit(v), bit_flip(p)))
        assert np.allclose(out, (v[0], (2 * p - 1) * v[1], (2 * p - 1) * v[2]), atol=1e-12)


def test_example_matrix_matches_channel():
    for p in np.linspace(0, 1, 21):
        direct = bitflip_example_state(p).data
        via = apply_channel(example_input_state(), bit_flip(p)).data
        assert np.max(np.abs(direct - via)) <= 1e-12


def test_example_input():
    assert example_input_state().is_pure()
    assert np.allclose(qubit_to_bloch(example_input_state()), EXAMPLE_BLOCH, atol=1e-12)


def test_channel_preserves_trace_and_hermiticity(rng):
    u, _ = np.linalg.qr(rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3)))
    # amplitude-damping-like channel on a qutrit plus a unitary
    g = 0.3
    k0 = np.diag([1, math.sqrt(1 - g), math.sqrt(1 - g)]).astype(complex)
    k1 = np.zeros((3, 3), complex)
    k1[0, 1] = math.sqrt(g)
    k2 = np.zeros((3, 3), complex)
    k2[0, 2] = math.sqrt(g)
    ch = KrausChannel([k0 @ u, k1 @ u, k2 @ u])
    for _ in range(20):
        out = apply_channel(random_density_matrix(3, seed=rng), ch).data
        assert abs(np.trace(out) - 1) <= 1e-10
        assert np.max(np.abs(out - out.conj().T)) <= 1e-10


def test_sweep_properties():
    grid = [k / 100 for k in range(101)]
    rows = bitflip_duality_sweep(grid)
    assert len(rows) == 101
    for r in rows:
        assert r.wave + r.particle + r.entanglement == pytest.approx(1.0, abs=1e-9)
    ent = [r.entanglement for r in rows]
    assert np.allclose(ent, ent[::-1], atol=1e-9)
    assert ent[0] == pytest.approx(0, abs=1e-9) and ent[-1] == pytest.approx(0, abs=1e-9)
    waves = [r.wave for r in rows]
    parts = [r.particle for r in rows]
    assert max(waves) - min(waves) > max(parts) - min(parts)


def test_sweep_entanglement_closed_form():
    # Bloch length after the flip: sqrt(1/2 + (2p-1)^2/2)
    for r in bitflip_duality_sweep([0.1, 0.25, 0.6]):
        length = math.sqrt(0.5 + (2 * r.p - 1) ** 2 / 2)
        assert r.entanglement == pytest.approx(h2((1 + length) / 2), abs=1e-12)
        z = (2 * r.p - 1) / math.sqrt(6)
        assert r.particle == pytest.approx(1 - h2((1 + z) / 2), abs=1e-12)


def test_sweep_in_other_basis():
    xb = Basis(np.linalg.eigh(PAULI_X)[1])
    rows = bitflip_duality_sweep([0.0, 1.0], xb)
    assert rows[0].particle == pytest.approx(rows[1].particle, abs=1e-12)
