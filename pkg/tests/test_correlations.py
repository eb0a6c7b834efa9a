import itertools
import math

import numpy as np
import pytest

from qcoh import errors
from qcoh.coherence import bi_coherence, computational_basis, rel_ent_coherence
from qcoh.correlations import (
    BellDiagonalParams,
    bd_report,
    bell_diagonal,
    bell_spectrum,
    discord_oracle,
    hierarchy_check,
    measurement_directions,
)
from qcoh.qstate import PAULIS, random_density_matrix

from conftest import h2

# C for c = (0.5, 0, 0): spectrum (3/8, 3/8, 1/8, 1/8)
BD_HALF_X = 0.18872187554086706


def bd_oracle_matrix(c):
    """(I + sum_j c_j sigma_j x sigma_j) / 4, built from the Pauli matrices."""
    return (np.eye(4) + sum(cj * np.kron(s, s) for cj, s in zip(c, PAULIS))) / 4


def f(c):
    return sum((1 + s * c) / 2 * math.log2(1 + s * c) for s in (1, -1) if 1 + s * c > 0)


def valid(c):
    return np.min(np.linalg.eigvalsh(bd_oracle_matrix(c))) >= -1e-12


def test_bell_state():
    rep = bd_report((1, -1, 1))
    assert (rep.bi_coherence, rep.comp_coherence, rep.discord, rep.entanglement) == pytest.approx(
        (2, 1, 1, 1), abs=1e-9
    )
    assert rep.hierarchy_ok


def test_maximally_mixed_and_classical():
    rep = bd_report((0, 0, 0))
    assert (rep.bi_coherence, rep.comp_coherence, rep.discord, rep.entanglement) == pytest.approx((0, 0, 0, 0), abs=1e-12)
    rep = bd_report((0.5, 0, 0))
    assert rep.bi_coherence == pytest.approx(BD_HALF_X, abs=1e-12)
    lam = np.array([3, 3, 1, 1]) / 8
    assert rep.bi_coherence == pytest.approx(2 + float(np.sum(lam * np.log2(lam))), abs=1e-12)
    assert rep.comp_coherence == pytest.approx(BD_HALF_X, abs=1e-12)
    assert rep.discord == pytest.approx(0.0, abs=1e-12)
    assert rep.entanglement == 0.0


def test_invalid_params():
    with pytest.raises(errors.NotPositive):
        bell_diagonal((1, 1, 1))
    with pytest.raises(errors.NotPositive):
        BellDiagonalParams(1.2, 0, 0)


def test_bell_diagonal_matches_pauli_construction():
    for c in [(0.3, -0.2, 0.1), (1, -1, 1), (-1, -1, -1), (0.5, 0.5, 0)]:
        assert np.allclose(bell_diagonal(c).data, bd_oracle_matrix(c), atol=1e-12)
        w = np.sort(np.linalg.eigvalsh(bd_oracle_matrix(c)))[::-1]
        assert np.allclose(bell_spectrum(c), w, atol=1e-12)


@pytest.mark.parametrize("c", [(0.3, -0.2, 0.1), (-0.6, -0.6, -0.6), (0.9, -0.7, 0.6), (0.2, 0.4, -0.5)])
def test_closed_forms_against_numerics(c):
    rho = bell_diagonal(c)
    rep = bd_report(c)
    assert rep.bi_coherence == pytest.approx(bi_coherence(rho), abs=1e-9)
    assert rep.comp_coherence == pytest.approx(rel_ent_coherence(rho, computational_basis(4)), abs=1e-9)
    lam = max(np.linalg.eigvalsh(bd_oracle_matrix(c)))
    ent = 1 - h2(lam) if lam >= 0.5 else 0.0
    assert rep.entanglement == pytest.approx(ent, abs=1e-12)
    assert rep.discord == pytest.approx(rep.bi_coherence - f(max(map(abs, c))), abs=1e-12)


def test_werner_family():
    for t in np.linspace(0, 1, 11):
        rep = bd_report((-t, -t, -t))
        lam = (1 + 3 * t) / 4
        assert rep.entanglement == pytest.approx(1 - h2(lam) if t >= 1 / 3 else 0.0, abs=1e-12)
        assert rep.hierarchy_ok


def test_hierarchy_on_grid():
    axis = np.linspace(-1, 1, 9)
    count = 0
    for c in itertools.product(axis, repeat=3):
        if not valid(c):
            continue
        count += 1
        rep = bd_report(c)
        assert rep.bi_coherence >= rep.comp_coherence - 1e-9
        assert rep.comp_coherence >= rep.discord - 1e-9
        assert rep.discord >= rep.entanglement - 1e-9
    assert count > 100


def test_entanglement_continuous_at_threshold():
    # lambda_max = 1/2 on the Werner line at t = 1/3
    for eps in (1e-6, 1e-8):
        assert bd_report((-(1 / 3 + eps),) * 3).entanglement < 1e-9


def test_measurement_directions():
    dirs = measurement_directions(60)
    assert np.allclose(np.linalg.norm(dirs, axis=1), 1)
    for axis in np.eye(3):
        assert np.any(np.all(np.isclose(np.abs(dirs), axis, atol=1e-12), axis=1))
    # no direction appears together with its negative
    keys = {tuple(np.round(v, 9)) for v in dirs}
    assert not any(tuple(np.round(-v, 9)) in keys for v in dirs if np.any(np.abs(v) > 1e-9))


@pytest.mark.parametrize("c", [(1, -1, 1), (0.3, -0.2, 0.1), (-0.6, -0.6, -0.6), (0.9, -0.7, 0.6), (0.5, 0, 0)])
def test_discord_oracle_small_grid(c):
    assert discord_oracle(bell_diagonal(c), grid_steps=12) == pytest.approx(bd_report(c).discord, abs=1e-6)


def test_discord_oracle_on_product_state():
    rho = random_density_matrix(2, seed=1).tensor(random_density_matrix(2, seed=2))
    d = discord_oracle(rho, grid_steps=12)
    assert d >= -1e-9
    assert d <= bi_coherence(rho) + 1e-9


def test_hierarchy_check_general_state():
    rho = random_density_matrix(4, seed=5)
    c, c_b, ok = hierarchy_check(rho)
    assert ok and c >= c_b
    c, c_b, ok = hierarchy_check(bell_diagonal((1, -1, 1)))
    assert ok and (c, c_b) == pytest.approx((2, 1), abs=1e-9)
