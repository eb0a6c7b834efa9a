"""Property-suite runner behind ``qcoh verify``.

Each suite draws from its own PCG64 stream spawned from the run seed, so a
suite's outcome does not depend on which other suites ran. ``trials``
scales the sample counts: at the default of 200 every suite uses its
reference count (e.g. 1000 pairs for the coherence split identity).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import entropy
from .channels import apply_channel, bit_flip, bitflip_example_state, example_input_state
from .coherence import (
    bi_coherence,
    chain_split,
    computational_basis,
    fourier_basis,
    is_mub,
    max_coherence_over_unitaries,
    offdiagonal_norm,
    rel_ent_coherence,
    theorem1_split,
)
from .correlations import bd_report, bell_diagonal, discord_oracle
from .duality import duality_budget, multipartite_budget, particle_measure, wave_measure
from .errors import NotPositive
from .figures import fig3_rows, fig5_rows
from .qstate import (
    DensityMatrix,
    PureState,
    bloch_to_qubit,
    haar_random_unitary,
    partial_trace,
    purify,
    qubit_to_bloch,
    random_density_matrix,
    reduced_state,
)
from .thermo import K_B, Hamiltonian, coherence_to_work, extractable_work, hamiltonian_pinch

DEFAULT_SEED = 42
DEFAULT_TRIALS = 200
DEFAULT_GRID = 60

FIG3_RESIDUAL = 0.1187


@dataclass
class SuiteResult:
    name: str
    n: int
    worst_error: float
    tolerance: float
    passed: bool

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "n": self.n,
            "worst_error": self.worst_error,
            "tolerance": self.tolerance,
        }


def _result(name: str, errors, tol: float) -> SuiteResult:
    errors = [float(e) for e in errors]
    worst = max(errors) if errors else 0.0
    ok = bool(errors) and all(e <= tol for e in errors) and not any(math.isnan(e) for e in errors)
    return SuiteResult(name, len(errors), worst, tol, ok)


def _count(base: int, scale: float) -> int:
    return max(1, int(round(base * scale)))


def _random_state(rng, dims=(2, 3, 4)) -> DensityMatrix:
    d = int(rng.choice(dims))
    return random_density_matrix(d, int(rng.integers(1, d + 1)), rng)


def valid_bell_grid(points: int = 9) -> list[tuple[float, float, float]]:
    vals = np.linspace(-1.0, 1.0, points)
    out = []
    for c in itertools.product(vals, repeat=3):
        c = tuple(float(x) + 0.0 for x in c)
        try:
            bell_diagonal(c)
        except NotPositive:
            continue
        out.append(c)
    return out


# --- qstate -----------------------------------------------------------------


def suite_purify_round_trip(rng, scale, grid):
    errs = []
    for k in range(_count(200, scale)):
        rho = _random_state(rng)
        back = partial_trace(purify(rho), (rho.dim, rho.dim), keep="A")
        errs.append(np.max(np.abs(back.data - rho.data)))
    return _result("qstate.purify_round_trip", errs, 1e-9)


def suite_spectrum_invariance(rng, scale, grid):
    errs = []
    for _ in range(_count(200, scale)):
        rho = _random_state(rng, (2, 3, 4, 8))
        u = haar_random_unitary(rho.dim, rng).matrix
        errs.append(np.max(np.abs(rho.conjugate_by(u).eigvals() - rho.eigvals())))
    return _result("qstate.spectrum_unitary_invariance", errs, 1e-9)


def suite_bloch_round_trip(rng, scale, grid):
    errs = []
    axis = np.linspace(-1.0, 1.0, 20)
    for v in itertools.product(axis, repeat=3):
        if sum(c * c for c in v) <= 1.0:
            back = qubit_to_bloch(bloch_to_qubit(v))
            errs.append(max(abs(a - b) for a, b in zip(back, v)))
    return _result("qstate.bloch_round_trip", errs, 1e-12)


# --- entropy ----------------------------------------------------------------


def _doubly_stochastic(rng, n: int) -> np.ndarray:
    w = rng.dirichlet(np.ones(4))
    return sum(wi * np.eye(n)[rng.permutation(n)] for wi in w)


def suite_schur_concavity(rng, scale, grid):
    errs = []
    for k in range(_count(500, scale)):
        n = int(rng.integers(2, 6))
        x = rng.dirichlet(np.ones(n))
        y = x @ _doubly_stochastic(rng, n) if k % 2 == 0 else rng.dirichlet(np.ones(n))
        y = y / y.sum()
        if entropy.majorizes(x, y):
            errs.append(max(0.0, entropy.shannon(x) - entropy.shannon(y)))
    return _result("entropy.schur_concavity", errs, 1e-9)


def suite_uniform_minimal(rng, scale, grid):
    errs = []
    for _ in range(_count(200, scale)):
        n = int(rng.integers(1, 8))
        p = rng.dirichlet(np.ones(n))
        errs.append(0.0 if entropy.majorizes(p, np.full(n, 1.0 / n)) else 1.0)
    return _result("entropy.uniform_is_majorized", errs, 0.0)


def suite_relent_to_maximally_mixed(rng, scale, grid):
    errs = []
    for _ in range(_count(200, scale)):
        rho = _random_state(rng)
        mm = DensityMatrix.maximally_mixed(rho.dim)
        errs.append(abs(entropy.relative_entropy(rho, mm) - (math.log2(rho.dim) - entropy.von_neumann(rho))))
    return _result("entropy.relent_to_maximally_mixed", errs, 1e-9)


# --- coherence --------------------------------------------------------------


def suite_theorem1(rng, scale, grid):
    errs = []
    for _ in range(_count(1000, scale)):
        rho = _random_state(rng, (2, 3, 4, 8))
        s = theorem1_split(rho, haar_random_unitary(rho.dim, rng))
        errs.append(abs(s.total - s.basis_part - s.residual))
    return _result("coherence.split_identity", errs, 1e-9)


def suite_ordering(rng, scale, grid):
    errs = []
    for _ in range(_count(1000, scale)):
        rho = _random_state(rng, (2, 3, 4, 8))
        c_b = rel_ent_coherence(rho, haar_random_unitary(rho.dim, rng))
        errs.append(max(0.0, c_b - bi_coherence(rho), -c_b))
    return _result("coherence.ordering", errs, 1e-9)


def suite_mub_collapse(rng, scale, grid):
    errs = []
    for _ in range(_count(200, scale)):
        rho = _random_state(rng, (2, 3, 5))
        d = rho.dim
        comp, four = computational_basis(d), fourier_basis(d)
        if not is_mub(comp, four):
            errs.append(math.inf)
            continue
        rep = chain_split(rho, [comp, four])
        # residual tolerance 1e-9 rescaled onto the 1e-10 state tolerance
        errs.append(max(np.max(np.abs(rep.states[-1].data - np.eye(d) / d)), rep.residual * 0.1))
    return _result("coherence.mub_collapse", errs, 1e-10)


def suite_relent_oracle(rng, scale, grid):
    errs = []
    ts = np.round(np.arange(0, 1001) * 1e-3, 10)
    for _ in range(_count(20, scale)):
        rho = random_density_matrix(2, int(rng.integers(1, 3)), rng)
        b = haar_random_unitary(2, rng)
        u = b.matrix
        best = math.inf
        for t in ts:
            sigma = DensityMatrix((u * np.array([t, 1 - t])) @ u.conj().T)
            best = min(best, entropy.relative_entropy(rho, sigma))
        errs.append(abs(rel_ent_coherence(rho, b) - best))
    return _result("coherence.relent_grid_oracle", errs, 2e-3)


def suite_chain(rng, scale, grid):
    errs = []
    for _ in range(_count(100, scale)):
        rho = _random_state(rng, (2, 3, 4))
        bases = [haar_random_unitary(rho.dim, rng) for _ in range(5)]
        rep = chain_split(rho, bases)
        tele = abs(rep.total - sum(rep.contributions) - rep.residual)
        seq = (rep.total,) + rep.residuals
        rise = max(0.0, max(b - a for a, b in zip(seq, seq[1:])))
        # telescoping tolerance 1e-8, monotonicity 1e-9
        errs.append(max(tele * 0.1, rise))
    return _result("coherence.chain_telescoping_monotone", errs, 1e-9)


def suite_commutant(rng, scale, grid):
    errs = []
    for _ in range(_count(50, scale)):
        rho = _random_state(rng)
        mm = DensityMatrix.maximally_mixed(rho.dim)
        bases = [haar_random_unitary(rho.dim, rng) for _ in range(50)]
        witness = any(offdiagonal_norm(rho, b) > 1e-9 for b in bases)
        mm_diag = all(offdiagonal_norm(mm, b) <= 1e-12 for b in bases)
        errs.append(0.0 if (witness and mm_diag) else 1.0)
    return _result("coherence.commutant_witness", errs, 0.0)


def suite_unitary_supremum(rng, scale, grid):
    errs = []
    for _ in range(_count(100, scale)):
        rho = _random_state(rng)
        b = haar_random_unitary(rho.dim, rng)
        sup, smax = max_coherence_over_unitaries(rho, b, 200, rng)
        c = bi_coherence(rho)
        errs.append(max(abs(sup - c), smax - c))
    return _result("coherence.unitary_supremum", errs, 1e-9)


# --- duality ----------------------------------------------------------------


def suite_budget(rng, scale, grid):
    errs = []
    for _ in range(_count(500, scale)):
        rho = _random_state(rng)
        errs.append(duality_budget(rho, haar_random_unitary(rho.dim, rng)).residual_error)
    return _result("duality.budget_identity", errs, 1e-9)


def _criteria(measure, rng, scale):
    errs = []
    for _ in range(_count(200, scale)):
        d = int(rng.choice((2, 3, 4)))
        r1 = random_density_matrix(d, int(rng.integers(1, d + 1)), rng)
        r2 = random_density_matrix(d, int(rng.integers(1, d + 1)), rng)
        lam = float(rng.uniform())
        mix = DensityMatrix((1 - lam) * r1.data + lam * r2.data)
        comp = computational_basis(d)
        perm = np.eye(d)[rng.permutation(d)]
        permuted = r1.conjugate_by(perm)
        convex = measure(mix, comp) - ((1 - lam) * measure(r1, comp) + lam * measure(r2, comp))
        # permutation invariance is held to 1e-12
        errs.append(max(0.0, convex, abs(measure(permuted, comp) - measure(r1, comp)) * 1e3))
    return errs


def suite_particle(rng, scale, grid):
    return _result("duality.particle_criteria", _criteria(particle_measure, rng, scale), 1e-9)


def suite_wave(rng, scale, grid):
    return _result("duality.wave_criteria", _criteria(wave_measure, rng, scale), 1e-9)


def suite_subadditivity(rng, scale, grid):
    errs = []
    shapes = [(2, 2, 2), (2, 2, 4), (2, 3, 6), (2, 2, 3), (3, 2, 2)]
    for k in range(_count(100, scale)):
        dims = shapes[k % len(shapes)]
        psi = PureState(haar_random_unitary(int(np.prod(dims)), rng).matrix[:, 0])
        s_a = entropy.von_neumann(reduced_state(psi, dims, [0]))
        s_b = entropy.von_neumann(reduced_state(psi, dims, [1]))
        s_ab = entropy.von_neumann(reduced_state(psi, dims, [0, 1]))
        rep = multipartite_budget(psi, dims)
        err = max(0.0, s_ab - s_a - s_b, rep.max_identity_error)
        if dims[2] >= dims[0] * dims[1] and not rep.all_ok:
            err = max(err, 1.0)
        errs.append(err)
    return _result("duality.subadditivity_and_party_budgets", errs, 1e-9)


# --- correlations -----------------------------------------------------------


def suite_bd_consistency(rng, scale, grid):
    comp = computational_basis(4)
    errs = [abs(bd_report(c).comp_coherence - rel_ent_coherence(bell_diagonal(c), comp)) for c in valid_bell_grid()]
    return _result("correlations.closed_form_consistency", errs, 1e-9)


def suite_bd_hierarchy(rng, scale, grid):
    errs = [0.0 if bd_report(c).hierarchy_ok else 1.0 for c in valid_bell_grid()]
    bell = bd_report((1.0, -1.0, 1.0))
    errs.append(max(abs(a - b) for a, b in zip(
        (bell.bi_coherence, bell.comp_coherence, bell.discord, bell.entanglement), (2.0, 1.0, 1.0, 1.0))))
    return _result("correlations.hierarchy", errs, 1e-9)


def suite_discord_oracle(rng, scale, grid):
    pts = valid_bell_grid()
    n = min(len(pts), _count(50, scale))
    idx = sorted(rng.choice(len(pts), size=n, replace=False).tolist())
    errs = []
    for i in idx:
        c = pts[i]
        closed = bd_report(c).discord
        oracle = discord_oracle(bell_diagonal(c), grid)
        below = max(0.0, closed - oracle - 1e-9)
        errs.append(max(abs(oracle - closed), 1e3 * below))
    return _result("correlations.discord_oracle", errs, 1e-3)


def suite_entanglement_continuity(rng, scale, grid):
    errs = []
    for eps in (0.0, 1e-12, 1e-9):
        for lam in (0.5 - eps, 0.5 + eps):
            c = 4 * lam - 1  # c = (k, -k, k) gives lambda_max = (1 + 3k)/4
            rep = bd_report((c / 3, -c / 3, c / 3))
            errs.append(abs(rep.entanglement))
    return _result("correlations.entanglement_continuity", errs, 1e-9)


# --- channels ---------------------------------------------------------------


def suite_channel_preservation(rng, scale, grid):
    errs = []
    for _ in range(_count(200, scale)):
        rho = random_density_matrix(2, int(rng.integers(1, 3)), rng)
        p = float(rng.uniform())
        out = apply_channel(rho, bit_flip(p))
        x, y, z = qubit_to_bloch(rho)
        expect = (x, (2 * p - 1) * y, (2 * p - 1) * z)
        raw = sum(k @ rho.data @ k.conj().T for k in bit_flip(p).operators)
        errs.append(max(
            abs(np.trace(raw) - 1),
            np.max(np.abs(raw - raw.conj().T)),
            max(abs(a - b) for a, b in zip(qubit_to_bloch(out), expect)),
        ))
    return _result("channels.trace_hermiticity_bloch", errs, 1e-10)


def suite_bitflip_example(rng, scale, grid):
    errs = []
    for p in np.linspace(0, 1, 101):
        direct = bitflip_example_state(p)
        via = apply_channel(example_input_state(), bit_flip(p))
        errs.append(np.max(np.abs(direct.data - via.data)))
    return _result("channels.bitflip_example_matrix", errs, 1e-12)


def suite_fig5(rng, scale, grid):
    rows = fig5_rows()
    p = np.array([r[0] for r in rows])
    w, part, e = (np.array([r[i] for r in rows]) for i in (1, 2, 3))
    errs = list(np.abs(w + part + e - 1.0))
    errs += list(np.abs(e - e[::-1]))
    errs += [abs(e[0]), abs(e[-1])]
    mid = int(np.argmin(np.abs(p - 0.5)))
    shape_ok = (
        np.all(np.diff(w[: mid + 1]) <= 1e-12)
        and np.all(np.diff(w[mid:]) >= -1e-12)
        and int(np.argmax(e)) == mid
        and (w.max() - w.min()) > (part.max() - part.min())
    )
    errs.append(0.0 if shape_ok else 1.0)
    return _result("channels.fig5_properties", errs, 1e-9)


def suite_fig3(rng, scale, grid):
    errs = [abs(r[5] - FIG3_RESIDUAL) for r in fig3_rows()]
    errs.append(max(abs(r[1] - r[2] - r[3]) for r in fig3_rows()) * 1e5)
    return _result("coherence.fig3_anchor", errs, 5e-4)


# --- thermo -----------------------------------------------------------------


def _random_hamiltonian(rng, d: int, degenerate: bool) -> Hamiltonian:
    u = haar_random_unitary(d, rng).matrix
    e = rng.normal(size=d)
    if degenerate and d > 1:
        e[1] = e[0]
    return Hamiltonian((u * e) @ u.conj().T)


def suite_pinching(rng, scale, grid):
    errs = []
    T = 300.0
    for k in range(_count(300, scale)):
        rho = _random_state(rng)
        h = _random_hamiltonian(rng, rho.dim, degenerate=k % 2 == 1)
        sigma = hamiltonian_pinch(rho, h)
        mono = max(0.0, entropy.von_neumann(rho) - entropy.von_neumann(sigma))
        kt = K_B * T
        w = coherence_to_work(rho, h, T).value / kt
        diff = (extractable_work(rho, T).value - extractable_work(sigma, T).value) / kt
        direct = bi_coherence(rho) - bi_coherence(sigma)
        errs.append(max(mono, abs(w - diff), abs(w - direct), abs(np.trace(sigma.data) - 1)))
    return _result("thermo.pinching_and_work", errs, 1e-9)


SUITES: list[Callable] = [
    suite_purify_round_trip,
    suite_spectrum_invariance,
    suite_bloch_round_trip,
    suite_schur_concavity,
    suite_uniform_minimal,
    suite_relent_to_maximally_mixed,
    suite_theorem1,
    suite_ordering,
    suite_mub_collapse,
    suite_relent_oracle,
    suite_chain,
    suite_commutant,
    suite_unitary_supremum,
    suite_fig3,
    suite_budget,
    suite_particle,
    suite_wave,
    suite_subadditivity,
    suite_bd_consistency,
    suite_bd_hierarchy,
    suite_discord_oracle,
    suite_entanglement_continuity,
    suite_channel_preservation,
    suite_bitflip_example,
    suite_fig5,
    suite_pinching,
]


def run(seed: int = DEFAULT_SEED, trials: int = DEFAULT_TRIALS, grid: int = DEFAULT_GRID) -> dict:
    """Run every suite and return a JSON-ready summary."""
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    scale = trials / DEFAULT_TRIALS
    children = np.random.SeedSequence(seed).spawn(len(SUITES))
    results = []
    for suite, child in zip(SUITES, children):
        rng = np.random.Generator(np.random.PCG64(child))
        try:
            res = suite(rng, scale, grid)
        except Exception as exc:  # a crashing suite is a failed suite
            res = SuiteResult(suite.__name__.removeprefix("suite_"), 0, math.inf, 0.0, False)
            res.name += f" ({type(exc).__name__}: {exc})"
        results.append(res)
    return {
        "seed": seed,
        "trials": trials,
        "grid": grid,
        "passed": all(r.passed for r in results),
        "suites": [r.as_dict() for r in results],
    }
