"""Basis-independent quantum coherence and its decompositions.

The basis-independent coherence ``C(rho) = log2 d - S(rho)`` is the relative
entropy of ``rho`` to the maximally mixed state. This package computes it
alongside the usual basis-dependent relative entropy of coherence, the
wave / particle / entanglement budget, Bell-diagonal correlation closed forms
and a few thermodynamic corollaries.
"""

from .channels import KrausChannel, apply_channel, bit_flip, bitflip_duality_sweep, bitflip_example_state
from .coherence import (
    ChainReport,
    CoherenceSplit,
    bi_coherence,
    chain_split,
    computational_basis,
    dephase,
    fourier_basis,
    is_bi_incoherent,
    is_mub,
    max_coherence_over_unitaries,
    max_coherent_mixed_state,
    qubit_closed_forms,
    rel_ent_coherence,
    theorem1_split,
)
from .correlations import BellDiagonalParams, CorrelationReport, bd_report, bell_diagonal, bell_spectrum, discord_oracle, hierarchy_check
from .duality import DualityBudget, duality_budget, multipartite_budget, normalized_tradeoff, particle_measure, wave_measure
from .entropy import binary_entropy, majorizes, relative_entropy, shannon, von_neumann
from .errors import QCohError
from .qstate import (
    Basis,
    BlochVector,
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
from .thermo import Hamiltonian, WorkResult, coherence_to_work, distillable_pure_count, extractable_work, hamiltonian_pinch

__version__ = "0.1.0"
