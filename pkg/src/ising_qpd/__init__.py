"""Exact 1D Ising thermodynamics and the EWL quantum prisoner's dilemma mapped onto it."""
from ._kernels import DEFAULT_BACKEND as KERNEL_BACKEND
from .errors import DomainError, InternalConsistencyError
from .ising import (
    FiniteChainResult,
    IsingParams,
    SpectralData,
    build_transfer_matrix,
    correlation,
    enumerate_chain,
    finite_chain_exact,
    free_energy_per_spin,
    magnetization,
    spectral_decomposition,
)
from .mapping import (
    CriticalPoints,
    IsingEquivalent,
    PhaseLabel,
    Restriction,
    SymmetricGame2,
    critical_points,
    game_correlation,
    game_magnetization,
    game_params,
    pure_nash,
    restricted_game,
    to_ising,
    zero_T_phase,
)
from .montecarlo import McConfig, McEstimate, McResult, metropolis_run
from .quantum_game import (
    EwlTable,
    General,
    PDPayoffs,
    Strategy,
    TwoQubitState,
    entangling_gate,
    ewl_payoff_table,
    expected_payoffs,
    play_ewl,
    strategy_unitary,
)

__version__ = "0.1.0"
