"""Simulation laboratory for the driven cluster spin chain and its interacting quantum walk."""

__version__ = "0.1.0"

from ._kernels import BACKEND
from .analytic import (
    TimeSeries,
    global_entanglement_q0,
    loschmidt_rate,
    loschmidt_series,
    mode_occupation,
    q0_map,
    q0_series,
)
from .errors import (
    ConfigError,
    DegenerateTopologyError,
    FclError,
    InvalidArgumentError,
    InvalidStateError,
    ResourceLimitError,
    SingularModeError,
)
from .momentum import (
    ModeData,
    ModeDiagonalization,
    ModelParams,
    MomentumGrid,
    build_grid,
    chiral_g,
    diagonalize_mode,
    mode_data,
    winding_closed_form,
    winding_number,
)
from .qinfo import (
    DensityMatrix,
    SiteBloch,
    coin_marginal,
    entropy_spin_marginal,
    half_chain_entropy,
    magnetization,
    negativity,
    partial_transpose,
    particle_marginal,
    peres_loschmidt,
    position_marginal,
    q_mixed,
    reduced_single_site,
    reduced_subset,
    tangle,
    von_neumann_entropy,
)
from .config import EXPERIMENTS, ExperimentConfig, load_config, validate_config
from .experiments import RunResult, oracle_check, run
from .snapshot import load_spin, load_walk, save_spin, save_walk
from .table import ResultTable, read_csv
from .spin import (
    SpinState,
    apply_floquet,
    loschmidt_rate_exact,
    make_cluster_state,
    make_plus_state,
    overlap,
    parity_expectation,
    pauli_expectation,
    q_pure,
)
from .walk import (
    WalkParams,
    WalkState,
    apply_coin_rotation,
    apply_exchange,
    apply_shift,
    apply_spin_floquet,
    make_initial,
    particle_distribution,
    spin_parity_expectation,
    step,
)
