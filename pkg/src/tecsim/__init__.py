"""Desk-scale simulator for topological error correction on cluster states."""

__version__ = "0.1.0"

from .cluster import (
    ClusterState,
    InteractionGraph,
    OutcomeRecord,
    StabilizerGenerator,
    build_cluster,
    carve_defect,
    dual_syndrome_check,
    interaction_graph,
    measure_all,
    measure_all_x,
    stabilizer_generators,
    surface_correlation,
)
from .complexes import (
    CellComplex,
    Chain,
    boundary,
    build_cuboid_complex,
    build_elementary_cell,
    build_g8_complex,
    complex_from_json,
    complex_to_json,
    homologically_equivalent,
    is_closed,
)
from .dense import (
    DensityModel,
    StateVector,
    build_graph_state_dense,
    expectation_observable,
    fidelity,
)
from .errors import CapacityError, SelfCheckError
from .pauli import PauliOperator, commutes, multiply, pauli_from_text, pauli_to_text
from .rng import philox_generator
from .tableau import StabilizerTableau, tableau_init
from .tec import (
    NoiseModel,
    SweepPoint,
    SyndromeVector,
    analytic_protected,
    analytic_unprotected,
    build_decode_table,
    decode_and_correct,
    exact_enumeration,
    extract_syndrome,
    monte_carlo_sweep,
    sample_errors,
    simulate_trial,
    theta_to_p,
)
from .witness import (
    MeasurementSetting,
    WitnessOperator,
    build_target_states,
    build_witness,
    fidelity_bound,
    white_noise_model,
    witness_expectation,
)

__all__ = [name for name in dir() if not name.startswith("_")]
