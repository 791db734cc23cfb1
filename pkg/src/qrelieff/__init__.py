"""Quantum-simulated ReliefF feature selection with a classical oracle."""

from .circuits import (
    AEOutcome,
    EncodingLayout,
    GroverPlan,
    Preparation,
    amplitude_estimate,
    cmp_flag,
    encode_sample,
    fold_distribution,
    grover_iterate,
    grover_plan,
    grover_search_state,
    inverse_qft,
    modal_outcome,
    qft,
    quantum_extreme_search,
    reduced_preparation,
    swap_flag,
    swap_test,
    uniform_mod_n,
)
from .errors import (
    CapacityError,
    ConfigError,
    DataError,
    DegenerateSampleError,
    NoSolutionError,
    PostselectionError,
    QReliefFError,
)
from .pipeline import (
    PipelineConfig,
    QReliefFResult,
    SimilarityRecord,
    SimilarityTable,
    prepare_states,
    qrelieff_run,
    quantum_neighbors,
    quantum_similarity,
)
from .program3 import Program3Result, reproduce_program3
from .relieff import (
    Dataset,
    FeatureStats,
    NeighborSet,
    NormalizedDataset,
    ReliefFResult,
    RunConfig,
    diff,
    find_neighbors,
    normalize,
    relieff_run,
    select_features,
    similarity,
    update_weights,
)
from .rng import RngStream
from .statevector import (
    GateOp,
    StateVector,
    basis_state,
    h,
    inner_product,
    phase,
    ry,
    swap,
    x,
    zero_state,
)

__version__ = "0.1.0"
