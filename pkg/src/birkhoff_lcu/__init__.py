"""Compact Birkhoff-von Neumann decompositions for LCU block encodings."""

from .bvn import (
    Decomposition,
    Variant,
    cutoff_prune,
    decompose,
    decompose_bottleneck,
    decompose_largest_weight,
    decompose_original,
    decompose_threshold,
    find_threshold,
    reconstruct,
)
from .errors import (
    Degenerate,
    DimensionMismatch,
    InvalidInput,
    IterationLimitExceeded,
    NonConvergence,
    NotDoublyStochastic,
    NotNormalized,
    NotPowerOfTwo,
    ToleranceTooTight,
    UnsupportedShape,
)
from .lcu import (
    PauliCount,
    ResourceReport,
    pauli_coefficients,
    pauli_reconstruct,
    pauli_term_count,
    resource_report,
    success_probability,
)
from .matching import (
    MatchingResult,
    SupportGraph,
    bottleneck_perfect_matching,
    max_weight_perfect_matching,
    perfect_matching,
)
from .matrix import (
    Permutation,
    ToleranceConfig,
    frobenius_norm,
    is_doubly_stochastic,
    l1_norm,
    permutation_to_matrix,
    random_doubly_stochastic,
)
from .sinkhorn import (
    CompletionResult,
    ScalingResult,
    complete_to_doubly_stochastic,
    reconstruct_original,
    sinkhorn_scale,
)

__version__ = "0.1.0"
