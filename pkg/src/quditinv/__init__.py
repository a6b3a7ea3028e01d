"""Invariant polynomials on k qudits: exact dimensions and numerical invariants."""
from .dimensions import (
    AsymptoticEstimate,
    IsotypicDecomposition,
    asymptotic_estimate,
    dim_invariants,
    dim_sign_isotypic,
    dim_skg_invariants,
    qubit_quartic_dim,
    sk_isotypic_decomposition,
)
from .errors import (
    ArgumentError,
    CapacityError,
    GeneratorError,
    IntegrityError,
    QuditInvError,
    UnsupportedParityError,
)
from .polynomials import (
    CANONICAL_PAIRINGS,
    InvariantPolynomial,
    Pairing,
    cayley_hyperdeterminant,
    circ_product,
    delta_determinant,
    det_power,
    generalized_determinant,
    generalized_determinant_tensor,
    polynomial_from_label,
)
from .symgroup import (
    Partition,
    character,
    class_size,
    hook_dimension,
    partitions_of,
    power_cycle_type,
    rectangular,
)
from .tensor import (
    CovariantTensor,
    LocalGroupElement,
    TensorState,
    basis_diagonal_state,
    decomposable,
    evaluate,
    local_action,
    permute_factors,
    random_rank_at_most,
    tensor_product,
)
from .verify import InvarianceReport, check_invariance, check_sk_symmetry, random_special_linear, rank_vanishing_demo

__version__ = "0.1.0"
