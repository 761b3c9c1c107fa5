"""Entanglement witnesses from non-positive maps via the inverse reduction map."""
from .densecore import HermitianOperator, hermitian_eigen, is_psd, kron, orthonormalize
from .errors import (
    ConvergenceFailure,
    DimensionMismatch,
    InvalidParams,
    InvalidRank,
    NonRealExpectation,
    NotAState,
    NotNormalized,
    NotOrthonormal,
    RankDeficient,
    WitnessKitError,
)
from .projectors import OrthoProjector, complement, from_orthonormal_vectors, product_projector, random_projector
from .superops import (
    SuperOperator,
    adjoint_map,
    apply,
    choi_matrix,
    compose,
    identity_map,
    inverse_reduction_map,
    maximally_entangled_projector,
    partial_apply,
    reduction_map,
)
from .verify import ProductState, WitnessVerdict, blockpos_min, certify_via_map, detect, product_expectation
from .witnessfam import ChoiFamilyParams, build_wtilde, build_witness, feasibility_report, shift_operator

__version__ = "0.1.0"
