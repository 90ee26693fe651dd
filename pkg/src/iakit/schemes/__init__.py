from .build import (
    INBAND,
    INBAND_MIMO,
    THREE_PHASE,
    TWO_REVERSE,
    AlignmentSystem,
    MultiPhasePlan,
    SchemeError,
    SchemeSpec,
    alignment_system,
    build_alignment_system,
    build_neutralization_system,
    effective_matrix,
    effective_matrix_poly,
    multiphase_plan,
    neutralization_system,
    scheme_for,
)
from .solve import (
    DegenerateChannelError,
    NonGenericInstanceError,
    SamplerExhaustedError,
    UnsupportedSchemeError,
    UnsupportedScaleError,
    alignment_nullspace_dimension,
    compose_on_subspace,
    forced_zero_inequalities,
    inband_linear_diagnosis,
    solve_3user_linear,
    solve_inband_linear,
    solve_mimo,
    solve_rank1_closed_form,
)
from .verify import (
    AlignmentSolution,
    ConstraintCheck,
    VerificationReport,
    combining_matrices,
    interference_ratios,
    verify_alignment,
)
