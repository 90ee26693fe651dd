from .threephase import (
    PowerConfig,
    RateReport,
    RateSimError,
    alignment_residual,
    apply_power_constraints,
    channel_arrays,
    combining_lambdas,
    effective_b,
    effective_sinr,
    mc_noise_variance,
    noise_variances,
    phase_powers,
    scale_to_power,
    sinr_vector,
    solution_vectors,
    vectors_to_solution,
)
from .optimize import (
    minor_pair,
    newton_to_locus,
    norm_rows_float,
    optimize_sum_rate,
    time_sharing_rate,
)
from .curves import (
    CurveReport,
    curves_to_csv,
    dof_slope,
    monte_carlo_curves,
    parse_snr_grid,
)
