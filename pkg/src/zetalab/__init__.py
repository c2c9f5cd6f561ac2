"""Numerical experiments on moments of zeta sums sum_{n<=Y} n^(-it)."""
from .bounds import (
    EnvelopeParams,
    FitResult,
    ShiftConfig,
    corollary_rhs,
    curran_rhs,
    fit_exponent,
    g_func,
    holder_reduce,
    main_rhs,
    prop24_rhs,
)
from .dirichlet_sums import (
    Grid,
    long_range_approx,
    zsum_batch,
    zsum_direct,
    zsum_smoothed,
)
from .errors import (
    CapacityError,
    DomainError,
    FitError,
    NumericalFailure,
    PreconditionError,
    ZetaLabError,
)
from .moments import (
    MomentSpec,
    QuadParams,
    integrate_moment,
    shifted_moment,
    sigma_moment,
    window_moment,
)
from .perron import (
    PerronConfig,
    contour_decomposition,
    perron_residual,
    r1_bound,
    r2_bound,
    truncated_vertical,
)
from .results import BoundReport, EvalResult, QuadResult
from .smoothing import (
    SmoothCutoff,
    build_cutoff,
    decay_envelope_check,
    diff_mass,
    eval_cutoff_derivative,
    mellin_transform,
)
from .zeta_eval import ZetaPoint, eval_zeta, eval_zeta_one_line, hardy_z

__version__ = "0.1.0"

