"""entireops: Borel/Polya transforms, contour right inverses and criterion checks
for sequences of convolution operators ``Phi_n(D)`` on entire functions."""

__version__ = "0.1.0"

from .borel import (
    BorelRational,
    QuadratureSpec,
    QuadResult,
    borel,
    borel_eval,
    polya_reconstruct,
    radius_invariance_check,
    right_inverse_eval,
    right_inverse_taylor,
    transfer_apply,
)
from .circle import circle_extrema, growth_metrics
from .convergence import (
    ConvergenceLedger,
    HittingDensityReport,
    bound_condition_i,
    bound_condition_ii,
    bound_condition_iii,
    disk_grid,
    hitting_density,
    orbit_apply,
    verify_condition_iv,
)
from .criterion import (
    Annulus,
    BoundMatrices,
    CriterionReport,
    RatioStats,
    Verdict,
    annulus_zero_free,
    check_condition_a,
    check_condition_e,
    check_criterion,
    check_power_sequence,
    compute_bound_matrices,
    radius_search,
    ratio_stats,
    winding_number,
)
from .errors import (
    ConfigError,
    DegreeCapError,
    EntireOpsError,
    NearZeroDivisor,
    PhaseStepTooLarge,
    PoleError,
    ZeroOnContour,
    ZeroScalar,
)
from .expr import (
    Z,
    Const,
    Exp,
    FunctionExpr,
    N,
    Seq,
    evaluate,
    log_evaluate,
    taylor_coeffs,
)
from .operators import OperatorSequence, apply_operator, commutation_check, translation
from .taylor import DEGREE_CAP, TaylorPoly
