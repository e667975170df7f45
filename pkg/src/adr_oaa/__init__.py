"""Matrix-level simulation of amplitude amplification on block-encoded ADR time steps."""

from .adr import (
    AdrParams,
    CflError,
    PhysicalParams,
    advection_only_estimate,
    build_adr_matrix,
    classical_step,
    courant_from_physical,
    lambdas,
    scale_time,
)
from .amplification import (
    ReflectionSpec,
    StrategyReport,
    appendix_expansion,
    approx_reflection_run,
    build_S,
    modstate_oracle,
    oaa_run,
    pi3_run,
    true_orthogonal_state,
    w_variant_run,
)
from .encoding import (
    BlockEncoding,
    PostSelection,
    apply,
    circulant_lcu_encode,
    dilation_encode,
    project_success,
    theta_of,
)
from .metrics import d_max, euclidean_distance, eta, f_min, fidelity, fit_c, model_predict

__version__ = "0.1.0"
