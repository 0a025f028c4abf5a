"""kinklab: a desk-scale numerical laboratory for the fourth-order phi^4 kink."""

__version__ = "0.1.0"

from .grid import GridSpec, RealField, make_grid, spectral_derivative, integrate, norm
from .model import (
    FieldPair,
    KinkBackground,
    kink_background,
    nonlinearity_F,
    energy,
    momentum,
    energy_expansion_residual,
    vacuum_dispersion,
)
from .weights import (
    ScaleParams,
    WeightSet,
    cutoff_chi,
    zeta,
    varphi,
    scales_from_delta,
    scales_override,
    build_weight_set,
)
from .operators import (
    SchrodingerOp,
    schrodinger_operator,
    apply_L,
    smoothing_apply,
    transform_to_dual,
    eigen_lowest,
    coercivity_quotient,
    weighted_coercivity_check,
    ibp_identity_residuals,
    fourth_order_kernel,
    multiplier_norm_suite,
)
from .modulation import extract_rho, rho_dot, localized_fields
from .evolution import (
    PropagatorTable,
    make_propagator,
    linear_step,
    strang_step,
    evolve,
    picard_solve,
    vacuum_growth,
)
from .virials import (
    FunctionalConstants,
    VirialSample,
    virial_sample,
    decay_functionals,
    combined_H,
    identity_probe,
    dI_dt_identity_check,
    dJ_dt_identity_check,
    dM_dt_identity_check,
    dN_dt_identity_check,
    make_diagnostics_sampler,
)
