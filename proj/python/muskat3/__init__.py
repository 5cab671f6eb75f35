"""Three-phase Muskat interface simulator (C++ core)."""

from muskat3._core import (
    CollisionError,
    Grid1D,
    HThetaState,
    InterfaceState,
    NormReport,
    PhysicalParams,
    ResolutionLossError,
    RhsPair,
    Snapshot,
    StepperConfig,
    Trajectory,
    VelocityField,
    compute_velocity,
    diss_theta_weight,
    energy_E,
    eval_D0,
    eval_Kf_ef,
    eval_P,
    from_htheta,
    hk_gamma_norm,
    linearized_symbol,
    linf_gamma_norm,
    make_params,
    min_distance,
    periodized_pv_kernel,
    rhs_fg,
    rhs_htheta,
    rhs_twophase,
    run,
    run_kernel_verification,
    set_num_threads,
    step,
    strip_width_estimate,
    to_htheta,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
