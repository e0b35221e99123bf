"""1-D scalar conservation laws with spatially heterogeneous convex flux.

Thin wrapper over the compiled core: entropy solver, generalized
characteristics, shock tracking / emergence detection, relative-entropy shift
curves and the Hamilton-Jacobi cross-check.
"""

from ._core import (  # noqa: F401
    CharTrajectory,
    Field,
    Flux,
    Grid,
    History,
    InitialData,
    ShockCurve,
    ValueField,
    advance,
    antiderivative,
    certify_stability,
    correspondence_check,
    crossing_time,
    detect_emergence,
    dp_value,
    emergence_bound,
    entropy_flux_Q,
    eval_q,
    godunov_flux,
    integrate_char,
    integrate_shift_curves,
    legendre,
    make_field,
    relative_l2,
    rh_speed,
    simulate,
    track_shock,
)

__version__ = "0.1.0"
