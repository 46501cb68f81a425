"""Spectral laboratory for deformed random matrices.

Thin python layer over the compiled core: seeded ensemble sampling,
deterministic eigenvalue limits and deviation-bound evaluation, epsilon-net
construction, approximate eigenvectors, spike estimation, and Monte Carlo
tail verification.
"""

from ._rmtlab import (
    ApproxEvReport,
    DeterministicLimit,
    EpsilonNet,
    SpikeEstimate,
    TailReport,
    TailRow,
    bound_rhs,
    certify_coverage,
    chi_square_tail_check,
    eig_sym,
    estimate_all,
    goe_approx_ev,
    heteroscedastic_normalize,
    interlacing_audit,
    invert_spike,
    lambda_theta,
    lambda_theta_c,
    lift_to_sphere,
    mp_stieltjes,
    net_ball,
    net_interval,
    resolvent_quadratics,
    rho,
    run_tail,
    sample,
    semicircle_stieltjes,
    singular_values,
    spm_approx_ev,
)

__version__ = "0.1.0"

__all__ = [
    "ApproxEvReport",
    "DeterministicLimit",
    "EpsilonNet",
    "SpikeEstimate",
    "TailReport",
    "TailRow",
    "bound_rhs",
    "certify_coverage",
    "chi_square_tail_check",
    "eig_sym",
    "estimate_all",
    "goe_approx_ev",
    "heteroscedastic_normalize",
    "interlacing_audit",
    "invert_spike",
    "lambda_theta",
    "lambda_theta_c",
    "lift_to_sphere",
    "mp_stieltjes",
    "net_ball",
    "net_interval",
    "resolvent_quadratics",
    "rho",
    "run_tail",
    "sample",
    "semicircle_stieltjes",
    "singular_values",
    "spm_approx_ev",
]
