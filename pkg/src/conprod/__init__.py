"""Hyperbolic gamma function, relativistic and nonrelativistic conical functions,
their product formulas, and a verification toolkit."""

__version__ = "0.1.0"

from .params import HyperbolicParams
from .hypergamma import gamma_h, log_gamma, log_gamma_h, c_fn, w_fn, u_fn, phi_fn, pole_zero_map
from .quadrature import QuadratureSpec, EvalResult, Envelope, integrate_real_line, integrate_half_line
from .relativistic import j_fn, j_batch, r_fn, e_fn, f_kernel, f_matrix, kernel_K, s2_kernel, mu_fn
from .conical import conical_f_hyp, conical_f_gamma, conical_f_series, conical_f_batch, f0_kernel, mu0_fn
from .identities import run_identity
from .nonrel_identities import run_nonrel_identity
from .operators import assemble_operator, build_grid, wedge_grid, refinement_study
from .limits import SweepSpec, limit_sweep, audit_bound, cg_fn, p_fn

__all__ = [
    "HyperbolicParams",
    "gamma_h",
    "log_gamma",
    "log_gamma_h",
    "c_fn",
    "w_fn",
    "u_fn",
    "phi_fn",
    "pole_zero_map",
    "QuadratureSpec",
    "EvalResult",
    "Envelope",
    "integrate_real_line",
    "integrate_half_line",
    "j_fn",
    "j_batch",
    "r_fn",
    "e_fn",
    "f_kernel",
    "f_matrix",
    "kernel_K",
    "s2_kernel",
    "mu_fn",
    "conical_f_hyp",
    "conical_f_gamma",
    "conical_f_series",
    "conical_f_batch",
    "f0_kernel",
    "mu0_fn",
    "run_identity",
    "run_nonrel_identity",
    "assemble_operator",
    "build_grid",
    "wedge_grid",
    "refinement_study",
    "SweepSpec",
    "limit_sweep",
    "audit_bound",
    "cg_fn",
    "p_fn",
]
