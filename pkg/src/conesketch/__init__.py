"""Sketched feasibility testing for nonnegative linear systems.

Random row projections shrink `Ax = b, x >= 0` to a k-row system that
keeps feasible instances feasible and, with quantified probability,
keeps infeasible ones infeasible. The package bundles the projector
families, the probability bounds, exact LP/IP feasibility solvers for
the ground truth, cone geometry used by the bounds, instance
generators, and Monte Carlo verification of the advertised rates.
"""

from .bench import CSV_COLUMNS, ExperimentConfig, Report, emit_report, run_experiment
from .bounds import (
    BoundReport,
    cone_geometry_bound,
    convhull_bound,
    eps_threshold_cone,
    pair_distortion_bound,
    pointed_cone_bound,
    restricted_cardinality_bound,
    rlm_finite_bound,
)
from .cone import (
    ANormReport,
    ConeDistanceReport,
    SeparationCertificate,
    a_norm,
    claim_inequality_check,
    dist_to_convhull,
    mu_a_lower_bound,
    project_onto_cone,
    scp_solve,
)
from .errors import (
    CalibrationError,
    ConvergenceError,
    DegenerateInputError,
    GenerationError,
    MembershipError,
    UsageError,
)
from .gen import GenSpec, LabeledInstance, generate, generate_suite
from .instance import FeasInstance, IP, LP
from .instance_io import read_instance, write_instance
from .mc import (
    McEstimate,
    calibrate_c,
    estimate_distortion,
    estimate_infeasibility_preservation,
    estimate_kernel_avoidance,
    wilson_lower,
)
from .projector import (
    GAUSSIAN,
    RADEMACHER,
    SPARSE,
    Projector,
    apply_to_instance,
    choose_k_jll,
    choose_k_rlm,
    sample_projector,
)
from .solver import (
    FEASIBLE,
    INFEASIBLE,
    UNKNOWN,
    LpResult,
    SolverOptions,
    Verdict,
    check_farkas,
    check_witness,
    solve_ip_feasibility,
    solve_lp,
    solve_lp_feasibility,
)

__version__ = "0.1.0"

__all__ = [
    "ANormReport",
    "BoundReport",
    "CSV_COLUMNS",
    "CalibrationError",
    "ConeDistanceReport",
    "ConvergenceError",
    "DegenerateInputError",
    "ExperimentConfig",
    "FEASIBLE",
    "FeasInstance",
    "GAUSSIAN",
    "GenSpec",
    "GenerationError",
    "INFEASIBLE",
    "IP",
    "LP",
    "LabeledInstance",
    "LpResult",
    "McEstimate",
    "MembershipError",
    "Projector",
    "RADEMACHER",
    "Report",
    "SPARSE",
    "SeparationCertificate",
    "SolverOptions",
    "UNKNOWN",
    "UsageError",
    "Verdict",
    "a_norm",
    "apply_to_instance",
    "calibrate_c",
    "check_farkas",
    "check_witness",
    "choose_k_jll",
    "choose_k_rlm",
    "claim_inequality_check",
    "cone_geometry_bound",
    "convhull_bound",
    "dist_to_convhull",
    "emit_report",
    "eps_threshold_cone",
    "estimate_distortion",
    "estimate_infeasibility_preservation",
    "estimate_kernel_avoidance",
    "generate",
    "generate_suite",
    "mu_a_lower_bound",
    "pair_distortion_bound",
    "pointed_cone_bound",
    "project_onto_cone",
    "read_instance",
    "restricted_cardinality_bound",
    "rlm_finite_bound",
    "run_experiment",
    "sample_projector",
    "scp_solve",
    "solve_ip_feasibility",
    "solve_lp",
    "solve_lp_feasibility",
    "wilson_lower",
    "write_instance",
]
