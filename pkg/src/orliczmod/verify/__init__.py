"""Harness that evaluates both sides of identities and inequalities on ensembles."""

from .checks import (
    check_chirp_covariance, check_commutation, check_compact_support_equivalence,
    check_convolution_bound, check_mtilde, check_transference, check_wm_duality,
    check_wpr_membership, grid_rounded,
)
from .report import VerificationReport, drift_verdict, summary_table, write_reports
from .suite import CHECKS, DEFAULT_CONFIG, exit_status, run_suite

__all__ = [
    "VerificationReport", "check_commutation", "check_transference",
    "check_convolution_bound", "check_wm_duality", "check_mtilde",
    "check_compact_support_equivalence", "check_chirp_covariance",
    "check_wpr_membership", "grid_rounded", "run_suite", "exit_status",
    "drift_verdict", "summary_table", "write_reports", "CHECKS", "DEFAULT_CONFIG",
]
