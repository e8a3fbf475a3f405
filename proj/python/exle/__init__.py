from ._core import (
    BudgetError,
    ConfigError,
    DiagnosticError,
    DomainError,
    ExponentPair,
    NumericalError,
    RootBracket,
    ThresholdReport,
    check_polynomial_identities,
    continue_ray,
    eval_H,
    eval_L,
    eval_t0,
    hausdorff_bound,
    hausdorff_bound_proof_form,
    largest_root_L,
    scaling_exponents,
    scan_stability_equivalence,
    singular_profile,
    solve_minimal,
    stability_product,
    threshold_report,
)

__all__ = [
    "BudgetError",
    "ConfigError",
    "DiagnosticError",
    "DomainError",
    "ExponentPair",
    "NumericalError",
    "RootBracket",
    "ThresholdReport",
    "check_polynomial_identities",
    "continue_ray",
    "eval_H",
    "eval_L",
    "eval_t0",
    "hausdorff_bound",
    "hausdorff_bound_proof_form",
    "largest_root_L",
    "scaling_exponents",
    "scan_stability_equivalence",
    "singular_profile",
    "solve_minimal",
    "stability_product",
    "threshold_report",
]
