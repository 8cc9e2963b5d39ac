"""Signed discrepancy of +/-1 boards under line switches."""

from gbk._core import (
    BudgetError,
    Instance,
    ValidationError,
    build_remove_ii,
    build_remove_iii,
    chernoff_bound,
    config_grid,
    evaluate,
    expected_abs_sum,
    gamma,
    instance_from_json,
    make_instance,
    minimax,
    parse_config,
    random_config,
    run_trials,
    solve,
    theorem_constant,
    theorem_constants,
)

__all__ = [
    "BudgetError",
    "Instance",
    "ValidationError",
    "build_remove_ii",
    "build_remove_iii",
    "chernoff_bound",
    "config_grid",
    "evaluate",
    "expected_abs_sum",
    "gamma",
    "instance_from_json",
    "make_instance",
    "minimax",
    "parse_config",
    "random_config",
    "run_trials",
    "solve",
    "theorem_constant",
    "theorem_constants",
]
