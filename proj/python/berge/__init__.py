"""Value functions, argmin maps, and semicontinuity certificates on grids."""

from ._core import (
    DimensionError,
    DomainError,
    ExpressionSyntaxError,
    compare_ordinals,
    eval_expression,
    ordinal_demo,
    parse_expression,
    run_problem,
    successor_ordinal,
    __version__,
)

__all__ = [
    "DimensionError",
    "DomainError",
    "ExpressionSyntaxError",
    "compare_ordinals",
    "eval_expression",
    "ordinal_demo",
    "parse_expression",
    "run_problem",
    "successor_ordinal",
    "__version__",
]
