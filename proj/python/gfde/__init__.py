"""Python bindings for the gfde solver."""

from ._gfde import (
    BallEscapeError,
    ChebFun,
    ConditionError,
    DomainError,
    EvalError,
    Expr,
    GfdeError,
    InputError,
    ParseError,
    Problem,
    ResolutionError,
    check_conditions,
    check_ek,
    gevrey,
    gevrey_order_estimate,
    residual,
    solve,
    validate,
)

__all__ = [
    "BallEscapeError",
    "ChebFun",
    "ConditionError",
    "DomainError",
    "EvalError",
    "Expr",
    "GfdeError",
    "InputError",
    "ParseError",
    "Problem",
    "ResolutionError",
    "check_conditions",
    "check_ek",
    "gevrey",
    "gevrey_order_estimate",
    "residual",
    "solve",
    "validate",
]
