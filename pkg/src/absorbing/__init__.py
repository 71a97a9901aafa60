"""Exact discounted and limit values of zero-sum absorbing games."""
from .model import (
    AbsorbingGame,
    QuadraticTarget,
    StationaryStrategy,
    affine,
    builtin,
    dual,
    from_star_matrix,
    represent_quadratic,
    validate,
)
from .solver import (
    build_W,
    check_theorem1,
    discounted_optimal,
    discounted_value,
    limit_candidates,
    limit_payoff,
    limit_value,
    stationary_guarantee,
)

__version__ = "0.1.0"
