from .scalars import (
    GF,
    QI,
    GaussianRational,
    ScalarContextError,
    format_gaussian,
    is_prime,
    parse_gaussian,
    random_prime,
    sqrt_minus_one,
)
from .poly import (
    GREVLEX,
    LEX,
    PolyContext,
    Polynomial,
    divide_multivariate,
    linear_rows,
    normal_form,
    poly_arithmetic,
    poly_eval,
    s_polynomial,
)
from .groebner import (
    Budget,
    BudgetExhausted,
    GroebnerBasis,
    buchberger,
    contains_unit,
    ideal_membership,
)

__all__ = [
    "GF",
    "QI",
    "GaussianRational",
    "ScalarContextError",
    "format_gaussian",
    "is_prime",
    "parse_gaussian",
    "random_prime",
    "sqrt_minus_one",
    "GREVLEX",
    "LEX",
    "PolyContext",
    "Polynomial",
    "divide_multivariate",
    "linear_rows",
    "normal_form",
    "poly_arithmetic",
    "poly_eval",
    "s_polynomial",
    "Budget",
    "BudgetExhausted",
    "GroebnerBasis",
    "buchberger",
    "contains_unit",
    "ideal_membership",
]
