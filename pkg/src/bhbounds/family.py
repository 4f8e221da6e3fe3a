"""The quadratic witness family and the closed-form constant bounds.

Everything revolves around one inequality: for an m-homogeneous P on C^N,
the l_{2m/(m+1)} norm of its coefficients is at most D(m) * ||P||, with
D(m) independent of N.  Any concrete polynomial therefore certifies

    D(m) >= (coefficient norm) / (sup norm),

and this module builds the family that makes that ratio large:

    Q(z1, z2)   = a z1^2 + b z2^2 + c z1 z2      (ab < 0, |c(a+b)| <= 4|ab|)
    W_m(z)      = z3 ... zm * Q(z1, z2)          (degree m on N = m variables)

The extra variables are unimodular on the torus, so ||W_m|| = ||Q||, while
the coefficient norm only weakens with the exponent 2m/(m+1).  At a = 1,
b = -1 the achieved ratio as a function of the cross-term weight x is

    family_ratio(m, x) = (2 + |x|^{2m/(m+1)})^{(m+1)/(2m)} / sqrt(4 + x^2),

maximized at x = 2^{(m+1)/2}, which yields the closed-form lower bound

    D(m) >= (2 + 2^m)^{(m+1)/(2m)} / sqrt(4 + 2^{m+1}) > 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .poly import HomogeneousPolynomial, bh_exponent, coefficient_lp_norm
from .supnorm import SupNormConfig, sup_norm

_LN2 = math.log(2.0)
_LN4 = math.log(4.0)


class ZeroPolynomialError(ValueError):
    """The ratio of the zero polynomial is undefined."""


def _logaddexp(x: float, y: float) -> float:
    if x == -math.inf:
        return y
    if y == -math.inf:
        return x
    hi, lo = (x, y) if x >= y else (y, x)
    return hi + math.log1p(math.exp(lo - hi))


@dataclass(frozen=True)
class FamilyParams:
    """Coefficients (a, b, c) of the base quadratic a z1^2 + b z2^2 + c z1 z2.

    Constrained to the domain where the closed-form sup norm holds:
    ab < 0 and |c(a+b)| <= 4|ab|.
    """

    a: float
    b: float
    c: float

    def __post_init__(self) -> None:
        if not self.a * self.b < 0:
            raise ValueError(f"family requires ab < 0 (got a={self.a}, b={self.b})")
        if abs(self.c * (self.a + self.b)) > 4 * abs(self.a * self.b):
            raise ValueError(
                f"family requires |c(a+b)| <= 4|ab| "
                f"(got a={self.a}, b={self.b}, c={self.c})"
            )


@dataclass(frozen=True)
class BoundsRow:
    """Per-degree record: certified lower bound, hypercontractive upper
    bound, the multilinear comparison constant, and the maximizing
    cross-term weight."""

    m: int
    lower: float
    upper: float
    multilinear_lower: float
    optimal_x: float


def build_quadratic(params: FamilyParams) -> HomogeneousPolynomial:
    """The base quadratic on C^2 (terms with zero coefficient dropped)."""
    return HomogeneousPolynomial(
        2, 2, {(2, 0): params.a, (0, 2): params.b, (1, 1): params.c}
    )


def build_witness(m: int, params: FamilyParams) -> HomogeneousPolynomial:
    """Degree-m witness z3...zm * Q(z1, z2) on N = m variables.

    Each quadratic multi-index is extended by exponent 1 on variables
    3..m; for m = 2 this is exactly the base quadratic.
    """
    if m < 2:
        raise ValueError(f"witness family needs m >= 2, got {m}")
    ext = (1,) * (m - 2)
    terms = {
        (2, 0) + ext: params.a,
        (0, 2) + ext: params.b,
        (1, 1) + ext: params.c,
    }
    return HomogeneousPolynomial(m, m, terms)


def family_ratio(m: int, x: float) -> float:
    """Ratio achieved by the a=1, b=-1 witness with cross-term weight x.

    Even in x (only x^2 enters), and evaluated through logs so the power
    |x|^{2m/(m+1)} cannot overflow for large m or x:

        (2 + |x|^{2m/(m+1)})^{(m+1)/(2m)} / sqrt(4 + x^2).
    """
    if m < 2:
        raise ValueError(f"family ratio needs m >= 2, got {m}")
    ax = abs(x)
    log_ax = math.log(ax) if ax > 0 else -math.inf
    log_num = ((m + 1) / (2.0 * m)) * _logaddexp(_LN2, (2.0 * m / (m + 1)) * log_ax)
    log_den = 0.5 * _logaddexp(_LN4, 2.0 * log_ax)
    return math.exp(log_num - log_den)


def optimal_x(m: int) -> float:
    """The cross-term weight 2^{(m+1)/2} maximizing family_ratio(m, .)."""
    if m < 2:
        raise ValueError(f"optimal weight needs m >= 2, got {m}")
    return 2.0 ** ((m + 1) / 2.0)


def lower_bound(m: int) -> float:
    """Certified lower bound for D(m): (2 + 2^m)^{(m+1)/(2m)} / sqrt(4 + 2^{m+1}).

    Factoring 2 + 2^m = 2^m (1 + 2^{1-m}) and 4 + 2^{m+1} = 2 (2 + 2^m)
    collapses the expression to (1 + 2^{1-m})^{1/(2m)}, which is what is
    evaluated here: the direct log-space difference of the two big terms
    cancels catastrophically once m exceeds ~45, while this form is exact,
    always finite and always >= 1.  Note the float result rounds to
    exactly 1.0 for m >~ 48; use lower_bound_excess for the gap above 1.
    """
    if m < 2:
        raise ValueError(f"lower bound needs m >= 2, got {m}")
    return math.exp(math.log1p(2.0 ** (1 - m)) / (2.0 * m))


def lower_bound_excess(m: int) -> float:
    """lower_bound(m) - 1 without rounding to zero: expm1/log1p form.

    Strictly positive for every m representable in double precision
    (through m = 1000 and beyond), which is how the strict inequality
    lower_bound(m) > 1 is checked where float spacing near 1.0 swallows
    the difference.
    """
    if m < 2:
        raise ValueError(f"lower bound needs m >= 2, got {m}")
    return math.expm1(math.log1p(2.0 ** (1 - m)) / (2.0 * m))


def upper_bound(m: int) -> float:
    """Hypercontractive upper bound (1 + 1/m)^{m-1} sqrt(m) (sqrt 2)^{m-1}.

    Evaluated in log space so large m cannot overflow.
    """
    if m < 1:
        raise ValueError(f"upper bound needs m >= 1, got {m}")
    return math.exp(
        (m - 1) * math.log1p(1.0 / m) + 0.5 * math.log(m) + (m - 1) * 0.5 * _LN2
    )


def multilinear_lower_bound(m: int) -> float:
    """Comparison constant for m-linear forms over the reals: 2^{1 - 1/m}."""
    if m < 1:
        raise ValueError(f"multilinear bound needs m >= 1, got {m}")
    return 2.0 ** (1.0 - 1.0 / m)


def bounds_table(m_min: int, m_max: int) -> list[BoundsRow]:
    """One BoundsRow per degree, in ascending order."""
    if m_min < 2 or m_min > m_max:
        raise ValueError(f"need 2 <= m_min <= m_max, got [{m_min}, {m_max}]")
    return [
        BoundsRow(
            m=m,
            lower=lower_bound(m),
            upper=upper_bound(m),
            multilinear_lower=multilinear_lower_bound(m),
            optimal_x=optimal_x(m),
        )
        for m in range(m_min, m_max + 1)
    ]


def bounds_table_csv(rows: list[BoundsRow]) -> str:
    """CSV rendering: header m,lower,upper,multilinear_lower,optimal_x,
    9 significant digits, LF line endings."""
    lines = ["m,lower,upper,multilinear_lower,optimal_x"]
    for row in rows:
        lines.append(
            f"{row.m},{row.lower:.9g},{row.upper:.9g},"
            f"{row.multilinear_lower:.9g},{row.optimal_x:.9g}"
        )
    return "\n".join(lines) + "\n"


class RatioResult(NamedTuple):
    estimate: float
    certified: float


def bh_ratio(P: HomogeneousPolynomial, cfg: SupNormConfig | None = None) -> RatioResult:
    """Coefficient-norm-to-sup-norm ratio of P, both optimistic and certified.

    estimate  = l_{2m/(m+1)}(coefficients) / lower sup-norm estimate,
    certified = same numerator / rigorous upper bracket.

    Every polynomial's certified ratio is a true lower bound on D(m) up to
    floating-point rounding (the numerator is exact to rounding and the
    denominator is an upper bound on ||P||).
    """
    if P.is_zero:
        raise ZeroPolynomialError("the zero polynomial has no ratio")
    numerator = coefficient_lp_norm(P, bh_exponent(P.degree))
    result = sup_norm(P, cfg)
    if result.lower_estimate <= 0.0:
        raise ValueError(
            "sup-norm estimate vanished on the grid; increase grid_points_per_axis"
        )
    return RatioResult(
        estimate=numerator / result.lower_estimate,
        certified=numerator / result.upper_bracket,
    )
