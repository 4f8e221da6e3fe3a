"""Supremum norm of a homogeneous polynomial on the closed unit polydisc.

The maximum of |P| over {z : |z_j| <= 1} is attained with every |z_j| = 1
(apply the maximum modulus principle one coordinate at a time), so the
whole module works on the torus: the objective is

    g(theta) = |P(e^{i theta_1}, ..., e^{i theta_N})|.

Strategy: a uniform angle grid gives a lower bound and a starting point,
cyclic coordinate ascent with golden-section line searches polishes it,
and a first-order Lipschitz slack turns the grid value into a rigorous
upper bracket.  Variables whose exponent is the same in every term only
contribute a unimodular factor on the torus, so they are pinned to angle
zero and removed from the grid; for the witness family this collapses the
search to the two active variables regardless of the degree.
"""

from __future__ import annotations

import cmath
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .poly import HomogeneousPolynomial

TWO_PI = 2.0 * math.pi

# Hard cap on evaluated grid points (after pinning inactive variables).
MAX_GRID_POINTS = 1 << 26

# Angle tolerance of each golden-section line search.
_GOLDEN_ANGLE_TOL = 1e-12
_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0

# Grid points evaluated per numpy slab; bounds peak memory per worker.
_SLAB_POINTS = 1 << 20


class GridTooLargeError(ValueError):
    """The requested torus grid exceeds the addressable size."""


class FormulaDomainError(ValueError):
    """A closed-form norm formula was requested outside its validity domain."""


@dataclass(frozen=True)
class SupNormConfig:
    """Tuning knobs for the grid-then-refine sup-norm engine."""

    grid_points_per_axis: int = 64
    refine_tolerance: float = 1e-10
    max_refine_iterations: int = 200
    parallel_chunks: int = 1

    def __post_init__(self) -> None:
        if self.grid_points_per_axis < 2:
            raise ValueError("grid_points_per_axis must be >= 2")
        if self.refine_tolerance <= 0:
            raise ValueError("refine_tolerance must be > 0")
        if self.max_refine_iterations < 1:
            raise ValueError("max_refine_iterations must be >= 1")
        if self.parallel_chunks < 1:
            raise ValueError("parallel_chunks must be >= 1")


@dataclass(frozen=True)
class SupNormResult:
    """Two-sided bracket lower_estimate <= ||P|| <= upper_bracket.

    lower_estimate is |P| at e^{i arg_angles}, so it is always attained;
    grid_used records the grid points per axis that produced the bracket.
    """

    lower_estimate: float
    upper_bracket: float
    arg_angles: tuple[float, ...]
    grid_used: int
    converged: bool

    def __post_init__(self) -> None:
        if self.lower_estimate > self.upper_bracket:
            raise ValueError("lower_estimate exceeds upper_bracket")


class RefineResult(NamedTuple):
    value: float
    angles: tuple[float, ...]
    sweeps: int
    converged: bool


def _active_axes(P: HomogeneousPolynomial) -> list[int]:
    """Axes whose exponent varies across terms.

    A variable with the same exponent a in every term factors out as
    z_j^a, which has modulus one on the torus; |P| does not depend on its
    angle, so it can be pinned to 0 without changing the maximum.
    """
    alphas = list(P.terms)
    if len(alphas) <= 1:
        return []
    first = alphas[0]
    return [
        j for j in range(P.num_vars) if any(alpha[j] != first[j] for alpha in alphas)
    ]


def _phase_tables(P: HomogeneousPolynomial, axes: list[int], K: int) -> list[np.ndarray]:
    """tables[t][a, k] = exp(2*pi*i * a * k / K) for axis axes[t]."""
    tables = []
    for j in axes:
        max_exp = max(alpha[j] for alpha in P.terms)
        tables.append(
            np.exp(2j * np.pi * np.outer(np.arange(max_exp + 1), np.arange(K)) / K)
        )
    return tables


def _grid_chunk_max(
    P: HomogeneousPolynomial,
    axes: list[int],
    tables: list[np.ndarray],
    K: int,
    start: int,
    stop: int,
) -> tuple[float, int]:
    """Max of |P| over flat grid indices [start, stop) and its first argmax.

    Flat index order is row-major over the active axes in ascending
    variable order, which is exactly lexicographic order of the angle
    vectors; np.argmax returns the first maximizer, so scanning slabs in
    order preserves the global lexicographic tie-break.
    """
    best_val = -1.0
    best_flat = start
    for lo in range(start, stop, _SLAB_POINTS):
        hi = min(lo + _SLAB_POINTS, stop)
        idx = np.arange(lo, hi, dtype=np.int64)
        digits = []
        rem = idx
        for _ in range(len(axes)):
            rem, digit = np.divmod(rem, K)
            digits.append(digit)
        digits.reverse()  # digits[t] now corresponds to axes[t]
        vals = np.zeros(hi - lo, dtype=np.complex128)
        for alpha, coeff in P.terms.items():
            term = np.full(hi - lo, coeff, dtype=np.complex128)
            for t, j in enumerate(axes):
                if alpha[j]:
                    term *= tables[t][alpha[j]][digits[t]]
            vals += term
        mags = np.abs(vals)
        local = int(np.argmax(mags))
        if mags[local] > best_val:
            best_val = float(mags[local])
            best_flat = lo + local
    return best_val, best_flat


def torus_grid_max(
    P: HomogeneousPolynomial, K: int, parallel_chunks: int = 1
) -> tuple[float, tuple[float, ...]]:
    """Max of |P(e^{i theta})| over the uniform K^N angle grid.

    Returns the value (a valid lower bound on ||P||) and an attaining
    angle vector; ties are broken by the lexicographically smallest
    vector.  Inactive variables are pinned to angle 0, which is on every
    grid and lexicographically minimal, so the result is identical to a
    literal scan of all K^N points.
    """
    if K < 2:
        raise ValueError("K must be >= 2")
    if P.is_zero:
        return 0.0, (0.0,) * P.num_vars
    axes = _active_axes(P)
    if not axes:
        # Constant exponents across terms force a single term.
        (coeff,) = P.terms.values()
        return abs(coeff), (0.0,) * P.num_vars
    total = K ** len(axes)
    if total > MAX_GRID_POINTS:
        raise GridTooLargeError(
            f"grid of {K}^{len(axes)} = {total} points exceeds the limit of "
            f"{MAX_GRID_POINTS}; use fewer variables or a smaller grid"
        )
    tables = _phase_tables(P, axes, K)
    chunks = min(parallel_chunks, total)
    bounds = [(total * c) // chunks for c in range(chunks + 1)]
    ranges = [(bounds[c], bounds[c + 1]) for c in range(chunks)]

    def run(span: tuple[int, int]) -> tuple[float, int]:
        return _grid_chunk_max(P, axes, tables, K, span[0], span[1])

    if chunks > 1:
        with ThreadPoolExecutor(max_workers=chunks) as pool:
            results = list(pool.map(run, ranges))
    else:
        results = [run(span) for span in ranges]

    # Deterministic max-reduce in chunk order; strict inequality keeps the
    # earliest (lexicographically smallest) argmax on ties.
    best_val, best_flat = results[0]
    for val, flat in results[1:]:
        if val > best_val:
            best_val, best_flat = val, flat

    angles = [0.0] * P.num_vars
    rem = best_flat
    for j in reversed(axes):
        rem, digit = divmod(rem, K)
        angles[j] = TWO_PI * digit / K
    return best_val, tuple(angles)


def _torus_point(angles: tuple[float, ...]) -> tuple[complex, ...]:
    return tuple(cmath.exp(1j * t) for t in angles)


def _line_coefficients(
    P: HomogeneousPolynomial, angles: list[float], axis: int
) -> dict[int, complex]:
    """Collapse P along one coordinate: P(theta with theta_axis = t) =
    sum_a g_a e^{i a t}, with all other angles frozen."""
    groups: dict[int, complex] = {}
    for alpha, coeff in P.terms.items():
        phase = sum(alpha[l] * angles[l] for l in range(len(angles)) if l != axis)
        g = coeff * cmath.exp(1j * phase)
        groups[alpha[axis]] = groups.get(alpha[axis], 0j) + g
    return groups


def _golden_section_max(
    fn: Callable[[float], float], lo: float, hi: float, tol: float
) -> tuple[float, float]:
    """Golden-section maximization of fn over [lo, hi] to angle tolerance tol."""
    a, b = lo, hi
    x1 = b - _INV_PHI * (b - a)
    x2 = a + _INV_PHI * (b - a)
    f1, f2 = fn(x1), fn(x2)
    while (b - a) > tol:
        if f1 < f2:
            a = x1
            x1, f1 = x2, f2
            x2 = a + _INV_PHI * (b - a)
            f2 = fn(x2)
        else:
            b = x2
            x2, f2 = x1, f1
            x1 = b - _INV_PHI * (b - a)
            f1 = fn(x1)
    return (x1, f1) if f1 >= f2 else (x2, f2)


def refine_local(
    P: HomogeneousPolynomial,
    angles: tuple[float, ...] | list[float],
    tol: float = 1e-10,
    max_iter: int = 200,
    cell_width: float = TWO_PI / 64,
) -> RefineResult:
    """Cyclic coordinate ascent on theta -> |P(e^{i theta})|.

    Each coordinate is improved by a golden-section search over a bracket
    of one grid cell (cell_width each side of the current angle, matching
    the grid the start point came from).  A move is accepted only if the
    re-evaluated |P| strictly increases, so the returned value never drops
    below the input value.  Stops when a full sweep improves the value by
    less than tol (converged) or after max_iter sweeps (not converged).
    """
    theta = [t % TWO_PI for t in angles]
    if len(theta) != P.num_vars:
        raise ValueError(
            f"angle vector has length {len(theta)}, expected {P.num_vars}"
        )
    value = abs(P.evaluate(_torus_point(tuple(theta))))
    axes = _active_axes(P)
    if not axes:
        return RefineResult(value, tuple(theta), 0, True)

    sweeps = 0
    converged = False
    for _ in range(max_iter):
        sweeps += 1
        sweep_start = value
        for j in axes:
            groups = _line_coefficients(P, theta, j)
            items = sorted(groups.items())

            def line_sq(t: float) -> float:
                acc = 0j
                for a, g in items:
                    acc += g * cmath.exp(1j * a * t)
                return acc.real * acc.real + acc.imag * acc.imag

            t_best, f_best = _golden_section_max(
                line_sq,
                theta[j] - cell_width,
                theta[j] + cell_width,
                _GOLDEN_ANGLE_TOL,
            )
            if f_best > value * value:
                candidate = list(theta)
                candidate[j] = t_best % TWO_PI
                cand_value = abs(P.evaluate(_torus_point(tuple(candidate))))
                if cand_value > value:
                    theta = candidate
                    value = cand_value
        if value - sweep_start < tol:
            converged = True
            break
    return RefineResult(value, tuple(theta), sweeps, converged)


def torus_lipschitz_bound(P: HomogeneousPolynomial) -> float:
    """L = sum_j sum_alpha |c_alpha| alpha_j, bounding the angular drift.

    |d/dtheta_j P(e^{i theta})| <= sum_alpha |c_alpha| alpha_j, so moving
    every coordinate by at most delta changes |P| by at most L*delta.
    For a homogeneous polynomial the double sum collapses to degree times
    the l_1 coefficient norm.
    """
    return math.fsum(abs(c) * sum(alpha) for alpha, c in P.terms.items())


def sup_norm(P: HomogeneousPolynomial, cfg: SupNormConfig | None = None) -> SupNormResult:
    """Two-sided bracket of ||P|| on the unit polydisc.

    lower_estimate: grid maximum polished by refine_local (attained value).
    upper_bracket:  grid maximum + L*(pi/K), where L is the Lipschitz
    bound and pi/K the worst per-coordinate distance to a grid point, so
    lower_estimate <= ||P|| <= upper_bracket rigorously (up to rounding).
    """
    cfg = cfg or SupNormConfig()
    K = cfg.grid_points_per_axis
    if P.is_zero:
        return SupNormResult(0.0, 0.0, (0.0,) * P.num_vars, K, True)
    grid_value, grid_angles = torus_grid_max(P, K, cfg.parallel_chunks)
    refined = refine_local(
        P,
        grid_angles,
        tol=cfg.refine_tolerance,
        max_iter=cfg.max_refine_iterations,
        cell_width=TWO_PI / K,
    )
    slack = torus_lipschitz_bound(P) * math.pi / K
    return SupNormResult(
        lower_estimate=refined.value,
        upper_bracket=grid_value + slack,
        arg_angles=refined.angles,
        grid_used=K,
        converged=refined.converged,
    )


def quadratic_sup_norm(a: float, b: float, c: float) -> float:
    """Closed-form sup norm of a*z1^2 + b*z2^2 + c*z1*z2 on the bidisc.

    Valid only for real a, b, c with ab < 0 and |c(a+b)| <= 4|ab|, where
    the norm equals (|a|+|b|) * sqrt(1 + c^2 / (4|ab|)).  Outside that
    domain the formula does not apply and this function refuses to
    extrapolate.
    """
    if not a * b < 0:
        raise FormulaDomainError(
            f"closed form requires ab < 0 (got a={a}, b={b})"
        )
    if abs(c * (a + b)) > 4 * abs(a * b):
        raise FormulaDomainError(
            f"closed form requires |c(a+b)| <= 4|ab| (got a={a}, b={b}, c={c})"
        )
    return (abs(a) + abs(b)) * math.sqrt(1.0 + c * c / (4.0 * abs(a * b)))
