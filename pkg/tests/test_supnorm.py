import cmath
import math

import numpy as np
import pytest

from bhbounds import (
    FormulaDomainError,
    GridTooLargeError,
    HomogeneousPolynomial,
    SupNormConfig,
    quadratic_sup_norm,
    refine_local,
    sup_norm,
    torus_grid_max,
    torus_lipschitz_bound,
)
from oracles import (
    brute_force_torus_max,
    lipschitz_slack,
    random_polynomial,
    random_valid_quadratic,
)

TWO_PI = 2.0 * math.pi


def quadratic(a, b, c):
    return HomogeneousPolynomial(2, 2, {(2, 0): a, (0, 2): b, (1, 1): c})


# --- torus_grid_max ----------------------------------------------------------


def test_grid_max_unimodular_monomial():
    for m in (1, 3, 6):
        P = HomogeneousPolynomial(m, 1, {(m,): 1.0})
        value, _ = torus_grid_max(P, 16)
        assert value == 1.0


def test_grid_max_difference_of_squares():
    P = quadratic(1.0, -1.0, 0.0)
    value, angles = torus_grid_max(P, 64)
    assert 1.99 <= value <= 2.0 + 1e-12
    # K divisible by 4 puts the true maximizer on the grid
    assert value == pytest.approx(2.0, abs=1e-12)
    z = [cmath.exp(1j * t) for t in angles]
    assert abs(P.evaluate(z)) == pytest.approx(value, abs=1e-12)


def test_grid_max_product_of_variables():
    for m in (2, 4):
        P = HomogeneousPolynomial(m, m, {(1,) * m: 1.0})
        value, angles = torus_grid_max(P, 8)
        assert value == 1.0
        assert angles == (0.0,) * m  # single term pins every variable


def test_grid_max_matches_brute_force():
    rng = np.random.default_rng(101)
    for _ in range(15):
        m = int(rng.integers(2, 5))
        n = int(rng.integers(1, 3))
        P = random_polynomial(rng, m, n)
        value, _ = torus_grid_max(P, 32)
        assert value == pytest.approx(brute_force_torus_max(P, 32), rel=1e-12)


def test_grid_max_monotone_in_grid_refinement():
    rng = np.random.default_rng(5)
    for _ in range(10):
        P = random_polynomial(rng, int(rng.integers(2, 5)), 2)
        coarse, _ = torus_grid_max(P, 16)
        fine, _ = torus_grid_max(P, 32)  # nested grids
        assert fine >= coarse - 1e-14


def test_grid_max_deterministic_across_chunk_counts():
    rng = np.random.default_rng(42)
    for _ in range(5):
        P = random_polynomial(rng, 3, 2)
        results = [torus_grid_max(P, 64, parallel_chunks=w) for w in (1, 2, 4, 7)]
        for value, angles in results[1:]:
            assert value == results[0][0]
            assert angles == results[0][1]


def test_grid_too_large():
    P = HomogeneousPolynomial(
        2, 5, {(1, 1, 0, 0, 0): 1.0, (0, 0, 1, 1, 0): 1.0, (0, 0, 0, 1, 1): -1.0}
    )
    with pytest.raises(GridTooLargeError, match="fewer variables or a smaller grid"):
        torus_grid_max(P, 256)


# --- refine_local ------------------------------------------------------------


def test_refine_converges_from_coarse_grid():
    P = quadratic(1.0, -1.0, 0.0)
    _, start = torus_grid_max(P, 8)
    result = refine_local(P, start, tol=1e-12, max_iter=200, cell_width=TWO_PI / 8)
    assert result.value == pytest.approx(2.0, abs=1e-10)
    assert result.converged


def test_refine_fixed_point_at_local_max():
    P = quadratic(1.0, -1.0, 0.0)
    start = (0.0, math.pi / 2)  # |P| = 2 exactly, the global max
    result = refine_local(P, start, tol=1e-10, max_iter=200, cell_width=TWO_PI / 64)
    assert result.value == 2.0
    assert result.sweeps == 1
    assert result.converged


def test_refine_reaches_closed_form_from_k32_start():
    c = 2.828427
    P = quadratic(1.0, -1.0, c)
    _, start = torus_grid_max(P, 32)
    result = refine_local(P, start, tol=1e-12, max_iter=200, cell_width=TWO_PI / 32)
    assert result.value == pytest.approx(math.sqrt(4.0 + c * c), abs=1e-8)


def test_refine_never_decreases():
    rng = np.random.default_rng(23)
    for _ in range(20):
        P = random_polynomial(rng, int(rng.integers(2, 5)), int(rng.integers(1, 4)))
        start_angles = tuple(rng.uniform(0, TWO_PI, P.num_vars))
        start_value = abs(P.evaluate([cmath.exp(1j * t) for t in start_angles]))
        result = refine_local(P, start_angles, tol=1e-10, max_iter=50)
        assert result.value >= start_value


# --- torus_lipschitz_bound ----------------------------------------------------


def test_lipschitz_bound_values():
    assert torus_lipschitz_bound(HomogeneousPolynomial(5, 1, {(5,): 1.0})) == 5.0
    assert torus_lipschitz_bound(quadratic(1.0, -1.0, 0.0)) == 4.0
    assert torus_lipschitz_bound(quadratic(1.0, -1.0, 2.828427)) == pytest.approx(
        9.656854, abs=1e-9
    )


# --- sup_norm ----------------------------------------------------------------


def test_sup_norm_quadratic_witness_bracket():
    P = quadratic(1.0, -1.0, 2.0**1.5)
    result = sup_norm(P)
    assert result.lower_estimate == pytest.approx(3.46410161, abs=1e-8)  # sqrt(12)
    assert result.upper_bracket - result.lower_estimate < 0.5
    assert result.converged
    # attained: |P| at the reported angles equals the lower estimate
    z = [cmath.exp(1j * t) for t in result.arg_angles]
    assert abs(P.evaluate(z)) == pytest.approx(result.lower_estimate, abs=1e-10)


def test_sup_norm_lifted_witness():
    P = HomogeneousPolynomial(
        4,
        4,
        {(2, 0, 1, 1): 1.0, (0, 2, 1, 1): -1.0, (1, 1, 1, 1): 2.0},
    )
    result = sup_norm(P)
    assert result.lower_estimate == pytest.approx(math.sqrt(8.0), abs=1e-6)


def test_sup_norm_scaled_monomial():
    P = HomogeneousPolynomial(3, 1, {(3,): 0.5})
    result = sup_norm(P)
    assert result.lower_estimate == 0.5
    assert result.upper_bracket >= 0.5


def test_sup_norm_bracketing_property():
    rng = np.random.default_rng(314)
    for i in range(100):
        m = int(rng.integers(2, 5))
        n = int(rng.integers(1, 4))
        P = random_polynomial(rng, m, n)
        result = sup_norm(P)
        assert result.lower_estimate <= result.upper_bracket
        if n == 2 and i % 8 == 0:
            # Fine-grid brute force: the grid value cannot exceed the
            # bracket top, and can undershoot the attained lower estimate
            # by at most its own discretization slack.
            brute = brute_force_torus_max(P, 1024)
            assert brute <= result.upper_bracket + 1e-9
            assert result.lower_estimate <= brute + lipschitz_slack(P, 1024) + 1e-9


def test_sup_norm_scaling():
    rng = np.random.default_rng(99)
    cfg = SupNormConfig()
    for _ in range(10):
        P = random_polynomial(rng, int(rng.integers(2, 5)), 2)
        lam = rng.uniform(0.1, 3.0)
        base = sup_norm(P, cfg).lower_estimate
        scaled = sup_norm(P.scaled(lam), cfg).lower_estimate
        assert scaled == pytest.approx(lam * base, abs=1e-10 * (1 + lam * base))


def test_sup_norm_oracle_equivalence():
    rng = np.random.default_rng(271828)
    for _ in range(50):
        a, b, c = random_valid_quadratic(rng)
        numeric = sup_norm(quadratic(a, b, c)).lower_estimate
        assert numeric == pytest.approx(quadratic_sup_norm(a, b, c), abs=1e-6)


def test_sup_norm_diagonal_rotation_invariance():
    rng = np.random.default_rng(55)
    cfg = SupNormConfig()
    for _ in range(10):
        m = int(rng.integers(2, 5))
        n = int(rng.integers(2, 4))
        P = random_polynomial(rng, m, n)
        phases = rng.uniform(0, TWO_PI, n)
        rotated = HomogeneousPolynomial(
            m,
            n,
            {
                alpha: coeff
                * cmath.exp(1j * sum(a * p for a, p in zip(alpha, phases)))
                for alpha, coeff in P.terms.items()
            },
        )
        assert sup_norm(rotated, cfg).lower_estimate == pytest.approx(
            sup_norm(P, cfg).lower_estimate, abs=1e-8
        )


def test_sup_norm_interior_points_stay_inside_bracket():
    # the sup over the polydisc is attained on the torus: random interior
    # points must never beat the torus bracket
    rng = np.random.default_rng(404)
    for _ in range(10):
        P = random_polynomial(rng, int(rng.integers(2, 5)), 2)
        result = sup_norm(P)
        for _ in range(50):
            radii = rng.uniform(0, 1, 2)
            angles = rng.uniform(0, TWO_PI, 2)
            z = radii * np.exp(1j * angles)
            assert abs(P.evaluate(z)) <= result.upper_bracket + 1e-9


def test_sup_norm_zero_polynomial():
    P = HomogeneousPolynomial(2, 2, {(2, 0): 0.0})
    result = sup_norm(P)
    assert result.lower_estimate == 0.0
    assert result.upper_bracket == 0.0


# --- quadratic closed form -----------------------------------------------------


def test_quadratic_sup_norm_values():
    assert quadratic_sup_norm(1.0, -1.0, 0.0) == 2.0
    x = 2.0**1.5
    assert quadratic_sup_norm(1.0, -1.0, x) == pytest.approx(
        math.sqrt(12.0), rel=1e-14
    )
    assert quadratic_sup_norm(1.0, -1.0, 1.7) == pytest.approx(
        math.sqrt(4.0 + 1.7**2), rel=1e-14
    )


def test_quadratic_sup_norm_domain_gate():
    with pytest.raises(FormulaDomainError):
        quadratic_sup_norm(1.0, 1.0, 1.0)  # ab > 0
    with pytest.raises(FormulaDomainError):
        quadratic_sup_norm(2.0, -0.1, 4.0)  # |c(a+b)| > 4|ab|
    # boundary |c(a+b)| = 4|ab| is inside the domain: a+b = 1, 4|ab| = 8
    quadratic_sup_norm(2.0, -1.0, 8.0)


def test_sup_norm_config_validation():
    with pytest.raises(ValueError):
        SupNormConfig(grid_points_per_axis=1)
    with pytest.raises(ValueError):
        SupNormConfig(refine_tolerance=0.0)
    with pytest.raises(ValueError):
        SupNormConfig(parallel_chunks=0)
