import json
import math

import numpy as np
import pytest

from bhbounds import (
    FamilyParams,
    HomogeneousPolynomial,
    SearchConfig,
    SupNormConfig,
    ZeroPolynomialError,
    build_witness,
    certificate_from_dict,
    certificate_json,
    certificate_to_dict,
    certify,
    degree_multi_indices,
    family_ratio,
    family_seed_vector,
    load_certificate,
    lower_bound,
    optimal_x,
    save_certificate,
    search,
    upper_bound,
)
from oracles import random_polynomial

FAST_SUPNORM = SupNormConfig(grid_points_per_axis=32)


def small_config(m, n, **overrides):
    base = dict(
        m=m,
        num_vars=n,
        restarts=3,
        rng_seed=7,
        eval_budget=40,
        supnorm=FAST_SUPNORM,
    )
    base.update(overrides)
    return SearchConfig(**base)


# --- configuration -------------------------------------------------------------


def test_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(m=1, num_vars=2)
    with pytest.raises(ValueError):
        SearchConfig(m=2, num_vars=0)
    with pytest.raises(ValueError):
        SearchConfig(m=2, num_vars=2, restarts=0)
    with pytest.raises(ValueError):
        SearchConfig(m=2, num_vars=2, eval_budget=0)
    with pytest.raises(ValueError):
        SearchConfig(m=2, num_vars=2, step_min=1.0, step_init=0.5)


def test_degree_multi_indices():
    assert degree_multi_indices(2, 2) == [(0, 2), (1, 1), (2, 0)]
    assert len(degree_multi_indices(4, 3)) == 15  # C(6, 2)
    for alpha in degree_multi_indices(3, 3):
        assert sum(alpha) == 3


def test_family_seed_matches_witness():
    for m, n in [(2, 2), (3, 3), (4, 4), (3, 5)]:
        indices = degree_multi_indices(m, n)
        vec = family_seed_vector(m, n, indices)
        terms = {a: complex(v) for a, v in zip(indices, vec) if v != 0.0}
        seeded = HomogeneousPolynomial(m, n, terms)
        # the seed achieves exactly the family ratio
        from bhbounds import bh_ratio

        assert bh_ratio(seeded, FAST_SUPNORM).estimate == pytest.approx(
            family_ratio(m, optimal_x(m)), abs=1e-8
        )


def test_family_seed_low_variable_counts():
    # n < m still produces a valid degree-m vector
    for m, n in [(3, 2), (4, 2), (5, 3), (2, 1)]:
        indices = degree_multi_indices(m, n)
        vec = family_seed_vector(m, n, indices)
        assert np.count_nonzero(vec) >= 1
        terms = {a: complex(v) for a, v in zip(indices, vec) if v != 0.0}
        HomogeneousPolynomial(m, n, terms)  # construction validates weights


# --- certify ---------------------------------------------------------------------


def test_certify_witness_bracket():
    P = build_witness(2, FamilyParams(1.0, -1.0, 2.0**1.5))
    cert = certify(P)
    assert cert.estimate == pytest.approx(1.1066819197003217, abs=1e-8)
    assert cert.certified_lower <= cert.estimate
    # the crude first-order slack needs a finer grid before the certified
    # value clears 1; at K=256 the certificate is a nontrivial bound
    tight = certify(P, SupNormConfig(grid_points_per_axis=256))
    assert 1.0 < tight.certified_lower <= 1.1067


def test_certify_monomial_brackets_tighten():
    P = HomogeneousPolynomial(3, 1, {(3,): 1.0})
    prev_gap = None
    for K in (8, 32, 128, 512):
        cert = certify(P, SupNormConfig(grid_points_per_axis=K))
        assert cert.certified_lower <= 1.0 <= cert.estimate + 1e-15
        gap = cert.estimate - cert.certified_lower
        if prev_gap is not None:
            assert gap < prev_gap
        prev_gap = gap


def test_certify_rejects_zero():
    P = HomogeneousPolynomial(2, 2, {(2, 0): 0.0})
    with pytest.raises(ZeroPolynomialError):
        certify(P)


def test_certificate_soundness_random():
    rng = np.random.default_rng(31337)
    for _ in range(15):
        m = int(rng.integers(2, 5))
        n = int(rng.integers(1, 4))
        P = random_polynomial(rng, m, n)
        cert = certify(P, FAST_SUPNORM)
        assert cert.certified_lower <= cert.estimate
        # the upper bound for D(m) is proven, so no certificate may beat it
        assert cert.certified_lower <= upper_bound(m) + 1e-9


def test_certificate_round_trip_bit_exact(tmp_path):
    P = build_witness(3, FamilyParams(1.0, -1.0, 1.25))
    cert = certify(P)
    path = tmp_path / "cert.json"
    save_certificate(cert, str(path))
    loaded = load_certificate(str(path))
    assert loaded.certified_lower == cert.certified_lower
    assert loaded.estimate == cert.estimate
    assert loaded.coeff_norm == cert.coeff_norm
    assert loaded.polynomial == cert.polynomial
    assert loaded.supnorm == cert.supnorm
    # serialization is canonical: same content, same bytes
    assert certificate_json(loaded) == certificate_json(cert)


def test_certificate_schema_field():
    P = build_witness(2, FamilyParams(1.0, -1.0, 1.0))
    doc = certificate_to_dict(certify(P))
    assert doc["schema"] == "bh-cert-1"
    assert set(doc) >= {
        "polynomial",
        "coeff_norm",
        "estimate",
        "certified_lower",
        "supnorm",
        "config",
        "seed",
    }
    with pytest.raises(ValueError, match="schema"):
        certificate_from_dict({**doc, "schema": "bh-cert-999"})


# --- search ---------------------------------------------------------------------


def test_search_floor_from_seeding():
    for m, n in [(2, 2), (3, 3)]:
        cert = search(small_config(m, n))
        assert cert.estimate >= family_ratio(m, optimal_x(m)) - 1e-6
    # m = 4 has a 35-dimensional coefficient space; keep the grid coarse
    cfg = small_config(
        4, 4, restarts=2, eval_budget=15, supnorm=SupNormConfig(grid_points_per_axis=16)
    )
    cert = search(cfg)
    assert cert.estimate >= family_ratio(4, optimal_x(4)) - 1e-6


def test_search_single_variable_space():
    cert = search(small_config(2, 1, restarts=2, eval_budget=10))
    assert cert.estimate == 1.0


def test_search_seeded_run_beats_known_bound():
    cert = search(small_config(2, 2, eval_budget=60))
    assert cert.estimate >= 1.1066
    assert cert.certified_lower <= lower_bound(2)


def test_search_deterministic_across_workers():
    cfg = small_config(2, 2, restarts=4)
    certs = [certificate_json(search(cfg, workers=w)) for w in (1, 1, 3)]
    assert certs[0] == certs[1] == certs[2]


def test_search_monotone_in_restarts():
    best = -math.inf
    for restarts in (1, 2, 4):
        cert = search(small_config(3, 2, restarts=restarts, eval_budget=25))
        assert cert.estimate >= best - 1e-15
        best = max(best, cert.estimate)


def test_search_certificate_echoes_config():
    cfg = small_config(2, 2)
    cert = search(cfg)
    assert cert.search_config == cfg
    assert cert.seed == cfg.rng_seed
    assert cert.restart_index is not None
    doc = certificate_to_dict(cert)
    assert doc["config"]["search"]["rng_seed"] == cfg.rng_seed
    assert json.dumps(doc)  # serializable
