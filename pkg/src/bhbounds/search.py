"""Derivative-free search for witness polynomials with certified ratios.

The one-parameter family optimization (over the cross-term weight) is
generalized to the full space of real coefficient vectors indexed by all
degree-m multi-indices on N variables.  The objective -- the ratio
estimate from bh_ratio -- is only piecewise smooth because the sup-norm
argmax can jump between basins, so a pattern search is used instead of a
gradient method: perturb one coefficient at a time by +-step, keep strict
improvements, halve the step after a full stale sweep.

Coefficients are restricted to the reals: rotating each variable by a
torus phase can absorb one phase per variable without changing either
norm, and the known good witnesses are real.  This is a search-space
heuristic, not a theorem.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .family import ZeroPolynomialError, bh_ratio, optimal_x
from .poly import (
    HomogeneousPolynomial,
    MultiIndex,
    bh_exponent,
    coefficient_lp_norm,
    polynomial_from_dict,
    polynomial_to_dict,
)
from .supnorm import SupNormConfig, SupNormResult, sup_norm

CERTIFICATE_SCHEMA = "bh-cert-1"


@dataclass(frozen=True)
class SearchConfig:
    """Knobs for the multi-restart pattern search.

    eval_budget counts ratio evaluations per restart, so restarts stay
    independent and results cannot depend on scheduling.  Restart r draws
    its start from a generator seeded with rng_seed + r; restart 0 is
    always seeded from the witness family instead.
    """

    m: int
    num_vars: int
    restarts: int = 32
    rng_seed: int = 0
    step_init: float = 0.5
    step_min: float = 1e-6
    eval_budget: int = 200
    supnorm: SupNormConfig = field(default_factory=SupNormConfig)

    def __post_init__(self) -> None:
        if self.m < 2:
            raise ValueError(f"search needs m >= 2, got {self.m}")
        if self.num_vars < 1:
            raise ValueError(f"search needs num_vars >= 1, got {self.num_vars}")
        if self.restarts < 1:
            raise ValueError(f"restarts must be >= 1, got {self.restarts}")
        if self.rng_seed < 0:
            raise ValueError(f"rng_seed must be non-negative, got {self.rng_seed}")
        if not 0 < self.step_min < self.step_init:
            raise ValueError(
                f"need 0 < step_min < step_init, got {self.step_min}, {self.step_init}"
            )
        if self.eval_budget < 1:
            raise ValueError(
                f"eval_budget must allow at least one evaluation, got {self.eval_budget}"
            )


@dataclass(frozen=True)
class WitnessCertificate:
    """A polynomial together with everything needed to audit its ratio.

    certified_lower = coeff_norm / supnorm.upper_bracket is a true lower
    bound on D(m) up to rounding; estimate uses the attained lower
    sup-norm value instead and is what the search optimizes.
    """

    polynomial: HomogeneousPolynomial
    coeff_norm: float
    supnorm: SupNormResult
    certified_lower: float
    estimate: float
    supnorm_config: SupNormConfig
    search_config: SearchConfig | None = None
    seed: int | None = None
    restart_index: int | None = None

    def __post_init__(self) -> None:
        if self.certified_lower > self.estimate:
            raise ValueError("certified_lower exceeds estimate")


def degree_multi_indices(m: int, n: int) -> list[MultiIndex]:
    """All exponent vectors of weight m on n variables, lexicographic."""

    def gen(prefix: tuple[int, ...], remaining: int, slots: int) -> Iterator[MultiIndex]:
        if slots == 1:
            yield prefix + (remaining,)
            return
        for a in range(remaining, -1, -1):
            yield from gen(prefix + (a,), remaining - a, slots - 1)

    return sorted(gen((), m, n))


def family_seed_vector(m: int, n: int, indices: list[MultiIndex]) -> np.ndarray:
    """Start vector encoding the witness family on n variables.

    Unit exponents go on variables 3..min(n, m); any degree still missing
    (n < m) is stacked on the last variable, which keeps the lift
    norm-preserving whenever n >= 3.  With a single variable the only
    candidate is the lone monomial.
    """
    vec = np.zeros(len(indices))
    position = {alpha: i for i, alpha in enumerate(indices)}
    if n == 1:
        vec[position[(m,)]] = 1.0
        return vec
    x = optimal_x(m)
    if n == 2:
        # No spare variables: stack the leftover degree on z2.
        d = m - 2
        vec[position[(2, d)]] = 1.0
        vec[position[(0, d + 2)]] = -1.0
        vec[position[(1, d + 1)]] = x
        return vec
    ext = [0] * (n - 2)
    for k in range(min(n, m) - 2):
        ext[k] = 1
    deficit = m - 2 - sum(ext)
    if deficit > 0:
        ext[-1] += deficit
    ext_t = tuple(ext)
    vec[position[(2, 0) + ext_t]] = 1.0
    vec[position[(0, 2) + ext_t]] = -1.0
    vec[position[(1, 1) + ext_t]] = x
    return vec


def _vector_to_polynomial(
    m: int, n: int, indices: list[MultiIndex], vec: np.ndarray
) -> HomogeneousPolynomial:
    terms = {alpha: complex(v) for alpha, v in zip(indices, vec) if v != 0.0}
    return HomogeneousPolynomial(m, n, terms)


@dataclass
class _RestartOutcome:
    index: int
    vector: np.ndarray
    estimate: float
    evals: int


def _run_restart(cfg: SearchConfig, indices: list[MultiIndex], r: int) -> _RestartOutcome:
    rng = np.random.default_rng(cfg.rng_seed + r)
    if r == 0:
        start = family_seed_vector(cfg.m, cfg.num_vars, indices)
    else:
        start = rng.uniform(-2.0, 2.0, len(indices))

    evals = 0

    def ratio_of(vec: np.ndarray) -> float:
        poly = _vector_to_polynomial(cfg.m, cfg.num_vars, indices, vec)
        try:
            return bh_ratio(poly, cfg.supnorm).estimate
        except ZeroPolynomialError:
            return -math.inf  # all-zero candidate, skip

    best_vec = start.copy()
    best_val = ratio_of(best_vec)
    evals += 1
    step = cfg.step_init
    while step >= cfg.step_min and evals < cfg.eval_budget:
        improved = False
        for i in range(len(indices)):
            for sign in (1.0, -1.0):
                if evals >= cfg.eval_budget:
                    break
                candidate = best_vec.copy()
                candidate[i] += sign * step
                val = ratio_of(candidate)
                evals += 1
                if val > best_val:
                    best_vec, best_val = candidate, val
                    improved = True
                    break
            if evals >= cfg.eval_budget:
                break
        if not improved:
            step *= 0.5
    return _RestartOutcome(index=r, vector=best_vec, estimate=best_val, evals=evals)


def certify(
    P: HomogeneousPolynomial,
    cfg: SupNormConfig | None = None,
    *,
    search_config: SearchConfig | None = None,
    seed: int | None = None,
    restart_index: int | None = None,
) -> WitnessCertificate:
    """Audit-ready certificate for one polynomial under one configuration."""
    cfg = cfg or SupNormConfig()
    if P.is_zero:
        raise ZeroPolynomialError("cannot certify the zero polynomial")
    coeff_norm = coefficient_lp_norm(P, bh_exponent(P.degree))
    result = sup_norm(P, cfg)
    if result.lower_estimate <= 0.0:
        raise ValueError(
            "sup-norm estimate vanished on the grid; increase grid_points_per_axis"
        )
    return WitnessCertificate(
        polynomial=P,
        coeff_norm=coeff_norm,
        supnorm=result,
        certified_lower=coeff_norm / result.upper_bracket,
        estimate=coeff_norm / result.lower_estimate,
        supnorm_config=cfg,
        search_config=search_config,
        seed=seed,
        restart_index=restart_index,
    )


def search(cfg: SearchConfig, workers: int = 1) -> WitnessCertificate:
    """Multi-restart pattern search; returns the best certificate found.

    Restarts are independent (restart r owns generator rng_seed + r and
    its own eval budget), so the merge -- maximum ratio estimate, ties
    broken by the lowest restart index -- is identical for any worker
    count.  The estimate is the merge key because it is the quantity the
    search optimizes and the quantity the seeded floor guarantees; the
    certified value is reported alongside it in the certificate.
    """
    indices = degree_multi_indices(cfg.m, cfg.num_vars)
    restarts = list(range(cfg.restarts))

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(lambda r: _run_restart(cfg, indices, r), restarts))
    else:
        outcomes = [_run_restart(cfg, indices, r) for r in restarts]

    best: _RestartOutcome | None = None
    for outcome in outcomes:  # ascending index; strict > keeps earliest on ties
        if not math.isfinite(outcome.estimate):
            continue
        if best is None or outcome.estimate > best.estimate:
            best = outcome
    if best is None:
        raise ValueError("no restart produced a valid (nonzero) polynomial")

    poly = _vector_to_polynomial(cfg.m, cfg.num_vars, indices, best.vector)
    return certify(
        poly,
        cfg.supnorm,
        search_config=cfg,
        seed=cfg.rng_seed,
        restart_index=best.index,
    )


# --- certificate file format (schema bh-cert-1) ------------------------------


def _supnorm_config_to_dict(cfg: SupNormConfig) -> dict:
    return {
        "grid_points_per_axis": cfg.grid_points_per_axis,
        "refine_tolerance": cfg.refine_tolerance,
        "max_refine_iterations": cfg.max_refine_iterations,
        "parallel_chunks": cfg.parallel_chunks,
    }


def _supnorm_config_from_dict(doc: dict) -> SupNormConfig:
    return SupNormConfig(
        grid_points_per_axis=doc["grid_points_per_axis"],
        refine_tolerance=doc["refine_tolerance"],
        max_refine_iterations=doc["max_refine_iterations"],
        parallel_chunks=doc["parallel_chunks"],
    )


def _search_config_to_dict(cfg: SearchConfig) -> dict:
    return {
        "m": cfg.m,
        "num_vars": cfg.num_vars,
        "restarts": cfg.restarts,
        "rng_seed": cfg.rng_seed,
        "step_init": cfg.step_init,
        "step_min": cfg.step_min,
        "eval_budget": cfg.eval_budget,
        "supnorm": _supnorm_config_to_dict(cfg.supnorm),
    }


def _search_config_from_dict(doc: dict) -> SearchConfig:
    return SearchConfig(
        m=doc["m"],
        num_vars=doc["num_vars"],
        restarts=doc["restarts"],
        rng_seed=doc["rng_seed"],
        step_init=doc["step_init"],
        step_min=doc["step_min"],
        eval_budget=doc["eval_budget"],
        supnorm=_supnorm_config_from_dict(doc["supnorm"]),
    )


def certificate_to_dict(cert: WitnessCertificate) -> dict:
    return {
        "schema": CERTIFICATE_SCHEMA,
        "polynomial": polynomial_to_dict(cert.polynomial),
        "coeff_norm": cert.coeff_norm,
        "estimate": cert.estimate,
        "certified_lower": cert.certified_lower,
        "supnorm": {
            "lower_estimate": cert.supnorm.lower_estimate,
            "upper_bracket": cert.supnorm.upper_bracket,
            "arg_angles": list(cert.supnorm.arg_angles),
            "grid_used": cert.supnorm.grid_used,
            "converged": cert.supnorm.converged,
        },
        "config": {
            "supnorm": _supnorm_config_to_dict(cert.supnorm_config),
            "search": (
                _search_config_to_dict(cert.search_config)
                if cert.search_config is not None
                else None
            ),
        },
        "seed": cert.seed,
        "restart_index": cert.restart_index,
    }


def certificate_from_dict(doc: dict) -> WitnessCertificate:
    if doc.get("schema") != CERTIFICATE_SCHEMA:
        raise ValueError(
            f"unsupported certificate schema {doc.get('schema')!r}, "
            f"expected {CERTIFICATE_SCHEMA!r}"
        )
    sup = doc["supnorm"]
    search_doc = doc["config"].get("search")
    return WitnessCertificate(
        polynomial=polynomial_from_dict(doc["polynomial"]),
        coeff_norm=doc["coeff_norm"],
        supnorm=SupNormResult(
            lower_estimate=sup["lower_estimate"],
            upper_bracket=sup["upper_bracket"],
            arg_angles=tuple(sup["arg_angles"]),
            grid_used=sup["grid_used"],
            converged=sup["converged"],
        ),
        certified_lower=doc["certified_lower"],
        estimate=doc["estimate"],
        supnorm_config=_supnorm_config_from_dict(doc["config"]["supnorm"]),
        search_config=(
            _search_config_from_dict(search_doc) if search_doc is not None else None
        ),
        seed=doc.get("seed"),
        restart_index=doc.get("restart_index"),
    )


def certificate_json(cert: WitnessCertificate) -> str:
    """Deterministic serialization: same certificate, same bytes."""
    return json.dumps(certificate_to_dict(cert), indent=2, sort_keys=True) + "\n"


def save_certificate(cert: WitnessCertificate, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(certificate_json(cert))


def load_certificate(path: str) -> WitnessCertificate:
    with open(path) as fh:
        return certificate_from_dict(json.load(fh))
