"""The verification suite run by ``betaline verify``.

Each check is a function returning a :class:`CheckResult`. ``run_checks``
executes them in a fixed order; ``sabotage="no-mixture"`` swaps the
Beta(a, 1-a) sampler for its uncorrected proposal so the suite can show
that it notices.
"""

from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np

from betaline import harness, refmath, sampling
from betaline.core import ShapeParam, alpha_weight, sample_p_inverse_pair
from betaline.streams import DEFAULT_SEED, UniformStream

SABOTAGE_MODES = ("no-mixture",)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0

    def as_dict(self) -> dict:
        return asdict(self)


def _grid_pairs(seed: int, count: int, stream_id: int) -> tuple[np.ndarray, np.ndarray]:
    u = UniformStream(seed, stream_id).block(count, 2)
    return u[:, 0], u[:, 1]


def check_alpha_bounds(count: int, seed: int) -> CheckResult:
    a_vals, p_vals = _grid_pairs(seed, count, 201)
    worst_lo, worst_hi, bad = 1.0, 0.0, 0
    for a, p in zip(a_vals.tolist(), p_vals.tolist()):
        w = alpha_weight(ShapeParam(a), p)
        worst_lo, worst_hi = min(worst_lo, w), max(worst_hi, w)
        bad += not 0.0 < w < 1.0
    return CheckResult("alpha_bounds", bad == 0, {"pairs": count, "min": worst_lo, "max": worst_hi, "violations": bad})


def check_alpha_symmetry(count: int, seed: int, tol: float = 1e-12) -> CheckResult:
    a_vals, p_vals = _grid_pairs(seed, count, 202)
    worst = 0.0
    for a, p in zip(a_vals.tolist(), p_vals.tolist()):
        lhs = alpha_weight(ShapeParam(1.0 - a), 1.0 - p)
        rhs = 1.0 - alpha_weight(ShapeParam(a), p)
        worst = max(worst, abs(lhs - rhs))
    return CheckResult("alpha_symmetry", worst <= tol, {"pairs": count, "max_abs_diff": worst, "tol": tol})


def forced_weight(s: ShapeParam, b: float) -> float:
    """``b - b (1-b) g'(b) / f_P(b)`` with ``g' = g (a + b - 1) / (b (1 - b))``."""
    g = refmath.target_density(s, b)
    ratio = math.exp(g.log_value - refmath.proposal_density(s, b).log_value)
    g_prime_over_fp = (s.a + b - 1.0) / (b * (1.0 - b)) * ratio
    return b - b * (1.0 - b) * g_prime_over_fp


def check_alpha_force(count: int, seed: int, tol: float = 1e-12) -> CheckResult:
    a_vals, b_vals = _grid_pairs(seed, count, 203)
    worst = 0.0
    for a, b in zip(a_vals.tolist(), b_vals.tolist()):
        s = ShapeParam(a)
        w = alpha_weight(s, b)
        worst = max(worst, abs(w - forced_weight(s, b)) / abs(w))
    return CheckResult("alpha_force_identity", worst <= tol, {"points": count, "max_rel_diff": worst, "tol": tol})


def check_cdf_roundtrip(points: int = 1000, shapes=(0.05, 0.5, 0.95), tol: float = 1e-10) -> CheckResult:
    worst = 0.0
    for a in shapes:
        s = ShapeParam(a)
        for i in range(points):
            u = (i + 0.5) / points
            worst = max(worst, abs(refmath.proposal_cdf(s, *sample_p_inverse_pair(s, u)) - u) / u)
    return CheckResult("cdf_roundtrip", worst < tol, {"shapes": list(shapes), "points": points, "max_rel_diff": worst})


def check_mixture_oracle(shapes=(0.1, 0.3, 0.5, 0.7, 0.9), points: int = 51, tol: float = 1e-5) -> CheckResult:
    worst = 0.0
    for a in shapes:
        s = ShapeParam(a)
        for b in np.linspace(0.01, 0.99, points).tolist():
            worst = max(worst, abs(refmath.mixture_marginal_oracle(s, b) - refmath.target_density(s, b).value))
    return CheckResult("mixture_oracle", worst < tol, {"shapes": list(shapes), "points": points, "max_abs_diff": worst})


BetaDraw = Callable[[float, int, int, str, int], np.ndarray]


@dataclass(frozen=True)
class Route:
    """How the sampling checks obtain Beta(a, 1-a) draws."""

    batch: BetaDraw
    factory: harness.DrawFactory


def _true_batch(a, n, seed, variant, stream_id):
    return sampling.beta_sym(a, n, seed, variant, stream_id).values


def _proposal_batch(a, n, seed, variant, stream_id):
    return sampling.proposal(a, n, seed, variant, stream_id).values


TRUE_ROUTE = Route(_true_batch, harness.beta_draw_factory)
NO_MIXTURE_ROUTE = Route(_proposal_batch, harness.proposal_draw_factory)


def check_moment_grid(n: int, seed: int, route: Route = TRUE_ROUTE) -> CheckResult:
    reports = harness.run_moment_table(n=n, seed=seed, draw_factory=route.factory)
    zs = [abs(r.z) for r in reports]
    return CheckResult(
        "moment_grid",
        harness.moment_table_ok(reports),
        {"n": n, "cells": len(zs), "within_3": int(sum(z <= 3 for z in zs)), "max_abs_z": float(max(zs))},
    )


def check_ks_target(n: int, seed: int, route: Route = TRUE_ROUTE, shapes=(0.3, 0.7)) -> CheckResult:
    stats = {}
    ok = True
    for a in shapes:
        r = harness.beta_sym_ks(route.batch(a, n, seed, sampling.DEFAULT_VARIANT, 301), a)
        stats[str(a)] = {"D": r.statistic, "passed": r.passed}
        ok &= r.passed
    return CheckResult("ks_target", ok, {"n": n, "per_shape": stats})


def check_variants(n: int, seed: int, shapes=(0.05, 0.5, 0.95)) -> CheckResult:
    stats = {}
    for a in shapes:
        r = harness.compare_variants(a, n, seed)
        stats[str(a)] = {"D": r.statistic, "passed": r.passed}
    return CheckResult("variant_equivalence", all(v["passed"] for v in stats.values()), {"n": n, "per_shape": stats})


def check_reflection(n: int, seed: int, route: Route = TRUE_ROUTE, a: float = 0.3) -> CheckResult:
    x = route.batch(a, n, seed, sampling.DEFAULT_VARIANT, 401)
    y = 1.0 - route.batch(1.0 - a, n, seed, sampling.DEFAULT_VARIANT, 402)
    r = harness.ks_two_sample(x, y)
    return CheckResult("reflection_ks", r.passed, {"n": n, "a": a, "D": r.statistic})


def check_negative_control(n: int, seed: int) -> CheckResult:
    """The uncorrected proposal must be rejected for every a in 0.1..0.9."""
    missed = []
    for i in range(1, 10):
        a = i / 10
        if harness.beta_sym_ks(sampling.proposal(a, n, seed, stream_id=500 + i).values, a).passed:
            missed.append(a)
    return CheckResult("negative_control", not missed, {"n": n, "undetected": missed})


def check_reflection_formula(tol: float = 1e-12) -> CheckResult:
    worst = 0.0
    for i in range(1, 100):
        a = i / 100
        lhs = math.exp(-(refmath.log_gamma(a) + refmath.log_gamma(1.0 - a)))
        worst = max(worst, abs(lhs - math.sin(math.pi * a) / math.pi))
    return CheckResult("euler_reflection", worst < tol, {"max_abs_diff": worst})


def run_checks(
    n: int = 10**5,
    seed: int = DEFAULT_SEED,
    sabotage: str | None = None,
    identity_points: int = 10**4,
) -> list[CheckResult]:
    if sabotage is not None and sabotage not in SABOTAGE_MODES:
        raise ValueError(f"unknown sabotage mode {sabotage!r}")
    route = NO_MIXTURE_ROUTE if sabotage == "no-mixture" else TRUE_ROUTE
    plan = [
        lambda: check_alpha_bounds(identity_points, seed),
        lambda: check_alpha_symmetry(identity_points, seed),
        lambda: check_alpha_force(identity_points, seed),
        lambda: check_cdf_roundtrip(),
        lambda: check_mixture_oracle(),
        lambda: check_reflection_formula(),
        lambda: check_moment_grid(max(n, 10**4), seed, route),
        lambda: check_ks_target(n, seed, route),
        lambda: check_variants(n, seed),
        lambda: check_reflection(n, seed, route),
        lambda: check_negative_control(n, seed),
    ]
    results = []
    for step in plan:
        t0 = time.perf_counter()
        r = step()
        r.seconds = round(time.perf_counter() - t0, 3)
        results.append(r)
    return results
