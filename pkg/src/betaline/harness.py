"""Moment diagnostics and goodness-of-fit checks for the samplers.

``run_moment_table`` reproduces the moment table: for each shape ``a`` it
draws ``n`` Beta(a, 1-a) variates and reports, for ``k = 1..k_max``, the
empirical moment, the exact moment, its Monte Carlo standard error and
the z-score. Power sums are streamed in fixed-size chunks with
compensated summation, so memory stays bounded and results do not depend
on ``n`` being a multiple of anything.

Each ``a`` on the grid gets its own counter-based substream
``stream_id = 1 + index``; the ``k`` orders share one set of draws.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Callable, Sequence

import numpy as np
from scipy import stats

from betaline import kernels
from betaline.core import ONE_BELOW, TINY, ShapeParam
from betaline.refmath import target_cdf_cells, theoretical_moment
from betaline.sampling import THREE_UNIFORM, TWO_UNIFORM, VARIANTS, _core_width, beta_sym_from_block
from betaline.streams import DEFAULT_SEED, UniformStream

__all__ = [
    "A_GRID",
    "DegenerateSampleError",
    "GofReport",
    "MomentReport",
    "compare_variants",
    "ks_2samp_statistic",
    "ks_statistic",
    "ks_test",
    "ks_two_sample",
    "beta_draw_factory",
    "mcse",
    "proposal_draw_factory",
    "beta_sym_ks",
    "kolmogorov_critical",
    "mean_variance_z",
    "mean_z",
    "moment_table_ok",
    "power_sums",
    "run_moment_table",
]

A_GRID = tuple(round(0.05 * i, 2) for i in range(1, 20))
DEFAULT_LEVEL = 1e-3
CHUNK = 1 << 18

# variant -> stream id offset used by compare_variants
_VARIANT_STREAM = {THREE_UNIFORM: 101, TWO_UNIFORM: 102}


class DegenerateSampleError(ValueError):
    """The sample has no spread, so a standard error is undefined."""


@dataclass(frozen=True)
class MomentReport:
    a: float
    k: int
    emp: float
    theo: float
    mcse: float
    z: float
    n: int


@dataclass(frozen=True)
class GofReport:
    kind: str
    statistic: float
    n: int
    passed: bool
    level: float
    critical: float
    m: int | None = None

    def as_dict(self) -> dict:
        return asdict(self)


def power_sums(x, kmax: int, state: np.ndarray | None = None) -> np.ndarray:
    """Compensated ``sum(x**j)`` for ``j = 1..kmax``; pass ``state`` to stream."""
    if state is None:
        state = np.zeros((2, kmax))
    kernels.accumulate_power_sums(x, state)
    return state


def _finish(state: np.ndarray) -> np.ndarray:
    return state[0] + state[1]


def mcse(samples_powersums: Sequence[float], k: int, n: int) -> float:
    """Standard error of the k-th empirical moment, ``sqrt((m_2k - m_k**2) / n)``.

    ``samples_powersums[j - 1]`` holds ``sum(x**j)``; orders up to ``2k`` are needed.
    """
    if n < 2:
        raise ValueError("mcse needs at least two samples")
    if len(samples_powersums) < 2 * k:
        raise ValueError(f"need power sums up to order {2 * k}")
    m_k = samples_powersums[k - 1] / n
    m_2k = samples_powersums[2 * k - 1] / n
    var = m_2k - m_k * m_k
    if not var > 0.0:
        raise DegenerateSampleError(f"moment-{k} variance estimate {var!r} is not positive")
    return math.sqrt(var / n)


def _stream_moments(
    draw: Callable[[UniformStream, int], np.ndarray], stream: UniformStream, n: int, kmax: int
) -> np.ndarray:
    state = np.zeros((2, kmax))
    done = 0
    while done < n:
        size = min(CHUNK, n - done)
        power_sums(draw(stream, size), kmax, state)
        done += size
    return _finish(state)


def beta_draw_factory(a: float, variant: str):
    s = ShapeParam(a)
    width = _core_width(variant)

    def draw(stream: UniformStream, size: int) -> np.ndarray:
        return beta_sym_from_block(s, stream.block(size, width), variant)

    return draw


def proposal_draw_factory(a: float, variant: str):
    """Draws of the uncorrected proposal; a deliberately wrong sampler."""
    s = ShapeParam(a)

    def draw(stream: UniformStream, size: int) -> np.ndarray:
        if variant == THREE_UNIFORM:
            return kernels.johnk_p(s.a, stream.block(size, 2))
        return kernels.inverse_p(s.a, stream.uniforms(size))

    return draw


DrawFactory = Callable[[float, str], Callable[[UniformStream, int], np.ndarray]]


def run_moment_table(
    a_grid: Sequence[float] = A_GRID,
    n: int = 10**6,
    k_max: int = 3,
    seed: int = DEFAULT_SEED,
    variant: str = THREE_UNIFORM,
    workers: int = 1,
    draw_factory: DrawFactory = beta_draw_factory,
) -> list[MomentReport]:
    """One MomentReport per ``(a, k)``, in grid order then ``k`` order.

    ``draw_factory`` exists for negative controls; it maps ``(a, variant)``
    to a function drawing ``size`` variates from a stream.
    """
    if n < 10**4:
        raise ValueError("moment table needs n >= 10**4")
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    shapes = [ShapeParam(a) for a in a_grid]

    def cell(index: int) -> list[MomentReport]:
        s = shapes[index]
        sums = _stream_moments(draw_factory(s.a, variant), UniformStream(seed, 1 + index), n, 2 * k_max)
        rows = []
        for k in range(1, k_max + 1):
            emp = sums[k - 1] / n
            theo = theoretical_moment(s, k)
            se = mcse(sums, k, n)
            rows.append(MomentReport(s.a, k, float(emp), theo, se, float((emp - theo) / se), n))
        return rows

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(cell, range(len(shapes))))
    else:
        results = [cell(i) for i in range(len(shapes))]
    return [r for rows in results for r in rows]


def moment_table_ok(reports: Sequence[MomentReport], soft: float = 3.0, hard: float = 5.0) -> bool:
    """Pass rule for a moment grid: at most 5% of cells (rounded up) beyond ``soft``, none beyond ``hard``.

    For the 57-cell table that means at least 54 cells with ``|z| <= 3``.
    """
    zs = np.abs([r.z for r in reports])
    allowed = math.ceil(len(zs) * 5 / 100)
    return bool(np.sum(zs > soft) <= allowed and np.all(zs <= hard))


def kolmogorov_critical(level: float) -> float:
    """Asymptotic critical value of ``sqrt(n) D`` at the given level."""
    return float(stats.kstwobign.isf(level))


def ks_statistic(samples, cdf_values_of: Callable[[np.ndarray], np.ndarray]) -> float:
    """Kolmogorov distance between the sample and a continuous CDF on (0, 1).

    Samplers clamp results into ``[TINY, ONE_BELOW]``, so all mass above
    ``ONE_BELOW`` (or below ``TINY``) sits in an atom there. The CDF is
    compared in that clamped form: 1 from ``ONE_BELOW`` on, 0 left of ``TINY``.

    ``cdf_values_of`` may return a pair ``(left, right)`` giving the CDF at
    the lower and upper rounding boundaries of each sample, which is the
    exact comparison for a sampler whose output is rounded to doubles.
    """
    x = np.sort(np.asarray(samples, dtype=np.float64))
    n = len(x)
    f = cdf_values_of(x)
    if isinstance(f, tuple):
        f_left, f_right = (np.asarray(v, dtype=np.float64) for v in f)
    else:
        f_left = f_right = np.asarray(f, dtype=np.float64)
    f_right = np.where(x >= ONE_BELOW, 1.0, f_right)
    f_left = np.where(x <= TINY, 0.0, f_left)
    i = np.arange(1, n + 1)
    return float(max(np.max(i / n - f_right), np.max(f_left - (i - 1) / n)))


def ks_test(samples, cdf_oracle: Callable[[np.ndarray], np.ndarray], level: float = DEFAULT_LEVEL) -> GofReport:
    """One-sample KS against a vectorised CDF; passes iff ``sqrt(n) D`` is below the critical value."""
    n = len(samples)
    d = ks_statistic(samples, cdf_oracle)
    crit = kolmogorov_critical(level)
    return GofReport("KS", d, n, bool(math.sqrt(n) * d < crit), level, crit)


def beta_sym_ks(samples, a: float, level: float = DEFAULT_LEVEL) -> GofReport:
    s = ShapeParam(a)
    return ks_test(samples, lambda x: target_cdf_cells(s, x), level)


def ks_2samp_statistic(x, y) -> float:
    x = np.sort(np.asarray(x, dtype=np.float64))
    y = np.sort(np.asarray(y, dtype=np.float64))
    grid = np.concatenate([x, y])
    fx = np.searchsorted(x, grid, side="right") / len(x)
    fy = np.searchsorted(y, grid, side="right") / len(y)
    return float(np.max(np.abs(fx - fy)))


def ks_two_sample(x, y, level: float = DEFAULT_LEVEL) -> GofReport:
    n, m = len(x), len(y)
    d = ks_2samp_statistic(x, y)
    crit = kolmogorov_critical(level)
    passed = math.sqrt(n * m / (n + m)) * d < crit
    return GofReport("KS-2", d, n, bool(passed), level, crit, m)


def compare_variants(
    a: float,
    n: int,
    seed: int = DEFAULT_SEED,
    variants: tuple[str, str] = (THREE_UNIFORM, TWO_UNIFORM),
    level: float = DEFAULT_LEVEL,
) -> GofReport:
    """Two-sample KS between two generator variants at equal ``n``.

    Each variant reads its own substream, so comparing a variant with
    itself yields identical samples and ``D = 0``.
    """
    if n < 10**4:
        raise ValueError("compare_variants needs n >= 10**4")
    s = ShapeParam(a)
    out = []
    for v in variants:
        stream = UniformStream(seed, _VARIANT_STREAM[v])
        out.append(beta_sym_from_block(s, stream.block(n, _core_width(v)), v))
    return ks_two_sample(out[0], out[1], level)


def mean_variance_z(x, mean: float, variance: float) -> tuple[float, float]:
    """z-scores of the sample mean and sample variance against exact values.

    The variance standard error uses the plug-in fourth central moment,
    ``sqrt((mu4 - s2**2) / n)``.
    """
    x = np.asarray(x, dtype=np.float64)
    n = len(x)
    m = math.fsum(x) / n
    dev = x - m
    s2 = math.fsum(dev * dev) / n
    mu4 = math.fsum(dev**4) / n
    z_mean = (m - mean) / math.sqrt(s2 / n)
    z_var = (s2 - variance) / math.sqrt((mu4 - s2 * s2) / n)
    return z_mean, z_var


def mean_z(x, mean: float) -> float:
    x = np.asarray(x, dtype=np.float64)
    n = len(x)
    m = math.fsum(x) / n
    dev = x - m
    return (m - mean) / math.sqrt(math.fsum(dev * dev) / n / n)
