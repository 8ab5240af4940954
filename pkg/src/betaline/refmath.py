"""Closed-form densities, CDFs and moments, plus numeric oracles.

The oracles here are deliberately independent of the sampling code path:
``mixture_marginal_oracle`` integrates the mixture representation of the
sampler's output density directly, and ``target_cdf`` is built by
quadrature of the Beta(a, 1-a) density rather than from any special
function library.

Integrands with power-law endpoint singularities are handled by
``unit_quad``, which substitutes ``x - lo = L t**q`` (and the mirror image
at ``hi``) with ``q = 1 / (1 + e)`` for an endpoint behaving like
``|x - end|**e``. This turns the singular factor into a bounded one before
handing the integral to an adaptive Gauss-Kronrod rule.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np
from scipy import integrate

from betaline.core import DomainError, ShapeParam, alpha_weight, clamp_open

__all__ = [
    "DensityEval",
    "MomentSpec",
    "QuadratureError",
    "log_gamma",
    "mixture_marginal_oracle",
    "moment_by_quadrature",
    "proposal_cdf",
    "proposal_cdf_array",
    "proposal_density",
    "target_cdf",
    "target_cdf_cells",
    "target_density",
    "theoretical_moment",
    "unit_quad",
]

ORACLE_MAX_ERROR = 1e-6


class QuadratureError(ArithmeticError):
    """A quadrature error estimate exceeded the caller's bound."""


@dataclass(frozen=True)
class DensityEval:
    x: float
    value: float
    log_value: float


@dataclass(frozen=True)
class MomentSpec:
    k: int
    theoretical: float


def _check_open(name: str, x: float) -> None:
    if not 0.0 < x < 1.0:
        raise DomainError(f"{name}={x!r} must lie in the open interval (0, 1)")


def _log_sin_over_pi(a: float) -> float:
    return math.log(math.sin(math.pi * min(a, 1.0 - a)) / math.pi)


def _log_target(a: float, x: float, y: float) -> float:
    # y == 1 - x, kept separately so the density stays accurate near 1
    return _log_sin_over_pi(a) + (a - 1.0) * math.log(x) - a * math.log(y)


def _log_proposal(a: float, x: float, y: float) -> float:
    return math.log(a * (1.0 - a)) + (a - 1.0) * math.log(x) - a * math.log(y) - math.log(max(x, y))


def target_density(s: ShapeParam, b: float) -> DensityEval:
    """Beta(a, 1-a) density ``sin(pi a)/pi * b**(a-1) * (1-b)**(-a)``."""
    _check_open("b", b)
    lv = _log_target(s.a, b, 1.0 - b)
    return DensityEval(b, math.exp(lv), lv)


def proposal_density(s: ShapeParam, p: float) -> DensityEval:
    """Density of the Johnk ratio ``P``."""
    _check_open("p", p)
    lv = _log_proposal(s.a, p, 1.0 - p)
    return DensityEval(p, math.exp(lv), lv)


def proposal_cdf(s: ShapeParam, p: float, q: float | None = None) -> float:
    """CDF of the Johnk ratio. ``q``, if given, is ``1 - p`` carried separately."""
    if q is None:
        _check_open("p", p)
        q = 1.0 - p
    elif not (p > 0.0 and q > 0.0):
        raise DomainError(f"p={p!r}, q={q!r} must both be positive")
    a = s.a
    if p <= q:
        return (1.0 - a) * (p / q) ** a
    return 1.0 - a * (q / p) ** (1.0 - a)


def proposal_cdf_array(s: ShapeParam, p) -> np.ndarray:
    p = np.asarray(p, dtype=np.float64)
    a = s.a
    q = 1.0 - p
    with np.errstate(divide="ignore", invalid="ignore"):
        lo = (1.0 - a) * (p / q) ** a
        hi = 1.0 - a * (q / p) ** (1.0 - a)
    return np.where(p <= 0.5, lo, hi)


def theoretical_moment(s: ShapeParam, k: int) -> float:
    """``E[B**k] = a (a+1) ... (a+k-1) / k!`` for B ~ Beta(a, 1-a)."""
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"moment order must be a positive integer, got {k!r}")
    # exact rational product, rounded once
    a = Fraction(s.a)
    m = Fraction(1)
    for j in range(k):
        m *= (a + j) / (j + 1)
    return float(m)


_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def log_gamma(x: float) -> float:
    """``log Gamma(x)`` for ``x > 0`` by the Lanczos approximation (g=7, n=9).

    Values below 1/2 are shifted up with ``Gamma(x) = Gamma(x+1)/x``; the
    reflection formula is intentionally not used so that checks of it
    remain meaningful.
    """
    if not x > 0.0:
        raise DomainError(f"log_gamma needs x > 0, got {x!r}")
    if x < 0.5:
        return log_gamma(x + 1.0) - math.log(x)
    z = x - 1.0
    acc = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        acc += _LANCZOS[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return 0.5 * math.log(2.0 * math.pi) + (z + 0.5) * math.log(t) - t + math.log(acc)


LogIntegrand = Callable[[float, float], float]


def unit_quad(
    log_f: LogIntegrand,
    lo: float,
    hi: float,
    lo_exp: float = 0.0,
    hi_exp: float = 0.0,
    epsabs: float = 1e-13,
    epsrel: float = 1e-11,
) -> tuple[float, float]:
    """Integrate ``exp(log_f(x, 1 - x))`` over ``[lo, hi]`` inside (0, 1).

    ``lo_exp``/``hi_exp`` are the exponents of integrable power-law
    singularities at the ends (``> -1``). Returns ``(value, abserr)``.
    """
    if not 0.0 <= lo < hi <= 1.0:
        raise ValueError(f"bad interval [{lo}, {hi}]")
    if lo_exp <= -1.0 or hi_exp <= -1.0:
        raise ValueError("endpoint exponents must exceed -1 for integrability")
    if lo_exp != 0.0 and hi_exp != 0.0:
        mid = 0.5 * (lo + hi)
        v1, e1 = unit_quad(log_f, lo, mid, lo_exp, 0.0, epsabs, epsrel)
        v2, e2 = unit_quad(log_f, mid, hi, 0.0, hi_exp, epsabs, epsrel)
        return v1 + v2, e1 + e2

    length = hi - lo
    if lo_exp != 0.0:
        q = 1.0 / (1.0 + lo_exp)
        log_jac0 = math.log(length * q)

        def g(t: float) -> float:
            if t <= 0.0:
                return 0.0
            x = lo + length * t**q
            return math.exp(log_f(x, 1.0 - x) + log_jac0 + (q - 1.0) * math.log(t))

    elif hi_exp != 0.0:
        q = 1.0 / (1.0 + hi_exp)
        log_jac0 = math.log(length * q)

        def g(t: float) -> float:
            if t <= 0.0:
                return 0.0
            d = length * t**q
            x = hi - d
            y = d if hi == 1.0 else 1.0 - x
            return math.exp(log_f(x, y) + log_jac0 + (q - 1.0) * math.log(t))

    else:

        def g(t: float) -> float:
            x = lo + length * t
            return length * math.exp(log_f(x, 1.0 - x))

    value, err = integrate.quad(g, 0.0, 1.0, epsabs=epsabs, epsrel=epsrel, limit=200)
    return value, err


def moment_by_quadrature(s: ShapeParam, k: int) -> float:
    """``integral of b**k g(b)`` over (0, 1); ``k = 0`` checks normalisation."""
    a = s.a
    value, _ = unit_quad(lambda x, y: k * math.log(x) + _log_target(a, x, y), 0.0, 1.0, a - 1.0, -a)
    return value


def mixture_marginal_oracle(s: ShapeParam, b: float, return_error: bool = False):
    """Density at ``b`` of the mixture-corrected output, by direct quadrature.

    Integrates ``alpha(p)/p f_P(p)`` over ``(b, 1)`` and
    ``(1 - alpha(p))/(1 - p) f_P(p)`` over ``(0, b)``, splitting at the
    kink ``p = 1/2`` of ``f_P``. Raises QuadratureError if the combined
    error estimate exceeds 1e-6.
    """
    _check_open("b", b)
    a = s.a

    def left(x: float, y: float) -> float:
        w = alpha_weight(s, clamp_open(x))
        return math.log(w) - math.log(x) + _log_proposal(a, x, y)

    def right(x: float, y: float) -> float:
        w = alpha_weight(s, clamp_open(x))
        return math.log1p(-w) - math.log(y) + _log_proposal(a, x, y)

    pieces = []
    if b < 0.5:
        pieces.append(unit_quad(left, b, 0.5))
        pieces.append(unit_quad(left, 0.5, 1.0, hi_exp=-a))
        pieces.append(unit_quad(right, 0.0, b, lo_exp=a - 1.0))
    else:
        pieces.append(unit_quad(left, b, 1.0, hi_exp=-a))
        pieces.append(unit_quad(right, 0.0, 0.5, lo_exp=a - 1.0))
        if b > 0.5:
            pieces.append(unit_quad(right, 0.5, b))
    value = math.fsum(v for v, _ in pieces)
    err = math.fsum(e for _, e in pieces)
    if err > ORACLE_MAX_ERROR:
        raise QuadratureError(f"mixture oracle at a={a}, b={b}: error estimate {err:.3g} exceeds {ORACLE_MAX_ERROR}")
    return (value, err) if return_error else value


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)
_CDF_PANELS = 256


_GRADED_LEVELS = 40


def _integrand(a: float, t: np.ndarray) -> np.ndarray:
    return (1.0 - t ** (1.0 / a)) ** (-a)


def _graded_from_zero(a: float, t_end: np.ndarray) -> np.ndarray:
    # t**(1/a) is not smooth at 0, so [0, T] is split geometrically at T 2**-k
    k = np.arange(_GRADED_LEVELS, dtype=np.float64)
    hi = t_end[:, None] * 2.0**-k
    lo = hi * 0.5
    half = 0.5 * (hi - lo)
    t = lo[..., None] + half[..., None] * (_GL_NODES + 1.0)
    body = np.sum(half * (_integrand(a, t) @ _GL_WEIGHTS), axis=1)
    # the remainder [0, T 2**-40] contributes its length to double precision
    return body + t_end * 2.0**-_GRADED_LEVELS


@functools.lru_cache(maxsize=64)
def _half_cdf_table(a: float) -> tuple[float, float, np.ndarray]:
    # G(x) = c * int_0^{x^a} (1 - t^{1/a})^{-a} dt  for x <= 1/2, via t = x^a
    c = math.sin(math.pi * min(a, 1.0 - a)) / (math.pi * a)
    h = 0.5**a / _CDF_PANELS
    left = np.arange(_CDF_PANELS) * h
    t = left[:, None] + 0.5 * h * (_GL_NODES + 1.0)
    panel = 0.5 * h * (_integrand(a, t) @ _GL_WEIGHTS)
    panel[0] = _graded_from_zero(a, np.array([h]))[0]
    cum = np.concatenate(([0.0], np.cumsum(panel)))
    return c, h, cum


def _half_cdf(a: float, x: np.ndarray) -> np.ndarray:
    c, h, cum = _half_cdf_table(a)
    t_end = x**a
    j = np.minimum((t_end / h).astype(np.int64), _CDF_PANELS - 1)
    start = j * h
    half = 0.5 * (t_end - start)
    t = start[:, None] + half[:, None] * (_GL_NODES + 1.0)
    tail = half * (_integrand(a, t) @ _GL_WEIGHTS)
    first = j == 0
    if np.any(first):
        tail[first] = _graded_from_zero(a, t_end[first])
    return c * (cum[j] + tail)


def target_cdf(s: ShapeParam, x) -> np.ndarray:
    """Beta(a, 1-a) CDF by Gauss-Legendre quadrature of the density.

    Uses ``G_a(x) = 1 - G_{1-a}(1 - x)`` above 1/2 so both halves only
    integrate over the region where the substituted integrand is smooth.
    """
    x = np.atleast_1d(np.asarray(x, dtype=np.float64))
    if np.any((x <= 0.0) | (x >= 1.0)):
        raise DomainError("target_cdf is defined on the open interval (0, 1)")
    out = np.empty_like(x)
    lower = x <= 0.5
    out[lower] = _half_cdf(s.a, x[lower])
    out[~lower] = 1.0 - _half_cdf(1.0 - s.a, 1.0 - x[~lower])
    return out


_HALF_ULP_UPPER = 2.0**-54


def target_cdf_cells(s: ShapeParam, x) -> tuple[np.ndarray, np.ndarray]:
    """CDF at the lower and upper rounding boundaries of each double ``x``.

    For ``x > 1/2`` the doubles are ``2**-53`` apart, which near 1 is coarse
    relative to the Beta(a, 1-a) mass when ``a`` is close to 1. The cell of
    ``x`` is ``[x - 2**-54, x + 2**-54]`` and is evaluated exactly through
    ``y = 1 - x``. Below 1/2 the cells are negligible and both values equal
    ``target_cdf(x)``.
    """
    x = np.atleast_1d(np.asarray(x, dtype=np.float64))
    if np.any((x <= 0.0) | (x >= 1.0)):
        raise DomainError("target_cdf_cells is defined on the open interval (0, 1)")
    left = np.empty_like(x)
    right = np.empty_like(x)
    lower = x <= 0.5
    left[lower] = right[lower] = _half_cdf(s.a, x[lower])
    y = 1.0 - x[~lower]
    b = 1.0 - s.a
    left[~lower] = 1.0 - _half_cdf(b, np.minimum(y + _HALF_ULP_UPPER, 0.5))
    right[~lower] = 1.0 - _half_cdf(b, y - _HALF_ULP_UPPER)
    return left, right
