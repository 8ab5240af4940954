"""Scalar Beta(a, 1-a) generator built from a corrected Johnk proposal.

Every function here is a pure, deterministic map from uniforms to a
variate. Batch versions of the same maps live in :mod:`betaline.kernels`.

Two routes are provided:

* three uniforms: Johnk ratio ``P`` from ``(u1, u2)``, then a mixture step
  driven by ``u3`` that picks ``Unif(0, P)`` with probability
  ``alpha_weight(P)`` and ``Unif(P, 1)`` otherwise;
* two uniforms: ``P`` drawn by inverting its closed-form CDF, then the
  same mixture step driven by ``u2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

__all__ = [
    "DEFAULT_EPS_A",
    "ONE_BELOW",
    "TINY",
    "DomainError",
    "ProposalPoint",
    "ShapeParam",
    "UniformTriple",
    "UnsupportedParameterError",
    "alpha_weight",
    "clamp_open",
    "kappa_of",
    "mixture_step",
    "sample_beta_symmetric_pair",
    "sample_beta_two_uniform",
    "sample_p_inverse",
    "sample_p_inverse_pair",
    "sample_p_johnk",
]

DEFAULT_EPS_A = 2.0**-40

# Extremes of the representable open unit interval.
TINY = math.ulp(0.0)
ONE_BELOW = 1.0 - 2.0**-53


class DomainError(ValueError):
    """An argument lies outside the open interval an operation is defined on."""


class UnsupportedParameterError(ValueError):
    """A distribution parameter is outside the family this library covers."""


def _check_open_unit(name: str, x: float) -> None:
    if not 0.0 < x < 1.0:
        raise DomainError(f"{name}={x!r} must lie in the open interval (0, 1)")


def clamp_open(x: float) -> float:
    """Map a value that rounded onto 0 or 1 back into the open unit interval."""
    if x < TINY:
        return TINY
    if x > ONE_BELOW:
        return ONE_BELOW
    return x


def kappa_of(a: float) -> float:
    """``sin(pi a) / (pi a (1 - a))``, evaluated symmetrically in ``a <-> 1 - a``."""
    m = min(a, 1.0 - a)
    return math.sin(math.pi * m) / (math.pi * m * (1.0 - m))


@dataclass(frozen=True)
class ShapeParam:
    """Validated shape ``a`` of Beta(a, 1-a) with its cached constants.

    ``eps`` guards against shapes so close to 0 or 1 that the exponents
    ``1/a`` and ``1/(1-a)`` exceed double-precision range.
    """

    a: float
    eps: float = field(default=DEFAULT_EPS_A, repr=False, compare=False)
    kappa: float = field(init=False)
    b_complement: float = field(init=False)

    def __post_init__(self) -> None:
        a = float(self.a)
        if not 0.0 < a < 1.0:
            raise UnsupportedParameterError(f"shape a={self.a!r} must lie in (0, 1)")
        if not self.eps <= a <= 1.0 - self.eps:
            raise UnsupportedParameterError(
                f"shape a={a!r} is closer than {self.eps!r} to the boundary of (0, 1)"
            )
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "kappa", kappa_of(a))
        object.__setattr__(self, "b_complement", 1.0 - a)

    def reflected(self) -> "ShapeParam":
        return ShapeParam(1.0 - self.a, eps=self.eps)


@dataclass(frozen=True)
class UniformTriple:
    u1: float
    u2: float
    u3: float

    def __post_init__(self) -> None:
        _check_open_unit("u1", self.u1)
        _check_open_unit("u2", self.u2)
        _check_open_unit("u3", self.u3)


@dataclass(frozen=True)
class ProposalPoint:
    """A proposal value ``p`` together with its left-branch weight ``alpha``."""

    p: float
    alpha: float

    def __post_init__(self) -> None:
        _check_open_unit("p", self.p)
        _check_open_unit("alpha", self.alpha)


def alpha_weight(s: ShapeParam, p: float) -> float:
    """Probability of the ``Unif(0, p)`` branch given proposal value ``p``.

    >>> alpha_weight(ShapeParam(0.5), 0.5)
    0.5
    """
    _check_open_unit("p", p)
    # for a within ~1e-8 of 0 or 1 the true weight is within an ulp of 0 or 1
    return clamp_open(p + s.kappa * (s.b_complement - p) * max(p, 1.0 - p))


def _logistic_ratio(log_u1: float, log_u2: float, a: float, b: float) -> float:
    # u1^(1/a) / (u1^(1/a) + u2^(1/b)) == 1 / (1 + exp(d))
    d = log_u2 / b - log_u1 / a
    if d > 0.0:
        e = math.exp(-d)
        return e / (1.0 + e)
    return 1.0 / (1.0 + math.exp(d))


def sample_p_johnk(s: ShapeParam, u1: float, u2: float) -> float:
    """Johnk ratio ``u1^(1/a) / (u1^(1/a) + u2^(1/(1-a)))`` in log space."""
    _check_open_unit("u1", u1)
    _check_open_unit("u2", u2)
    return clamp_open(_logistic_ratio(math.log(u1), math.log(u2), s.a, s.b_complement))


def _inverse_p(a: float, b: float, u: float) -> float:
    if u <= b:
        r = (u / b) ** (1.0 / a)
        return r / (1.0 + r)
    r = ((1.0 - u) / a) ** (1.0 / b)
    return 1.0 / (1.0 + r)


def sample_p_inverse(s: ShapeParam, u: float) -> float:
    """Inverse of the proposal CDF; the branch point ``u = 1 - a`` maps to 1/2."""
    _check_open_unit("u", u)
    return clamp_open(_inverse_p(s.a, s.b_complement, u))


def sample_p_inverse_pair(s: ShapeParam, u: float) -> tuple[float, float]:
    """``(p, 1 - p)`` for the inverse proposal CDF, each to full relative precision.

    When ``a`` is close to 1 the quantile is often within ``2**-53`` of 1 and
    ``p`` alone cannot represent it; the complement can.
    """
    _check_open_unit("u", u)
    a, b = s.a, s.b_complement
    if u <= b:
        r = (u / b) ** (1.0 / a)
        return r / (1.0 + r), 1.0 / (1.0 + r)
    r = ((1.0 - u) / a) ** (1.0 / b)
    return 1.0 / (1.0 + r), r / (1.0 + r)


def _mix(p: float, alpha: float, u: float) -> float:
    alpha = clamp_open(alpha)
    if u <= alpha:
        return clamp_open(p * (u / alpha))
    return clamp_open(p + (1.0 - p) * ((u - alpha) / (1.0 - alpha)))


def mixture_step(pt: ProposalPoint, u3: float) -> float:
    """Piecewise-linear map of ``u3`` onto ``(0, p]`` or ``(p, 1)``.

    ``u3 == pt.alpha`` maps to ``pt.p`` exactly.
    """
    _check_open_unit("u3", u3)
    return _mix(pt.p, pt.alpha, u3)


def sample_beta_symmetric_pair(s: ShapeParam, u: UniformTriple) -> float:
    """Beta(a, 1-a) variate from three uniforms."""
    p = sample_p_johnk(s, u.u1, u.u2)
    return mixture_step(ProposalPoint(p, alpha_weight(s, p)), u.u3)


def sample_beta_two_uniform(s: ShapeParam, u1: float, u2: float) -> float:
    """Beta(a, 1-a) variate from two uniforms via the inverted proposal CDF."""
    _check_open_unit("u1", u1)
    _check_open_unit("u2", u2)
    a, b, kappa = s.a, s.b_complement, s.kappa
    if u1 <= b:
        r = (u1 / b) ** (1.0 / a)
        p = clamp_open(r / (1.0 + r))
        alpha = p + kappa * (b - p) * (1.0 - p)
    else:
        r = ((1.0 - u1) / a) ** (1.0 / b)
        p = clamp_open(1.0 / (1.0 + r))
        alpha = p + kappa * (b - p) * p
    return _mix(p, alpha, u2)
