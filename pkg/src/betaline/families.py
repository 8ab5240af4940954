"""Gamma, Beta and Dirichlet samplers derived from Beta(a, 1-a).

- Gamma(c), 0 < c < 1: ``E * B`` with ``E = -log U ~ Exp(1)`` and
  ``B ~ Beta(c, 1-c)``.
- Beta(a, b) with ``min(a, b) < 1``: for ``a < 1``, ``B V / (1 - (1-B) V)``
  with ``B ~ Beta(a, 1-a)`` and ``V = 1 - U**(1/b) ~ Beta(1, b)``; for
  ``a >= 1 > b`` use ``1 - Beta(b, a)``.
- Dirichlet(alpha), every ``alpha_i`` in (0, 1): normalised independent
  Gamma(alpha_i) draws. Stick-breaking with the Beta sampler would work
  too but needs Beta shapes that can leave the covered family.

The scalar functions here take their uniforms explicitly; each draw uses
a fixed budget (4 uniforms for Gamma and Beta, ``4 d`` for Dirichlet).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from betaline.core import (
    ONE_BELOW,
    DomainError,
    ShapeParam,
    UniformTriple,
    UnsupportedParameterError,
    clamp_open,
    sample_beta_symmetric_pair,
)

__all__ = [
    "BetaShapePair",
    "DirichletParams",
    "DirichletVector",
    "GammaShape",
    "NumericError",
    "beta_from_parts",
    "sample_beta_general",
    "sample_dirichlet",
    "sample_gamma",
]


class NumericError(ArithmeticError):
    """A draw could not be represented in double precision."""


@dataclass(frozen=True)
class GammaShape:
    c: float
    scale: float = 1.0

    def __post_init__(self) -> None:
        if not 0.0 < self.c < 1.0:
            raise UnsupportedParameterError(f"Gamma shape c={self.c!r} must lie in (0, 1)")
        if not self.scale > 0.0 or math.isinf(self.scale):
            raise UnsupportedParameterError(f"Gamma scale={self.scale!r} must be positive and finite")

    @property
    def shape(self) -> ShapeParam:
        return ShapeParam(self.c)


@dataclass(frozen=True)
class BetaShapePair:
    a: float
    b: float

    def __post_init__(self) -> None:
        if not (self.a > 0.0 and self.b > 0.0) or math.isinf(self.a) or math.isinf(self.b):
            raise UnsupportedParameterError(
                f"Beta shapes must be positive and finite, got a={self.a!r}, b={self.b!r}"
            )
        if min(self.a, self.b) >= 1.0:
            raise UnsupportedParameterError(
                f"Beta(a={self.a!r}, b={self.b!r}) is not supported: requires min(a, b) < 1"
            )


@dataclass(frozen=True)
class DirichletParams:
    alphas: tuple[float, ...]

    def __init__(self, alphas: Sequence[float]):
        alphas = tuple(float(x) for x in alphas)
        if len(alphas) < 2:
            raise UnsupportedParameterError("Dirichlet needs at least two concentrations")
        for i, x in enumerate(alphas):
            if not 0.0 < x < 1.0:
                raise UnsupportedParameterError(
                    f"Dirichlet concentration alphas[{i}]={x!r} must lie in (0, 1)"
                )
        object.__setattr__(self, "alphas", alphas)

    @property
    def d(self) -> int:
        return len(self.alphas)


@dataclass(frozen=True)
class DirichletVector:
    components: tuple[float, ...]
    params: DirichletParams

    def __len__(self) -> int:
        return len(self.components)

    def __iter__(self):
        return iter(self.components)


def sample_gamma(g: GammaShape, u: UniformTriple, u4: float) -> float:
    if not 0.0 < u4 < 1.0:
        raise DomainError(f"u4={u4!r} must lie in the open interval (0, 1)")
    b = sample_beta_symmetric_pair(g.shape, u)
    return g.scale * (-math.log(u4)) * b


def beta_from_parts(b_sym: float, u4: float, b: float) -> float:
    """Combine a Beta(a, 1-a) draw with ``V = 1 - u4**(1/b)`` into Beta(a, b).

    ``BV / (1 - (1-B) V)`` is evaluated as ``BV / (W + BV)`` with
    ``W = u4**(1/b) = 1 - V`` so that neither ``V`` nor the denominator
    suffers cancellation.
    """
    t = math.log(u4) / b
    v = -math.expm1(t)
    w = math.exp(t)
    bv = b_sym * v
    return clamp_open(bv / (w + bv))


def sample_beta_general(p: BetaShapePair, u: UniformTriple, u4: float) -> float:
    """Beta(a, b) for ``min(a, b) < 1``; the ``a`` branch wins when both are below 1."""
    if not 0.0 < u4 < 1.0:
        raise DomainError(f"u4={u4!r} must lie in the open interval (0, 1)")
    if p.a < 1.0:
        b_sym = sample_beta_symmetric_pair(ShapeParam(p.a), u)
        return beta_from_parts(b_sym, u4, p.b)
    reflected = sample_beta_general(BetaShapePair(p.b, p.a), u, u4)
    return min(1.0 - reflected, ONE_BELOW)


def sample_dirichlet(dp: DirichletParams, uniform_block: Sequence[float]) -> DirichletVector:
    """One Dirichlet draw from ``4 d`` uniforms, four per coordinate.

    Raises NumericError if a Gamma coordinate or their sum underflows to 0.
    """
    d = dp.d
    if len(uniform_block) != 4 * d:
        raise ValueError(f"expected {4 * d} uniforms for d={d}, got {len(uniform_block)}")
    xs = []
    for i, c in enumerate(dp.alphas):
        u1, u2, u3, u4 = uniform_block[4 * i : 4 * i + 4]
        xs.append(sample_gamma(GammaShape(c), UniformTriple(u1, u2, u3), u4))
    total = math.fsum(xs)
    if total == 0.0 or min(xs) == 0.0:
        raise NumericError("Gamma coordinate underflowed to zero; Dirichlet draw not representable")
    return DirichletVector(tuple(x / total for x in xs), dp)
