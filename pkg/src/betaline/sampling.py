"""Seeded batch generation for every supported family.

Every sampler reads its uniforms from a :class:`~betaline.streams.UniformStream`
in rows of a fixed width, so draw ``i`` depends only on ``(seed, stream_id, i)``.

Uniforms per draw:

==========================  ==============  ==============
family                      three-uniform   two-uniform
==========================  ==============  ==============
beta-sym (Beta(a, 1-a))     3               2
proposal (uncorrected P)    2               1
gamma, beta                 4               3
dirichlet (d coordinates)   4 d             3 d
==========================  ==============  ==============
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from betaline import kernels
from betaline.core import ONE_BELOW, TINY, ShapeParam
from betaline.families import BetaShapePair, DirichletParams, GammaShape, NumericError
from betaline.streams import DEFAULT_SEED, UniformStream

THREE_UNIFORM = "three-uniform"
TWO_UNIFORM = "two-uniform"
VARIANTS = (THREE_UNIFORM, TWO_UNIFORM)
DEFAULT_VARIANT = TWO_UNIFORM


@dataclass
class SampleBatch:
    """A block of variates plus what is needed to regenerate it."""

    values: np.ndarray
    family: str
    params: dict
    seed: int
    variant: str
    stream_id: int = 0
    backend: str = field(default_factory=kernels.backend_name)

    def __len__(self) -> int:
        return len(self.values)


def _core_width(variant: str) -> int:
    if variant == THREE_UNIFORM:
        return 3
    if variant == TWO_UNIFORM:
        return 2
    raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")


def beta_sym_from_block(s: ShapeParam, u: np.ndarray, variant: str) -> np.ndarray:
    if variant == THREE_UNIFORM:
        return kernels.beta_three(s.a, s.kappa, u)
    return kernels.beta_two(s.a, s.kappa, u)


def _gamma_from_block(s: ShapeParam, u: np.ndarray, variant: str, scale: float) -> np.ndarray:
    w = _core_width(variant)
    b = beta_sym_from_block(s, u[:, :w], variant)
    return scale * (-np.log(u[:, w])) * b


def _beta_from_block(p: BetaShapePair, u: np.ndarray, variant: str) -> np.ndarray:
    if p.a >= 1.0:
        x = 1.0 - _beta_from_block(BetaShapePair(p.b, p.a), u, variant)
        return np.minimum(x, ONE_BELOW, out=x)
    w = _core_width(variant)
    b_sym = beta_sym_from_block(ShapeParam(p.a), u[:, :w], variant)
    t = np.log(u[:, w]) / p.b
    bv = b_sym * -np.expm1(t)
    x = bv / (np.exp(t) + bv)
    return np.clip(x, TINY, ONE_BELOW, out=x)


def beta_sym(
    a: float, n: int, seed: int = DEFAULT_SEED, variant: str = DEFAULT_VARIANT, stream_id: int = 0
) -> SampleBatch:
    """``n`` draws of Beta(a, 1-a)."""
    s = ShapeParam(a)
    u = UniformStream(seed, stream_id).block(n, _core_width(variant))
    return SampleBatch(beta_sym_from_block(s, u, variant), "beta-sym", {"a": s.a}, seed, variant, stream_id)


def proposal(
    a: float, n: int, seed: int = DEFAULT_SEED, variant: str = DEFAULT_VARIANT, stream_id: int = 0
) -> SampleBatch:
    """``n`` draws of the uncorrected proposal ``P`` (a negative control, not Beta)."""
    s = ShapeParam(a)
    if variant == THREE_UNIFORM:
        values = kernels.johnk_p(s.a, UniformStream(seed, stream_id).block(n, 2))
    else:
        values = kernels.inverse_p(s.a, UniformStream(seed, stream_id).uniforms(n))
    return SampleBatch(values, "proposal", {"a": s.a}, seed, variant, stream_id)


def gamma(
    c: float,
    n: int,
    scale: float = 1.0,
    seed: int = DEFAULT_SEED,
    variant: str = DEFAULT_VARIANT,
    stream_id: int = 0,
) -> SampleBatch:
    g = GammaShape(c, scale)
    u = UniformStream(seed, stream_id).block(n, _core_width(variant) + 1)
    values = _gamma_from_block(g.shape, u, variant, g.scale)
    return SampleBatch(values, "gamma", {"c": g.c, "scale": g.scale}, seed, variant, stream_id)


def beta(
    a: float, b: float, n: int, seed: int = DEFAULT_SEED, variant: str = DEFAULT_VARIANT, stream_id: int = 0
) -> SampleBatch:
    p = BetaShapePair(a, b)
    u = UniformStream(seed, stream_id).block(n, _core_width(variant) + 1)
    return SampleBatch(_beta_from_block(p, u, variant), "beta", {"a": p.a, "b": p.b}, seed, variant, stream_id)


def dirichlet(
    alphas: Sequence[float],
    n: int,
    seed: int = DEFAULT_SEED,
    variant: str = DEFAULT_VARIANT,
    stream_id: int = 0,
) -> SampleBatch:
    """``n`` Dirichlet rows, shape ``(n, d)``.

    Raises NumericError if any Gamma coordinate underflows to zero.
    """
    dp = DirichletParams(alphas)
    m = _core_width(variant) + 1
    u = UniformStream(seed, stream_id).block(n, m * dp.d)
    x = np.empty((n, dp.d))
    for i, c in enumerate(dp.alphas):
        x[:, i] = _gamma_from_block(ShapeParam(c), u[:, m * i : m * (i + 1)], variant, 1.0)
    if np.any(x == 0.0):
        raise NumericError("Gamma coordinate underflowed to zero; Dirichlet draw not representable")
    x /= x.sum(axis=1, keepdims=True)
    return SampleBatch(x, "dirichlet", {"alphas": list(dp.alphas)}, seed, variant, stream_id)
