"""Exact Beta(a, 1-a) sampling from a fixed number of uniforms.

Scalar transforms live in :mod:`betaline.core` and :mod:`betaline.families`;
seeded batch generation in :mod:`betaline.sampling`; verification tooling
in :mod:`betaline.refmath`, :mod:`betaline.harness` and :mod:`betaline.checks`.
"""

__version__ = "0.1.0"

from betaline.core import (  # noqa: E402
    DomainError,
    ProposalPoint,
    ShapeParam,
    UniformTriple,
    UnsupportedParameterError,
    alpha_weight,
    mixture_step,
    sample_beta_symmetric_pair,
    sample_beta_two_uniform,
    sample_p_inverse,
    sample_p_johnk,
)
from betaline.families import (  # noqa: E402
    BetaShapePair,
    DirichletParams,
    GammaShape,
    NumericError,
    sample_beta_general,
    sample_dirichlet,
    sample_gamma,
)
from betaline.kernels import backend_name  # noqa: E402

__all__ = [
    "BetaShapePair",
    "DirichletParams",
    "DomainError",
    "GammaShape",
    "NumericError",
    "ProposalPoint",
    "ShapeParam",
    "UniformTriple",
    "UnsupportedParameterError",
    "alpha_weight",
    "backend_name",
    "mixture_step",
    "sample_beta_general",
    "sample_beta_symmetric_pair",
    "sample_beta_two_uniform",
    "sample_dirichlet",
    "sample_gamma",
    "sample_p_inverse",
    "sample_p_johnk",
]
