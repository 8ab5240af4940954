"""Batch kernel dispatch.

The compiled extension is used when it imports; otherwise the numpy
fallback is selected. Both expose::

    johnk_p(a, u)                  # u: (n, >=2) float64, C-contiguous rows
    inverse_p(a, u)                # u: (n,)
    beta_three(a, kappa, u)        # u: (n, >=3)
    beta_two(a, kappa, u)          # u: (n, >=2)
    accumulate_power_sums(x, state)

``use_backend("python")`` switches implementations at runtime, which the
tests and the benchmark rely on.
"""

from __future__ import annotations

import numpy as np

from betaline import _fallback

try:
    from betaline import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

_BACKENDS = {"python": _fallback}
if _compiled is not None:
    _BACKENDS["compiled"] = _compiled

_active = _compiled if _compiled is not None else _fallback


def available_backends() -> list[str]:
    return sorted(_BACKENDS)


def backend_name() -> str:
    return "compiled" if _active is _compiled and _compiled is not None else "python"


def use_backend(name: str) -> None:
    global _active
    try:
        _active = _BACKENDS[name]
    except KeyError:
        raise ValueError(f"unknown or unavailable backend {name!r}; have {available_backends()}") from None


def get_backend(name: str | None = None):
    return _active if name is None else _BACKENDS[name]


def _rows(u) -> np.ndarray:
    u = np.asarray(u, dtype=np.float64)
    if u.ndim != 2:
        raise ValueError("uniform block must be two-dimensional")
    if u.strides[1] != u.itemsize:
        u = np.ascontiguousarray(u)
    return u


def johnk_p(a: float, u) -> np.ndarray:
    return _active.johnk_p(a, _rows(u))


def inverse_p(a: float, u) -> np.ndarray:
    return _active.inverse_p(a, np.ascontiguousarray(u, dtype=np.float64))


def beta_three(a: float, kappa: float, u) -> np.ndarray:
    return _active.beta_three(a, kappa, _rows(u))


def beta_two(a: float, kappa: float, u) -> np.ndarray:
    return _active.beta_two(a, kappa, _rows(u))


def accumulate_power_sums(x, state: np.ndarray) -> np.ndarray:
    return _active.accumulate_power_sums(np.ascontiguousarray(x, dtype=np.float64), state)
