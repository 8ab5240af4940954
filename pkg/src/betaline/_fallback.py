"""Numpy implementations of the batch kernels.

Used when the compiled ``_kernels`` extension is not importable. Signatures
and semantics match the extension exactly; results agree to a few ulps
(numpy and libm transcendental functions may round differently).
"""

import math

import numpy as np

TINY = math.ulp(0.0)
ONE_BELOW = 1.0 - 2.0**-53


def _clamp(x):
    return np.clip(x, TINY, ONE_BELOW, out=x)


def _logistic(d):
    e = np.exp(-np.abs(d))
    return np.where(d > 0.0, e / (1.0 + e), 1.0 / (1.0 + e))


def _mix(p, alpha, u):
    alpha = _clamp(alpha)
    with np.errstate(divide="ignore", invalid="ignore"):
        left = p * (u / alpha)
        right = p + (1.0 - p) * ((u - alpha) / (1.0 - alpha))
    return _clamp(np.where(u <= alpha, left, right))


def johnk_p(a, u):
    """Johnk proposal from columns 0 and 1 of ``u``."""
    u = np.asarray(u, dtype=np.float64)
    d = np.log(u[:, 1]) / (1.0 - a) - np.log(u[:, 0]) / a
    return _clamp(_logistic(d))


def inverse_p(a, u):
    """Inverse proposal CDF applied to a 1-D array."""
    u = np.asarray(u, dtype=np.float64)
    b = 1.0 - a
    with np.errstate(divide="ignore", invalid="ignore"):
        r_lo = (u / b) ** (1.0 / a)
        r_hi = ((1.0 - u) / a) ** (1.0 / b)
    return _clamp(np.where(u <= b, r_lo / (1.0 + r_lo), 1.0 / (1.0 + r_hi)))


def beta_three(a, kappa, u):
    """Beta(a, 1-a) from columns 0..2 of ``u``."""
    u = np.asarray(u, dtype=np.float64)
    p = johnk_p(a, u)
    alpha = p + kappa * ((1.0 - a) - p) * np.maximum(p, 1.0 - p)
    return _mix(p, alpha, u[:, 2])


def beta_two(a, kappa, u):
    """Beta(a, 1-a) from columns 0 and 1 of ``u``."""
    u = np.asarray(u, dtype=np.float64)
    b = 1.0 - a
    u1 = u[:, 0]
    lower = u1 <= b
    p = inverse_p(a, u1)
    alpha = p + kappa * (b - p) * np.where(lower, 1.0 - p, p)
    return _mix(p, alpha, u[:, 1])


def accumulate_power_sums(x, state):
    """Add ``sum(x**j)`` for ``j = 1..kmax`` into a Neumaier ``state``.

    ``state`` has shape ``(2, kmax)``: running sums and their compensations.
    """
    x = np.asarray(x, dtype=np.float64)
    kmax = state.shape[1]
    xp = np.ones_like(x)
    for j in range(kmax):
        xp = xp * x
        v = math.fsum(xp)
        s = state[0, j]
        t = s + v
        if abs(s) >= abs(v):
            state[1, j] += (s - t) + v
        else:
            state[1, j] += (v - t) + s
        state[0, j] = t
    return state
