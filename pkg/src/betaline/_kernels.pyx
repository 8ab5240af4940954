# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled batch kernels. See ``_fallback`` for the reference semantics."""

import numpy as np

from libc.math cimport exp, fabs, log, pow

cdef double TINY = 5e-324
cdef double ONE_BELOW = 1.0 - 2.0 ** -53


cdef inline double _clamp(double x) noexcept nogil:
    if x < TINY:
        return TINY
    if x > ONE_BELOW:
        return ONE_BELOW
    return x


cdef inline double _johnk(double a, double b, double u1, double u2) noexcept nogil:
    cdef double d = log(u2) / b - log(u1) / a
    cdef double e
    if d > 0.0:
        e = exp(-d)
        return _clamp(e / (1.0 + e))
    e = exp(d)
    return _clamp(1.0 / (1.0 + e))


cdef inline double _inverse(double a, double b, double u) noexcept nogil:
    cdef double r
    if u <= b:
        r = pow(u / b, 1.0 / a)
        return _clamp(r / (1.0 + r))
    r = pow((1.0 - u) / a, 1.0 / b)
    return _clamp(1.0 / (1.0 + r))


cdef inline double _mix(double p, double alpha, double u) noexcept nogil:
    alpha = _clamp(alpha)
    if u <= alpha:
        return _clamp(p * (u / alpha))
    return _clamp(p + (1.0 - p) * ((u - alpha) / (1.0 - alpha)))


def johnk_p(double a, const double[:, :] u):
    cdef Py_ssize_t i, n = u.shape[0]
    cdef double b = 1.0 - a
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    with nogil:
        for i in range(n):
            o[i] = _johnk(a, b, u[i, 0], u[i, 1])
    return out


def inverse_p(double a, const double[::1] u):
    cdef Py_ssize_t i, n = u.shape[0]
    cdef double b = 1.0 - a
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    with nogil:
        for i in range(n):
            o[i] = _inverse(a, b, u[i])
    return out


def beta_three(double a, double kappa, const double[:, :] u):
    cdef Py_ssize_t i, n = u.shape[0]
    cdef double b = 1.0 - a
    cdef double p, alpha
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    with nogil:
        for i in range(n):
            p = _johnk(a, b, u[i, 0], u[i, 1])
            alpha = p + kappa * (b - p) * (p if p > 1.0 - p else 1.0 - p)
            o[i] = _mix(p, alpha, u[i, 2])
    return out


def beta_two(double a, double kappa, const double[:, :] u):
    cdef Py_ssize_t i, n = u.shape[0]
    cdef double b = 1.0 - a
    cdef double p, alpha, u1
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    with nogil:
        for i in range(n):
            u1 = u[i, 0]
            p = _inverse(a, b, u1)
            if u1 <= b:
                alpha = p + kappa * (b - p) * (1.0 - p)
            else:
                alpha = p + kappa * (b - p) * p
            o[i] = _mix(p, alpha, u[i, 1])
    return out


def accumulate_power_sums(const double[::1] x, double[:, ::1] state):
    cdef Py_ssize_t i, j, n = x.shape[0]
    cdef Py_ssize_t kmax = state.shape[1]
    cdef double xp, s, t
    with nogil:
        for i in range(n):
            xp = 1.0
            for j in range(kmax):
                xp = xp * x[i]
                s = state[0, j]
                t = s + xp
                if fabs(s) >= fabs(xp):
                    state[1, j] += (s - t) + xp
                else:
                    state[1, j] += (xp - t) + s
                state[0, j] = t
    return np.asarray(state)
