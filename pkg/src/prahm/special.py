"""Integer-order Bessel functions of the first kind.

``bessel_j`` uses Miller's downward recurrence normalised by the identity
``J0 + 2*(J2 + J4 + ...) = 1``.  ``bessel_j_series`` is the plain power series,
kept as an independent cross-check for moderate arguments.
"""

from __future__ import annotations

import math

import numpy as np


def _start_order(m: int, xmax: float) -> int:
    n = max(m, int(xmax)) + 20 + int(math.sqrt(40.0 * max(m, int(xmax), 1)))
    return n + (n % 2)


def bessel_j_all(mmax: int, x) -> np.ndarray:
    """``J_0 .. J_mmax`` at ``x``; result has shape ``(mmax + 1,) + x.shape``."""
    x = np.asarray(x, dtype=float)
    ax = np.abs(x)
    out = np.zeros((mmax + 1,) + x.shape)
    small = ax < 1e-300
    safe = np.where(small, 1.0, ax)

    nstart = _start_order(mmax, float(ax.max(initial=0.0)))
    j_next = np.zeros_like(safe)
    j_cur = np.full_like(safe, 1e-30)
    norm = np.zeros_like(safe)
    for n in range(nstart, 0, -1):
        j_prev = (2.0 * n / safe) * j_cur - j_next
        j_next, j_cur = j_cur, j_prev
        # j_cur now holds J_{n-1} (unnormalised)
        if n - 1 <= mmax:
            out[n - 1] = j_cur
        if (n - 1) % 2 == 0 and n - 1 > 0:
            norm += 2.0 * j_cur
        big = np.abs(j_cur) > 1e250
        if big.any():
            scale = np.where(big, 1e-250, 1.0)
            j_cur = j_cur * scale
            j_next = j_next * scale
            norm = norm * scale
            out[: min(n, mmax + 1)] *= scale
    norm += j_cur
    out /= norm

    # J_m(-x) = (-1)^m J_m(x)
    neg = x < 0
    if neg.any():
        for m in range(1, mmax + 1, 2):
            out[m] = np.where(neg, -out[m], out[m])
    out[:, small] = 0.0
    out[0, small] = 1.0
    return out


def bessel_j(m: int, x) -> np.ndarray:
    """``J_m(x)`` for integer ``m >= 0`` by downward recurrence."""
    if m < 0:
        raise ValueError("order must be non-negative")
    return bessel_j_all(m, x)[m]


def bessel_j_prime(m: int, x) -> np.ndarray:
    """``dJ_m/dx`` from ``(J_{m-1} - J_{m+1}) / 2`` (``-J_1`` for m = 0)."""
    js = bessel_j_all(m + 1, x)
    if m == 0:
        return -js[1]
    return 0.5 * (js[m - 1] - js[m + 1])


def bessel_j_series(m: int, x, terms: int = 80) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    half = 0.5 * x
    total = np.zeros_like(x)
    term = half**m / math.factorial(m)
    for k in range(terms):
        total = total + term
        term = -term * half * half / ((k + 1) * (k + 1 + m))
    return total
