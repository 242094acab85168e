"""Integer-order Bessel functions of the first kind.

Power series for |x| <= 1, Miller's backward recurrence above that. The
recurrence is normalised with J0^2 + 2*sum_{k>=1} Jk^2 = 1, and the sign is
fixed by J0 + 2*sum_{k>=1} J2k = 1. Absolute error is around 1e-15 for
|x| <= 50; the routine stays valid (slower) for larger arguments.
"""

from __future__ import annotations

import math

import numpy as np

_SERIES_LIMIT = 1.0
_RESCALE = 1e100


def _series(nmax: int, x: float) -> np.ndarray:
    out = np.zeros(nmax + 1)
    half = 0.5 * x
    q = -half * half
    lead = 1.0  # (x/2)^n / n!
    for n in range(nmax + 1):
        if n > 0:
            lead *= half / n
        if lead == 0.0:
            break
        term = lead
        total = term
        k = 1
        while True:
            term *= q / (k * (k + n))
            total += term
            if abs(term) <= 1e-17 * abs(total):
                break
            k += 1
        out[n] = total
    return out


def _start_order(nmax: int, ax: float) -> int:
    top = max(nmax, int(ax)) + 1
    start = top + 30 + int(6.0 * math.sqrt(top))
    return start + (start % 2)


def _miller(nmax: int, x: float) -> np.ndarray:
    start = _start_order(nmax, x)
    vals = np.zeros(start + 1)
    upper, current = 0.0, 1e-300
    vals[start] = current
    for k in range(start, 0, -1):
        lower = (2.0 * k / x) * current - upper
        upper, current = current, lower
        vals[k - 1] = current
        if abs(current) > _RESCALE:
            vals[k - 1 :] /= _RESCALE
            upper /= _RESCALE
            current /= _RESCALE
    vals /= np.abs(vals).max()
    norm_sq = vals[0] ** 2 + 2.0 * np.dot(vals[1:], vals[1:])
    sign_sum = vals[0] + 2.0 * vals[2::2].sum()
    scale = math.copysign(math.sqrt(norm_sq), sign_sum)
    return vals[: nmax + 1] / scale


def bessel_j_orders(nmax: int, x: float) -> np.ndarray:
    """Array of J_0(x) .. J_nmax(x)."""
    if nmax < 0:
        raise ValueError("nmax must be >= 0")
    x = float(x)
    ax = abs(x)
    if ax <= _SERIES_LIMIT:
        out = _series(nmax, ax)
    else:
        out = _miller(nmax, ax)
    if x < 0:
        out[1::2] *= -1.0
    return out


def bessel_j(n: int, x: float) -> float:
    """J_n(x) for any integer n and real x."""
    n = int(n)
    value = float(bessel_j_orders(abs(n), x)[abs(n)])
    if n < 0 and n % 2:
        return -value
    return value
