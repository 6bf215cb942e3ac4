"""numpy versions of the batch density kernels (fallback for the compiled module)."""
from __future__ import annotations

import math

import numpy as np

_BIG = 1e150
_LOG_BIG = math.log(_BIG)


def gue_density(N: int, xs: np.ndarray) -> np.ndarray:
    x = np.asarray(xs, dtype=np.float64)
    # ψ_0 = π^(-1/4) e^(-x²/2) carried as exp(logscale) * 1
    logscale = -0.25 * math.log(math.pi) - 0.5 * x * x
    p_prev = np.zeros_like(x)
    p = np.ones_like(x)
    total = np.ones_like(x)
    for k in range(N - 1):
        nxt = math.sqrt(2.0 / (k + 1)) * x * p - math.sqrt(k / (k + 1)) * p_prev
        p_prev, p = p, nxt
        total += p * p
        big = np.abs(p) > _BIG
        if big.any():
            p[big] /= _BIG
            p_prev[big] /= _BIG
            total[big] /= _BIG * _BIG
            logscale[big] += _LOG_BIG
    return total * np.exp(2 * logscale)


def lue_density(N: int, a: float, xs: np.ndarray) -> np.ndarray:
    x = np.asarray(xs, dtype=np.float64)
    out = np.zeros_like(x)
    pos = x > 0
    xp = x[pos]
    logscale = 0.5 * (a * np.log(xp) - xp - math.lgamma(a + 1))
    p_prev = np.zeros_like(xp)
    p = np.ones_like(xp)
    total = np.ones_like(xp)
    for k in range(N - 1):
        nxt = ((2 * k + a + 1 - xp) * p - math.sqrt(k * (k + a)) * p_prev) / math.sqrt((k + 1) * (k + a + 1))
        p_prev, p = p, nxt
        total += p * p
        big = np.abs(p) > _BIG
        if big.any():
            p[big] /= _BIG
            p_prev[big] /= _BIG
            total[big] /= _BIG * _BIG
            logscale[big] += _LOG_BIG
    out[pos] = total * np.exp(2 * logscale)
    return out
