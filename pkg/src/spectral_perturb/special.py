"""Lambert W on [0, inf), the Phi_p function and the explicit constants."""
from __future__ import annotations

import math

import numpy as np

LN2 = math.log(2.0)

# above this x, Phi_p is reported as overflowing rather than evaluated
PHI_X_MAX = 1.0 - 1e-12


class PhiOverflowError(OverflowError):
    """Phi_p(x) requested so close to x = 1 that it is not representable."""


def lambert_w(x: float) -> float:
    """Principal branch of W on the nonnegative reals, ``W(x) e^W(x) = x``.

    Halley iteration from a log-based starting guess.
    """
    x = float(x)
    if x < 0 or math.isnan(x):
        raise ValueError(f"lambert_w is only defined here for x >= 0, got {x!r}")
    if x == 0.0:
        return 0.0
    if math.isinf(x):
        return math.inf
    if x < 1.0:
        w = x * (1.0 - x) if x < 0.5 else 0.5 * x
    else:
        lx = math.log(x)
        w = lx - math.log(lx) if x > math.e else lx * 0.5 + 0.5
    for _ in range(50):
        ew = math.exp(w)
        f = w * ew - x
        wp1 = w + 1.0
        dw = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))
        w -= dw
        if abs(dw) <= 1e-16 * (1.0 + abs(w)):
            break
    return w


def phi_p(p: float, x: float) -> float:
    """Evaluate Phi_p(x) for ``0 <= x < 1``, with Phi_p(0) = p e.

    Raises
    ------
    PhiOverflowError
        if ``x > 1 - 1e-12``, where the value is too large to be useful.
    """
    if not p > 0:
        raise ValueError(f"p must be positive, got {p!r}")
    if not 0.0 <= x < 1.0:
        raise ValueError(f"x must lie in [0, 1), got {x!r}")
    if x > PHI_X_MAX:
        raise PhiOverflowError(f"Phi_{p}({x}) overflows near x = 1")
    if x == 0.0:
        return p * math.e
    u = 1.0 / p
    c = u * math.exp(u)
    y = c * x
    # (W(cx)/x)^p is evaluated as (c W(y)/y)^p; W(y)/y -> 1 as y -> 0
    if y < 1e-5:
        w_over_y = 1.0 - y + 1.5 * y * y - (8.0 / 3.0) * y**3
        w = y * w_over_y
    else:
        w = lambert_w(y)
        w_over_y = w / y
    return (c * w_over_y) ** p / (u - w) ** (p + 1.0)


def phi_p_ceiling(p: float, x: float) -> float:
    """Majorant ``(p+1)^{p+1} p^{-p} (1-x)^{-(p+1)}`` of Phi_p."""
    return (p + 1.0) ** (p + 1.0) / p**p / (1.0 - x) ** (p + 1.0)


def thm1_constant(p: float) -> float:
    """``C_p = ln(2) (p+1)^{p+1} / (2 p^p)``."""
    if not p > 0:
        raise ValueError(f"p must be positive, got {p!r}")
    return LN2 * (p + 1.0) ** (p + 1.0) / (2.0 * p**p)


def pietsch_constant(p: float, n_max: int) -> tuple[float, float]:
    """Partial supremum and ceiling of the weak-l_p diagonal constant.

    Returns ``(max_{1<=n<=n_max} n^{1/p-1} sum_{k<=n} k^{-1/p}, p/(p-1))``.
    The first value only approaches the true constant from below; anything
    that needs a rigorous constant should use the second.
    """
    if not p > 1:
        raise ValueError(f"p must exceed 1, got {p!r}")
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    k = np.arange(1, int(n_max) + 1, dtype=float)
    partial = np.cumsum(k ** (-1.0 / p))
    vals = k ** (1.0 / p - 1.0) * partial
    return float(vals.max()), p / (p - 1.0)


def hilbert_constant(p: float) -> float:
    """Rigorous ceiling ``p/(p-1)`` for the weak-l_p diagonal constant."""
    if not p > 1:
        raise ValueError(f"p must exceed 1, got {p!r}")
    return p / (p - 1.0)
