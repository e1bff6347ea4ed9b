"""Lorentz quasi-norms of finite sequences.

A finite sequence is handled through its decreasing rearrangement, a
nonincreasing array of moduli.  ``q = INF`` selects the weak-l_p norm.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

INF = math.inf


@dataclass(frozen=True)
class LorentzParams:
    """Indices ``(p, q)`` of the space l_{p,q}; ``q`` may be ``INF``."""

    p: float
    q: float = INF

    def __post_init__(self):
        if not (self.p > 0 and math.isfinite(self.p)):
            raise ValueError(f"p must be finite and positive, got {self.p!r}")
        if not self.q > 0:
            raise ValueError(f"q must be positive or INF, got {self.q!r}")

    @property
    def weak(self) -> bool:
        return self.q == INF


def decreasing_rearrangement(x) -> np.ndarray:
    """Return the moduli of ``x`` sorted into nonincreasing order."""
    a = np.abs(np.asarray(x, dtype=complex).ravel())
    return np.sort(a)[::-1].copy()


def _as_sorted(x) -> np.ndarray:
    a = np.asarray(x)
    if np.iscomplexobj(a):
        raise ValueError("expected real moduli; pass the sequence through decreasing_rearrangement first")
    a = a.astype(float).ravel()
    if not np.all(np.isfinite(a)):
        raise ValueError("sequence entries must be finite")
    if a.size and (np.any(a < 0) or np.any(np.diff(a) > 0)):
        raise ValueError("expected a nonincreasing nonnegative sequence")
    return a


def lorentz_norm(x, params: LorentzParams) -> float:
    """Quasi-norm ``||x||_{p,q}`` of a decreasing rearrangement ``x``.

    For finite ``q`` this is ``(sum x_n^q n^{q/p - 1})^{1/q}``; for
    ``q = INF`` it is ``max x_n n^{1/p}``.  The empty sequence has norm 0.
    """
    a = _as_sorted(x)
    if a.size == 0:
        return 0.0
    n = np.arange(1, a.size + 1, dtype=float)
    p, q = params.p, params.q
    if q == INF:
        return float(np.max(a * n ** (1.0 / p)))
    return float(np.sum(a**q * n ** (q / p - 1.0)) ** (1.0 / q))


def weak_norm_by_counting(x, p: float) -> float:
    """Weak-l_p norm via ``sup_{r>0} r^p #{n : x_n > r}``.

    The counting function is a right-continuous step function, so the
    supremum is reached as ``r`` increases to one of the values ``x_k``;
    there the count is the number of entries ``>= x_k``.
    """
    if not p > 0:
        raise ValueError(f"p must be positive, got {p!r}")
    a = _as_sorted(x)
    a = a[a > 0]
    if a.size == 0:
        return 0.0
    # entries >= a[k] in a nonincreasing array: last index of a[k]'s tie group
    counts = np.searchsorted(-a, -a, side="right")
    return float(np.max(a**p * counts) ** (1.0 / p))
