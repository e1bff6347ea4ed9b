"""Eigenvalues with multiplicity, counting functions, power bounds and a
Hilbert-space version of Rota's similarity."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from ._linalg import ConvergenceError, as_matrix, eigvals, op_norm

# relative guard for "modulus strictly greater than s": computed moduli of
# unimodular eigenvalues land within a few ulps of 1
COUNT_RTOL = 1e-12
RADIUS_MARGIN = 1e-10
MAX_POWER_ITER = 200_000


@dataclass(frozen=True)
class SpectralProfile:
    """Eigenvalues with multiplicities, moduli nonincreasing."""

    values: np.ndarray
    multiplicities: np.ndarray

    def __post_init__(self):
        if self.values.shape != self.multiplicities.shape:
            raise ValueError("values and multiplicities differ in length")

    @property
    def dimension(self) -> int:
        return int(self.multiplicities.sum())

    def flattened(self) -> np.ndarray:
        """Eigenvalues repeated by multiplicity, in profile order."""
        return np.repeat(self.values, self.multiplicities)

    @property
    def moduli(self) -> np.ndarray:
        return np.abs(self.flattened())

    def __iter__(self):
        return iter(zip(self.values.tolist(), self.multiplicities.tolist()))

    def __len__(self):
        return self.values.size


def _cluster(ev: np.ndarray, tol: float) -> tuple[np.ndarray, np.ndarray]:
    # single-linkage clusters of eigenvalues closer than tol
    n = ev.size
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    close = np.abs(ev[:, None] - ev[None, :]) <= tol
    for i, j in zip(*np.nonzero(np.triu(close, 1))):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[rj] = ri
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    vals = np.array([ev[g].mean() for g in groups.values()], dtype=complex)
    mult = np.array([len(g) for g in groups.values()], dtype=int)
    return vals, mult


def eigen_profile(T, cluster_tol: float | None = None) -> SpectralProfile:
    """Eigenvalues of a square matrix grouped into clusters.

    Eigenvalues within ``cluster_tol`` (default ``1e-8 ||T||``) of each other
    are merged; the cluster mean is the value and the cluster size the
    multiplicity.  Ordered by modulus, then by argument.
    """
    T = as_matrix(T, square=True)
    if cluster_tol is None:
        cluster_tol = 1e-8 * op_norm(T)
    elif not cluster_tol > 0:
        raise ValueError("cluster_tol must be positive")
    ev = eigvals(T)
    vals, mult = _cluster(ev, cluster_tol) if cluster_tol > 0 else (ev, np.ones(ev.size, int))
    order = np.lexsort((np.mod(np.angle(vals), 2 * np.pi), -np.abs(vals)))
    return SpectralProfile(vals[order], mult[order])


def counting_function(profile: SpectralProfile, s: float, rtol: float = COUNT_RTOL) -> int:
    """Number of eigenvalues (with multiplicity) of modulus strictly above ``s``."""
    if s < 0:
        raise ValueError("s must be nonnegative")
    mods = np.abs(profile.values)
    return int(profile.multiplicities[mods > s * (1.0 + rtol)].sum())


def spectral_radius(T) -> float:
    prof = eigen_profile(T)
    return float(np.abs(prof.values).max())


def _check_radius(A: np.ndarray, r: float) -> float:
    rho = spectral_radius(A)
    if not r > rho + RADIUS_MARGIN:
        raise ValueError(f"r = {r} must exceed the spectral radius {rho} (margin {RADIUS_MARGIN})")
    return rho


def power_norms(A, r: float, n_max: int) -> np.ndarray:
    """``||A^n|| / r^n`` for ``n = 0..n_max`` by the recurrence used in
    :func:`power_norm_sup` (no stopping rule)."""
    T = as_matrix(A, square=True) / r
    P = np.eye(T.shape[0], dtype=complex)
    out = np.empty(n_max + 1)
    out[0] = 1.0
    stack = np.empty((n_max,) + T.shape, dtype=complex)
    for n in range(n_max):
        P = P @ T
        stack[n] = P
    out[1:] = np.linalg.norm(stack, 2, axis=(1, 2))
    return out


def power_norm_sup(A, r: float, max_iter: int = MAX_POWER_ITER) -> float:
    """``M_A(r) = sup_{n >= 0} ||A^n|| / r^n`` for ``r > r(A)``.

    Powers are generated until the first ``n0`` with ``||A^n0|| <= r^n0``;
    by submultiplicativity no later term can exceed the maximum seen so far.
    """
    A = as_matrix(A, square=True)
    _check_radius(A, r)
    if r >= op_norm(A):
        return 1.0
    T = A / r
    P = np.eye(A.shape[0], dtype=complex)
    best = 1.0
    for _ in range(max_iter):
        P = P @ T
        # ||P||_2 <= ||P||_F: the Frobenius norm settles most steps cheaply
        f = float(np.linalg.norm(P))
        if f <= 1.0:
            return best
        if not math.isfinite(f):
            raise ConvergenceError(f"||A^n||/r^n overflowed before dropping below 1 (r = {r})")
        if f < best * (1.0 - 1e-12):
            continue
        v = float(np.linalg.norm(P, 2))
        if v <= 1.0:
            return best
        best = max(best, v)
    raise ConvergenceError(f"||A^n||/r^n still above 1 after {max_iter} powers (r = {r})")


def resolvent_bound(A, r: float, grid: int = 256) -> float:
    """``r * max_{|z| = r} ||(z - A)^{-1}||`` sampled on ``grid`` angles.

    On the full circle this majorises ``M_A(r)``; the sampled version can
    fall short of the supremum by the angular discretisation.
    """
    A = as_matrix(A, square=True)
    _check_radius(A, r)
    if grid < 8:
        raise ValueError("grid must be >= 8")
    eye = np.eye(A.shape[0])
    worst = 0.0
    for theta in np.linspace(0.0, 2 * np.pi, grid, endpoint=False):
        smin = sla.svdvals(r * np.exp(1j * theta) * eye - A)[-1]
        if smin == 0.0:
            raise ConvergenceError("resolvent is singular on the sampling circle")
        worst = max(worst, 1.0 / smin)
    return r * worst


@dataclass(frozen=True)
class SimilarityResult:
    """``S`` with ``||S A S^{-1}|| <= r``; ``cond_S = ||S|| ||S^{-1}||``."""

    S: np.ndarray
    S_inv: np.ndarray
    conjugated_norm: float
    cond_S: float
    gram: np.ndarray

    def conjugate(self, B) -> np.ndarray:
        return self.S @ np.asarray(B, dtype=complex) @ self.S_inv


def rota_similarity(A, r: float, max_doublings: int = 64) -> SimilarityResult:
    """Similarity bringing the norm of ``A`` down to at most ``r > r(A)``.

    With ``T = A/r`` the Gram operator ``G = sum_n (T*)^n T^n`` satisfies
    ``T* G T = G - I``, so ``S = G^{1/2}`` gives ``||S T S^{-1}|| < 1``.  The
    series is summed by doubling: ``G_{2k} = G_k + (T^k)* G_k T^k``.
    """
    A = as_matrix(A, square=True)
    _check_radius(A, r)
    T = A / r
    d = A.shape[0]
    G = np.eye(d, dtype=complex)
    P = T.copy()
    eps = np.finfo(float).eps
    for _ in range(max_doublings):
        inc = P.conj().T @ G @ P
        G = G + inc
        g = op_norm(G)
        if not math.isfinite(g):
            raise ConvergenceError("Gram series diverged")
        # the truncated tail must be negligible against the margin 1/||G||
        if op_norm(inc) <= eps * g and op_norm(P) ** 2 <= 1e-3 * eps / g:
            break
        P = P @ P
    else:
        raise ConvergenceError(f"Gram series not converged after {max_doublings} doublings")
    G = 0.5 * (G + G.conj().T)
    lam, Q = np.linalg.eigh(G)
    if lam[0] <= 0:
        raise ConvergenceError("Gram operator lost positive definiteness")
    S = (Q * np.sqrt(lam)) @ Q.conj().T
    S_inv = (Q / np.sqrt(lam)) @ Q.conj().T
    conj = S @ A @ S_inv
    return SimilarityResult(
        S=S,
        S_inv=S_inv,
        conjugated_norm=op_norm(conj),
        cond_S=float(math.sqrt(lam[-1] / lam[0])),
        gram=G,
    )
