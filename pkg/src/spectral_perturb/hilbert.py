"""Numerical range and the eigenvalue bounds special to Hilbert space.

``Num(A)`` is approximated from both sides.  For each angle ``theta`` the
top eigenpair of ``Re(e^{i theta} A)`` gives a support value ``h(theta)``
and a point ``<A x, x>`` of ``Num(A)`` on that supporting line.  The
convex hull of these points is inside ``Num(A)`` (inner polygon); the
intersection of the half-planes ``Re(e^{i theta} z) <= h(theta)`` contains
it (outer polygon).  Distances to the outer polygon are therefore certified
lower bounds on ``d(lambda, Num(A))``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from ._linalg import ConvergenceError, as_matrix, op_norm, singular_values
from .bounds import BoundReport, digest, r_grid_points, verdict_for
from .lorentz import INF, LorentzParams, decreasing_rearrangement, lorentz_norm, weak_norm_by_counting
from .special import hilbert_constant
from .spectral import counting_function, eigen_profile, power_norm_sup, spectral_radius

DEFAULT_GRID = 720


@dataclass(frozen=True)
class NumRangeApprox:
    angles: np.ndarray
    support_values: np.ndarray
    boundary_points: np.ndarray
    outer_vertices: np.ndarray

    @property
    def inner_vertices(self) -> np.ndarray:
        return self.boundary_points

    def distance(self, lam: complex) -> tuple[float, float]:
        return dist_to_numrange(lam, self)

    def in_outer(self, lam: complex, slack: float = 0.0) -> bool:
        """Whether ``lam`` satisfies every half-plane constraint up to ``slack``."""
        proj = (np.exp(1j * self.angles) * lam).real
        return bool(np.all(proj <= self.support_values + slack))


def _outer_vertices(angles: np.ndarray, h: np.ndarray) -> np.ndarray:
    # line k: x cos(t_k) - y sin(t_k) = h_k ; vertex k joins lines k and k+1
    c, s = np.cos(angles), np.sin(angles)
    c2, s2, h2 = np.roll(c, -1), np.roll(s, -1), np.roll(h, -1)
    det = -c * s2 + s * c2
    x = (-h * s2 + s * h2) / det
    y = (c * h2 - c2 * h) / det
    return x + 1j * y


def numerical_range(A, grid: int = DEFAULT_GRID) -> NumRangeApprox:
    """Inner and outer polygonal approximations of ``Num(A)`` on ``grid`` angles."""
    A = as_matrix(A, square=True)
    if grid < 16:
        raise ValueError("grid must be >= 16")
    angles = np.linspace(0.0, 2 * np.pi, grid, endpoint=False)
    AH = A.conj().T
    h = np.empty(grid)
    pts = np.empty(grid, dtype=complex)
    for k, t in enumerate(angles):
        H = 0.5 * (np.exp(1j * t) * A + np.exp(-1j * t) * AH)
        try:
            w, V = sla.eigh(H, subset_by_index=[A.shape[0] - 1, A.shape[0] - 1])
        except (np.linalg.LinAlgError, ValueError) as exc:
            raise ConvergenceError(f"Hermitian eigensolver failed: {exc}") from exc
        x = V[:, 0]
        h[k] = w[0]
        pts[k] = np.vdot(x, A @ x)
    return NumRangeApprox(angles, h, pts, _outer_vertices(angles, h))


def _segment_distance(z: complex, a: np.ndarray, b: np.ndarray) -> float:
    ab = b - a
    L = np.abs(ab) ** 2
    t = np.where(L > 0, ((z - a) * np.conj(ab)).real / np.where(L > 0, L, 1.0), 0.0)
    t = np.clip(t, 0.0, 1.0)
    return float(np.min(np.abs(z - (a + t * ab))))


def _dist_to_polygon(z: complex, verts: np.ndarray) -> float:
    """Distance from ``z`` to a convex polygon given by ordered vertices."""
    a, b = verts, np.roll(verts, -1)
    edge = _segment_distance(z, a, b)
    # shoelace relative to one vertex, so coincident vertices give exactly 0
    u, w = a - verts[0], b - verts[0]
    area2 = float(np.sum((u.conj() * w).imag))
    diam = float(np.max(np.abs(u)))
    if abs(area2) <= 1e-12 * diam**2:
        return edge  # degenerate: a segment or a point
    cross = ((b - a).conj() * (z - a)).imag
    inside = np.all(cross >= 0) if area2 > 0 else np.all(cross <= 0)
    return 0.0 if inside else edge


def dist_to_numrange(lam: complex, nr: NumRangeApprox) -> tuple[float, float]:
    """``(lower, upper)`` bracket of ``d(lam, Num(A))``."""
    upper = _dist_to_polygon(complex(lam), nr.boundary_points)
    lower = _dist_to_polygon(complex(lam), nr.outer_vertices)
    return min(lower, upper), upper


# ---------------------------------------------------------------------------
# Schur basis ordered by distance to Num(A)


def _swap_adjacent(T: np.ndarray, Z: np.ndarray, k: int) -> None:
    """Exchange diagonal entries k and k+1 of the triangular ``T`` in place."""
    a, b, t = T[k, k], T[k + 1, k + 1], T[k, k + 1]
    v0, v1 = t, b - a
    nv = math.hypot(abs(v0), abs(v1))
    if nv == 0.0:
        return
    c, s = v0 / nv, v1 / nv
    # first column: eigenvector of [[a, t], [0, b]] for b
    Q = np.array([[c, -np.conj(s)], [s, np.conj(c)]])
    T[:, k : k + 2] = T[:, k : k + 2] @ Q
    T[k : k + 2, :] = Q.conj().T @ T[k : k + 2, :]
    Z[:, k : k + 2] = Z[:, k : k + 2] @ Q
    T[k + 1, k] = 0.0


@dataclass(frozen=True)
class SchurChain:
    """Schur form ``A + K = Z T Z*`` ordered by distance to ``Num(A)``.

    The first ``n_outside`` columns of ``Z`` belong to eigenvalues with a
    positive upper distance, sorted by certified lower distance.
    """

    T: np.ndarray
    Z: np.ndarray
    eigenvalues: np.ndarray
    k_diag: np.ndarray
    a_diag: np.ndarray
    d_lower: np.ndarray
    d_upper: np.ndarray
    n_outside: int

    def pairs(self) -> list[tuple[complex, complex]]:
        """``(lambda_n, <K e_n, e_n>)`` for the eigenvalues outside ``Num(A)``."""
        n = self.n_outside
        return list(zip(self.eigenvalues[:n].tolist(), self.k_diag[:n].tolist()))


def schur_chain(A, K, grid: int = DEFAULT_GRID, nr: NumRangeApprox | None = None) -> SchurChain:
    A = as_matrix(A, square=True)
    K = as_matrix(K, square=True)
    if A.shape != K.shape:
        raise ValueError("A and K must have the same shape")
    nr = nr if nr is not None else numerical_range(A, grid)
    try:
        T, Z = sla.schur(A + K, output="complex")
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise ConvergenceError(f"Schur decomposition failed: {exc}") from exc
    d = T.shape[0]
    diag = np.diag(T).copy()
    dists = [dist_to_numrange(z, nr) for z in diag]

    def key(z, lo_up):
        lo, up = lo_up
        outside = up > 0
        return (0 if outside else 1, -lo if outside else 0.0, -abs(z), float(np.mod(np.angle(z), 2 * np.pi)))

    keys = [key(z, du) for z, du in zip(diag, dists)]
    # bubble sort by adjacent swaps, carrying keys and distances along
    for sweep in range(d):
        swapped = False
        for k in range(d - 1 - sweep):
            if keys[k + 1] < keys[k]:
                _swap_adjacent(T, Z, k)
                keys[k], keys[k + 1] = keys[k + 1], keys[k]
                dists[k], dists[k + 1] = dists[k + 1], dists[k]
                swapped = True
        if not swapped:
            break
    lam = np.diag(T).copy()
    k_diag = np.einsum("in,ij,jn->n", Z.conj(), K, Z)
    a_diag = np.einsum("in,ij,jn->n", Z.conj(), A, Z)
    lo = np.array([x[0] for x in dists])
    up = np.array([x[1] for x in dists])
    return SchurChain(T, Z, lam, k_diag, a_diag, lo, up, int(np.sum(up > 0)))


# ---------------------------------------------------------------------------
# distance bound in Hilbert space and its consequences


def outside_distances(A, K, grid: int = DEFAULT_GRID, nr: NumRangeApprox | None = None) -> np.ndarray:
    """Certified lower distances to ``Num(A)`` of the eigenvalues of ``A + K``
    lying outside the outer polygon, nonincreasing."""
    A = as_matrix(A, square=True)
    nr = nr if nr is not None else numerical_range(A, grid)
    lam = eigen_profile(A + as_matrix(K, square=True)).flattened()
    lows = np.array([dist_to_numrange(z, nr)[0] for z in lam])
    return decreasing_rearrangement(lows[lows > 0])


def thm3_check(A, K, p: float, q: float = INF, grid: int = DEFAULT_GRID, nr=None) -> BoundReport:
    """``||(d(lambda_n, Num(A)))||_{p,q} <= C |||K|||_{p,q}``.

    Only ``q = INF`` has an explicit constant, ``p/(p-1)``; other ``q`` are
    computed and reported without a verdict.
    """
    if not p > 1:
        raise ValueError("p must exceed 1")
    params = LorentzParams(p, q)
    dists = outside_distances(A, K, grid, nr)
    lhs = lorentz_norm(dists, params)
    k_norm = lorentz_norm(singular_values(as_matrix(K)), params)
    if q == INF:
        rhs = hilbert_constant(p) * k_norm
        verdict = verdict_for(lhs, rhs)
    else:
        rhs, verdict = math.nan, "report_only"
    return BoundReport("THM3_5", rhs, lhs, verdict, p=p, q=q, inputs_digest=digest(A, K, p=p, q=q),
                       extra={"k_norm": k_norm, "n_outside": int(dists.size)})


def random_orthonormal_pairs(dim: int, trials: int, rng: np.random.Generator, count: int | None = None):
    """``trials`` pairs of ``dim x count`` matrices with orthonormal columns."""
    count = dim if count is None else count

    def batch():
        Z = rng.standard_normal((trials, dim, count)) + 1j * rng.standard_normal((trials, dim, count))
        Q, _ = np.linalg.qr(Z)
        return Q

    return batch(), batch()


def pietsch_check(K, p: float, trials: int = 1000, seed: int = 0, count: int | None = None) -> BoundReport:
    """``||(<K x_n, y_n>)||_{p,INF} <= p/(p-1) |||K|||_{p,INF}`` for random
    orthonormal systems; the standard basis pair is always included."""
    if not p > 1:
        raise ValueError("p must exceed 1")
    K = as_matrix(K)
    rng = np.random.default_rng(seed)
    m, n = K.shape
    cnt = min(m, n) if count is None else count
    X, Y = random_orthonormal_pairs(n, trials, rng, cnt)
    Y = Y if m == n else random_orthonormal_pairs(m, trials, rng, cnt)[1]
    vals = np.abs(np.einsum("tin,ij,tjn->tn", Y.conj(), K, X))
    std = np.abs(np.diag(K)[:cnt])[None, :]
    vals = np.concatenate([std, vals], axis=0)
    a = -np.sort(-vals, axis=1)
    idx = np.arange(1, a.shape[1] + 1, dtype=float)
    lhs_all = np.max(a * idx ** (1.0 / p), axis=1)
    lhs = float(lhs_all.max())
    k_norm = lorentz_norm(singular_values(K), LorentzParams(p, INF))
    rhs = hilbert_constant(p) * k_norm
    return BoundReport("PIETSCH_23", rhs, lhs, verdict_for(lhs, rhs), p=p, inputs_digest=digest(K, p=p, seed=seed),
                       notes=f"trials={trials}", extra={"k_norm": k_norm, "trials": trials + 1})


def hilbert_counting_checks(A, K, p: float, s: float, r_grid: int = 24, grid: int = DEFAULT_GRID) -> list[BoundReport]:
    """Counting consequences of the Hilbert-space bound.

    * ``EQ25``: ``sup_r r^p #{n : d(lambda_n, Num(A)) > r} <= C^p |||K|||^p``
      (all thresholds at once, certified lower distances);
    * ``HCOR_NORM``: ``n_{A+K}(s) <= C^p (s - ||A||)^{-p} |||K|||^p``, only if ``s > ||A||``;
    * ``HCOR_MA``: ``n_{A+K}(s) <= C^p min_r M_A(r)^p (s - r)^{-p} |||K|||^p``
      over an ``r`` grid in ``(r(A), s)``.

    ``C = p/(p-1)``.
    """
    if not p > 1:
        raise ValueError("p must exceed 1")
    A = as_matrix(A, square=True)
    K = as_matrix(K, square=True)
    rA = spectral_radius(A)
    if not s > rA:
        raise ValueError(f"s = {s} must exceed r(A) = {rA}")
    C = hilbert_constant(p)
    kp = lorentz_norm(singular_values(K), LorentzParams(p, INF)) ** p
    dg = digest(A, K, p=p, s=s)
    out = []

    dists = outside_distances(A, K, grid)
    obs = weak_norm_by_counting(dists, p) ** p if dists.size else 0.0
    bound = C**p * kp
    out.append(BoundReport("EQ25", bound, obs, verdict_for(obs, bound), p=p, s=s, inputs_digest=dg,
                           notes="sup over all thresholds r"))

    prof = eigen_profile(A + K)
    count = float(counting_function(prof, s))
    norm_A = op_norm(A)
    if s > norm_A:
        b = C**p * (s - norm_A) ** (-p) * kp
        out.append(BoundReport("HCOR_NORM", b, count, verdict_for(count, b), p=p, s=s, inputs_digest=dg,
                               extra={"norm_A": norm_A}))

    best, best_r = math.inf, math.nan
    for r in r_grid_points(rA, s, r_grid, extra=(0.5 * (s + rA), norm_A)):
        try:
            val = C**p * power_norm_sup(A, r) ** p * (s - r) ** (-p) * kp
        except (ConvergenceError, ValueError):
            continue
        if val < best:
            best, best_r = val, r
    out.append(BoundReport("HCOR_MA", best, count, verdict_for(count, best), p=p, s=s, inputs_digest=dg,
                           extra={"r": best_r, "r_A": rA}))
    return out
