"""Approximation numbers, entropy-number bounds and s-number ideal norms.

All operators are complex matrices acting between Euclidean spaces.  The
entropy numbers ``e_n(T)`` are never computed exactly; instead

* :func:`entropy_upper` gives a certified upper bound obtained from a rank-k
  truncation plus a volumetric covering of the k-dimensional image,
* :func:`entropy_lower` gives a certified lower bound from the volume of the
  image ellipsoid,
* :func:`entropy_oracle` brackets ``e_n(T)`` by brute force on tiny inputs
  and is used to audit the two estimators.

Complex dimension k is real dimension 2k, hence the ``2k`` in every exponent.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from ._linalg import as_matrix, singular_values
from .lorentz import INF, LorentzParams, lorentz_norm

# covering constant of the unit ball of a real m-dimensional space:
# N(eps) <= (3/eps)^m, rounded up
COVERING_FACTOR = 4.0

ORACLE_MAX_DOMAIN_DIM = 2
ORACLE_MAX_CENTERS = 16


@dataclass(frozen=True)
class EntropyInterval:
    """Certified bracket ``lower <= e_n(T) <= upper``.

    ``grid_error`` is the image-space mesh width already folded into
    ``upper``; it is kept for reporting.
    """

    n: int
    lower: float
    upper: float
    grid_error: float = 0.0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("index n must be >= 1")
        if not 0.0 <= self.lower <= self.upper:
            raise ValueError(f"invalid interval [{self.lower}, {self.upper}]")

    def contains(self, value: float, slack: float = 0.0) -> bool:
        return self.lower - slack <= value <= self.upper + slack


def approximation_numbers(T, n_max: int | None = None) -> np.ndarray:
    """Approximation numbers ``a_1(T) >= a_2(T) >= ...`` (singular values).

    With ``n_max`` larger than ``min(rows, cols)`` the result is zero padded.
    """
    s = singular_values(as_matrix(T))
    if n_max is not None and n_max > s.size:
        s = np.concatenate([s, np.zeros(n_max - s.size)])
    elif n_max is not None:
        s = s[:n_max]
    return s


def _upper_from_sigma(sigma: np.ndarray, n: np.ndarray) -> np.ndarray:
    # rows: indices n, columns: truncation rank k = 1..d
    d = sigma.size
    s1 = sigma[0]
    if s1 == 0.0:
        return np.zeros(n.shape)
    k = np.arange(1, d + 1, dtype=float)
    tail = np.append(sigma[1:], 0.0)  # sigma_{k+1}, with sigma_{d+1} = 0
    terms = tail[None, :] + COVERING_FACTOR * s1 * 2.0 ** (-(n[:, None] - 1.0) / (2.0 * k[None, :]))
    return np.minimum(terms.min(axis=1), s1)


def _lower_from_sigma(sigma: np.ndarray, n: np.ndarray) -> np.ndarray:
    pos = sigma[sigma > 0]
    if pos.size == 0:
        return np.zeros(n.shape)
    k = np.arange(1, pos.size + 1, dtype=float)
    geo = np.exp(np.cumsum(np.log(pos)) / k)  # (sigma_1 ... sigma_k)^{1/k}
    vals = 2.0 ** (-(n[:, None] - 1.0) / (2.0 * k[None, :])) * geo[None, :]
    return vals.max(axis=1)


def entropy_upper_sequence(T, n_max: int) -> np.ndarray:
    """Upper bounds on ``e_1(T), ..., e_{n_max}(T)``."""
    sigma = singular_values(as_matrix(T))
    return _upper_from_sigma(sigma, np.arange(1, n_max + 1, dtype=float))


def entropy_upper(T, n: int) -> float:
    """Certified upper bound on the n-th entropy number.

    ``min_k [sigma_{k+1} + 4 sigma_1 2^{-(n-1)/(2k)}]`` over truncation ranks
    ``k = 1..d`` together with the trivial bound ``e_n <= e_1 = ||T||``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    sigma = singular_values(as_matrix(T))
    return float(_upper_from_sigma(sigma, np.array([float(n)]))[0])


def entropy_lower(T, n: int) -> float:
    """Certified lower bound ``max_k 2^{-(n-1)/(2k)} (sigma_1...sigma_k)^{1/k}``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    sigma = singular_values(as_matrix(T))
    return float(_lower_from_sigma(sigma, np.array([float(n)]))[0])


def entropy_lower_sequence(T, n_max: int) -> np.ndarray:
    sigma = singular_values(as_matrix(T))
    return _lower_from_sigma(sigma, np.arange(1, n_max + 1, dtype=float))


# ---------------------------------------------------------------------------
# brute-force covering oracle


def _realify(z: np.ndarray) -> np.ndarray:
    return np.concatenate([z.real, z.imag], axis=-1)


def _minimax_center(points: np.ndarray, iters: int = 100) -> np.ndarray:
    # Badoiu-Clarkson iteration towards the minimal enclosing ball centre
    c = points.mean(axis=0)
    for i in range(1, iters + 1):
        far = points[np.argmax(np.sum((points - c) ** 2, axis=1))]
        c = c + (far - c) / (i + 1)
    return c


def _k_center_radius(points: np.ndarray, k: int, rng: np.random.Generator, restarts: int = 4) -> float:
    best = math.inf
    npts = points.shape[0]
    for r in range(restarts):
        first = 0 if r == 0 else int(rng.integers(npts))
        centers = [points[first]]
        dist = np.sum((points - centers[0]) ** 2, axis=1)
        for _ in range(1, k):
            centers.append(points[int(np.argmax(dist))])
            dist = np.minimum(dist, np.sum((points - centers[-1]) ** 2, axis=1))
        C = np.array(centers)
        radius = math.sqrt(dist.max())
        # Lloyd-style refinement with minimax centres; every radius is exact
        for _ in range(30):
            d2 = np.sum((points[:, None, :] - C[None, :, :]) ** 2, axis=2)
            lab = np.argmin(d2, axis=1)
            newC = C.copy()
            for j in range(k):
                members = points[lab == j]
                if members.size:
                    newC[j] = _minimax_center(members)
            d2 = np.sum((points[:, None, :] - newC[None, :, :]) ** 2, axis=2)
            new_radius = math.sqrt(d2.min(axis=1).max())
            if new_radius >= radius * (1 - 1e-9):
                if new_radius < radius:
                    radius = new_radius
                break
            C, radius = newC, new_radius
        best = min(best, radius)
    return best


def _packing_separation(points: np.ndarray, m: int, rng: np.random.Generator, restarts: int = 6) -> float:
    """Largest min pairwise distance found among ``m`` of ``points`` (heuristic)."""
    npts = points.shape[0]
    if m > npts:
        return 0.0
    best = 0.0
    for r in range(restarts):
        idx = [int(np.argmax(np.sum(points**2, axis=1)))] if r == 0 else [int(rng.integers(npts))]
        dist = np.sum((points - points[idx[0]]) ** 2, axis=1)
        for _ in range(1, m):
            idx.append(int(np.argmax(dist)))
            dist = np.minimum(dist, np.sum((points - points[idx[-1]]) ** 2, axis=1))
        # local search: relocate an endpoint of the closest pair; the minimum
        # separation never decreases
        for _ in range(400):
            P = points[idx]
            D = np.sum((P[:, None, :] - P[None, :, :]) ** 2, axis=2)
            np.fill_diagonal(D, np.inf)
            cur = D.min()
            i, j = np.unravel_index(np.argmin(D), D.shape)
            moved = False
            for mover in (i, j):
                others = P[np.arange(m) != mover]
                cand = np.min(np.sum((points[:, None, :] - others[None, :, :]) ** 2, axis=2), axis=1)
                t = int(np.argmax(cand))
                if cand[t] > cur * (1 + 1e-12):
                    idx[mover] = t
                    moved = True
                    break
            if not moved:
                break
        P = points[idx]
        D = np.sum((P[:, None, :] - P[None, :, :]) ** 2, axis=2)
        np.fill_diagonal(D, np.inf)
        best = max(best, math.sqrt(D.min()))
    return best


def entropy_oracle(T, n: int, resolution: int = 41, seed: int = 0) -> EntropyInterval:
    """Brute-force bracket of ``e_n(T)`` for operators on C^1 or C^2.

    The domain ball is replaced by a cubic grid with ``resolution`` points
    per real axis.  The upper end is a k-centre covering of the grid image,
    widened by the image of one grid half-diagonal, and capped by ``||T||``.
    The lower end is half the separation of ``2^{n-1} + 1`` image points of
    the true unit ball (two of them must share a covering ball).
    """
    T = as_matrix(T)
    if n < 1:
        raise ValueError("n must be >= 1")
    if T.shape[1] > ORACLE_MAX_DOMAIN_DIM:
        raise ValueError(f"oracle limited to complex domain dimension <= {ORACLE_MAX_DOMAIN_DIM}")
    q = 2 ** (n - 1)
    if q > ORACLE_MAX_CENTERS:
        raise ValueError(f"oracle limited to 2^(n-1) <= {ORACLE_MAX_CENTERS} balls")
    if resolution < 3:
        raise ValueError("resolution must be >= 3")
    sigma = singular_values(T)
    norm = float(sigma[0])
    if norm == 0.0:
        return EntropyInterval(n, 0.0, 0.0, 0.0)

    rng = np.random.default_rng(seed)
    c = T.shape[1]
    m = 2 * c
    h = 2.0 / (resolution - 1)
    axis = np.linspace(-1.0, 1.0, resolution)
    grid = np.stack(np.meshgrid(*([axis] * m), indexing="ij"), axis=-1).reshape(-1, m)
    half_diag = 0.5 * h * math.sqrt(m)
    radii = np.linalg.norm(grid, axis=1)
    cover = grid[radii <= 1.0 + half_diag]
    grid_error = norm * half_diag

    def image(xs: np.ndarray) -> np.ndarray:
        z = xs[:, :c] + 1j * xs[:, c:]
        return _realify(z @ T.T)

    cover_img = image(cover)
    # identical image points only slow the search down
    cover_img = np.unique(np.round(cover_img, 14), axis=0)
    radius = _k_center_radius(cover_img, min(q, cover_img.shape[0]), rng)
    upper = min(radius + grid_error, norm)

    cr = np.linalg.norm(cover, axis=1)
    in_ball = cover / np.maximum(cr, 1.0)[:, None]
    pack_img = np.unique(np.round(image(in_ball), 14), axis=0)
    lower = 0.5 * _packing_separation(pack_img, q + 1, rng)
    lower = min(lower, upper)
    return EntropyInterval(n, lower, upper, grid_error)


# ---------------------------------------------------------------------------
# ideal norms

NormKind = Literal["approx", "entropy_upper"]


def _entropy_ideal_norm(sigma: np.ndarray, params: LorentzParams, chunk: int = 512) -> float:
    s1 = float(sigma[0]) if sigma.size else 0.0
    if s1 == 0.0:
        return 0.0
    d = sigma.size
    p, q = params.p, params.q
    # majorant e_n <= 4 s1 2^{-(n-1)/(2d)} (truncation at full rank)
    if q == INF:
        n_peak = 2.0 * d / (p * math.log(2.0))
        best = 0.0
        start = 1
        while True:
            n = np.arange(start, start + chunk, dtype=float)
            best = max(best, float(np.max(_upper_from_sigma(sigma, n) * n ** (1.0 / p))))
            nxt = start + chunk
            if nxt > n_peak and COVERING_FACTOR * s1 * nxt ** (1.0 / p) * 2.0 ** (-(nxt - 1.0) / (2 * d)) < best:
                return best
            start = nxt
    total = 0.0
    start = 1
    while True:
        n = np.arange(start, start + chunk, dtype=float)
        total += float(np.sum(_upper_from_sigma(sigma, n) ** q * n ** (q / p - 1.0)))
        nxt = start + chunk  # first index not yet summed
        expo = q / p - 1.0
        rho = 2.0 ** (-q / (2.0 * d)) * max(1.0, (1.0 + 1.0 / nxt) ** expo)
        if rho < 1.0:
            t_next = (COVERING_FACTOR * s1) ** q * 2.0 ** (-q * (nxt - 1.0) / (2 * d)) * nxt**expo
            tail = t_next / (1.0 - rho)
            if tail <= 1e-13 * total:
                return (total + tail) ** (1.0 / q)
        start = nxt


def ideal_norm(T, params: LorentzParams, kind: NormKind = "approx") -> float:
    """s-number ideal quasi-norm ``||(s_n(T))||_{p,q}``.

    ``kind="approx"`` uses the singular values and is exact.
    ``kind="entropy_upper"`` uses :func:`entropy_upper` for every n and is
    an upper bound on the entropy-number norm; the exponentially small tail
    is either provably irrelevant (``q = INF``) or bounded by a geometric
    series and added in.
    """
    sigma = singular_values(as_matrix(T))
    if kind == "approx":
        return lorentz_norm(sigma, params)
    if kind == "entropy_upper":
        return _entropy_ideal_norm(sigma, params)
    raise ValueError(f"unknown norm kind {kind!r}")
