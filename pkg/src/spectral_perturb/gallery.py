"""Test operators: a circulant counterexample, shifts, Volterra and seeded random ensembles."""
from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

KINDS = ("jordan_shift", "circulant_pair", "shift_rank_one", "volterra", "random_ginibre", "random_lowrank")


def _rng(seed: int) -> np.random.Generator:
    # counter-based bit generator: streams depend only on the seed
    return np.random.Generator(np.random.Philox(key=int(seed) & (2**64 - 1)))


def shift(N: int) -> np.ndarray:
    """Nilpotent upper shift: ones on the superdiagonal."""
    return np.diag(np.ones(N - 1, dtype=complex), 1) if N > 1 else np.zeros((1, 1), complex)


def make_circulant_pair(N: int) -> tuple[np.ndarray, np.ndarray]:
    """Nilpotent shift ``A`` and rank-one ``K = e_N e_1^T``.

    ``A + K`` is the cyclic permutation, whose eigenvalues are the N-th
    roots of unity.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    A = shift(N)
    K = np.zeros((N, N), dtype=complex)
    K[N - 1, 0] = 1.0
    return A, K


def make_volterra(N: int) -> np.ndarray:
    """Left-endpoint discretisation ``(1/N) [i >= j]`` of the Volterra operator."""
    if N < 2:
        raise ValueError("N must be >= 2")
    return np.tril(np.ones((N, N), dtype=complex)) / N


def make_shift_rank_one(N: int, weights=None) -> tuple[np.ndarray, np.ndarray]:
    """Truncated forward shift plus a rank-one perturbation ``e_1 w^T``.

    ``A e_j = e_{j+1}`` and ``K`` puts ``w`` in the first row, so ``A + K``
    is a companion matrix with characteristic polynomial
    ``z^N - sum_k w_k z^{N-k}``.  Only a qualitative finite stand-in for
    the shift on l_1; the default weights ``w_k = k^{-2}`` push a few
    eigenvalues outside the unit circle.
    """
    if N < 2:
        raise ValueError("N must be >= 2")
    w = 1.0 / np.arange(1, N + 1, dtype=float) ** 2 if weights is None else np.asarray(weights, dtype=complex)
    if w.shape != (N,):
        raise ValueError(f"weights must have length {N}")
    A = np.diag(np.ones(N - 1, dtype=complex), -1)
    K = np.zeros((N, N), dtype=complex)
    K[0, :] = w
    return A, K


def haar_unitary(N: int, rng: np.random.Generator) -> np.ndarray:
    Z = (rng.standard_normal((N, N)) + 1j * rng.standard_normal((N, N))) / np.sqrt(2.0)
    Q, R = np.linalg.qr(Z)
    ph = np.diag(R) / np.abs(np.diag(R))
    return Q * ph[None, :]


def ginibre(N: int, scale: float, rng: np.random.Generator) -> np.ndarray:
    """Complex Gaussian matrix with ``E|a_ij|^2 = scale^2``; ``||A|| ~ 2 scale sqrt(N)``."""
    return scale * (rng.standard_normal((N, N)) + 1j * rng.standard_normal((N, N))) / np.sqrt(2.0)


def prescribed_singular_values(rank: int, p: float, k_scale: float = 1.0) -> np.ndarray:
    return k_scale * np.arange(1, rank + 1, dtype=float) ** (-1.0 / p)


def make_random_pair(
    N: int,
    rank: int,
    seed: int,
    p: float = 1.0,
    scale: float | None = None,
    k_scale: float = 1.0,
) -> tuple[np.ndarray, np.ndarray]:
    """Ginibre ``A`` and ``K = U diag(k_scale n^{-1/p}) V*`` of the given rank.

    ``scale`` defaults to ``1/(2 sqrt(N))`` so that ``||A||`` is about 1.
    """
    if not 1 <= rank <= N:
        raise ValueError("need 1 <= rank <= N")
    rng = _rng(seed)
    if scale is None:
        scale = 0.5 / np.sqrt(N)
    A = ginibre(N, scale, rng)
    U = haar_unitary(N, rng)[:, :rank]
    V = haar_unitary(N, rng)[:, :rank]
    K = (U * prescribed_singular_values(rank, p, k_scale)[None, :]) @ V.conj().T
    return A, K


@dataclass(frozen=True)
class GallerySpec:
    """Serializable description of an operator pair ``(A, K)``."""

    kind: str
    N: int
    seed: int = 0
    rank: int = 1
    scale: float | None = None
    p: float = 1.0
    k_scale: float = 1.0
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown gallery kind {self.kind!r}; expected one of {KINDS}")
        if self.N < 1:
            raise ValueError("N must be >= 1")

    @property
    def pair_id(self) -> str:
        if self.kind in ("random_ginibre", "random_lowrank"):
            return f"{self.kind}:{self.N}:{self.rank}:{self.seed}"
        return f"{self.kind}:{self.N}"

    def to_dict(self) -> dict:
        return asdict(self)

    def build(self) -> tuple[np.ndarray, np.ndarray]:
        N = self.N
        if self.kind == "circulant_pair":
            return make_circulant_pair(N)
        if self.kind == "jordan_shift":
            return shift(N), np.zeros((N, N), dtype=complex)
        if self.kind == "shift_rank_one":
            return make_shift_rank_one(N)
        if self.kind == "volterra":
            A = make_volterra(N)
            K = np.zeros((N, N), dtype=complex)
            K[0, 0] = self.k_scale
            return A, K
        rank = N if self.kind == "random_ginibre" else self.rank
        return make_random_pair(N, rank, self.seed, p=self.p, scale=self.scale, k_scale=self.k_scale)


def random_ensemble(count: int, seed: int, n_min: int = 2, n_max: int = 16, p: float = 1.0):
    """Seeded list of ``(pair_id, A, K)`` with sizes and ranks drawn per pair.

    ``K`` is scaled by a random factor in [0.5, 3] so that a good share of
    the eigenvalues of ``A + K`` leave the disk of radius ``||A||``.
    """
    rng = _rng(seed)
    out = []
    for i in range(count):
        N = int(rng.integers(n_min, n_max + 1))
        rank = int(rng.integers(1, N + 1))
        k_scale = float(rng.uniform(0.5, 3.0))
        sub = int(rng.integers(2**62))
        spec = GallerySpec("random_lowrank", N, seed=sub, rank=rank, p=p, k_scale=k_scale)
        A, K = spec.build()
        out.append((f"random:{seed}:{i}", A, K))
    return out
