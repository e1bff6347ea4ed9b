"""Eigenvalue-counting inequalities for ``A + K`` and their checkers.

Every checker returns a :class:`BoundReport` comparing an observed quantity
(an eigenvalue count or modulus) with the value of a bound.  Bounds are
assembled only from upper estimates of their ingredients, so ``holds`` is a
certificate for the instance at hand.  With ``norm_kind="approx"`` the
entropy-number norm of ``K`` is replaced by its singular-value norm; this
is not a valid substitute in general, and a failure is then reported as
``inconclusive`` rather than ``violated``.
"""
from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field, replace

import numpy as np

from ._linalg import ConvergenceError, as_matrix, op_norm
from .gallery import make_circulant_pair
from .lorentz import INF, LorentzParams, decreasing_rearrangement, weak_norm_by_counting
from .snumbers import entropy_oracle, entropy_upper_sequence, ideal_norm, ORACLE_MAX_CENTERS, ORACLE_MAX_DOMAIN_DIM
from .special import LN2, PhiOverflowError, phi_p, thm1_constant
from .spectral import COUNT_RTOL, SpectralProfile, counting_function, eigen_profile, power_norm_sup, spectral_radius

THEOREM_IDS = (
    "CARL13",
    "THM1_15",
    "THM1_16",
    "COR1_9",
    "THM2_X",
    "THM2_Y",
    "EX2_31",
    "THM3_5",
    "PIETSCH_23",
    "EQ25",
    "HCOR_NORM",
    "HCOR_MA",
)
VERDICTS = ("holds", "violated", "inconclusive", "report_only")
REL_TOL = 1e-9


@dataclass(frozen=True)
class BoundReport:
    theorem_id: str
    bound_value: float
    observed_value: float
    verdict: str
    p: float = math.nan
    q: float = INF
    s: float = math.nan
    pair_id: str = ""
    inputs_digest: str = ""
    notes: str = ""
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.theorem_id not in THEOREM_IDS:
            raise ValueError(f"unknown theorem id {self.theorem_id!r}")
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")

    @property
    def ratio(self) -> float:
        if self.bound_value == 0:
            return 0.0 if self.observed_value == 0 else math.inf
        return self.observed_value / self.bound_value

    def with_pair(self, pair_id: str) -> "BoundReport":
        return replace(self, pair_id=pair_id)


def verdict_for(observed: float, bound: float, heuristic: bool = False) -> str:
    """``holds`` iff ``observed <= bound + 1e-9 (1 + |bound|)``."""
    if observed <= bound + REL_TOL * (1.0 + abs(bound)):
        return "holds"
    return "inconclusive" if heuristic else "violated"


def digest(*arrays, **params) -> str:
    h = hashlib.sha256()
    for a in arrays:
        a = np.ascontiguousarray(a, dtype=np.complex128)
        h.update(str(a.shape).encode())
        h.update(a.tobytes())
    h.update(repr(sorted(params.items())).encode())
    return h.hexdigest()[:16]


def k_norm_power(K, p: float, norm_kind: str = "entropy_upper") -> float:
    """``||K||_{p,INF}^p`` with the requested s-number sequence."""
    return ideal_norm(K, LorentzParams(p, INF), norm_kind) ** p


def _moduli(profile: SpectralProfile) -> np.ndarray:
    return np.sort(profile.moduli)[::-1]


# ---------------------------------------------------------------------------
# Carl's inequality


def check_carl(A, K, n: int, m: int, profile: SpectralProfile | None = None) -> BoundReport:
    """``|lambda_n(A+K)| <= 2^{(m-1)/(2n)} e_m(A+K)`` with ``e_m`` bounded above."""
    if n < 1 or m < 1:
        raise ValueError("n and m must be >= 1")
    A = as_matrix(A, square=True)
    K = as_matrix(K, square=True)
    B = A + K
    prof = profile if profile is not None else eigen_profile(B)
    mods = _moduli(prof)
    lam = float(mods[n - 1]) if n <= mods.size else 0.0
    e_m = float(entropy_upper_sequence(B, m)[m - 1])
    factor = 2.0 ** ((m - 1) / (2.0 * n))
    bound = factor * e_m
    verdict = verdict_for(lam, bound)
    notes = f"n={n} m={m}"
    if verdict == "violated":
        verdict, notes = _confirm_with_oracle(B, m, lam, factor, verdict, notes)
    return BoundReport("CARL13", bound, lam, verdict, inputs_digest=digest(A, K, n=n, m=m), notes=notes,
                       extra={"n": n, "m": m})


def _confirm_with_oracle(B, m, observed, factor, verdict, notes):
    # a certified entropy upper bound makes a violation definitive; the
    # oracle re-run flags an unsound estimator instead
    if B.shape[1] <= ORACLE_MAX_DOMAIN_DIM and 2 ** (m - 1) <= ORACLE_MAX_CENTERS:
        iv = entropy_oracle(B, m)
        if observed <= factor * iv.upper * (1 + REL_TOL):
            return "inconclusive", notes + f"; oracle bracket [{iv.lower:.6g}, {iv.upper:.6g}] disagrees with estimator"
        return verdict, notes + f"; confirmed by oracle bracket [{iv.lower:.6g}, {iv.upper:.6g}]"
    return verdict, notes


def check_carl_grid(A, K, n_max: int = 8, m_max: int = 8) -> list[BoundReport]:
    """Carl's inequality for all ``1 <= n <= n_max``, ``1 <= m <= m_max``."""
    A = as_matrix(A, square=True)
    K = as_matrix(K, square=True)
    prof = eigen_profile(A + K)
    return [check_carl(A, K, n, m, profile=prof) for n in range(1, n_max + 1) for m in range(1, m_max + 1)]


# ---------------------------------------------------------------------------
# the norm-based count bound (thm1) and the infimum behind it


def infimum_form(norm_A: float, s: float, p: float) -> float:
    """``(ln 2 / 2) inf_{1 < x < s/a} 1 / (ln x (s/x - a)^p)`` by direct search.

    In ``t = ln x`` the logarithm of the denominator,
    ``ln t + p ln(s e^{-t} - a)``, is concave, so a coarse grid followed by
    golden-section search finds the maximiser, which never exceeds ``1/p``.
    """
    a = float(norm_A)
    if not (s > a >= 0 and p > 0):
        raise ValueError(f"need s > norm_A >= 0 and p > 0, got s={s}, norm_A={a}, p={p}")

    def objective(t):
        return math.log(t) + p * math.log(s * math.exp(-t) - a)

    # stationarity gives 1/t = p (1 + a / (s e^{-t} - a)) >= p, so t* <= 1/p
    t_hi = min(math.log(s) - math.log(a), 4.0 / p) if a > 0 else 4.0 / p
    ts = np.linspace(0.0, t_hi, 402)[1:-1]
    vals = [objective(t) for t in ts]
    i = int(np.argmax(vals))
    lo = ts[i - 1] if i > 0 else ts[0] * 1e-3
    hi = ts[i + 1] if i + 1 < ts.size else 0.5 * (ts[-1] + t_hi)
    g = (math.sqrt(5.0) - 1.0) / 2.0
    c, d = hi - g * (hi - lo), lo + g * (hi - lo)
    fc, fd = objective(c), objective(d)
    while hi - lo > 1e-13 * hi:
        if fc > fd:
            hi, d, fd = d, c, fc
            c = hi - g * (hi - lo)
            fc = objective(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + g * (hi - lo)
            fd = objective(d)
    best = max(fc, fd, vals[i])
    return 0.5 * LN2 * math.exp(-best)


def thm1_value(norm_A: float, s: float, p: float, n_k: float, form: str = "simple_16") -> float:
    """Right-hand side of the thm1 count bound given ``||K||^p = n_k``."""
    if not s > norm_A:
        raise ValueError(f"s = {s} must exceed ||A|| = {norm_A}")
    if form == "phi_15":
        try:
            return 0.5 * LN2 * phi_p(p, norm_A / s) / s**p * n_k
        except PhiOverflowError:
            return math.inf
    if form == "simple_16":
        return thm1_constant(p) * s / (s - norm_A) ** (p + 1.0) * n_k
    raise ValueError(f"unknown form {form!r}")


def thm1_bound(
    A,
    K,
    s: float,
    p: float,
    form: str = "simple_16",
    norm_kind: str = "entropy_upper",
    *,
    profile: SpectralProfile | None = None,
    n_k: float | None = None,
) -> BoundReport:
    """Check ``n_{A+K}(s) <= bound`` for ``s > ||A||``.

    ``form="phi_15"`` is the Lambert-W bound, ``form="simple_16"`` the
    ``C_p s / (s - ||A||)^{p+1}`` majorant.  ``profile`` and ``n_k`` can be
    passed to reuse work across an ``s`` sweep.
    """
    A = as_matrix(A, square=True)
    K = as_matrix(K, square=True)
    if not p > 0:
        raise ValueError("p must be positive")
    norm_A = op_norm(A)
    if not s > norm_A:
        raise ValueError(f"s = {s} must exceed ||A|| = {norm_A}")
    prof = profile if profile is not None else eigen_profile(A + K)
    nk = n_k if n_k is not None else k_norm_power(K, p, norm_kind)
    bound = thm1_value(norm_A, s, p, nk, form)
    observed = counting_function(prof, s)
    tid = "THM1_15" if form == "phi_15" else "THM1_16"
    return BoundReport(tid, bound, float(observed), verdict_for(observed, bound, norm_kind == "approx"),
                       p=p, s=s, inputs_digest=digest(A, K, s=s, p=p, form=form),
                       notes=f"norm={norm_kind}", extra={"norm_A": norm_A, "n_k": nk})


def cor1_check(A, K, p: float, norm_kind: str = "entropy_upper", *, profile=None, n_k=None) -> BoundReport:
    """``||((|lambda_n| - ||A||)_+)||_{p+1,INF}^{p+1} <= C_p r(A+K) ||K||^p``.

    The left side is the supremum over ``s`` of ``(s - ||A||)^{p+1} n(s)``,
    attained as ``s`` rises to one of the eigenvalue moduli.
    """
    A = as_matrix(A, square=True)
    K = as_matrix(K, square=True)
    norm_A = op_norm(A)
    if norm_A == 0.0:
        raise ValueError("A must be nonzero")
    prof = profile if profile is not None else eigen_profile(A + K)
    mods = prof.moduli
    # same strictness guard as counting_function, so unimodular roundoff stays out
    excess = decreasing_rearrangement(np.maximum(mods / (1.0 + COUNT_RTOL) - norm_A, 0.0))
    lhs = weak_norm_by_counting(excess, p + 1.0) ** (p + 1.0)
    r_b = float(mods.max())
    nk = n_k if n_k is not None else k_norm_power(K, p, norm_kind)
    rhs = thm1_constant(p) * r_b * nk
    return BoundReport("COR1_9", rhs, lhs, verdict_for(lhs, rhs, norm_kind == "approx"), p=p,
                       inputs_digest=digest(A, K, p=p), notes=f"norm={norm_kind}",
                       extra={"norm_A": norm_A, "r_AK": r_b, "n_k": nk})


# ---------------------------------------------------------------------------
# the spectral-radius count bound (thm2)


def thm2_term(s: float, r: float, p: float, M: float, n_k: float) -> float:
    return thm1_constant(p) * s * M**p / (s - r) ** (p + 1.0) * n_k


def thm2_midpoint_value(s: float, r_A: float, p: float, M_mid: float, n_k: float) -> float:
    return 2.0 ** (p + 1.0) * thm1_constant(p) * s * M_mid**p / (s - r_A) ** (p + 1.0) * n_k


def r_grid_points(r_A: float, s: float, count: int, extra=()) -> list[float]:
    """Uniform interior grid of ``(r_A, s)`` plus the ``extra`` points inside it."""
    u = np.linspace(0.0, 1.0, count + 2)[1:-1]
    pts = set((r_A + (s - r_A) * u).tolist())
    pts.update(x for x in extra if r_A < x < s)
    return sorted(pts)


def thm2_bound(
    A,
    K,
    s: float,
    p: float,
    form: str = "inf_x",
    r_grid: int = 24,
    norm_kind: str = "entropy_upper",
    *,
    profile: SpectralProfile | None = None,
    n_k: float | None = None,
    r_A: float | None = None,
    r_values=None,
    m_cache: dict | None = None,
) -> BoundReport:
    """Check ``n_{A+K}(s)`` against the ``M_A(r)`` bound for ``s > r(A)``.

    ``inf_x`` takes the minimum over a grid of ``r`` in ``(r(A), s)`` which
    always contains the midpoint and, when admissible, ``||A||``.  Grid
    points where ``M_A(r)`` cannot be computed are skipped; the minimum
    over the rest is still a valid bound.  ``midpoint_y`` uses
    ``r = (s + r(A))/2`` only.  ``r_values`` replaces the default grid and
    ``m_cache`` memoises ``M_A(r)`` across calls on the same ``A``.
    """
    A = as_matrix(A, square=True)
    K = as_matrix(K, square=True)
    rA = spectral_radius(A) if r_A is None else r_A
    if not s > rA:
        raise ValueError(f"s = {s} must exceed r(A) = {rA}")
    prof = profile if profile is not None else eigen_profile(A + K)
    nk = n_k if n_k is not None else k_norm_power(K, p, norm_kind)
    observed = counting_function(prof, s)
    cache = m_cache if m_cache is not None else {}

    def M(r):
        if r not in cache:
            try:
                cache[r] = power_norm_sup(A, r)
            except (ConvergenceError, ValueError) as exc:
                cache[r] = exc
        if isinstance(cache[r], Exception):
            raise cache[r]
        return cache[r]

    r_mid = 0.5 * (s + rA)
    mid = thm2_midpoint_value(s, rA, p, M(r_mid), nk)
    extra = {"r_A": rA, "n_k": nk}
    if form == "midpoint_y":
        bound = mid
        tid = "THM2_Y"
        extra["r"] = r_mid
    elif form == "inf_x":
        tid = "THM2_X"
        norm_A = op_norm(A)
        bound, best_r, skipped = mid, r_mid, 0
        grid = r_grid_points(rA, s, r_grid, extra=(norm_A,)) if r_values is None else r_values
        for r in grid:
            if r == r_mid or not rA < r < s:
                continue
            try:
                val = thm2_term(s, r, p, M(r), nk)
            except (ConvergenceError, ValueError):
                skipped += 1
                continue
            if val < bound:
                bound, best_r = val, r
        extra.update(r=best_r, skipped=skipped)
    else:
        raise ValueError(f"unknown form {form!r}")
    return BoundReport(tid, bound, float(observed), verdict_for(observed, bound, norm_kind == "approx"),
                       p=p, s=s, inputs_digest=digest(A, K, s=s, p=p, form=form),
                       notes=f"norm={norm_kind}", extra=extra)


# ---------------------------------------------------------------------------
# the counterexample to a spectral-radius-only bound


def ex2_refute_31(N: int, s: float, p: float, constant: float | None = None) -> BoundReport:
    """Compare the circulant count ``N`` with ``C s / (s - r(A))^{p+1} |||K|||^p``.

    ``r(A) = 0`` and ``|||K|||_{p,INF} = 1``, so the candidate bound is
    ``C s^{-p}`` and must fail once ``N > C s^{-p}``.  ``constant`` defaults
    to ``C_p``.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    if not 0 < s < 1:
        raise ValueError("s must lie in (0, 1)")
    if not p > 0:
        raise ValueError("p must be positive")
    C = thm1_constant(p) if constant is None else float(constant)
    A, K = make_circulant_pair(N)
    rA = spectral_radius(A)
    k_norm = ideal_norm(K, LorentzParams(p, INF), "approx")
    bound = C * s / (s - rA) ** (p + 1.0) * k_norm**p
    observed = counting_function(eigen_profile(A + K), s)
    threshold = C * s ** (-p)
    return BoundReport("EX2_31", bound, float(observed), verdict_for(observed, bound), p=p, s=s,
                       pair_id=f"circulant_pair:{N}", inputs_digest=digest(A, K, s=s, p=p),
                       notes=f"violation expected once N > C*s^-p = {threshold:.6g}",
                       extra={"N": N, "constant": C, "threshold": threshold, "r_A": rA, "k_norm": k_norm})


# ---------------------------------------------------------------------------
# sweep helpers


def midpoint_grid(moduli, floor: float) -> list[float]:
    """Midpoints between consecutive distinct moduli above ``floor``.

    ``floor`` itself takes part as the lowest breakpoint; the count only
    changes at the moduli, so these points sample every step.
    """
    mods = np.unique(np.asarray(moduli, dtype=float))
    pts = np.concatenate([[floor], mods[mods > floor * (1 + 1e-12)]])
    return (0.5 * (pts[:-1] + pts[1:])).tolist()


def sweep_pair(A, K, ps, theorems=("thm1", "cor1"), norm_kind: str = "entropy_upper", r_grid: int = 24,
               s_values=None, pair_id: str = "") -> list[BoundReport]:
    """Run the Banach-space checks on one pair over ``ps`` and an ``s`` grid.

    Without ``s_values`` the grid is :func:`midpoint_grid` above ``||A||``
    for thm1 and above ``r(A)`` for thm2.
    """
    A = as_matrix(A, square=True)
    K = as_matrix(K, square=True)
    prof = eigen_profile(A + K)
    mods = prof.moduli
    norm_A = op_norm(A)
    rA = spectral_radius(A) if "thm2" in theorems else None
    m_cache: dict = {}
    out = []
    for p in ps:
        nk = k_norm_power(K, p, norm_kind)
        if "thm1" in theorems or "thm1_15" in theorems:
            grid = s_values if s_values is not None else midpoint_grid(mods, norm_A)
            for s in grid:
                if s <= norm_A:
                    continue
                if "thm1" in theorems:
                    out.append(thm1_bound(A, K, s, p, "simple_16", norm_kind, profile=prof, n_k=nk))
                if "thm1_15" in theorems:
                    out.append(thm1_bound(A, K, s, p, "phi_15", norm_kind, profile=prof, n_k=nk))
        if "cor1" in theorems and norm_A > 0:
            out.append(cor1_check(A, K, p, norm_kind, profile=prof, n_k=nk))
        if "thm2" in theorems:
            grid = [s for s in (s_values if s_values is not None else midpoint_grid(mods, rA)) if s > rA + 1e-9]
            # one r grid for every s, so M_A(r) is computed once per pair
            r_all = r_grid_points(rA, max(grid), r_grid, extra=(norm_A,)) if grid else []
            for s in grid:
                for form in ("inf_x", "midpoint_y"):
                    out.append(thm2_bound(A, K, s, p, form, r_grid, norm_kind, profile=prof, n_k=nk, r_A=rA,
                                          r_values=r_all, m_cache=m_cache))
    return [r.with_pair(pair_id) for r in out]
