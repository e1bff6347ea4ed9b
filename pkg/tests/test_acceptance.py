"""The twelve acceptance criteria, each at its stated tolerance.

Every criterion is a function returning ``(ok, detail)``; the pytest wrappers
record a PASS/FAIL line that is printed in the terminal summary.  Running
this file directly prints the same lines without pytest.
"""
import math
import os
import sys
import tempfile
import time
from pathlib import Path

import numpy as np
from scipy.optimize import linear_sum_assignment

from spectral_perturb import bounds, hilbert
from spectral_perturb._linalg import eigvals, op_norm
from spectral_perturb.cli import main as cli_main
from spectral_perturb.gallery import make_circulant_pair, make_volterra, random_ensemble
from spectral_perturb.matrixio import dumps_json, dumps_mm, load_matrix, loads_json, loads_mm, save_matrix
from spectral_perturb.snumbers import approximation_numbers, entropy_lower, entropy_oracle, entropy_upper
from spectral_perturb.special import LN2, phi_p, phi_p_ceiling
from spectral_perturb.spectral import power_norm_sup, power_norms, rota_similarity, spectral_radius

ENSEMBLE_SEED = 2024
ENSEMBLE_SIZE = 500
PS = (0.5, 1.0, 2.0)
GRID_PS = (0.25, 0.5, 1.0, 2.0, 4.0)
GRID_X = np.linspace(0.0, 0.99, 200)

_ensemble_cache = {}


def ensemble():
    if "pairs" not in _ensemble_cache:
        _ensemble_cache["pairs"] = random_ensemble(ENSEMBLE_SIZE, ENSEMBLE_SEED)
    return _ensemble_cache["pairs"]


def _match_error(a, b) -> float:
    cost = np.abs(np.asarray(a)[:, None] - np.asarray(b)[None, :])
    i, j = linear_sum_assignment(cost)
    return float(cost[i, j].max())


# ---------------------------------------------------------------------------


def criterion_1():
    t0 = time.perf_counter()
    worst = 0.0
    for p in GRID_PS:
        for s in (1.0, 2.5):
            for x in GRID_X:
                got = bounds.infimum_form(x * s, s, p)
                ref = 0.5 * LN2 * phi_p(p, x) / s**p
                worst = max(worst, abs(got - ref) / ref)
    dt = time.perf_counter() - t0
    return worst <= 1e-8 and dt < 5.0, f"max rel err {worst:.2e}, {dt:.2f}s"


def criterion_2():
    bad = sum(phi_p(p, x) > phi_p_ceiling(p, x) for p in GRID_PS for x in GRID_X)
    return bad == 0, f"{bad} violations over {len(GRID_PS) * GRID_X.size} points"


def criterion_3():
    t0 = time.perf_counter()
    reports = []
    for pid, A, K in ensemble():
        reports += bounds.sweep_pair(A, K, PS, theorems=("thm1", "cor1"), pair_id=pid)
    dt = time.perf_counter() - t0
    bad = [r for r in reports if r.verdict != "holds"]
    n1 = sum(r.theorem_id == "THM1_16" for r in reports)
    return not bad and dt < 60.0, f"{len(bad)} non-holding of {len(reports)} ({n1} count checks), {dt:.1f}s"


def criterion_4():
    pairs = [(pid, A, K) for pid, A, K in random_ensemble(200, ENSEMBLE_SEED + 1)]
    pairs += [(f"circulant:{N}", *make_circulant_pair(N)) for N in range(2, 17)]
    bad = total = 0
    for _, A, K in pairs:
        reps = bounds.check_carl_grid(A, K, 8, 8)
        total += len(reps)
        bad += sum(r.verdict != "holds" for r in reps)
    return bad == 0, f"{bad} violations of {total}"


def criterion_5():
    A, K = make_circulant_pair(4)
    err = _match_error(eigvals(A + K), np.exp(2j * np.pi * np.arange(4) / 4))
    rep = bounds.ex2_refute_31(4, 0.5, 1.0)
    bound_ok = abs(rep.bound_value - 4 * LN2) <= 1e-12 * 4 * LN2
    verdicts = {N: bounds.ex2_refute_31(N, 0.5, 1.0).verdict for N in range(1, 33)}
    onset = all(v == ("violated" if N >= 3 else "holds") for N, v in verdicts.items())
    ok = err <= 1e-10 and bound_ok and onset
    return ok, f"roots err {err:.1e}, bound {rep.bound_value:.6f} vs 4ln2, violated for N>=3: {onset}"


def criterion_6():
    rng = np.random.default_rng(6)
    mismatches = 0
    for _ in range(100):
        N = int(rng.integers(2, 9))
        A = rng.standard_normal((N, N)) + 1j * rng.standard_normal((N, N))
        A[np.triu_indices(N, 1)] *= rng.uniform(0, 3)  # more non-normality
        rA, nA = spectral_radius(A), op_norm(A)
        r = rA * 1.05 + rng.uniform() * (nA - 1.05 * rA)
        brute = float(power_norms(A, r, 10_000).max())
        mismatches += power_norm_sup(A, r) != brute
    ones = 0
    for _ in range(100):
        N = int(rng.integers(1, 9))
        A = rng.standard_normal((N, N)) + 1j * rng.standard_normal((N, N))
        ones += power_norm_sup(A, op_norm(A) * rng.uniform(1.0, 3.0)) == 1.0
    V = make_volterra(256)
    m_hi, m_lo = power_norm_sup(V, 0.2), power_norm_sup(V, 0.05)
    growth = m_lo / m_hi
    ok = mismatches == 0 and ones == 100 and growth > (0.2 / 0.05) ** 3
    return ok, f"{mismatches} mismatches, M=1 in {ones}/100, Volterra growth {growth:.3g} vs 64"


def criterion_7():
    rng = np.random.default_rng(7)
    over = spec_bad = 0
    worst_spec = 0.0
    for _ in range(200):
        N = int(rng.integers(1, 9))
        A = (rng.standard_normal((N, N)) + 1j * rng.standard_normal((N, N))) / math.sqrt(N)
        rA, nA = spectral_radius(A), op_norm(A)
        u = 10 ** rng.uniform(-3, 0)
        r = rA + u * (2 * nA - rA)
        res = rota_similarity(A, r)
        over += res.conjugated_norm > r * (1 + 1e-9)
        e = _match_error(eigvals(res.conjugate(A)), eigvals(A))
        worst_spec = max(worst_spec, e)
        spec_bad += e > 1e-8
    near = []
    tests = [np.diag([0.9, -0.5j, 0.3]), np.diag([1.0, 1.0, 0.2 + 0.2j])]
    for lam in (0.5, 1.0 + 1.0j):
        J = lam * np.eye(4) + np.diag(np.ones(3), 1)
        tests.append(J)
    for A in tests:
        rA = spectral_radius(A)
        near.append(rota_similarity(A, 1.01 * rA).conjugated_norm / rA - 1)
    ok = over == 0 and spec_bad == 0 and max(near) <= 0.05 and min(near) >= -1e-12
    return ok, (f"{over} norm excesses, spectrum err max {worst_spec:.1e}, "
                f"near r(A) excess max {max(near):.3f}")


def criterion_8():
    bad = total = order_bad = 0
    for pid, A, K in ensemble():
        rA, nA = spectral_radius(A), op_norm(A)
        mods = np.abs(eigvals(A + K))
        s_vals = sorted(set(bounds.midpoint_grid(mods, rA)) | set(np.linspace(rA, nA, 5)[1:].tolist()))
        reps = bounds.sweep_pair(A, K, PS, theorems=("thm2",), s_values=s_vals, pair_id=pid)
        total += len(reps)
        bad += sum(r.verdict != "holds" for r in reps)
        by_key = {}
        for r in reps:
            by_key.setdefault((r.p, r.s), {})[r.theorem_id] = r.bound_value
        order_bad += sum(d["THM2_Y"] < d["THM2_X"] for d in by_key.values())
    return bad == 0 and order_bad == 0, f"{bad} violations of {total}, {order_bad} midpoint < grid-inf"


def criterion_9():
    pairs = ensemble()
    bad = total = 0
    for _, A, K in pairs:
        nr = hilbert.numerical_range(A)
        for p in (1.5, 2.0, 4.0):
            total += 1
            bad += hilbert.thm3_check(A, K, p, nr=nr).verdict != "holds"
    chain_bad = chain_total = 0
    for _, A, K in pairs[:300]:
        ch = hilbert.schur_chain(A, K)
        chain_total += ch.k_diag.size
        chain_bad += int(np.sum(np.abs(ch.k_diag) < ch.d_lower * (1 - 1e-9) - 1e-12))
    pietsch_bad = trials = 0
    rng = np.random.default_rng(9)
    for i in range(10):
        N = int(rng.integers(2, 13))
        K = rng.standard_normal((N, N)) + 1j * rng.standard_normal((N, N))
        for p in (1.5, 2.0, 4.0):
            rep = hilbert.pietsch_check(K, p, trials=1000, seed=i)
            trials += 1000
            pietsch_bad += rep.verdict != "holds"
    ok = bad == 0 and chain_bad == 0 and pietsch_bad == 0
    return ok, (f"{bad}/{total} violations, chain {chain_bad}/{chain_total}, "
                f"Pietsch {pietsch_bad} over {trials} trials")


def criterion_10():
    rng = np.random.default_rng(10)
    scalars = [1.0 + 0j] + list(10 ** rng.uniform(-1, 0.5, 49) * np.exp(2j * np.pi * rng.uniform(size=49)))
    bad = nested = 0
    for z in scalars:
        T = np.array([[z]])
        for n in range(1, 6):
            iv = entropy_oracle(T, n)
            lo, up = entropy_lower(T, n), entropy_upper(T, n)
            # both are certified intervals around e_n, so they must overlap
            bad += not (lo <= iv.upper * (1 + 1e-12) and iv.lower <= up * (1 + 1e-12))
            # informational: how often the oracle interval also sits inside ours
            nested += lo <= iv.lower and iv.upper <= up
    iv2 = entropy_oracle(np.array([[1.0 + 0j]]), 2)
    target = math.sqrt(3) / 2
    brackets = iv2.lower - iv2.grid_error <= target <= iv2.upper + iv2.grid_error
    return bad == 0 and brackets, (f"{bad} unsound of {len(scalars) * 5} ({nested} nested), n=2 oracle "
                                   f"[{iv2.lower:.4f}, {iv2.upper:.4f}] vs {target:.4f}")


def criterion_11():
    rng = np.random.default_rng(11)
    bad = 0
    tol = 1e-10

    def rand(m, n, rank=None):
        X = rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))
        if rank is not None:
            X = X[:, :rank] @ (rng.standard_normal((rank, n)) + 0j) if rank < min(m, n) else X
        return X

    for _ in range(500):
        a, b, c, d = (int(v) for v in rng.integers(1, 13, 4))
        R, S, T = rand(a, b), rand(b, c, int(rng.integers(1, min(b, c) + 1))), rand(c, d)
        sS = approximation_numbers(S)
        # (s1) a_1 = norm, nonincreasing, nonnegative
        bad += abs(sS[0] - op_norm(S)) > tol * sS[0] or np.any(np.diff(sS) > tol * sS[0]) or np.any(sS < 0)
        # (s2) additivity a_{m+n-1}(S + S') <= a_m(S) + a_n(S')
        S2 = rand(b, c)
        k = min(b, c)
        sSum, s2 = approximation_numbers(S + S2, 2 * k), approximation_numbers(S2, k)
        for m in range(1, k + 1):
            for n in range(1, k + 2 - m):
                bad += sSum[m + n - 2] > sS[m - 1] + s2[n - 1] + tol * (sS[0] + s2[0])
        # (s3) ideal property a_n(R S T) <= ||R|| a_n(S) ||T||
        sRST = approximation_numbers(R @ S @ T, k)
        scale = op_norm(R) * op_norm(T)
        bad += np.any(sRST > scale * sS[:k] + tol * scale * sS[0])
        # (s4) rank: a_n vanishes for n > rank
        rk = np.linalg.matrix_rank(S)
        bad += np.any(approximation_numbers(S, k + 1)[rk:] > 1e-9 * sS[0])
        # (s5) norming: a_n(I_n) = 1
        bad += abs(approximation_numbers(np.eye(a))[a - 1] - 1.0) > tol
    return bad == 0, f"{bad} violations over 500 triples"


def criterion_12():
    rng = np.random.default_rng(12)
    exact = True
    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        for i in range(20):
            R, C = (int(v) for v in rng.integers(1, 7, 2))
            M = (rng.standard_normal((R, C)) * 10.0 ** rng.integers(-300, 300, (R, C))
                 + 1j * rng.standard_normal((R, C)))
            M[rng.uniform(size=(R, C)) < 0.3] = 0
            for name in ("m.json", "m.mtx"):
                save_matrix(tmp / name, M)
                exact &= load_matrix(tmp / name).tobytes() == M.tobytes()
            exact &= loads_mm(dumps_mm(M, "array")).tobytes() == M.tobytes()
            exact &= loads_json(dumps_json(M)).tobytes() == M.tobytes()
        outs = []
        old = os.environ.get("SPECTRAL_PERTURB_SEED")
        os.environ["SPECTRAL_PERTURB_SEED"] = "77"
        try:
            for k, jobs in enumerate(("1", "1", "3")):
                out = tmp / f"run{k}"
                code = cli_main(["sweep", "--thm", "thm1,thm2,cor1", "--pair", "gallery:circulant:6",
                                 "ensemble:8", "gallery:random:6:2", "--p", "0.5", "1", "--out", str(out),
                                 "--jobs", jobs, "--no-plot"])
                outs.append((code, (out / "reports.csv").read_bytes()))
        finally:
            if old is None:
                del os.environ["SPECTRAL_PERTURB_SEED"]
            else:
                os.environ["SPECTRAL_PERTURB_SEED"] = old
    same = outs[0][1] == outs[1][1] == outs[2][1] and all(c == 0 for c, _ in outs)
    return exact and same, f"round-trip bit-exact {exact}, seeded CSV byte-identical {same}"


CRITERIA = {
    1: ("closed-form infimum identity", criterion_1),
    2: ("Phi_p majorant", criterion_2),
    3: ("count bound and corollary over the ensemble", criterion_3),
    4: ("Carl inequality", criterion_4),
    5: ("circulant counterexample", criterion_5),
    6: ("power-norm supremum", criterion_6),
    7: ("similarity to norm <= r", criterion_7),
    8: ("spectral-radius count bound", criterion_8),
    9: ("Hilbert-space bound, Schur chain, Pietsch", criterion_9),
    10: ("entropy bracket soundness", criterion_10),
    11: ("s-number axioms", criterion_11),
    12: ("file formats and reproducible sweeps", criterion_12),
}


def _run(k):
    name, fn = CRITERIA[k]
    ok, detail = fn()
    return ok, f"{'PASS' if ok else 'FAIL'} criterion {k:2d} ({name}): {detail}"


def _check(k):
    from conftest import ACCEPTANCE_LINES

    ok, line = _run(k)
    ACCEPTANCE_LINES[k] = line
    print(line)
    assert ok, line


def test_criterion_01_infimum_identity():
    _check(1)


def test_criterion_02_phi_majorant():
    _check(2)


def test_criterion_03_count_bound_ensemble():
    _check(3)


def test_criterion_04_carl():
    _check(4)


def test_criterion_05_circulant_counterexample():
    _check(5)


def test_criterion_06_power_norm_sup():
    _check(6)


def test_criterion_07_similarity():
    _check(7)


def test_criterion_08_spectral_radius_bound():
    _check(8)


def test_criterion_09_hilbert():
    _check(9)


def test_criterion_10_entropy_soundness():
    _check(10)


def test_criterion_11_s_number_axioms():
    _check(11)


def test_criterion_12_cli_formats():
    _check(12)


if __name__ == "__main__":
    failed = 0
    for k in sorted(CRITERIA):
        ok, line = _run(k)
        failed += not ok
        print(line, flush=True)
    sys.exit(1 if failed else 0)
