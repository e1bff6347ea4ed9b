import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from spectral_perturb.bounds import thm1_bound
from spectral_perturb.gallery import make_random_pair
from spectral_perturb.hilbert import (
    dist_to_numrange,
    hilbert_counting_checks,
    numerical_range,
    outside_distances,
    pietsch_check,
    schur_chain,
    thm3_check,
)
from spectral_perturb.lorentz import INF, LorentzParams, lorentz_norm

NIL = np.array([[0, 1], [0, 0]], dtype=complex)
seeds = st.integers(0, 2**32 - 1)


def rand_pair(seed, N):
    rng = np.random.default_rng(seed)
    A = (rng.standard_normal((N, N)) + 1j * rng.standard_normal((N, N))) / math.sqrt(2 * N)
    K = (rng.standard_normal((N, N)) + 1j * rng.standard_normal((N, N))) * (0.5 / math.sqrt(N))
    return A, K


def test_numrange_nilpotent_is_half_disk():
    nr = numerical_range(NIL, grid=360)
    assert np.allclose(nr.support_values, 0.5, atol=1e-14)
    assert np.allclose(np.abs(nr.boundary_points), 0.5, atol=1e-14)
    # the outer polygon circumscribes the circle of radius 1/2
    assert np.all(np.abs(nr.outer_vertices) >= 0.5 - 1e-14)
    assert np.max(np.abs(nr.outer_vertices)) <= 0.5 / math.cos(math.pi / 360) + 1e-14


def test_numrange_of_zero():
    nr = numerical_range(np.zeros((3, 3)))
    assert np.all(nr.support_values == 0) and np.all(nr.boundary_points == 0)
    assert dist_to_numrange(0.3 - 0.4j, nr) == pytest.approx((0.5, 0.5))


def test_numrange_normal_is_hull():
    lam = np.array([1.0, 1j, -1.0, -0.5j, 0.1])
    nr = numerical_range(np.diag(lam), grid=720)
    # the boundary points are the corners of the hull; the interior point never shows up
    corners = {complex(round(z.real, 12), round(z.imag, 12)) for z in nr.boundary_points}
    assert corners == {1, 1j, -1, -0.5j}
    assert dist_to_numrange(0.1, nr) == (0.0, 0.0)
    lo, up = dist_to_numrange(2.0, nr)
    assert lo == pytest.approx(1.0, abs=1e-6) and up == pytest.approx(1.0)


def test_numrange_grid_floor():
    with pytest.raises(ValueError):
        numerical_range(NIL, grid=8)


def test_distance_examples():
    nr = numerical_range(NIL)
    lo, up = dist_to_numrange(1.0, nr)
    assert lo == pytest.approx(0.5, abs=1e-12) and up == pytest.approx(0.5, abs=1e-4)
    assert dist_to_numrange(0.1 + 0.1j, nr) == (0.0, 0.0)


@given(seeds, st.integers(1, 6), st.complex_numbers(max_magnitude=3.0))
def test_distance_sandwich(seed, N, lam):
    A, _ = rand_pair(seed, N)
    coarse, fine = numerical_range(A, grid=32), numerical_range(A, grid=256)
    lo_c, up_c = dist_to_numrange(lam, coarse)
    lo_f, up_f = dist_to_numrange(lam, fine)
    assert lo_c <= up_c and lo_f <= up_f
    # points of the inner hull are in Num(A), and the outer region contains it
    assert lo_f <= up_c + 1e-12 and lo_c <= up_f + 1e-12


@given(seeds, st.integers(1, 6))
def test_spectrum_inside_outer_region(seed, N):
    A, _ = rand_pair(seed, N)
    nr = numerical_range(A, grid=64)
    for lam in np.linalg.eigvals(A):
        assert nr.in_outer(lam, slack=1e-10)
    assert np.all(np.abs(nr.outer_vertices) <= np.linalg.norm(A, 2) / math.cos(math.pi / 64) + 1e-12)


def test_schur_chain_trivial():
    ch = schur_chain(np.zeros((3, 3)), np.diag([3.0, 2.0, 1.0]).astype(complex))
    assert ch.n_outside == 3
    assert np.allclose(ch.eigenvalues, [3, 2, 1])
    assert np.allclose(ch.k_diag, ch.eigenvalues)
    assert np.allclose(ch.d_lower, [3, 2, 1], atol=1e-12)
    assert [round(abs(k), 12) for _, k in ch.pairs()] == [3, 2, 1]


def test_schur_chain_hermitian_a():
    rng = np.random.default_rng(5)
    H = rng.standard_normal((6, 6))
    A = (H + H.T) / 4
    S = rng.standard_normal((6, 6))
    K = 0.7j * (S + S.T) / 4  # skew-Hermitian: moves eigenvalues off the axis
    ch = schur_chain(A, K)
    assert ch.n_outside > 0
    for lam, k in ch.pairs():
        # Num(A) is a real segment, so distance >= |Im lam| minus polygon error
        lo = dist_to_numrange(lam, numerical_range(A))[0]
        assert abs(k.imag) >= lo - 1e-12
        assert abs(k.imag) == pytest.approx(abs(lam.imag), abs=1e-12)


@given(seeds, st.integers(1, 8))
def test_schur_chain_invariants(seed, N):
    A, K = rand_pair(seed, N)
    ch = schur_chain(A, K, grid=128)
    B = A + K
    assert np.allclose(ch.Z @ ch.T @ ch.Z.conj().T, B, atol=1e-10 * max(1.0, np.linalg.norm(B)))
    assert np.allclose(ch.Z.conj().T @ ch.Z, np.eye(N), atol=1e-12)
    assert np.allclose(np.tril(ch.T, -1), 0, atol=1e-12)
    assert np.array_equal(ch.eigenvalues, np.diag(ch.T))
    n = ch.n_outside
    assert np.all(np.diff(ch.d_lower[:n]) <= 1e-15)
    # <A e_n, e_n> lies in Num(A), so its gap to lambda_n majorises the distance
    assert np.all(np.abs(ch.eigenvalues - ch.a_diag) >= ch.d_lower - 1e-12)
    # and lambda_n = <A e_n, e_n> + <K e_n, e_n>
    assert np.all(np.abs(ch.k_diag) >= ch.d_lower - 1e-12)


def test_thm3_harmonic_diagonal():
    for p in (1.5, 2.0, 4.0):
        K = np.diag(np.arange(1, 9) ** (-1 / p))
        rep = thm3_check(np.zeros((8, 8)), K, p)
        assert rep.observed_value == pytest.approx(1.0, abs=1e-9)
        assert rep.bound_value == pytest.approx(p / (p - 1))
        assert rep.verdict == "holds"


def test_thm3_zero_perturbation():
    A, _ = rand_pair(9, 6)
    rep = thm3_check(A, np.zeros((6, 6)), 2.0)
    assert rep.observed_value == 0.0 and rep.verdict == "holds"
    assert rep.extra["n_outside"] == 0


def test_thm3_domain_and_report_only():
    with pytest.raises(ValueError):
        thm3_check(NIL, NIL, 1.0)
    rep = thm3_check(np.zeros((3, 3)), np.eye(3), 2.0, q=1.0)
    assert rep.verdict == "report_only" and math.isnan(rep.bound_value)


@given(seeds, st.integers(1, 10), st.sampled_from([1.5, 2.0, 4.0]))
def test_thm3_holds_on_random_pairs(seed, N, p):
    A, K = rand_pair(seed, N)
    assert thm3_check(A, K, p, grid=128).verdict == "holds"


def test_outside_distances_sorted():
    d = outside_distances(np.zeros((4, 4)), np.diag([0.5, 2.0, 0.0, 1.0]))
    assert d.tolist() == pytest.approx([2.0, 1.0, 0.5])


def test_pietsch_diagonal_standard_basis():
    sig = np.array([1.0, 0.6, 0.5, 0.1])
    rep = pietsch_check(np.diag(sig), 2.0, trials=50)
    weak = lorentz_norm(sig, LorentzParams(2.0, INF))
    assert rep.observed_value >= weak
    assert rep.extra["k_norm"] == pytest.approx(weak)
    assert rep.verdict == "holds"


def test_pietsch_rank_one():
    u = np.ones(5) / math.sqrt(5)
    v = np.arange(5.0) / np.linalg.norm(np.arange(5.0))
    K = 3.0 * np.outer(u, v)
    for p in (1.5, 3.0):
        rep = pietsch_check(K, p, trials=200, seed=2)
        assert rep.extra["k_norm"] == pytest.approx(3.0)
        assert rep.observed_value <= 3.0 * (1 + 1e-12)
        assert rep.verdict == "holds"


def test_pietsch_deterministic_and_rectangular():
    _, K = make_random_pair(6, 3, seed=4)
    a, b = pietsch_check(K, 2.0, trials=30, seed=8), pietsch_check(K, 2.0, trials=30, seed=8)
    assert a.observed_value == b.observed_value
    rep = pietsch_check(np.arange(12.0).reshape(3, 4), 2.0, trials=30)
    assert rep.verdict == "holds"
    with pytest.raises(ValueError):
        pietsch_check(K, 1.0)


def test_counting_checks_zero_perturbation():
    A, _ = rand_pair(3, 5)
    s = 1.1 * np.linalg.norm(A, 2)
    reps = hilbert_counting_checks(A, np.zeros((5, 5)), 2.0, s)
    assert [r.theorem_id for r in reps] == ["EQ25", "HCOR_NORM", "HCOR_MA"]
    assert all(r.observed_value == 0 and r.verdict == "holds" for r in reps)


@pytest.mark.parametrize("m", [1, 3, 7])
def test_counting_checks_identity_block(m):
    reps = {r.theorem_id: r for r in hilbert_counting_checks(np.zeros((m, m)), np.eye(m), 2.0, 0.5)}
    assert reps["HCOR_NORM"].observed_value == m
    assert reps["HCOR_NORM"].bound_value == pytest.approx(16 * m)
    assert reps["EQ25"].observed_value == pytest.approx(m)
    assert reps["EQ25"].bound_value == pytest.approx(4 * m)
    assert all(r.verdict == "holds" for r in reps.values())


def test_counting_checks_below_norm_skips_norm_form():
    reps = hilbert_counting_checks(NIL, np.zeros((2, 2)), 2.0, 0.5)
    assert [r.theorem_id for r in reps] == ["EQ25", "HCOR_MA"]
    assert 0 < reps[1].extra["r"] < 0.5
    with pytest.raises(ValueError):
        hilbert_counting_checks(np.diag([1.0, 0.0]), np.zeros((2, 2)), 2.0, 0.9)
    with pytest.raises(ValueError):
        hilbert_counting_checks(NIL, NIL, 1.0, 2.0)


def test_hilbert_exponent_beats_banach_near_norm():
    # (s - ||A||)^{-p} against (s - ||A||)^{-(p+1)}: the Hilbert form wins as s drops to ||A||
    A, K = make_random_pair(8, 2, seed=6)
    nA = np.linalg.norm(A, 2)
    ratios = []
    for eps in (0.5, 0.1, 0.02):
        h = {r.theorem_id: r for r in hilbert_counting_checks(A, K, 2.0, nA + eps)}["HCOR_NORM"]
        ratios.append(h.bound_value / thm1_bound(A, K, nA + eps, 2.0).bound_value)
    assert ratios[0] > ratios[1] > ratios[2]
    assert ratios[2] == pytest.approx(ratios[1] / 5, rel=0.1)
