import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from spectral_perturb.lorentz import (
    INF,
    LorentzParams,
    decreasing_rearrangement,
    lorentz_norm,
    weak_norm_by_counting,
)

finite = st.floats(min_value=0.0, max_value=1e6, allow_nan=False)
complex_entries = st.builds(complex, st.floats(-1e3, 1e3), st.floats(-1e3, 1e3))


def brute_weak(x, p):
    # sup over every threshold: t^p #{n : |x_n| >= t}, evaluated at each |x_k|
    a = np.abs(np.asarray(x, dtype=complex))
    return max((t**p * np.count_nonzero(a >= t) for t in a), default=0.0) ** (1 / p)


def test_rearrangement_examples():
    assert decreasing_rearrangement([0.5, -2, 1j]).tolist() == [2.0, 1.0, 0.5]
    assert decreasing_rearrangement([]).size == 0


def test_rearrangement_matches_full_sort():
    z = np.random.default_rng(0).standard_normal(100) + 1j * np.random.default_rng(1).standard_normal(100)
    oracle = sorted(np.abs(z).tolist(), reverse=True)
    assert decreasing_rearrangement(z).tolist() == oracle


def test_params_validation():
    with pytest.raises(ValueError):
        LorentzParams(0.0)
    with pytest.raises(ValueError):
        LorentzParams(INF)
    with pytest.raises(ValueError):
        LorentzParams(1.0, 0.0)
    assert LorentzParams(2.0).weak and not LorentzParams(2.0, 3.0).weak


def test_lorentz_norm_examples():
    assert lorentz_norm([4, 2, 1], LorentzParams(1, 1)) == pytest.approx(7)
    assert lorentz_norm([4, 2, 1], LorentzParams(1, INF)) == pytest.approx(4)
    for p in (0.3, 1.0, 2.5):
        x = np.arange(1, 51) ** (-1 / p)
        assert lorentz_norm(x, LorentzParams(p, INF)) == pytest.approx(1.0, rel=1e-12)
    assert lorentz_norm([], LorentzParams(1)) == 0.0


def test_lorentz_p_equals_q_is_lp():
    x = decreasing_rearrangement(np.random.default_rng(3).uniform(size=20))
    for p in (0.5, 1.0, 3.0):
        ref = np.sum(x**p) ** (1 / p)
        assert lorentz_norm(x, LorentzParams(p, p)) == pytest.approx(ref, rel=1e-12)


def test_weak_norm_examples():
    assert weak_norm_by_counting([4, 2, 1], 1) == pytest.approx(4)
    assert weak_norm_by_counting([3.5], 2) == pytest.approx(3.5)
    with pytest.raises(ValueError):
        weak_norm_by_counting([1.0], 0.0)


def test_weak_norm_counts_ties():
    # with ties the counting form sees the full multiplicity
    assert weak_norm_by_counting([1, 1, 1, 1], 1) == pytest.approx(4)
    assert weak_norm_by_counting([1, 1, 1, 1], 2) == pytest.approx(2)


@given(st.lists(complex_entries, max_size=40), st.floats(min_value=0.05, max_value=8.0))
def test_weak_norm_equals_weak_lorentz(z, p):
    x = decreasing_rearrangement(z)
    a = weak_norm_by_counting(x, p)
    b = lorentz_norm(x, LorentzParams(p, INF))
    assert a == pytest.approx(b, rel=1e-12, abs=1e-300)
    assert a == pytest.approx(brute_weak(x, p), rel=1e-12, abs=1e-300)


@given(st.lists(finite, min_size=1, max_size=30), st.floats(0.2, 6.0), st.floats(0.2, 6.0))
def test_rearrangement_invariance(x, p, q):
    rng = np.random.default_rng(len(x))
    y = np.array(x) * np.exp(2j * np.pi * rng.uniform(size=len(x)))
    rng.shuffle(y)
    params = LorentzParams(p, q)
    a = lorentz_norm(decreasing_rearrangement(y), params)
    assert a == pytest.approx(lorentz_norm(decreasing_rearrangement(x), params), rel=1e-9)


@given(st.lists(finite, min_size=1, max_size=30), st.floats(0.2, 6.0), st.floats(0.2, 6.0), st.floats(0.0, 100.0))
def test_homogeneity(x, p, q, c):
    params = LorentzParams(p, q)
    x = decreasing_rearrangement(x)
    assert lorentz_norm(x * c, params) == pytest.approx(c * lorentz_norm(x, params), rel=1e-9, abs=1e-300)


@given(st.lists(finite, min_size=1, max_size=30), st.floats(0.2, 6.0), st.floats(0.2, 6.0))
def test_monotone_in_entries(x, p, q):
    # shrinking every entry cannot increase the norm, for finite and infinite q
    x = decreasing_rearrangement(x)
    y = decreasing_rearrangement(x * np.linspace(1.0, 0.1, x.size))
    for params in (LorentzParams(p, q), LorentzParams(p, INF)):
        assert lorentz_norm(y, params) <= lorentz_norm(x, params) * (1 + 1e-12)


def test_rejects_bad_sequences():
    with pytest.raises(ValueError):
        lorentz_norm([1.0, math.nan], LorentzParams(1))
    with pytest.raises(ValueError):
        lorentz_norm([1.0, 2.0], LorentzParams(1))
    with pytest.raises(ValueError):
        lorentz_norm([1.0, -1.0], LorentzParams(1))
    with pytest.raises(ValueError):
        weak_norm_by_counting(np.array([1j]), 1.0)
