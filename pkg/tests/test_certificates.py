import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from phaselab import (
    THEOREMS,
    HypothesisError,
    ParameterError,
    aligned_distance,
    certify,
    check_propagation_inequality,
    check_split_inequality,
    dft,
    epsilon_freq,
    epsilon_magnitude,
    epsilon_time,
    epsilon_time_single,
    random_signal,
)
from phaselab.certificates import SLACK
from _instances import dual_window, offset_gaussian, perturbed_pair, short_window
from _oracles import dense_ambiguity, grid_search_alignment

rng = np.random.default_rng(99)


def crandn(L):
    return rng.standard_normal(L) + 1j * rng.standard_normal(L)


# aligned_distance

def test_aligned_distance_pure_rotation():
    x = crandn(12)
    val, alphas = aligned_distance(x, np.exp(-1j * np.pi / 3) * x, [range(12)])
    assert val < 1e-12
    assert alphas[0] == pytest.approx(np.pi / 3, abs=1e-12)


def test_aligned_distance_disjoint_supports():
    x = np.zeros(8, dtype=complex)
    y = np.zeros(8, dtype=complex)
    x[:3] = crandn(3)
    y[5:] = crandn(3)
    val, alphas = aligned_distance(x, y, [range(8)])
    assert val == pytest.approx(math.sqrt(np.vdot(x, x).real + np.vdot(y, y).real), abs=1e-12)
    assert alphas == [0.0]


def test_aligned_distance_grid_search():
    L = 16
    for _ in range(100):
        x, y = crandn(L), crandn(L)
        val, _ = aligned_distance(x, y, [range(L)])
        assert abs(val - grid_search_alignment(x, y, 10**6)) < 1e-6


def test_aligned_distance_closed_form_and_sum():
    L = 10
    x, y = crandn(L), crandn(L)
    comps = [range(0, 4), range(4, 7), [8]]
    val, alphas = aligned_distance(x, y, comps)
    total = 0.0
    for c in comps:
        c = list(c)
        xs, ys = x[c], y[c]
        total += math.sqrt(max(0.0, np.vdot(xs, xs).real + np.vdot(ys, ys).real - 2 * abs(np.sum(xs * np.conj(ys)))))
    assert val == pytest.approx(total, abs=1e-10)
    assert len(alphas) == 3 and all(-np.pi < a <= np.pi for a in alphas)


def test_aligned_distance_overlap_error():
    with pytest.raises(ParameterError):
        aligned_distance(np.ones(4), np.ones(4), [[0, 1], [1, 2]])


# epsilon residuals, against loops over the dense ambiguity

def eps_time_oracle(x, y, phi, delta1, rows, weights):
    Ax, Ay, Ap = dense_ambiguity(x), dense_ambiguity(y), dense_ambiguity(phi)
    L = len(x)
    total = 0.0
    for k, w in zip(rows, weights):
        for l in range(L):
            if abs(Ap[k, l]) <= delta1:
                total += w * abs(Ax[k, l] - Ay[k, l]) ** 2
    return math.sqrt(total)


def test_epsilon_magnitude_cases():
    L = 16
    phi = offset_gaussian(L)
    x, y = crandn(L), crandn(L)
    den = np.abs(dft(np.abs(phi) ** 2))
    assert epsilon_magnitude(x, y, phi, 0.5 * den.min()) == 0
    assert epsilon_magnitude(x, x, phi, 10.0) == 0
    d1 = float(np.median(den))
    diff = dft(np.abs(x) ** 2 - np.abs(y) ** 2)
    oracle = math.sqrt(sum(abs(diff[l]) ** 2 for l in range(L) if den[l] <= d1))
    assert epsilon_magnitude(x, y, phi, d1) == pytest.approx(oracle, abs=1e-10)


def test_epsilon_time_oracle():
    L = 8
    phi = crandn(L)
    x, y = crandn(L), crandn(L)
    d1 = float(np.median(np.abs(dense_ambiguity(phi)[:3])))
    oracle = eps_time_oracle(x, y, phi, d1, [0, 1, 2], [2, 2, 2])
    assert epsilon_time(x, y, phi, d1, 1) == pytest.approx(oracle, abs=1e-10)
    assert epsilon_time(x, x, phi, d1, 1) == 0
    tiny = 0.5 * np.abs(dense_ambiguity(offset_gaussian(L))[:3]).min()
    assert epsilon_time(x, y, offset_gaussian(L), tiny, 1) == 0


def test_epsilon_time_single_weights():
    L = 8
    phi = crandn(L)
    x, y = crandn(L), crandn(L)
    d1 = float(np.median(np.abs(dense_ambiguity(phi)[:2])))
    oracle = eps_time_oracle(x, y, phi, d1, [0, 1], [1, 2])
    assert epsilon_time_single(x, y, phi, d1) == pytest.approx(oracle, abs=1e-10)
    assert epsilon_time_single(x, x, phi, d1) == 0
    assert epsilon_time_single(x, y, phi, 1e-300) == 0
    assert epsilon_time_single(x, y, phi, d1) <= epsilon_time(x, y, phi, d1, 0)


def test_epsilon_freq_oracle():
    L = 8
    phi = crandn(L)
    x, y = crandn(L), crandn(L)
    Ax, Ay, Ap = dense_ambiguity(x), dense_ambiguity(y), dense_ambiguity(phi)
    d1 = float(np.median(np.abs(Ap[:, :2])))
    total = 0.0
    for k in range(2):
        for l in range(L):
            if abs(Ap[l, k]) <= d1:
                total += 2 * abs(Ax[l, k] - Ay[l, k]) ** 2
    assert epsilon_freq(x, y, phi, d1, 0) == pytest.approx(math.sqrt(total), abs=1e-10)
    assert epsilon_freq(x, x, phi, d1, 0) == 0
    assert epsilon_freq(x, y, phi, 1e-300, 0) == 0


def test_epsilon_time_vanishes_as_delta1_shrinks():
    L = 16
    phi = offset_gaussian(L)
    x, y = crandn(L), crandn(L)
    vals = [epsilon_time(x, y, phi, d, 1) for d in (1e-1, 1e-2, 1e-3, 1e-6)]
    assert vals[-1] == 0 and vals == sorted(vals, reverse=True)


def test_epsilon_parameter_errors():
    x = crandn(8)
    with pytest.raises(ParameterError):
        epsilon_magnitude(x, x, x, 0)
    with pytest.raises(ParameterError):
        epsilon_time(x, x, x, 1e-3, 4)


# certify

def window_for(theorem, L, seed=0):
    if theorem == "window-step":
        return short_window(L, seed)[0]
    if theorem == "frequency":
        return dual_window(L)
    return offset_gaussian(L)


@pytest.mark.parametrize("theorem", THEOREMS)
def test_certify_identical_pair(theorem):
    L = 16
    x = random_signal(L, 3)
    rep = certify(x, x, window_for(theorem, L), theorem, 0.05, 1e-3)
    assert rep.lhs < 1e-12 and rep.measurement_gap == 0 and rep.epsilon == 0 and rep.satisfied


@pytest.mark.parametrize("theorem", THEOREMS)
def test_certify_global_phase(theorem):
    L = 16
    x = random_signal(L, 4)
    rep = certify(x, np.exp(0.9j) * x, window_for(theorem, L), theorem, 0.05, 1e-3)
    assert rep.lhs < 1e-10 and rep.rhs >= 0 and rep.satisfied


@pytest.mark.parametrize("theorem", THEOREMS)
def test_report_invariants(theorem):
    L = 16
    x, y = perturbed_pair(L, 12)
    rep = certify(x, y, window_for(theorem, L), theorem, 0.05, 1e-2)
    assert rep.rhs == pytest.approx(rep.constant_main * rep.measurement_gap + rep.constant_eps * rep.epsilon)
    assert rep.satisfied == (rep.lhs <= rep.rhs + SLACK)
    assert set(rep.to_dict()) >= {"theorem", "lhs", "measurement_gap", "constant_main", "constant_eps",
                                 "epsilon", "rhs", "alphas", "satisfied"}


@given(st.sampled_from(THEOREMS), st.integers(0, 2**31), st.floats(-np.pi, np.pi))
@settings(max_examples=40, deadline=None)
def test_report_invariant_under_common_rotation(theorem, seed, beta):
    L = 8
    x, y = perturbed_pair(L, seed)
    phi = window_for(theorem, L)
    a = certify(x, y, phi, theorem, 0.05, 1e-2).to_dict()
    b = certify(np.exp(1j * beta) * x, np.exp(1j * beta) * y, phi, theorem, 0.05, 1e-2).to_dict()
    for k, v in a.items():
        if k == "alphas":
            continue
        if isinstance(v, float):
            assert b[k] == pytest.approx(v, rel=1e-10, abs=1e-10), k
        else:
            assert b[k] == v, k


def test_certify_constants():
    L = 16
    x, y = perturbed_pair(L, 1)
    phi = offset_gaussian(L)
    d0, d1 = 0.05, 1e-2
    sup = min(np.abs(x).max(), np.abs(y).max())
    rep = certify(x, y, phi, "time-multi", d0, d1, reach=1)
    shape = 0.5 + sup / d0 * L
    assert rep.constant_main == pytest.approx(shape / (d0 * d1))
    assert rep.constant_eps == pytest.approx(shape / d0)
    rep = certify(x, y, phi, "magnitude", d0, d1)
    assert rep.constant_main == pytest.approx(1 / (2 * d0 * d1))
    assert rep.constant_eps == pytest.approx(1 / (2 * d0))
    psi, ell, _ = short_window(L, 3)
    rep = certify(x, y, psi, "window-step", d0, d1)
    ends = abs(psi[0] * psi[ell])
    expect = (1 / d0) * (1 / (2 * d1) + math.sqrt(2 * L) * sup / (d0 * ends) * L)
    assert rep.constant_main == pytest.approx(expect)
    assert rep.reach == ell


def test_certify_frequency_uses_spectra():
    L = 16
    x = random_signal(L, 2, "band", bands=[(0, 5)])
    rep = certify(x, x * 1j, dual_window(L), "frequency", 0.05, 1e-3)
    assert rep.n_vertices == 5 and rep.K == 1


def test_certify_hypothesis_failures():
    L = 16
    x = random_signal(L, 7, "gaps", gaps=[(2, 2), (10, 2)])
    with pytest.raises(HypothesisError, match="connected"):
        certify(x, x, offset_gaussian(L), "time-single", 0.05, 1e-3)
    impulse = np.r_[1.0, np.zeros(L - 1)]
    with pytest.raises(HypothesisError, match="degenerate window endpoints"):
        certify(x, x, impulse, "window-step", 0.05, 1e-3)
    even = np.r_[np.ones(5), np.zeros(L - 5)]  # l_phi = 4 splits Z_16 into 4 classes
    with pytest.raises(HypothesisError, match="connected"):
        certify(random_signal(L, 1), random_signal(L, 1), even, "window-step", 0.05, 1e-3)
    assert certify(x, x, offset_gaussian(L), "time-multi", 0.05, 1e-3).K == 2


def test_certify_unknown_theorem():
    x = random_signal(8, 0)
    with pytest.raises(ParameterError):
        certify(x, x, x, "lemma-9", 0.1, 0.1)


# pointwise predicates

def test_split_examples():
    assert check_split_inequality(0, 1 + 2j, 0.3)
    assert check_split_inequality(2 - 1j, 0, -1.0)
    assert check_split_inequality(1 + 1j, 1 + 1j, 0.0)


def test_propagation_examples():
    assert check_propagation_inequality(1, 1, 1, 1, 0.0)
    assert check_propagation_inequality(2j, 3, 2j, 3, 0.0)
    with pytest.raises(ParameterError):
        check_propagation_inequality(0, 1, 1, 1, 0.0)


@given(
    st.complex_numbers(max_magnitude=1e3, allow_nan=False, allow_infinity=False),
    st.complex_numbers(max_magnitude=1e3, allow_nan=False, allow_infinity=False),
    st.floats(-10, 10),
)
def test_split_property(a, b, alpha):
    assert check_split_inequality(a, b, alpha)


nonzero = st.complex_numbers(min_magnitude=1e-3, max_magnitude=1e3, allow_nan=False, allow_infinity=False)


@given(nonzero, nonzero, nonzero, nonzero, st.floats(-10, 10))
def test_propagation_property(xk, xl, yk, yl, alpha):
    assert check_propagation_inequality(xk, xl, yk, yl, alpha)


def test_predicates_vectorized():
    n = 1000
    a, b = crandn(n), crandn(n)
    al = rng.uniform(-np.pi, np.pi, n)
    assert check_split_inequality(a, b, al).shape == (n,)
    assert check_propagation_inequality(a, b, crandn(n), crandn(n), al).all()
