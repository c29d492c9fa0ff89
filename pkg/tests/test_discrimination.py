import math

import numpy as np
import pytest

from cohres import (
    CapacityError,
    ParameterError,
    exact_report,
    fidelity,
    helstrom_error,
    naive_report,
    per_copy_fidelity,
    reservoir_overlap,
    single_use_output,
    trace_distance,
)

PSI0_DM = np.array([[1, 0], [0, 0]], dtype=complex)
PSI1_DM = np.array([[0, 0], [0, 1]], dtype=complex)


def random_density(rng, d):
    a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    rho = a @ a.conj().T
    return rho / np.trace(rho)


# --- trace distance -----------------------------------------------------------

def test_trace_distance_basics():
    assert trace_distance(PSI0_DM, PSI0_DM) == pytest.approx(0.0, abs=1e-15)
    assert trace_distance(PSI0_DM, PSI1_DM) == pytest.approx(1.0, abs=1e-14)


def test_trace_distance_phase_pair():
    d = trace_distance(single_use_output(100, 0.0), single_use_output(100, math.pi))
    assert d == pytest.approx(0.99, abs=1e-12)
    # general delta: D = (1 - 1/L) |sin(delta/2)|
    d2 = trace_distance(single_use_output(9, 0.3), single_use_output(9, 1.1))
    assert d2 == pytest.approx((1 - 1 / 9) * abs(math.sin(0.4)), abs=1e-12)


def test_trace_distance_dimension_mismatch():
    with pytest.raises(ParameterError):
        trace_distance(PSI0_DM, np.eye(4) / 4)


def test_trace_distance_metric_properties():
    rng = np.random.default_rng(11)
    for d in (2, 5, 16):
        a, b, c = (random_density(rng, d) for _ in range(3))
        assert trace_distance(a, b) == pytest.approx(trace_distance(b, a),
                                                     abs=1e-10)
        assert trace_distance(a, c) <= (trace_distance(a, b)
                                        + trace_distance(b, c) + 1e-10)
        assert -1e-12 <= trace_distance(a, b) <= 1.0 + 1e-12


# --- fidelity -------------------------------------------------------------------

def test_fidelity_basics():
    assert fidelity(PSI0_DM, PSI0_DM) == pytest.approx(1.0, abs=1e-12)
    assert fidelity(PSI0_DM, PSI1_DM) == pytest.approx(0.0, abs=1e-7)


def test_fidelity_closed_form_pair():
    # generic-matrix fidelity of the two phase outputs matches the closed form
    for L, dth in ((100, math.pi / 2), (7, 1.2), (30, 2.7)):
        got = fidelity(single_use_output(L, 0.0), single_use_output(L, dth))
        assert got == pytest.approx(per_copy_fidelity(0.0, dth, L), abs=1e-10)
    assert per_copy_fidelity(0, math.pi / 2, 100) == pytest.approx(
        0.71411, abs=5e-6)


def test_fidelity_symmetry_random():
    rng = np.random.default_rng(12)
    for d in (2, 4, 8):
        a, b = random_density(rng, d), random_density(rng, d)
        assert fidelity(a, b) == pytest.approx(fidelity(b, a), abs=1e-10)


def test_fuchs_van_de_graaff():
    rng = np.random.default_rng(13)
    for d in (2, 3, 8, 16):
        for _ in range(8):
            a, b = random_density(rng, d), random_density(rng, d)
            assert trace_distance(a, b) >= 1 - fidelity(a, b) - 1e-10


def test_fidelity_multiplicativity():
    for N in range(1, 7):
        r1 = single_use_output(20, 0.0).entries
        r2 = single_use_output(20, 1.0).entries
        a, b = np.array([[1.0]]), np.array([[1.0]])
        for _ in range(N):
            a, b = np.kron(a, r1), np.kron(b, r2)
        assert fidelity(a, b) == pytest.approx(fidelity(r1, r2) ** N, abs=1e-9)


# --- Helstrom error --------------------------------------------------------------

def test_helstrom_basics():
    assert helstrom_error(PSI0_DM, PSI0_DM) == pytest.approx(0.5, abs=1e-15)
    assert helstrom_error(PSI0_DM, PSI1_DM) == pytest.approx(0.0, abs=1e-14)
    assert helstrom_error(single_use_output(100, 0.0),
                          single_use_output(100, math.pi)) == pytest.approx(
        0.005, abs=1e-12)


def test_helstrom_prior_validation():
    with pytest.raises(ParameterError):
        helstrom_error(PSI0_DM, PSI1_DM, prior=0.0)
    with pytest.raises(ParameterError):
        helstrom_error(PSI0_DM, PSI1_DM, prior=1.0)


def test_helstrom_biased_prior():
    # with certainty of rho the error is 0 regardless of the other state
    err = helstrom_error(PSI0_DM, PSI0_DM, prior=0.999999999)
    assert err < 1e-8


# --- naive (i.i.d.) branch --------------------------------------------------------

def test_naive_orthogonal_limit():
    rep = naive_report(0.0, math.pi, 10 ** 9, 1)
    assert rep.naive_fidelity_per_copy < 1e-4


def test_naive_power_law():
    rep = naive_report(0.0, math.pi / 2, 100, 20)
    assert rep.naive_fidelity_N == pytest.approx(0.0011892576704443751, rel=1e-12)
    assert rep.naive_error_bound == pytest.approx(rep.naive_fidelity_N / 2,
                                                  abs=1e-18)
    one = naive_report(0.0, math.pi / 2, 100, 1)
    assert one.naive_fidelity_N == one.naive_fidelity_per_copy


def test_naive_bound_monotone_in_N():
    vals = [naive_report(0.1, 1.3, 50, n).naive_error_bound
            for n in range(1, 30)]
    assert all(b <= a + 1e-15 for a, b in zip(vals, vals[1:]))


def test_naive_fidelity_matches_dense_powers():
    # closed-form N-copy fidelity vs generic computation on 2^N dims
    L, dth = 12, 0.8
    r1 = single_use_output(L, 0.0).entries
    r2 = single_use_output(L, dth).entries
    a, b = np.array([[1.0]]), np.array([[1.0]])
    for N in range(1, 7):
        a, b = np.kron(a, r1), np.kron(b, r2)
        rep = naive_report(0.0, dth, L, N)
        assert rep.naive_fidelity_N == pytest.approx(fidelity(a, b), abs=1e-10)


# --- exact correlated branch -------------------------------------------------------

def test_exact_same_phase():
    rep = exact_report(0.7, 0.7, 10, 2)
    assert rep.exact_trace_distance == pytest.approx(0.0, abs=1e-12)
    assert rep.exact_helstrom_error == pytest.approx(0.5, abs=1e-12)


def test_exact_orthogonal_reservoirs():
    # delta = 2*pi/L: zero overlap, floor 0, discrimination may approach perfect
    L = 8
    rep = exact_report(0.0, 2 * math.pi / L, L, 4)
    assert rep.reservoir_overlap_magnitude < 1e-12
    assert rep.reservoir_error_floor < 1e-12
    assert rep.exact_helstrom_error < 0.25


def test_exact_monotone_and_floored():
    L, dth = 8, math.pi / 2
    prev = 0.5
    for N in range(1, 7):
        rep = exact_report(0.0, dth, L, N)
        assert rep.exact_helstrom_error >= rep.reservoir_error_floor - 1e-9
        assert rep.exact_helstrom_error <= prev + 1e-12
        prev = rep.exact_helstrom_error


def test_exact_floor_binds_when_overlap_nonzero():
    # L = 3, delta = pi/2: strictly positive floor; naive bound dives under it
    L, dth = 3, math.pi / 2
    ov = abs(reservoir_overlap(0.0, dth, L))
    assert ov > 0.1
    rep6 = exact_report(0.0, dth, L, 6)
    assert rep6.reservoir_error_floor > 0.01
    assert rep6.exact_helstrom_error >= rep6.reservoir_error_floor - 1e-9
    naive40 = naive_report(0.0, dth, L, 40)
    assert naive40.naive_error_bound < rep6.reservoir_error_floor


def test_exact_capacity():
    with pytest.raises(CapacityError):
        exact_report(0.0, 1.0, 6, 13)
