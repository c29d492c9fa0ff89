import math

import numpy as np
import pytest

from cohres import (
    ParameterError,
    TwirlSpec,
    WignerTable,
    asymmetry_approx,
    asymmetry_dense,
    asymmetry_exact_formula,
    asymmetry_report,
    asymmetry_upper_bound,
    entropy_decomposition,
    gamma_multiplicity,
    make_eta,
    single_use_output,
    spectrum_for_length,
    twirl_dense,
    von_neumann_entropy,
    wigner_d_half_pi,
)
from cohres.wigner import get_table


# --- dense oracle -----------------------------------------------------------

def copies_energy_basis(N, lam_minus):
    """rho^(x)N in the energy basis: single copy (1 + (1-2*lam_minus) X)/2."""
    x = 1.0 - 2.0 * lam_minus
    rho1 = np.array([[0.5, 0.5 * x], [0.5 * x, 0.5]])
    rho = np.array([[1.0]])
    for _ in range(N):
        rho = np.kron(rho, rho1)
    return rho


def dense_asym(N, lam_minus):
    return asymmetry_dense(copies_energy_basis(N, lam_minus),
                           TwirlSpec.qubit_register(N))


# --- rotation matrix elements -------------------------------------------------

def test_wigner_known_closed_forms():
    assert wigner_d_half_pi(2, 0, 0) == pytest.approx(0.0, abs=1e-15)
    assert wigner_d_half_pi(1, 1, 1) == pytest.approx(math.cos(math.pi / 4),
                                                      abs=1e-14)
    assert wigner_d_half_pi(2, 2, 2) == pytest.approx(0.5, abs=1e-14)
    # full spin-1 table at beta = pi/2, Condon-Shortley phases, rows and
    # columns in ascending M = -1, 0, 1
    r = 1 / math.sqrt(2)
    expect = np.array([[0.5, r, 0.5], [-r, 0.0, r], [0.5, -r, 0.5]])
    got = np.array([[wigner_d_half_pi(2, tm, tmp) for tmp in (-2, 0, 2)]
                    for tm in (-2, 0, 2)])
    assert np.max(np.abs(got - expect)) < 1e-14


def test_wigner_vs_sympy():
    sympy = pytest.importorskip("sympy")
    from sympy.physics.quantum.spin import Rotation
    rng = np.random.default_rng(21)
    for twoJ in (1, 2, 3, 5, 8):
        for _ in range(6):
            tm = int(rng.integers(0, twoJ + 1)) * 2 - twoJ
            tmp = int(rng.integers(0, twoJ + 1)) * 2 - twoJ
            ref = float(sympy.N(Rotation.d(
                sympy.Rational(twoJ, 2), sympy.Rational(tm, 2),
                sympy.Rational(tmp, 2), sympy.pi / 2).doit()))
            assert wigner_d_half_pi(twoJ, tm, tmp) == pytest.approx(
                ref, abs=1e-13)


def test_wigner_invalid_quantum_numbers():
    with pytest.raises(ParameterError):
        wigner_d_half_pi(2, 3, 0)
    with pytest.raises(ParameterError):
        wigner_d_half_pi(2, 1, 0)  # parity
    with pytest.raises(ParameterError):
        wigner_d_half_pi(-1, 0, 0)


def test_wigner_exact_extreme_corner():
    # corner element is exactly 2^-J: full relative accuracy at twoJ = 512
    val = wigner_d_half_pi(512, 512, 512)
    assert val == pytest.approx(2.0 ** -256, rel=1e-12)
    val = wigner_d_half_pi(512, 512, -512)
    assert abs(val) == pytest.approx(2.0 ** -256, rel=1e-12)


def test_table_matches_exact_elements():
    rng = np.random.default_rng(22)
    for twoJ in (1, 2, 5, 17, 64, 201):
        tab = get_table(twoJ)
        for _ in range(30):
            tm = int(rng.integers(0, twoJ + 1)) * 2 - twoJ
            tmp = int(rng.integers(0, twoJ + 1)) * 2 - twoJ
            exact = wigner_d_half_pi(twoJ, tm, tmp)
            got = tab.value(tm, tmp)
            if abs(exact) > 1e-290:
                assert got == pytest.approx(exact, rel=2e-10, abs=1e-300)


def test_table_orthonormality_and_bounds():
    for twoJ in (3, 16, 101, 200):
        vals = get_table(twoJ).values
        gram = vals.T @ vals
        assert np.max(np.abs(gram - np.eye(twoJ + 1))) < 1e-9
        gram2 = vals @ vals.T
        assert np.max(np.abs(gram2 - np.eye(twoJ + 1))) < 1e-9
        assert np.max(np.abs(vals)) <= 1.0 + 1e-12


def test_table_transpose_symmetry():
    tab = get_table(9)
    for tm in (-9, -3, 1, 7):
        for tmp in (-7, -1, 3, 9):
            lhs = tab.value(tm, tmp)
            rhs = (-1.0) ** ((tm - tmp) // 2) * tab.value(tmp, tm)
            assert lhs == pytest.approx(rhs, abs=1e-12)


def test_wigner_sum_rule_spot():
    # sum_J Gamma_J d^2 = 2^-N C(N, N/2+M) C(N, k), table path vs exact RHS
    rng = np.random.default_rng(23)
    for N in (4, 16, 64):
        for _ in range(10):
            ell = int(rng.integers(0, N + 1))
            k = int(rng.integers(0, N + 1))
            twoM, twom = 2 * ell - N, 2 * k - N
            lhs = 0.0
            for twoJ in range(max(abs(twoM), abs(twom)), N + 1, 2):
                d = get_table(twoJ).value(twoM, twom)
                lhs += gamma_multiplicity(N, twoJ) * d * d
            rhs = math.comb(N, ell) * math.comb(N, k) / 2.0 ** N
            assert lhs == pytest.approx(rhs, rel=1e-9)


# --- multiplicities --------------------------------------------------------------

def test_gamma_examples():
    assert gamma_multiplicity(4, 4) == 1
    assert gamma_multiplicity(4, 2) == 3
    assert gamma_multiplicity(2, 0) == 1


@pytest.mark.parametrize("N", [1, 2, 7, 16, 33, 64])
def test_gamma_completeness(N):
    total = sum(gamma_multiplicity(N, twoJ) * (twoJ + 1)
                for twoJ in range(N % 2, N + 1, 2))
    assert total == 2 ** N


def test_gamma_parity_error():
    with pytest.raises(ParameterError):
        gamma_multiplicity(4, 3)
    with pytest.raises(ParameterError):
        gamma_multiplicity(4, 6)


# --- twirl and entropies -----------------------------------------------------------

def test_twirl_uniform_ladder():
    eta = make_eta(12, 0, 0.0, guard=0)
    v = eta.dense_window()
    rho = np.outer(v, v.conj())
    tw = twirl_dense(rho, TwirlSpec.ladder_window(v.size)).entries
    assert np.max(np.abs(tw - np.diag(np.full(12, 1 / 12)))) < 1e-15


def test_twirl_diagonal_fixed_point():
    rho = np.diag([0.2, 0.3, 0.1, 0.4])
    tw = twirl_dense(rho, TwirlSpec.qubit_register(2)).entries
    assert np.array_equal(tw, rho)


def test_twirl_single_qubit():
    tw = twirl_dense(single_use_output(5), TwirlSpec.qubit_register(1)).entries
    assert np.max(np.abs(tw - np.eye(2) / 2)) < 1e-15


def test_twirl_covariance():
    rng = np.random.default_rng(31)
    spec = TwirlSpec.qubit_register(3)
    a = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
    rho = a @ a.conj().T
    rho /= np.trace(rho)
    for phi in (0.3, 1.7, 4.1):
        T = spec.phase_rotation(phi)
        rotated = T @ rho @ T.conj().T
        lhs = twirl_dense(rotated, spec).entries
        rhs = twirl_dense(rho, spec).entries
        assert np.max(np.abs(lhs - rhs)) < 1e-10


def test_entropy_values():
    assert von_neumann_entropy(np.array([[1, 0], [0, 0]])) == pytest.approx(
        0.0, abs=1e-12)
    assert von_neumann_entropy(np.eye(4) / 4) == pytest.approx(math.log(4),
                                                               abs=1e-12)
    assert von_neumann_entropy(single_use_output(2)) == pytest.approx(
        0.56234, abs=5e-6)


def test_asymmetry_dense_values():
    eta = make_eta(12, 0, 0.0, guard=0)
    v = eta.dense_window()
    assert asymmetry_dense(np.outer(v, v.conj()),
                           TwirlSpec.ladder_window(12)) == pytest.approx(
        math.log(12), abs=1e-10)
    assert asymmetry_dense(np.diag([0.4, 0.6]),
                           TwirlSpec.qubit_register(1)) == pytest.approx(
        0.0, abs=1e-12)
    assert asymmetry_dense(single_use_output(2),
                           TwirlSpec.qubit_register(1)) == pytest.approx(
        0.13081, abs=5e-6)


def test_asymmetry_nonnegative_and_twirl_fixed():
    rng = np.random.default_rng(32)
    spec = TwirlSpec.qubit_register(2)
    for _ in range(6):
        a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        rho = a @ a.conj().T
        rho /= np.trace(rho)
        assert asymmetry_dense(rho, spec) >= -1e-10
        tw = twirl_dense(rho, spec)
        assert abs(asymmetry_dense(tw, spec)) < 1e-10


# --- exact N-copy formula ------------------------------------------------------------

def test_formula_single_copy():
    assert asymmetry_exact_formula(1, 0.75, 0.25) == pytest.approx(
        0.13081, abs=5e-6)
    assert asymmetry_exact_formula(1, 0.75, 0.25) == pytest.approx(
        math.log(2) - (-0.75 * math.log(0.75) - 0.25 * math.log(0.25)),
        abs=1e-13)


def test_formula_pure_two_copies():
    # pure balanced superposition: asymmetry = entropy of binomial(2, 1/2)
    expect = -(0.25 * math.log(0.25) * 2 + 0.5 * math.log(0.5))
    assert asymmetry_exact_formula(2, 1.0, 0.0) == pytest.approx(expect,
                                                                 abs=1e-12)
    assert expect == pytest.approx(1.03972, abs=5e-6)


@pytest.mark.parametrize("lam_minus", [0.0, 1 / 24, 1 / 34, 1 / 54, 0.25])
def test_formula_matches_dense_oracle(lam_minus):
    for N in range(1, 9):
        got = asymmetry_exact_formula(N, 1 - lam_minus, lam_minus)
        assert got == pytest.approx(dense_asym(N, lam_minus), abs=1e-8)


def test_formula_validation():
    with pytest.raises(ParameterError):
        asymmetry_exact_formula(0, 1.0, 0.0)
    with pytest.raises(ParameterError):
        asymmetry_exact_formula(2, 0.9, 0.2)
    with pytest.raises(ParameterError):
        asymmetry_exact_formula(2, 1.2, -0.2)


def test_entropy_additivity_dense():
    lam = 1 / 24
    s1 = von_neumann_entropy(copies_energy_basis(1, lam))
    for N in (2, 5, 8):
        assert von_neumann_entropy(copies_energy_basis(N, lam)) \
            == pytest.approx(N * s1, abs=1e-10)


# --- approximation, bound, reports ----------------------------------------------------

def test_approx_values():
    assert asymmetry_approx(2) == pytest.approx(1.07236, abs=5e-6)
    assert asymmetry_approx(1) == pytest.approx(0.725791, abs=5e-7)
    assert asymmetry_approx(200) == pytest.approx(3.374950, abs=5e-7)


def test_upper_bound_values():
    assert asymmetry_upper_bound(12) == pytest.approx(2.48491, abs=5e-6)
    assert asymmetry_upper_bound(27) == pytest.approx(3.29584, abs=5e-6)
    assert asymmetry_upper_bound(1) == 0.0
    with pytest.raises(ParameterError):
        asymmetry_upper_bound(0)


def test_growth_crosses_budget():
    # the i.i.d. asymmetry passes ln L: near N=50 for L=12, N=90 for L=17
    lp, lm = spectrum_for_length(12)
    assert asymmetry_exact_formula(49, lp, lm) < math.log(12)
    assert asymmetry_exact_formula(50, lp, lm) > math.log(12)
    lp, lm = spectrum_for_length(17)
    assert asymmetry_exact_formula(89, lp, lm) < math.log(17)
    assert asymmetry_exact_formula(90, lp, lm) > math.log(17)


def test_spectrum_conventions():
    assert spectrum_for_length(10, "eq12") == (0.95, 0.05)
    assert spectrum_for_length(10, "appendixA") == (0.9, 0.1)
    with pytest.raises(ParameterError):
        spectrum_for_length(10, "other")


def test_report_fields():
    rep = asymmetry_report(6, 12, include_epsilon=True)
    assert rep.eigen_pair == (1 - 1 / 24, 1 / 24)
    assert rep.A_exact == pytest.approx(dense_asym(6, 1 / 24), abs=1e-8)
    assert rep.A_bound == pytest.approx(math.log(12), abs=1e-12)
    assert not rep.exceeds_bound
    assert rep.epsilon_terms is not None
    big = asymmetry_report(120, 12)
    assert big.exceeds_bound


# --- charge-sector decomposition --------------------------------------------------------

def test_decomposition_normalization_and_identity():
    ed = entropy_decomposition(10, 1 - 1 / 24, 1 / 24)
    assert np.sum(ed.p_m) == pytest.approx(1.0, abs=1e-12)
    assert ed.identity_residual < 1e-9


def test_decomposition_pure_case_shannon():
    ed = entropy_decomposition(4, 1.0, 0.0)
    # entropy of binomial(4, 1/2): probabilities (1,4,6,4,1)/16
    expect = -(2 * (1 / 16) * math.log(1 / 16) + 2 * (4 / 16) * math.log(4 / 16)
               + (6 / 16) * math.log(6 / 16))
    assert ed.shannon_h == pytest.approx(expect, abs=1e-12)
    assert expect == pytest.approx(1.407532, abs=5e-7)


def test_decomposition_epsilon_trend():
    eps0 = []
    for N in (8, 16, 32, 64):
        ed = entropy_decomposition(N, 1 - 1 / 24, 1 / 24)
        idx = np.where(ed.two_m_values == 0)[0][0]
        eps0.append(abs(float(ed.epsilon[idx])))
    assert eps0[0] > eps0[1] > eps0[2] > eps0[3]


def test_decomposition_consistency_with_formula():
    N, lm = 9, 1 / 34
    ed = entropy_decomposition(N, 1 - lm, lm)
    s1 = -( (1 - lm) * math.log(1 - lm) + lm * math.log(lm))
    a_from_parts = ed.twirled_entropy - N * s1
    assert a_from_parts == pytest.approx(
        asymmetry_exact_formula(N, 1 - lm, lm), abs=1e-12)


def test_convergence_toward_approx():
    # |A_exact - approx| decreasing over a coarse large-N grid for each L
    for L in (12, 17, 27):
        lp, lm = spectrum_for_length(L)
        diffs = [abs(asymmetry_exact_formula(N, lp, lm) - asymmetry_approx(N))
                 for N in (60, 100, 150, 200)]
        assert diffs[0] > diffs[1] > diffs[2] > diffs[3]
