"""Exact and approximate N-qubit outcome statistics in the +/- basis.

After N uses of one reservoir the probability of any fixed outcome sequence
with n '+' results is a shift-polynomial expectation value,

    p_seq(n) = 4^-N <(1-D)^(N-n) (1+D)^n (1+D^-1)^n (1-D^-1)^(N-n)>,

evaluated on the uniform ladder state.  The expansion is carried out in exact
integer arithmetic (binomial convolutions plus the piecewise-linear shift
overlap max(0, 1-|a|/L)), so values for small n survive the astronomical
cancellations that break floating-point expansion beyond N of a few dozen,
and exact identities such as p_seq(N-1) = p_count(0) hold to the last bit.

The closed-form large-N approximations for the top four sequence
probabilities and their mirrors are exposed exactly as published; their
accuracy is the caller's concern (they degrade sharply below N of order 50
for the n = N-2 and N-3 cases).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Tuple

import numpy as np

from .reservoir import ParameterError, ReservoirState, apply_shift, make_eta

__all__ = [
    "SequenceStats",
    "CollapseReport",
    "p_seq_exact",
    "p_count_exact",
    "p_seq_approx",
    "product_state_stats",
    "sequence_stats",
    "conditional_collapse_demo",
]


@lru_cache(maxsize=4096)
def _signed_binomial_convolution(n_plus2: int, n_minus2: int) -> Tuple[int, ...]:
    """Integer coefficients of (1+D)^n_plus2 * (1-D)^n_minus2."""
    c1 = [math.comb(n_plus2, i) for i in range(n_plus2 + 1)]
    c2 = [(-1) ** i * math.comb(n_minus2, i) for i in range(n_minus2 + 1)]
    out = [0] * (n_plus2 + n_minus2 + 1)
    for i, a in enumerate(c1):
        for j, b in enumerate(c2):
            out[i + j] += a * b
    return tuple(out)


def _p_seq_fraction(n: int, N: int, L: int) -> Fraction:
    """Exact rational value of the fixed-sequence probability."""
    if N < 1:
        raise ParameterError("N must be >= 1")
    if not 0 <= n <= N:
        raise ParameterError(f"need 0 <= n <= N, got n={n}, N={N}")
    if L < 1:
        raise ParameterError("L must be >= 1")
    # (1+D)^n (1+D^-1)^n (1-D)^(N-n) (1-D^-1)^(N-n)
    #   = (-1)^(N-n) D^-N (1+D)^(2n) (1-D)^(2(N-n))
    coeffs = _signed_binomial_convolution(2 * n, 2 * (N - n))
    total = Fraction(0)
    for t, c in enumerate(coeffs):
        if c == 0:
            continue
        a = abs(t - N)
        if a < L:
            total += c * (1 - Fraction(a, L))
    val = Fraction((-1) ** (N - n)) * total / Fraction(4 ** N)
    return val


def p_seq_exact(n: int, N: int, L: int) -> float:
    """Probability of one fixed measurement sequence containing n '+' results."""
    return float(_p_seq_fraction(n, N, L))


def p_count_exact(n: int, N: int, L: int) -> float:
    """Probability of n '+' results in any order: binomial(N, n) * p_seq(n)."""
    return float(math.comb(N, n) * _p_seq_fraction(n, N, L))


def p_seq_approx(n: int, N: int, L: int) -> float:
    """Published closed-form approximations for the sequence probabilities.

    Covered cases: n in {N, N-1, N-2, N-3} directly, and n in {0, 1, 2} via
    the exact mirror identity p_seq(n) = p_seq(N-1-n).  Other n have no
    closed form and raise ParameterError.
    """
    if N <= 1:
        raise ParameterError("approximations require N > 1")
    sqrt = math.sqrt

    def f_top():
        return 1.0 - sqrt(N / math.pi) / L

    def f1():
        return 1.0 / (2.0 * sqrt(math.pi * (N - 1)) * L)

    def f2():
        return 1.0 / (4.0 * sqrt(math.pi * (N - 2) ** 3) * L)

    def f3():
        return 3.0 / (8.0 * sqrt(math.pi * (N - 3) ** 5) * L)

    # direct labels first: at small N a low n can double as a label near the
    # top (e.g. n = 1 = N-3 at N = 4) and then its own formula applies; a
    # direct form whose asymptotic variable vanishes falls through to the
    # mirror p_seq(n) = p_seq(N-1-n)
    if n == N:
        return f_top()
    if n == N - 1:
        return f1()
    if n == N - 2 and N >= 3:
        return f2()
    if n == N - 3 and N >= 4:
        return f3()
    if n == 0:
        return f1()
    if n == 1 and N >= 3:
        return f2()
    if n == 2 and N >= 4:
        return f3()
    raise ParameterError(f"no closed-form approximation for n={n} at N={N}")


def _product_fractions(N: int, L: int) -> List[Fraction]:
    if L < 1:
        raise ParameterError("L must be >= 1")
    pp = 1 - Fraction(1, 2 * L)
    pm = Fraction(1, 2 * L)
    return [pp ** n * pm ** (N - n) for n in range(N + 1)]


@dataclass(frozen=True)
class SequenceStats:
    """All fixed-order and any-order outcome probabilities for one (N, L).

    ``p_seq[n]`` / ``p_count[n]`` are the exact correlated values;
    ``product_p_seq`` / ``product_p_count`` are the values an uncorrelated
    N-fold product of single-use outputs would give.
    """

    N: int
    L: int
    p_seq: np.ndarray
    p_count: np.ndarray
    product_p_seq: np.ndarray
    product_p_count: np.ndarray


def product_state_stats(N: int, L: int) -> SequenceStats:
    """Uncorrelated baseline: each qubit independently '+' w.p. 1 - 1/(2L).

    The all-'-' sequence probability is (2L)^-N, vastly below the correlated
    value which falls off only as 1/L.
    """
    if N < 1:
        raise ParameterError("N must be >= 1")
    seq = _product_fractions(N, L)
    cnt = [math.comb(N, n) * s for n, s in enumerate(seq)]
    z = np.zeros(N + 1)
    return SequenceStats(N=N, L=L, p_seq=z, p_count=z,
                         product_p_seq=np.array([float(s) for s in seq]),
                         product_p_count=np.array([float(c) for c in cnt]))


def sequence_stats(N: int, L: int) -> SequenceStats:
    """Exact correlated statistics together with the product baseline."""
    seq_fr = [_p_seq_fraction(n, N, L) for n in range(N + 1)]
    cnt_fr = [math.comb(N, n) * s for n, s in enumerate(seq_fr)]
    prod = product_state_stats(N, L)
    return SequenceStats(
        N=N, L=L,
        p_seq=np.array([float(s) for s in seq_fr]),
        p_count=np.array([float(c) for c in cnt_fr]),
        product_p_seq=prod.product_p_seq,
        product_p_count=prod.product_p_count,
    )


@dataclass(frozen=True)
class CollapseReport:
    """What one '-' outcome does to the reservoir and to later statistics."""

    N: int
    L: int
    post_minus_state: ReservoirState
    post_minus_levels: Tuple[int, int]
    p_seq_top_minus_one: float
    p_count_zero: float

    @property
    def symmetric(self) -> bool:
        return self.p_seq_top_minus_one == self.p_count_zero


def conditional_collapse_demo(N: int, L: int, l0: int = 0,
                              guard: int = 2) -> CollapseReport:
    """A single '-' outcome destroys the reservoir's usable coherence.

    The post-'-' reservoir is the normalized (1 - D^-1) image of the uniform
    state: two equal-magnitude peaks at levels l0-1 and l0+L-1 with opposite
    signs and no nearby companions, so later '+' and '-' outcomes become
    equally likely.  Quantitatively, the chance that the remaining N-1 qubits
    all read '+' equals the chance that all N read '-':
    p_seq(N-1) = p_count(0), exactly.
    """
    if N < 2:
        raise ParameterError("need N >= 2 to condition on one outcome")
    if L <= N:
        raise ParameterError("demo assumes L > N")
    if guard < 1:
        raise ParameterError("post-measurement support needs guard >= 1")
    eta = make_eta(L, l0, 0.0, guard=guard)
    diff = eta.dense_window() - apply_shift(eta, -1).dense_window()
    post = diff * math.sqrt(L / 2.0)
    nz = np.flatnonzero(post)
    state = ReservoirState(
        amplitudes=post[nz[0]: nz[-1] + 1],
        support_start=eta.w_min + int(nz[0]),
        w_min=eta.w_min, w_max=eta.w_max,
        base_level=l0 - 1, length=L, phase=0.0, guard=guard,
    )
    levels = tuple(int(v) for v in state.support_levels())
    return CollapseReport(
        N=N, L=L, post_minus_state=state,
        post_minus_levels=(levels[0], levels[-1]),
        p_seq_top_minus_one=p_seq_exact(N - 1, N, L),
        p_count_zero=p_count_exact(0, N, L),
    )
