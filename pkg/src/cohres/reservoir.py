"""Energy-reservoir ladder states and expectation values of ladder-shift polynomials.

The reservoir is a multilevel system with integer energy levels.  Its working
state is a uniform-magnitude superposition of L consecutive levels with a
linear phase ramp,

    |state> = L^{-1/2} * sum_{l=0}^{L-1} exp(i*l*theta) |l0 + l>,

which serves as the phase reference that powers coherent qubit preparation.
States live on a finite window of levels with `guard` levels of headroom on
each side so that shifting down (one level per prepared qubit) never touches
the window edge; exceeding the headroom raises WindowOverflowError instead of
silently corrupting the ladder.

All values here are immutable and all functions are pure, so everything is
safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Dict, Iterable, Mapping, Tuple

import numpy as np

__all__ = [
    "ParameterError",
    "WindowOverflowError",
    "ReservoirState",
    "LaurentCoeffs",
    "make_eta",
    "apply_shift",
    "shift_overlap",
    "laurent_expectation",
    "reservoir_overlap",
]

_NORM_TOL = 1e-12


class ParameterError(ValueError):
    """Raised for invalid constructor or operation parameters."""


class WindowOverflowError(RuntimeError):
    """Raised when a shift would push reservoir amplitude outside its window.

    This signals that the guard headroom was chosen smaller than the number of
    times the reservoir is used.
    """


@dataclass(frozen=True)
class ReservoirState:
    """Pure reservoir state: a dense complex amplitude vector on a level window.

    ``amplitudes[i]`` is the amplitude of level ``support_start + i``.  The
    window ``[w_min, w_max]`` is fixed at construction; shifts translate
    ``support_start`` and never wrap.  ``base_level``, ``length``, ``phase``
    and ``guard`` record the uniform superposition the state was built from.
    """

    amplitudes: np.ndarray
    support_start: int
    w_min: int
    w_max: int
    base_level: int
    length: int
    phase: float
    guard: int

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.complex128)
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)
        if amps.ndim != 1 or amps.size == 0:
            raise ParameterError("amplitudes must be a nonempty 1-d vector")
        norm2 = float(np.sum(np.abs(amps) ** 2))
        if abs(norm2 - 1.0) > 1e-10:
            raise ParameterError(f"state not normalized: |amps|^2 = {norm2!r}")
        if self.support_start < self.w_min or self.support_end > self.w_max:
            raise WindowOverflowError(
                f"support [{self.support_start}, {self.support_end}] exceeds "
                f"window [{self.w_min}, {self.w_max}]"
            )

    @property
    def support_end(self) -> int:
        """Highest level covered by the stored amplitude vector."""
        return self.support_start + len(self.amplitudes) - 1

    @property
    def window_size(self) -> int:
        return self.w_max - self.w_min + 1

    def headroom_down(self) -> int:
        """How far the state can shift toward lower levels before overflow."""
        return self.support_start - self.w_min

    def headroom_up(self) -> int:
        return self.w_max - self.support_end

    def amplitude_at(self, level: int) -> complex:
        if self.support_start <= level <= self.support_end:
            return complex(self.amplitudes[level - self.support_start])
        return 0.0j

    def support_levels(self) -> np.ndarray:
        """Levels carrying amplitude magnitude > 0 (exact comparison)."""
        idx = np.nonzero(self.amplitudes)[0]
        return idx + self.support_start

    def dense_window(self) -> np.ndarray:
        """Amplitudes embedded in the full window basis (index 0 = w_min)."""
        vec = np.zeros(self.window_size, dtype=np.complex128)
        lo = self.support_start - self.w_min
        vec[lo:lo + len(self.amplitudes)] = self.amplitudes
        return vec


@dataclass(frozen=True)
class LaurentCoeffs:
    """Finite-support coefficients c_k of a formal polynomial sum_k c_k * D^k,

    where D is the unit upward ladder-shift operator.  Multiplication is the
    discrete convolution of coefficient maps; no pruning is applied, so exact
    cancellations stay exact.
    """

    coefficients: Mapping[int, complex] = field(default_factory=dict)

    def __post_init__(self):
        coeffs = {int(k): complex(v) for k, v in dict(self.coefficients).items()}
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def monomial(cls, power: int, coeff: complex = 1.0) -> "LaurentCoeffs":
        return cls({power: coeff})

    def items(self) -> Iterable[Tuple[int, complex]]:
        return self.coefficients.items()

    def support(self) -> Tuple[int, int]:
        if not self.coefficients:
            return (0, 0)
        ks = self.coefficients.keys()
        return (min(ks), max(ks))

    def __add__(self, other: "LaurentCoeffs") -> "LaurentCoeffs":
        out: Dict[int, complex] = dict(self.coefficients)
        for k, v in other.coefficients.items():
            out[k] = out.get(k, 0.0j) + v
        return LaurentCoeffs(out)

    def __mul__(self, other: "LaurentCoeffs") -> "LaurentCoeffs":
        out: Dict[int, complex] = {}
        for k1, v1 in self.coefficients.items():
            for k2, v2 in other.coefficients.items():
                k = k1 + k2
                out[k] = out.get(k, 0.0j) + v1 * v2
        return LaurentCoeffs(out)

    def scaled(self, factor: complex) -> "LaurentCoeffs":
        return LaurentCoeffs({k: factor * v for k, v in self.coefficients.items()})

    def __pow__(self, n: int) -> "LaurentCoeffs":
        if n < 0:
            raise ParameterError("negative powers of a polynomial are undefined")
        out = LaurentCoeffs({0: 1.0})
        for _ in range(n):
            out = out * self
        return out


def make_eta(L: int, l0: int, theta: float = 0.0, guard: int = 2) -> ReservoirState:
    """Uniform superposition of levels l0 .. l0+L-1 with phase ramp exp(i*l*theta).

    `guard` levels of headroom are reserved on both sides of the populated
    block; choose guard >= the number of planned uses plus a margin.
    """
    if L < 1:
        raise ParameterError(f"L must be a positive integer, got {L}")
    if guard < 0:
        raise ParameterError(f"guard must be non-negative, got {guard}")
    ls = np.arange(L)
    amps = np.exp(1j * theta * ls) / np.sqrt(L)
    return ReservoirState(
        amplitudes=amps,
        support_start=l0,
        w_min=l0 - guard,
        w_max=l0 + L - 1 + guard,
        base_level=l0,
        length=L,
        phase=float(theta),
        guard=guard,
    )


def apply_shift(state: ReservoirState, k: int) -> ReservoirState:
    """Translate every amplitude from level j to level j+k.

    The amplitude vector is reused untouched (only the support offset moves),
    so the 2-norm is preserved bit for bit.  Raises WindowOverflowError if any
    nonzero amplitude would leave the window.
    """
    if k == 0:
        return state
    nz = state.support_levels()
    if nz.size:
        if nz[0] + k < state.w_min or nz[-1] + k > state.w_max:
            raise WindowOverflowError(
                f"shift by {k} moves support [{nz[0]}, {nz[-1]}] outside "
                f"window [{state.w_min}, {state.w_max}]; increase guard"
            )
    lo = state.support_start + k
    hi = lo + len(state.amplitudes) - 1
    amps = state.amplitudes
    # trim zero padding if the stored vector (not its support) would poke out
    if lo < state.w_min or hi > state.w_max:
        i0 = int(nz[0] - state.support_start)
        i1 = int(nz[-1] - state.support_start)
        amps = amps[i0:i1 + 1]
        lo = int(nz[0]) + k
    return replace(state, amplitudes=amps, support_start=lo,
                   base_level=state.base_level + k)


def shift_overlap(state: ReservoirState, a: int) -> complex:
    """<state| D^a |state> where D is the unit upward shift.

    Computed directly from the amplitudes; for the uniform theta=0 state this
    equals max(0, 1 - |a|/L), and it is exactly 0 for |a| >= L because the
    shifted support is disjoint.
    """
    amps = state.amplitudes
    n = len(amps)
    if abs(a) >= n:
        return 0.0 + 0.0j
    if a >= 0:
        val = np.vdot(amps[a:], amps[:n - a])
    else:
        val = np.conj(np.vdot(amps[-a:], amps[:n + a]))
    return complex(val)


def laurent_expectation(state: ReservoirState, poly: LaurentCoeffs) -> complex:
    """<state| sum_k c_k D^k |state> = sum_k c_k <state| D^k |state>."""
    return sum((c * shift_overlap(state, k) for k, c in poly.items()),
               start=0.0 + 0.0j)


def reservoir_overlap(theta1: float, theta2: float, L: int) -> complex:
    """Overlap of two phase-ramp reservoir states of equal length and base:

        (1/L) * sum_{l=0}^{L-1} exp(i*l*(theta2 - theta1)),

    evaluated in closed (geometric-sum) form.  Zero whenever theta2 - theta1
    is a nonzero integer multiple of 2*pi/L.
    """
    if L < 1:
        raise ParameterError(f"L must be a positive integer, got {L}")
    delta = float(theta2) - float(theta1)
    half = 0.5 * delta
    denom = np.sin(half)
    if abs(denom) < 1e-15:
        # delta is (numerically) a multiple of 2*pi: all phases align
        return 1.0 + 0.0j
    return complex(np.exp(1j * half * (L - 1)) * np.sin(L * half) / (L * denom))
