"""Joint qubit-reservoir dynamics and the two reduced channels.

One use of the reservoir applies an energy-conserving joint unitary that
implements a target single-qubit gate while shifting the reservoir ladder
oppositely to the qubit excitation change: the matrix element |n><n'| of the
gate carries the ladder shift D^(n'-n).  Tracing out the reservoir gives the
qubit channel (`phi_channel`); tracing out the qubit gives the complementary
reservoir channel (`lambda_channel`).

Exact multi-use states are kept as a branch decomposition: one reservoir
vector per qubit bitstring.  Shifted copies of the initial state share one
amplitude buffer, so N uses cost O(2^N) bookkeeping plus N ladder windows.
Dense 2^N-dimensional objects are capped (default 12 qubits).

Bitstring convention: the first-processed qubit is the most significant bit;
basis index 0 is the lower energy state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .reservoir import (
    ParameterError,
    ReservoirState,
    WindowOverflowError,
    apply_shift,
    make_eta,
)

__all__ = [
    "CapacityError",
    "QubitGate",
    "HermitianMatrix",
    "BranchState",
    "WeightClass",
    "DENSE_QUBIT_CAP",
    "PSI0",
    "PSI1",
    "PLUS",
    "MINUS",
    "as_density_matrix",
    "apply_VU",
    "phi_channel",
    "lambda_channel",
    "delta_trace",
    "delta_expectation_invariance_check",
    "sequential_prepare",
    "joint_qubit_state",
    "second_use_marginal_check",
    "weight_class_prepare",
    "state_overlap",
]

DENSE_QUBIT_CAP = 12

PSI0 = np.array([1.0, 0.0], dtype=np.complex128)
PSI1 = np.array([0.0, 1.0], dtype=np.complex128)
PLUS = (PSI0 + PSI1) / np.sqrt(2.0)
MINUS = (PSI0 - PSI1) / np.sqrt(2.0)


class CapacityError(RuntimeError):
    """Raised when a dense computation would exceed the qubit-count cap."""


@dataclass(frozen=True)
class QubitGate:
    """2x2 unitary in the energy eigenbasis {lower, upper}.

    ``matrix[n, n']`` is the amplitude for taking the qubit from basis state
    n' to n; unitarity is enforced to 1e-12 at construction.
    """

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.complex128)
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        if m.shape != (2, 2):
            raise ParameterError("gate must be a 2x2 matrix")
        err = np.max(np.abs(m.conj().T @ m - np.eye(2)))
        if err > 1e-12:
            raise ParameterError(f"gate is not unitary (deviation {err:.3e})")

    @classmethod
    def from_target_amplitudes(cls, a: complex, b: complex) -> "QubitGate":
        """Gate whose first column is (a, b): lower state -> a|0> + b|1>.

        The second column is completed canonically as (conj(b), -conj(a)).
        """
        return cls(np.array([[a, np.conj(b)], [b, -np.conj(a)]]))

    @classmethod
    def hadamard_like(cls) -> "QubitGate":
        """Balanced superposition gate: lower state -> (|0> + |1>)/sqrt(2)."""
        r = 1.0 / np.sqrt(2.0)
        return cls.from_target_amplitudes(r, r)

    @classmethod
    def identity(cls) -> "QubitGate":
        return cls(np.eye(2))

    @property
    def u00(self) -> complex:
        return complex(self.matrix[0, 0])

    @property
    def u01(self) -> complex:
        return complex(self.matrix[0, 1])

    @property
    def u10(self) -> complex:
        return complex(self.matrix[1, 0])

    @property
    def u11(self) -> complex:
        return complex(self.matrix[1, 1])

    def target_state(self, source: np.ndarray = PSI0) -> np.ndarray:
        """The intended pure output U|source> of a noiseless application."""
        return self.matrix @ np.asarray(source, dtype=np.complex128)


@dataclass(frozen=True)
class HermitianMatrix:
    """Dense complex Hermitian matrix with an optional density-matrix tag.

    Hermiticity is enforced to 1e-12.  With ``is_density=True`` the trace must
    be 1 within 1e-12; the minimum-eigenvalue condition (>= -1e-10) is checked
    eagerly up to dimension 256 and left to callers above that.
    """

    entries: np.ndarray
    is_density: bool = False

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=np.complex128)
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ParameterError("entries must form a square matrix")
        herm = np.max(np.abs(m - m.conj().T)) if m.size else 0.0
        if herm > 1e-12:
            raise ParameterError(f"matrix is not Hermitian (deviation {herm:.3e})")
        if self.is_density:
            tr = complex(np.trace(m))
            if abs(tr - 1.0) > 1e-12:
                raise ParameterError(f"density matrix trace is {tr!r}, not 1")
            if m.shape[0] <= 256:
                lo = float(np.linalg.eigvalsh(m)[0])
                if lo < -1e-10:
                    raise ParameterError(f"density matrix has eigenvalue {lo:.3e} < 0")

    @property
    def dimension(self) -> int:
        return self.entries.shape[0]

    def __array__(self, dtype=None):
        return np.asarray(self.entries, dtype=dtype)


MatrixLike = Union[HermitianMatrix, np.ndarray, Sequence[Sequence[complex]]]


def as_density_matrix(obj: MatrixLike) -> HermitianMatrix:
    """Coerce an array-like into a validated density HermitianMatrix."""
    if isinstance(obj, HermitianMatrix):
        if obj.is_density:
            return obj
        return HermitianMatrix(obj.entries, is_density=True)
    return HermitianMatrix(np.asarray(obj, dtype=np.complex128), is_density=True)


def _matrix_entries(obj: MatrixLike) -> np.ndarray:
    if isinstance(obj, HermitianMatrix):
        return obj.entries
    return np.asarray(obj, dtype=np.complex128)


# ---------------------------------------------------------------------------
# branch decomposition of exact multi-use joint states
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BranchState:
    """Pure joint state of processed qubits and the reservoir.

    Branches map a bitstring over the processed qubit slots (sorted slot
    order) to a complex coefficient and a normalized reservoir state; the
    joint state is  sum_z coeff_z |z> (x) |reservoir_z>.  Unprocessed slots
    are implicitly in the lower energy state.
    """

    n_slots: int
    processed: Tuple[int, ...]
    branches: Dict[Tuple[int, ...], Tuple[complex, ReservoirState]]

    @classmethod
    def initial(cls, reservoir: ReservoirState, n_slots: int) -> "BranchState":
        if n_slots < 1:
            raise ParameterError("need at least one qubit slot")
        return cls(n_slots=n_slots, processed=(),
                   branches={(): (1.0 + 0.0j, reservoir)})

    @property
    def n_processed(self) -> int:
        return len(self.processed)

    def global_norm(self) -> float:
        """sqrt(sum_z |coeff_z|^2); branch reservoirs are unit-normalized."""
        return math.sqrt(sum(abs(c) ** 2 for c, _ in self.branches.values()))


def state_overlap(sa: ReservoirState, sb: ReservoirState) -> complex:
    """<sa|sb> for two reservoir states, aligned by absolute ladder level."""
    lo = max(sa.support_start, sb.support_start)
    hi = min(sa.support_end, sb.support_end)
    if lo > hi:
        return 0.0 + 0.0j
    va = sa.amplitudes[lo - sa.support_start: hi - sa.support_start + 1]
    vb = sb.amplitudes[lo - sb.support_start: hi - sb.support_start + 1]
    return complex(np.vdot(va, vb))


def apply_VU(qubit_index: int, gate: QubitGate, joint: BranchState) -> BranchState:
    """Interact one fresh (lower-state) qubit with the reservoir.

    Each branch splits into the two output basis states of the qubit; the
    component reaching the upper state shifts its reservoir down one level.
    Applications to distinct qubits commute, so any unprocessed slot may be
    chosen.  Window overflow from the down-shift propagates.
    """
    if not (0 <= qubit_index < joint.n_slots):
        raise ParameterError(f"qubit index {qubit_index} out of range")
    if qubit_index in joint.processed:
        raise ParameterError(f"qubit {qubit_index} was already processed")
    new_processed = tuple(sorted(joint.processed + (qubit_index,)))
    pos = new_processed.index(qubit_index)
    out: Dict[Tuple[int, ...], Tuple[complex, ReservoirState]] = {}
    for bits, (coeff, state) in joint.branches.items():
        for n in (0, 1):
            amp = gate.matrix[n, 0]
            if amp == 0:
                continue
            shifted = apply_shift(state, -n) if n else state
            key = bits[:pos] + (n,) + bits[pos:]
            out[key] = (coeff * amp, shifted)
    return BranchState(n_slots=joint.n_slots, processed=new_processed, branches=out)


def sequential_prepare(N: int, gate: QubitGate,
                       reservoir: ReservoirState) -> BranchState:
    """Exact joint pure state after N uses of the same reservoir.

    Requires downward headroom >= N on the reservoir window.
    """
    if N < 1:
        raise ParameterError("N must be >= 1")
    if reservoir.headroom_down() < N and abs(gate.matrix[1, 0]) > 0:
        raise WindowOverflowError(
            f"guard {reservoir.headroom_down()} cannot absorb {N} uses")
    joint = BranchState.initial(reservoir, N)
    for q in range(N):
        joint = apply_VU(q, gate, joint)
    return joint


@dataclass(frozen=True)
class WeightClass:
    """Aggregate of all branches sharing one excitation count.

    With a uniform gate on all-lower-state inputs every branch with h upper
    qubits carries the same coefficient and the same down-shifted reservoir,
    so N-use statistics that only depend on h need N+1 records, not 2^N.
    """

    weight: int
    multiplicity: int
    coefficient: complex
    reservoir: ReservoirState

    @property
    def probability(self) -> float:
        """Total probability of measuring any bitstring in this class."""
        return self.multiplicity * abs(self.coefficient) ** 2


def weight_class_prepare(N: int, gate: QubitGate,
                         reservoir: ReservoirState) -> List[WeightClass]:
    """Per-excitation-count summary of the N-use joint state (O(N) records)."""
    if N < 1:
        raise ParameterError("N must be >= 1")
    u0, u1 = gate.matrix[0, 0], gate.matrix[1, 0]
    classes = []
    state = reservoir
    for h in range(N + 1):
        if h:
            state = apply_shift(state, -1)
        coeff = u0 ** (N - h) * u1 ** h
        classes.append(WeightClass(weight=h, multiplicity=math.comb(N, h),
                                   coefficient=complex(coeff), reservoir=state))
    return classes


def joint_qubit_state(branches: BranchState,
                      dense_cap: int = DENSE_QUBIT_CAP) -> HermitianMatrix:
    """Reduced state of the processed qubits (reservoir traced out).

    Entry (z, z') is coeff_z * conj(coeff_z') * <reservoir_z' | reservoir_z>.
    """
    N = branches.n_processed
    if N > dense_cap:
        raise CapacityError(f"{N} qubits exceed the dense cap of {dense_cap}")
    dim = 2 ** N
    rho = np.zeros((dim, dim), dtype=np.complex128)
    items = [(_bits_to_index(bits), coeff, state)
             for bits, (coeff, state) in branches.branches.items()]
    # shifted copies share one amplitude buffer, so overlaps repeat heavily
    memo: Dict[Tuple[int, int, int, int], complex] = {}
    for zi, ci, si in items:
        for zj, cj, sj in items:
            if zj > zi:
                continue
            key = (id(sj.amplitudes), sj.support_start,
                   id(si.amplitudes), si.support_start)
            ov = memo.get(key)
            if ov is None:
                ov = state_overlap(sj, si)
                memo[key] = ov
            val = ci * np.conj(cj) * ov
            rho[zi, zj] = val
            rho[zj, zi] = np.conj(val)
    return HermitianMatrix(rho, is_density=True)


def _bits_to_index(bits: Tuple[int, ...]) -> int:
    idx = 0
    for b in bits:
        idx = (idx << 1) | b
    return idx


def branch_marginal(branches: BranchState, slot: int) -> HermitianMatrix:
    """Single-qubit reduced state of one processed slot."""
    if slot not in branches.processed:
        raise ParameterError(f"slot {slot} has not been processed")
    pos = branches.processed.index(slot)
    rho = np.zeros((2, 2), dtype=np.complex128)
    grouped: Dict[Tuple[int, ...], List] = {}
    for bits, (coeff, state) in branches.branches.items():
        rest = bits[:pos] + bits[pos + 1:]
        grouped.setdefault(rest, []).append((bits[pos], coeff, state))
    for members in grouped.values():
        for n, cn, sn in members:
            for m, cm, sm in members:
                rho[n, m] += cn * np.conj(cm) * state_overlap(sm, sn)
    return HermitianMatrix(rho, is_density=True)


# ---------------------------------------------------------------------------
# reduced channels on dense window matrices
# ---------------------------------------------------------------------------

def _window_shift(W: int, k: int) -> np.ndarray:
    """Window-basis matrix of the ladder shift by k (truncated at the edges)."""
    S = np.zeros((W, W))
    if k >= 0:
        idx = np.arange(0, W - k)
        S[idx + k, idx] = 1.0
    else:
        idx = np.arange(-k, W)
        S[idx + k, idx] = 1.0
    return S


def _reservoir_window_matrix(sigma: Union[ReservoirState, MatrixLike]) -> np.ndarray:
    if isinstance(sigma, ReservoirState):
        vec = sigma.dense_window()
        return np.outer(vec, vec.conj())
    return _matrix_entries(sigma)


def _check_shift_headroom(sig: np.ndarray, shifts, tol: float = 1e-14) -> None:
    W = sig.shape[0]
    pop = np.abs(np.diagonal(sig))
    for k in shifts:
        if k > 0 and np.any(pop[W - k:] > tol):
            raise WindowOverflowError(
                f"shift by +{k} would push population past the window top")
        if k < 0 and np.any(pop[:-k] > tol):
            raise WindowOverflowError(
                f"shift by {k} would push population past the window bottom")


def _channel_operators(gate: QubitGate, rho0: np.ndarray, W: int):
    """Eigenbranches of the joint action: for each input eigenvector v of the
    qubit state, the reservoir operator reaching qubit output n is
        O_n = sum_n' U[n, n'] v[n'] S(n' - n).
    Returns [(weight, [O_0, O_1]), ...] plus the set of shifts actually used.
    """
    evals, evecs = np.linalg.eigh(rho0)
    ops = []
    used = set()
    shift_cache = {}
    for i, w in enumerate(evals):
        if w < 1e-15:
            continue
        v = evecs[:, i]
        pair = []
        for n in (0, 1):
            O = np.zeros((W, W), dtype=np.complex128)
            for npr in (0, 1):
                c = gate.matrix[n, npr] * v[npr]
                if abs(c) == 0:
                    continue
                k = npr - n
                if k not in shift_cache:
                    shift_cache[k] = _window_shift(W, k)
                O = O + c * shift_cache[k]
                used.add(k)
            pair.append(O)
        ops.append((float(w), pair))
    return ops, used


def phi_channel(sigma: Union[ReservoirState, MatrixLike], gate: QubitGate,
                rho0: MatrixLike) -> HermitianMatrix:
    """Qubit output of one reservoir use: trace over the reservoir of
    V (rho0 (x) sigma) V^dagger.
    """
    rho0m = as_density_matrix(rho0).entries
    if rho0m.shape != (2, 2):
        raise ParameterError("rho0 must be a single-qubit density matrix")
    sig = _reservoir_window_matrix(sigma)
    W = sig.shape[0]
    ops, used = _channel_operators(gate, rho0m, W)
    _check_shift_headroom(sig, used)
    out = np.zeros((2, 2), dtype=np.complex128)
    for w, (O0, O1) in ops:
        t0 = O0 @ sig
        t1 = O1 @ sig
        out[0, 0] += w * np.trace(t0 @ O0.conj().T)
        out[0, 1] += w * np.trace(t0 @ O1.conj().T)
        out[1, 1] += w * np.trace(t1 @ O1.conj().T)
    out[1, 0] = np.conj(out[0, 1])
    out = 0.5 * (out + out.conj().T)
    return HermitianMatrix(out, is_density=True)


def lambda_channel(sigma: Union[ReservoirState, MatrixLike], gate: QubitGate,
                   rho0: MatrixLike) -> HermitianMatrix:
    """Reservoir output of one use: trace over the qubit.

    Accepts a pure ReservoirState or a (possibly mixed) window density matrix,
    e.g. a previous output of this channel; mixtures evolve by
    eigendecomposition into pure-state branches.
    """
    rho0m = as_density_matrix(rho0).entries
    if rho0m.shape != (2, 2):
        raise ParameterError("rho0 must be a single-qubit density matrix")
    sig = _reservoir_window_matrix(sigma)
    W = sig.shape[0]
    ops, used = _channel_operators(gate, rho0m, W)
    _check_shift_headroom(sig, used)
    out = np.zeros((W, W), dtype=np.complex128)
    for w, pair in ops:
        for O in pair:
            out += w * (O @ sig @ O.conj().T)
    out = 0.5 * (out + out.conj().T)
    return HermitianMatrix(out, is_density=True)


def delta_trace(sigma: Union[ReservoirState, MatrixLike], a: int) -> complex:
    """tr(D^a sigma): the a-th superdiagonal sum of the window matrix."""
    sig = _reservoir_window_matrix(sigma)
    if abs(a) >= sig.shape[0]:
        return 0.0 + 0.0j
    return complex(np.trace(sig, offset=a))


def delta_expectation_invariance_check(
        sigma: Union[ReservoirState, MatrixLike], gate: QubitGate,
        rho0: MatrixLike, a_range: Sequence[int]) -> List[Tuple[int, complex, complex]]:
    """tr(D^a sigma) before and after one reservoir use, for each a.

    The two values agree for every a: the complementary channel preserves all
    shift-operator expectation values.
    """
    after = lambda_channel(sigma, gate, rho0)
    return [(int(a), delta_trace(sigma, a), delta_trace(after, a))
            for a in a_range]


def second_use_marginal_check(reservoir: ReservoirState, gate: QubitGate
                              ) -> Tuple[HermitianMatrix, HermitianMatrix]:
    """Single-qubit marginals of both qubits from the exact two-use state.

    Both equal the single-use channel output: reusing the reservoir leaves
    every one-qubit reduced state unchanged (the correlations are where the
    two-use state differs from a product).
    """
    joint = sequential_prepare(2, gate, reservoir)
    return branch_marginal(joint, 0), branch_marginal(joint, 1)
