"""Repeatability error: exact N-use output minus the N-fold product state.

xi_N is the difference between the reservoir-traced joint state of N
processed qubits and the tensor power of the single-use output.  Every
single-qubit marginal of xi_N vanishes -- the deficit lives entirely in
correlations -- yet its trace norm grows like (N-1)/L, which is what limits
how often one reservoir can be reused at fixed quality.

For the balanced gate the matrix has a closed form in the energy basis:
the (z, z') entry is

    2^-N [ (1 - min(L,|h(z)-h(z')|)/L) - (1 - 1/L)^(hamming distance) ],

with h the excitation count; general gates fall back to the channel
pipeline.  N=1 gives exactly zero; N=2 gives trace norm exactly 1/L.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .channels import (
    CapacityError,
    DENSE_QUBIT_CAP,
    HermitianMatrix,
    QubitGate,
    joint_qubit_state,
    phi_channel,
    sequential_prepare,
)
from .reservoir import ParameterError, make_eta

__all__ = [
    "RepeatabilityResult",
    "xi_matrix",
    "xi_trace_norm",
    "xi_trace_norm_approx",
    "repeatability_result",
    "single_qubit_marginals",
]


def _is_balanced_gate(gate: QubitGate) -> bool:
    r = 1.0 / math.sqrt(2.0)
    return (abs(gate.matrix[0, 0] - r) < 1e-15
            and abs(gate.matrix[1, 0] - r) < 1e-15)


def _hamming_arrays(N: int):
    z = np.arange(2 ** N)
    weights = np.zeros(2 ** N, dtype=np.int64)
    dist = np.zeros((2 ** N, 2 ** N), dtype=np.int64)
    for b in range(N):
        bit = (z >> b) & 1
        weights += bit
        dist += bit[:, None] != bit[None, :]
    return weights, dist


def xi_matrix(N: int, L: int, gate: Optional[QubitGate] = None,
              dense_cap: int = DENSE_QUBIT_CAP) -> HermitianMatrix:
    """The 2^N x 2^N repeatability error matrix (traceless, Hermitian)."""
    if N < 1:
        raise ParameterError("N must be >= 1")
    if N > dense_cap:
        raise CapacityError(f"xi needs N <= {dense_cap}")
    if L <= N:
        raise ParameterError("windowed evaluation assumes L > N")
    if gate is None:
        gate = QubitGate.hadamard_like()
    if _is_balanced_gate(gate):
        weights, dist = _hamming_arrays(N)
        dh = np.abs(weights[:, None] - weights[None, :])
        exact = 1.0 - np.minimum(dh, L) / L
        product = (1.0 - 1.0 / L) ** dist
        xi = (exact - product) / 2.0 ** N
        return HermitianMatrix(xi)
    eta = make_eta(L, l0=0, theta=0.0, guard=N + 2)
    joint = joint_qubit_state(sequential_prepare(N, gate, eta),
                              dense_cap=dense_cap).entries
    single = phi_channel(make_eta(L, 0, 0.0, guard=3), gate,
                         np.array([[1.0, 0.0], [0.0, 0.0]])).entries
    product = np.array([[1.0]], dtype=np.complex128)
    for _ in range(N):
        product = np.kron(product, single)
    return HermitianMatrix(joint - product)


def xi_trace_norm(N: int, L: int, gate: Optional[QubitGate] = None,
                  dense_cap: int = DENSE_QUBIT_CAP) -> float:
    """Sum of absolute eigenvalues of xi_N."""
    xi = xi_matrix(N, L, gate, dense_cap).entries
    return float(np.sum(np.abs(np.linalg.eigvalsh(xi))))


def xi_trace_norm_approx(N: int, L: int) -> float:
    """Leading-order trace norm (N-1)/L, valid for 1 <= N << L."""
    if N < 1:
        raise ParameterError("N must be >= 1")
    if L < 1:
        raise ParameterError("L must be >= 1")
    return (N - 1) / L


@dataclass(frozen=True)
class RepeatabilityResult:
    """Exact and approximate repeatability error at one (N, L) point."""

    N: int
    L: int
    trace_norm_exact: float
    trace_norm_approx: float
    xi: Optional[HermitianMatrix] = None


def repeatability_result(N: int, L: int, gate: Optional[QubitGate] = None,
                         keep_matrix: bool = False,
                         dense_cap: int = DENSE_QUBIT_CAP) -> RepeatabilityResult:
    mat = xi_matrix(N, L, gate, dense_cap)
    norm = float(np.sum(np.abs(np.linalg.eigvalsh(mat.entries))))
    return RepeatabilityResult(
        N=N, L=L, trace_norm_exact=norm,
        trace_norm_approx=xi_trace_norm_approx(N, L),
        xi=mat if keep_matrix else None,
    )


def single_qubit_marginals(xi: HermitianMatrix) -> list[np.ndarray]:
    """Partial trace of xi over all qubits but one, for each qubit.

    All of them vanish: the exact state and the product state share every
    single-qubit marginal, so the error is purely correlational.
    """
    dim = xi.dimension
    N = dim.bit_length() - 1
    if 2 ** N != dim:
        raise ParameterError("xi must act on a qubit register")
    full = xi.entries.reshape((2,) * N * 2)
    out = []
    for q in range(N):
        arr = np.moveaxis(full, (q, N + q), (0, 1))
        arr = arr.reshape(2, 2, 2 ** (N - 1), 2 ** (N - 1))
        out.append(np.trace(arr, axis1=2, axis2=3))
    return out
