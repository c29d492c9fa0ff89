#!/usr/bin/env python3
"""One use of the coherent reservoir, step by step.

A ladder reservoir in a uniform superposition of L levels drives the gate
|0> -> (|0> + |1>)/sqrt(2) on a qubit.  The qubit comes out almost, but not
exactly, in the intended superposition; the reservoir comes out almost, but
not exactly, unchanged.  Both defects scale as 1/L.
"""

import numpy as np

from cohres import (
    QubitGate,
    lambda_channel,
    make_eta,
    phi_channel,
    shift_overlap,
    trace_distance,
)
from cohres.channels import PLUS

PSI0 = np.array([[1, 0], [0, 0]], dtype=complex)


def banner(title):
    print(f"\n{'=' * 64}\n  {title}\n{'=' * 64}")


def main():
    gate = QubitGate.hadamard_like()

    banner("The reservoir state")
    eta = make_eta(4, 10, 0.0, guard=2)
    print("L=4 uniform superposition on levels 10..13:")
    print("  amplitudes:", np.round(eta.amplitudes.real, 4))
    print("  overlap with itself shifted down one level:",
          shift_overlap(eta, 1).real, " (= 1 - 1/L)")

    banner("What the qubit gets")
    for L in (2, 10, 100, 1000):
        rho_s = phi_channel(make_eta(L, 0, 0.0, guard=2), gate, PSI0)
        w = float(np.real(PLUS @ rho_s.entries @ PLUS))
        target = np.outer(PLUS, PLUS.conj())
        print(f"  L={L:5d}: weight on the intended state {w:.6f}"
              f"   trace distance to it {trace_distance(rho_s, target):.6f}"
              f"   (= 1/(2L) = {1 / (2 * L):.6f})")

    banner("What the reservoir pays")
    for L in (2, 10, 100, 1000):
        eta = make_eta(L, 0, 0.0, guard=2)
        rho_e = lambda_channel(eta, gate, PSI0)
        v = eta.dense_window()
        fid = float(np.real(np.vdot(v, rho_e.entries @ v)))
        print(f"  L={L:5d}: fidelity with the fresh state {fid:.6f}"
              f"   (= 1 - (1/L)(1 - 1/(2L)) = "
              f"{1 - (1 / L) * (1 - 1 / (2 * L)):.6f})")

    banner("The seductive part")
    print("The reservoir output is an equal mixture of the fresh state and")
    print("its one-level-down copy; each component works as well as the")
    print("original, and every later qubit gets the *same* reduced state.")
    print("That is what looks like catalysis -- until the correlations")
    print("between the qubits are examined (see the other demos).")


if __name__ == "__main__":
    main()
