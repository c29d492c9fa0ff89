#!/usr/bin/env python3
"""Asymmetry accounting: the i.i.d. story manufactures coherence from nothing.

The phase asymmetry A = S(twirl) - S quantifies how well a state serves as a
phase reference; covariant operations can never increase it.  A fresh
length-L reservoir holds exactly A = ln L.  Yet N independent copies of the
single-use output hold about (1/2) ln(N pi e / 2), which grows without bound
and overtakes ln L at finite N.  The exact sweep below shows the crossing;
the correlated state actually produced stays under the budget, so the
correlations are where the deficit lives.
"""

import math

from cohres import (
    asymmetry_approx,
    asymmetry_dense,
    asymmetry_exact_formula,
    asymmetry_upper_bound,
    make_eta,
    spectrum_for_length,
)
from cohres.asymmetry import TwirlSpec
import numpy as np


def banner(title):
    print(f"\n{'=' * 64}\n  {title}\n{'=' * 64}")


def main():
    banner("The budget: a fresh reservoir")
    for L in (12, 17, 27):
        eta = make_eta(L, 0, 0.0, guard=0)
        v = eta.dense_window()
        dense = asymmetry_dense(np.outer(v, v.conj()),
                                TwirlSpec.ladder_window(L))
        print(f"  L={L}: A = {dense:.6f}   (ln L = {math.log(L):.6f})")

    banner("Growth of the i.i.d. asymmetry")
    print("  N      L=12      L=17      L=27    approx=(1/2)ln(N pi e/2)")
    marks = {}
    for N in (1, 10, 25, 50, 90, 150, 200):
        row = [f"  {N:3d} "]
        for L in (12, 17, 27):
            lp, lm = spectrum_for_length(L)
            a = asymmetry_exact_formula(N, lp, lm)
            flag = "*" if a > asymmetry_upper_bound(L) else " "
            if flag == "*" and L not in marks:
                marks[L] = N
            row.append(f" {a:.5f}{flag}")
        row.append(f"   {asymmetry_approx(N):.5f}")
        print("".join(row))
    print("  (* = exceeds that reservoir's budget ln L)")

    banner("Where each budget is first exceeded")
    for L in (12, 17, 27):
        lp, lm = spectrum_for_length(L)
        crossing = None
        for N in range(1, 201):
            if asymmetry_exact_formula(N, lp, lm) > asymmetry_upper_bound(L):
                crossing = N
                break
        print(f"  L={L}: first N over ln L within 1..200: {crossing}")
    print("\nA collection of qubits genuinely prepared from one reservoir can")
    print("never pass ln L; the i.i.d. description does, so it cannot be the")
    print("state the process produces.")


if __name__ == "__main__":
    main()
