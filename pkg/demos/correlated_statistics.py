#!/usr/bin/env python3
"""Joint statistics of many qubits prepared from one reservoir.

Each qubit alone reads '+' with probability 1 - 1/(2L).  If the qubits were
independent, seeing several '-' results would be fantastically unlikely.
They are not independent: every outcome pattern with at least one '-' has
probability of order 1/L, and after a single '-' the remaining qubits are
as likely to all read '-' as all '+'.
"""

from cohres import (
    conditional_collapse_demo,
    p_count_exact,
    p_seq_approx,
    p_seq_exact,
    product_state_stats,
)


def banner(title):
    print(f"\n{'=' * 64}\n  {title}\n{'=' * 64}")


def main():
    banner("Two qubits, L = 50")
    L = 50
    print(f"  P(+,+) = {p_seq_exact(2, 2, L):.6f}   (1 - 3/(4L))")
    print(f"  P(+,-) = {p_seq_exact(1, 2, L):.6f}   (1/(4L))")
    print(f"  P(-,-) = {p_seq_exact(0, 2, L):.6f}   (1/(4L)  -- not 1/(4L^2)!)")
    prod = product_state_stats(2, L).product_p_seq
    print(f"  uncorrelated baseline: P(+,+)={prod[2]:.6f} "
          f"P(+,-)={prod[1]:.6f} P(-,-)={prod[0]:.8f}")

    banner("All-minus probability vs the independent story")
    for N in (2, 4, 8):
        exact = p_seq_exact(0, N, 200)
        prod = product_state_stats(N, 200).product_p_seq[0]
        print(f"  N={N}: exact {exact:.3e}   product {prod:.3e}   "
              f"ratio {exact / prod:.3e}")

    banner("One '-' erases the reservoir's usefulness")
    rep = conditional_collapse_demo(5, 20, l0=25)
    lo, hi = rep.post_minus_levels
    print(f"  post-'-' reservoir support: levels {lo} and {hi} only")
    print("  (two distant spikes carry no usable phase reference)")
    print(f"  p_seq(N-1) = {rep.p_seq_top_minus_one:.8f}")
    print(f"  p_count(0) = {rep.p_count_zero:.8f}")
    print(f"  equal exactly: {rep.symmetric}")

    banner("Large-N closed forms (asymptotic)")
    L = 1000
    for N in (16, 64, 256):
        exact = p_seq_exact(N, N, L)
        approx = p_seq_approx(N, N, L)
        print(f"  N={N:3d}: P(all +) exact {exact:.8f}  approx {approx:.8f}")
    print("  subleading forms converge more slowly; by N=256 all are within"
          " ~1%:")
    for n_off in (1, 2, 3):
        N = 256
        exact = p_seq_exact(N - n_off, N, L)
        approx = p_seq_approx(N - n_off, N, L)
        print(f"    n=N-{n_off}: exact {exact:.6e}  approx {approx:.6e}  "
              f"rel {(approx - exact) / exact:+.4f}")

    banner("Counts distribution still sums to one")
    N, L = 12, 30
    total = sum(p_count_exact(n, N, L) for n in range(N + 1))
    print(f"  N={N}, L={L}: sum over n of P(n) = {total:.15f}")


if __name__ == "__main__":
    main()
