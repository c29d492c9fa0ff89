"""Command-line front end: run the standard experiments, emit CSV/JSON.

Subcommands
-----------
single-use    per-L summary of one reservoir use (output state, reservoir
              fidelity, trace distance to the intended pure state)
probs         exact and approximate sequence/count statistics vs the
              uncorrelated product baseline
discriminate  naive i.i.d. vs exact correlated phase discrimination (JSON)
fig1          asymmetry growth sweep: exact, Gaussian approximation, ln L
fig2          repeatability-error sweep: exact trace norm vs (N-1)/L

CSV output is UTF-8 with one '#' comment line recording the full
configuration, a header row, floats at 12 significant digits, and rows in
sorted (L, N) order, so identical configurations produce byte-identical
files.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Iterable, List, Optional, Sequence

import numpy as np

from . import (
    CapacityError,
    DENSE_QUBIT_CAP,
    ParameterError,
    QubitGate,
    WindowOverflowError,
    asymmetry_approx,
    asymmetry_exact_formula,
    asymmetry_upper_bound,
    exact_report,
    lambda_channel,
    make_eta,
    naive_report,
    p_count_exact,
    p_seq_approx,
    p_seq_exact,
    phi_channel,
    product_state_stats,
    single_use_output,
    spectrum_for_length,
    trace_distance,
    xi_trace_norm,
    xi_trace_norm_approx,
)

SCHEMA_VERSION = 1
_PSI0_DM = np.array([[1.0, 0.0], [0.0, 0.0]], dtype=np.complex128)


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _parse_int_list(text: str, minimum: int = 1) -> List[int]:
    try:
        vals = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise ParameterError(f"bad integer list {text!r}") from exc
    if not vals:
        raise ParameterError("empty integer list")
    if any(v < minimum for v in vals):
        raise ParameterError(f"values in {text!r} must be >= {minimum}")
    return vals


def _parse_range(text: str, stride: int) -> List[int]:
    """'a:b' inclusive range, 'a,b,c' list, or a single integer."""
    if stride < 1:
        raise ParameterError("stride must be >= 1")
    if ":" in text:
        lo_s, hi_s = text.split(":", 1)
        try:
            lo, hi = int(lo_s), int(hi_s)
        except ValueError as exc:
            raise ParameterError(f"bad range {text!r}") from exc
        if hi < lo:
            raise ParameterError(f"empty range {text!r}")
        if lo < 1:
            raise ParameterError("range values must be >= 1")
        return list(range(lo, hi + 1, stride))
    return _parse_int_list(text)[::stride]


def _parse_gate(text: Optional[str]) -> QubitGate:
    if text is None:
        return QubitGate.hadamard_like()
    parts = text.split(",")
    if len(parts) != 2:
        raise ParameterError("--gate expects 'a,b' (two complex numbers)")
    try:
        a, b = complex(parts[0]), complex(parts[1])
    except ValueError as exc:
        raise ParameterError(f"bad gate amplitudes {text!r}") from exc
    norm = math.sqrt(abs(a) ** 2 + abs(b) ** 2)
    if abs(norm - 1.0) > 1e-9:
        raise ParameterError("gate column (a, b) must be normalized")
    return QubitGate.from_target_amplitudes(a / norm, b / norm)


def _config_comment(args: argparse.Namespace, keys: Sequence[str]) -> str:
    parts = [f"{k}={getattr(args, k)}" for k in keys]
    return "# cohres " + args.command + " " + " ".join(parts)


def _write_lines(path: Optional[str], lines: Iterable[str]) -> None:
    text = "\n".join(lines) + "\n"
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_single_use(args: argparse.Namespace) -> int:
    gate = _parse_gate(args.gate)
    lines = [_config_comment(args, ["L", "gate"])]
    for L in _parse_int_list(args.L):
        eta = make_eta(L, l0=0, theta=0.0, guard=3)
        rho_s = phi_channel(eta, gate, _PSI0_DM)
        rho_e = lambda_channel(eta, gate, _PSI0_DM)
        fid = float(np.real(np.vdot(eta.dense_window(),
                                    rho_e.entries @ eta.dense_window())))
        target = gate.target_state()
        dist = trace_distance(rho_s, np.outer(target, target.conj()))
        plus = np.array([1.0, 1.0]) / math.sqrt(2.0)
        plus_weight = float(np.real(plus @ rho_s.entries @ plus))
        lines.append(f"L={L}")
        lines.append("  qubit state: "
                     + " ".join(_fmt(v) for v in np.real(rho_s.entries).ravel())
                     + " (re), "
                     + " ".join(_fmt(v) for v in np.imag(rho_s.entries).ravel())
                     + " (im)")
        lines.append(f"  plus-state weight: {_fmt(plus_weight)}")
        lines.append(f"  reservoir fidelity: {_fmt(fid)}")
        lines.append(f"  trace distance to target: {_fmt(dist)}")
    _write_lines(args.out, lines)
    return 0


def cmd_probs(args: argparse.Namespace) -> int:
    header = ("N,L,n,p_seq_exact,p_seq_approx,p_count_exact,"
              "product_p_seq,product_p_count")
    rows = []
    for L in sorted(_parse_int_list(args.L)):
        for N in sorted(_parse_range(args.N, args.stride)):
            prod = product_state_stats(N, L)
            for n in range(N + 1):
                try:
                    approx = _fmt(p_seq_approx(n, N, L))
                except ParameterError:
                    approx = ""
                rows.append(",".join([
                    str(N), str(L), str(n),
                    _fmt(p_seq_exact(n, N, L)), approx,
                    _fmt(p_count_exact(n, N, L)),
                    _fmt(float(prod.product_p_seq[n])),
                    _fmt(float(prod.product_p_count[n])),
                ]))
    lines = [_config_comment(args, ["L", "N", "stride"]), header] + rows
    _write_lines(args.out, lines)
    return 0


def cmd_discriminate(args: argparse.Namespace) -> int:
    reports = []
    exit_code = 0
    for L in sorted(_parse_int_list(args.L)):
        for N in sorted(_parse_range(args.N, args.stride)):
            naive = naive_report(args.theta1, args.theta2, L, N)
            entry = {
                "schema_version": SCHEMA_VERSION,
                "theta1": args.theta1,
                "theta2": args.theta2,
                "L": L,
                "N": N,
                "naive": {
                    "fidelity_per_copy": naive.naive_fidelity_per_copy,
                    "fidelity_N": naive.naive_fidelity_N,
                    "error_bound": naive.naive_error_bound,
                },
                "reservoir": {
                    "overlap_magnitude": naive.reservoir_overlap_magnitude,
                    "error_floor": naive.reservoir_error_floor,
                },
            }
            try:
                exact = exact_report(args.theta1, args.theta2, L, N)
                entry["exact"] = {
                    "trace_distance": exact.exact_trace_distance,
                    "helstrom_error": exact.exact_helstrom_error,
                }
            except CapacityError as exc:
                entry["exact"] = {"error": str(exc)}
                exit_code = 3
            reports.append(entry)
    payload = json.dumps({"schema_version": SCHEMA_VERSION,
                          "reports": reports}, indent=2, sort_keys=True)
    _write_lines(args.out, [payload])
    if exit_code:
        print("capacity error in at least one exact report", file=sys.stderr)
    return exit_code


def cmd_fig1(args: argparse.Namespace) -> int:
    ns = _parse_range(args.N, args.stride)
    if max(ns) > 256:
        raise ParameterError("asymmetry sweep capped at N = 256")
    rows = []
    for L in sorted(_parse_int_list(args.L)):
        lp, lm = spectrum_for_length(L, args.eig_convention)
        bound = asymmetry_upper_bound(L)
        for N in sorted(ns):
            rows.append(",".join([
                str(L), str(N),
                _fmt(asymmetry_exact_formula(N, lp, lm)),
                _fmt(asymmetry_approx(N)),
                _fmt(bound),
            ]))
    lines = [_config_comment(args, ["L", "N", "stride", "eig_convention"]),
             "L,N,A_exact,A_approx,A_bound"] + rows
    _write_lines(args.out, lines)
    return 0


def cmd_fig2(args: argparse.Namespace) -> int:
    ns = _parse_range(args.N, args.stride)
    if max(ns) > DENSE_QUBIT_CAP:
        raise CapacityError(f"repeatability sweep capped at N = {DENSE_QUBIT_CAP}")
    gate = _parse_gate(args.gate)
    rows = []
    for L in sorted(_parse_int_list(args.L)):
        for N in sorted(ns):
            rows.append(",".join([
                str(L), str(N),
                _fmt(xi_trace_norm(N, L, gate)),
                _fmt(xi_trace_norm_approx(N, L)),
            ]))
    lines = [_config_comment(args, ["L", "N", "stride", "gate"]),
             "L,N,xi_exact,xi_approx"] + rows
    _write_lines(args.out, lines)
    return 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cohres",
        description="coherent-reservoir reuse: exact statistics and error budgets")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, L_default, N_default=None):
        p.add_argument("--L", default=L_default,
                       help="comma-separated reservoir lengths")
        if N_default is not None:
            p.add_argument("--N", default=N_default,
                           help="qubit-count range 'a:b', list, or single value")
            p.add_argument("--stride", type=int, default=1)
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--format", choices=["csv", "json"], default=None,
                       help="accepted for symmetry; each subcommand has a "
                            "native format")

    p = sub.add_parser("single-use", help="one use of the reservoir, per L")
    common(p, "2,10,100")
    p.add_argument("--gate", default=None, help="gate column 'a,b'")
    p.set_defaults(func=cmd_single_use)

    p = sub.add_parser("probs", help="sequence/count statistics (CSV)")
    common(p, "50", "2:6")
    p.set_defaults(func=cmd_probs)

    p = sub.add_parser("discriminate", help="phase discrimination (JSON)")
    common(p, "100", "1:6")
    p.add_argument("--theta1", type=float, default=0.0)
    p.add_argument("--theta2", type=float, default=math.pi / 2)
    p.set_defaults(func=cmd_discriminate)

    p = sub.add_parser("fig1", help="asymmetry growth sweep (CSV)")
    common(p, "12,17,27", "1:200")
    p.add_argument("--eig-convention", dest="eig_convention",
                   choices=["eq12", "appendixA"], default="eq12")
    p.set_defaults(func=cmd_fig1)

    p = sub.add_parser("fig2", help="repeatability error sweep (CSV)")
    common(p, "20,50,100,200", "1:10")
    p.add_argument("--gate", default=None, help="gate column 'a,b'")
    p.set_defaults(func=cmd_fig2)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParameterError, WindowOverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
