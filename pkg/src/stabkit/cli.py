"""Command-line surface: frame potentials, enumeration, and cross-checks.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 resource cap.
Identical invocations produce byte-identical output regardless of --threads;
all parallelism lives in pure computations with fixed reduction orders.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import sys
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import potential, stabilizer
from .weyl import (
    DEFAULT_MATRIX_CAP,
    _omega_power,
    tau_order as weyl_tau_order,
    verify_commutation,
    verify_composition,
    weyl,
)
from .combinatorics import (
    gaussian_binomial,
    kappa,
    lagrangian_count,
    require_prime,
    stabilizer_count,
    transversal_count,
)
from .errors import NonPrimeModulusError, ResourceCapError
from .symplectic import (
    DEFAULT_ENUM_CAP,
    PhaseVector,
    enumerate_lagrangians,
    intersect,
    intersection_spectrum,
    symplectic_form,
)


def _int_range(text: str) -> list[int]:
    """Inclusive 'a..b' range or a single integer."""
    try:
        if ".." in text:
            lo_s, hi_s = text.split("..")
            lo, hi = int(lo_s), int(hi_s)
        else:
            lo = hi = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer or a..b range: {text!r}") from exc
    if hi < lo:
        raise argparse.ArgumentTypeError(f"empty range: {text!r}")
    return list(range(lo, hi + 1))


def _add_caps(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--enum-cap", type=int, default=DEFAULT_ENUM_CAP, help="max subspaces scanned")
    parser.add_argument("--state-cap", type=int, default=stabilizer.DEFAULT_STATE_CAP, help="max states enumerated")
    parser.add_argument("--pair-cap", type=int, default=potential.DEFAULT_PAIR_CAP, help="max state pairs brute-forced")
    parser.add_argument("--matrix-cap", type=int, default=DEFAULT_MATRIX_CAP, help="max Hilbert-space dimension")


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--output", default=None, help="write to this path instead of stdout")
    parser.add_argument("--threads", type=int, default=None, help="worker count (env STABKIT_THREADS, then machine)")
    parser.add_argument("--seed", type=int, default=None, help="reserved; deterministic commands ignore it")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stabkit", description="Exact stabilizer-state design toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    fp = sub.add_parser("frame-potential", help="frame potentials, Welch bounds, design verdicts")
    fp.add_argument("--d", type=int, required=True, help="prime local dimension")
    fp.add_argument("--n", type=_int_range, required=True, metavar="A[..B]", help="register count or range")
    fp.add_argument("--t", type=_int_range, required=True, metavar="A[..B]", help="moment order or range")
    fp.add_argument(
        "--method",
        choices=["exact", "bruteforce", "fixed-state", "all"],
        default="exact",
        help="numeric engine for the bruteforce column (exact engines always run)",
    )
    fp.add_argument("--format", choices=["table", "csv", "json"], default="table")
    _add_caps(fp)
    _add_common(fp)
    fp.set_defaults(func=cmd_frame_potential)

    en = sub.add_parser("enumerate", help="enumerate Lagrangians, states, or intersection spectra")
    en.add_argument("what", choices=["lagrangians", "states", "spectrum"])
    en.add_argument("--d", type=int, required=True)
    en.add_argument("--n", type=int, required=True)
    en.add_argument("--realize", action="store_true", help="include state amplitudes (states only)")
    en.add_argument("--format", choices=["table", "csv", "json"], default="table", help="spectrum output format")
    _add_caps(en)
    _add_common(en)
    en.set_defaults(func=cmd_enumerate)

    ve = sub.add_parser("verify", help="run the full cross-check suite for one (d, n)")
    ve.add_argument("--d", type=int, required=True)
    ve.add_argument("--n", type=int, required=True)
    ve.add_argument("--t-max", type=int, default=4)
    _add_caps(ve)
    _add_common(ve)
    ve.set_defaults(func=cmd_verify)

    return parser


def _write(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        with open(output, "w", newline="") as fh:
            fh.write(text)


def _decimal12(fr) -> str:
    return format(float(fr), ".12g")


# ---------------------------------------------------------------------------
# frame-potential


def _plan_numeric_engine(d: int, n: int, method: str, args) -> str | None:
    """Pick the numeric engine for one n, enforcing caps before realization."""
    if method == "exact":
        return None
    count = stabilizer_count(d, n)
    fits_pairs = count * count <= args.pair_cap
    fits_states = count <= args.state_cap
    if method == "bruteforce" or (method == "all" and fits_pairs):
        if not fits_pairs:
            raise ResourceCapError(f"brute force needs {count * count} state pairs, cap is {args.pair_cap}")
        return "bruteforce"
    if not fits_states:
        raise ResourceCapError(f"fixed-state sum over {count} states exceeds cap {args.state_cap}")
    return "fixed-state"


def cmd_frame_potential(args) -> int:
    require_prime(args.d)
    reports = []
    for n in args.n:
        engine = _plan_numeric_engine(args.d, n, args.method, args)
        vectors = None
        if engine is not None:
            count = stabilizer_count(args.d, n)
            cap = count if engine == "bruteforce" else args.state_cap
            vectors = [
                vec
                for _, vec in stabilizer.realized_states(args.d, n, state_cap=cap, matrix_cap=args.matrix_cap)
            ]
        for t in args.t:
            if engine == "bruteforce":
                value = potential.frame_potential_bruteforce(
                    args.d, n, t, pair_cap=args.pair_cap, matrix_cap=args.matrix_cap,
                    threads=args.threads, vectors=vectors,
                )
            elif engine == "fixed-state":
                value = potential.frame_potential_fixed_state(
                    args.d, n, t, state_cap=args.state_cap, matrix_cap=args.matrix_cap, vectors=vectors
                )
            else:
                value = None
            reports.append(potential.frame_potential_report(args.d, n, t, bruteforce=value))
    _write(_render_reports(reports, args.format), args.output)
    return 0


def _render_reports(reports, fmt: str) -> str:
    rows = [r.to_json_dict() for r in reports]
    if fmt == "json":
        return json.dumps(rows, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        header = ["d", "n", "t", "D", "recursion", "combinatorial", "bruteforce", "welch", "is_design"]
        writer.writerow(header)
        for row in rows:
            writer.writerow(
                [
                    row["d"],
                    row["n"],
                    row["t"],
                    row["D"],
                    row["recursion"],
                    row["combinatorial"],
                    "" if row["bruteforce"] is None else repr(row["bruteforce"]),
                    row["welch"],
                    "true" if row["is_design"] else "false",
                ]
            )
        return buf.getvalue()
    # table: exact columns as p/q plus a 12-significant-digit decimal column.
    header = ["d", "n", "t", "D", "recursion", "combinatorial", "value", "bruteforce", "welch", "welch-dec", "design"]
    body = []
    for r in reports:
        body.append(
            [
                str(r.d),
                str(r.n),
                str(r.t),
                str(r.dimension),
                potential.fraction_str(r.value_recursion),
                potential.fraction_str(r.value_combinatorial),
                _decimal12(r.value_combinatorial),
                "-" if r.value_bruteforce is None else format(r.value_bruteforce, ".12g"),
                potential.fraction_str(r.welch),
                _decimal12(r.welch),
                "yes" if r.is_t_design else "no",
            ]
        )
    return _format_table([header] + body)


def _format_table(rows: list[list[str]]) -> str:
    widths = [max(len(row[c]) for row in rows) for c in range(len(rows[0]))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# enumerate


def cmd_enumerate(args) -> int:
    require_prime(args.d)
    if args.what == "lagrangians":
        lines = [
            json.dumps(sub.to_json_dict(), separators=(",", ":"))
            for sub in enumerate_lagrangians(args.d, args.n, cap=args.enum_cap)
        ]
        _write("\n".join(lines) + "\n", args.output)
        return 0
    if args.what == "states":
        lines = []
        if args.realize:
            for m_sub in enumerate_lagrangians(args.d, args.n, cap=args.enum_cap):
                for zeta, vec in stabilizer.stabilizer_basis(m_sub, cap=args.matrix_cap):
                    state = stabilizer.StabilizerState(m_sub, zeta)
                    lines.append(json.dumps(state.to_json_dict(amplitudes=vec), separators=(",", ":")))
        else:
            for state in stabilizer.enumerate_states(args.d, args.n, cap=args.state_cap):
                lines.append(json.dumps(state.to_json_dict(), separators=(",", ":")))
        _write("\n".join(lines) + "\n", args.output)
        return 0
    # spectrum: empirical kappa against the closed formula.
    first = next(iter(enumerate_lagrangians(args.d, args.n, cap=args.enum_cap)))
    spectrum = intersection_spectrum(first, cap=args.enum_cap)
    rows = []
    for k in sorted(spectrum):
        formula = kappa(args.d, args.n, k)
        rows.append({"k": k, "count": spectrum[k], "formula": formula, "match": spectrum[k] == formula})
    _write(_render_spectrum(rows, args.format), args.output)
    return 0


def _render_spectrum(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["k", "count", "formula", "match"])
        for row in rows:
            writer.writerow([row["k"], row["count"], row["formula"], "true" if row["match"] else "false"])
        return buf.getvalue()
    table = [["k", "count", "formula", "match"]] + [
        [str(row["k"]), str(row["count"]), str(row["formula"]), "yes" if row["match"] else "no"] for row in rows
    ]
    return _format_table(table)


# ---------------------------------------------------------------------------
# verify


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def run_verification(
    d: int,
    n: int,
    t_max: int,
    *,
    enum_cap: int = DEFAULT_ENUM_CAP,
    state_cap: int = stabilizer.DEFAULT_STATE_CAP,
    pair_cap: int = potential.DEFAULT_PAIR_CAP,
    matrix_cap: int = DEFAULT_MATRIX_CAP,
    threads: int | None = None,
) -> list[CheckResult]:
    """The full cross-check suite for one (d, n); raises on cap violations."""
    require_prime(d)
    if n < 1 or t_max < 1:
        raise ValueError("n and t_max must be positive")
    dim = d**n
    if dim > matrix_cap:
        raise ResourceCapError(f"matrix dimension {dim} exceeds cap {matrix_cap}")
    count = stabilizer_count(d, n)
    if count > state_cap:
        raise ResourceCapError(f"{count} states exceed cap {state_cap}")
    scan = gaussian_binomial(2 * n, n, d)
    if scan > enum_cap:
        raise ResourceCapError(f"Lagrangian enumeration scans {scan} subspaces, cap is {enum_cap}")
    if count * count > pair_cap:
        raise ResourceCapError(f"overlap cross-check needs {count * count} pairs, cap is {pair_cap}")

    checks: list[CheckResult] = []
    lagrangians = list(enumerate_lagrangians(d, n, cap=enum_cap))
    expected_l = lagrangian_count(d, n)
    checks.append(
        CheckResult(
            "lagrangian-count",
            len(lagrangians) == expected_l,
            f"enumerated {len(lagrangians)}, formula {expected_l}",
        )
    )

    reference = lagrangians[0]
    spectrum = {k: 0 for k in range(n + 1)}
    for other in lagrangians:
        spectrum[intersect(reference, other).dim] += 1
    kappa_ok = all(spectrum[k] == kappa(d, n, k) for k in range(n + 1))
    checks.append(
        CheckResult(
            "kappa-spectrum",
            kappa_ok,
            " ".join(f"k={k}:{spectrum[k]}" for k in sorted(spectrum)),
        )
    )
    expected_t = transversal_count(d, n)
    checks.append(
        CheckResult(
            "transversal-count",
            spectrum[0] == expected_t,
            f"enumerated {spectrum[0]}, formula {expected_t}",
        )
    )

    points = [PhaseVector(d, n, coords) for coords in _all_coords(d, 2 * n)]
    comp_ok = all(verify_composition(u, v, cap=matrix_cap) for u in points for v in points)
    checks.append(CheckResult("weyl-composition", comp_ok, f"{len(points) ** 2} pairs"))
    comm_ok = all(verify_commutation(u, v, cap=matrix_cap) for u in points for v in points)
    checks.append(CheckResult("weyl-commutation", comm_ok, f"{len(points) ** 2} pairs"))
    trace_dev = 0.0
    for v in points:
        tr = np.trace(weyl(v, cap=matrix_cap))
        expect = dim if v.is_zero() else 0.0
        trace_dev = max(trace_dev, abs(tr - expect))
    checks.append(CheckResult("weyl-trace", trace_dev <= 1e-12, f"{len(points)} operators, max dev {trace_dev:.2e}"))

    bases = [(m_sub, stabilizer.stabilizer_basis(m_sub, cap=matrix_cap)) for m_sub in lagrangians]
    eigen_dev = 0.0
    gram_dev = 0.0
    for m_sub, basis in bases:
        terms = stabilizer._basis_weyl_terms(m_sub, cap=matrix_cap)
        for zeta, vec in basis:
            for m_vec, mat in terms:
                phase = _omega_power(d, symplectic_form(zeta, m_vec))
                eigen_dev = max(eigen_dev, float(np.max(np.abs(phase * (mat @ vec) - vec))))
        stack = np.array([vec for _, vec in basis])
        gram = np.conj(stack) @ stack.T
        gram_dev = max(gram_dev, float(np.max(np.abs(gram - np.eye(dim)))))
    checks.append(CheckResult("state-eigenvalue", eigen_dev <= 1e-10, f"{count} states, max residual {eigen_dev:.2e}"))
    checks.append(CheckResult("basis-gram", gram_dev <= 1e-10, f"{len(bases)} bases, max dev {gram_dev:.2e}"))

    overlap_dev = 0.0
    order = weyl_tau_order(d)
    stacks = [np.array([vec for _, vec in basis]) for _, basis in bases]
    for mi, (m_sub, basis_m) in enumerate(bases):
        for nj in range(mi, len(bases)):
            n_sub, basis_n = bases[nj]
            k_sub, aligned = stabilizer._alignment_data(m_sub, n_sub)
            base = 1.0 / d ** (n - k_sub.dim)
            amps = np.conj(stacks[mi]) @ stacks[nj].T
            numeric_block = amps.real**2 + amps.imag**2
            for a, (zeta, _) in enumerate(basis_m):
                for b, (iota, _) in enumerate(basis_n):
                    diff = zeta - iota
                    vanishes = any((2 * symplectic_form(diff, g) + delta) % order for g, delta in aligned)
                    exact = 0.0 if vanishes else base
                    overlap_dev = max(overlap_dev, abs(float(numeric_block[a, b]) - exact))
    checks.append(
        CheckResult("overlap-exact-numeric", overlap_dev <= 1e-10, f"{count * count} pairs, max dev {overlap_dev:.2e}")
    )

    exact_ok = True
    numeric_dev = 0.0
    vectors = [vec for _, pairs in bases for _, vec in pairs]
    for t in range(1, t_max + 1):
        rec = potential.frame_potential_recursion(d, n, t)
        comb = potential.frame_potential_combinatorial(d, n, t)
        exact_ok = exact_ok and rec == comb
        brute = potential.frame_potential_bruteforce(
            d, n, t, pair_cap=pair_cap, matrix_cap=matrix_cap, threads=threads, vectors=vectors
        )
        fixed = potential.frame_potential_fixed_state(
            d, n, t, state_cap=state_cap, matrix_cap=matrix_cap, vectors=vectors
        )
        numeric_dev = max(numeric_dev, abs(brute - float(comb)), abs(fixed - float(comb)))
    checks.append(CheckResult("engines-exact", exact_ok, f"t=1..{t_max} recursion == combinatorial"))
    checks.append(
        CheckResult("engines-numeric", numeric_dev <= 1e-9, f"bruteforce and fixed-state, max dev {numeric_dev:.2e}")
    )

    flags = [r.is_t_design for r in potential.design_verdict(d, n, t_max)]
    expected_flags = [_expected_design(d, t) for t in range(1, t_max + 1)]
    checks.append(
        CheckResult(
            "welch-pattern",
            flags == expected_flags,
            "designs: " + " ".join(f"t={t}:{'yes' if f else 'no'}" for t, f in enumerate(flags, start=1)),
        )
    )
    return checks


def _expected_design(d: int, t: int) -> bool:
    if t <= 2:
        return True
    if t == 3:
        return d == 2
    return False


def _all_coords(d: int, width: int):
    return itertools.product(range(d), repeat=width)


def cmd_verify(args) -> int:
    checks = run_verification(
        args.d,
        args.n,
        args.t_max,
        enum_cap=args.enum_cap,
        state_cap=args.state_cap,
        pair_cap=args.pair_cap,
        matrix_cap=args.matrix_cap,
        threads=args.threads,
    )
    lines = [f"verify d={args.d} n={args.n} t-max={args.t_max}"]
    for check in checks:
        status = "PASS" if check.passed else "FAIL"
        lines.append(f"  {check.name:<24} {status}  {check.detail}")
    passed = sum(1 for c in checks if c.passed)
    ok = passed == len(checks)
    lines.append(f"result: {'PASS' if ok else 'FAIL'} ({passed}/{len(checks)} checks)")
    _write("\n".join(lines) + "\n", args.output)
    return 0 if ok else 1


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ResourceCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (NonPrimeModulusError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
