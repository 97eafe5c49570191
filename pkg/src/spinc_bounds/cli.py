"""Command-line front end.

Exit codes: 0 success, 2 parity violation, 3 malformed input,
4 a consistency check failed.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .bounds import bound_closed_form, bound_from_k0
from .comass import NotSkew, PairingFailure, TwoForm, frame_oracle, norm, rotation_numbers
from .fsgeometry import CHART_RADIUS, MAX_STEP, MIN_STEP, sample_chart_points, verify_identities
from .indextheory import (
    CompleteIntersection,
    ParityViolation,
    hilbert_polynomial,
    hyperplane_section,
    index,
    index_lattice_sum,
    index_residue,
    valid_parity,
)

EXIT_PARITY = 2
EXIT_MALFORMED = 3
EXIT_CHECK_FAILED = 4

THREADS_ENV = "SPINC_BOUNDS_THREADS"
DEFAULT_K_MAX = 10

RECORD_SCHEMA = {
    "type": "object",
    "required": ["manifold", "bound", "checks"],
    "properties": {
        "manifold": {
            "type": "object",
            "required": ["n", "degrees"],
            "properties": {
                "n": {"type": "integer", "minimum": 1},
                "degrees": {"type": "array", "items": {"type": "integer", "minimum": 1}},
            },
        },
        "index": {
            "type": "object",
            "required": ["k", "value"],
            "properties": {
                "k": {"type": "integer"},
                "value": {"type": "integer"},
                "residue": {"type": "integer"},
                "lattice_sum": {"type": "integer"},
            },
        },
        "hilbert": {
            "type": "object",
            "required": ["coeffs", "text", "zeros"],
            "properties": {
                "coeffs": {"type": "array", "items": {"type": "string"}},
                "text": {"type": "string"},
                "zeros": {"type": "array", "items": {"type": "integer"}},
            },
        },
        "bound": {
            "type": "object",
            "required": ["value", "case", "k0"],
            "properties": {
                "value": {"type": "integer"},
                "case": {"enum": ["fano", "spin_even", "nonspin", "spin_odd"]},
                "k0": {"type": "integer", "minimum": 0},
            },
        },
        "checks": {
            "type": "object",
            "required": ["triple_agreement", "recursion", "symmetry", "table_search"],
            "properties": {
                "triple_agreement": {"type": "boolean"},
                "recursion": {"type": ["boolean", "null"]},
                "symmetry": {"type": "boolean"},
                "table_search": {"type": "boolean"},
            },
        },
    },
}


class MalformedInput(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_MALFORMED, f"{self.prog}: error: {message}\n")


def parse_degrees(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        degrees = tuple(int(tok) for tok in text.split(","))
    except ValueError as exc:
        raise MalformedInput(f"degrees must be a comma-separated list of integers: {text!r}") from exc
    if any(a < 1 for a in degrees):
        raise MalformedInput(f"degrees must be positive: {text!r}")
    return degrees


def parse_range(text: str, lo: int) -> range:
    """``"3"`` means ``lo..3``; ``"2-5"`` means ``2..5``."""
    try:
        if "-" in text:
            a, b = (int(t) for t in text.split("-", 1))
        else:
            a, b = lo, int(text)
    except ValueError as exc:
        raise MalformedInput(f"bad range {text!r}") from exc
    if a < lo or b < a:
        raise MalformedInput(f"empty or invalid range {text!r}")
    return range(a, b + 1)


def _manifold(n: int, degrees: str) -> CompleteIntersection:
    try:
        return CompleteIntersection(n, parse_degrees(degrees))
    except ValueError as exc:
        raise MalformedInput(str(exc)) from exc


@dataclass(frozen=True)
class ScanSpec:
    n_range: range
    r_range: range
    degree_max: int
    output_format: str = "json"
    k_max: int = DEFAULT_K_MAX

    def __post_init__(self):
        if not self.n_range or not self.r_range:
            raise MalformedInput("scan ranges must be nonempty")
        if self.degree_max < 1:
            raise MalformedInput("degree_max must be >= 1")
        if self.output_format not in ("json", "csv", "markdown"):
            raise MalformedInput(f"unknown format {self.output_format!r}")

    def family(self) -> list[CompleteIntersection]:
        members = [
            CompleteIntersection(n, degrees)
            for n in self.n_range
            for r in self.r_range
            for degrees in itertools.combinations_with_replacement(range(1, self.degree_max + 1), r)
        ]
        return sorted(members, key=lambda ci: (ci.n, ci.r, ci.degrees))


def _valid_ks(ci: CompleteIntersection, k_max: int) -> list[int]:
    return [k for k in range(-k_max, k_max + 1) if valid_parity(ci, k)]


def consistency_checks(ci: CompleteIntersection, k_max: int = DEFAULT_K_MAX) -> dict:
    ks = _valid_ks(ci, k_max)
    triple = all(index(ci, k) == index_residue(ci, k) == index_lattice_sum(ci, k) for k in ks)
    symmetry = all(index(ci, -k) == (-1) ** ci.n * index(ci, k) for k in ks)
    recursion = None
    if ci.n >= 2:
        w = hyperplane_section(ci)
        recursion = all(index(ci, k) - index(ci, k - 2) == index(w, k - 1) for k in ks)
    table_search = bound_closed_form(ci).value == bound_from_k0(ci).value
    return {
        "triple_agreement": triple,
        "recursion": recursion,
        "symmetry": symmetry,
        "table_search": table_search,
    }


def checks_pass(checks: dict) -> bool:
    return all(v is not False for v in checks.values())


def hilbert_record(ci: CompleteIntersection) -> dict:
    poly = hilbert_polynomial(ci)
    zeros = poly.zeros_in(k for k in range(-2 * ci.n, 2 * ci.n + 1) if valid_parity(ci, k))
    return {"coeffs": [str(c) for c in poly.coeffs], "text": str(poly), "zeros": zeros}


def manifold_record(
    ci: CompleteIntersection,
    k: int | None = None,
    verify: bool = False,
    with_hilbert: bool = False,
    k_max: int = DEFAULT_K_MAX,
) -> dict:
    record: dict = {"manifold": {"n": ci.n, "degrees": list(ci.degrees)}}
    if k is not None:
        entry = {"k": k, "value": int(index(ci, k, strict=True))}
        if verify:
            entry["residue"] = int(index_residue(ci, k, strict=True))
            entry["lattice_sum"] = int(index_lattice_sum(ci, k, strict=True))
        record["index"] = entry
    if with_hilbert:
        record["hilbert"] = hilbert_record(ci)
    record["bound"] = bound_from_k0(ci).as_dict()
    record["checks"] = consistency_checks(ci, k_max)
    return record


CSV_FIELDS = [
    "n", "r", "degrees", "spin", "case", "bound", "bound_table", "k0",
    "triple_agreement", "recursion", "symmetry", "table_search",
]


def _row(ci: CompleteIntersection, record: dict) -> dict:
    checks = record["checks"]
    return {
        "n": ci.n,
        "r": ci.r,
        "degrees": ";".join(map(str, ci.degrees)),
        "spin": ci.is_spin,
        "case": record["bound"]["case"],
        "bound": record["bound"]["value"],
        "bound_table": bound_closed_form(ci).value,
        "k0": record["bound"]["k0"],
        **{key: checks[key] for key in ("triple_agreement", "recursion", "symmetry", "table_search")},
    }


def _thread_count() -> int:
    raw = os.environ.get(THREADS_ENV, "")
    try:
        cap = int(raw) if raw else os.cpu_count() or 1
    except ValueError as exc:
        raise MalformedInput(f"{THREADS_ENV} must be an integer, got {raw!r}") from exc
    return max(1, cap)


def run_scan(spec: ScanSpec) -> tuple[list[CompleteIntersection], list[dict]]:
    family = spec.family()
    with ThreadPoolExecutor(max_workers=_thread_count()) as pool:
        # map preserves submission order, so output does not depend on scheduling
        records = list(pool.map(lambda ci: manifold_record(ci, k_max=spec.k_max), family))
    return family, records


def format_scan(spec: ScanSpec, family, records) -> str:
    if spec.output_format == "json":
        return json.dumps(records, indent=2, sort_keys=True) + "\n"
    rows = [_row(ci, rec) for ci, rec in zip(family, records)]
    if spec.output_format == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        return buf.getvalue()
    lines = ["| " + " | ".join(CSV_FIELDS) + " |", "|" + "---|" * len(CSV_FIELDS)]
    for row in rows:
        lines.append("| " + " | ".join(str(row[f]) for f in CSV_FIELDS) + " |")
    return "\n".join(lines) + "\n"


def read_matrix(path: str) -> np.ndarray:
    try:
        text = sys.stdin.read() if path == "-" else open(path).read()
    except OSError as exc:
        raise MalformedInput(f"cannot read {path}: {exc}") from exc
    rows = [line.split() for line in text.splitlines() if line.strip()]
    try:
        mat = np.array([[float(x) for x in row] for row in rows])
    except ValueError as exc:
        raise MalformedInput(f"non-numeric entry in {path}") from exc
    if mat.ndim != 2 or any(len(row) != len(rows) for row in rows):
        raise MalformedInput(f"{path} does not hold a square matrix")
    return mat


def _emit(args, record: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(record, sort_keys=True))
    else:
        print(text)


def cmd_index(args) -> int:
    ci = _manifold(args.n, args.degrees)
    record = manifold_record(ci, k=args.k, verify=args.verify)
    entry = record["index"]
    text = str(entry["value"])
    if args.verify:
        text += f"\nresidue: {entry['residue']}\nlattice_sum: {entry['lattice_sum']}"
    _emit(args, record, text)
    if args.verify and not entry["value"] == entry["residue"] == entry["lattice_sum"]:
        return EXIT_CHECK_FAILED
    return 0


def cmd_hilbert(args) -> int:
    ci = _manifold(args.n, args.degrees)
    record = manifold_record(ci, with_hilbert=True)
    h = record["hilbert"]
    zeros = ", ".join(map(str, h["zeros"]))
    _emit(args, record, f"P(k) = {h['text']}\nzeros: {{{zeros}}}")
    return 0


def cmd_bound(args) -> int:
    ci = _manifold(args.n, args.degrees)
    record = manifold_record(ci)
    b = record["bound"]
    agree = record["checks"]["table_search"]
    text = f"{b['value']} {b['case']} k0={b['k0']} {'agree' if agree else 'DISAGREE'}"
    note = bound_closed_form(ci).note
    if note and args.format != "json":
        text += f"\nnote: {note}"
    _emit(args, record, text)
    return 0 if agree else EXIT_CHECK_FAILED


def cmd_scan(args) -> int:
    spec = ScanSpec(
        n_range=parse_range(args.n, 1),
        r_range=parse_range(args.r, 0),
        degree_max=args.degree_max,
        output_format=args.format,
        k_max=args.k_max,
    )
    family, records = run_scan(spec)
    out = format_scan(spec, family, records)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return 0 if all(checks_pass(r["checks"]) for r in records) else EXIT_CHECK_FAILED


def cmd_norm(args) -> int:
    try:
        alpha = TwoForm(read_matrix(args.matrix))
        value = norm(alpha)
        lams = rotation_numbers(alpha)
    except (NotSkew, PairingFailure) as exc:
        raise MalformedInput(str(exc)) from exc
    record = {"dim": alpha.dim, "norm": value, "rotation_numbers": lams.tolist()}
    text = f"{value:.12g}"
    if args.oracle_samples:
        record["frame_oracle"] = frame_oracle(alpha, args.oracle_samples, seed=args.seed)
        text += f"\nframe_oracle: {record['frame_oracle']:.12g}"
    _emit(args, record, text)
    return 0


def cmd_fscheck(args) -> int:
    if args.n < 1 or args.samples < 1:
        raise MalformedInput("n and samples must be positive")
    if not 0 < args.radius < CHART_RADIUS:
        raise MalformedInput(f"radius must lie in (0, {CHART_RADIUS})")
    if not MIN_STEP <= args.step <= MAX_STEP:
        raise MalformedInput(f"step must lie in [{MIN_STEP}, {MAX_STEP}]")
    points = sample_chart_points(args.n, args.samples, radius=args.radius, seed=args.seed)
    reports = [verify_identities(p, h=args.step, tol=args.tol) for p in points]
    worst = {
        key: max(getattr(r, key) for r in reports)
        for key in ("kappa_residual", "omega_norm_residual", "kappa_rho_residual",
                    "rho_omega_residual", "einstein_residual")
    }
    ok = all(r.ok for r in reports)
    record = {
        "n": args.n,
        "samples": len(reports),
        "step": args.step,
        "expected_kappa": 4 * args.n * (args.n + 1),
        "kappa_at_origin": reports[0].kappa,
        "max_residuals": worst,
        "ok": ok,
    }
    lines = [f"kappa = {reports[0].kappa:.8f} (expected {4 * args.n * (args.n + 1)})"]
    lines += [f"max {key}: {value:.3e}" for key, value in worst.items()]
    lines.append("ok" if ok else "FAILED")
    _emit(args, record, "\n".join(lines))
    return 0 if ok else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="spinc-bounds", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def manifold_args(p):
        p.add_argument("--n", type=int, required=True, help="complex dimension")
        p.add_argument("--degrees", default="", help="comma-separated degrees; empty for CP^n")
        p.add_argument("--format", choices=["text", "json"], default="text")

    p = sub.add_parser("index", help="spin^c Dirac index for canonical bundle H^k")
    manifold_args(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--verify", action="store_true", help="also print residue and lattice-sum values")
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("hilbert", help="Hilbert polynomial and its zeros")
    manifold_args(p)
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("bound", help="scalar-curvature bound and minimal k0")
    manifold_args(p)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("scan", help="tabulate bounds and checks over a family")
    p.add_argument("--n", default="3", help="dimension range, e.g. 3 or 2-5")
    p.add_argument("--r", default="2", help="codimension range, e.g. 2 or 0-3")
    p.add_argument("--degree-max", type=int, default=4)
    p.add_argument("--k-max", type=int, default=DEFAULT_K_MAX)
    p.add_argument("--format", choices=["json", "csv", "markdown"], default="json")
    p.add_argument("--output", help="write to this file instead of stdout")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("norm", help="norm of a 2-form given as a skew matrix file")
    p.add_argument("matrix", help="whitespace-separated rows, one per line; '-' for stdin")
    p.add_argument("--oracle-samples", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_norm)

    p = sub.add_parser("fscheck", help="finite-difference Fubini-Study curvature check")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, default=10)
    p.add_argument("--step", type=float, default=1e-3)
    p.add_argument("--tol", type=float, default=1e-4)
    p.add_argument("--radius", type=float, default=2.0, help="sample points uniformly in |z| < radius")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_fscheck)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParityViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARITY
    except MalformedInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
