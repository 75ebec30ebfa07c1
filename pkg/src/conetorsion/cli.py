"""Command-line interface.

Subcommands: ``torsion``, ``anomaly``, ``conjecture``, ``zeros`` and
``verify``. Reports go to standard output as JSON (default), CSV or text;
errors go to standard error.

Exit codes: 0 success, 1 a verification check failed, 2 invalid input,
3 a computation did not converge (or the two torsion routes disagree by
more than ``--tolerance``).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import __version__
from .anomaly import boundary_anomaly, cm_decomposition, luck_term, reidemeister
from .errors import ConeTorsionError, ConvergenceError, DomainError
from .specfun import ZeroKind, find_zeros
from .spectra import ConeGeometry
from .torsion import (
    cone_volume_odd,
    conjecture_coefficients,
    conjecture_formula,
    torsion_closed,
    torsion_spectral,
)

SCHEMA_VERSION = "report-v1"
EXIT_OK, EXIT_VERIFY, EXIT_VALIDATION, EXIT_CONVERGENCE = 0, 1, 2, 3


# ---------------------------------------------------------------------------
# Argument handling
# ---------------------------------------------------------------------------

def _positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not (math.isfinite(value) and value > 0):
        raise argparse.ArgumentTypeError(f"must be positive and finite: {text!r}")
    return value


def _add_format(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "csv", "text"), default="json",
                   help="output format (default: json)")


def _add_geometry(p: argparse.ArgumentParser, with_dim: bool = True) -> None:
    if with_dim:
        p.add_argument("--dim", type=int, required=True, choices=(1, 2, 3),
                       help="dimension n of the base sphere S^n")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--alpha", type=float, help="cone angle in radians, 0 < alpha <= pi/2")
    g.add_argument("--alpha-deg", type=float, help="cone angle in degrees, 0 < alpha <= 90")
    p.add_argument("--length", type=float, default=1.0, help="cone length l > 0 (default: 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="conetorsion",
        description="Analytic torsion of metric cones over spheres.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("torsion", help="log of the analytic torsion of a cone")
    _add_geometry(p)
    p.add_argument("--method", choices=("closed", "spectral", "both"), default="closed")
    p.add_argument("--tolerance", type=_positive_float, default=1e-6,
                   help="tolerance for truncated sums and for the closed/spectral difference (default: 1e-6)")
    _add_format(p)

    p = sub.add_parser("anomaly", help="boundary anomaly and the singular contribution")
    _add_geometry(p)
    _add_format(p)

    p = sub.add_parser("conjecture", help="conjectured log T for the cone over S^(2p-1)")
    p.add_argument("--p", type=int, required=True, help="positive integer p")
    _add_geometry(p, with_dim=False)
    _add_format(p)

    p = sub.add_parser("zeros", help="positive zeros of Bessel-type functions")
    p.add_argument("--kind", required=True,
                   help="j, jprime, tplus, tminus, gplus or gminus")
    p.add_argument("--nu", type=float, required=True, help="order nu >= 0")
    p.add_argument("--count", type=int, default=10, help="number of zeros (default: 10)")
    _add_format(p)

    p = sub.add_parser("verify", help="run the built-in check suites")
    p.add_argument("--suite", choices=("all", "specfun", "decomp", "torsion", "anomaly"), default="all")
    _add_format(p)
    return parser


def _alpha(args) -> float:
    if args.alpha is not None:
        return float(args.alpha)
    return math.radians(args.alpha_deg)


# ---------------------------------------------------------------------------
# Report builders. Each returns (report, csv rows, exit code).
# ---------------------------------------------------------------------------

Rows = List[Tuple[str, object]]


def _fraction_json(c: Fraction) -> Dict[str, int]:
    return {"numerator": c.numerator, "denominator": c.denominator}


def _coefficients_json(coeffs: Dict[int, Fraction]) -> List[dict]:
    return [dict(power=k, **_fraction_json(c)) for k, c in sorted(coeffs.items())]


def _breakdown_json(b) -> dict:
    return {
        "volume_term": b.volume_term,
        "extra_terms": [{"name": n, "value": v} for n, v in b.extra_terms],
    }


def cmd_torsion(args) -> Tuple[dict, Rows, int]:
    geom = ConeGeometry(args.dim, _alpha(args), args.length)
    results = {}
    if args.method in ("closed", "both"):
        results["closed"] = torsion_closed(geom)
    if args.method in ("spectral", "both"):
        results["spectral"] = torsion_spectral(geom, tolerance=args.tolerance)
    primary = results["closed"] if "closed" in results else results["spectral"]

    breakdown = _breakdown_json(primary)
    singular = cm_decomposition(geom).singular_term
    breakdown["singular_term"] = singular
    result = {"log_torsion": primary.log_torsion, "breakdown": breakdown}
    rows: Rows = [("volume_term", primary.volume_term)]
    rows += list(primary.extra_terms)
    rows.append(("singular_term", singular))
    if args.dim in (1, 3):
        conj = conjecture_formula((args.dim + 1) // 2, geom.alpha, geom.length)
        result["conjecture"] = conj
        rows.append(("conjecture", conj))
    code = EXIT_OK
    if args.method == "both":
        diff = results["spectral"].log_torsion - results["closed"].log_torsion
        result["methods"] = {
            "closed": results["closed"].log_torsion,
            "spectral": results["spectral"].log_torsion,
            "difference": diff,
        }
        rows += [("log_torsion_closed", results["closed"].log_torsion),
                 ("log_torsion_spectral", results["spectral"].log_torsion),
                 ("difference", diff)]
        if abs(diff) >= args.tolerance:
            code = EXIT_CONVERGENCE
    rows.append(("log_torsion", primary.log_torsion))

    spectral = results.get("spectral")
    diagnostics = {
        "truncation": spectral.truncation if spectral else None,
        "tail_estimate": spectral.tail_estimate if spectral else 0.0,
    }
    if spectral:
        diagnostics["components"] = [{"name": n, "value": v} for n, v in spectral.components]
    report = {
        "input": {"dim": geom.dim, "alpha": geom.alpha, "length": geom.length,
                  "method": args.method, "tolerance": args.tolerance},
        "result": result,
        "diagnostics": diagnostics,
    }
    return report, rows, code


def cmd_anomaly(args) -> Tuple[dict, Rows, int]:
    geom = ConeGeometry(args.dim, _alpha(args), args.length)
    an = boundary_anomaly(geom)
    cm = cm_decomposition(geom)
    result = {
        "anomaly": an.value,
        "parity": an.parity,
        "coefficients": _coefficients_json(an.exact_coefficients),
        "reidemeister": reidemeister(geom),
        "boundary_euler_term": luck_term(geom),
        "predicted_smooth": cm.predicted_smooth,
        "log_torsion": cm.actual,
        "singular_term": cm.singular_term,
    }
    rows: Rows = [(k, result[k]) for k in ("anomaly", "reidemeister", "boundary_euler_term",
                                           "predicted_smooth", "log_torsion", "singular_term")]
    report = {
        "input": {"dim": geom.dim, "alpha": geom.alpha, "length": geom.length},
        "result": result,
        "diagnostics": {},
    }
    return report, rows, EXIT_OK


def cmd_conjecture(args) -> Tuple[dict, Rows, int]:
    alpha = _alpha(args)
    value = conjecture_formula(args.p, alpha, args.length)
    coeffs = conjecture_coefficients(args.p)
    volume_term = 0.5 * math.log(cone_volume_odd(args.p, alpha, args.length))
    result = {
        "log_torsion": value,
        "breakdown": {
            "volume_term": volume_term,
            "extra_terms": [{"name": f"{c}*sin^{k}(alpha)", "value": float(c) * math.sin(alpha) ** k}
                            for k, c in coeffs.items()],
        },
        "coefficients": _coefficients_json(coeffs),
    }
    rows: Rows = [("volume_term", volume_term)]
    rows += [(t["name"], t["value"]) for t in result["breakdown"]["extra_terms"]]
    rows.append(("log_torsion", value))
    report = {
        "input": {"p": args.p, "alpha": alpha, "length": args.length},
        "result": result,
        "diagnostics": {},
    }
    return report, rows, EXIT_OK


def cmd_zeros(args) -> Tuple[dict, Rows, int]:
    kind = ZeroKind.parse(args.kind)
    zeros = [float(z) for z in find_zeros(kind, args.nu, args.count)]
    report = {
        "input": {"kind": kind.value, "nu": args.nu, "count": args.count},
        "result": {"zeros": zeros},
        "diagnostics": {},
    }
    rows: Rows = [(str(k), z) for k, z in enumerate(zeros, start=1)]
    return report, rows, EXIT_OK


VERIFY_COLUMNS = ("name", "expected", "got", "tolerance", "status")


def cmd_verify(args) -> Tuple[dict, Rows, int]:
    from .verification import run_suites

    checks = run_suites(args.suite)
    passed = all(c.passed for c in checks)
    table = [{"name": c.name, "expected": c.expected, "got": c.got,
              "tolerance": c.tolerance, "status": c.status} for c in checks]
    report = {
        "input": {"suite": args.suite},
        "result": {"passed": passed, "checks": table},
        "diagnostics": {},
    }
    return report, table, EXIT_OK if passed else EXIT_VERIFY


COMMANDS = {
    "torsion": cmd_torsion,
    "anomaly": cmd_anomaly,
    "conjecture": cmd_conjecture,
    "zeros": cmd_zeros,
    "verify": cmd_verify,
}


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

def render(command: str, fmt: str, report: dict, rows) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True) + "\n"
    buf = io.StringIO()
    if command == "verify":
        if fmt == "csv":
            w = csv.DictWriter(buf, fieldnames=VERIFY_COLUMNS, lineterminator="\n")
            w.writeheader()
            w.writerows(rows)
        else:
            widths = {c: max(len(c), *(len(str(r[c])) for r in rows)) if rows else len(c) for c in VERIFY_COLUMNS}
            line = "  ".join(c.ljust(widths[c]) for c in VERIFY_COLUMNS)
            buf.write(line.rstrip() + "\n")
            for r in rows:
                buf.write("  ".join(str(r[c]).ljust(widths[c]) for c in VERIFY_COLUMNS).rstrip() + "\n")
        return buf.getvalue()
    if fmt == "csv":
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["term", "value"])
        for name, value in rows:
            w.writerow([name, repr(value)])
        return buf.getvalue()
    width = max(len(n) for n, _ in rows) if rows else 0
    for name, value in rows:
        buf.write(f"{name.ljust(width)}  {value!r}\n")
    return buf.getvalue()


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        report, rows, code = COMMANDS[args.command](args)
    except ConvergenceError as exc:
        print(f"conetorsion: did not converge: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except OverflowError as exc:
        print(f"conetorsion: numeric overflow: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except (DomainError, ConeTorsionError) as exc:
        print(f"conetorsion: invalid input: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    report = {"schema": SCHEMA_VERSION, "command": args.command, **report}
    report["diagnostics"]["wall_time_ms"] = (time.perf_counter() - start) * 1000.0
    sys.stdout.write(render(args.command, args.format, report, rows))
    if code == EXIT_CONVERGENCE:
        print("conetorsion: closed and spectral values differ by more than the tolerance", file=sys.stderr)
    elif code == EXIT_VERIFY:
        print("conetorsion: some checks failed", file=sys.stderr)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
