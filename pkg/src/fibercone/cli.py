"""Command-line interface: classify, kernel, depth, powers, sweep, verify-paper."""
from __future__ import annotations

import argparse
import json
import sys

from . import refcases
from .classify import certify, classify_ci, classify_hypersurface, classify_symmetric
from .depth import (
    InconclusiveDepthError,
    UntrustedTruncationError,
    depth_certificate,
    trusted_polys,
)
from .kernel import compute_kernel
from .monomials import mu_power_sequence, parse_ideal
from .sweep import SweepSpec, report_conjecture, run_sweep

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2


def _int_list(text: str) -> list[int]:
    try:
        return [int(p) for p in text.replace(" ", "").split(",") if p]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fibercone",
        description="Exact fiber-cone computations for monomial ideals in two variables.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="closed-form classification of an ideal family member")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--symmetric", nargs=3, type=int, metavar=("A", "B", "C"))
    group.add_argument("--ci", nargs=4, type=int, metavar=("A", "B", "C", "D"))
    group.add_argument("--hyper", nargs=2, type=_int_list, metavar=("A_LIST", "B_LIST"))
    p.add_argument("--certify", action="store_true", help="verify against the kernel computation")
    p.add_argument("--slack", type=int, default=3, help="extra degrees beyond the prediction")
    p.add_argument("--json", action="store_true", help="output is always JSON; accepted for symmetry")

    p = sub.add_parser("kernel", help="brute-force defining ideal up to a degree bound")
    p.add_argument("--ideal", required=True, help='exponent tuples, e.g. "4,0; 3,2; 2,3; 0,4"')
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--minimalize", action="store_true", help="reduce non-minimal input generators")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("depth", help="depth certificate from a stability-gated kernel")
    p.add_argument("--ideal", required=True)
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--minimalize", action="store_true")
    p.add_argument("--prime", type=int, default=32003)
    p.add_argument("--trials", type=int, default=64)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("powers", help="minimal generator counts of ideal powers")
    p.add_argument("--ideal", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--minimalize", action="store_true")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("sweep", help="run a parameter sweep from a spec file")
    p.add_argument("--spec", required=True, help="JSON sweep specification")
    p.add_argument("--store", required=True, help="JSONL result store (appended, resumable)")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--report", action="store_true", help="also print the conjecture report")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser(
        "verify-paper", help="recompute every bundled reference example; nonzero exit on mismatch"
    )
    p.add_argument("--json", action="store_true")
    return parser


def _emit(data: dict) -> None:
    print(json.dumps(data, indent=2))


def _cmd_classify(args: argparse.Namespace) -> int:
    try:
        if args.symmetric:
            cl = classify_symmetric(*args.symmetric)
        elif args.ci:
            cl = classify_ci(*args.ci)
        else:
            cl = classify_hypersurface(args.hyper[0], args.hyper[1])
        if args.certify or cl.oracle_deferred:
            cl = certify(cl, slack=args.slack)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(cl.to_json())
    return EXIT_MISMATCH if cl.certification.status == "mismatch" else EXIT_OK


def _cmd_kernel(args: argparse.Namespace) -> int:
    try:
        I = parse_ideal(args.ideal, minimalize_input=args.minimalize)
        report = compute_kernel(I, args.max_degree)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(report.to_json())
    return EXIT_OK


def _cmd_depth(args: argparse.Namespace) -> int:
    try:
        I = parse_ideal(args.ideal, minimalize_input=args.minimalize)
        report = compute_kernel(I, args.max_degree)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        polys = trusted_polys(report, args.prime)
        cert = depth_certificate(polys, args.prime, args.trials, args.seed)
    except (UntrustedTruncationError, InconclusiveDepthError) as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    _emit(cert.to_json())
    return EXIT_OK


def _cmd_powers(args: argparse.Namespace) -> int:
    try:
        I = parse_ideal(args.ideal, minimalize_input=args.minimalize)
        seq = mu_power_sequence(I, args.k)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit({"ideal": I.to_json(), "mu_powers": seq})
    return EXIT_OK


def _cmd_sweep(args: argparse.Namespace) -> int:
    try:
        with open(args.spec, encoding="utf-8") as fh:
            spec = SweepSpec.from_json(json.load(fh))
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: cannot load sweep spec: {exc}", file=sys.stderr)
        return EXIT_USAGE
    summary = run_sweep(spec, args.store, jobs=args.jobs, progress=not args.json)
    report = report_conjecture(args.store) if args.report else None
    if args.json:
        out = {"summary": summary}
        if report is not None:
            out["report"] = report
        _emit(out)
    else:
        print(f"total records: {summary['total']} (skipped {summary['already_done']})")
        for section in ("by_status", "by_case", "by_depth"):
            rows = summary[section]
            print(f"{section[3:]:>14}: " + "  ".join(f"{k}={v}" for k, v in sorted(rows.items())))
        print(f"    mismatches: {summary['mismatches']}")
        if report is not None:
            print("conjecture report:")
            for section in ("counterexamples", "depth_zero", "cm_mu_violations", "inconclusive"):
                print(f"  {section}: {report[section] if report[section] else 'none'}")
    mismatch = summary["mismatches"] > 0 or summary["by_status"].get("Inconclusive", 0) > 0
    return EXIT_MISMATCH if mismatch else EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    results = refcases.run_all(verbose=not args.json)
    failures = [(name, detail) for name, detail in results if detail is not None]
    if args.json:
        _emit(
            {
                "checks": [
                    {"name": name, "ok": detail is None, "detail": detail}
                    for name, detail in results
                ],
                "failures": len(failures),
            }
        )
    else:
        print(f"{len(results) - len(failures)}/{len(results)} checks passed")
    return EXIT_MISMATCH if failures else EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "classify": _cmd_classify,
        "kernel": _cmd_kernel,
        "depth": _cmd_depth,
        "powers": _cmd_powers,
        "sweep": _cmd_sweep,
        "verify-paper": _cmd_verify,
    }
    return handlers[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
