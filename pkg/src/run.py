"""Command-line entry point: gen | verify | stats | search | export-subparts."""
import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional

# Add src to path
sys.path.insert(0, str(Path(__file__).parent))

from pydantic import ValidationError

from orchestrator.workflow import MubWorkflow
from utils.run_config import RunConfig

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mub-circuits",
        description="Circuits for complete sets of mutually unbiased bases on n qubits.",
    )
    parser.add_argument("--config", default=None, help="path to a config.yaml")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate circuits U(j)")
    gen.add_argument("-n", type=int, required=True, help="number of qubits")
    gen.add_argument("-j", default="all", help='index, range "a-b" or "all"')
    gen.add_argument("--poly", help='irreducible polynomial, e.g. "x^3+x+1" or "0xb"')
    gen.add_argument("--format", choices=["json", "qasm", "text"], default="json")
    gen.add_argument("--sample", type=int, help="random indices instead of -j")
    gen.add_argument("--seed", type=int, help="seed for --sample")

    verify = sub.add_parser("verify", help="verify the complete set numerically")
    verify.add_argument("-n", type=int, required=True)
    verify.add_argument("--poly")

    stats = sub.add_parser("stats", help="gate statistics")
    stats.add_argument("-n", type=int, required=True)
    stats.add_argument("--poly")
    stats.add_argument("--sample", type=int, help="estimate from random indices")
    stats.add_argument("--seed", type=int)
    stats.add_argument("--compare-polys", action="store_true",
                       help="compare CZ structures across all irreducibles of degree n")

    search = sub.add_parser("search", help="diagonal-extension MUB search")
    search.add_argument("-n", type=int, required=True)
    search.add_argument("--strategy", choices=["exhaustive", "greedy"])
    search.add_argument("--limit", type=int, help="maximum number of extension steps")
    search.add_argument("--general-phases", action="store_true",
                        help="use 2d-th roots of unity instead of fourth roots")
    search.add_argument("--resume", help="JSON file for resumable progress")

    export = sub.add_parser("export-subparts", help="catalog of CZ(m) layers")
    export.add_argument("-n", type=int, required=True)
    return parser


def _print_checks(report: dict):
    for check in report["checks"]:
        mark = "✓" if check["passed"] else "✗"
        detail = check.get("max_deviation")
        extra = f" (max deviation {detail:.1e})" if isinstance(detail, float) else ""
        witness = check.get("witness") or check.get("error")
        extra += f" witness: {witness}" if not check["passed"] and witness is not None else ""
        print(f"  {mark} {check['name']}{extra}")


def main(argv: Optional[List[str]] = None) -> int:
    """Main execution function."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    try:
        workflow = MubWorkflow(args.config)
        if args.command == "gen":
            run = RunConfig(
                n=args.n, poly=args.poly, selection=args.j, output_format=args.format,
                sample=args.sample, seed=args.seed,
                ceiling=workflow.config['generation']['max_enumerated_indices'],
            )
            sys.stdout.write(workflow.cmd_gen(run))
            return EXIT_OK

        if args.command == "verify":
            report = workflow.cmd_verify(args.n, args.poly)
            print(f"Verification n={report['n']} poly={report['poly']}")
            _print_checks(report)
            if report["passed"]:
                print(f"✅ {(1 << args.n) + 1} bases mutually unbiased")
                return EXIT_OK
            print(f"❌ {report['failures']} check(s) failed")
            return EXIT_FAILED

        if args.command == "stats":
            report = workflow.cmd_stats(args.n, args.poly, args.sample, args.seed, args.compare_polys)
            shown = {k: v for k, v in report.items() if k != "report_file"}
            print(json.dumps(shown, indent=2, default=str))
            closed = report["closed_forms"]
            return EXIT_OK if closed.get("passed", True) else EXIT_FAILED

        if args.command == "search":
            report = workflow.cmd_search(args.n, args.strategy, args.limit,
                                         args.general_phases, args.resume)
            print(f"Search n={args.n} ({report['strategy']}): {report['status']}")
            resumed = report.get("resumed_from")
            if resumed:
                print(f"  resumed: {resumed['sets_found']} set(s) stored, "
                      f"{resumed['explored_roots']} root(s) explored, status {resumed['status']}")
            for found in report["sets"]:
                cert = "certified" if found["certification"]["certified"] else "NOT certified"
                print(f"  set of {found['size']} bases, {cert}: {found['diagonals']}")
            return EXIT_OK if report["passed"] else EXIT_FAILED

        if args.command == "export-subparts":
            print(json.dumps(workflow.cmd_export_subparts(args.n), indent=2))
            return EXIT_OK

    except (ValidationError, ValueError) as e:
        print(f"❌ Error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as e:
        print(f"\n❌ Error: {e}", file=sys.stderr)
        import traceback
        traceback.print_exc()
        return EXIT_FAILED
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
