#!/usr/bin/env python3
"""
Main entry point for the poset polytopes toolkit.
Provides the command-line interface for pair analyses, Ehrhart polynomials
and exhaustive verification sweeps.
"""

import argparse
import json
import re
import sys
from pathlib import Path
from typing import List, Optional, Tuple, Union

import sympy

from src.analysis.report import analyze_pair, pair_polytopes
from src.analysis.sweep import (
    CHECK_GROUPS,
    THEOREM_GROUPS,
    SweepOptions,
    mismatch_count,
    parse_groups,
    parse_theorems,
    summarize,
    sweep,
)
from src.data.loader import load_pair, records_to_jsonl, render_json, save_polytope, save_report
from src.gamma.construct import PairingKind, gamma
from src.geometry.ehrhart import ehrhart
from src.utils.config import get_analysis_config, get_config, get_reporting_config, load_config
from src.utils.logger import PerformanceLogger, get_logger, setup_logging


def _exact(value: sympy.Rational) -> Union[int, str]:
    """Integers stay integers; other rationals become "p/q" strings."""
    return int(value) if value.q == 1 else f"{value.p}/{value.q}"


class PolytopePipeline:
    """Runs one CLI command and renders its output."""

    def __init__(self, output_format: Optional[str] = None,
                 output_path: Optional[str] = None):
        """
        Initialize the pipeline.

        Args:
            output_format: "json" or "text" (reporting.format by default)
            output_path: Write the rendered output here instead of stdout
        """
        self.config = get_config()
        self.logger = get_logger("src.cli")
        self.output_format = output_format or get_reporting_config().format
        self.output_path = output_path

    def emit(self, text: str, name: str) -> None:
        """Print or save the rendered output."""
        if self.output_path:
            path = save_report(text, self.output_path, name)
            self.logger.info(f"Output written to {path}")
        else:
            print(text)

    def run_analyze(self, first_path: str, second_path: str, kinds: Optional[List[PairingKind]],
                    include_toric: Optional[bool], include_equivalence: Optional[bool],
                    degree_cap: Optional[int], export_dir: Optional[str] = None) -> bool:
        """
        Full analysis of one poset pair.

        Args:
            export_dir: Also write every built polytope here in the export format

        Returns:
            True if every criterion agreed with the geometry
        """
        first, second = load_pair(first_path, second_path)
        with PerformanceLogger(self.logger, f"analysis of {first.describe()} / {second.describe()}"):
            report = analyze_pair(
                first,
                second,
                kinds=kinds,
                include_toric=include_toric,
                include_equivalence=include_equivalence,
                degree_cap=degree_cap,
            )
        text = report.to_text() if self.output_format == "text" else render_json(report.to_dict())
        self.emit(text, "analysis.json")
        if export_dir:
            self.export_polytopes(first, second, kinds, export_dir)
        mismatches = report.mismatches()
        if mismatches:
            self.logger.error(f"Analysis mismatches: {', '.join(mismatches)}")
        return not mismatches

    def export_polytopes(self, first, second, kinds: Optional[List[PairingKind]], export_dir: str) -> None:
        """Write O(P), C(P) and the Gamma polytopes as <name>.json files."""
        kinds = kinds or [PairingKind.parse(k) for k in get_analysis_config().kinds]
        for name, polytope in pair_polytopes(first, second, kinds).items():
            stem = re.sub(r"[^A-Za-z0-9]+", "_", name).strip("_")
            path = save_polytope(polytope, str(Path(export_dir) / f"{stem}.json"))
            self.logger.info(f"{name} exported to {path}")

    def run_ehrhart(self, first_path: str, second_path: str, kind: PairingKind) -> bool:
        """Print the Ehrhart coefficients c_0..c_d of one pairing."""
        first, second = load_pair(first_path, second_path)
        polynomial = ehrhart(gamma(kind, first, second))
        self.logger.info(f"i(Gamma_{kind.value}, n) = {polynomial}")
        coefficients = [_exact(c) for c in polynomial.coefficients]
        if self.output_format == "text":
            self.emit(str(polynomial), "ehrhart.txt")
        else:
            self.emit(json.dumps(coefficients), "ehrhart.json")
        return True

    def run_sweep(self, d: int, options: SweepOptions, jobs: Optional[int]) -> bool:
        """
        Sweep all poset pairs on d elements.

        Returns:
            True if no record carries a mismatch or an error
        """
        records = sweep(d, options, jobs)
        summary = summarize(records)
        self.logger.info(f"Sweep d={d} summary:\n{summary.to_string(index=False)}")
        if self.output_format == "text":
            self.emit(summary.to_string(index=False), f"sweep_d{d}.txt")
        else:
            self.emit(records_to_jsonl(records), f"sweep_d{d}.jsonl")
        failures = mismatch_count(records)
        if failures:
            self.logger.error(f"{failures} of {len(records)} sweep records report a mismatch")
        return failures == 0


def _kinds(text: str) -> List[PairingKind]:
    kinds = [PairingKind.parse(part) for part in text.split(",") if part.strip()]
    if not kinds or any(k not in PairingKind.pairings() for k in kinds):
        raise argparse.ArgumentTypeError(f"expected a comma-separated subset of OO,OC,CC, got {text!r}")
    return kinds


def _pairing(text: str) -> PairingKind:
    try:
        kind = PairingKind.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from e
    if kind not in PairingKind.pairings():
        raise argparse.ArgumentTypeError(f"expected OO, OC or CC, got {text!r}")
    return kind


def _sweep_groups(theorem: Optional[str], check: Optional[str]) -> Tuple[str, ...]:
    """Union of the --theorem and --check selections; every group when neither is given."""
    if not theorem and not check:
        return CHECK_GROUPS
    selected = parse_theorems(theorem) if theorem else ()
    if check:
        selected += parse_groups(check)
    return tuple(dict.fromkeys(selected))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Order and chain polytopes of posets: Ehrhart polynomials, smooth Fano checks, toric ideals",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Full report for a pair of posets
  python main.py analyze posets/example_p.json posets/example_q.json

  # Ehrhart coefficients of Gamma(O(P), -C(Q))
  python main.py ehrhart posets/example_p.json posets/example_q.json --kind OC

  # Check only the chain-chain smoothness criterion over all pairs with d = 3
  python main.py sweep 3 --check chain-chain --format text

  # The same by result selector
  python main.py sweep 3 --theorem 2.1 --format text
        """
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', type=str, help='Path to configuration file')
    common.add_argument('--verbose', action='store_true', help='Enable verbose logging')
    common.add_argument('--format', choices=['json', 'text'], help='Output format (default: reporting.format)')
    common.add_argument('--output', type=str, help='Write output to this file instead of stdout')

    commands = parser.add_subparsers(dest='command', required=True)

    analyze = commands.add_parser('analyze', parents=[common], help='Analyze one poset pair')
    analyze.add_argument('first', help='Poset file for P ("-" for stdin)')
    analyze.add_argument('second', help='Poset file for Q')
    analyze.add_argument('--kinds', type=_kinds, help='Pairings to build, e.g. OO,OC,CC')
    analyze.add_argument('--no-equivalence', action='store_true', help='Skip the unimodular equivalence search')
    analyze.add_argument('--no-toric', action='store_true', help='Skip the Groebner basis checks')
    analyze.add_argument('--degree-cap', type=int, help='Degree bound of the toric ideal oracle')
    analyze.add_argument('--export-polytopes', metavar='DIR',
                         help='Also write each polytope (vertices and facets) as JSON into DIR')

    ehrhart_cmd = commands.add_parser('ehrhart', parents=[common], help='Ehrhart polynomial of one pairing')
    ehrhart_cmd.add_argument('first', help='Poset file for P')
    ehrhart_cmd.add_argument('second', help='Poset file for Q')
    ehrhart_cmd.add_argument('--kind', type=_pairing, default=PairingKind.CC, help='OO, OC or CC (default CC)')

    sweep_cmd = commands.add_parser('sweep', parents=[common], help='Verify every criterion over all poset pairs of size d')
    sweep_cmd.add_argument('d', type=int, help='Poset size')
    sweep_cmd.add_argument('--theorem', type=str,
                           help=f"Comma-separated result selectors: {', '.join(THEOREM_GROUPS)}")
    sweep_cmd.add_argument('--check', type=str,
                           help=f"Comma-separated check groups: {', '.join(CHECK_GROUPS)} (default all)")
    sweep_cmd.add_argument('--no-toric', action='store_true', help='Skip the Groebner basis checks')
    sweep_cmd.add_argument('--degree-cap', type=int, help='Degree bound of the toric ideal oracle')
    sweep_cmd.add_argument('--jobs', type=int, help='Parallel workers (default performance.max_workers)')
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main function with command-line interface."""
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.config:
        load_config(args.config)
    setup_logging(level='DEBUG' if args.verbose else None)
    logger = get_logger("src.cli")

    try:
        pipeline = PolytopePipeline(output_format=args.format, output_path=args.output)

        if args.command == 'analyze':
            success = pipeline.run_analyze(
                args.first,
                args.second,
                kinds=args.kinds,
                include_toric=False if args.no_toric else None,
                include_equivalence=False if args.no_equivalence else None,
                degree_cap=args.degree_cap,
                export_dir=args.export_polytopes,
            )
        elif args.command == 'ehrhart':
            success = pipeline.run_ehrhart(args.first, args.second, args.kind)
        else:
            options = SweepOptions(
                groups=_sweep_groups(args.theorem, args.check),
                toric=not args.no_toric,
                degree_cap=args.degree_cap,
            )
            success = pipeline.run_sweep(args.d, options, args.jobs)

        if success:
            logger.info(f"{args.command} completed successfully")
            return 0
        logger.error(f"{args.command} found mismatches")
        return 1

    except KeyboardInterrupt:
        logger.info("Interrupted by user")
        return 1
    except Exception as e:
        logger.error(f"{type(e).__name__}: {e}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
