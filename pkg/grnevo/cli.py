#!/usr/bin/env python3
"""
grnevo CLI - run, replicate and analyze evolutionary trials.

Usage:
    grnevo run [OPTIONS]                 Run one trial
    grnevo experiment --spec SPEC        Run a replicated treatment experiment
    grnevo analyze RECORD_DIR --mode M   Post-hoc analysis of stored trials
    grnevo stats A.csv B.csv             Paired comparison of two trial summaries
    grnevo oracle GENOME                 Exact fitness of a genome file

Examples:
    grnevo run --config grnevo/configs/default.conf --seed 7 --out runs/seed7
    grnevo experiment --spec crossover --out runs/crossover --workers 8 --profile paper
    grnevo analyze runs/crossover/diagonal --mode neighbors
    grnevo stats runs/a/results.csv runs/b/results.csv --alternative a_less_b
    grnevo oracle runs/seed7/final_pop/genome_0.txt
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

# Ensure grnevo is importable
ROOT = Path(__file__).resolve().parent.parent
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_RUNTIME = 2


class Colors:
    """ANSI codes for the print helpers; blanked for pipes and --no-color."""

    BLUE = "\033[94m"
    GREEN = "\033[92m"
    YELLOW = "\033[93m"
    RED = "\033[91m"
    ENDC = "\033[0m"
    BOLD = "\033[1m"
    DIM = "\033[2m"

    @classmethod
    def disable(cls):
        for name in ("BLUE", "GREEN", "YELLOW", "RED", "ENDC", "BOLD", "DIM"):
            setattr(cls, name, "")


if not sys.stdout.isatty():
    Colors.disable()


def print_status(label: str, value: str, color: Optional[str] = None):
    color = Colors.GREEN if color is None else color
    print(f"  {Colors.DIM}{label}:{Colors.ENDC} {color}{value}{Colors.ENDC}")


def print_section(title: str):
    print(f"\n{Colors.BOLD}{Colors.BLUE}▸ {title}{Colors.ENDC}")


def print_success(msg: str):
    print(f"{Colors.GREEN}✓{Colors.ENDC} {msg}")


def print_error(msg: str):
    print(f"{Colors.RED}✗{Colors.ENDC} {msg}", file=sys.stderr)


def print_warning(msg: str):
    print(f"{Colors.YELLOW}⚠{Colors.ENDC} {msg}")


def _fmt(value: Any, digits: int = 4) -> str:
    if value is None:
        return "n/a"
    try:
        if value != value:  # NaN
            return "n/a"
        return f"{float(value):.{digits}f}"
    except (TypeError, ValueError):
        return str(value)


class CliError(Exception):
    """Raised by a command to exit with a specific code."""

    def __init__(self, message: str, code: int = EXIT_RUNTIME):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on usage errors; usage errors here exit with 1."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        print_error(message)
        raise SystemExit(EXIT_USAGE)


def _parse_overrides(pairs: List[str]) -> Dict[str, Any]:
    from grnevo.validation.config_validator import ConfigValidator

    overrides: Dict[str, Any] = {}
    for pair in pairs or []:
        if "=" not in pair:
            raise CliError(f"--set expects key=value, got {pair!r}", EXIT_USAGE)
        key, value = (part.strip() for part in pair.split("=", 1))
        overrides[key] = ConfigValidator.parse_value(key, value)
    return overrides


# ============================================================================
# Command: run
# ============================================================================

def cmd_run(args) -> int:
    """Run one trial and write its record directory."""
    from grnevo.config import load_config
    from grnevo.harness.experiment import run_and_store

    cfg = load_config(args.config)
    overrides = _parse_overrides(args.set)
    if args.seed is not None:
        overrides["seed"] = args.seed
    if overrides:
        cfg = cfg.with_overrides(**overrides)

    out = Path(args.out or f"runs/seed{cfg.seed}")
    print_section("Trial")
    print_status("Config", str(args.config or "default"))
    print_status("Seed", str(cfg.seed))
    print_status("Genes / targets", f"{cfg.n} / {len(cfg.targets)}")
    print_status("Generations", str(cfg.max_generation))
    print_status("Output", str(out))

    try:
        record = run_and_store(cfg, cfg.seed, out, trial_id=out.name)
    except OSError as exc:
        raise CliError(f"Cannot write to {out}: {exc}") from exc

    final = record.final_row
    print_section("Final generation")
    print_status("Best fitness", _fmt(final.best_fitness))
    print_status("Mean fitness", _fmt(final.mean_fitness))
    print_status("Best Q", _fmt(final.best_q))
    print_status("Mean Q", _fmt(final.mean_q))
    print_success(f"{len(record.rows)} generations written to {out / 'trace.csv'} in {record.wall_time:.1f}s")
    return EXIT_OK


# ============================================================================
# Command: experiment
# ============================================================================

def cmd_experiment(args) -> int:
    """Run every treatment of a spec over seed-matched trials."""
    from grnevo.harness.experiment import resolve_trials, run_experiment
    from grnevo.harness.suite import load_spec

    try:
        spec = load_spec(args.spec)
    except FileNotFoundError as exc:
        raise CliError(str(exc), EXIT_USAGE) from exc
    trials = resolve_trials(spec, args.profile, args.trials)
    out = Path(args.out or f"runs/{spec.name}")

    print_section(f"Experiment {spec.name}")
    print_status("Treatments", ", ".join(spec.treatments))
    print_status("Trials per treatment", str(trials))
    print_status("Workers", str(args.workers))
    print_status("Output", str(out))

    try:
        result = run_experiment(spec, out, workers=args.workers, trials=trials)
    except OSError as exc:
        raise CliError(f"Cannot write to {out}: {exc}") from exc

    print_section("Treatment means")
    for row in result.summary.itertuples(index=False):
        print_status(f"{row.treatment} {row.metric}", f"{_fmt(row.mean)} (sd {_fmt(row.std)}, n={row.count})")
    if not result.comparisons.empty:
        print_section("Comparisons")
        for row in result.comparisons.itertuples(index=False):
            print_status(
                f"{row.comparison} [{row.metric}]",
                f"W={_fmt(row.w, 1)} p={_fmt(row.p_value)} "
                f"(a<b {_fmt(row.p_a_less_b)}, a>b {_fmt(row.p_a_greater_b)}; {row.method}, n={row.n_pairs})",
            )
    if result.failures:
        print_warning(f"{result.failures} trial(s) failed; see {out / 'results.csv'}")
        return EXIT_RUNTIME
    print_success(f"Results written to {out}")
    return EXIT_OK


# ============================================================================
# Command: analyze
# ============================================================================

def cmd_analyze(args) -> int:
    """Dominance, trimming, removal paths or neighbor probes over stored trials."""
    from grnevo.harness.analyze import analyze_records
    from grnevo.harness.store import RecordNotFoundError

    params: Dict[str, Any] = {}
    if args.mode in ("dominance", "trim", "paths") and args.range:
        params["generation_range"] = tuple(args.range)
    if args.mode in ("trim", "paths", "neighbors"):
        params["p_count"] = args.perturbations
    if args.mode == "paths":
        params.update(cap=args.cap, orders=args.orders)
    if args.mode == "neighbors":
        params.update(neighbor_count=args.neighbors, use_final_sets=not args.fresh_sets)
        if args.mu is not None:
            params["mu"] = args.mu

    out = Path(args.out) if args.out else Path(args.record_dir) / "analysis"
    try:
        result = analyze_records(args.record_dir, args.mode, out, **params)
    except RecordNotFoundError as exc:
        raise CliError(str(exc)) from exc

    if args.mode == "trim":
        print_status("Improved after trimming", f"{sum(r.improved for r in result.results)} of {len(result.results)}")
    elif args.mode == "neighbors":
        print_status("On a plateau", f"{int(result['on_plateau'].sum())} of {len(result)}")
    print_success(f"{args.mode} analysis written to {out}")
    return EXIT_OK


# ============================================================================
# Command: stats
# ============================================================================

def _read_summary(path: str):
    import pandas as pd

    try:
        frame = pd.read_csv(path)
    except (OSError, pd.errors.ParserError) as exc:
        raise CliError(f"Cannot read {path}: {exc}") from exc
    if "status" in frame.columns:
        frame = frame[frame["status"] == "completed"]
    if "trial" in frame.columns:
        frame = frame.set_index("trial")
    return frame


def cmd_stats(args) -> int:
    """Paired Wilcoxon comparison of two trial-summary CSVs, matched by trial."""
    import pandas as pd

    from grnevo.harness.experiment import METRICS, paired_comparison

    a, b = _read_summary(args.a), _read_summary(args.b)
    metrics = args.metric or [m for m in METRICS if m in a.columns and m in b.columns]
    if not metrics:
        raise CliError("No common metric columns to compare", EXIT_USAGE)
    rows = []
    for metric in metrics:
        if metric not in a.columns or metric not in b.columns:
            raise CliError(f"Metric {metric!r} missing from an input", EXIT_USAGE)
        row = {"metric": metric, "alternative": args.alternative}
        row.update(paired_comparison(a[metric].astype(float), b[metric].astype(float), args.alternative))
        rows.append(row)
    table = pd.DataFrame(rows)
    if args.out:
        table.to_csv(args.out, index=False)
    print(table.to_string(index=False))
    return EXIT_OK


# ============================================================================
# Command: oracle
# ============================================================================

def cmd_oracle(args) -> int:
    """Exact expected fitness of a genome, optionally against a Monte Carlo estimate."""
    import numpy as np

    from grnevo.config import load_config
    from grnevo.fitness.evaluator import fitness_ceiling, fitness_single_target
    from grnevo.fitness.oracle import exact_fitness_oracle
    from grnevo.fitness.perturbation import sample_perturbations
    from grnevo.network.genome import Genome, GenomeFormatError

    try:
        genome = Genome.load(args.genome)
    except OSError as exc:
        raise CliError(f"Cannot read {args.genome}: {exc}") from exc
    except GenomeFormatError as exc:
        raise CliError(str(exc), EXIT_USAGE) from exc

    cfg = load_config(args.config)
    rate = cfg.perturbation_rate if args.rate is None else args.rate
    targets = cfg.schedule().targets
    rng = np.random.default_rng(args.seed)
    print_section(f"Oracle for {args.genome}")
    values = []
    for target in targets:
        exact = exact_fitness_oracle(genome, target, rate, cfg.max_steps)
        values.append(exact)
        line = f"exact {exact:.6f}"
        if args.samples:
            pset = sample_perturbations(target, args.samples, rate, rng)
            line += f", Monte Carlo (P={args.samples}) {fitness_single_target(genome, pset, cfg.max_steps):.6f}"
        print_status(target.to_string(), line)
    print_status("Mean over targets", f"{float(np.mean(values)):.6f} (ceiling {fitness_ceiling():.6f})")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="grnevo",
        description="Evolve and analyze modular gene regulatory networks",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Commands:
  run         Run one trial
  experiment  Run a replicated treatment experiment
  analyze     Post-hoc analysis of stored trials
  stats       Paired comparison of two trial summaries
  oracle      Exact fitness of a genome file
        """,
    )
    parser.add_argument('--no-color', action='store_true', help='Disable colored output')
    parser.add_argument('--log-level', default='INFO',
                        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'])
    parser.add_argument('--log-dir', type=str, help='Also write grnevo.log here')

    subparsers = parser.add_subparsers(dest='command', parser_class=_Parser, help='Command to run')

    run_parser = subparsers.add_parser('run', help='Run one trial')
    run_parser.add_argument('--config', type=str, help='key = value config file (default: packaged)')
    run_parser.add_argument('--seed', type=int, help='Trial seed (overrides the config)')
    run_parser.add_argument('--out', type=str, help='Trial output directory')
    run_parser.add_argument('--set', action='append', metavar='KEY=VALUE',
                            help='Override one config key (repeatable)')

    exp_parser = subparsers.add_parser('experiment', help='Run a treatment experiment')
    exp_parser.add_argument('--spec', required=True, help='YAML spec path or built-in suite name')
    exp_parser.add_argument('--out', type=str, help='Experiment output directory')
    exp_parser.add_argument('--workers', type=int, default=1, help='Parallel trial workers')
    exp_parser.add_argument('--profile', choices=['desk', 'paper'], help='Trials per treatment preset')
    exp_parser.add_argument('--trials', type=int, help='Trials per treatment (beats --profile)')

    an_parser = subparsers.add_parser('analyze', help='Analyze stored trials')
    an_parser.add_argument('record_dir', help='A trial directory or a directory of trials')
    an_parser.add_argument('--mode', required=True, choices=['dominance', 'trim', 'paths', 'neighbors'])
    an_parser.add_argument('--out', type=str, help='Analysis output directory')
    an_parser.add_argument('--range', type=int, nargs=2, metavar=('START', 'END'),
                           help='Generation range scanned for dominance; must lie inside the recorded window '
                                '(default: the run\'s dominance_range, else the final epoch)')
    an_parser.add_argument('--perturbations', type=int, default=1000, help='Frozen set size')
    an_parser.add_argument('--cap', type=int, default=1 << 16, help='Max exhaustive lattice size')
    an_parser.add_argument('--orders', type=int, default=1000, help='Sampled removal orders')
    an_parser.add_argument('--neighbors', type=int, default=499, help='Mutants per genome')
    an_parser.add_argument('--mu', type=float, help='Neighbor mutation rate (default: the run\'s)')
    an_parser.add_argument('--fresh-sets', action='store_true',
                           help='Probe neighbors on fresh sets of --perturbations patterns; by default '
                                'the final generation\'s sets are reused')

    st_parser = subparsers.add_parser('stats', help='Compare two trial-summary CSVs')
    st_parser.add_argument('a', help='Summary CSV of treatment a')
    st_parser.add_argument('b', help='Summary CSV of treatment b')
    st_parser.add_argument('--metric', action='append', help='Column to compare (repeatable)')
    st_parser.add_argument('--alternative', default='two_sided',
                           choices=['a_less_b', 'a_greater_b', 'two_sided'])
    st_parser.add_argument('--out', type=str, help='Also write the table as CSV')

    or_parser = subparsers.add_parser('oracle', help='Exact fitness of a genome file')
    or_parser.add_argument('genome', help='Genome text file')
    or_parser.add_argument('--config', type=str, help='Config providing targets and rate')
    or_parser.add_argument('--rate', type=float, help='Perturbation rate override')
    or_parser.add_argument('--samples', type=int, default=0, help='Also estimate with P samples')
    or_parser.add_argument('--seed', type=int, default=0, help='Seed for the estimate')

    return parser


COMMANDS = {
    'run': cmd_run,
    'experiment': cmd_experiment,
    'analyze': cmd_analyze,
    'stats': cmd_stats,
    'oracle': cmd_oracle,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.no_color:
        Colors.disable()
    if args.command is None:
        parser.print_help()
        return EXIT_USAGE

    from grnevo.logging.setup import configure_logging
    from grnevo.validation.config_validator import ConfigValidationError

    configure_logging(Path(args.log_dir) if args.log_dir else None,
                      getattr(logging, args.log_level.upper(), logging.INFO))
    try:
        return COMMANDS[args.command](args)
    except ConfigValidationError as exc:
        print_error(f"Invalid configuration{f' in {exc.source}' if exc.source else ''}:")
        for message in exc.errors:
            print(f"    {message}", file=sys.stderr)
        return EXIT_USAGE
    except CliError as exc:
        print_error(str(exc))
        return exc.code
    except ValueError as exc:
        print_error(str(exc))
        return EXIT_USAGE
    except OSError as exc:
        print_error(str(exc))
        return EXIT_RUNTIME


if __name__ == '__main__':
    sys.exit(main())
