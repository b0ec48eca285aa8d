#!/usr/bin/env python3
"""
Command line entry point of the NOMA outage toolkit.

    noma-outage run --config experiment.cfg [--preset fig1] [--trials N] [--seed S] [--out DIR] [--svg]
    noma-outage validate --config experiment.cfg
    noma-outage presets

Exit codes: 0 success, 1 output failure, 2 configuration error,
3 numerical non-convergence.
"""

import argparse
import logging
import sys
from typing import Dict, List, Optional

from noma_outage import __version__
from noma_outage.config import configure_logging
from noma_outage.exceptions import ConfigError, NonConvergenceError, OutputError
from noma_outage.experiments import (
    PRESET_DESCRIPTIONS,
    ExperimentSpec,
    parse_experiment,
    run_sweep,
    write_outputs,
)
from noma_outage.link import linear_to_db

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_OUTPUT = 1
EXIT_CONFIG = 2
EXIT_NON_CONVERGENCE = 3

# run flags that map one-to-one onto experiment keys
FLAG_KEYS = ('preset', 'trials', 'seed', 'out')


def collect_overrides(args: argparse.Namespace) -> Dict[str, str]:
    """Merge --set pairs and dedicated flags into config-key overrides"""
    overrides = {}
    for item in getattr(args, 'settings', None) or []:
        key, sep, value = item.partition('=')
        if not sep or not key.strip():
            raise ConfigError(f"--set expects KEY=VALUE, got {item!r}", fields=['set'])
        overrides[key.strip()] = value.strip()

    for key in FLAG_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            overrides[key] = str(value)
    if getattr(args, 'svg', False):
        overrides['svg'] = 'true'
    return overrides


def load_experiment(args: argparse.Namespace) -> ExperimentSpec:
    return parse_experiment(args.config, collect_overrides(args))


def run_experiment(args: argparse.Namespace) -> int:
    """Evaluate every selected curve and write the result files"""
    spec = load_experiment(args)
    print(f"🚀 Running {spec.name} on {spec.grid.points().size} SNR points")

    try:
        curves = run_sweep(spec, progress=args.verbosity >= 2)
    except ValueError as exc:
        # curve-level preconditions (e.g. an asymptote of an infeasible split)
        raise ConfigError(f"invalid curve request: {exc}") from exc

    for path in write_outputs(curves, spec):
        print(f"   📁 {path}")
    print(f"✅ {len(curves)} curves written for {spec.name}")
    return EXIT_OK


def validate_experiment(args: argparse.Namespace) -> int:
    """Print the resolved settings of an experiment without evaluating it"""
    spec = load_experiment(args)
    base = spec.base
    grid = spec.grid.points()

    if base.omega_I > 0:
        sic = f"{base.sic_mode.value}, Omega_I={float(linear_to_db(base.omega_I)):g} dB"
    else:
        sic = base.sic_mode.value

    rows = [
        ('experiment', spec.name),
        ('users', f"M={base.M}, pair (m={base.m_index}, n={base.n_index})"),
        ('scheme', f"{base.scheme.value}, K={base.K}"),
        ('power split', f"a_m={base.a_m:g}, a_n={base.a_n:g}"),
        ('target rates', f"R_m={base.R_m:g}, R_n={base.R_n:g} BPCU"),
        ('SIC', sic),
        ('quadrature', f"U={base.U}, L={base.L}"),
        ('SNR grid', f"{grid[0]:g}..{grid[-1]:g} dB ({grid.size} points)"),
        ('methods', ", ".join(sorted(spec.curves))),
        ('curves', str(len(spec.curve_specs()))),
        ('trials', str(spec.trials)),
        ('seed', str(spec.seed)),
        ('output', str(spec.out_dir)),
    ]
    print("📋 Resolved configuration:")
    _print_table(rows)
    for note in spec.notes():
        print(f"⚠️  {note}")
    print("✅ Configuration is valid")
    return EXIT_OK


def list_presets(args: argparse.Namespace) -> int:
    print("📋 Available presets:")
    _print_table(sorted(PRESET_DESCRIPTIONS.items()))
    return EXIT_OK


def _print_table(rows: List[tuple]):
    width = max((len(name) for name, _ in rows), default=0)
    for name, value in rows:
        print(f"  {name:<{width}}  {value}")


def _add_experiment_arguments(parser: argparse.ArgumentParser):
    parser.add_argument('--config', '-c', default=None,
                        help='Experiment file of key = value lines (defaults apply to missing keys)')
    parser.add_argument('--preset', default=None,
                        help='Figure preset: fig1, fig2, fig3 or fig4')
    parser.add_argument('--set', dest='settings', action='append', default=[], metavar='KEY=VALUE',
                        help='Override one configuration key (repeatable)')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='noma-outage',
        description='Outage probability and throughput of CD-NOMA / PD-NOMA user pairs',
    )
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    subparsers = parser.add_subparsers(dest='command', required=True)

    run = subparsers.add_parser('run', help='Evaluate an SNR sweep and write CSV/JSON/SVG results')
    _add_experiment_arguments(run)
    run.add_argument('--trials', type=int, default=None, help='Monte Carlo trials per SNR point')
    run.add_argument('--seed', type=int, default=None, help='Master seed of the Monte Carlo stream')
    run.add_argument('--out', default=None, help='Output directory for result files')
    run.add_argument('--svg', action='store_true', help='Also render an SVG plot of the curves')
    run.set_defaults(handler=run_experiment)

    validate = subparsers.add_parser('validate', help='Check a configuration and print the resolved settings')
    _add_experiment_arguments(validate)
    validate.set_defaults(handler=validate_experiment)

    presets = subparsers.add_parser('presets', help='List the figure presets accepted by --preset')
    presets.set_defaults(handler=list_presets)

    for sub in (run, validate, presets):
        sub.add_argument('-v', '--verbosity', type=int, choices=[0, 1, 2, 3], default=1,
                         help='0 warnings only, 1 info, 2 info with progress bars, 3 debug')
        sub.add_argument('--log-file', default=None, help='Also write log records to this file')

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main CLI entry point"""
    args = build_parser().parse_args(argv)
    configure_logging(args.verbosity, args.log_file)
    logger.debug(f"noma-outage {__version__}: {args.command}")

    try:
        return args.handler(args)
    except ConfigError as exc:
        print(f"❌ Configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NonConvergenceError as exc:
        print(f"❌ Numerical integration failed: {exc}", file=sys.stderr)
        return EXIT_NON_CONVERGENCE
    except OutputError as exc:
        print(f"❌ Output error: {exc}", file=sys.stderr)
        return EXIT_OUTPUT


if __name__ == "__main__":
    sys.exit(main())
