#!/usr/bin/env python3
"""
Command-line experiment runner for configuration tuning.

Subcommands: run, compare, sweep-weights, gen-landscape, calibrate-budget
and report. Exit status is 0 on success, 2 for usage errors and 1 for any
other failure.

Copyright (c) 2025 John Byrd

SPDX-License-Identifier: BSD-3-Clause
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

import requests

from dataset_loader import export_dataset
from experiment_runner import (budget_family, open_source, population_family,
                               run_experiment, sweep_weights)
from experiment_spec import (BENCHMARK_SETTINGS, BUDGET_PROPORTIONS, BUILD_DIR,
                             DEFAULT_WEIGHTS, OPTIMIZERS, ExperimentSpec, preset)
from landscape import CorrelationRegime, LandscapeSpec, generate_landscape
from objectives import native
from results_io import check_same_case, read_results, read_traces, write_trajectory, write_verdicts
from run_trace import mean_trajectory
from tuning_errors import SpecError, TuningError
from tuning_statistics import (POPULATION_GRID, CalibrationReport, VerdictTable,
                               calibrate_budget, calibrate_population, change_rate_table,
                               compare_groups, speedup)

RESULTS_DIR = BUILD_DIR / 'results'
DEFAULT_BUDGET_GRID = (100, 200, 300, 400, 500, 600)

# argparse dest -> ExperimentSpec field
SPEC_FLAGS = {
    'landscape': 'landscape',
    'dataset': 'dataset',
    'target': 'target',
    'auxiliary': 'auxiliary',
    'model': 'model',
    'norm': 'normalization',
    'weight': 'weight',
    'optimizer': 'optimizer',
    'budget': 'budget',
    'pop': 'population',
    'mutation_rate': 'mutation_rate',
    'crossover_rate': 'crossover_rate',
    'initial_sample': 'initial_sample',
    'surrogate_evaluations': 'surrogate_evaluations',
    'repeats': 'repeats',
    'seed': 'seed',
    'out': 'out',
}


def _number_list(kind):
    def parse(text: str):
        try:
            return [kind(item) for item in text.split(',') if item.strip()]
        except ValueError:
            raise argparse.ArgumentTypeError(f"not a comma-separated list: {text!r}")
    return parse


def _add_spec_arguments(parser: argparse.ArgumentParser):
    source = parser.add_argument_group('source')
    source.add_argument('--config', type=Path, help='experiment spec JSON file')
    source.add_argument('--landscape', help='landscape spec or manifest JSON')
    source.add_argument('--dataset', help='measured dataset CSV path or http(s) URL')
    source.add_argument('--target', help='target objective column')
    source.add_argument('--auxiliary', help='auxiliary objective column')

    search = parser.add_argument_group('search')
    search.add_argument('--model', choices=['single', 'pmo', 'mmo'])
    search.add_argument('--norm', choices=['global', 'population'])
    search.add_argument('--weight', type=float)
    search.add_argument('--optimizer', choices=OPTIMIZERS)
    search.add_argument('--budget', type=int, help='distinct measurements per run')
    search.add_argument('--pop', type=int, help='population size')
    search.add_argument('--mutation-rate', type=float)
    search.add_argument('--crossover-rate', type=float)
    search.add_argument('--initial-sample', type=int, help='Flash initial sample size')
    search.add_argument('--surrogate-evaluations', type=int)
    search.add_argument('--preset', choices=sorted(BENCHMARK_SETTINGS),
                        help='population size and budget of a measured system')

    runs = parser.add_argument_group('runs')
    runs.add_argument('--repeats', type=int)
    runs.add_argument('--seed', type=int, help='base seed; run i uses seed + i')
    runs.add_argument('--jobs', type=int, default=1, help='worker processes')
    runs.add_argument('--out', help='results CSV path')


def spec_from_args(args: argparse.Namespace) -> ExperimentSpec:
    """Config file first, then preset, then explicit flags."""
    settings = {}
    if args.config is not None:
        settings.update(ExperimentSpec.load(args.config).to_dict())
    if args.preset is not None:
        settings['population'], settings['budget'] = preset(args.preset)
    for flag, name in SPEC_FLAGS.items():
        value = getattr(args, flag, None)
        if value is not None:
            settings[name] = value
    if args.landscape is not None:
        settings['dataset'] = None
    elif args.dataset is not None:
        settings['landscape'] = None
    if args.optimizer is not None and args.model is None:
        settings.pop('model', None)
    return ExperimentSpec.from_dict(settings)


def _results_path(spec: ExperimentSpec) -> Path:
    return Path(spec.out) if spec.out else RESULTS_DIR / f"{spec.label}.csv"


def cmd_run(args) -> int:
    spec = spec_from_args(args)
    experiment = run_experiment(spec, args.jobs)
    path = _results_path(spec)
    experiment.write(path)
    group = experiment.sample_group()
    print(f"{spec.label}: {len(experiment.runs)} runs, mean best "
          f"{native(group.mean, experiment.target_sense):.6g} ± {group.stderr:.3g} -> {path}")
    return 0


def cmd_compare(args) -> int:
    candidate = read_results(args.candidate)
    baseline = read_results(args.baseline)
    check_same_case(candidate, baseline)
    verdict = compare_groups(candidate.sample_group(), baseline.sample_group(),
                             paired=args.paired, case=candidate.case)
    table = VerdictTable([verdict])
    table.print_table()
    if args.out:
        write_verdicts(args.out, table.rows())
    return 0


def cmd_sweep_weights(args) -> int:
    spec = spec_from_args(args)
    proportions = BUDGET_PROPORTIONS if args.proportions else None
    sweep = sweep_weights(spec, args.weights, proportions, args.jobs)
    sweep.print_report()
    return 0


def cmd_gen_landscape(args) -> int:
    spec = LandscapeSpec(seed=args.seed, level_counts=tuple(args.levels), bumps=args.bumps,
                         ruggedness=args.ruggedness,
                         correlation=CorrelationRegime(args.correlation),
                         name=args.name or args.out.stem)
    landscape = generate_landscape(spec)
    landscape.write_manifest(args.out)
    if args.csv:
        export_dataset(landscape.to_dataset(), args.csv)
    landscape.print_summary()
    return 0


def cmd_calibrate_budget(args) -> int:
    spec = spec_from_args(args)
    source = open_source(spec)
    family = budget_family(spec, args.optimizers, args.grid, args.jobs, source)
    budget = calibrate_budget(family)
    CalibrationReport('budget', change_rate_table(family), budget).print_report()
    if args.populations:
        sizes = population_family(spec, args.optimizers, args.populations, budget,
                                  args.jobs, source)
        size = calibrate_population(sizes, budget)
        CalibrationReport('population', change_rate_table(sizes, budget), size).print_report()
    return 0


def cmd_report(args) -> int:
    baseline_traces = None
    if args.baseline is not None:
        baseline_traces = read_traces(read_results(args.baseline))
    for path in args.results:
        results = read_results(path)
        traces = read_traces(results)
        counts, means, stderrs = mean_trajectory(traces)
        sense = results.target_sense
        print(f"{results.label} [{results.case}]: {len(traces)} runs, "
              f"final mean best {native(float(means[-1]), sense):.6g} ± {stderrs[-1]:.3g}")
        if baseline_traces is not None:
            result = speedup(baseline_traces, traces)
            print(f"  speedup over {args.baseline}: {result} ({result.category.value})")
        if args.out is not None:
            out = Path(args.out)
            if len(args.results) > 1:
                out = out.with_name(f"{out.stem}-{results.path.stem}{out.suffix}")
            write_trajectory(out, counts, [native(float(m), sense) for m in means], stderrs)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='mmotuner', description=__doc__.split('\n\n')[0])
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument('-v', '--verbose', action='store_true', help='debug logging')
    verbosity.add_argument('-q', '--quiet', action='store_true', help='warnings only')
    commands = parser.add_subparsers(dest='command', required=True)

    run = commands.add_parser('run', help='seeded repeats of one treatment')
    _add_spec_arguments(run)
    run.set_defaults(handler=cmd_run)

    compare = commands.add_parser('compare', help='verdict of one results file against another')
    compare.add_argument('candidate', type=Path)
    compare.add_argument('baseline', type=Path)
    compare.add_argument('--paired', action='store_true', help='signed-rank test on paired runs')
    compare.add_argument('--out', type=Path, help='verdict CSV or JSON path')
    compare.set_defaults(handler=cmd_compare)

    sweep = commands.add_parser('sweep-weights', help='best MMO weight under global normalization')
    _add_spec_arguments(sweep)
    sweep.add_argument('--weights', type=_number_list(float), default=list(DEFAULT_WEIGHTS))
    sweep.add_argument('--proportions', action='store_true',
                       help='also find the smallest budget share selecting the same weight')
    sweep.set_defaults(handler=cmd_sweep_weights)

    gen = commands.add_parser('gen-landscape', help='write a synthetic landscape manifest')
    gen.add_argument('--seed', type=int, default=0)
    gen.add_argument('--levels', type=_number_list(int), default=[5, 5, 5, 5, 5])
    gen.add_argument('--bumps', type=int, default=20)
    gen.add_argument('--ruggedness', type=float, default=0.3)
    gen.add_argument('--correlation', choices=[c.value for c in CorrelationRegime],
                     default=CorrelationRegime.MIXED.value)
    gen.add_argument('--name')
    gen.add_argument('--out', type=Path, required=True, help='manifest JSON path')
    gen.add_argument('--csv', type=Path, help='also export the landscape as a dataset CSV')
    gen.set_defaults(handler=cmd_gen_landscape)

    calibrate = commands.add_parser('calibrate-budget',
                                    help='smallest budget at which the optimizers settle')
    _add_spec_arguments(calibrate)
    calibrate.add_argument('--optimizers', type=lambda s: s.split(','), default=['nsga2', 'soga'])
    calibrate.add_argument('--grid', type=_number_list(int), default=list(DEFAULT_BUDGET_GRID))
    calibrate.add_argument('--populations', nargs='?', type=_number_list(int),
                           const=list(POPULATION_GRID),
                           help='also calibrate the population size (default grid 10..100)')
    calibrate.set_defaults(handler=cmd_calibrate_budget)

    report = commands.add_parser('report', help='mean trajectories and speedups')
    report.add_argument('results', type=Path, nargs='+')
    report.add_argument('--baseline', type=Path, help='results file to measure speedup against')
    report.add_argument('--out', type=Path, help='trajectory CSV path')
    report.set_defaults(handler=cmd_report)
    return parser


def configure_logging(verbose: bool, quiet: bool):
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    logging.basicConfig(level=level, format='%(levelname)s %(name)s: %(message)s')


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose, args.quiet)
    try:
        return args.handler(args)
    except SpecError as e:
        print(f"mmotuner {args.command}: usage error: {e}", file=sys.stderr)
        return 2
    except (TuningError, OSError, requests.RequestException) as e:
        print(f"mmotuner {args.command}: error: {e}", file=sys.stderr)
        return 1


if __name__ == '__main__':
    sys.exit(main())
