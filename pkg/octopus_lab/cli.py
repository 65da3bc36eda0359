"""Command-line front end: one subcommand per family of claims about S_n."""

import argparse
import logging
import os
import sys
from pathlib import Path
from typing import Dict, List, Optional

from .algebra import TranspositionWeights
from .config import DEFAULT_SEED, DEFAULT_TOL, RunConfig
from .errors import OctopusLabError, PreconditionError, WeightsFileError
from .kazhdan import KazhdanConfig
from .projects import load_project, load_weights, save_project
from .reptheory import character_table
from .reports import FORMATS, to_csv, to_json, to_text, write_output, write_witness
from .symgroup import Partition, transposition_class
from .utils import SUBSET_LAW_NAMES
from .verify import (
    ExperimentReport,
    TrialRecord,
    caputo_trial,
    character_table_report,
    classsum_report,
    kazhdan_experiment,
    table1,
    table2,
    verify_aldous,
    verify_coxeter_path,
    verify_interlacing,
    verify_lemma_w2,
    verify_octopus,
    verify_semi_recursive,
    verify_transposition_gap,
)

logger = logging.getLogger(__name__)

SEED_ENV = "OCTOPUS_LAB_SEED"

# Default values for all optional settings
DEFAULTS = {
    "n": None,
    "trials": None,
    "seed": DEFAULT_SEED,
    "tol": DEFAULT_TOL,
    "output_format": "json",
    "out": None,
    "weights": None,
    "restarts": 32,
    "threads": os.cpu_count() or 1,
    "class_partition": None,
    "density": 0.5,
    "subset_law": "uniform",
    "include_timestamp": False,
}

# Experiment parameters written by --save-project
PROJECT_KEYS = ("subcommand", "n", "trials", "seed", "tol", "density", "subset_law", "class_partition", "restarts")

# Subcommand -> (help text naming the claim checked, default n, default trials)
SUBCOMMANDS = {
    "tables": (
        "Exact X^alpha (n=4) and F/Y^alpha (n=5) tables from Murnaghan-Nakayama "
        "characters, cross-checked against the top eigenvalue of explicit irreps; "
        "also psi(T_n) = n for n = 2..8",
        None,
        None,
    ),
    "aldous": (
        "Aldous' spectral gap identity psi(w) = psi(w, D_n) on random connected "
        "transposition weights, with (n-1,1) among the minimizing irreps",
        5,
        100,
    ),
    "octopus": (
        "The octopus inequality: w - theta(w) is in Gamma(S_n) for nonnegative "
        "transposition weights, checked on every irrep",
        5,
        50,
    ),
    "gap": (
        "Spectral gaps of a class sum J^alpha (--class) or of a weight file "
        "(--weights) on every irrep and on D_n; J^(4,1) in S_5 has gap 24 at "
        "(2,2,1) against 30 on D_5",
        5,
        None,
    ),
    "kazhdan": (
        "Kazhdan constants of T_n: kappa_{S_n}(T_n) = 2/sqrt(n-1), the n = 3 "
        "witness, the direct-sum witness and kappa(T_n) < kappa(T_n, D') for n >= 4",
        4,
        None,
    ),
    "caputo": (
        "Caputo's conjecture for sums of shuffle sums J_{n,A}: tallies agreement "
        "of psi(w) with psi(w, D_n); a disagreement is reported, never hidden",
        5,
        20,
    ),
    "lemma-w2": (
        "The quartic expansion of the squared octopus element, by exact rational "
        "convolution",
        4,
        25,
    ),
    "interlace": (
        "Eigenvalue interlacing of Delta(w, D_n) and Delta(theta w, D_n), the "
        "rank-one difference and psi(w, D_n) <= psi(theta w, D_n-1)",
        5,
        50,
    ),
    "coxeter": (
        "Adjacent transpositions: psi = psi(D_n) = 2 - 2cos(pi/n) at (n-1,1)",
        5,
        None,
    ),
    "semirec": (
        "The semi-recursive bound psi(w) >= min{psi(theta w), psi(w, D_n)} and "
        "the per-irrep restriction bounds",
        5,
        20,
    ),
    "chartable": (
        "Character table of S_n by Murnaghan-Nakayama, with exact row "
        "orthogonality and sum f^2 = n!",
        5,
        None,
    ),
}


def parse_bool(value: str) -> bool:
    """Parse boolean string value."""
    if value.lower() in ("true", "1", "yes"):
        return True
    elif value.lower() in ("false", "0", "no"):
        return False
    raise argparse.ArgumentTypeError(f"Boolean value expected, got '{value}'")


def parse_partition(text: str) -> Partition:
    """Parse "4,1" into Partition((4, 1))."""
    try:
        parts = tuple(int(p) for p in text.replace(" ", "").strip("()").split(",") if p)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"partition expected (e.g. 4,1), got '{text}'") from exc
    if not parts:
        raise argparse.ArgumentTypeError("partition must have at least one part")
    try:
        return Partition(parts)
    except PreconditionError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def env_settings(environ: Optional[Dict[str, str]] = None) -> dict:
    """Settings taken from the environment (the seed only)."""
    environ = os.environ if environ is None else environ
    value = environ.get(SEED_ENV)
    if value is None:
        return {}
    try:
        return {"seed": int(value)}
    except ValueError:
        raise PreconditionError(f"{SEED_ENV} must be an integer, got '{value}'")


def merge_settings(project_settings: dict, args: argparse.Namespace, defaults: dict, env: Optional[dict] = None) -> dict:
    """Merge project settings with CLI arguments.

    Priority: CLI args (if not None) > project settings > environment > defaults
    """
    result = defaults.copy()

    # Environment only fills in what the project leaves open
    result.update(env or {})

    # Apply project settings
    result.update(project_settings)

    # Apply CLI overrides (only if explicitly set, i.e., not None)
    for key, value in vars(args).items():
        if value is not None and key not in ("project", "verbose", "save_project"):
            result[key] = value

    return result


def build_parser() -> argparse.ArgumentParser:
    """Parser with one subparser per claim family sharing the common flags."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--project",
        type=str,
        default=None,
        help="Project JSON file to load as base settings (CLI args override)",
    )
    common.add_argument("--n", type=int, default=None, help="Degree of the symmetric group")
    common.add_argument("--trials", type=int, default=None, help="Number of random trials")
    common.add_argument(
        "--seed",
        type=int,
        default=None,
        help=f"Base random seed (default: ${SEED_ENV} or {DEFAULT_SEED})",
    )
    common.add_argument("--tol", type=float, default=None, help=f"Numerical tolerance (default: {DEFAULT_TOL})")
    common.add_argument(
        "--format",
        dest="output_format",
        choices=FORMATS,
        default=None,
        help="Report format; csv is available for tables and chartable only (default: json)",
    )
    common.add_argument("--out", default=None, help="Output file (default: stdout)")
    common.add_argument("--threads", type=int, default=None, help="Worker threads (default: CPU count)")
    common.add_argument("--restarts", type=int, default=None, help="Optimizer restarts for kazhdan (default: 32)")
    common.add_argument(
        "--class",
        dest="class_partition",
        type=str,
        default=None,
        help="Conjugacy class for gap, as a partition such as 4,1",
    )
    common.add_argument("--weights", default=None, help="Transposition weight file (JSON edge list)")
    common.add_argument(
        "--density",
        type=float,
        default=None,
        help="Edge probability for random weight graphs (default: 0.5)",
    )
    common.add_argument(
        "--subset-law",
        dest="subset_law",
        choices=SUBSET_LAW_NAMES,
        default=None,
        help="Subset-size law for caputo families (default: uniform)",
    )
    common.add_argument(
        "--include-timestamp",
        dest="include_timestamp",
        type=parse_bool,
        default=None,
        nargs="?",
        const=True,
        help="Add a timestamp to JSON output (true/false)",
    )
    common.add_argument("--save-project", dest="save_project", default=None, help="Save the resolved settings to a project file")
    common.add_argument("--verbose", action="store_true", help="Debug logging on stderr")

    parser = argparse.ArgumentParser(
        prog="octopus-lab",
        description="Check spectral-gap, octopus-inequality and Kazhdan-constant claims on the symmetric group",
    )
    subparsers = parser.add_subparsers(dest="subcommand", required=True, metavar="SUBCOMMAND")
    for name, (help_text, _, _) in SUBCOMMANDS.items():
        subparsers.add_parser(name, parents=[common], help=help_text, description=help_text)
    return parser


def parse_args(argv: List[str]) -> argparse.Namespace:
    """Parse command line arguments."""
    return build_parser().parse_args(argv)


def resolve_config(args: argparse.Namespace, environ: Optional[Dict[str, str]] = None) -> RunConfig:
    """Merge flags, project file, environment and defaults into a RunConfig."""
    project_settings = {}
    if args.project:
        project_settings = load_project(Path(args.project))
        print(f"Loaded project: {args.project}", file=sys.stderr)

    settings = merge_settings(project_settings, args, DEFAULTS, env_settings(environ))
    _, default_n, default_trials = SUBCOMMANDS[args.subcommand]
    if settings.get("n") is None:
        if args.subcommand == "gap" and settings.get("class_partition"):
            settings["n"] = _parse_class(settings["class_partition"]).n
        else:
            settings["n"] = default_n
    if settings.get("trials") is None:
        settings["trials"] = default_trials if default_trials is not None else 1
    settings["project"] = args.project
    return RunConfig.from_dict(settings)


def experiment_settings(config: RunConfig) -> dict:
    """The experiment parameters of a resolved config, as saved in a project file."""
    settings = config.to_dict()
    return {key: settings[key] for key in PROJECT_KEYS if settings[key] is not None}


def _parse_class(text: str) -> Partition:
    try:
        return parse_partition(text)
    except argparse.ArgumentTypeError as exc:
        raise PreconditionError(str(exc)) from exc


def _class_partition(config: RunConfig) -> Partition:
    if config.class_partition is None:
        return transposition_class(config.n)
    alpha = _parse_class(config.class_partition)
    if alpha.n != config.n:
        raise PreconditionError(f"class {alpha} is a partition of {alpha.n}, not of n = {config.n}")
    return alpha


def _weights(config: RunConfig) -> Optional[TranspositionWeights]:
    if config.weights is None:
        return None
    return load_weights(Path(config.weights))


def execute(config: RunConfig) -> List[ExperimentReport]:
    """Run the experiment(s) a subcommand stands for."""
    sub = config.subcommand

    def on_failure(experiment: str, record: TrialRecord):
        path = write_witness(experiment, record, config.seed, config.out)
        print(f"Witness written: {path}", file=sys.stderr)

    if sub == "tables":
        return [table1(config.tol), table2(config.tol), verify_transposition_gap(8, config.tol, config.threads)]
    if sub == "aldous":
        return [verify_aldous(config.n, config.trials, config.seed, config.density, config.tol, config.threads,
                              on_failure, _weights(config))]
    if sub == "octopus":
        return [verify_octopus(config.n, config.trials, config.seed, config.tol, config.threads, on_failure,
                               _weights(config))]
    if sub == "gap":
        weights = _weights(config)
        if weights is not None:
            return [verify_aldous(weights.n, 1, config.seed, config.density, config.tol, config.threads,
                                  on_failure, weights)]
        return [classsum_report(_class_partition(config), config.tol, config.threads)]
    if sub == "kazhdan":
        kconfig = KazhdanConfig(restarts=config.restarts, seed=config.seed, threads=config.threads)
        return [kazhdan_experiment(config.n, kconfig)]
    if sub == "caputo":
        return [caputo_trial(config.n, config.trials, config.seed, config.subset_law, config.tol, config.threads,
                             on_failure)]
    if sub == "lemma-w2":
        return [verify_lemma_w2(config.n, config.trials, config.seed, config.threads)]
    if sub == "interlace":
        return [verify_interlacing(config.n, config.trials, config.seed, config.tol, config.threads, on_failure,
                                   _weights(config))]
    if sub == "coxeter":
        return [verify_coxeter_path(config.n, config.tol, config.threads)]
    if sub == "semirec":
        return [verify_semi_recursive(config.n, config.trials, config.seed, config.tol, config.threads,
                                      _weights(config))]
    if sub == "chartable":
        return [character_table_report(config.n)]
    raise PreconditionError(f"unknown subcommand {sub}")


def render(reports: List[ExperimentReport], config: RunConfig) -> str:
    """Format reports per --format."""
    if config.output_format == "csv":
        if config.subcommand == "chartable":
            return character_table(config.n).to_csv()
        if config.subcommand != "tables":
            raise PreconditionError("csv output is only available for tables and chartable")
        return to_csv(reports[:2])
    if config.output_format == "text":
        return to_text(reports, config.to_dict())
    return to_json(reports, config.to_dict(), config.include_timestamp)


def run(argv: List[str]) -> int:
    """Run the CLI; returns 0 when every check passed, 1 when a check
    failed and 2 on usage or input errors."""
    try:
        args = parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )

    try:
        config = resolve_config(args)
        if args.save_project:
            save_project(Path(args.save_project), Path(args.save_project).stem, experiment_settings(config))
            print(f"Saved project: {args.save_project}", file=sys.stderr)
        print(f"octopus-lab {config.subcommand} (n={config.n}, trials={config.trials}, seed={config.seed})",
              file=sys.stderr)
        reports = execute(config)
        write_output(render(reports, config), config.out)
    except (PreconditionError, WeightsFileError) as exc:
        print(f"Error: {exc}", file=sys.stderr)
        return 2
    except OctopusLabError as exc:
        print(f"Error: {exc}", file=sys.stderr)
        return 1

    passed = all(report.passed for report in reports)
    if not passed:
        print("Some checks FAILED", file=sys.stderr)
    return 0 if passed else 1
