"""
Command-line front end.

Commands:
    estimate  Entropy of a count file (or each site of an abundance matrix)
    select    Hyperparameter candidates and the chosen (d, alpha)
    pmf       Marginal Pitman-Yor pmf rows as CSV
    simulate  Run simulation scenarios and write the results CSV
    curves    KL divergence and upper-bound curves for a generated population

Exit codes: 0 on success, 2 on unreadable input or scenario documents,
3 on unknown methods or parameters outside their domain.
"""

import argparse
import dataclasses
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
from rich.console import Console
from rich.progress import (
    BarColumn,
    MofNCompleteColumn,
    Progress,
    TextColumn,
    TimeElapsedColumn,
)

from unseen import __version__
from unseen.application.services.curve_service import (
    DEFAULT_ALPHA_MAX,
    DEFAULT_GRID_POINTS,
    default_alpha_grid,
)
from unseen.application.services.estimator_registry import normalize_method
from unseen.application.services.scenario_file_service import PROFILES
from unseen.config import ApplicationConfig, EstimationConfig, LoggingConfig
from unseen.container import ServiceContainer, create_container
from unseen.domain.exceptions import (
    CountsFileError,
    InvalidCountsError,
    InvalidParamsError,
    ScenarioConfigError,
    TruncationError,
    UnseenError,
)
from unseen.domain.models.counts_file import CountsFile, CountsFormat
from unseen.domain.models.execution import ExecutionConfig
from unseen.domain.models.frequency import FrequencyVector
from unseen.domain.models.params import PyParams
from unseen.domain.models.selection import SelectionConfig
from unseen.domain.models.simulation import PopulationKind, PopulationSpec, SimulationResult
from unseen.domain.services.marginal_pyp import DEFAULT_TRUNCATION_N
from unseen.infrastructure.logging.console import configure_logging
from unseen.presentation.cli import formatters

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INPUT_ERROR = 2
EXIT_PARAMS_ERROR = 3

METHOD_ALL = "all"
METHOD_DPYM = "dpym"


class UnknownMethodError(UnseenError):
    """Raised when the requested estimator does not exist."""


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    """
    Build the argument parser.

    Returns:
        Parser with global flags and one subparser per command
    """
    parser = argparse.ArgumentParser(
        prog="unseen",
        description="Entropy estimation for samples with unseen species.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "--seed",
        type=int,
        default=None,
        help="Random seed (curves; overrides scenario seeds in simulate)",
    )
    parser.add_argument("--format", choices=("json", "text"), default="text")
    parser.add_argument(
        "--threads", type=_positive_int, default=None, help="Simulation worker threads"
    )
    parser.add_argument(
        "--bits", action="store_true", help="Report entropy in bits instead of nats"
    )
    parser.add_argument(
        "--log-level",
        default="WARNING",
        choices=("DEBUG", "INFO", "WARNING", "ERROR"),
        help="Console log level (stderr)",
    )
    parser.add_argument(
        "--truncation-n",
        type=int,
        default=DEFAULT_TRUNCATION_N,
        help="Exactly summed terms of the Pitman-Yor tail entropy",
    )
    parser.add_argument(
        "--literal-boundary",
        action="store_true",
        help="Use (d0, 0) instead of (0, alpha_0) as the d = 0 candidate",
    )

    commands = parser.add_subparsers(dest="command", required=True)

    estimate = commands.add_parser("estimate", help="Estimate the entropy of a count file")
    estimate.add_argument("file", type=Path, help="Count file")
    estimate.add_argument(
        "--method",
        default="proposed",
        help="mle, miller-madow, chao-shen, proposed, dpym (with --d/--alpha) or all",
    )
    estimate.add_argument("--d", type=float, default=None, help="Discount for --method dpym")
    estimate.add_argument(
        "--alpha", type=float, default=None, help="Concentration for --method dpym"
    )
    estimate.add_argument(
        "--input-format",
        choices=[fmt.value for fmt in CountsFormat],
        default=CountsFormat.AUTO.value,
        help="Count file layout (auto: .csv suffix means species,count CSV)",
    )
    estimate.add_argument(
        "--matrix",
        action="store_true",
        help="Treat the file as a species-by-site abundance matrix",
    )

    select = commands.add_parser("select", help="Show the hyperparameter candidates")
    select.add_argument("file", type=Path, help="Count file")
    select.add_argument(
        "--input-format",
        choices=[fmt.value for fmt in CountsFormat],
        default=CountsFormat.AUTO.value,
    )

    pmf = commands.add_parser("pmf", help="Marginal Pitman-Yor pmf rows as CSV")
    pmf.add_argument("--d", type=float, required=True, help="Discount")
    pmf.add_argument("--alpha", type=float, default=None, help="Concentration")
    pmf.add_argument(
        "--first-mass",
        type=float,
        default=None,
        help="Choose alpha so that pmf(1) equals this value (instead of --alpha)",
    )
    pmf.add_argument("--k-max", type=_positive_int, default=100, help="Last k")

    simulate = commands.add_parser("simulate", help="Run simulation scenarios")
    simulate.add_argument("config", type=Path, nargs="?", help="Scenario JSON document")
    simulate.add_argument("--profile", choices=PROFILES, default=None, help="Shipped profile")
    simulate.add_argument("--out", type=Path, default=None, help="Results CSV (default: stdout)")
    simulate.add_argument("--dry-run", action="store_true", help="Validate without running")
    simulate.add_argument("--logs-dir", default=".logs", help="Run log directory")
    simulate.add_argument("--no-run-log", action="store_true", help="Skip the run log directory")

    curves = commands.add_parser("curves", help="KL and upper-bound curves as CSV")
    curves.add_argument("--K", type=_positive_int, default=500, help="Species in the population")
    curves.add_argument("--N", type=_positive_int, default=200, help="Sample size")
    curves.add_argument("--a", type=float, default=0.1, help="Symmetric Dirichlet parameter")
    curves.add_argument("--d", type=float, default=0.0, help="Discount held fixed")
    curves.add_argument("--points", type=_positive_int, default=DEFAULT_GRID_POINTS)
    curves.add_argument("--alpha-max", type=float, default=DEFAULT_ALPHA_MAX)
    return parser


class UnseenCli:
    """Dispatches parsed arguments to the library through a service container."""

    def __init__(self, args: argparse.Namespace, stdout: Optional[Console] = None):
        """
        Initialize the CLI for one invocation.

        Args:
            args: Parsed arguments
            stdout: Console for results (default: sys.stdout)
        """
        self.args = args
        self.stdout = stdout or Console(file=sys.stdout, soft_wrap=True)
        self.stderr = Console(file=sys.stderr)
        self.container = self._build_container(args)

    def _build_container(self, args: argparse.Namespace) -> ServiceContainer:
        file_logging = args.command == "simulate" and not args.no_run_log and not args.dry_run
        config = ApplicationConfig(
            logging=LoggingConfig(
                logs_dir=getattr(args, "logs_dir", ".logs"),
                enable_file_logging=file_logging,
                log_level=args.log_level,
            ),
            estimation=EstimationConfig(
                truncation_n=args.truncation_n,
                selection=SelectionConfig(literal_boundary=args.literal_boundary),
            ),
            execution=ExecutionConfig.with_threads(args.threads),
        )
        return create_container(config)

    def run(self) -> int:
        """Run the selected command and return its exit code."""
        handler = getattr(self, f"cmd_{self.args.command}")
        return handler()

    # ----------------------------------------------------------------- estimate

    def cmd_estimate(self) -> int:
        """Estimate the entropy of a count file."""
        method = normalize_method(self.args.method)
        estimators = self._resolve_estimators(method)

        if self.args.matrix:
            return self._estimate_matrix(estimators)

        y = self._read_counts(self.args.file)
        records = [formatters.estimate_record(est(y), self.args.bits) for est in estimators]
        if self.args.format == "json":
            if method == METHOD_ALL:
                payload: Dict[str, Any] = {
                    "sample": formatters.sample_record(y),
                    "estimates": records,
                }
            else:
                payload = {"sample": formatters.sample_record(y), **records[0]}
            self._print_json(payload)
        else:
            formatters.print_estimates(self.stdout, y, records, title=str(self.args.file))
        return EXIT_OK

    def _resolve_estimators(self, method: str) -> List[Any]:
        registry = self.container.estimator_registry
        if method == METHOD_ALL:
            return [registry.get_estimator(name) for name in registry.get_all_methods()]
        if method in (METHOD_DPYM, "dpym_fixed"):
            if self.args.d is None or self.args.alpha is None:
                raise UnknownMethodError("--method dpym needs both --d and --alpha")
            return [registry.fixed_dpym(PyParams(self.args.d, self.args.alpha))]
        if not registry.is_registered(method):
            known = ", ".join(registry.get_all_methods() + [METHOD_DPYM, METHOD_ALL])
            raise UnknownMethodError(f"Unknown method '{self.args.method}' (known: {known})")
        return [registry.get_estimator(method)]

    def _estimate_matrix(self, estimators: List[Any]) -> int:
        matrix = self.container.counts_file_service.read_matrix(self.args.file)
        if not matrix.columns:
            raise CountsFileError(f"{self.args.file}: no site column holds a usable sample")

        sites = {
            site: [formatters.estimate_record(est(y), self.args.bits) for est in estimators]
            for site, y in matrix.columns.items()
        }
        if self.args.format == "json":
            self._print_json(
                {
                    "sites": {
                        site: {
                            "sample": formatters.sample_record(matrix.columns[site]),
                            "estimates": records,
                        }
                        for site, records in sites.items()
                    },
                    "errors": matrix.errors,
                }
            )
        else:
            for site, records in sites.items():
                formatters.print_estimates(self.stdout, matrix.columns[site], records, title=site)
            for site, reason in matrix.errors.items():
                self.stderr.print(f"skipped {site}: {reason}", markup=False, highlight=False)
        return EXIT_OK

    # ------------------------------------------------------------------- select

    def cmd_select(self) -> int:
        """Show the candidate set and the chosen pair."""
        y = self._read_counts(self.args.file)
        params, diagnostics = self.container.selector.select_params(
            y, self.container.config.estimation.selection
        )
        record = formatters.selection_record(y, params, diagnostics)
        if self.args.format == "json":
            self._print_json(record)
        else:
            formatters.print_selection(self.stdout, record)
        return EXIT_OK

    # ---------------------------------------------------------------------- pmf

    def cmd_pmf(self) -> int:
        """Emit pmf rows for k = 1..k_max."""
        marginal = self.container.marginal
        if self.args.first_mass is not None:
            alpha = marginal.alpha_for_first_mass(self.args.d, self.args.first_mass)
        elif self.args.alpha is not None:
            alpha = self.args.alpha
        else:
            raise InvalidParamsError("pmf needs --alpha or --first-mass")

        params = PyParams(self.args.d, alpha)
        rows = marginal.pmf_table(params, self.args.k_max)
        if self.args.format == "json":
            self._print_json(
                {**params.to_dict(), "rows": [{"k": k, "pmf": p} for k, p in rows]}
            )
        else:
            formatters.write_csv(sys.stdout, ("k", "pmf"), rows)
        return EXIT_OK

    # ----------------------------------------------------------------- simulate

    def cmd_simulate(self) -> int:
        """Run scenarios and write the results CSV."""
        files = self.container.scenario_file_service
        if self.args.profile and self.args.config:
            raise ScenarioConfigError("Give either a scenario file or --profile, not both")
        if self.args.profile:
            scenarios = files.load_profile(self.args.profile)
        elif self.args.config:
            scenarios = files.load_file(self.args.config)
        else:
            raise ScenarioConfigError("simulate needs a scenario file or --profile")

        if self.args.seed is not None:
            scenarios = [dataclasses.replace(s, master_seed=self.args.seed) for s in scenarios]

        if self.args.dry_run:
            if self.args.format == "json":
                self._print_json({"scenarios": [s.to_dict() for s in scenarios]})
            else:
                self.stdout.print(formatters.scenarios_table(scenarios))
            return EXIT_OK

        result = SimulationResult()
        runner = self.container.simulation_runner
        with Progress(
            TextColumn("{task.description}"),
            BarColumn(),
            MofNCompleteColumn(),
            TimeElapsedColumn(),
            console=self.stderr,
            transient=True,
        ) as progress:
            for scenario in scenarios:
                task = progress.add_task(scenario.id, total=scenario.task_count)
                result.extend(
                    runner.run_scenario(
                        scenario,
                        on_progress=lambda done, _total, task=task: progress.update(
                            task, completed=done
                        ),
                    )
                )

        if result.failures:
            self.stderr.print(
                f"{result.failures} estimator evaluations failed; see the run log",
                markup=False,
            )
        if self.args.out:
            files.write_results_csv(result.rows, self.args.out)
            self.stderr.print(f"Wrote {len(result.rows)} rows to {self.args.out}", markup=False)
        else:
            sys.stdout.write(files.render_csv(result.rows))
        return EXIT_OK

    # ------------------------------------------------------------------- curves

    def cmd_curves(self) -> int:
        """Emit alpha, KL and bound-gap rows for a generated population."""
        population = self.container.population_service
        rng = np.random.default_rng(self.args.seed if self.args.seed is not None else 0)
        spec = PopulationSpec(PopulationKind.DIRICHLET_SYMMETRIC, self.args.K, a=self.args.a)
        p = population.gen_population(spec, rng)
        sample = population.sample_labeled(p, self.args.N, rng)

        grid = default_alpha_grid(self.args.d, self.args.points, self.args.alpha_max)
        points = self.container.curve_service.curve_sweep(sample, self.args.d, grid)
        if self.args.format == "json":
            self._print_json([dataclasses.asdict(point) for point in points])
        else:
            formatters.write_csv(
                sys.stdout,
                ("alpha", "kl", "bound_gap"),
                [(point.alpha, point.kl, point.bound_gap) for point in points],
            )
        return EXIT_OK

    # ------------------------------------------------------------------ helpers

    def _read_counts(self, path: Path) -> FrequencyVector:
        fmt = CountsFormat(self.args.input_format)
        return self.container.counts_file_service.read(CountsFile(path, fmt))

    def _print_json(self, payload: Any) -> None:
        sys.stdout.write(formatters.render_json(payload) + "\n")


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    CLI entry point.

    Args:
        argv: Arguments without the program name (default: sys.argv[1:])

    Returns:
        Process exit code
    """
    args = build_parser().parse_args(argv)
    configure_logging(LoggingConfig(log_level=args.log_level))
    stderr = Console(file=sys.stderr)

    try:
        return UnseenCli(args).run()
    except (CountsFileError, InvalidCountsError, ScenarioConfigError) as e:
        stderr.print(f"error: {e}", style="red", markup=False, highlight=False)
        return EXIT_INPUT_ERROR
    except (UnknownMethodError, InvalidParamsError, TruncationError) as e:
        stderr.print(f"error: {e}", style="red", markup=False, highlight=False)
        return EXIT_PARAMS_ERROR
    except UnseenError as e:
        logger.debug("Unhandled library error", exc_info=True)
        stderr.print(f"error: {e}", style="red", markup=False, highlight=False)
        return EXIT_FAILURE


if __name__ == "__main__":
    raise SystemExit(main())
