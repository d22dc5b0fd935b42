"""
Scenario documents and result files.

Scenario documents are JSON. A document is either a single scenario object or
an object with a "scenarios" list and an optional "defaults" object whose
fields each scenario inherits unless it sets them itself:

    {
      "defaults": {"sample_sizes": [10, 100], "replications": 200,
                   "master_seed": 20240101, "estimators": ["mle", "proposed"]},
      "scenarios": [
        {"id": "dir01", "population": {"kind": "dirichlet_symmetric", "K": 5000, "a": 0.1}},
        {"id": "zipf1", "population": {"kind": "zipf", "K": 5000, "s": 1.0}}
      ]
    }

Estimators are method names (mle, miller_madow, chao_shen, proposed) or
{"method": "dpym_fixed", "d": ..., "alpha": ...} objects.

Results are written as RFC-4180 CSV with the header
scenario,N,method,mse,bias,variance,reps,seed and 15 significant digits.
"""

import csv
import io
import json
import logging
from importlib import resources
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Union

from unseen.application.services.estimator_registry import normalize_method
from unseen.domain.exceptions import InvalidParamsError, ScenarioConfigError
from unseen.domain.models.estimate import EstimatorMethod
from unseen.domain.models.params import PyParams
from unseen.domain.models.simulation import (
    EstimatorSpec,
    PopulationKind,
    PopulationSpec,
    ScenarioConfig,
    SimulationRow,
)

logger = logging.getLogger(__name__)

RESULT_HEADER = ["scenario", "N", "method", "mse", "bias", "variance", "reps", "seed"]
PROFILES = ("desk", "full")
_SCENARIO_FIELDS = {"id", "population", "sample_sizes", "replications", "master_seed", "estimators"}


def format_number(value: Optional[float]) -> str:
    """Render a float with 15 significant digits; None renders as an empty field."""
    if value is None:
        return ""
    return format(value, ".15g")


def _require_int(value: Any, name: str, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ScenarioConfigError(f"{where}: {name} must be an integer, got {value!r}")
    return value


def _optional_number(data: Dict[str, Any], name: str, where: str) -> Optional[float]:
    if name not in data:
        return None
    value = data[name]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioConfigError(f"{where}: {name} must be a number, got {value!r}")
    return float(value)


class ScenarioFileService:
    """Reads scenario documents and writes simulation results."""

    def load_file(self, filepath: Union[str, Path]) -> List[ScenarioConfig]:
        """
        Load scenarios from a JSON file.

        Args:
            filepath: Path to the scenario document

        Returns:
            Scenarios in document order

        Raises:
            ScenarioConfigError: If the file is missing, not JSON, or violates the schema
        """
        path = Path(filepath)
        if not path.exists():
            raise ScenarioConfigError(f"Scenario file not found: {filepath}")
        try:
            with open(path, "r", encoding="utf-8") as f:
                data = json.load(f)
        except json.JSONDecodeError as e:
            raise ScenarioConfigError(f"Invalid JSON in file {filepath}: {e}") from e
        except OSError as e:
            raise ScenarioConfigError(f"Failed to read file {filepath}: {e}") from e
        return self.parse_document(data)

    def load_profile(self, name: str) -> List[ScenarioConfig]:
        """
        Load a shipped scenario profile.

        Args:
            name: Profile name (desk or full)

        Returns:
            Scenarios of the profile

        Raises:
            ScenarioConfigError: If the profile does not exist
        """
        if name not in PROFILES:
            raise ScenarioConfigError(f"Unknown profile '{name}', expected one of {PROFILES}")
        text = resources.files("unseen.profiles").joinpath(f"{name}.json").read_text("utf-8")
        return self.parse_document(json.loads(text))

    def parse_document(self, data: Any) -> List[ScenarioConfig]:
        """
        Build scenarios from a decoded JSON document.

        Args:
            data: Decoded document

        Returns:
            Scenarios in document order

        Raises:
            ScenarioConfigError: On any schema violation
        """
        if not isinstance(data, dict):
            raise ScenarioConfigError("Scenario document must be a JSON object")

        if "scenarios" not in data:
            return [self.parse_scenario(data)]

        defaults = data.get("defaults", {})
        entries = data["scenarios"]
        if not isinstance(defaults, dict):
            raise ScenarioConfigError("'defaults' must be an object")
        if not isinstance(entries, list) or not entries:
            raise ScenarioConfigError("'scenarios' must be a non-empty list")

        scenarios = []
        for entry in entries:
            if not isinstance(entry, dict):
                raise ScenarioConfigError(f"Scenario entries must be objects, got {entry!r}")
            scenarios.append(self.parse_scenario({**defaults, **entry}))

        ids = [scenario.id for scenario in scenarios]
        if len(set(ids)) != len(ids):
            raise ScenarioConfigError(f"Duplicate scenario ids: {ids}")
        logger.info(f"Loaded {len(scenarios)} scenarios: {', '.join(ids)}")
        return scenarios

    def parse_scenario(self, data: Dict[str, Any]) -> ScenarioConfig:
        """
        Build one scenario.

        Args:
            data: Scenario object with every field present

        Returns:
            ScenarioConfig

        Raises:
            ScenarioConfigError: On missing, unknown or malformed fields
        """
        where = f"scenario {data.get('id', '<unnamed>')!r}"
        missing = sorted(_SCENARIO_FIELDS - data.keys())
        if missing:
            raise ScenarioConfigError(f"{where}: missing fields {missing}")
        unknown = sorted(data.keys() - _SCENARIO_FIELDS)
        if unknown:
            raise ScenarioConfigError(f"{where}: unknown fields {unknown}")

        if not isinstance(data["id"], str):
            raise ScenarioConfigError(f"{where}: id must be a string")
        sizes = data["sample_sizes"]
        if not isinstance(sizes, list):
            raise ScenarioConfigError(f"{where}: sample_sizes must be a list")
        estimators = data["estimators"]
        if not isinstance(estimators, list):
            raise ScenarioConfigError(f"{where}: estimators must be a list")

        return ScenarioConfig(
            id=data["id"],
            population=self.parse_population(data["population"], where),
            sample_sizes=[_require_int(n, "sample size", where) for n in sizes],
            replications=_require_int(data["replications"], "replications", where),
            master_seed=_require_int(data["master_seed"], "master_seed", where),
            estimators=[self.parse_estimator(entry, where) for entry in estimators],
        )

    def parse_population(self, data: Any, where: str = "scenario") -> PopulationSpec:
        """
        Build a population spec from {"kind": ..., "K": ..., parameters...}.

        Raises:
            ScenarioConfigError: On unknown kinds or malformed parameters
        """
        if not isinstance(data, dict) or "kind" not in data or "K" not in data:
            raise ScenarioConfigError(f"{where}: population needs 'kind' and 'K'")
        try:
            kind = PopulationKind(data["kind"])
        except ValueError:
            kinds = [k.value for k in PopulationKind]
            raise ScenarioConfigError(
                f"{where}: unknown population kind {data['kind']!r}, expected one of {kinds}"
            ) from None
        return PopulationSpec(
            kind=kind,
            K=_require_int(data["K"], "K", where),
            a=_optional_number(data, "a", where),
            a_low=_optional_number(data, "a_low", where),
            a_high=_optional_number(data, "a_high", where),
            s=_optional_number(data, "s", where),
        )

    def parse_estimator(self, entry: Any, where: str = "scenario") -> EstimatorSpec:
        """
        Build an estimator entry from a method name or a {"method": ...} object.

        Only dpym_fixed carries 'd' and 'alpha'; the other methods accept the
        bare object form {"method": "mle"}.

        Raises:
            ScenarioConfigError: On unknown methods or invalid fixed parameters
        """
        if isinstance(entry, str):
            name = entry
        elif isinstance(entry, dict) and "method" in entry:
            name = entry["method"]
        else:
            raise ScenarioConfigError(f"{where}: invalid estimator entry {entry!r}")

        try:
            method = EstimatorMethod(normalize_method(str(name)))
        except ValueError:
            methods = [m.value for m in EstimatorMethod]
            raise ScenarioConfigError(
                f"{where}: unknown estimator {name!r}, expected one of {methods}"
            ) from None

        if not isinstance(entry, dict):
            if method is EstimatorMethod.DPYM_FIXED:
                raise ScenarioConfigError(f"{where}: {name!r} needs both 'd' and 'alpha'")
            return EstimatorSpec(method)

        d = _optional_number(entry, "d", where)
        alpha = _optional_number(entry, "alpha", where)
        if method is not EstimatorMethod.DPYM_FIXED:
            if d is not None or alpha is not None:
                raise ScenarioConfigError(f"{where}: {name!r} takes no 'd' or 'alpha'")
            return EstimatorSpec(method)
        if d is None or alpha is None:
            raise ScenarioConfigError(f"{where}: {name!r} needs both 'd' and 'alpha'")
        try:
            return EstimatorSpec(method, PyParams(d, alpha))
        except InvalidParamsError as e:
            raise ScenarioConfigError(f"{where}: {e}") from e

    def render_csv(self, rows: Iterable[SimulationRow]) -> str:
        """
        Render result rows as CSV text.

        Args:
            rows: Result rows in output order

        Returns:
            CSV with CRLF line endings
        """
        buffer = io.StringIO(newline="")
        writer = csv.writer(buffer)
        writer.writerow(RESULT_HEADER)
        for row in rows:
            writer.writerow(
                [
                    row.scenario,
                    row.N,
                    row.method,
                    format_number(row.mse),
                    format_number(row.bias),
                    format_number(row.variance),
                    row.reps,
                    row.seed,
                ]
            )
        return buffer.getvalue()

    def write_results_csv(self, rows: Iterable[SimulationRow], filepath: Union[str, Path]) -> None:
        """
        Write result rows to a UTF-8 CSV file, creating parent directories.

        Args:
            rows: Result rows in output order
            filepath: Destination path
        """
        path = Path(filepath)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as f:
            f.write(self.render_csv(rows))
        logger.info(f"Wrote results to {path}")
