"""
Output rendering for the command line.

Numbers are printed with 15 significant digits in every format. Entropy
values can be converted to bits here; the library always works in nats.
"""

import csv
import json
import math
from typing import Any, Dict, Iterable, Optional, Sequence, TextIO

from rich.console import Console
from rich.table import Table

from unseen.application.services.scenario_file_service import format_number
from unseen.domain.models.estimate import EntropyEstimate
from unseen.domain.models.frequency import FrequencyVector
from unseen.domain.models.params import PyParams
from unseen.domain.models.selection import SelectionDiagnostics
from unseen.domain.models.simulation import ScenarioConfig


def round_significant(value: float) -> float:
    """Round a float to 15 significant digits."""
    if not math.isfinite(value):
        return value
    return float(format_number(value))


def to_jsonable(obj: Any) -> Any:
    """Recursively round floats in dicts and lists to 15 significant digits."""
    if isinstance(obj, float):
        return round_significant(obj)
    if isinstance(obj, dict):
        return {key: to_jsonable(value) for key, value in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(value) for value in obj]
    return obj


def render_json(record: Any) -> str:
    """Serialize a record as indented JSON."""
    return json.dumps(to_jsonable(record), indent=2)


def unit_name(bits: bool) -> str:
    """Entropy unit label for the requested base."""
    return "bits" if bits else "nats"


def convert_entropy(value: Optional[float], bits: bool) -> Optional[float]:
    """Convert nats to bits when requested."""
    if value is None or not bits:
        return value
    return value / math.log(2.0)


def sample_record(y: FrequencyVector) -> Dict[str, Any]:
    """Summary of the observed sample."""
    return y.to_dict()


def estimate_record(estimate: EntropyEstimate, bits: bool = False) -> Dict[str, Any]:
    """
    Flatten an estimate for output.

    Args:
        estimate: Library result
        bits: Report entropy and remainder in bits

    Returns:
        Dictionary with method, entropy, unit and diagnostics
    """
    record = estimate.to_dict()
    record["entropy"] = convert_entropy(estimate.value, bits)
    record["remainder_bound"] = convert_entropy(estimate.remainder_bound, bits)
    record["unit"] = unit_name(bits)
    return record


def selection_record(
    y: FrequencyVector, params: PyParams, diagnostics: SelectionDiagnostics
) -> Dict[str, Any]:
    """Selected pair plus the full candidate record."""
    return {"sample": sample_record(y), "selected": params.to_dict(), **diagnostics.to_dict()}


def _cell(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, float):
        return format_number(value)
    return str(value)


def estimates_table(records: Sequence[Dict[str, Any]], title: str = "Entropy estimates") -> Table:
    """
    Table of estimates, one row per method.

    Args:
        records: Output of estimate_record
        title: Table title

    Returns:
        rich Table
    """
    unit = records[0]["unit"] if records else "nats"
    table = Table(title=title)
    table.add_column("method")
    table.add_column(f"entropy ({unit})", justify="right")
    table.add_column("d", justify="right")
    table.add_column("alpha", justify="right")
    table.add_column("truncation_n", justify="right")
    for record in records:
        params = record["params"] or {}
        table.add_row(
            record["method"],
            _cell(record["entropy"]),
            _cell(params.get("d")),
            _cell(params.get("alpha")),
            _cell(record["truncation_n"]),
        )
    return table


def candidates_table(selection: Dict[str, Any]) -> Table:
    """
    Table of the evaluated candidates with the chosen one marked.

    Args:
        selection: SelectionDiagnostics.to_dict() output

    Returns:
        rich Table
    """
    table = Table(title=f"Candidates (rule: {selection['rule']})")
    table.add_column("")
    table.add_column("label")
    table.add_column("d", justify="right")
    table.add_column("alpha", justify="right")
    table.add_column("objective", justify="right")
    chosen = selection["chosen"]
    for candidate in selection["candidates"]:
        table.add_row(
            "*" if candidate == chosen else "",
            candidate["label"],
            _cell(candidate["d"]),
            _cell(candidate["alpha"]),
            _cell(candidate["objective"]),
        )
    return table


def print_estimates(
    console: Console, y: FrequencyVector, records: Sequence[Dict[str, Any]], title: str
) -> None:
    """Text rendering of one sample's estimates."""
    console.print(f"N={y.N} T={y.T} m1={y.m1}", markup=False, highlight=False)
    console.print(estimates_table(records, title))
    for record in records:
        if record["selection"]:
            console.print(candidates_table(record["selection"]))


def print_selection(console: Console, record: Dict[str, Any]) -> None:
    """Text rendering of a selection run."""
    sample = record["sample"]
    selected = record["selected"]
    console.print(
        f"N={sample['N']} T={sample['T']} m1={sample['m1']}  "
        f"selected d={format_number(selected['d'])} alpha={format_number(selected['alpha'])}",
        markup=False,
        highlight=False,
    )
    if record["singleton_clamped"]:
        console.print("all observations are singletons: m1 clamped to N - 1", markup=False)
    console.print(candidates_table(record))


def scenarios_table(scenarios: Iterable[ScenarioConfig]) -> Table:
    """Summary of validated scenarios for dry runs."""
    table = Table(title="Scenarios")
    table.add_column("id")
    table.add_column("population")
    table.add_column("sample sizes")
    table.add_column("reps", justify="right")
    table.add_column("tasks", justify="right")
    table.add_column("estimators")
    for scenario in scenarios:
        table.add_row(
            scenario.id,
            scenario.population.description,
            ",".join(str(n) for n in scenario.sample_sizes),
            str(scenario.replications),
            str(scenario.task_count),
            ", ".join(spec.label for spec in scenario.estimators),
        )
    return table


def write_csv(stream: TextIO, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
    """
    Write rows as CSV with floats at 15 significant digits.

    Args:
        stream: Destination text stream
        header: Column names
        rows: Row values
    """
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_csv_value(value) for value in row])


def _csv_value(value: Any) -> Any:
    return format_number(value) if isinstance(value, float) else value

