"""Count file domain models."""

from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Dict

from unseen.domain.models.frequency import FrequencyVector


class CountsFormat(Enum):
    """Layouts accepted for count files."""

    LINES = "lines"  # One nonnegative integer per line
    CSV = "csv"  # Header species,count; one row per species
    AUTO = "auto"  # CSV when the file name ends in .csv, lines otherwise


@dataclass(frozen=True)
class CountsFile:
    """
    A count file on disk.

    Attributes:
        path: Location of the file
        format: Declared layout
    """

    path: Path
    format: CountsFormat = CountsFormat.AUTO

    def resolved_format(self) -> CountsFormat:
        """Return the concrete layout, resolving AUTO from the file suffix."""
        if self.format is not CountsFormat.AUTO:
            return self.format
        return CountsFormat.CSV if self.path.suffix.lower() == ".csv" else CountsFormat.LINES


@dataclass
class AbundanceMatrix:
    """
    Species-by-site abundance table split into per-site samples.

    Attributes:
        columns: Site name -> frequency vector, in file column order
        errors: Site name -> reason the column could not form a sample
    """

    columns: Dict[str, FrequencyVector] = field(default_factory=dict)
    errors: Dict[str, str] = field(default_factory=dict)
