"""
Count file ingestion.

Two single-sample layouts are accepted: one nonnegative integer per line, or
a CSV with a species,count header. Species-by-site abundance matrices (first
column the species label, one count column per site) are split into one
sample per column.
"""

import csv
import logging
from pathlib import Path
from typing import List, Tuple, Union

from unseen.domain.exceptions import CountsFileError, InvalidCountsError
from unseen.domain.models.counts_file import AbundanceMatrix, CountsFile, CountsFormat
from unseen.domain.models.frequency import FrequencyVector

logger = logging.getLogger(__name__)

CSV_HEADER = ("species", "count")


def _parse_count(text: str, where: str) -> int:
    try:
        value = int(text.strip())
    except ValueError:
        raise CountsFileError(
            f"{where}: expected a nonnegative integer, got {text.strip()!r}"
        ) from None
    if value < 0:
        raise CountsFileError(f"{where}: counts must be nonnegative, got {value}")
    return value


class CountsFileService:
    """Reads count files into frequency vectors."""

    def read(self, source: Union[CountsFile, str, Path]) -> FrequencyVector:
        """
        Read one sample.

        Args:
            source: Count file, or a path whose suffix selects the layout

        Returns:
            FrequencyVector over the positive counts

        Raises:
            CountsFileError: If the file is unreadable, malformed or holds no positive count
        """
        counts_file = source if isinstance(source, CountsFile) else CountsFile(Path(source))
        text = self._read_text(counts_file.path)

        if counts_file.resolved_format() is CountsFormat.CSV:
            raw = self._parse_csv(text, counts_file.path)
        else:
            raw = self._parse_lines(text, counts_file.path)

        try:
            y = FrequencyVector.from_counts(raw)
        except InvalidCountsError as e:
            raise CountsFileError(f"{counts_file.path}: {e}") from e
        logger.info(f"Read {counts_file.path}: N={y.N}, T={y.T}, m1={y.m1}")
        return y

    def read_matrix(self, path: Union[str, Path]) -> AbundanceMatrix:
        """
        Read a species-by-site abundance matrix.

        Columns that cannot form a sample (all zeros, bad cells) are reported
        in `errors` instead of failing the whole file.

        Args:
            path: CSV file with a header row of site names

        Returns:
            AbundanceMatrix with one FrequencyVector per usable column

        Raises:
            CountsFileError: If the file is unreadable or has no site columns
        """
        path = Path(path)
        rows = list(csv.reader(self._read_text(path).splitlines()))
        rows = [row for row in rows if any(cell.strip() for cell in row)]
        if len(rows) < 2:
            raise CountsFileError(f"{path}: matrix needs a header row and at least one species")

        header = [cell.strip() for cell in rows[0]]
        sites = header[1:]
        if not sites:
            raise CountsFileError(f"{path}: matrix has no site columns")
        if len(set(sites)) != len(sites):
            raise CountsFileError(f"{path}: duplicate site names in header")
        self._check_unique_labels([row[0].strip() for row in rows[1:]], path)

        matrix = AbundanceMatrix()
        for column, site in enumerate(sites, start=1):
            try:
                raw = []
                for line, row in enumerate(rows[1:], start=2):
                    if column >= len(row):
                        raise CountsFileError(f"line {line}: missing value")
                    raw.append(_parse_count(row[column], f"line {line}"))
                matrix.columns[site] = FrequencyVector.from_counts(raw)
            except (CountsFileError, InvalidCountsError) as e:
                matrix.errors[site] = str(e)
                logger.warning(f"{path}: site {site!r} skipped: {e}")
        return matrix

    def _read_text(self, path: Path) -> str:
        if not path.exists():
            raise CountsFileError(f"Counts file not found: {path}")
        try:
            return path.read_text(encoding="utf-8-sig")
        except (OSError, UnicodeDecodeError) as e:
            raise CountsFileError(f"Failed to read file {path}: {e}") from e

    def _parse_lines(self, text: str, path: Path) -> List[int]:
        raw = [
            _parse_count(line, f"{path}:{number}")
            for number, line in enumerate(text.splitlines(), start=1)
            if line.strip()
        ]
        if not raw:
            raise CountsFileError(f"{path}: no counts found")
        return raw

    def _parse_csv(self, text: str, path: Path) -> List[int]:
        rows = [row for row in csv.reader(text.splitlines()) if any(c.strip() for c in row)]
        if not rows:
            raise CountsFileError(f"{path}: no counts found")

        header = tuple(cell.strip().lower() for cell in rows[0])
        if header != CSV_HEADER:
            raise CountsFileError(f"{path}: expected header 'species,count', got {rows[0]}")

        entries: List[Tuple[str, int]] = []
        for number, row in enumerate(rows[1:], start=2):
            if len(row) != 2:
                raise CountsFileError(f"{path}:{number}: expected 2 fields, got {len(row)}")
            entries.append((row[0].strip(), _parse_count(row[1], f"{path}:{number}")))
        if not entries:
            raise CountsFileError(f"{path}: no counts found")

        self._check_unique_labels([label for label, _ in entries], path)
        return [count for _, count in entries]

    def _check_unique_labels(self, labels: List[str], path: Path) -> None:
        seen = set()
        for label in labels:
            if label in seen:
                raise CountsFileError(f"{path}: duplicate species label {label!r}")
            seen.add(label)
