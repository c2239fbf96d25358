"""CSV ingestion, sequential train/test splitting, and case-base persistence."""

from __future__ import annotations

import csv
import logging
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import IO, Iterable, Iterator

from .cases import (
    FEATURE_NAMES,
    TARGET_NAME,
    Case,
    CaseValidationError,
    validate_case,
)

logger = logging.getLogger(__name__)

CANONICAL_HEADER: tuple[str, ...] = FEATURE_NAMES + (TARGET_NAME,)
# The literature around this data uses "gender" and "resttbps"; the public
# CSV uses "sex" and "trestbps". Both spellings are accepted.
HEADER_ALIASES = {"gender": "sex", "resttbps": "trestbps"}
CASE_ID_COLUMN = "case_id"


class DatasetError(ValueError):
    """A file could not be parsed or persisted."""


class DegenerateSplitError(DatasetError):
    """A requested split would leave the train or test side empty."""


class CaseBase:
    """Ordered store of solved cases with stable, strictly increasing ids.

    This is the CBR memory: ids are assigned in insertion order and never
    reused, every stored case carries a target, and existing entries are
    never mutated (retain only appends). Single writer, any number of
    concurrent readers.
    """

    def __init__(self, entries: Iterable[tuple[int, Case]] = ()):
        self._ids: list[int] = []
        self._cases: list[Case] = []
        for case_id, case in entries:
            self._insert(case_id, case)

    @classmethod
    def from_cases(cls, cases: Iterable[Case]) -> "CaseBase":
        base = cls()
        for case in cases:
            base.add(case)
        return base

    def _insert(self, case_id: int, case: Case) -> None:
        if case.target is None:
            raise DatasetError(f"case {case_id}: stored cases must have a target")
        if self._ids and case_id <= self._ids[-1]:
            raise DatasetError(
                f"case_id {case_id} not strictly increasing (last was {self._ids[-1]})"
            )
        if case_id < 0:
            raise DatasetError(f"case_id {case_id} must be non-negative")
        self._ids.append(case_id)
        self._cases.append(case)

    def add(self, case: Case) -> int:
        """Append a solved case under a fresh id and return that id."""
        case_id = self._ids[-1] + 1 if self._ids else 0
        self._insert(case_id, case)
        return case_id

    def cases(self) -> list[Case]:
        return list(self._cases)

    def ids(self) -> list[int]:
        return list(self._ids)

    def __iter__(self) -> Iterator[tuple[int, Case]]:
        return iter(zip(self._ids, self._cases))

    def __len__(self) -> int:
        return len(self._ids)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CaseBase):
            return NotImplemented
        return self._ids == other._ids and self._cases == other._cases

    def __repr__(self) -> str:
        return f"CaseBase(n={len(self)})"


@dataclass(frozen=True)
class SplitResult:
    """Sequential split: train precedes test in original file order."""

    train: CaseBase
    test: tuple[Case, ...]


def _open_source(source) -> tuple[IO[str], bool]:
    if isinstance(source, (str, Path)):
        return open(source, "r", encoding="utf-8", newline=""), True
    if isinstance(source, bytes):
        import io

        return io.StringIO(source.decode("utf-8")), False
    if hasattr(source, "read"):
        data = source.read()
        if isinstance(data, bytes):
            data = data.decode("utf-8")
        import io

        return io.StringIO(data), False
    raise TypeError(f"unsupported source type {type(source)!r}")


def _resolve_header(raw_header: list[str], *, allow_case_id: bool) -> dict[str, int]:
    """Map canonical column names to positions, applying aliases."""
    positions: dict[str, int] = {}
    for idx, raw_name in enumerate(raw_header):
        name = raw_name.strip().lower()
        name = HEADER_ALIASES.get(name, name)
        if name == CASE_ID_COLUMN and allow_case_id:
            pass
        elif name not in CANONICAL_HEADER:
            raise DatasetError(f"unknown column {raw_name!r}")
        if name in positions:
            raise DatasetError(f"duplicate column {raw_name!r}")
        positions[name] = idx
    missing = [name for name in FEATURE_NAMES if name not in positions]
    if missing:
        raise DatasetError(f"missing columns: {', '.join(missing)}")
    return positions


def parse_csv(source, mode: str = "lenient") -> list[Case]:
    """Read a heart-disease CSV into cases, preserving file order.

    The first row must be a header with the 13 attribute columns (aliases
    accepted, case-insensitive); a target column is optional. Row-level
    failures raise :class:`DatasetError` citing the 1-based file line.
    Lenient-mode domain warnings are aggregated into one log message.
    """
    stream, should_close = _open_source(source)
    try:
        reader = csv.reader(stream)
        try:
            raw_header = next(reader)
        except StopIteration:
            raise DatasetError("empty file: no header row") from None
        positions = _resolve_header(raw_header, allow_case_id=False)
        width = len(raw_header)

        cases: list[Case] = []
        warning_counts: Counter[str] = Counter()
        for line_no, row in enumerate(reader, start=2):
            if not row or all(cell.strip() == "" for cell in row):
                continue
            if len(row) != width:
                raise DatasetError(
                    f"line {line_no}: expected {width} fields, found {len(row)}"
                )
            raw = {name: row[idx] for name, idx in positions.items()}
            try:
                case, warnings = validate_case(raw, mode)
            except CaseValidationError as exc:
                raise DatasetError(f"line {line_no}: {exc}") from exc
            for message in warnings:
                warning_counts[message.split(":", 1)[0]] += 1
            cases.append(case)

        if warning_counts:
            logger.warning(
                "accepted %d out-of-domain values in lenient mode: %s",
                sum(warning_counts.values()),
                dict(warning_counts),
            )
        return cases
    finally:
        if should_close:
            stream.close()


def _as_fraction(train_fraction) -> Fraction:
    # Fractions given as floats are read back through their shortest decimal
    # repr, so 0.6 means six tenths exactly and floor(5 * 0.6) is 3.
    if isinstance(train_fraction, Fraction):
        return train_fraction
    if isinstance(train_fraction, float):
        return Fraction(str(train_fraction))
    return Fraction(train_fraction)


def split_sequential(cases: list[Case], train_fraction=Fraction(3, 5)) -> SplitResult:
    """Split by file order: first floor(n * fraction) cases train, rest test."""
    if not cases:
        raise DatasetError("cannot split an empty case list")
    fraction = _as_fraction(train_fraction)
    if not 0 < fraction < 1:
        raise DatasetError(f"train fraction {fraction} outside (0, 1)")
    n_train = math.floor(len(cases) * fraction)
    if n_train < 1 or n_train >= len(cases):
        raise DegenerateSplitError(
            f"split of {len(cases)} cases at fraction {fraction} leaves an empty side"
        )
    train = CaseBase.from_cases(cases[:n_train])
    return SplitResult(train=train, test=tuple(cases[n_train:]))


def _format_value(name: str, value) -> str:
    if name == "oldpeak":
        return repr(float(value))
    return str(int(value))


def write_cases(cases: Iterable[Case], sink) -> None:
    """Write cases as a canonical-header CSV readable by :func:`parse_csv`."""
    own = isinstance(sink, (str, Path))
    stream = open(sink, "w", encoding="utf-8", newline="") if own else sink
    try:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(CANONICAL_HEADER)
        for case in cases:
            row = [_format_value(name, getattr(case, name)) for name in FEATURE_NAMES]
            row.append("" if case.target is None else str(case.target))
            writer.writerow(row)
    finally:
        if own:
            stream.close()


def write_case_base(case_base: CaseBase, sink) -> None:
    """Persist a case base as CSV: case_id column plus the canonical header."""
    own = isinstance(sink, (str, Path))
    stream = open(sink, "w", encoding="utf-8", newline="") if own else sink
    try:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow((CASE_ID_COLUMN,) + CANONICAL_HEADER)
        for case_id, case in case_base:
            row = [str(case_id)]
            row.extend(_format_value(name, getattr(case, name)) for name in FEATURE_NAMES)
            row.append(str(case.target))
            writer.writerow(row)
    finally:
        if own:
            stream.close()


def read_case_base(source) -> CaseBase:
    """Reload a case base written by :func:`write_case_base`, losslessly."""
    stream, should_close = _open_source(source)
    try:
        reader = csv.reader(stream)
        try:
            raw_header = next(reader)
        except StopIteration:
            raise DatasetError("empty file: no header row") from None
        positions = _resolve_header(raw_header, allow_case_id=True)
        if CASE_ID_COLUMN not in positions:
            raise DatasetError("missing case_id column")
        if TARGET_NAME not in positions:
            raise DatasetError("missing target column")
        width = len(raw_header)

        entries: list[tuple[int, Case]] = []
        seen_ids: set[int] = set()
        for line_no, row in enumerate(reader, start=2):
            if not row or all(cell.strip() == "" for cell in row):
                continue
            if len(row) != width:
                raise DatasetError(
                    f"line {line_no}: expected {width} fields, found {len(row)}"
                )
            try:
                case_id = int(row[positions[CASE_ID_COLUMN]])
            except ValueError:
                raise DatasetError(f"line {line_no}: non-integer case_id") from None
            if case_id in seen_ids:
                raise DatasetError(f"line {line_no}: duplicate case_id {case_id}")
            seen_ids.add(case_id)
            raw = {
                name: row[idx]
                for name, idx in positions.items()
                if name != CASE_ID_COLUMN
            }
            try:
                case, _ = validate_case(raw, "lenient")
            except CaseValidationError as exc:
                raise DatasetError(f"line {line_no}: {exc}") from exc
            if case.target is None:
                raise DatasetError(f"line {line_no}: stored case missing target")
            entries.append((case_id, case))
        try:
            return CaseBase(entries)
        except DatasetError as exc:
            raise DatasetError(f"invalid persisted case base: {exc}") from exc
    finally:
        if should_close:
            stream.close()
