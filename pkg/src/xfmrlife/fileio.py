"""
CSV and JSON ingestion/emission for sensor streams, scenarios, run records,
reports and estimator snapshots.

Numbers are written with 12 significant digits, ``.`` as the decimal
separator and ``\\n`` line endings. Readers validate every row and reject
bad input with the 1-based line number; nothing is skipped or reordered.
"""

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, Iterable, List, Sequence

from .exceptions import ValidationError, XfmrLifeError
from .runner import RunRecord
from .thermal import AMBIENT_BOUNDS, OperatingInterval

SENSOR_HEADER = ("hour", "theta_h_c")
SCENARIO_HEADER = ("hour", "ambient_c", "k_i", "k_u")
RUN_HEADER = ("hour", "theta_h_c", "f_aa", "lol_pu", "cma_pu", "estimate_years", "converged")

HOTSPOT_BOUNDS = (-273.0, 250.0)


class FileIOError(XfmrLifeError, OSError):
    """Reading or writing a file failed; the message names the path."""


@dataclass(frozen=True)
class SensorSample:
    hour_index: int
    hotspot_temp: float


def fmt(value: float) -> str:
    return f"{value:.12g}"


def _open_read(path):
    try:
        return open(path, newline="", encoding="utf-8")
    except OSError as exc:
        raise FileIOError(f"cannot read {path}: {exc.strerror or exc}") from exc


def _open_write(path):
    try:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        return open(path, "w", newline="", encoding="utf-8")
    except OSError as exc:
        raise FileIOError(f"cannot write {path}: {exc.strerror or exc}") from exc


def sniff_header(path) -> tuple:
    """The header row of a CSV file, as a tuple of stripped column names."""
    with _open_read(path) as fh:
        row = next(csv.reader(fh), None)
    if row is None:
        raise ValidationError("file is empty", line=1, path=path)
    return tuple(col.strip() for col in row)


def _rows(path, header: Sequence[str]):
    """Yield ``(line_number, fields)`` for each data row after checking the header."""
    with _open_read(path) as fh:
        reader = csv.reader(fh)
        first = next(reader, None)
        if first is None:
            raise ValidationError("file is empty", line=1, path=path)
        if tuple(col.strip() for col in first) != tuple(header):
            raise ValidationError(f"expected header {','.join(header)!r}, got {','.join(first)!r}", line=1, path=path)
        for fields in reader:
            line = reader.line_num
            if not fields or all(not f.strip() for f in fields):
                raise ValidationError("blank row", line=line, path=path)
            if len(fields) != len(header):
                raise ValidationError(f"expected {len(header)} fields, got {len(fields)}", line=line, path=path)
            yield line, fields


def _parse(cast: Callable, text: str, column: str, line: int, path):
    try:
        value = cast(text.strip())
    except ValueError:
        raise ValidationError(f"column {column!r}: cannot parse {text!r}", line=line, path=path) from None
    if isinstance(value, float) and not math.isfinite(value):
        raise ValidationError(f"column {column!r}: non-finite value {text!r}", line=line, path=path)
    return value


def _check_hour(hour: int, expected: int, line: int, path) -> None:
    if hour != expected:
        raise ValidationError(
            f"hour {hour} out of sequence: expected {expected} (hours must be strictly increasing and gap-free)",
            line=line,
            path=path,
        )


def read_sensor_csv(path) -> List[SensorSample]:
    """Hottest-spot samples from a ``hour,theta_h_c`` file."""
    samples = []
    lo, hi = HOTSPOT_BOUNDS
    for line, (hour_s, temp_s) in _rows(path, SENSOR_HEADER):
        hour = _parse(int, hour_s, "hour", line, path)
        if samples:
            _check_hour(hour, samples[-1].hour_index + 1, line, path)
        temp = _parse(float, temp_s, "theta_h_c", line, path)
        if not (lo < temp < hi):
            raise ValidationError(f"theta_h_c {temp} outside ({lo}, {hi}) °C", line=line, path=path)
        samples.append(SensorSample(hour, temp))
    return samples


def read_scenario_csv(path, interval_hours: float = 1.0) -> List[OperatingInterval]:
    """Operating intervals from a ``hour,ambient_c,k_i,k_u`` file, each ``interval_hours`` long."""
    intervals = []
    hours = []
    lo, hi = AMBIENT_BOUNDS
    for line, (hour_s, amb_s, ki_s, ku_s) in _rows(path, SCENARIO_HEADER):
        hour = _parse(int, hour_s, "hour", line, path)
        if hours:
            _check_hour(hour, hours[-1] + 1, line, path)
        ambient = _parse(float, amb_s, "ambient_c", line, path)
        k_i = _parse(float, ki_s, "k_i", line, path)
        k_u = _parse(float, ku_s, "k_u", line, path)
        if not (lo <= ambient <= hi):
            raise ValidationError(f"ambient_c {ambient} outside [{lo}, {hi}] °C", line=line, path=path)
        for name, k in (("k_i", k_i), ("k_u", k_u)):
            if k < 0:
                raise ValidationError(f"{name} must be >= 0, got {k}", line=line, path=path)
        hours.append(hour)
        intervals.append(OperatingInterval(ambient, k_i, k_u, interval_hours))
    return intervals


def first_hour(path) -> int:
    """Hour index of the first data row (0 when the file has none)."""
    with _open_read(path) as fh:
        reader = csv.reader(fh)
        next(reader, None)
        row = next(reader, None)
    if not row:
        return 0
    return _parse(int, row[0], "hour", 2, path)


def write_scenario_csv(path, ambient, k_i, k_u, start_hour: int = 0) -> None:
    with _open_write(path) as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(SCENARIO_HEADER)
        for h, (a, ki, ku) in enumerate(zip(ambient, k_i, k_u), start=start_hour):
            writer.writerow((h, fmt(float(a)), fmt(float(ki)), fmt(float(ku))))


def write_sensor_csv(path, temps: Iterable[float], start_hour: int = 0) -> None:
    with _open_write(path) as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(SENSOR_HEADER)
        for h, t in enumerate(temps, start=start_hour):
            writer.writerow((h, fmt(float(t))))


def write_run_csv(records: Iterable[RunRecord], path) -> int:
    """Write run records; returns the number of rows written."""
    n = 0
    with _open_write(path) as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(RUN_HEADER)
        for r in records:
            writer.writerow(
                (
                    r.hour_index,
                    fmt(r.hotspot_temp),
                    fmt(r.aging_factor),
                    fmt(r.interval_loss),
                    fmt(r.cma),
                    fmt(r.estimate_total_years),
                    int(r.converged),
                )
            )
            n += 1
    return n


def read_run_csv(path) -> List[RunRecord]:
    records = []
    for line, f in _rows(path, RUN_HEADER):
        hour = _parse(int, f[0], "hour", line, path)
        values = [_parse(float, text, col, line, path) for text, col in zip(f[1:6], RUN_HEADER[1:6])]
        converged = _parse(int, f[6], "converged", line, path)
        if converged not in (0, 1):
            raise ValidationError(f"converged must be 0 or 1, got {converged}", line=line, path=path)
        records.append(RunRecord(hour, *values, bool(converged)))
    return records


def _dump_json(obj, path) -> None:
    with _open_write(path) as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _load_json(path) -> Dict:
    with _open_read(path) as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"invalid JSON: {exc.msg}", line=exc.lineno, path=path) from None


def write_report(summary: Dict, path) -> None:
    """Write a run summary as sorted-key JSON; ``generated_at`` is the only run-varying field."""
    _dump_json(summary, path)


def read_report(path) -> Dict:
    report = _load_json(path)
    for key in ("samples_processed", "convergence_step", "final_estimate_years"):
        if key not in report:
            raise ValidationError(f"report lacks {key!r}", path=path)
    return report


def write_snapshot(snapshot: Dict, path) -> None:
    _dump_json(snapshot, path)


def read_snapshot(path) -> Dict:
    return _load_json(path)


def load_json_config(path) -> Dict:
    return _load_json(path)
