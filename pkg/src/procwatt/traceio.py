"""Reading and writing competition/power traces as CSV.

The native schema is a header line ``timestamp_s,competition_pct,power_w``
followed by one sample per line.  Numbers use a plain decimal point, no
thousands separators, and are written with their shortest round-trip
representation, so read(write(trace)) reproduces the trace value-exactly.
Every error carries the 1-based line (and, for field errors, column) where
it occurred; nothing is silently truncated.

External datasets with different column names or order can be ingested by
passing a ``columns`` mapping from the canonical names to the names used in
the file, which switches header matching from positional to by-name.
"""

from __future__ import annotations

import io
import math
import os
from dataclasses import dataclass, field
from typing import List, Mapping, Optional, TextIO, Union

from .errors import (
    ProcwattError,
    TraceFormatError,
    TraceParseError,
    TraceValidationError,
)
from .fitting import TraceSample

CANONICAL_COLUMNS = ("timestamp_s", "competition_pct", "power_w")


@dataclass
class TraceFile:
    """A parsed trace plus the little metadata the toolkit carries around."""

    samples: List[TraceSample] = field(default_factory=list)
    machine_label: str = ""
    core_count: Optional[int] = None


def _open_source(source) -> tuple[TextIO, bool]:
    if isinstance(source, (str, os.PathLike)):
        return open(source, "r", encoding="utf-8", newline=""), True
    return source, False


def _parse_field(raw: str, line_no: int, column: int, name: str) -> float:
    text = raw.strip()
    if "_" in text or not text:
        raise TraceParseError(f"cannot parse {name} from {raw!r}", line_no, column)
    try:
        value = float(text)
    except ValueError:
        raise TraceParseError(
            f"cannot parse {name} from {raw!r}", line_no, column
        ) from None
    if not math.isfinite(value):
        raise TraceValidationError(f"{name} must be finite, got {raw!r}", line_no)
    return value


def read_trace(
    source: Union[str, os.PathLike, TextIO],
    columns: Optional[Mapping[str, str]] = None,
    machine_label: str = "",
    core_count: Optional[int] = None,
) -> TraceFile:
    """Parse a trace CSV from a path or an open text stream.

    Parameters
    ----------
    source : path or text file object
        UTF-8 text whose first line is the header.
    columns : mapping, optional
        Renames of the canonical column names, e.g.
        ``{"timestamp_s": "time", "power_w": "watts"}``.  When given, columns
        are located by name in any order and extra columns are ignored;
        without it the header must match the canonical schema exactly.

    Returns
    -------
    TraceFile
        All samples in file order.  A header-only file is a valid empty
        trace; downstream operations raise their own insufficient-data
        errors.
    """
    stream, owned = _open_source(source)
    try:
        return _read_stream(stream, columns, machine_label, core_count)
    finally:
        if owned:
            stream.close()


def _read_stream(stream, columns, machine_label, core_count) -> TraceFile:
    header_line = stream.readline()
    if not header_line:
        raise TraceFormatError("empty file, expected header", line=1)
    header = [h.strip() for h in header_line.rstrip("\r\n").split(",")]

    if columns is None:
        if header != list(CANONICAL_COLUMNS):
            raise TraceFormatError(
                f"expected header {','.join(CANONICAL_COLUMNS)!r}, got {header_line.strip()!r}",
                line=1,
            )
        indices = {name: i for i, name in enumerate(CANONICAL_COLUMNS)}
    else:
        unknown = set(columns) - set(CANONICAL_COLUMNS)
        if unknown:
            raise TraceFormatError(
                f"unknown canonical column names in mapping: {sorted(unknown)}", line=1
            )
        indices = {}
        for name in CANONICAL_COLUMNS:
            actual = columns.get(name, name)
            if actual not in header:
                raise TraceFormatError(
                    f"column {actual!r} not found in header {header}", line=1
                )
            indices[name] = header.index(actual)

    width = len(header)
    samples: List[TraceSample] = []
    last_t = None
    for line_no, raw_line in enumerate(stream, start=2):
        line = raw_line.rstrip("\r\n")
        if not line.strip():
            continue
        fields = line.split(",")
        if len(fields) != width:
            raise TraceParseError(
                f"expected {width} fields, got {len(fields)}",
                line_no,
                min(len(fields), width) + 1,
            )
        t = _parse_field(fields[indices["timestamp_s"]], line_no, indices["timestamp_s"] + 1, "timestamp_s")
        comp = _parse_field(fields[indices["competition_pct"]], line_no, indices["competition_pct"] + 1, "competition_pct")
        power = _parse_field(fields[indices["power_w"]], line_no, indices["power_w"] + 1, "power_w")
        try:
            sample = TraceSample(t=t, competition=comp, power=power)
        except ProcwattError as exc:
            raise TraceValidationError(str(exc), line_no) from None
        if last_t is not None and sample.t < last_t:
            raise TraceValidationError(
                f"timestamp {sample.t!r} decreases (previous {last_t!r})", line_no
            )
        last_t = sample.t
        samples.append(sample)
    return TraceFile(samples=samples, machine_label=machine_label, core_count=core_count)


def write_trace(trace: TraceFile, sink: Union[str, os.PathLike, TextIO]) -> None:
    """Write the canonical CSV form of a trace.

    Floats are rendered with repr, the shortest digits that parse back to the
    identical double, so a write/read cycle is the identity.
    """
    if isinstance(sink, (str, os.PathLike)):
        with open(sink, "w", encoding="utf-8", newline="") as stream:
            _write_stream(trace, stream)
    else:
        _write_stream(trace, sink)


def _write_stream(trace: TraceFile, stream) -> None:
    stream.write(",".join(CANONICAL_COLUMNS) + "\n")
    for s in trace.samples:
        stream.write(f"{s.t!r},{s.competition!r},{s.power!r}\n")


def trace_to_string(trace: TraceFile) -> str:
    buf = io.StringIO()
    _write_stream(trace, buf)
    return buf.getvalue()
