"""File formats: message tables, catalogs, event-log CSV, DOT, JSON.

CSV is RFC 4180 (UTF-8, CRLF, minimal quoting) throughout. The event
log schema is the six-column layout Participant, Activity, State,
channeltopic, submitted_date, Role, with timestamps carrying seven
fractional digits. Writing then reading an event log is the identity,
byte for byte on a second write.
"""

from __future__ import annotations

import csv
import io
import json
import re
from dataclasses import dataclass
from datetime import datetime
from pathlib import Path
from typing import Iterable, TextIO

from .builder import SOURCE_KINDS, MessageRecord
from .catalog import Catalog, CatalogRule
from .discovery import MetricBundle, ProcessMap
from .model import Event, EventLog
from .stats import LogStatistics, RoleBreakdown, TimelineSeries

MESSAGES_COLUMNS = ("case_ref", "sender", "body", "timestamp", "source_kind")
EVENT_LOG_COLUMNS = (
    "Participant",
    "Activity",
    "State",
    "channeltopic",
    "submitted_date",
    "Role",
)
CATALOG_COLUMNS = ("phase", "gl_key", "state", "lc_key", "activity", "role")
SYNONYM_COLUMNS = ("phrase", "synonym")

DOT_VIEWS = ("frequency", "performance")


class SchemaError(ValueError):
    """A file does not conform to its declared schema."""


# Seven fractional digits maximum; the seventh, when present, must be
# zero because instants are stored at microsecond resolution.
_TIMESTAMP_RE = re.compile(
    r"^(\d{4})-(\d{2})-(\d{2}) (\d{2}):(\d{2}):(\d{2})(?:\.(\d{1,7}))?$"
)


def format_timestamp(instant: datetime) -> str:
    """Render an instant as YYYY-MM-DD HH:MM:SS.fffffff (7 digits)."""
    return f"{instant:%Y-%m-%d %H:%M:%S}.{instant.microsecond:06d}0"


def parse_timestamp(text: str) -> datetime:
    """Parse the 7-digit-fraction form or the bare seconds form."""
    match = _TIMESTAMP_RE.match(text)
    if not match:
        raise ValueError(f"unrecognized timestamp {text!r}")
    year, month, day, hour, minute, second = (int(g) for g in match.groups()[:6])
    fraction = match.group(7) or ""
    if len(fraction) == 7 and fraction[6] != "0":
        raise ValueError(
            f"timestamp {text!r} has sub-microsecond precision; "
            "the seventh fractional digit must be 0"
        )
    microsecond = int(fraction[:6].ljust(6, "0") or "0")
    return datetime(year, month, day, hour, minute, second, microsecond)


def _open_source(source: str | Path | TextIO) -> tuple[TextIO, bool]:
    if hasattr(source, "read"):
        return source, False
    return open(source, "r", encoding="utf-8", newline=""), True


def _check_header(
    header: list[str] | None, expected: tuple[str, ...], what: str
) -> None:
    if header is None:
        raise SchemaError(f"{what}: empty file, expected header {','.join(expected)}")
    if header != list(expected):
        raise SchemaError(
            f"{what}: bad header: expected columns {','.join(expected)}, "
            f"got {','.join(header)}"
        )


def _rows(source: str | Path | TextIO, expected: tuple[str, ...], what: str):
    stream, owned = _open_source(source)
    try:
        reader = csv.reader(stream)
        header = next(reader, None)
        _check_header(header, expected, what)
        for row in reader:
            if not row:
                continue
            yield reader.line_num, row
    finally:
        if owned:
            stream.close()


@dataclass(frozen=True)
class ParsedMessages:
    """Surviving records in file order, plus how many rows were dropped."""

    records: tuple[MessageRecord, ...]
    skipped: int


def parse_messages(source: str | Path | TextIO) -> ParsedMessages:
    """Read a raw message table, skipping rows that cannot be used.

    A row is skipped (and counted) when it has the wrong number of
    fields, an empty sender or case_ref, an unknown source kind, or a
    timestamp outside the accepted forms. Sender-less chatter cannot
    be attributed, so it is dropped rather than guessed at.
    """
    records: list[MessageRecord] = []
    skipped = 0
    for _line, row in _rows(source, MESSAGES_COLUMNS, "messages file"):
        if len(row) != len(MESSAGES_COLUMNS):
            skipped += 1
            continue
        case_ref, sender, body, raw_timestamp, source_kind = row
        if not case_ref or not sender or source_kind not in SOURCE_KINDS:
            skipped += 1
            continue
        try:
            timestamp = parse_timestamp(raw_timestamp)
        except ValueError:
            skipped += 1
            continue
        records.append(MessageRecord(case_ref, sender, body, timestamp, source_kind))
    return ParsedMessages(tuple(records), skipped)


def write_event_log(log: EventLog) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\r\n")
    writer.writerow(EVENT_LOG_COLUMNS)
    for event in log:
        writer.writerow(
            (
                event.participant,
                event.activity,
                event.state,
                event.case_id,
                format_timestamp(event.timestamp),
                event.role,
            )
        )
    return buffer.getvalue()


def read_event_log(source: str | TextIO) -> EventLog:
    """Parse event-log CSV (text or open stream); see load_event_log for paths."""
    if isinstance(source, str):
        source = io.StringIO(source)
    events: list[Event] = []
    for line_num, row in _rows(source, EVENT_LOG_COLUMNS, "event log"):
        if len(row) != len(EVENT_LOG_COLUMNS):
            raise SchemaError(
                f"event log row {line_num}: expected {len(EVENT_LOG_COLUMNS)} "
                f"fields, got {len(row)}"
            )
        participant, activity, state, channeltopic, submitted, role = row
        try:
            events.append(
                Event(
                    case_id=channeltopic,
                    activity=activity,
                    participant=participant,
                    timestamp=parse_timestamp(submitted),
                    state=state,
                    role=role,
                )
            )
        except ValueError as exc:
            raise SchemaError(f"event log row {line_num}: {exc}") from exc
    return EventLog(tuple(events))


def save_event_log(log: EventLog, path: str | Path) -> None:
    Path(path).write_text(write_event_log(log), encoding="utf-8", newline="")


def load_event_log(path: str | Path) -> EventLog:
    with open(path, "r", encoding="utf-8", newline="") as stream:
        return read_event_log(stream)


def read_catalog(
    rules_source: str | Path | TextIO,
    synonyms_source: str | Path | TextIO | None = None,
) -> Catalog:
    """Load classification rules, optionally with a synonym table."""
    rules: list[CatalogRule] = []
    for line_num, row in _rows(rules_source, CATALOG_COLUMNS, "catalog file"):
        if len(row) != len(CATALOG_COLUMNS):
            raise SchemaError(
                f"catalog row {line_num}: expected {len(CATALOG_COLUMNS)} "
                f"fields, got {len(row)}"
            )
        try:
            rules.append(CatalogRule(*row))
        except ValueError as exc:
            raise SchemaError(f"catalog row {line_num}: {exc}") from exc

    synonyms: dict[str, tuple[str, ...]] = {}
    if synonyms_source is not None:
        for line_num, row in _rows(synonyms_source, SYNONYM_COLUMNS, "synonyms file"):
            if len(row) != len(SYNONYM_COLUMNS):
                raise SchemaError(
                    f"synonyms row {line_num}: expected 2 fields, got {len(row)}"
                )
            phrase, synonym = row
            if not phrase or not synonym:
                raise SchemaError(
                    f"synonyms row {line_num}: phrase and synonym must be non-empty"
                )
            synonyms[phrase] = synonyms.get(phrase, ()) + (synonym,)
    return Catalog(tuple(rules), synonyms)


def write_catalog(catalog: Catalog) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\r\n")
    writer.writerow(CATALOG_COLUMNS)
    for rule in catalog.rules:
        writer.writerow(
            (rule.phase, rule.gl_key, rule.state, rule.lc_key, rule.activity, rule.role)
        )
    return buffer.getvalue()


def write_synonyms(catalog: Catalog) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\r\n")
    writer.writerow(SYNONYM_COLUMNS)
    for phrase in catalog.synonyms:
        for synonym in catalog.synonyms[phrase]:
            writer.writerow((phrase, synonym))
    return buffer.getvalue()


def humanize_seconds(seconds: float) -> str:
    """One-decimal duration in the largest unit that fits.

    604800 s becomes "1.0 weeks", 7.5 s stays "7.5 s".
    """
    for width, unit in (
        (604800.0, "weeks"),
        (86400.0, "days"),
        (3600.0, "hours"),
        (60.0, "minutes"),
    ):
        if seconds >= width:
            return f"{seconds / width:.1f} {unit}"
    return f"{seconds:.1f} s"


def _dot_escape(text: str) -> str:
    return (
        text.replace("\\", "\\\\")
        .replace('"', '\\"')
        .replace("\r", "\\r")
        .replace("\n", "\\n")
    )


def _displayed(bundle: MetricBundle, view: str) -> float:
    if view == "frequency":
        return float(bundle.absolute_frequency)
    return bundle.mean_duration


def _metric_label(bundle: MetricBundle, view: str) -> str:
    if view == "frequency":
        return str(bundle.absolute_frequency)
    return humanize_seconds(bundle.mean_duration)


def _penwidths(values: dict[tuple[str, str], float]) -> dict[tuple[str, str], float]:
    if not values:
        return {}
    low = min(values.values())
    high = max(values.values())
    if high == low:
        return {pair: 1.0 for pair in values}
    return {
        pair: 1.0 + 4.0 * (value - low) / (high - low)
        for pair, value in values.items()
    }


def export_dot(process_map: ProcessMap, view: str = "frequency") -> str:
    """Serialize a process map as a deterministic DOT digraph.

    Real edges show the selected metric (count or mean delay) and get a
    pen width between 1 and 5, scaled linearly across the map. Virtual
    start/end markers carry dashed, case-count-labeled edges.
    """
    if view not in DOT_VIEWS:
        raise ValueError(f"unknown view {view!r}; expected one of {', '.join(DOT_VIEWS)}")

    activities = sorted(process_map.nodes)
    node_ids = {activity: f"n{i}" for i, activity in enumerate(activities)}
    displayed = {
        pair: _displayed(bundle, view) for pair, bundle in process_map.edges.items()
    }
    widths = _penwidths(displayed)

    lines = [
        "digraph process_map {",
        "  rankdir=LR;",
        '  node [shape=box, style=rounded];',
        '  "__start__" [label="start", shape=circle, style=solid];',
        '  "__end__" [label="end", shape=doublecircle, style=solid];',
    ]
    for activity in activities:
        bundle = process_map.nodes[activity]
        label = f"{_dot_escape(activity)}\\n{_metric_label(bundle, view)}"
        lines.append(f'  "{node_ids[activity]}" [label="{label}"];')
    for pair in sorted(process_map.edges):
        source, target = pair
        label = _metric_label(process_map.edges[pair], view)
        lines.append(
            f'  "{node_ids[source]}" -> "{node_ids[target]}" '
            f'[label="{label}", penwidth={widths[pair]:.2f}];'
        )
    for activity in sorted(process_map.start_counts):
        count = process_map.start_counts[activity]
        lines.append(
            f'  "__start__" -> "{node_ids[activity]}" '
            f'[label="{count}", style=dashed];'
        )
    for activity in sorted(process_map.end_counts):
        count = process_map.end_counts[activity]
        lines.append(
            f'  "{node_ids[activity]}" -> "__end__" '
            f'[label="{count}", style=dashed];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def _duration_field(seconds: float | None) -> dict | None:
    if seconds is None:
        return None
    return {"seconds": seconds, "display": humanize_seconds(seconds)}


def export_stats_json(
    stats: LogStatistics,
    breakdown: RoleBreakdown,
    series: TimelineSeries,
) -> str:
    """One JSON document holding summary, role shares and timeline."""
    document = {
        "events": stats.event_count,
        "cases": stats.case_count,
        "activities": stats.activity_count,
        "participants": stats.participant_count,
        "first_timestamp": (
            None
            if stats.first_timestamp is None
            else format_timestamp(stats.first_timestamp)
        ),
        "last_timestamp": (
            None
            if stats.last_timestamp is None
            else format_timestamp(stats.last_timestamp)
        ),
        "mean_case_duration": _duration_field(stats.mean_case_duration),
        "median_case_duration": _duration_field(stats.median_case_duration),
        "roles": {
            role: {
                "event_count": share.event_count,
                "percent": share.percent,
                "percent_display": f"{share.percent:.2f}",
            }
            for role, share in breakdown.shares.items()
        },
        "timeline": {
            "bin_width_seconds": series.bin_width_seconds,
            "bins": [
                {"start": format_timestamp(start), "count": count}
                for start, count in series.bins
            ],
        },
    }
    return json.dumps(document, indent=2, ensure_ascii=False) + "\n"
