"""Log-level summaries: counts, spans, role shares, timelines."""

from __future__ import annotations

import statistics
from collections import Counter
from dataclasses import dataclass
from datetime import datetime, timedelta
from decimal import ROUND_HALF_UP, Decimal
from typing import Mapping

from .model import EventLog, case_duration, group_into_traces


def _half_up_2(numerator: int, denominator: int) -> float:
    # round() is banker's rounding; the reported two-decimal figures
    # need plain half-up, so go through Decimal.
    quotient = Decimal(numerator) / Decimal(denominator)
    return float(quotient.quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))


@dataclass(frozen=True)
class LogStatistics:
    event_count: int
    case_count: int
    activity_count: int
    participant_count: int
    first_timestamp: datetime | None
    last_timestamp: datetime | None
    mean_case_duration: float | None
    median_case_duration: float | None


@dataclass(frozen=True)
class RoleShare:
    event_count: int
    percent: float


@dataclass(frozen=True)
class RoleBreakdown:
    total_events: int
    shares: Mapping[str, RoleShare]


@dataclass(frozen=True)
class ExecutionSummary:
    """Mean executions per activity plus the busiest activity."""

    mean_per_activity: float
    activity_count: int
    most_executed: str
    most_executed_count: int


@dataclass(frozen=True)
class TimelineSeries:
    bin_width_seconds: float
    bins: tuple[tuple[datetime, int], ...]


def summarize_log(log: EventLog) -> LogStatistics:
    """Headline counts plus case-duration mean and median.

    An empty log yields zero counts with absent instants and durations.
    """
    events = list(log)
    if not events:
        return LogStatistics(0, 0, 0, 0, None, None, None, None)
    traces = group_into_traces(log)
    durations = [case_duration(t) for t in traces]
    timestamps = [e.timestamp for e in events]
    return LogStatistics(
        event_count=len(events),
        case_count=len(traces),
        activity_count=len({e.activity for e in events}),
        participant_count=len({e.participant for e in events}),
        first_timestamp=min(timestamps),
        last_timestamp=max(timestamps),
        mean_case_duration=statistics.fmean(durations),
        median_case_duration=float(statistics.median(durations)),
    )


def breakdown_from_counts(counts: Mapping[str, int]) -> RoleBreakdown:
    """Share table straight from per-role tallies.

    Percentages are half-up to two decimals of 100 * count / total.
    """
    for role, count in counts.items():
        if count < 0:
            raise ValueError(f"negative count for role {role!r}")
    total = sum(counts.values())
    if total == 0:
        return RoleBreakdown(0, {})
    shares = {
        role: RoleShare(count, _half_up_2(100 * count, total))
        for role, count in counts.items()
    }
    return RoleBreakdown(total, shares)


def role_breakdown(log: EventLog) -> RoleBreakdown:
    """Event count and percentage share per role, in appearance order."""
    return breakdown_from_counts(Counter(event.role for event in log))


def executions_from_counts(counts: Mapping[str, int]) -> ExecutionSummary:
    """Execution summary straight from per-activity tallies."""
    if not counts:
        raise ValueError("cannot average executions over an empty log")
    for activity, count in counts.items():
        if count < 1:
            raise ValueError(f"activity {activity!r} has no executions")
    top_activity, top_count = max(counts.items(), key=lambda item: item[1])
    return ExecutionSummary(
        mean_per_activity=_half_up_2(sum(counts.values()), len(counts)),
        activity_count=len(counts),
        most_executed=top_activity,
        most_executed_count=top_count,
    )


def mean_executions_per_activity(log: EventLog) -> ExecutionSummary:
    """Average executions per distinct activity, plus the top activity.

    Rejects an empty log: a mean over zero activities is undefined.
    """
    return executions_from_counts(Counter(event.activity for event in log))


def start_activity_attribution(log: EventLog) -> dict[str, int]:
    """How many cases open with each activity; values sum to case count."""
    counts: Counter[str] = Counter(
        trace.events[0].activity for trace in group_into_traces(log)
    )
    return dict(counts)


def timeline(log: EventLog, bin_width: float | timedelta) -> TimelineSeries:
    """Events-over-time histogram with contiguous fixed-width bins.

    Bins are anchored at the first timestamp; an event lands in bin
    floor((t - first) / width). Interior bins with zero events are
    kept so the series covers the whole observed span.
    """
    if isinstance(bin_width, timedelta):
        width = bin_width.total_seconds()
    else:
        width = float(bin_width)
    if width <= 0:
        raise ValueError("bin_width must be positive")
    events = list(log)
    if not events:
        return TimelineSeries(width, ())
    first = min(e.timestamp for e in events)
    counts: Counter[int] = Counter()
    for event in events:
        offset = (event.timestamp - first).total_seconds()
        counts[int(offset // width)] += 1
    last_bin = max(counts)
    bins = tuple(
        (first + timedelta(seconds=index * width), counts.get(index, 0))
        for index in range(last_bin + 1)
    )
    return TimelineSeries(width, bins)
