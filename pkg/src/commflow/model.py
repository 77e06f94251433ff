"""Canonical event/log/trace model shared by every other module.

An event records one classified action: who did what, in which case
(discussion topic, thread, or file reference), when, and under which
learning state and role. Logs preserve insertion order; traces are the
per-case views sorted by time.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime
from typing import Iterable, Iterator

#: Roles shipped with the default vocabulary. The field itself is open:
#: any non-empty label a catalog assigns is accepted.
DEFAULT_ROLES = ("Novice", "Expert", "Inactive")

_EVENT_TEXT_FIELDS = ("case_id", "activity", "participant", "state", "role")


@dataclass(frozen=True)
class Event:
    """One classified action: (case, activity, participant, time, state, role)."""

    case_id: str
    activity: str
    participant: str
    timestamp: datetime
    state: str
    role: str

    def __post_init__(self) -> None:
        for name in _EVENT_TEXT_FIELDS:
            if not getattr(self, name):
                raise ValueError(f"event field {name!r} must be non-empty")


@dataclass(frozen=True)
class EventLog:
    """An ordered collection of events.

    Insertion order is significant: ties on timestamp inside a case are
    broken by position in this sequence, so grouping and sorting are
    deterministic. ``provenance`` is free-text metadata describing where
    the log came from and is excluded from equality.
    """

    events: tuple[Event, ...] = ()
    provenance: str | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "events", tuple(self.events))

    def __len__(self) -> int:
        return len(self.events)

    def __iter__(self) -> Iterator[Event]:
        return iter(self.events)


@dataclass(frozen=True)
class Trace:
    """All events of one case, sorted by (timestamp, insertion index)."""

    case_id: str
    events: tuple[Event, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "events", tuple(self.events))
        for ev in self.events:
            if ev.case_id != self.case_id:
                raise ValueError(
                    f"trace {self.case_id!r} contains an event of case {ev.case_id!r}"
                )
        for prev, nxt in zip(self.events, self.events[1:]):
            if nxt.timestamp < prev.timestamp:
                raise ValueError(
                    f"trace {self.case_id!r} events are not in timestamp order"
                )

    def __len__(self) -> int:
        return len(self.events)

    def __iter__(self) -> Iterator[Event]:
        return iter(self.events)


def _as_label_set(value: Iterable[str] | None) -> frozenset[str] | None:
    return None if value is None else frozenset(value)


@dataclass(frozen=True)
class FilterSpec:
    """Attribute constraints for selecting events from a log.

    Every populated constraint must hold; an omitted one means "no
    constraint on that attribute". ``time_window`` is a closed interval.
    """

    roles: frozenset[str] | None = None
    states: frozenset[str] | None = None
    activities: frozenset[str] | None = None
    cases: frozenset[str] | None = None
    time_window: tuple[datetime, datetime] | None = None

    def __post_init__(self) -> None:
        for name in ("roles", "states", "activities", "cases"):
            object.__setattr__(self, name, _as_label_set(getattr(self, name)))
        if self.time_window is not None:
            start, end = self.time_window
            if start > end:
                raise ValueError(
                    f"filter time window starts at {start} which is after its end {end}"
                )
            object.__setattr__(self, "time_window", (start, end))

    def matches(self, event: Event) -> bool:
        if self.roles is not None and event.role not in self.roles:
            return False
        if self.states is not None and event.state not in self.states:
            return False
        if self.activities is not None and event.activity not in self.activities:
            return False
        if self.cases is not None and event.case_id not in self.cases:
            return False
        if self.time_window is not None:
            start, end = self.time_window
            if not start <= event.timestamp <= end:
                return False
        return True


def group_into_traces(log: EventLog) -> list[Trace]:
    """Split a log into one trace per case.

    Traces appear in order of each case's first occurrence in the log.
    Within a trace, events are sorted by timestamp; ties keep their
    relative insertion order (stable sort).
    """
    buckets: dict[str, list[Event]] = {}
    for event in log:
        buckets.setdefault(event.case_id, []).append(event)
    return [
        Trace(case_id, tuple(sorted(events, key=lambda e: e.timestamp)))
        for case_id, events in buckets.items()
    ]


def filter_log(log: EventLog, spec: FilterSpec) -> EventLog:
    """Keep exactly the events satisfying every populated constraint.

    Relative order is preserved; provenance is carried over unchanged.
    """
    return EventLog(
        tuple(event for event in log if spec.matches(event)),
        provenance=log.provenance,
    )


def case_duration(trace: Trace) -> float:
    """Seconds between a trace's first and last event.

    Raises ``ValueError`` for an empty trace; a single-event trace has
    duration 0.
    """
    if not trace.events:
        raise ValueError(f"case duration is undefined for empty trace {trace.case_id!r}")
    return (trace.events[-1].timestamp - trace.events[0].timestamp).total_seconds()
