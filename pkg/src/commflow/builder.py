"""Build canonical event logs out of raw communication records."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from datetime import datetime
from typing import Iterable

from .catalog import Catalog, classify
from .model import Event, EventLog

#: Where a record came from: live chat or a commit annotation.
SOURCE_KINDS = ("Chat", "SourceCode")


@dataclass(frozen=True)
class MessageRecord:
    """One raw communication record prior to classification.

    ``case_ref`` groups records into cases (an IRC channel topic, a
    repository path, a thread id). ``body`` may be empty; senders do
    post empty lines and those still count as participation.
    """

    case_ref: str
    sender: str
    body: str
    timestamp: datetime
    source_kind: str = "Chat"

    def __post_init__(self) -> None:
        if not self.case_ref:
            raise ValueError("message case_ref must be non-empty")
        if not self.sender:
            raise ValueError("message sender must be non-empty")
        if self.source_kind not in SOURCE_KINDS:
            raise ValueError(
                f"unknown source_kind {self.source_kind!r}; "
                f"expected one of {', '.join(SOURCE_KINDS)}"
            )


@dataclass(frozen=True)
class FallbackPolicy:
    """Event emitted when no catalog rule matches a message.

    Every record yields at least one event, so silent readers and
    unmatched chatter still appear in the process map.
    """

    activity: str = "Participate in Discussions"
    state: str = "Participation"
    role: str = "Inactive"

    def __post_init__(self) -> None:
        if not (self.activity and self.state and self.role):
            raise ValueError("fallback activity, state and role must be non-empty")


DEFAULT_FALLBACK = FallbackPolicy()


def construct_log(
    messages: Iterable[MessageRecord],
    catalog: Catalog,
    fallback: FallbackPolicy = DEFAULT_FALLBACK,
) -> EventLog:
    """Classify every record and emit events in encounter order.

    A record that matches several rules yields one event per match, in
    catalog rule order, all stamped with the record's timestamp. A
    record that matches nothing yields exactly one fallback event.
    """
    events: list[Event] = []
    for record in messages:
        matches = classify(record.body, catalog)
        if matches:
            for match in matches:
                events.append(
                    Event(
                        case_id=record.case_ref,
                        activity=match.activity,
                        participant=record.sender,
                        timestamp=record.timestamp,
                        state=match.state,
                        role=match.role,
                    )
                )
        else:
            events.append(
                Event(
                    case_id=record.case_ref,
                    activity=fallback.activity,
                    participant=record.sender,
                    timestamp=record.timestamp,
                    state=fallback.state,
                    role=fallback.role,
                )
            )
    return EventLog(tuple(events))


def count_role_events(log: EventLog) -> Counter[str]:
    """Events per role label, for share-of-activity reporting."""
    return Counter(event.role for event in log)
