"""Shared test utilities: oracles, generators, and a DOT checker.

The process-map oracle here is written in a deliberately naive style
(per-case lists, recounting, no shared accumulators) so that agreement
with the library is meaningful. Gap sums are accumulated in the same
left-to-right order the library uses, which makes exact float equality
a fair assertion rather than a tolerance game.
"""

from __future__ import annotations

import random
import re
from dataclasses import replace
from datetime import datetime, timedelta

import pyparsing as pp

from commflow import DEFAULT_ROLES, Event, EventLog, MetricBundle, ProcessMap

BASE_INSTANT = datetime(2010, 7, 28, 5, 9, 11)


def naive_process_map(log: EventLog) -> ProcessMap:
    """Recompute a process map the slow, obvious way."""
    cases: dict[str, list[Event]] = {}
    for event in log:
        cases.setdefault(event.case_id, []).append(event)
    ordered = {
        case_id: sorted(events, key=lambda e: e.timestamp)
        for case_id, events in cases.items()
    }

    node_names = []
    for events in ordered.values():
        for event in events:
            if event.activity not in node_names:
                node_names.append(event.activity)

    nodes: dict[str, MetricBundle] = {}
    for name in node_names:
        per_case = [
            [e for e in events if e.activity == name] for events in ordered.values()
        ]
        occupied = [c for c in per_case if c]
        nodes[name] = MetricBundle(
            absolute_frequency=sum(len(c) for c in occupied),
            case_frequency=len(occupied),
            max_repetitions=max(len(c) for c in occupied),
        )

    pair_gaps: dict[tuple[str, str], list[float]] = {}
    pair_case_hits: dict[tuple[str, str], list[int]] = {}
    for events in ordered.values():
        hits_here: dict[tuple[str, str], int] = {}
        for left, right in zip(events, events[1:]):
            pair = (left.activity, right.activity)
            gap = (right.timestamp - left.timestamp).total_seconds()
            pair_gaps.setdefault(pair, []).append(gap)
            hits_here[pair] = hits_here.get(pair, 0) + 1
        for pair, reps in hits_here.items():
            pair_case_hits.setdefault(pair, []).append(reps)

    edges: dict[tuple[str, str], MetricBundle] = {}
    for pair, gaps in pair_gaps.items():
        edges[pair] = MetricBundle(
            absolute_frequency=len(gaps),
            case_frequency=len(pair_case_hits[pair]),
            max_repetitions=max(pair_case_hits[pair]),
            total_duration=sum(gaps),
            mean_duration=sum(gaps) / len(gaps),
            max_duration=max(gaps),
        )

    start_counts: dict[str, int] = {}
    end_counts: dict[str, int] = {}
    for events in ordered.values():
        first = events[0].activity
        last = events[-1].activity
        start_counts[first] = start_counts.get(first, 0) + 1
        end_counts[last] = end_counts.get(last, 0) + 1

    return ProcessMap(
        nodes=nodes,
        edges=edges,
        start_counts=start_counts,
        end_counts=end_counts,
        case_count=len(ordered),
    )


WEIRD_LABELS = (
    'say "hi", then leave',
    "comma, inside",
    "line\nbreak",
    "back\\slash",
    "plain",
    "carriage\rreturn",
)


def random_log(
    rng: random.Random,
    max_activities: int = 6,
    max_cases: int = 5,
    max_events_per_case: int = 12,
    tie_probability: float = 0.25,
    weird_labels: bool = False,
) -> EventLog:
    """A small random log with tied timestamps and shuffled arrival order."""
    if weird_labels:
        activities = list(WEIRD_LABELS[:max_activities])
    else:
        activities = [chr(ord("A") + i) for i in range(max_activities)]
    participants = ["uma", "vic", "wen"]
    states = ["Observation", "Practice", "Review"]

    events: list[Event] = []
    for case_index in range(rng.randint(1, max_cases)):
        case_id = f"case{case_index + 1}"
        instant = BASE_INSTANT + timedelta(seconds=rng.randint(0, 3600))
        for _ in range(rng.randint(1, max_events_per_case)):
            if rng.random() >= tie_probability:
                instant += timedelta(
                    seconds=rng.randint(1, 5000),
                    microseconds=rng.choice((0, rng.randint(0, 999999))),
                )
            events.append(
                Event(
                    case_id=case_id,
                    activity=rng.choice(activities),
                    participant=rng.choice(participants),
                    timestamp=instant,
                    state=rng.choice(states),
                    role=rng.choice(list(DEFAULT_ROLES)),
                )
            )
    rng.shuffle(events)
    return EventLog(tuple(events))


def shift_log(log: EventLog, delta: timedelta) -> EventLog:
    return EventLog(
        tuple(replace(e, timestamp=e.timestamp + delta) for e in log)
    )


def scale_gaps(log: EventLog, factor: int) -> EventLog:
    """Scale every timestamp offset from the log's earliest instant."""
    anchor = min(e.timestamp for e in log)
    return EventLog(
        tuple(
            replace(e, timestamp=anchor + (e.timestamp - anchor) * factor)
            for e in log
        )
    )


def _dot_grammar() -> pp.ParserElement:
    LBRACE, RBRACE, LBRACK, RBRACK, EQ = map(pp.Suppress, "{}[]=")
    SEMI = pp.Suppress(";")
    identifier = pp.Word(pp.alphas + "_", pp.alphanums + "_")
    numeral = pp.Regex(r"-?(\.\d+|\d+(\.\d*)?)")
    quoted = pp.QuotedString('"', esc_char="\\", unquote_results=False)
    dot_id = quoted | numeral | identifier

    attr = pp.Group(dot_id + EQ + dot_id)
    a_list = pp.DelimitedList(attr, delim=pp.one_of(", ;"))
    attr_list = pp.OneOrMore(LBRACK + pp.Opt(a_list) + RBRACK)

    kw = pp.one_of("graph node edge")
    attr_stmt = kw + attr_list
    assignment = dot_id + EQ + dot_id
    edge_stmt = dot_id + pp.OneOrMore(pp.Suppress("->") + dot_id) + pp.Opt(attr_list)
    node_stmt = dot_id + pp.Opt(attr_list)
    stmt = attr_stmt | assignment | edge_stmt | node_stmt
    stmt_list = pp.ZeroOrMore(stmt + pp.Opt(SEMI))

    graph = (
        pp.Opt(pp.Keyword("strict"))
        + pp.one_of("graph digraph")
        + pp.Opt(dot_id)
        + LBRACE
        + stmt_list
        + RBRACE
    )
    return graph


_DOT = _dot_grammar()


def assert_valid_dot(text: str) -> None:
    """Raise if the text is not a digraph under a standard DOT grammar."""
    _DOT.parse_string(text, parse_all=True)


_NODE_LINE = re.compile(r'^\s*"(n\d+)" \[label="(.*)"\];$', re.MULTILINE)
_EDGE_LINE = re.compile(
    r'^\s*"(\S+)" -> "(\S+)" \[label="(.*?)"(?:, penwidth=([\d.]+))?'
    r'(?:, style=dashed)?\];$',
    re.MULTILINE,
)


def dot_node_labels(text: str) -> dict[str, str]:
    """Map of node id to the part of its label before the metric line."""
    return {
        node_id: label.split("\\n")[0]
        for node_id, label in _NODE_LINE.findall(text)
    }


def dot_edges(text: str) -> list[tuple[str, str, str, str]]:
    """(source id, target id, label, penwidth) for every edge line."""
    return [tuple(m) for m in _EDGE_LINE.findall(text)]
