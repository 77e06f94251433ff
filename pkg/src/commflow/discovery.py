"""Directly-follows process maps with frequency and performance metrics.

The map is discovered per case: events of a case are ordered by
timestamp, every activity becomes a node, every consecutive pair an
edge. Six metrics annotate both: absolute frequency, case frequency,
max repetitions within one case, and total / mean / max duration.
Events are instantaneous, so node durations are fixed at zero and the
duration metrics live on the edges, fed by the timestamp gap of each
traversal. Tied timestamps yield zero-second gaps, which still count.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field

from .model import EventLog, FilterSpec, filter_log, group_into_traces


@dataclass(frozen=True)
class MetricBundle:
    absolute_frequency: int
    case_frequency: int
    max_repetitions: int
    total_duration: float = 0.0
    mean_duration: float = 0.0
    max_duration: float = 0.0

    def __post_init__(self) -> None:
        for name in ("absolute_frequency", "case_frequency", "max_repetitions"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")
        for name in ("total_duration", "mean_duration", "max_duration"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")


@dataclass(frozen=True)
class ProcessMap:
    """Nodes, edges and endpoint tallies of one discovered process.

    ``pruned`` marks maps that went through threshold filtering; the
    conservation identities only bind unpruned maps.
    """

    nodes: dict[str, MetricBundle] = field(default_factory=dict)
    edges: dict[tuple[str, str], MetricBundle] = field(default_factory=dict)
    start_counts: dict[str, int] = field(default_factory=dict)
    end_counts: dict[str, int] = field(default_factory=dict)
    case_count: int = 0
    pruned: bool = False


@dataclass(frozen=True)
class PruneSpec:
    """Visibility thresholds; None leaves the axis unfiltered."""

    min_edge_case_frequency: int | None = None
    min_node_absolute_frequency: int | None = None

    def __post_init__(self) -> None:
        for name in ("min_edge_case_frequency", "min_node_absolute_frequency"):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise ValueError(f"{name} must be >= 1 when given")


def discover_map(log: EventLog) -> ProcessMap:
    """Aggregate an event log into an annotated directly-follows graph."""
    traces = group_into_traces(log)

    node_abs: Counter[str] = Counter()
    node_cases: Counter[str] = Counter()
    node_maxrep: dict[str, int] = {}
    edge_abs: Counter[tuple[str, str]] = Counter()
    edge_cases: Counter[tuple[str, str]] = Counter()
    edge_maxrep: dict[tuple[str, str], int] = {}
    edge_total: dict[tuple[str, str], float] = defaultdict(float)
    edge_max: dict[tuple[str, str], float] = defaultdict(float)
    start_counts: Counter[str] = Counter()
    end_counts: Counter[str] = Counter()

    for trace in traces:
        events = trace.events
        start_counts[events[0].activity] += 1
        end_counts[events[-1].activity] += 1

        per_case_nodes = Counter(e.activity for e in events)
        for activity, reps in per_case_nodes.items():
            node_abs[activity] += reps
            node_cases[activity] += 1
            if reps > node_maxrep.get(activity, 0):
                node_maxrep[activity] = reps

        per_case_edges: Counter[tuple[str, str]] = Counter()
        for prev, curr in zip(events, events[1:]):
            pair = (prev.activity, curr.activity)
            gap = (curr.timestamp - prev.timestamp).total_seconds()
            per_case_edges[pair] += 1
            edge_abs[pair] += 1
            edge_total[pair] += gap
            if gap > edge_max[pair]:
                edge_max[pair] = gap
        for pair, reps in per_case_edges.items():
            edge_cases[pair] += 1
            if reps > edge_maxrep.get(pair, 0):
                edge_maxrep[pair] = reps

    nodes = {
        activity: MetricBundle(
            absolute_frequency=node_abs[activity],
            case_frequency=node_cases[activity],
            max_repetitions=node_maxrep[activity],
        )
        for activity in node_abs
    }
    edges = {
        pair: MetricBundle(
            absolute_frequency=edge_abs[pair],
            case_frequency=edge_cases[pair],
            max_repetitions=edge_maxrep[pair],
            total_duration=edge_total[pair],
            mean_duration=edge_total[pair] / edge_abs[pair],
            max_duration=edge_max[pair],
        )
        for pair in edge_abs
    }
    return ProcessMap(
        nodes=nodes,
        edges=edges,
        start_counts=dict(start_counts),
        end_counts=dict(end_counts),
        case_count=len(traces),
    )


def prune_map(process_map: ProcessMap, spec: PruneSpec) -> ProcessMap:
    """Drop nodes and edges below the thresholds; metrics stay frozen.

    Edges losing an endpoint disappear with it. With no thresholds set
    the map comes back untouched and unmarked.
    """
    if (
        spec.min_edge_case_frequency is None
        and spec.min_node_absolute_frequency is None
    ):
        return process_map

    min_node = spec.min_node_absolute_frequency
    nodes = {
        activity: bundle
        for activity, bundle in process_map.nodes.items()
        if min_node is None or bundle.absolute_frequency >= min_node
    }
    min_edge = spec.min_edge_case_frequency
    edges = {
        pair: bundle
        for pair, bundle in process_map.edges.items()
        if pair[0] in nodes
        and pair[1] in nodes
        and (min_edge is None or bundle.case_frequency >= min_edge)
    }
    return ProcessMap(
        nodes=nodes,
        edges=edges,
        start_counts={a: n for a, n in process_map.start_counts.items() if a in nodes},
        end_counts={a: n for a, n in process_map.end_counts.items() if a in nodes},
        case_count=process_map.case_count,
        pruned=True,
    )


def per_role_maps(log: EventLog) -> dict[str, ProcessMap]:
    """One map per role present, keyed in first-appearance order."""
    roles = list(dict.fromkeys(event.role for event in log))
    return {
        role: discover_map(filter_log(log, FilterSpec(roles={role})))
        for role in roles
    }
