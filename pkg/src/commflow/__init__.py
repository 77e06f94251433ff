"""commflow: event logs and process maps from community communication.

The pipeline has three stages, each usable on its own: classify raw
message records against a keyphrase catalog (`construct_log`), discover
an annotated directly-follows process map (`discover_map`), and compute
log-level statistics (`summarize_log` and friends). File formats live
in `commflow.formats`; the `commflow` command wires everything together.
"""

from .builder import (
    DEFAULT_FALLBACK,
    SOURCE_KINDS,
    FallbackPolicy,
    MessageRecord,
    construct_log,
    count_role_events,
)
from .catalog import (
    PHASES,
    Catalog,
    CatalogRule,
    MatchResult,
    classify,
    normalize_text,
    phrase_matches,
)
from .default_catalog import DEFAULT_SYNONYMS, default_catalog
from .discovery import (
    MetricBundle,
    ProcessMap,
    PruneSpec,
    discover_map,
    per_role_maps,
    prune_map,
)
from .formats import (
    SchemaError,
    ParsedMessages,
    export_dot,
    export_stats_json,
    format_timestamp,
    humanize_seconds,
    load_event_log,
    parse_messages,
    parse_timestamp,
    read_catalog,
    read_event_log,
    save_event_log,
    write_catalog,
    write_event_log,
    write_synonyms,
)
from .model import (
    DEFAULT_ROLES,
    Event,
    EventLog,
    FilterSpec,
    Trace,
    case_duration,
    filter_log,
    group_into_traces,
)
from .stats import (
    ExecutionSummary,
    LogStatistics,
    RoleBreakdown,
    RoleShare,
    TimelineSeries,
    breakdown_from_counts,
    executions_from_counts,
    mean_executions_per_activity,
    role_breakdown,
    start_activity_attribution,
    summarize_log,
    timeline,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_FALLBACK",
    "DEFAULT_ROLES",
    "DEFAULT_SYNONYMS",
    "PHASES",
    "SOURCE_KINDS",
    "Catalog",
    "CatalogRule",
    "Event",
    "EventLog",
    "ExecutionSummary",
    "FallbackPolicy",
    "FilterSpec",
    "LogStatistics",
    "MatchResult",
    "MessageRecord",
    "MetricBundle",
    "ParsedMessages",
    "ProcessMap",
    "PruneSpec",
    "RoleBreakdown",
    "RoleShare",
    "SchemaError",
    "TimelineSeries",
    "Trace",
    "breakdown_from_counts",
    "case_duration",
    "classify",
    "construct_log",
    "count_role_events",
    "default_catalog",
    "discover_map",
    "executions_from_counts",
    "export_dot",
    "export_stats_json",
    "filter_log",
    "format_timestamp",
    "group_into_traces",
    "humanize_seconds",
    "load_event_log",
    "mean_executions_per_activity",
    "normalize_text",
    "parse_messages",
    "parse_timestamp",
    "per_role_maps",
    "phrase_matches",
    "prune_map",
    "read_catalog",
    "read_event_log",
    "role_breakdown",
    "save_event_log",
    "start_activity_attribution",
    "summarize_log",
    "timeline",
    "write_catalog",
    "write_event_log",
    "write_synonyms",
]
