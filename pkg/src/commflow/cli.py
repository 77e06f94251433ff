"""Command-line pipeline: build-log, discover, stats, seed-catalog.

Exit codes: 0 success, 1 usage error, 2 input schema error, 3 I/O
failure. Diagnostics go to stderr; data goes only to the declared
output paths, so runs are safe to script.
"""

from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path
from typing import Sequence

from .builder import DEFAULT_FALLBACK, construct_log
from .catalog import PHASES, Catalog
from .default_catalog import default_catalog
from .discovery import PruneSpec, discover_map, prune_map
from .formats import (
    DOT_VIEWS,
    SchemaError,
    export_dot,
    export_stats_json,
    format_timestamp,
    humanize_seconds,
    load_event_log,
    parse_messages,
    read_catalog,
    save_event_log,
    write_catalog,
    write_synonyms,
)
from .model import FilterSpec, filter_log
from .stats import role_breakdown, summarize_log, timeline


class _CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code
        self.message = message


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on usage errors; remap to 1 so that
    # 2 stays reserved for input schema violations.
    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        raise _CliError(1, f"{self.prog}: error: {message}")


_DURATION_RE = re.compile(r"^\s*(\d+(?:\.\d+)?)\s*([smhdw])?\s*$", re.IGNORECASE)
_UNIT_SECONDS = {"s": 1.0, "m": 60.0, "h": 3600.0, "d": 86400.0, "w": 604800.0}


def parse_duration(text: str) -> float:
    """Duration in seconds from forms like 45, 90s, 15m, 6h, 2d, 1w."""
    match = _DURATION_RE.match(text)
    if not match:
        raise ValueError(
            f"unrecognized duration {text!r}; use a number with an "
            "optional s/m/h/d/w suffix"
        )
    seconds = float(match.group(1)) * _UNIT_SECONDS[(match.group(2) or "s").lower()]
    if seconds <= 0:
        raise ValueError("duration must be positive")
    return seconds


def _write_text(path: str, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8", newline="")


def _load_catalog(args: argparse.Namespace) -> Catalog:
    if args.catalog is None:
        return default_catalog(args.phase)
    catalog = read_catalog(args.catalog, args.synonyms)
    if args.phase is not None:
        catalog = catalog.for_phase(args.phase)
    return catalog


def _cmd_build_log(args: argparse.Namespace) -> int:
    catalog = _load_catalog(args)
    parsed = parse_messages(args.messages)
    log = construct_log(parsed.records, catalog)
    fallback = sum(
        1
        for event in log
        if event.activity == DEFAULT_FALLBACK.activity
        and event.state == DEFAULT_FALLBACK.state
        and event.role == DEFAULT_FALLBACK.role
    )
    save_event_log(log, args.out)
    print(
        f"read {len(parsed.records)} messages ({parsed.skipped} skipped), "
        f"emitted {len(log)} events ({fallback} fallback)",
        file=sys.stderr,
    )
    return 0


def _cmd_discover(args: argparse.Namespace) -> int:
    log = load_event_log(args.log)
    if args.role is not None:
        available = list(dict.fromkeys(event.role for event in log))
        if args.role not in available:
            raise _CliError(
                1,
                f"unknown role {args.role!r}; available roles: "
                f"{', '.join(available) if available else '(none)'}",
            )
        log = filter_log(log, FilterSpec(roles={args.role}))
    process_map = discover_map(log)
    if args.min_edge_cases is not None:
        # One slider, both axes: drop edges seen in fewer cases and
        # activities executed fewer times than the threshold.
        process_map = prune_map(
            process_map,
            PruneSpec(
                min_edge_case_frequency=args.min_edge_cases,
                min_node_absolute_frequency=args.min_edge_cases,
            ),
        )
    _write_text(args.out, export_dot(process_map, args.view))
    print(
        f"wrote {args.out}: {len(process_map.nodes)} nodes, "
        f"{len(process_map.edges)} edges, {process_map.case_count} cases",
        file=sys.stderr,
    )
    return 0


def _cmd_stats(args: argparse.Namespace) -> int:
    width = parse_duration(args.bin_width)
    log = load_event_log(args.log)
    stats = summarize_log(log)
    breakdown = role_breakdown(log)
    series = timeline(log, width)
    _write_text(args.out, export_stats_json(stats, breakdown, series))

    def say(line: str) -> None:
        print(line, file=sys.stderr)

    say(f"events        {stats.event_count}")
    say(f"cases         {stats.case_count}")
    say(f"activities    {stats.activity_count}")
    say(f"participants  {stats.participant_count}")
    if stats.first_timestamp is not None and stats.last_timestamp is not None:
        say(f"first         {format_timestamp(stats.first_timestamp)}")
        say(f"last          {format_timestamp(stats.last_timestamp)}")
    if stats.mean_case_duration is not None:
        say(
            "mean case duration    "
            f"{humanize_seconds(stats.mean_case_duration)} "
            f"({stats.mean_case_duration} s)"
        )
    if stats.median_case_duration is not None:
        say(
            "median case duration  "
            f"{humanize_seconds(stats.median_case_duration)} "
            f"({stats.median_case_duration} s)"
        )
    if breakdown.shares:
        say("roles:")
        for role, share in breakdown.shares.items():
            say(f"  {role}  {share.event_count}  {share.percent:.2f}%")
    say(f"wrote {args.out}")
    return 0


def _cmd_seed_catalog(args: argparse.Namespace) -> int:
    catalog = default_catalog(args.phase)
    _write_text(args.out, write_catalog(catalog))
    print(f"wrote {len(catalog.rules)} rules to {args.out}", file=sys.stderr)
    if args.synonyms_out is not None:
        _write_text(args.synonyms_out, write_synonyms(catalog))
        print(f"wrote synonym table to {args.synonyms_out}", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="commflow",
        description=(
            "Turn community communication records into event logs and "
            "discover annotated process maps."
        ),
    )
    commands = parser.add_subparsers(
        dest="command", required=True, parser_class=_Parser
    )

    build = commands.add_parser(
        "build-log", help="classify raw messages into an event-log CSV"
    )
    build.add_argument("messages", help="raw messages CSV")
    build.add_argument(
        "--catalog",
        help="keyphrase catalog CSV (default: the shipped starter catalog)",
    )
    build.add_argument("--synonyms", help="synonym pairs CSV")
    build.add_argument(
        "--phase", choices=PHASES, help="use only this phase's rules"
    )
    build.add_argument("--out", required=True, help="event-log CSV to write")
    build.set_defaults(handler=_cmd_build_log)

    discover = commands.add_parser(
        "discover", help="discover a process map from an event log"
    )
    discover.add_argument("log", help="event-log CSV")
    discover.add_argument("--role", help="keep only this role's events")
    discover.add_argument(
        "--min-edge-cases",
        type=int,
        metavar="N",
        help="hide edges seen in fewer than N cases and activities "
        "executed fewer than N times",
    )
    discover.add_argument(
        "--view",
        choices=DOT_VIEWS,
        default="frequency",
        help="metric set shown on the map (default: frequency)",
    )
    discover.add_argument("--out", required=True, help="DOT file to write")
    discover.set_defaults(handler=_cmd_discover)

    stats = commands.add_parser(
        "stats", help="summarize an event log into JSON plus a table"
    )
    stats.add_argument("log", help="event-log CSV")
    stats.add_argument(
        "--bin-width",
        default="1w",
        help="timeline bin width, e.g. 90s, 15m, 6h, 2d, 1w (default: 1w)",
    )
    stats.add_argument("--out", required=True, help="JSON file to write")
    stats.set_defaults(handler=_cmd_stats)

    seed = commands.add_parser(
        "seed-catalog", help="write the shipped starter catalog to CSV"
    )
    seed.add_argument("--phase", choices=PHASES, help="emit only this phase")
    seed.add_argument("--out", required=True, help="catalog CSV to write")
    seed.add_argument("--synonyms-out", help="also write the synonym pairs CSV")
    seed.set_defaults(handler=_cmd_seed_catalog)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.handler(args)
    except _CliError as exc:
        print(exc.message, file=sys.stderr)
        return exc.code
    except SystemExit as exc:
        # --help and --version exit through here with status 0.
        return int(exc.code or 0)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main_entry() -> None:
    sys.exit(main())
