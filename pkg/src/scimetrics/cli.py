"""Command-line front end: ingestion -> indices -> reconciliation -> analytics.

One subcommand per report family. Identical inputs and configuration
always produce byte-identical output files; reports are written through
temp-file renames so an interrupted run never leaves a corrupt file.

Exit codes: 0 success, 1 I/O failure, 2 validation/schema failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import analytics
from .analytics import BinSpec, CohortTable, build_cohort
from .config import FORMATS, OUT_DIR_ENV, ROUNDING_MODES, RunConfig
from .crossdb import GLOBAL_SCOPE, classify_overlap, overlap_proportions
from .errors import ConfigError, EmptyScope, SchemaError, ScimetricsError
from .indices import IndexReport, compute_hc
from .ingest import (
    AuthorProfile,
    build_profiles,
    parse_records,
    parse_roster,
    profile_to_citations,
)
from .reports import round_half_up, write_csv, write_json

INDEX_COLUMNS = ("h", "g", "h_cite", "k", "h_c")
STATS_INDICES = ("h", "h_c", "g")


@dataclass
class Pipeline:
    """Parsed inputs and per-discipline cohorts shared by every subcommand."""

    config: RunConfig
    profiles: list[AuthorProfile]
    disciplines: list[str]
    cohorts: dict[str, CohortTable]  # per discipline, plus the global scope
    reject_paths: list[Path]


# ---------------------------------------------------------------------------
# Configuration assembly
# ---------------------------------------------------------------------------

def _parse_records_flag(value: str) -> tuple[str, str]:
    path, sep, tag = value.rpartition("@")
    if not sep or not path or not tag:
        raise ConfigError(f"--records expects <path>@<dbtag>, got {value!r}")
    return path, tag


def build_config(args: argparse.Namespace) -> RunConfig:
    """Merge the optional config file with flags; flags win."""
    file_cfg: dict = {}
    if args.config:
        try:
            file_cfg = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file {args.config}: {exc}") from exc
        if not isinstance(file_cfg, dict):
            raise ConfigError("config file must hold a JSON object")

    file_records = file_cfg.get("records") or {}
    if not isinstance(file_records, dict):
        raise ConfigError("config file 'records' must map dbtag -> path")
    records: dict[str, Path] = {tag: Path(p) for tag, p in file_records.items()}
    for value in args.records or []:
        path, tag = _parse_records_flag(value)
        records[tag] = Path(path)

    roster = args.roster or file_cfg.get("roster")
    if not records or not roster:
        raise ConfigError("both --records (twice) and --roster are required")

    out_dir = args.out or file_cfg.get("out") or os.environ.get(OUT_DIR_ENV) or "out"

    fmt = args.format or file_cfg.get("format") or "both"
    formats = FORMATS if fmt == "both" else (fmt,)

    bins_text = args.bins or file_cfg.get("bins")
    try:
        bins = BinSpec.parse(bins_text) if bins_text else analytics.DEFAULT_BINS
    except ValueError as exc:
        raise ConfigError(f"invalid --bins: {exc}") from exc

    disciplines = args.disciplines or file_cfg.get("disciplines")
    if isinstance(disciplines, str):
        disciplines = [d.strip() for d in disciplines.split(",") if d.strip()]

    density_width = (
        args.density_width
        if args.density_width is not None
        else int(file_cfg.get("density_width", 5))
    )

    config = RunConfig(
        records=records,
        roster=Path(roster),
        out_dir=Path(out_dir),
        disciplines=tuple(disciplines) if disciplines else None,
        bins=bins,
        density_width=density_width,
        formats=formats,
        rounding=args.rounding or file_cfg.get("rounding") or "half-up",
    )
    return config.validate()


# ---------------------------------------------------------------------------
# Pipeline assembly
# ---------------------------------------------------------------------------

def load_pipeline(config: RunConfig, reject_paths: list[Path] | None = None) -> Pipeline:
    """Parse both exports and the roster, then build profiles and cohorts.

    Reject reports (one CSV per database, when any row was dropped) are
    written before anything else so a later validation failure still
    leaves them available; pass ``reject_paths`` to observe them even when
    this function raises.
    """
    for path in [*config.records.values(), config.roster]:
        if not Path(path).exists():
            raise FileNotFoundError(f"input file not found: {path}")

    if reject_paths is None:
        reject_paths = []
    all_records = []
    for tag, path in config.records.items():
        records, rejects = parse_records(path, None, tag)
        all_records.extend(records)
        if rejects:
            reject_path = config.out_dir / f"rejects_{tag}.csv"
            write_csv(
                reject_path,
                ("row", "author_key", "reason"),
                [(r.row, r.author_key, r.reason) for r in rejects],
            )
            reject_paths.append(reject_path)

    roster = parse_roster(config.roster)
    if not roster:
        raise SchemaError("empty roster")

    roster_disciplines = sorted({entry.discipline for entry in roster})
    if config.disciplines is not None:
        declared = set(config.disciplines)
        stray = sorted({e.discipline for e in roster} - declared)
        if stray:
            raise ConfigError(
                f"roster disciplines not in the declared set: {', '.join(stray)}"
            )
        disciplines = [d for d in sorted(declared) if d in roster_disciplines]
    else:
        disciplines = roster_disciplines

    tags = config.db_tags
    profiles = build_profiles(all_records, roster, tags)
    reports = {
        p.author_key: {tag: compute_hc(profile_to_citations(p, tag)) for tag in tags}
        for p in profiles
    }
    by_discipline: dict[str, dict[str, dict[str, IndexReport]]] = {}
    for p in profiles:
        by_discipline.setdefault(p.discipline, {})[p.author_key] = reports[p.author_key]
    cohorts = {
        d: build_cohort(d, by_discipline[d], tags) for d in disciplines
    }
    cohorts[GLOBAL_SCOPE] = build_cohort(GLOBAL_SCOPE, reports, tags)
    return Pipeline(
        config=config,
        profiles=profiles,
        disciplines=disciplines,
        cohorts=cohorts,
        reject_paths=reject_paths,
    )


def _scopes(pipeline: Pipeline) -> list[str]:
    """Per-discipline scopes first (sorted), the global scope last."""
    return [*pipeline.disciplines, GLOBAL_SCOPE]


def _pct(config: RunConfig, fraction: float) -> float:
    value = fraction * 100.0
    return round_half_up(value, 1) if config.rounding == "half-up" else value


def _rho(config: RunConfig, rho: float) -> float:
    return round_half_up(rho, 2) if config.rounding == "half-up" else rho


def _emit(
    pipeline: Pipeline,
    name: str,
    header: tuple[str, ...],
    rows: list[tuple],
    json_rows: list[dict] | None = None,
    footnotes: list[str] | None = None,
) -> None:
    config = pipeline.config
    if "csv" in config.formats:
        path = config.out_dir / f"{name}.csv"
        write_csv(path, header, rows)
        print(f"wrote {path}")
    if "json" in config.formats:
        payload: dict = {
            "report": name,
            "rows": json_rows
            if json_rows is not None
            else [dict(zip(header, row)) for row in rows],
        }
        if footnotes:
            payload["footnotes"] = footnotes
        path = config.out_dir / f"{name}.json"
        write_json(path, payload)
        print(f"wrote {path}")


def _emit_plot(pipeline: Pipeline, name: str, rows: list[tuple]) -> None:
    """Plot-ready long format: series, x, y."""
    if "csv" not in pipeline.config.formats:
        return
    path = pipeline.config.out_dir / f"{name}.csv"
    write_csv(path, ("series", "x", "y"), rows)
    print(f"wrote {path}")


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_index(pipeline: Pipeline) -> None:
    """Per-(author, database) index rows plus per-discipline summaries."""
    tags = pipeline.config.db_tags
    rows = []
    for discipline in pipeline.disciplines:
        cohort = pipeline.cohorts[discipline]
        for row in sorted(cohort.rows, key=lambda r: r.author_key):
            for tag in tags:
                r = row.reports[tag]
                rows.append(
                    (discipline, row.author_key, tag, r.h, r.g, r.h_cite, r.k, r.h_c)
                )
    _emit(
        pipeline,
        "index_report",
        ("discipline", "author_key", "db", *INDEX_COLUMNS),
        rows,
    )

    stats_rows = []
    for scope in _scopes(pipeline):
        cohort = pipeline.cohorts[scope]
        for tag in tags:
            for key in STATS_INDICES:
                values = [analytics.RANK_KEYS[key](r.reports[tag]) for r in cohort.rows]
                s = analytics.stats_summary(values)
                stats_rows.append(
                    (
                        scope,
                        tag,
                        key,
                        len(values),
                        s.minimum,
                        s.maximum,
                        s.median,
                        s.mean,
                        s.sd,
                    )
                )
    _emit(
        pipeline,
        "index_stats",
        ("discipline", "db", "index", "n", "min", "max", "median", "mean", "sd"),
        stats_rows,
    )


def cmd_overlap(pipeline: Pipeline) -> None:
    """Common/unique publication reconciliation per discipline and globally."""
    config = pipeline.config
    tags = config.db_tags
    rows = []
    prop_rows = []
    for scope in _scopes(pipeline):
        report = classify_overlap(
            pipeline.profiles,
            tags,
            scope=None if scope == GLOBAL_SCOPE else scope,
            disciplines=pipeline.disciplines,
        )
        for tag in tags:
            stats = report.per_db[tag]
            rows.append(
                (
                    scope,
                    report.author_count,
                    tag,
                    stats.total_pubs,
                    stats.unique_pubs,
                    stats.pubs_received_citations,
                    stats.total_citations,
                    report.common_pubs,
                )
            )
        try:
            props = overlap_proportions(report)
        except EmptyScope:
            continue  # nothing published in this scope: no shares to report
        prop_rows.append(
            (scope, "union", "common", props.common_share, _pct(config, props.common_share))
        )
        for tag in tags:
            share = props.unique_shares[tag]
            prop_rows.append((scope, "union", f"unique_{tag}", share, _pct(config, share)))
        for tag in tags:
            common = props.per_db_common_share[tag]
            unique = props.per_db_unique_share[tag]
            prop_rows.append((scope, tag, "common", common, _pct(config, common)))
            prop_rows.append((scope, tag, "unique", unique, _pct(config, unique)))
    _emit(
        pipeline,
        "overlap",
        (
            "discipline",
            "author_count",
            "db",
            "total_pubs",
            "unique_pubs",
            "pubs_received_citations",
            "total_citations",
            "common_pubs",
        ),
        rows,
    )
    _emit(
        pipeline,
        "overlap_proportions",
        ("discipline", "denominator", "series", "share", "share_pct"),
        prop_rows,
    )


def cmd_rank(pipeline: Pipeline, key: str) -> None:
    """Authors of every scope ranked by one index, per database."""
    tags = pipeline.config.db_tags
    rows = []
    plot_rows = []
    for scope in _scopes(pipeline):
        cohort = pipeline.cohorts[scope]
        for tag in tags:
            pairs = [(r.author_key, r.reports[tag]) for r in cohort.rows]
            for ranked in analytics.rank_authors(pairs, key):
                r = ranked.report
                rows.append(
                    (scope, tag, ranked.rank, ranked.author_key, r.h, r.g, r.h_cite, r.k, r.h_c)
                )
                plot_rows.append(
                    (f"{scope}/{tag}", ranked.rank, analytics.RANK_KEYS[key](r))
                )
    _emit(
        pipeline,
        f"rank_{key}",
        ("discipline", "db", "rank", "author_key", *INDEX_COLUMNS),
        rows,
    )
    _emit_plot(pipeline, f"rank_{key}_plot", plot_rows)


def cmd_bins(pipeline: Pipeline) -> None:
    """Share of authors per index bin, h and h_c side by side."""
    config = pipeline.config
    labels = config.bins.labels()
    header = ["discipline", "db"]
    for label in labels:
        header += [f"h_{label}", f"hc_{label}"]
    rows = []
    for scope in _scopes(pipeline):
        cohort = pipeline.cohorts[scope]
        for tag in config.db_tags:
            h_bins = analytics.bin_proportions(
                [r.reports[tag].h for r in cohort.rows], config.bins
            )
            hc_bins = analytics.bin_proportions(
                [r.reports[tag].h_c for r in cohort.rows], config.bins
            )
            row = [scope, tag]
            for h_prop, hc_prop in zip(h_bins.proportions, hc_bins.proportions):
                row += [_pct(config, h_prop), _pct(config, hc_prop)]
            rows.append(tuple(row))
    _emit(pipeline, "author_bins", tuple(header), rows)


def cmd_corr(pipeline: Pipeline) -> None:
    """Rank correlation between h and h_c inside each h-bin."""
    config = pipeline.config
    labels = config.bins.labels()
    rows = []
    json_rows = []
    for scope in _scopes(pipeline):
        cohort = pipeline.cohorts[scope]
        for tag in config.db_tags:
            rhos = analytics.per_bin_correlation(cohort, config.bins, tag)
            rendered = [
                "-" if rho is None else _rho(config, rho) for rho in rhos
            ]
            rows.append((scope, tag, *rendered))
            json_rows.append(
                {
                    "discipline": scope,
                    "db": tag,
                    **{
                        label: (None if rho is None else _rho(config, rho))
                        for label, rho in zip(labels, rhos)
                    },
                }
            )
    _emit(
        pipeline,
        "rank_correlation",
        ("discipline", "db", *labels),
        rows,
        json_rows=json_rows,
        footnotes=[
            "cells with fewer than two authors or a constant variable are"
            " reported as absent (-), never as a number",
        ],
    )


def cmd_deviation(pipeline: Pipeline) -> None:
    """Sample sd of per-author cross-database differences, per index."""
    rows = []
    plot_rows = []
    for scope in _scopes(pipeline):
        cohort = pipeline.cohorts[scope]
        for key in ("h", "h_c"):
            sd = analytics.diff_sd(cohort, key)
            rows.append((scope, key, sd))
            plot_rows.append((key, scope, sd))
    _emit(pipeline, "index_deviation", ("discipline", "index", "sd"), rows)
    _emit_plot(pipeline, "index_deviation_plot", plot_rows)


def cmd_density(pipeline: Pipeline) -> None:
    """Normalized histogram series of h and h_c per scope and database."""
    config = pipeline.config
    rows = []
    for scope in _scopes(pipeline):
        cohort = pipeline.cohorts[scope]
        for tag in config.db_tags:
            for key in ("h", "h_c"):
                values = [analytics.RANK_KEYS[key](r.reports[tag]) for r in cohort.rows]
                for x, y in analytics.density_series(values, config.density_width):
                    rows.append((f"{scope}/{tag}/{key}", x, y))
    _emit(pipeline, "density", ("series", "x", "y"), rows)


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="scimetrics",
        description=(
            "Deterministic bibliometric batch runs: h/g/h_c index reports,"
            " cross-database DOI reconciliation, and ranking analytics."
        ),
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--records",
        action="append",
        metavar="PATH@DBTAG",
        help="records export with its database tag; pass exactly twice",
    )
    common.add_argument("--roster", help="author roster CSV/JSON")
    common.add_argument(
        "--out", help=f"output directory (default: ${OUT_DIR_ENV} or ./out)"
    )
    common.add_argument(
        "--format", choices=(*FORMATS, "both"), help="report formats (default both)"
    )
    common.add_argument("--bins", help='bin spec such as "0-10,11-20,...,51+"')
    common.add_argument(
        "--density-width", type=int, help="histogram bin width (default 5)"
    )
    common.add_argument(
        "--disciplines", help="comma-separated declared discipline set"
    )
    common.add_argument(
        "--rounding", choices=ROUNDING_MODES, help="report value formatting"
    )
    common.add_argument("--config", help="JSON config file; flags override it")

    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("index", parents=[common], help="per-author index reports")
    sub.add_parser("overlap", parents=[common], help="common/unique DOI report")
    rank = sub.add_parser("rank", parents=[common], help="author rankings")
    rank.add_argument("--key", choices=("h", "g", "h_c"), default="h")
    sub.add_parser("bins", parents=[common], help="author share per index bin")
    sub.add_parser("corr", parents=[common], help="per-bin h vs h_c rank correlation")
    sub.add_parser("deviation", parents=[common], help="cross-database index deviation")
    sub.add_parser("density", parents=[common], help="h and h_c density series")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    reject_paths: list[Path] = []
    try:
        config = build_config(args)
        pipeline = load_pipeline(config, reject_paths)
        for path in reject_paths:
            print(f"wrote {path}")
        if args.command == "index":
            cmd_index(pipeline)
        elif args.command == "overlap":
            cmd_overlap(pipeline)
        elif args.command == "rank":
            cmd_rank(pipeline, args.key)
        elif args.command == "bins":
            cmd_bins(pipeline)
        elif args.command == "corr":
            cmd_corr(pipeline)
        elif args.command == "deviation":
            cmd_deviation(pipeline)
        elif args.command == "density":
            cmd_density(pipeline)
        return 0
    except OSError as exc:
        print(f"scimetrics: i/o error: {exc}", file=sys.stderr)
        return 1
    except ScimetricsError as exc:
        print(f"scimetrics: {type(exc).__name__}: {exc}", file=sys.stderr)
        for path in reject_paths:
            print(f"scimetrics: reject report written to {path}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
