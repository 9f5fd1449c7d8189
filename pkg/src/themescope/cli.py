"""Command line interface. Stage commands share a run-directory convention:

    rundir/
      meta.json            run identity (run_id, topic, source, theme)
      quotes.ndjson        verified quotes
      quarantine.ndjson    extracted but unverifiable quotes, kept for audit
      groups.json          high-level group definitions
      classification.json  quote_id -> group_id
      themes_batches.json  per-group, per-batch theme pools (pre-merge)
      themes.json          per-group merged theme lists
      assignments.ndjson   quote -> theme mappings
      reports.jsonl        append-only report history
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from themescope.config import PipelineConfig, load_config
from themescope.corpus.ingest import IngestStats, ingest_forum_dump_files
from themescope.corpus.models import InterviewTranscript
from themescope.corpus.segment import segment_interview
from themescope.corpus.store import (
    export_threads_csv,
    read_thread_store,
    read_transcript_store,
    write_thread_store,
)
from themescope.errors import ThemescopeError
from themescope.extract.models import Quote, read_quote_store, write_quote_store
from themescope.extract.validation import (
    agreement_rate,
    build_validation_sheet,
    read_sheet_csv,
    write_sheet_csv,
)
from themescope.llm.cache import DiskCache
from themescope.llm.port import ConcurrencyLimitedPort, port_from_env
from themescope.pipeline import (
    analyze_quotes,
    extract_corpus,
    run_forum_pipeline,
    run_interview_pipeline,
)
from themescope.report.build import RunArtifacts, build_report, review_sample
from themescope.report.render import ReportStore, render_markdown, serialize
from themescope.service.workflow import recommend_sources, suggest_high_level_themes
from themescope.sources.calibrate import calibration_report, calibration_sample
from themescope.sources.models import (
    RelevanceLabel,
    SubredditRecord,
    read_catalog,
    write_catalog,
)
from themescope.sources.prefilter import prefilter
from themescope.sources.scoring import binarize, score_source
from themescope.themes.assign import classify_high_level, map_quotes
from themescope.themes.generate import batched, generate_themes
from themescope.themes.merge import merge_themes
from themescope.themes.models import HighLevelGroup, Theme
from themescope.themes.rank import rank_themes


def _build_port(mock: bool, config: PipelineConfig):
    if mock:
        from themescope.fixtures.mock_llm import deterministic_port

        inner = deterministic_port()
    else:
        inner = port_from_env()
    return ConcurrencyLimitedPort(inner, config.concurrency)


def _load_pipeline_config(path: str | None) -> PipelineConfig:
    return load_config(path) if path else PipelineConfig()


def _read_groups(path: Path) -> list[HighLevelGroup]:
    data = json.loads(path.read_text(encoding="utf-8"))
    return [
        HighLevelGroup(
            group_id=g["group_id"],
            name=g["name"],
            description=g.get("description", ""),
            reserved=g.get("reserved", "none"),
        )
        for g in data
    ]


def _read_themes_json(path: Path) -> dict[str, list[Theme]]:
    data = json.loads(path.read_text(encoding="utf-8"))
    return {gid: [Theme.from_record(t) for t in block] for gid, block in data.items()}


config_option = click.option("--config", "config_path", type=click.Path(exists=True), default=None, help="Pipeline config YAML.")
mock_option = click.option("--mock", is_flag=True, help="Use the deterministic offline mock LLM.")
cache_option = click.option("--cache-dir", default=None, help="Completion cache directory.")


@click.group()
def main():
    """Prevalence-ranked thematic reports from forums and interview transcripts."""


# ---------------------------------------------------------------------------
# corpus
# ---------------------------------------------------------------------------


@main.group()
def corpus():
    """Ingest dumps and move thread stores around."""


@corpus.command("ingest")
@click.option("--submissions", required=True, type=click.Path(exists=True))
@click.option("--comments", required=True, type=click.Path(exists=True))
@click.option("--cutoff", default=None, help="Drop submissions created before this date (ISO).")
@click.option("--out", required=True, type=click.Path())
def corpus_ingest(submissions, comments, cutoff, out):
    """Stream a forum dump into a normalized thread store."""
    stats = IngestStats()
    n = write_thread_store(
        ingest_forum_dump_files(submissions, comments, cutoff=cutoff, stats=stats), out
    )
    click.echo(
        f"threads={n} records_processed={stats.records_processed} "
        f"malformed_lines={stats.malformed_lines} skipped_before_cutoff={stats.skipped_before_cutoff} "
        f"orphan_comments={stats.orphan_comments}"
    )


@corpus.command("export-csv")
@click.option("--threads", required=True, type=click.Path(exists=True))
@click.option("--out", required=True, type=click.Path())
def corpus_export_csv(threads, out):
    export_threads_csv(read_thread_store(threads), out)
    click.echo(f"wrote {out}")


@corpus.command("segment")
@click.option("--transcripts", required=True, type=click.Path(exists=True))
@click.option("--out", required=True, type=click.Path())
def corpus_segment(transcripts, out):
    """Segment interview transcripts into Q-A pair records."""
    n = 0
    with open(out, "w", encoding="utf-8") as fh:
        for transcript in read_transcript_store(transcripts):
            for pair in segment_interview(transcript):
                fh.write(
                    json.dumps(
                        {
                            "transcript_id": pair.transcript_id,
                            "pair_index": pair.pair_index,
                            "question": pair.question,
                            "answer": pair.answer,
                        },
                        ensure_ascii=False,
                    )
                    + "\n"
                )
                n += 1
    click.echo(f"pairs={n}")


# ---------------------------------------------------------------------------
# sources
# ---------------------------------------------------------------------------


@main.group()
def sources():
    """Select which communities feed the pipeline."""


@sources.command("prefilter")
@click.option("--top", default=0.2, show_default=True, help="Fraction kept after exclusions.")
@click.option("--catalog", required=True, type=click.Path(exists=True))
@click.option("--out", required=True, type=click.Path())
def sources_prefilter(top, catalog, out):
    records = list(read_catalog(catalog))
    kept = prefilter(records, top)
    write_catalog(kept, out)
    click.echo(f"in={len(records)} kept={len(kept)}")


@sources.command("score")
@click.option("--topic", required=True)
@click.option("--group", "target_group", required=True, help="Population of interest.")
@click.option("--catalog", required=True, type=click.Path(exists=True))
@click.option("--out", required=True, type=click.Path())
@config_option
@mock_option
def sources_score(topic, target_group, catalog, out, config_path, mock):
    """LLM-label every catalog record with dual relevance scores."""
    config = _load_pipeline_config(config_path)
    port = _build_port(mock, config)
    n = 0
    with open(out, "w", encoding="utf-8") as fh:
        for record in read_catalog(catalog):
            label = score_source(
                record, topic, target_group, port,
                model_id=config.model_id("score"), max_retries=config.max_retries,
            )
            fh.write(
                json.dumps({"name": record.name, **label.to_record()}, ensure_ascii=False) + "\n"
            )
            n += 1
    click.echo(f"scored={n}")


@sources.command("calibrate")
@click.option("--n", default=100, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--catalog", required=True, type=click.Path(exists=True))
@click.option("--human", "human_csv", default=None, type=click.Path(exists=True),
              help="CSV with name,population_relevance,content_relevance columns.")
@click.option("--llm", "llm_labels", default=None, type=click.Path(exists=True),
              help="Scored labels file (from `sources score`).")
@click.option("--out", default=None, type=click.Path(), help="Where to write the sample sheet.")
def sources_calibrate(n, seed, catalog, human_csv, llm_labels, out):
    """Draw a labeling sample; with both label files, print the kappa report."""
    import csv as _csv

    records = list(read_catalog(catalog))
    sample = calibration_sample(records, n, seed)
    if human_csv is None or llm_labels is None:
        dest = out or "calibration_sample.csv"
        with open(dest, "w", encoding="utf-8", newline="") as fh:
            writer = _csv.writer(fh)
            writer.writerow(["name", "population_relevance", "content_relevance"])
            for name in sample.sampled_names:
                writer.writerow([name, "", ""])
        click.echo(f"sampled={len(sample.sampled_names)} sheet={dest}")
        return
    with open(human_csv, newline="", encoding="utf-8") as fh:
        for row in _csv.DictReader(fh):
            sample.human_labels[row["name"]] = RelevanceLabel(
                population_relevance=int(row["population_relevance"]),
                population_reason="human",
                content_relevance=int(row["content_relevance"]),
                content_reason="human",
            )
    with open(llm_labels, encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                rec = json.loads(line)
                if rec["name"] in set(sample.sampled_names):
                    sample.llm_labels[rec["name"]] = RelevanceLabel.from_record(rec)
    report = calibration_report(sample)
    click.echo(report.summary())
    sys.exit(0 if report.passed else 1)


@sources.command("select")
@click.option("--pop-threshold", default=3, show_default=True)
@click.option("--content-threshold", default=4, show_default=True)
@click.option("--labels", required=True, type=click.Path(exists=True))
@click.option("--out", required=True, type=click.Path())
def sources_select(pop_threshold, content_threshold, labels, out):
    """Binarize scored labels into the selected source list."""
    selected = []
    total = 0
    with open(labels, encoding="utf-8") as fh:
        for line in fh:
            if not line.strip():
                continue
            rec = json.loads(line)
            total += 1
            if binarize(RelevanceLabel.from_record(rec), pop_threshold, content_threshold):
                selected.append(rec["name"])
    Path(out).write_text("\n".join(selected) + ("\n" if selected else ""), encoding="utf-8")
    click.echo(f"selected={len(selected)} of={total}")


@sources.command("recommend")
@click.option("--topic", required=True)
@click.option("--catalog", required=True, type=click.Path(exists=True))
@click.option("--chunk-size", default=200, show_default=True)
@config_option
@mock_option
def sources_recommend(topic, catalog, chunk_size, config_path, mock):
    config = _load_pipeline_config(config_path)
    port = _build_port(mock, config)
    names = [r.name for r in read_catalog(catalog)]
    for name in recommend_sources(topic, names, port, chunk_size=chunk_size,
                                  model_id=config.model_id("recommend"),
                                  max_retries=config.max_retries):
        click.echo(name)


# ---------------------------------------------------------------------------
# extract
# ---------------------------------------------------------------------------


@main.group()
def extract():
    """Pull verbatim quotes out of thread stores."""


@extract.command("run")
@click.option("--topic", required=True)
@click.option("--focus", "theme_focus", required=True)
@click.option("--threads", required=True, type=click.Path(exists=True))
@click.option("--run-dir", required=True, type=click.Path())
@config_option
@mock_option
@cache_option
def extract_run(topic, theme_focus, threads, run_dir, config_path, mock, cache_dir):
    config = _load_pipeline_config(config_path)
    port = _build_port(mock, config)
    cache = DiskCache(cache_dir) if cache_dir else None
    run_dir = Path(run_dir)
    run_dir.mkdir(parents=True, exist_ok=True)
    thread_list = list(read_thread_store(threads))
    result = extract_corpus(thread_list, topic, theme_focus, port, config, cache)
    write_quote_store(result.quotes, run_dir / "quotes.ndjson")
    write_quote_store(result.quarantined, run_dir / "quarantine.ndjson")
    (run_dir / "meta.json").write_text(
        json.dumps({"topic": topic, "theme": theme_focus, "threads": len(thread_list)}),
        encoding="utf-8",
    )
    click.echo(f"quotes={len(result.quotes)} quarantined={len(result.quarantined)}")


@extract.command("validate")
@click.option("--threads", required=True, type=click.Path(exists=True))
@click.option("--k", default=10, show_default=True)
@click.option("--n", default=100, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--quotes", default=None, type=click.Path(exists=True))
@click.option("--out", required=True, type=click.Path())
def extract_validate(threads, k, n, seed, quotes, out):
    """Write the human review sheet for a sampled slice of the corpus."""
    quotes_by_source: dict[str, list[Quote]] = {}
    if quotes:
        for q in read_quote_store(quotes):
            quotes_by_source.setdefault(q.source_id, []).append(q)
    sheet = build_validation_sheet(
        read_thread_store(threads), k_communities=k, n_per=n, seed=seed,
        quotes_by_source=quotes_by_source or None,
    )
    write_sheet_csv(sheet, out)
    flag = " (short: " + ", ".join(sheet.short_communities) + ")" if sheet.flagged_short else ""
    click.echo(f"rows={len(sheet.rows)}{flag}")


@extract.command("agreement")
@click.argument("sheet_csv", type=click.Path(exists=True))
def extract_agreement(sheet_csv):
    """Compute the relevance agreement rate from a marked sheet."""
    sheet = read_sheet_csv(sheet_csv)
    rate, passed = agreement_rate(sheet)
    click.echo(f"agreement={rate:.4f} threshold>0.70 [{'PASS' if passed else 'FAIL'}]")
    sys.exit(0 if passed else 1)


# ---------------------------------------------------------------------------
# themes
# ---------------------------------------------------------------------------


@main.group()
def themes():
    """Classify, generate, merge, map and rank themes."""


@themes.command("classify")
@click.option("--run-dir", required=True, type=click.Path(exists=True))
@click.option("--groups", "groups_file", required=True, type=click.Path(exists=True))
@config_option
@mock_option
@cache_option
def themes_classify(run_dir, groups_file, config_path, mock, cache_dir):
    config = _load_pipeline_config(config_path)
    port = _build_port(mock, config)
    cache = DiskCache(cache_dir) if cache_dir else None
    run_dir = Path(run_dir)
    quotes = list(read_quote_store(run_dir / "quotes.ndjson"))
    groups = _read_groups(Path(groups_file))
    mapping = classify_high_level(
        quotes, groups, port, model_id=config.model_id("classify"),
        max_retries=config.max_retries, batch_size=config.batch_size, cache=cache,
    )
    (run_dir / "classification.json").write_text(json.dumps(mapping, sort_keys=True), encoding="utf-8")
    (run_dir / "groups.json").write_text(
        json.dumps([{"group_id": g.group_id, "name": g.name, "description": g.description,
                     "reserved": g.reserved} for g in groups]),
        encoding="utf-8",
    )
    click.echo(f"classified={len(mapping)}")


@themes.command("generate")
@click.option("--run-dir", required=True, type=click.Path(exists=True))
@click.option("--batch-size", default=500, show_default=True)
@click.option("--mode", type=click.Choice(["open", "fixed9"]), default="open", show_default=True)
@config_option
@mock_option
@cache_option
def themes_generate(run_dir, batch_size, mode, config_path, mock, cache_dir):
    """Per-group, per-batch theme pools (pre-merge)."""
    config = _load_pipeline_config(config_path)
    port = _build_port(mock, config)
    cache = DiskCache(cache_dir) if cache_dir else None
    run_dir = Path(run_dir)
    quotes = {q.quote_id: q for q in read_quote_store(run_dir / "quotes.ndjson")}
    classification = json.loads((run_dir / "classification.json").read_text(encoding="utf-8"))
    groups = _read_groups(run_dir / "groups.json")
    pools: dict[str, list[list[dict]]] = {}
    for group in groups:
        if group.reserved == "off_topic":
            continue
        members = [quotes[qid] for qid, gid in sorted(classification.items()) if gid == group.group_id]
        if not members:
            pools[group.group_id] = []
            continue
        pools[group.group_id] = [
            [t.to_record() for t in generate_themes(
                batch, port, mode=mode, id_prefix=f"{group.group_id}.b{bi}.",
                model_id=config.model_id("generate"), max_retries=config.max_retries, cache=cache,
            )]
            for bi, batch in enumerate(batched(members, batch_size))
        ]
    (run_dir / "themes_batches.json").write_text(json.dumps(pools), encoding="utf-8")
    click.echo(" ".join(f"{gid}:{sum(len(b) for b in blocks)}" for gid, blocks in pools.items()))


@themes.command("merge")
@click.option("--run-dir", required=True, type=click.Path(exists=True))
@config_option
@mock_option
@cache_option
def themes_merge(run_dir, config_path, mock, cache_dir):
    """Merge each group's batch pools into one deduplicated list."""
    config = _load_pipeline_config(config_path)
    port = _build_port(mock, config)
    cache = DiskCache(cache_dir) if cache_dir else None
    run_dir = Path(run_dir)
    pools = json.loads((run_dir / "themes_batches.json").read_text(encoding="utf-8"))
    merged: dict[str, list[dict]] = {}
    for gid, blocks in pools.items():
        theme_blocks = [[Theme.from_record(t) for t in block] for block in blocks]
        if not theme_blocks:
            merged[gid] = []
        elif len(theme_blocks) == 1:
            merged[gid] = [t.to_record() for t in theme_blocks[0]]
        else:
            out = merge_themes(theme_blocks, port, model_id=config.model_id("merge"),
                               max_retries=config.max_retries, cache=cache)
            merged[gid] = [
                Theme(theme_id=f"{gid}.m{i}", title=t.title, description=t.description,
                      sub_theme_ids=t.sub_theme_ids, description_flagged=t.description_flagged).to_record()
                for i, t in enumerate(out)
            ]
    (run_dir / "themes.json").write_text(json.dumps(merged), encoding="utf-8")
    click.echo(" ".join(f"{gid}:{len(block)}" for gid, block in merged.items()))


@themes.command("map")
@click.option("--run-dir", required=True, type=click.Path(exists=True))
@config_option
@mock_option
@cache_option
def themes_map(run_dir, config_path, mock, cache_dir):
    config = _load_pipeline_config(config_path)
    port = _build_port(mock, config)
    cache = DiskCache(cache_dir) if cache_dir else None
    run_dir = Path(run_dir)
    quotes = {q.quote_id: q for q in read_quote_store(run_dir / "quotes.ndjson")}
    classification = json.loads((run_dir / "classification.json").read_text(encoding="utf-8"))
    themes_by_group = _read_themes_json(run_dir / "themes.json")
    rows = []
    for gid, group_themes in themes_by_group.items():
        members = [quotes[qid] for qid, g in sorted(classification.items()) if g == gid]
        if not members or not group_themes:
            continue
        rows.extend(
            map_quotes(members, group_themes, port, group_id=gid,
                       model_id=config.model_id("map"), max_retries=config.max_retries,
                       batch_size=config.batch_size, cache=cache)
        )
    with open(run_dir / "assignments.ndjson", "w", encoding="utf-8") as fh:
        for a in rows:
            fh.write(json.dumps(a.to_record()) + "\n")
    click.echo(f"assignments={len(rows)}")


@themes.command("rank")
@click.option("--run-dir", required=True, type=click.Path(exists=True))
@click.option("--group", "group_id", required=True)
def themes_rank(run_dir, group_id):
    from themescope.themes.models import read_assignment_store

    run_dir = Path(run_dir)
    assignments = list(read_assignment_store(run_dir / "assignments.ndjson"))
    themes_by_group = _read_themes_json(run_dir / "themes.json")
    if group_id not in themes_by_group:
        raise click.ClickException(f"unknown group {group_id!r}")
    for rank in rank_themes(assignments, themes_by_group[group_id], scope=group_id):
        click.echo(f"{rank.count}\t{rank.percent()}%\t{rank.theme.title}")


# ---------------------------------------------------------------------------
# report
# ---------------------------------------------------------------------------


def _artifacts_from_run_dir(run_dir: Path, run_id: str) -> RunArtifacts:
    from themescope.themes.models import read_assignment_store

    meta = json.loads((run_dir / "meta.json").read_text(encoding="utf-8")) if (run_dir / "meta.json").exists() else {}
    return RunArtifacts(
        run_id=run_id,
        topic=meta.get("topic", ""),
        source=meta.get("source", meta.get("theme", "")),
        quotes=list(read_quote_store(run_dir / "quotes.ndjson")),
        groups=_read_groups(run_dir / "groups.json"),
        classification=json.loads((run_dir / "classification.json").read_text(encoding="utf-8")),
        themes_by_group=_read_themes_json(run_dir / "themes.json"),
        assignments=list(read_assignment_store(run_dir / "assignments.ndjson")),
    )


@main.group()
def report():
    """Assemble, sample and export report documents."""


@report.command("build")
@click.option("--run-dir", required=True, type=click.Path(exists=True))
@click.option("--run", "run_id", default="local", show_default=True)
@click.option("--quotes-per-theme", default=1, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--top-k", default=None, type=int, help="Keep at most this many themes per group.")
def report_build(run_dir, run_id, quotes_per_theme, seed, top_k):
    run_dir = Path(run_dir)
    artifacts = _artifacts_from_run_dir(run_dir, run_id)
    doc = build_report(artifacts, quotes_per_theme=quotes_per_theme, seed=seed, top_k=top_k)
    store = ReportStore(run_dir / "reports")
    existing = store.find(run_id, doc.cache_key)
    if existing is None:
        store.append(doc)
        click.echo(f"built report {doc.cache_key[:12]}")
    else:
        click.echo(f"unchanged inputs; reusing report {doc.cache_key[:12]}")


@report.command("review")
@click.option("--run-dir", required=True, type=click.Path(exists=True))
@click.option("--run", "run_id", default="local", show_default=True)
@click.option("--per-theme", default=3, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--out", required=True, type=click.Path())
def report_review(run_dir, run_id, per_theme, seed, out):
    import csv as _csv

    store = ReportStore(Path(run_dir) / "reports")
    doc = store.latest(run_id)
    if doc is None:
        raise click.ClickException(f"no report built yet for run {run_id!r}")
    sheet = review_sample(doc, per_theme=per_theme, seed=seed)
    with open(out, "w", encoding="utf-8", newline="") as fh:
        writer = _csv.writer(fh)
        writer.writerow(["group", "theme", "quote_id", "source_id", "quote_text"])
        for row in sheet.rows:
            writer.writerow([row.group, row.theme, row.quote_id, row.source_id, row.quote_text])
    click.echo(f"rows={len(sheet.rows)} short_themes={len(sheet.short_themes)}")


@report.command("export")
@click.option("--run-dir", required=True, type=click.Path(exists=True))
@click.option("--run", "run_id", default="local", show_default=True)
@click.option("--format", "fmt", type=click.Choice(["markdown", "records"]), default="markdown",
              show_default=True)
def report_export(run_dir, run_id, fmt):
    store = ReportStore(Path(run_dir) / "reports")
    doc = store.latest(run_id)
    if doc is None:
        raise click.ClickException(f"no report built yet for run {run_id!r}")
    click.echo(render_markdown(doc) if fmt == "markdown" else serialize(doc))


# ---------------------------------------------------------------------------
# compare
# ---------------------------------------------------------------------------


@main.group()
def compare():
    """Compare generated themes against reference lists."""


@compare.command("suggest")
@click.option("--run-dir", required=True, type=click.Path(exists=True))
@click.option("--reference", default=None, type=click.Path(exists=True),
              help="Reference list (TSV); defaults to the shipped fixture.")
@click.option("--out", required=True, type=click.Path())
@config_option
@mock_option
def compare_suggest(run_dir, reference, out, config_path, mock):
    from themescope.compare.match import suggest_matches, write_suggestions_csv
    from themescope.compare.models import read_reference_list
    from themescope.fixtures.reference import load_authoritative_themes

    config = _load_pipeline_config(config_path)
    port = _build_port(mock, config)
    themes_by_group = _read_themes_json(Path(run_dir) / "themes.json")
    generated = [t for block in themes_by_group.values() for t in block]
    ref = read_reference_list(reference) if reference else load_authoritative_themes()
    suggestions = suggest_matches(generated, ref, port,
                                  model_id=config.model_id("match"),
                                  max_retries=config.max_retries)
    write_suggestions_csv(suggestions, out)
    matched = sum(1 for s in suggestions if s.candidate_title)
    click.echo(f"matched={matched} of={len(suggestions)}")


@compare.command("stats")
@click.argument("matrix_csv", type=click.Path(exists=True))
@click.option("--reference-column", default="authoritative", show_default=True)
@click.option("--others", default="forum,interview", show_default=True)
def compare_stats(matrix_csv, reference_column, others):
    from themescope.compare.models import read_mapping_matrix_csv
    from themescope.compare.stats import overlap_stats

    matrix = read_mapping_matrix_csv(matrix_csv)
    other_columns = [c.strip() for c in others.split(",") if c.strip()]
    stats = overlap_stats(matrix, reference_column, other_columns)
    for label, col in stats.per_column.items():
        click.echo(f"{label}: {col.matched}/{col.total} ({col.percent()}%)")
    click.echo(
        f"union: {stats.union_covered}/{stats.total_rows} ({stats.union_percent()}%) "
        f"unique_to_{reference_column}={stats.unique_to_reference} "
        f"unique_to_others={stats.unique_to_others}"
    )


# ---------------------------------------------------------------------------
# full runs, service, fixtures
# ---------------------------------------------------------------------------


@main.command("run")
@click.option("--kind", type=click.Choice(["forum", "interview"]), default="forum", show_default=True)
@click.option("--input", "input_path", required=True, type=click.Path(exists=True))
@click.option("--topic", required=True)
@click.option("--theme", required=True)
@click.option("--run-id", default="local", show_default=True)
@click.option("--run-dir", required=True, type=click.Path())
@click.option("--seed", default=0, show_default=True)
@config_option
@mock_option
@cache_option
def full_run(kind, input_path, topic, theme, run_id, run_dir, seed, config_path, mock, cache_dir):
    """Run the whole pipeline (extract through report) in one go."""
    from themescope.service.app import default_groups

    config = _load_pipeline_config(config_path)
    port = _build_port(mock, config)
    run_dir = Path(run_dir)
    run_dir.mkdir(parents=True, exist_ok=True)
    cache = DiskCache(cache_dir or (run_dir / "llm-cache"))
    store = ReportStore(run_dir / "reports")
    groups = default_groups(theme, kind)
    if kind == "forum":
        threads = list(read_thread_store(input_path))
        doc, artifacts, extraction = run_forum_pipeline(
            threads, topic, theme, groups, port, config,
            run_id=run_id, source=Path(input_path).stem, report_seed=seed,
            cache=cache, report_store=store,
        )
        write_quote_store(extraction.quarantined, run_dir / "quarantine.ndjson")
    else:
        transcripts = list(read_transcript_store(input_path))
        doc, artifacts, _ = run_interview_pipeline(
            transcripts, topic, groups, port, config,
            run_id=run_id, source=Path(input_path).stem, report_seed=seed,
            cache=cache, report_store=store,
        )
    write_quote_store(artifacts.quotes, run_dir / "quotes.ndjson")
    (run_dir / "report.md").write_text(render_markdown(doc), encoding="utf-8")
    click.echo(f"report={run_dir / 'report.md'} quotes={len(artifacts.quotes)} cache_key={doc.cache_key[:12]}")


@main.command("serve")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", "port_num", default=8000, show_default=True)
@click.option("--data-dir", required=True, type=click.Path())
@click.option("--state-dir", required=True, type=click.Path())
@click.option("--catalog", default=None, type=click.Path(exists=True))
@config_option
@mock_option
def serve(host, port_num, data_dir, state_dir, catalog, config_path, mock):
    """Launch the HTTP service."""
    import uvicorn

    from themescope.service.app import ServiceSettings, create_app

    config = _load_pipeline_config(config_path)
    inner = None
    if mock:
        from themescope.fixtures.mock_llm import deterministic_port

        inner = deterministic_port()
    settings = ServiceSettings(
        data_dir=Path(data_dir), state_dir=Path(state_dir), pipeline=config,
        catalog_path=Path(catalog) if catalog else None,
    )
    uvicorn.run(create_app(settings, port=inner), host=host, port=port_num)


@main.group()
def fixtures():
    """Deterministic synthetic assets for tests and demos."""


@fixtures.command("gen-corpus")
@click.option("--threads", "n_threads", default=10_000, show_default=True)
@click.option("--subreddits", default=12, show_default=True)
@click.option("--corrupt-lines", default=0, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--out", required=True, type=click.Path())
def fixtures_gen_corpus(n_threads, subreddits, corrupt_lines, seed, out):
    from themescope.fixtures.corpus_gen import CorpusSpec, generate_corpus

    spec = CorpusSpec(n_threads=n_threads, n_subreddits=subreddits, corrupt_lines=corrupt_lines)
    subs, coms, counts = generate_corpus(spec, seed, out)
    click.echo(f"{subs} {coms} lines={counts.total_lines} corrupt={counts.corrupt_lines}")


@fixtures.command("refs")
def fixtures_refs():
    from themescope.compare.stats import overlap_stats
    from themescope.fixtures.reference import load_reference_fixtures

    ref, matrix = load_reference_fixtures()
    stats = overlap_stats(matrix, "authoritative", ["forum", "interview"])
    click.echo(f"authoritative_themes={len(ref.themes)} matrix_rows={len(matrix.rows)}")
    click.echo(
        f"union={stats.union_covered}/{stats.total_rows} ({stats.union_percent()}%)"
    )


if __name__ == "__main__":
    main()
