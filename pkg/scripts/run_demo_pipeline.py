#!/usr/bin/env python3
"""End-to-end demo on synthetic data with the offline mock LLM.

Generates a seeded forum dump, ingests it, runs extraction through report
assembly twice (the second pass must be pure cache), and drops the
markdown report next to the artifacts.

    python scripts/run_demo_pipeline.py --threads 500 --out /tmp/themescope-demo
"""

import argparse
import time
from pathlib import Path

from themescope.config import PipelineConfig
from themescope.corpus.ingest import IngestStats, ingest_forum_dump_files
from themescope.extract.models import write_quote_store
from themescope.fixtures.corpus_gen import CorpusSpec, generate_corpus
from themescope.fixtures.mock_llm import deterministic_port
from themescope.llm.cache import DiskCache
from themescope.pipeline import run_forum_pipeline
from themescope.report.render import ReportStore, render_markdown, serialize
from themescope.service.app import default_groups


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--threads", type=int, default=500)
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--fabricate-every", type=int, default=25,
                        help="Mock fabricates one quote in N (exercises quarantine).")
    parser.add_argument("--out", type=Path, default=Path("demo-out"))
    args = parser.parse_args()

    args.out.mkdir(parents=True, exist_ok=True)
    subs, coms, counts = generate_corpus(
        CorpusSpec(n_threads=args.threads, n_subreddits=4), args.seed, args.out / "dump"
    )
    print(f"generated {counts.total_lines} dump lines")

    stats = IngestStats()
    threads = list(ingest_forum_dump_files(subs, coms, stats=stats))
    print(f"ingested {stats.threads_emitted} threads ({stats.malformed_lines} malformed lines)")

    config = PipelineConfig(batch_size=100, concurrency=4)
    cache = DiskCache(args.out / "llm-cache")
    store = ReportStore(args.out / "reports")
    groups = default_groups("job security", "forum")

    def one_pass(label):
        port = deterministic_port(fabricate_every=args.fabricate_every)
        t0 = time.perf_counter()
        report, artifacts, extraction = run_forum_pipeline(
            threads, "the economic impact of AI", "job security", groups, port, config,
            run_id="demo", source="synthetic", report_seed=args.seed,
            cache=cache, report_store=store,
        )
        dt = time.perf_counter() - t0
        print(
            f"{label}: {len(extraction.quotes)} quotes "
            f"({len(extraction.quarantined)} quarantined), "
            f"{port.call_count()} LLM calls, {dt:.1f}s"
        )
        return report, artifacts, extraction

    report1, artifacts, extraction = one_pass("first pass")
    report2, _, _ = one_pass("second pass")
    assert serialize(report1) == serialize(report2), "reports must be byte-identical"
    print("second pass reused the cache; reports are byte-identical")

    write_quote_store(artifacts.quotes, args.out / "quotes.ndjson")
    write_quote_store(extraction.quarantined, args.out / "quarantine.ndjson")
    (args.out / "report.md").write_text(render_markdown(report1), encoding="utf-8")
    print(f"report written to {args.out / 'report.md'}")


if __name__ == "__main__":
    main()
