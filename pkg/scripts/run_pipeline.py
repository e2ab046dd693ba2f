#!/usr/bin/env python3
"""End-to-end demo on the bundled test fixtures.

Scores the 5-document / 20-candidate fixture corpus with mock scorers, runs
candidate selection under both presets, ranks the corpus for few-shot
prompting, and renders a few-shot conversation — all into an output directory.

Usage:
    python scripts/run_pipeline.py [outdir]
"""

import pathlib
import sys

from layeval.cli import main

ROOT = pathlib.Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "tests" / "fixtures"


def run(argv):
    print("+ layeval " + " ".join(argv))
    code = main(argv)
    if code != 0:
        sys.exit(code)


if __name__ == "__main__":
    outdir = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "pipeline_out")
    outdir.mkdir(parents=True, exist_ok=True)
    corpus = str(FIXTURES / "corpus.jsonl")
    candidates = str(FIXTURES / "candidates.jsonl")
    registry = str(FIXTURES / "registry_mock.json")

    metrics = str(outdir / "metrics.jsonl")
    run(["score", "--corpus", corpus, "--candidates", candidates,
         "--registry", registry, "--out", metrics])

    for preset in ("elife", "plos"):
        run(["select", "--metrics", metrics, "--preset", preset,
             "--out", str(outdir / f"selected_{preset}.jsonl")])

    ranking = str(outdir / "ranking.jsonl")
    run(["rank-examples", "--corpus", corpus, "--registry", registry,
         "--preset", "elife", "--out", ranking])

    run(["build-prompt", "--corpus", corpus, "--template", "initial",
         "--few-shot", "--ranking", ranking, "--k-from-preset", "elife",
         "--chat-format", "plain", "--out", str(outdir / "prompts_fewshot.jsonl")])

    run(["build-prompt", "--corpus", corpus, "--template", "guide",
         "--out", str(outdir / "prompts_zeroshot.jsonl")])

    print(f"done; outputs in {outdir}/")
