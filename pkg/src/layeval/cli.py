"""Command-line entry point: score, select, rank-examples, build-prompt, presets.

Every command is deterministic for identical inputs: no wall clock, no
randomness, outputs sorted by (document_id, candidate_id) before writing.
Exit codes: 0 success, 1 validation error, 2 transport/scorer error, 3 I/O.
"""

from __future__ import annotations

import argparse
import dataclasses
import hashlib
import json
import logging
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from . import __version__, corpus as corpus_io, fewshot, prompts, selection
from .errors import (
    InvalidPoolError,
    LayevalError,
    MissingFieldError,
    ProtocolError,
    TransportError,
)
from .plugin import ScoreRequest, ScorerRegistry, score_batch
from .readability import load_familiar_words, readability_all
from .rouge import score_rouge

log = logging.getLogger("layeval")

SCHEMA_VERSION = 1
REGISTRY_ENV_VAR = "LAYEVAL_REGISTRY"


def _config_digest(args):
    # jobs is an execution knob, not a semantic input: outputs are identical
    # at any parallelism, so it stays out of the digest
    relevant = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "jobs")}
    blob = json.dumps(relevant, sort_keys=True, default=str).encode("utf-8")
    return hashlib.sha256(blob).hexdigest()[:16]


def _header(args):
    return {
        "schema_version": SCHEMA_VERSION,
        "tool_version": __version__,
        "effective_config_digest": _config_digest(args),
    }


def _load_registry(args):
    path = args.registry or os.environ.get(REGISTRY_ENV_VAR)
    if not path:
        return ScorerRegistry([])
    return ScorerRegistry.from_file(path)


def _score_document(doc, cands, endpoints, familiar, stemming):
    records = []
    factuality_by_cand = {c.candidate_id: {} for c in cands}
    for endpoint in endpoints:
        requests = [
            ScoreRequest(
                request_id=c.candidate_id,
                candidate=c.text,
                source=doc.abstract,
                reference=doc.lay_summary,
            )
            for c in cands
        ]
        for resp in score_batch(endpoint, requests):
            if not resp.ok:
                raise ProtocolError(
                    f"scorer {endpoint.name} failed on {doc.id}/{resp.request_id}: {resp.error}"
                )
            factuality_by_cand[resp.request_id][endpoint.name] = resp.score

    for c in cands:
        scores = readability_all(c.text, familiar)
        record = {
            "document_id": doc.id,
            "candidate_id": c.candidate_id,
            "strategy": c.strategy,
            "readability": {"fkgl": scores.fkgl, "dcrs": scores.dcrs, "cli": scores.cli},
            "factuality": factuality_by_cand[c.candidate_id],
        }
        if doc.lay_summary:
            rs = score_rouge(c.text, doc.lay_summary, stemming=stemming)
            record["relevance"] = {
                "rouge1": rs.r1._asdict(),
                "rouge2": rs.r2._asdict(),
                "rougeL": rs.rl._asdict(),
            }
        records.append(record)
    return records


def _compute_metric_records(args):
    docs = corpus_io.load_corpus(args.corpus, dataset=args.dataset, strict=not args.lenient)
    cands = corpus_io.load_candidates(args.candidates, strict=not args.lenient)
    groups = corpus_io.group_candidates(cands)
    by_id = {d.id: d for d in docs}
    unknown = sorted(set(groups) - set(by_id))
    if unknown:
        raise LayevalError(f"candidates reference unknown documents: {', '.join(unknown)}")
    familiar = load_familiar_words(args.familiar_words)

    endpoints = list(_load_registry(args))
    if args.skip_missing:
        # Probe each scorer once; drop unreachable ones with a warning.
        usable = []
        for ep in endpoints:
            try:
                score_batch(ep, [ScoreRequest(request_id="probe", candidate="probe", source="probe", reference="probe")])
                usable.append(ep)
            except TransportError as exc:
                log.warning("dropping unreachable scorer %s: %s", ep.name, exc)
        endpoints = usable

    doc_ids = sorted(groups)
    stemming = getattr(args, "stemming", False)

    def work(doc_id):
        return _score_document(by_id[doc_id], groups[doc_id], endpoints, familiar, stemming)

    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            per_doc = list(pool.map(work, doc_ids))
    else:
        per_doc = [work(d) for d in doc_ids]

    records = [r for chunk in per_doc for r in chunk]
    records.sort(key=lambda r: (r["document_id"], r["candidate_id"]))
    return records


def cmd_score(args):
    records = _compute_metric_records(args)
    corpus_io.save_results(records, args.out, header=_header(args))
    print(f"score: wrote {len(records)} metric record(s) to {args.out}")
    return 0


def _selection_config(args):
    if args.preset:
        return selection.selection_presets()[args.preset]
    if args.w_readability is None or args.w_factuality is None:
        raise LayevalError("give either --preset or both --w-readability and --w-factuality")
    return selection.SelectionConfig(
        w_readability=args.w_readability, w_factuality=args.w_factuality
    )


def cmd_select(args):
    if args.metrics:
        _, metric_records = corpus_io.load_results(args.metrics)
    else:
        if not (args.corpus and args.candidates):
            raise LayevalError("select needs --metrics or --corpus plus --candidates")
        metric_records = _compute_metric_records(args)

    config = _selection_config(args)
    pools = {}
    strategy_of = {}
    for r in metric_records:
        pools.setdefault(r["document_id"], []).append(
            selection.MetricVector(
                candidate_id=r["candidate_id"],
                readability=r["readability"],
                factuality=r["factuality"],
            )
        )
        strategy_of[(r["document_id"], r["candidate_id"])] = r.get("strategy", "")

    records = []
    wins = {}
    for doc_id in sorted(pools):
        try:
            result = selection.select(pools[doc_id], config)
        except InvalidPoolError as exc:
            raise InvalidPoolError(f"document {doc_id}: {exc}")
        if len(pools[doc_id]) == 1:
            log.info("document %s has a single candidate (trivial pool)", doc_id)
        chosen_strategy = strategy_of[(doc_id, result.chosen_candidate_id)]
        wins[chosen_strategy] = wins.get(chosen_strategy, 0) + 1
        records.append(
            {
                "document_id": doc_id,
                "chosen_candidate_id": result.chosen_candidate_id,
                "candidates": [
                    {
                        "candidate_id": s.candidate_id,
                        "strategy": strategy_of[(doc_id, s.candidate_id)],
                        "normalized_readability": s.norm_readability,
                        "normalized_factuality": s.norm_factuality,
                        "readability_mean": s.readability_mean,
                        "factuality_mean": s.factuality_mean,
                        "overall_score": s.overall,
                        "chosen": s.candidate_id == result.chosen_candidate_id,
                    }
                    for s in result.per_candidate
                ],
            }
        )

    corpus_io.save_results(records, args.out, header=_header(args))
    summary = ", ".join(f"{name or '(unlabeled)'}={count}" for name, count in sorted(wins.items()))
    print(f"select: {len(records)} document(s); wins by strategy: {summary}")
    return 0


def cmd_rank_examples(args):
    docs = corpus_io.load_corpus(args.corpus, dataset=args.dataset, strict=not args.lenient)
    entries = []
    for doc in docs:
        if not doc.lay_summary:
            raise MissingFieldError("lay_summary", f"document {doc.id} has no lay_summary")
        source = doc.article if args.source_field == "article" and doc.article else doc.abstract
        entries.append((doc.id, doc.lay_summary, source))

    endpoints = list(_load_registry(args))
    familiar = load_familiar_words(args.familiar_words)
    ranked = fewshot.rank_examples(
        entries, endpoints, familiar, grouped_mean=args.grouped_mean
    )

    if args.preset:
        k = fewshot.FEWSHOT_K[args.preset]
    else:
        k = args.k or min(len(ranked), 3)
    config = fewshot.FewShotConfig(k=k, dataset=args.preset or "")
    chosen = fewshot.top_k(ranked, config)

    records = [
        {"document_id": r.document_id, "rank": r.rank, "rank_score": r.rank_score}
        for r in ranked
    ]
    records.append({"top_k": chosen, "k": k})
    corpus_io.save_results(records, args.out, header=_header(args))
    print(f"rank-examples: ranked {len(ranked)} example(s); top-{k}: {', '.join(chosen)}")
    return 0


def cmd_build_prompt(args):
    docs = corpus_io.load_corpus(args.corpus, dataset=args.dataset, strict=not args.lenient)
    template = prompts.load_template(args.template, path=args.template_file)

    if args.few_shot:
        if not args.ranking:
            raise LayevalError("--few-shot needs --ranking (output of rank-examples)")
        if args.k_from_preset:
            k = fewshot.FEWSHOT_K[args.k_from_preset]
        elif args.k:
            k = args.k
        else:
            raise LayevalError("--few-shot needs --k or --k-from-preset")
        _, ranking_records = corpus_io.load_results(args.ranking)
        ranked_ids = [r["document_id"] for r in ranking_records if "document_id" in r]
        if k > len(ranked_ids):
            raise LayevalError(f"k={k} exceeds ranking size {len(ranked_ids)}")
        exemplar_source = args.exemplar_corpus or args.corpus
        exemplar_docs = {
            d.id: d
            for d in corpus_io.load_corpus(exemplar_source, dataset=args.dataset, strict=not args.lenient)
        }
        exemplars = []
        for doc_id in ranked_ids[:k]:
            doc = exemplar_docs.get(doc_id)
            if doc is None or not doc.lay_summary:
                raise MissingFieldError("lay_summary", f"exemplar {doc_id} unavailable")
            exemplars.append((doc, doc.lay_summary))
        fmt = prompts.load_chat_formats(args.chat_formats_file)[args.chat_format]

    records = []
    for doc in sorted(docs, key=lambda d: d.id):
        try:
            if args.few_shot:
                text = prompts.assemble_fewshot(template, exemplars, doc, fmt)
            else:
                text = prompts.render(template, doc)
        except MissingFieldError as exc:
            raise MissingFieldError(exc.field, f"document {doc.id}: {exc}")
        records.append({"document_id": doc.id, "prompt_text": text})

    corpus_io.save_results(records, args.out, header=_header(args))
    print(f"build-prompt: wrote {len(records)} prompt(s) to {args.out}")
    return 0


def cmd_presets(args):
    out = {
        "selection": {
            name: dataclasses.asdict(cfg) for name, cfg in selection.selection_presets().items()
        },
        "fewshot_k": fewshot.FEWSHOT_K,
        "inference": {
            name: dataclasses.asdict(p) for name, p in prompts.inference_presets().items()
        },
    }
    print(json.dumps(out, indent=2, sort_keys=True))
    return 0


def _add_common(p):
    p.add_argument("--dataset", choices=["elife", "plos"], default=None)
    p.add_argument("--registry", default=None, help="scorer registry JSON (or $LAYEVAL_REGISTRY)")
    p.add_argument("--familiar-words", default=None, help="familiar-word list file")
    p.add_argument("--jobs", type=int, default=1, help="document-level worker count")
    p.add_argument("--lenient", action="store_true", help="skip malformed input lines")
    p.add_argument("--skip-missing", action="store_true", help="drop unreachable scorers")


def build_parser():
    parser = argparse.ArgumentParser(prog="layeval")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("score", help="compute metric vectors for candidate summaries")
    p.add_argument("--corpus", required=True)
    p.add_argument("--candidates", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--stemming", action="store_true", help="Porter-stem ROUGE tokens")
    _add_common(p)
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("select", help="pick the best candidate per document")
    p.add_argument("--metrics", default=None, help="metric records from `score`")
    p.add_argument("--corpus", default=None)
    p.add_argument("--candidates", default=None)
    p.add_argument("--out", required=True)
    p.add_argument("--preset", choices=["elife", "plos"], default=None)
    p.add_argument("--w-readability", type=float, default=None)
    p.add_argument("--w-factuality", type=float, default=None)
    _add_common(p)
    p.set_defaults(func=cmd_select)

    p = sub.add_parser("rank-examples", help="rank corpus examples for few-shot prompting")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--preset", choices=["elife", "plos"], default=None)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--grouped-mean", action="store_true", help="(R+F)/2 instead of flat mean")
    p.add_argument("--source-field", choices=["abstract", "article"], default="abstract")
    _add_common(p)
    p.set_defaults(func=cmd_rank_examples)

    p = sub.add_parser("build-prompt", help="render prompts / few-shot conversations")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--template", required=True, choices=list(prompts.TEMPLATE_NAMES))
    p.add_argument("--template-file", default=None, help="override the bundled template body")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--zero-shot", action="store_true", default=True)
    mode.add_argument("--few-shot", action="store_true", default=False)
    p.add_argument("--ranking", default=None, help="ranking file from rank-examples")
    p.add_argument("--k-from-preset", choices=["elife", "plos"], default=None)
    p.add_argument("--exemplar-corpus", default=None)
    p.add_argument("--chat-format", default="plain")
    p.add_argument("--chat-formats-file", default=None)
    _add_common(p)
    p.set_defaults(func=cmd_build_prompt)

    p = sub.add_parser("presets", help="print all built-in presets as JSON")
    p.set_defaults(func=cmd_presets)

    return parser


def main(argv=None):
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (TransportError, ProtocolError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return 2
    except LayevalError as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return 1
    except OSError as exc:
        print(json.dumps({"error": "IoError", "message": str(exc)}), file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
