"""JSONL ingestion and persistence for corpora, candidates and results.

Two corpus layouts are accepted per line: explicit fields
(``{"id", "abstract", "introduction", ...}``) or the section-delimited layout
(``{"id", "article", "headings", ...}``) where the article body splits into
sections aligned 1:1 with the headings; the first section is the abstract and
the second the introduction.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from typing import Optional

from .errors import (
    DuplicateIdError,
    MalformedRecordError,
    MissingAbstractError,
)

log = logging.getLogger(__name__)

DEFAULT_SECTION_DELIMITER = "\n"


@dataclass(frozen=True)
class Document:
    id: str
    abstract: str
    introduction: Optional[str] = None
    article: Optional[str] = None
    lay_summary: Optional[str] = None
    headings: Optional[tuple] = None
    keywords: Optional[tuple] = None
    dataset: Optional[str] = None


@dataclass(frozen=True)
class CandidateSummary:
    document_id: str
    candidate_id: str
    strategy: str
    text: str


def _iter_jsonl(path):
    with open(path, encoding="utf-8") as f:
        for line_no, line in enumerate(f, start=1):
            line = line.strip()
            if not line:
                continue
            yield line_no, line


def _parse_document(line_no, line, dataset, section_delimiter):
    try:
        record = json.loads(line)
    except json.JSONDecodeError as exc:
        raise MalformedRecordError(line_no, f"invalid JSON: {exc}")
    if not isinstance(record, dict):
        raise MalformedRecordError(line_no, "record is not a JSON object")
    doc_id = record.get("id")
    if not doc_id:
        raise MalformedRecordError(line_no, "record has no id")
    doc_id = str(doc_id)

    abstract = record.get("abstract")
    introduction = record.get("introduction")
    article = record.get("article")
    headings = record.get("headings")

    if abstract is None and article and headings:
        sections = article.split(section_delimiter)
        if sections:
            abstract = sections[0]
        if introduction is None and len(sections) > 1:
            introduction = sections[1]
    if not abstract:
        raise MissingAbstractError(line_no, f"document {doc_id} has no abstract")

    return Document(
        id=doc_id,
        abstract=abstract,
        introduction=introduction or None,
        article=article or None,
        lay_summary=record.get("lay_summary") or None,
        headings=tuple(headings) if headings else None,
        keywords=tuple(record["keywords"]) if record.get("keywords") else None,
        dataset=record.get("dataset") or dataset,
    )


def load_corpus(
    path,
    dataset: Optional[str] = None,
    *,
    strict: bool = True,
    section_delimiter: str = DEFAULT_SECTION_DELIMITER,
) -> list:
    """Load and validate documents from a JSONL file.

    In strict mode the first bad line aborts the whole load; in lenient mode
    bad lines are skipped with a logged warning count.
    """
    docs = []
    seen = set()
    skipped = 0
    for line_no, line in _iter_jsonl(path):
        try:
            doc = _parse_document(line_no, line, dataset, section_delimiter)
            if doc.id in seen:
                raise DuplicateIdError(line_no, f"duplicate document id {doc.id}")
        except MalformedRecordError:
            if strict:
                raise
            skipped += 1
            continue
        seen.add(doc.id)
        docs.append(doc)
    if skipped:
        log.warning("load_corpus: skipped %d malformed line(s) in %s", skipped, path)
    return docs


def load_candidates(path, *, strict: bool = True) -> list:
    """Load candidate summaries ({document_id, candidate_id, strategy, text})."""
    candidates = []
    seen = set()
    skipped = 0
    for line_no, line in _iter_jsonl(path):
        try:
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise MalformedRecordError(line_no, f"invalid JSON: {exc}")
            if not isinstance(record, dict):
                raise MalformedRecordError(line_no, "record is not a JSON object")
            missing = [k for k in ("document_id", "candidate_id", "text") if not record.get(k)]
            if missing:
                raise MalformedRecordError(line_no, f"missing/empty fields: {', '.join(missing)}")
            key = (record["document_id"], record["candidate_id"])
            if key in seen:
                raise DuplicateIdError(line_no, f"duplicate candidate {key}")
        except MalformedRecordError:
            if strict:
                raise
            skipped += 1
            continue
        seen.add(key)
        candidates.append(
            CandidateSummary(
                document_id=str(record["document_id"]),
                candidate_id=str(record["candidate_id"]),
                strategy=str(record.get("strategy", "")),
                text=record["text"],
            )
        )
    if skipped:
        log.warning("load_candidates: skipped %d malformed line(s) in %s", skipped, path)
    return candidates


def save_candidates(candidates, path):
    with open(path, "w", encoding="utf-8") as f:
        for c in candidates:
            f.write(
                json.dumps(
                    {
                        "document_id": c.document_id,
                        "candidate_id": c.candidate_id,
                        "strategy": c.strategy,
                        "text": c.text,
                    },
                    ensure_ascii=False,
                )
                + "\n"
            )


def group_candidates(candidates) -> dict:
    """document_id -> candidates, preserving file order within each group."""
    groups = {}
    for c in candidates:
        groups.setdefault(c.document_id, []).append(c)
    return groups


def save_results(records, path, header: Optional[dict] = None):
    """Write result records as JSONL with a stable field order.

    ``records`` is a list of dicts (field order preserved as given); an
    optional self-describing header record becomes the first line.
    """
    with open(path, "w", encoding="utf-8") as f:
        if header is not None:
            f.write(json.dumps(header, ensure_ascii=False) + "\n")
        for record in records:
            f.write(json.dumps(record, ensure_ascii=False) + "\n")


def load_results(path):
    """Inverse of save_results; returns (header_or_None, records)."""
    header = None
    records = []
    for line_no, line in _iter_jsonl(path):
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise MalformedRecordError(line_no, f"invalid JSON: {exc}")
        if line_no == 1 and isinstance(obj, dict) and "schema_version" in obj:
            header = obj
        else:
            records.append(obj)
    return header, records
