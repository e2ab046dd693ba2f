"""NDJSON request loop shared by the stdio and HTTP transports.

Requests: ``{"id", "candidate", "source"?, "reference"?}`` per line.
Responses: ``{"id", "score"}`` (plus ``"warning"`` if the raw score was
clipped into the declared range) or ``{"id", "error"}``. A line that cannot
be parsed at all yields an error response with id ``"unknown"`` and the loop
keeps running: per-request trouble never kills the process.
"""

from __future__ import annotations

import json
import math


def validate_request(record, spec):
    """Return an error string, or None if the request is servable."""
    if not isinstance(record, dict):
        return "request is not a JSON object"
    if not record.get("id"):
        return "request has no id"
    if not record.get("candidate"):
        return "request has no candidate text"
    if spec.needs_source and not record.get("source"):
        return f"{spec.name} requires a source text"
    if spec.needs_reference and not record.get("reference"):
        return f"{spec.name} requires a reference text"
    return None


def finalize_score(raw, score_range):
    """Clip into the declared range; report clipping rather than hiding it."""
    lo, hi = score_range
    if not isinstance(raw, (int, float)) or not math.isfinite(raw):
        raise ValueError(f"backend produced a non-finite score: {raw!r}")
    if raw < lo or raw > hi:
        clipped = min(max(raw, lo), hi)
        return clipped, f"raw score {raw:g} outside declared range [{lo:g}, {hi:g}]; clipped"
    return float(raw), None


def handle_lines(lines, config, score_fn):
    """Yield one response dict per input line, batching backend calls.

    ``lines`` is any iterable of NDJSON strings. Responses come out in input
    order; a batch is flushed whenever ``config.batch_size`` servable requests
    accumulate (or input ends).
    """
    pending = []  # (id, request) awaiting a backend call

    def flush():
        if not pending:
            return
        ids = [rid for rid, _ in pending]
        requests = [req for _, req in pending]
        pending.clear()
        try:
            scores = score_fn(requests)
        except Exception as exc:  # backend blew up: fail the batch, stay alive
            for rid in ids:
                yield {"id": rid, "error": f"inference failed: {exc}"}
            return
        if len(scores) != len(ids):
            for rid in ids:
                yield {"id": rid, "error": "backend returned a mismatched batch"}
            return
        for rid, raw in zip(ids, scores):
            try:
                score, warning = finalize_score(raw, config.effective_range)
            except ValueError as exc:
                yield {"id": rid, "error": str(exc)}
                continue
            response = {"id": rid, "score": score}
            if warning:
                response["warning"] = warning
            yield response

    for line in lines:
        line = line.strip()
        if not line:
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            yield from flush()
            yield {"id": "unknown", "error": f"malformed request line: {exc}"}
            continue
        error = validate_request(record, config.spec)
        if error:
            yield from flush()
            rid = record.get("id", "unknown") if isinstance(record, dict) else "unknown"
            yield {"id": str(rid) if rid else "unknown", "error": error}
            continue
        pending.append((str(record["id"]), record))
        if len(pending) >= config.batch_size:
            yield from flush()
    yield from flush()


def _more_input_ready(stream):
    """Best-effort peek: is another line likely available right now?"""
    import select

    try:
        return bool(select.select([stream], [], [], 0)[0])
    except (OSError, ValueError, TypeError):
        return False


def serve_stdio(config, score_fn, stdin, stdout):
    """Blocking request loop over text streams; returns at EOF.

    Batches are opportunistic: consecutive already-buffered lines are scored
    in one backend call, but responses are flushed as soon as input pauses so
    a client that writes a partial window and waits never deadlocks.
    """

    def emit(lines):
        for response in handle_lines(lines, config, score_fn):
            stdout.write(json.dumps(response, ensure_ascii=False) + "\n")
        stdout.flush()

    window = []
    while True:
        line = stdin.readline()
        if line == "":
            if window:
                emit(window)
            return
        window.append(line)
        if len(window) >= config.batch_size or not _more_input_ready(stdin):
            emit(window)
            window = []
