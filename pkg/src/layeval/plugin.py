"""Client for external scorer processes/services (AlignScore, SummaC, ...).

Wire protocol: UTF-8 newline-delimited JSON. Requests carry
``{"id", "candidate", "source", "reference"}``; responses carry
``{"id", "score"}`` or ``{"id", "error"}``. Subprocess endpoints speak the
protocol over stdin/stdout; HTTP endpoints accept a POSTed JSON array and
return one. A set of deterministic in-process mock scorers backs the tests.
"""

from __future__ import annotations

import json
import math
import queue
import shlex
import subprocess
import threading
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

import requests

from .errors import (
    InvalidParameterError,
    ProtocolError,
    ScorerTimeoutError,
    TransportError,
)

DEFAULT_BATCH_WINDOW = 8


@dataclass(frozen=True)
class ScorerEndpoint:
    name: str
    transport: str  # "subprocess", "http" or "inline"
    address: str = ""
    timeout: float = 60.0
    needs_source: bool = False
    needs_reference: bool = False
    score_range: Optional[tuple] = None  # declared (lo, hi), enforced
    fn: Optional[Callable] = field(default=None, compare=False)  # inline only

    def __post_init__(self):
        if not self.name:
            raise InvalidParameterError("endpoint name must be non-empty")
        if self.transport not in ("subprocess", "http", "inline"):
            raise InvalidParameterError(f"unknown transport: {self.transport}")


@dataclass(frozen=True)
class ScoreRequest:
    request_id: str
    candidate: str
    source: Optional[str] = None
    reference: Optional[str] = None


@dataclass(frozen=True)
class ScoreResponse:
    request_id: str
    score: Optional[float] = None
    error: Optional[str] = None

    @property
    def ok(self):
        return self.error is None


def _validate_requests(endpoint, requests_):
    ids = set()
    for req in requests_:
        if not req.candidate:
            raise InvalidParameterError(f"request {req.request_id}: empty candidate")
        if endpoint.needs_source and req.source is None:
            raise InvalidParameterError(
                f"request {req.request_id}: scorer {endpoint.name} needs a source text"
            )
        if endpoint.needs_reference and req.reference is None:
            raise InvalidParameterError(
                f"request {req.request_id}: scorer {endpoint.name} needs a reference text"
            )
        if req.request_id in ids:
            raise InvalidParameterError(f"duplicate request id: {req.request_id}")
        ids.add(req.request_id)


def _request_payload(endpoint, req):
    payload = {"id": req.request_id, "candidate": req.candidate}
    # Only the inputs the scorer declared are sent.
    if endpoint.needs_source:
        payload["source"] = req.source
    if endpoint.needs_reference:
        payload["reference"] = req.reference
    return payload


def _parse_response(endpoint, obj):
    if not isinstance(obj, dict) or "id" not in obj:
        raise ProtocolError(f"{endpoint.name}: response object lacks an id: {obj!r}")
    rid = str(obj["id"])
    if "error" in obj and obj["error"] is not None:
        return ScoreResponse(request_id=rid, error=str(obj["error"]))
    if "score" not in obj:
        raise ProtocolError(f"{endpoint.name}: response {rid} has neither score nor error")
    try:
        score = float(obj["score"])
    except (TypeError, ValueError):
        raise ProtocolError(f"{endpoint.name}: non-numeric score in response {rid}")
    if not math.isfinite(score):
        raise ProtocolError(f"{endpoint.name}: non-finite score in response {rid}")
    if endpoint.score_range is not None:
        lo, hi = endpoint.score_range
        if not (lo <= score <= hi):
            raise ProtocolError(
                f"{endpoint.name}: score {score} outside declared range [{lo}, {hi}]"
            )
    return ScoreResponse(request_id=rid, score=score)


def _match_order(requests_, by_id, endpoint):
    out = []
    for req in requests_:
        if req.request_id not in by_id:
            raise ProtocolError(f"{endpoint.name}: no response for request {req.request_id}")
        out.append(by_id[req.request_id])
    return out


def _score_inline(endpoint, requests_):
    responses = []
    for req in requests_:
        try:
            raw = endpoint.fn(req)
        except Exception as exc:  # mock formulas may reject inputs
            responses.append(ScoreResponse(request_id=req.request_id, error=str(exc)))
            continue
        responses.append(_parse_response(endpoint, {"id": req.request_id, "score": raw}))
    return responses


def _score_subprocess(endpoint, requests_, batch_window):
    cmd = shlex.split(endpoint.address)
    try:
        proc = subprocess.Popen(
            cmd,
            stdin=subprocess.PIPE,
            stdout=subprocess.PIPE,
            stderr=None,  # diagnostics pass through
            text=True,
            encoding="utf-8",
        )
    except OSError as exc:
        raise TransportError(f"{endpoint.name}: cannot start {endpoint.address!r}: {exc}")

    # Blocking pipe reads cannot be timed out directly; a reader thread
    # feeds lines (or EOF) into a queue polled with a deadline.
    lines = queue.Queue()

    def _reader():
        for line in proc.stdout:
            lines.put(line)
        lines.put(None)

    reader = threading.Thread(target=_reader, daemon=True)
    reader.start()

    responses = {}
    deadline = time.monotonic() + endpoint.timeout
    try:
        for start in range(0, len(requests_), batch_window):
            window = requests_[start : start + batch_window]
            try:
                for req in window:
                    proc.stdin.write(json.dumps(_request_payload(endpoint, req)) + "\n")
                proc.stdin.flush()
            except (BrokenPipeError, OSError):
                raise TransportError(f"{endpoint.name}: scorer process died")
            for _ in window:
                try:
                    line = lines.get(timeout=max(deadline - time.monotonic(), 0.001))
                except queue.Empty:
                    raise ScorerTimeoutError(f"{endpoint.name}: no response within timeout")
                if line is None:
                    raise TransportError(f"{endpoint.name}: scorer process closed its output")
                try:
                    obj = json.loads(line)
                except json.JSONDecodeError:
                    raise ProtocolError(f"{endpoint.name}: malformed response line: {line!r}")
                resp = _parse_response(endpoint, obj)
                responses[resp.request_id] = resp
    finally:
        try:
            proc.stdin.close()
        except OSError:
            pass
        try:
            proc.wait(timeout=5)
        except subprocess.TimeoutExpired:
            proc.kill()
            proc.wait()
        reader.join(timeout=5)
    return _match_order(requests_, responses, endpoint)


def _score_http(endpoint, requests_, batch_window):
    responses = {}
    for start in range(0, len(requests_), batch_window):
        window = requests_[start : start + batch_window]
        payload = [_request_payload(endpoint, r) for r in window]
        try:
            resp = requests.post(endpoint.address, json=payload, timeout=endpoint.timeout)
        except requests.Timeout:
            raise ScorerTimeoutError(f"{endpoint.name}: HTTP request timed out")
        except requests.RequestException as exc:
            raise TransportError(f"{endpoint.name}: {exc}")
        if resp.status_code != 200:
            raise TransportError(f"{endpoint.name}: HTTP {resp.status_code}")
        try:
            objs = resp.json()
        except ValueError:
            raise ProtocolError(f"{endpoint.name}: response body is not JSON")
        if not isinstance(objs, list):
            raise ProtocolError(f"{endpoint.name}: expected a JSON array response")
        for obj in objs:
            parsed = _parse_response(endpoint, obj)
            responses[parsed.request_id] = parsed
    return _match_order(requests_, responses, endpoint)


def score_batch(endpoint: ScorerEndpoint, requests_: list, batch_window: int = DEFAULT_BATCH_WINDOW) -> list:
    """Score a batch, returning one response per request in request order.

    Per-request scorer failures come back in the ``error`` field; transport
    failures (dead process, refused connection, timeout) raise and fail the
    whole batch.
    """
    if batch_window < 1:
        raise InvalidParameterError("batch_window must be >= 1")
    requests_ = list(requests_)
    _validate_requests(endpoint, requests_)
    if not requests_:
        return []
    if endpoint.transport == "inline":
        return _score_inline(endpoint, requests_)
    if endpoint.transport == "subprocess":
        return _score_subprocess(endpoint, requests_, batch_window)
    return _score_http(endpoint, requests_, batch_window)


# --- deterministic mock scorers -------------------------------------------

def _mock_constant(value):
    def fn(req):
        return value

    return fn


def _mock_length_ratio(req):
    # candidate word count over source word count, clamped to [0, 1]
    cand = len(req.candidate.split())
    src = len((req.source or "").split())
    if src == 0:
        return 0.0
    return min(cand / src, 1.0)


def _mock_token_overlap(req):
    cand = set(req.candidate.lower().split())
    src = set((req.source or "").lower().split())
    if not cand:
        return 0.0
    return len(cand & src) / len(cand)


def mock_scorer(spec: str, name: Optional[str] = None) -> ScorerEndpoint:
    """In-process endpoint with exactly reproducible scores.

    ``spec`` is "constant:<x>", "length-ratio" or "token-overlap".
    """
    if spec.startswith("constant:"):
        try:
            value = float(spec.split(":", 1)[1])
        except ValueError:
            raise InvalidParameterError(f"bad constant spec: {spec!r}")
        fn, needs_source = _mock_constant(value), False
    elif spec == "length-ratio":
        fn, needs_source = _mock_length_ratio, True
    elif spec == "token-overlap":
        fn, needs_source = _mock_token_overlap, True
    else:
        raise InvalidParameterError(f"unknown mock scorer spec: {spec!r}")
    return ScorerEndpoint(
        name=name or f"mock-{spec.split(':', 1)[0]}",
        transport="inline",
        address=spec,
        needs_source=needs_source,
        score_range=(0.0, 1.0),
        fn=fn,
    )


class ScorerRegistry:
    """Immutable name -> endpoint mapping used to configure a run."""

    def __init__(self, endpoints):
        self._by_name = {}
        for ep in endpoints:
            if ep.name in self._by_name:
                raise InvalidParameterError(f"duplicate scorer name: {ep.name}")
            self._by_name[ep.name] = ep

    def __iter__(self):
        return iter(self._by_name.values())

    def __len__(self):
        return len(self._by_name)

    def names(self):
        return list(self._by_name)

    def get(self, name):
        if name not in self._by_name:
            raise InvalidParameterError(f"no scorer named {name!r}")
        return self._by_name[name]

    @classmethod
    def from_config(cls, config: dict) -> "ScorerRegistry":
        """Build a registry from a parsed JSON config ({"scorers": [...]})."""
        endpoints = []
        for entry in config.get("scorers", []):
            transport = entry.get("transport", "subprocess")
            if transport == "mock":
                ep = mock_scorer(entry["address"], name=entry.get("name"))
            else:
                rng = entry.get("range")
                ep = ScorerEndpoint(
                    name=entry["name"],
                    transport=transport,
                    address=entry.get("address", ""),
                    timeout=float(entry.get("timeout", 60.0)),
                    needs_source=bool(entry.get("needs_source", False)),
                    needs_reference=bool(entry.get("needs_reference", False)),
                    score_range=tuple(rng) if rng else None,
                )
            endpoints.append(ep)
        return cls(endpoints)

    @classmethod
    def from_file(cls, path) -> "ScorerRegistry":
        with open(path, encoding="utf-8") as f:
            return cls.from_config(json.load(f))
