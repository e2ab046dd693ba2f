#!/usr/bin/env python3
"""Tiny NDJSON scorer used by the plugin transport tests."""
import json
import sys
import time

for line in sys.stdin:
    line = line.strip()
    if not line:
        continue
    req = json.loads(line)
    rid = req.get("id", "unknown")
    candidate = req.get("candidate", "")
    if "FAIL" in candidate:
        out = {"id": rid, "error": "stub failure"}
    elif "OUTOFRANGE" in candidate:
        out = {"id": rid, "score": 2.5}
    elif "GARBAGE" in candidate:
        sys.stdout.write("not json at all\n")
        sys.stdout.flush()
        continue
    elif "SLEEP" in candidate:
        time.sleep(10)
        out = {"id": rid, "score": 0.0}
    else:
        out = {"id": rid, "score": min(len(candidate) / 100.0, 1.0)}
    sys.stdout.write(json.dumps(out) + "\n")
    sys.stdout.flush()
