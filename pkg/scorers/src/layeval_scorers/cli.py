"""Entry point: serve one scorer over stdio (default) or HTTP.

HTTP mode accepts POST requests whose body is NDJSON request lines and
answers with NDJSON response lines — the same wire format as stdio.
"""

from __future__ import annotations

import argparse
import json
import sys
from http.server import BaseHTTPRequestHandler, HTTPServer

from .backends import load_backend
from .config import SCORER_SPECS, AdapterConfig
from .protocol import handle_lines, serve_stdio


def build_parser():
    parser = argparse.ArgumentParser(prog="layeval-scorer")
    parser.add_argument("--scorer", required=True, choices=sorted(SCORER_SPECS))
    parser.add_argument("--checkpoint", default=None, help="model checkpoint override")
    parser.add_argument("--device", default="cpu")
    parser.add_argument("--batch-size", type=int, default=8)
    parser.add_argument(
        "--dry-run",
        action="store_true",
        help="echo mode: deterministic scores, no model loaded",
    )
    parser.add_argument(
        "--http",
        type=int,
        metavar="PORT",
        default=None,
        help="serve over HTTP on this port instead of stdio",
    )
    return parser


def _http_server(config, score_fn, port):
    class Handler(BaseHTTPRequestHandler):
        def do_POST(self):
            length = int(self.headers.get("Content-Length", 0))
            body = self.rfile.read(length).decode("utf-8")
            # body is either a JSON array of requests or NDJSON lines;
            # the response is always a JSON array
            try:
                parsed = json.loads(body)
            except json.JSONDecodeError:
                parsed = None
            if isinstance(parsed, list):
                lines = [json.dumps(item, ensure_ascii=False) for item in parsed]
            else:
                lines = body.splitlines()
            out = json.dumps(
                list(handle_lines(lines, config, score_fn)), ensure_ascii=False
            ).encode("utf-8")
            self.send_response(200)
            self.send_header("Content-Type", "application/json")
            self.send_header("Content-Length", str(len(out)))
            self.end_headers()
            self.wfile.write(out)

        def log_message(self, fmt, *args):
            print(f"layeval-scorer: {fmt % args}", file=sys.stderr)

    return HTTPServer(("127.0.0.1", port), Handler)


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        config = AdapterConfig(
            scorer=args.scorer,
            checkpoint=args.checkpoint,
            device=args.device,
            batch_size=args.batch_size,
            dry_run=args.dry_run,
        )
        score_fn = load_backend(config)
    except Exception as exc:  # includes BackendUnavailableError and bad config
        # model-load failure is a startup error: complain once and exit nonzero
        print(f"layeval-scorer: startup failed: {exc}", file=sys.stderr)
        return 1

    if args.http is not None:
        server = _http_server(config, score_fn, args.http)
        print(f"layeval-scorer: {config.scorer} listening on {server.server_address}", file=sys.stderr)
        try:
            server.serve_forever()
        except KeyboardInterrupt:
            pass
        finally:
            server.server_close()
        return 0

    serve_stdio(config, score_fn, sys.stdin, sys.stdout)
    return 0


if __name__ == "__main__":
    sys.exit(main())
