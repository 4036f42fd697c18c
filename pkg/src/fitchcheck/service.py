"""Stateless HTTP JSON service (schema v1).

Endpoints::

    POST /v1/parse         {"version":"v1","formula": "..."} → AST
    POST /v1/check         {"version":"v1","document": {...} | "text": "...",
                            "config": {"strict": bool}?, "max_domain": N?}
    POST /v1/countermodel  {"version":"v1","premises": [...], "conclusion": "...",
                            "max_domain": N?}
    GET  /v1/examples      corpus index
    GET  /v1/examples/{id} one example, as text and document JSON

A rejected proof is a successful check: diagnostics ride inside a 200
response.  HTTP errors are reserved for malformed bodies (400), an unknown
route (404), an oversized body (413), and a blown enumeration cap (422).
CORS is wide open so the editor can run from any static host.
"""

from __future__ import annotations

import json
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from typing import Optional

from .checker import CheckConfig, check_proof
from .corpus import example_text, list_examples
from .jsonio import (
    WireFormatError, document_from_json, document_to_json, dumps,
    formula_to_json, report_to_json, verdict_to_json,
)
from .parser import ParseError, parse_formula
from .proofdoc import ProofParseError, format_proof, parse_proof
from .semantics import DEFAULT_MAX_STRUCTURES, ResourceError, entails

MAX_BODY = 1 << 20          # 1 MB
MAX_DOMAIN_LIMIT = 6        # request-supplied bounds are clamped to keep the service snappy


class _HttpError(Exception):
    def __init__(self, status: int, message: str, extra: Optional[dict] = None):
        super().__init__(message)
        self.status = status
        self.payload = {"error": {"message": message, **(extra or {})}}


def _require_version(body: dict) -> None:
    if body.get("version") != "v1":
        raise _HttpError(400, f"unsupported version {body.get('version')!r}; expected 'v1'")


def _check_fields(body: dict, allowed: set[str]) -> None:
    unknown = set(body) - allowed
    if unknown:
        raise _HttpError(400, f"unknown field(s): {', '.join(sorted(unknown))}")


def handle_parse(body: dict) -> dict:
    _require_version(body)
    _check_fields(body, {"version", "formula"})
    text = body.get("formula")
    if not isinstance(text, str):
        raise _HttpError(400, "formula must be a string")
    try:
        f = parse_formula(text)
    except ParseError as e:
        raise _HttpError(400, str(e), {"offset": e.offset, "expected": list(e.expected)})
    return {"version": "v1", "ast": formula_to_json(f)}


def handle_check(body: dict, cap: int) -> dict:
    _require_version(body)
    _check_fields(body, {"version", "document", "text", "config", "max_domain"})
    if ("document" in body) == ("text" in body):
        raise _HttpError(400, "send exactly one of 'document' or 'text'")
    try:
        if "text" in body:
            if not isinstance(body["text"], str):
                raise _HttpError(400, "text must be a string")
            doc = parse_proof(body["text"])
        else:
            doc = document_from_json(body["document"])
    except ProofParseError as e:
        raise _HttpError(400, str(e), {"line": e.line, "code": e.code})
    except WireFormatError as e:
        raise _HttpError(400, str(e))

    cfg = CheckConfig()
    raw_cfg = body.get("config")
    if raw_cfg is not None:
        if not isinstance(raw_cfg, dict):
            raise _HttpError(400, "config must be an object")
        _check_fields(raw_cfg, {"strict", "alpha_matching"})
        cfg = CheckConfig(strict=bool(raw_cfg.get("strict", False)),
                          alpha_matching=bool(raw_cfg.get("alpha_matching", True)))
    report = check_proof(doc, cfg)
    out = {"version": "v1", "report": report_to_json(report)}

    max_domain = body.get("max_domain")
    if max_domain is not None:
        if not isinstance(max_domain, int) or max_domain < 1:
            raise _HttpError(400, "max_domain must be a positive integer")
        if report.accepted and report.proved is not None:
            try:
                verdict = entails(list(doc.premises), report.proved,
                                  min(max_domain, MAX_DOMAIN_LIMIT), cap=cap)
            except ResourceError as e:
                raise _HttpError(422, str(e))
            out["verdict"] = verdict_to_json(verdict)
    return out


def handle_countermodel(body: dict, cap: int) -> dict:
    _require_version(body)
    _check_fields(body, {"version", "premises", "conclusion", "max_domain"})
    raw_premises = body.get("premises", [])
    if not isinstance(raw_premises, list):
        raise _HttpError(400, "premises must be an array of formula strings")
    try:
        premises = [parse_formula(p) for p in raw_premises if isinstance(p, str)]
        if len(premises) != len(raw_premises):
            raise _HttpError(400, "premises must be an array of formula strings")
        conclusion = parse_formula(body["conclusion"]) if isinstance(
            body.get("conclusion"), str) else None
    except ParseError as e:
        raise _HttpError(400, str(e), {"offset": e.offset})
    if conclusion is None:
        raise _HttpError(400, "conclusion must be a formula string")
    max_domain = body.get("max_domain", 3)
    if not isinstance(max_domain, int) or max_domain < 1:
        raise _HttpError(400, "max_domain must be a positive integer")
    try:
        verdict = entails(premises, conclusion, min(max_domain, MAX_DOMAIN_LIMIT), cap=cap)
    except ResourceError as e:
        raise _HttpError(422, str(e))
    except ValueError as e:
        raise _HttpError(400, str(e))
    return {"version": "v1", "verdict": verdict_to_json(verdict)}


def handle_examples_index() -> dict:
    return {"version": "v1", "examples": [
        {"id": e.id, "title": e.title, "description": e.description,
         "expect": e.expect} for e in list_examples()]}


def handle_example(example_id: str) -> dict:
    try:
        text = example_text(example_id)
    except KeyError:
        raise _HttpError(404, f"no example named {example_id!r}")
    doc = parse_proof(text)
    return {"version": "v1", "id": example_id, "text": format_proof(doc),
            "document": document_to_json(doc)}


def make_server(addr: str = "127.0.0.1", port: int = 0,
                ui_dir: Optional[str] = None,
                cap: int = DEFAULT_MAX_STRUCTURES) -> ThreadingHTTPServer:
    ui_root = Path(ui_dir).resolve() if ui_dir else None

    class Handler(BaseHTTPRequestHandler):
        protocol_version = "HTTP/1.1"

        def log_message(self, fmt, *args):  # keep test output quiet
            pass

        def _send(self, status: int, payload: dict) -> None:
            raw = dumps(payload).encode("utf-8")
            self.send_response(status)
            self.send_header("Content-Type", "application/json; charset=utf-8")
            self.send_header("Content-Length", str(len(raw)))
            self._cors()
            self.end_headers()
            self.wfile.write(raw)

        def _cors(self) -> None:
            self.send_header("Access-Control-Allow-Origin", "*")
            self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
            self.send_header("Access-Control-Allow-Headers", "Content-Type")

        def _read_body(self) -> dict:
            length = int(self.headers.get("Content-Length") or 0)
            if length > MAX_BODY:
                # drain what the client is still sending (bounded), then close,
                # so the 413 lands instead of a connection reset
                self.close_connection = True
                remaining = min(length, 8 * MAX_BODY)
                while remaining > 0:
                    chunk = self.rfile.read(min(65536, remaining))
                    if not chunk:
                        break
                    remaining -= len(chunk)
                raise _HttpError(413, f"body exceeds {MAX_BODY} bytes")
            raw = self.rfile.read(length)
            try:
                body = json.loads(raw.decode("utf-8"))
            except (UnicodeDecodeError, json.JSONDecodeError) as e:
                raise _HttpError(400, f"body is not valid JSON: {e}")
            if not isinstance(body, dict):
                raise _HttpError(400, "body must be a JSON object")
            return body

        def do_OPTIONS(self):
            self.send_response(204)
            self._cors()
            self.send_header("Content-Length", "0")
            self.end_headers()

        def do_GET(self):
            try:
                path = self.path.split("?", 1)[0].rstrip("/")
                if path == "/v1/examples":
                    self._send(200, handle_examples_index())
                elif path.startswith("/v1/examples/"):
                    self._send(200, handle_example(path.rsplit("/", 1)[1]))
                elif ui_root is not None:
                    self._static(path or "/")
                else:
                    raise _HttpError(404, f"no route {path or '/'}")
            except _HttpError as e:
                self._send(e.status, e.payload)

        def _static(self, path: str) -> None:
            rel = path.lstrip("/") or "index.html"
            target = (ui_root / rel).resolve()
            if not str(target).startswith(str(ui_root)) or not target.is_file():
                raise _HttpError(404, f"no route {path}")
            raw = target.read_bytes()
            ctype = {"html": "text/html", "js": "text/javascript",
                     "css": "text/css", "json": "application/json",
                     "map": "application/json"}.get(target.suffix.lstrip("."),
                                                    "application/octet-stream")
            self.send_response(200)
            self.send_header("Content-Type", f"{ctype}; charset=utf-8")
            self.send_header("Content-Length", str(len(raw)))
            self._cors()
            self.end_headers()
            self.wfile.write(raw)

        def do_POST(self):
            try:
                body = self._read_body()
                path = self.path.split("?", 1)[0].rstrip("/")
                if path == "/v1/parse":
                    self._send(200, handle_parse(body))
                elif path == "/v1/check":
                    self._send(200, handle_check(body, cap))
                elif path == "/v1/countermodel":
                    self._send(200, handle_countermodel(body, cap))
                else:
                    raise _HttpError(404, f"no route {path}")
            except _HttpError as e:
                self._send(e.status, e.payload)

    return ThreadingHTTPServer((addr, port), Handler)


def serve(addr: str = "127.0.0.1", port: int = 8621,
          ui_dir: Optional[str] = None, cap: int = DEFAULT_MAX_STRUCTURES) -> None:
    server = make_server(addr, port, ui_dir, cap)
    host, bound_port = server.server_address[:2]
    print(json.dumps({"listening": f"http://{host}:{bound_port}"}), flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        server.server_close()
