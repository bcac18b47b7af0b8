"""Stateless JSON HTTP service exposing verification, rigidity, relaxation,
continuation, and analysis over the graph file format.

Request bodies are either a bare graph document or
{"graph": <document>, "tolerances": {...}, "config": {...}, ...}.
Responses carry the same report dictionaries the CLI prints with
--format json. Cross-origin requests are allowed so a browser editor can
talk to a locally running instance.
"""

from __future__ import annotations

import json
from dataclasses import fields
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from . import corpus
from .analysis import detect_symmetry, frame_triangles
from .model import Graph, GraphFormatError, ToleranceProfile, graph_from_dict
from .relax import FlexContinuationConfig, RelaxConfig, flex_continuation, relax
from .rigidity import analyze_rigidity
from .svg import SvgStyle, export_svg
from .verifier import verify


class ServiceError(Exception):
    def __init__(self, status: int, message: str):
        super().__init__(message)
        self.status = status


def _profile_from(payload: dict) -> ToleranceProfile:
    overrides = payload.get("tolerances") or {}
    allowed = {f.name for f in fields(ToleranceProfile)}
    unknown = set(overrides) - allowed
    if unknown:
        raise ServiceError(400, f"unknown tolerance fields: {sorted(unknown)}")
    try:
        return ToleranceProfile(**overrides)
    except (TypeError, ValueError) as exc:
        raise ServiceError(400, f"bad tolerances: {exc}") from exc


def _graph_from(payload: dict) -> Graph:
    doc = payload.get("graph", payload)
    try:
        return graph_from_dict(doc)
    except GraphFormatError as exc:
        raise ServiceError(400, f"bad graph document: {exc}") from exc


def _config_from(payload: dict, cls):
    raw = payload.get("config") or {}
    allowed = {f.name for f in fields(cls)}
    unknown = set(raw) - allowed
    if unknown:
        raise ServiceError(400, f"unknown config fields: {sorted(unknown)}")
    if "pinned" in raw:
        raw = dict(raw, pinned=tuple(raw["pinned"]))
    try:
        return cls(**raw)
    except (TypeError, ValueError) as exc:
        raise ServiceError(400, f"bad config: {exc}") from exc


def _style_from(payload: dict) -> SvgStyle:
    raw = payload.get("style") or {}
    allowed = {f.name for f in fields(SvgStyle)}
    unknown = set(raw) - allowed
    if unknown:
        raise ServiceError(400, f"unknown style fields: {sorted(unknown)}")
    try:
        return SvgStyle(**raw)
    except (TypeError, ValueError) as exc:
        raise ServiceError(400, f"bad style: {exc}") from exc


def handle_request(method: str, path: str, payload: dict | None) -> dict | list:
    """Route a decoded request; raises ServiceError with an HTTP status."""
    parts = [p for p in path.split("/") if p]
    if not parts or parts[0] != "api":
        raise ServiceError(404, "unknown route")

    if method == "GET":
        if parts[1:] == ["corpus"]:
            return [
                {"id": gid, "vertex_count": n, "red_count": red, "symmetry": sym}
                for gid, n, red, sym in corpus.list_corpus()
            ]
        if len(parts) == 3 and parts[1] == "corpus":
            try:
                return corpus.get_document(parts[2])
            except KeyError:
                raise ServiceError(404, f"unknown corpus id {parts[2]!r}")
        raise ServiceError(404, "unknown route")

    if method != "POST" or len(parts) != 2:
        raise ServiceError(404, "unknown route")
    if payload is None or not isinstance(payload, dict):
        raise ServiceError(400, "request body must be a JSON object")

    kind = parts[1]
    if kind == "verify":
        return verify(_graph_from(payload), _profile_from(payload)).to_dict()
    if kind == "rigidity":
        include_red = bool(payload.get("include_red", True))
        try:
            report = analyze_rigidity(_graph_from(payload),
                                      _profile_from(payload),
                                      include_red=include_red)
        except ValueError as exc:
            raise ServiceError(422, str(exc)) from exc
        return report.to_dict()
    if kind == "relax":
        try:
            result = relax(_graph_from(payload),
                           _config_from(payload, RelaxConfig))
        except (ValueError, ArithmeticError) as exc:
            raise ServiceError(422, str(exc)) from exc
        return result.to_dict()
    if kind == "flex":
        try:
            stages = flex_continuation(_graph_from(payload),
                                       _config_from(payload,
                                                    FlexContinuationConfig))
        except (ValueError, ArithmeticError) as exc:
            raise ServiceError(422, str(exc)) from exc
        return {"stages": [s.to_dict() for s in stages],
                "stalled": not stages}
    if kind == "symmetry":
        try:
            report = detect_symmetry(_graph_from(payload), _profile_from(payload))
        except ValueError as exc:
            raise ServiceError(422, str(exc)) from exc
        return report.to_dict()
    if kind == "frame":
        try:
            report = frame_triangles(_graph_from(payload), _profile_from(payload))
        except ValueError as exc:
            raise ServiceError(422, str(exc)) from exc
        return report.to_dict()
    if kind == "export-svg":
        try:
            svg = export_svg(_graph_from(payload), _style_from(payload))
        except ValueError as exc:
            raise ServiceError(422, str(exc)) from exc
        return {"svg": svg}
    raise ServiceError(404, "unknown route")


class _Handler(BaseHTTPRequestHandler):
    server_version = "matchkit"

    def log_message(self, fmt, *args):
        pass

    def _send(self, status: int, body: dict | list):
        # allow_nan=False: a NaN/Infinity leak would produce a body that
        # strict JSON parsers reject, so fail loudly here instead.
        data = json.dumps(body, indent=2, allow_nan=False).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(data)))
        self._cors()
        self.end_headers()
        self.wfile.write(data)

    def _cors(self):
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")

    def _dispatch(self, method: str):
        payload = None
        if method == "POST":
            length = int(self.headers.get("Content-Length") or 0)
            raw = self.rfile.read(length) if length else b""
            try:
                payload = json.loads(raw.decode("utf-8")) if raw else None
            except (json.JSONDecodeError, UnicodeDecodeError):
                self._send(400, {"error": "request body is not valid JSON"})
                return
        try:
            body = handle_request(method, self.path, payload)
        except ServiceError as exc:
            self._send(exc.status, {"error": str(exc)})
            return
        self._send(200, body)

    def do_GET(self):
        self._dispatch("GET")

    def do_POST(self):
        self._dispatch("POST")

    def do_OPTIONS(self):
        self.send_response(204)
        self._cors()
        self.end_headers()


def make_server(host: str = "127.0.0.1", port: int = 8750) -> ThreadingHTTPServer:
    return ThreadingHTTPServer((host, port), _Handler)


def serve(host: str = "127.0.0.1", port: int = 8750) -> None:
    """Run the service until interrupted."""
    server = make_server(host, port)
    print(f"serving on http://{host}:{port}")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
