"""Read-only HTTP query service.

Endpoints:

    GET  /search?q=<label>
    GET  /entity/<id>
    GET  /entity/<id>/neighborhood?depth=<k>
    GET  /path?from=<id>&to=<id>
    GET  /trace/<id>
    POST /drill      {"revealed": [ids], "target": id, "root": id, "path": [ids]}
    POST /reload

All requests run against an immutable snapshot; /reload builds a fresh
snapshot from disk and swaps it in a single reference assignment, so
in-flight requests keep a consistent view. Drill-down session state is
client-held: the body carries the revealed set plus the session shape
(root and drill path) so the already-shown edges can be replayed exactly.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from typing import Optional
from urllib.parse import parse_qs, urlparse

from .errors import GridKgError, TargetNotRevealed, UnknownEntity
from .query import (
    QueryEngine,
    entity_payload,
    level_payload,
    trace_payload,
    tree_payload,
)
from .rules import load_rules
from .store import GraphStore


@dataclass(frozen=True)
class Snapshot:
    store: GraphStore
    engine: QueryEngine


class GraphService:
    def __init__(self, graph_path: str, rules_path: Optional[str] = None):
        self.graph_path = graph_path
        self.rules_path = rules_path
        self.snapshot = self._load()

    def _load(self) -> Snapshot:
        store = GraphStore.load(self.graph_path)
        rules = load_rules(self.rules_path) if self.rules_path else ()
        return Snapshot(store=store, engine=QueryEngine(store, rules))

    def reload(self) -> Snapshot:
        snapshot = self._load()
        self.snapshot = snapshot
        return snapshot

    # -- request handlers, one per endpoint --------------------------------

    def search(self, query: str) -> dict:
        snap = self.snapshot
        eid = snap.engine.find_entity(query)
        if eid is None:
            return {"found": False, "query": query}
        return {"found": True, "query": query, "entity": entity_payload(snap.store, eid)}

    def entity(self, eid: int) -> dict:
        snap = self.snapshot
        return entity_payload(snap.store, eid)

    def neighborhood(self, eid: int, depth: int) -> dict:
        snap = self.snapshot
        return tree_payload(snap.store, snap.engine.neighborhood(eid, depth))

    def drill(self, body: dict) -> dict:
        snap = self.snapshot
        try:
            revealed = {int(x) for x in body["revealed"]}
            target = int(body["target"])
        except (KeyError, TypeError, ValueError):
            raise GridKgError("drill body needs 'revealed' (list of ids) and 'target' (id)")
        root = body.get("root")
        drill_path = body.get("path") or []
        level, new_revealed = snap.engine.drill_stateless(
            revealed, target,
            root=None if root is None else int(root),
            has_drilled=bool(drill_path),
        )
        return {
            "target": entity_payload(snap.store, target),
            "level": level_payload(snap.store, level),
            "revealed": sorted(new_revealed),
        }

    def path(self, from_id: int, to_id: int) -> dict:
        snap = self.snapshot
        path = snap.engine.shortest_path(from_id, to_id)
        if path is None:
            return {"found": False, "path": []}
        from .store import Direction
        return {"found": True, "path": [
            # a path edge reads subject -> object
            {"subject": snap.store.entity(t.s).label, "predicate": t.p.name,
             "object": snap.store.entity(t.o).label, "direction": Direction.OUT.value,
             "derived": t.derived, "provenance": [str(p) for p in t.provenance]}
            for t in path]}

    def trace(self, eid: int) -> dict:
        snap = self.snapshot
        return trace_payload(snap.store, snap.engine.trace(eid))


_ENTITY = re.compile(r"^/entity/(\d+)$")
_NEIGHBORHOOD = re.compile(r"^/entity/(\d+)/neighborhood$")
_TRACE = re.compile(r"^/trace/(\d+)$")


def make_handler(service: GraphService, ui_dir: Optional[str] = None):
    class Handler(BaseHTTPRequestHandler):
        protocol_version = "HTTP/1.1"

        def log_message(self, *args):  # quiet by default
            pass

        def _send(self, status: int, payload: dict) -> None:
            body = json.dumps(payload, ensure_ascii=False).encode("utf-8")
            self.send_response(status)
            self.send_header("Content-Type", "application/json; charset=utf-8")
            self.send_header("Content-Length", str(len(body)))
            self.send_header("Access-Control-Allow-Origin", "*")
            self.send_header("Access-Control-Allow-Headers", "Content-Type")
            self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
            self.end_headers()
            self.wfile.write(body)

        def _send_file(self, path: Path) -> None:
            types = {".html": "text/html", ".js": "text/javascript",
                     ".css": "text/css", ".svg": "image/svg+xml"}
            body = path.read_bytes()
            self.send_response(200)
            self.send_header("Content-Type", types.get(path.suffix, "application/octet-stream"))
            self.send_header("Content-Length", str(len(body)))
            self.end_headers()
            self.wfile.write(body)

        def do_OPTIONS(self):
            self._send(204, {})

        def do_GET(self):
            url = urlparse(self.path)
            params = parse_qs(url.query)
            try:
                if url.path == "/search":
                    query = params.get("q", [""])[0]
                    self._send(200, service.search(query))
                elif m := _NEIGHBORHOOD.match(url.path):
                    depth = int(params.get("depth", ["1"])[0])
                    self._send(200, service.neighborhood(int(m.group(1)), depth))
                elif m := _ENTITY.match(url.path):
                    self._send(200, service.entity(int(m.group(1))))
                elif m := _TRACE.match(url.path):
                    self._send(200, service.trace(int(m.group(1))))
                elif url.path == "/path":
                    from_id = int(params.get("from", [""])[0])
                    to_id = int(params.get("to", [""])[0])
                    self._send(200, service.path(from_id, to_id))
                elif ui_dir is not None:
                    self._static(url.path)
                else:
                    self._send(404, {"error": f"no route {url.path}"})
            except UnknownEntity as exc:
                self._send(404, {"error": str(exc)})
            except (GridKgError, ValueError) as exc:
                self._send(400, {"error": str(exc)})

        def _static(self, path: str) -> None:
            base = Path(ui_dir).resolve()
            target = (base / path.lstrip("/")).resolve() if path != "/" else base / "index.html"
            if target.is_dir():
                target = target / "index.html"
            if base not in target.parents and target != base:
                self._send(404, {"error": "outside static root"})
            elif target.is_file():
                self._send_file(target)
            else:
                self._send(404, {"error": f"no route {path}"})

        def do_POST(self):
            url = urlparse(self.path)
            length = int(self.headers.get("Content-Length", "0"))
            raw = self.rfile.read(length) if length else b"{}"
            try:
                body = json.loads(raw.decode("utf-8")) if raw.strip() else {}
            except json.JSONDecodeError:
                self._send(400, {"error": "request body is not valid JSON"})
                return
            try:
                if url.path == "/drill":
                    self._send(200, service.drill(body))
                elif url.path == "/reload":
                    snapshot = service.reload()
                    self._send(200, {"reloaded": True,
                                     "entities": len(snapshot.store.entities()),
                                     "triples": len(snapshot.store)})
                else:
                    self._send(404, {"error": f"no route {url.path}"})
            except TargetNotRevealed as exc:
                self._send(409, {"error": str(exc)})
            except UnknownEntity as exc:
                self._send(404, {"error": str(exc)})
            except (GridKgError, ValueError, OSError) as exc:
                self._send(400, {"error": str(exc)})

    return Handler


def start_server(graph_path: str, rules_path: Optional[str], host: str, port: int,
                 ui_dir: Optional[str] = None) -> ThreadingHTTPServer:
    service = GraphService(graph_path, rules_path)
    server = ThreadingHTTPServer((host, port), make_handler(service, ui_dir))
    server.service = service
    return server


def run_server(graph_path: str, rules_path: Optional[str], host: str, port: int,
               ui_dir: Optional[str] = None) -> None:
    server = start_server(graph_path, rules_path, host, port, ui_dir)
    print(f"serving {graph_path} on http://{host}:{port}")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
