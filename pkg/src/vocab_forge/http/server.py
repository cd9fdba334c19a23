"""Threaded HTTP adapter around :func:`handle`."""

from __future__ import annotations

import json
import logging
import signal
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import urlsplit

from .service import Request, ServerConfig, VocabularySnapshot, handle

access_log = logging.getLogger("vocab_forge.access")


class SnapshotHolder:
    """The live snapshot. Requests read it once; reloads swap the reference."""

    def __init__(self, snapshot: VocabularySnapshot):
        self._snapshot = snapshot
        self._lock = threading.Lock()

    def get(self) -> VocabularySnapshot:
        return self._snapshot

    def swap(self, snapshot: VocabularySnapshot) -> VocabularySnapshot:
        with self._lock:
            old, self._snapshot = self._snapshot, snapshot
        return old


def _handler_class(holder: SnapshotHolder, cfg: ServerConfig):
    class Handler(BaseHTTPRequestHandler):
        server_version = "vocab-forge"
        sys_version = ""
        protocol_version = "HTTP/1.1"

        def _serve(self):
            target = urlsplit(self.path)
            req = Request(self.command, target.path, target.query, list(self.headers.items()))
            resp = handle(req, holder.get(), cfg)
            if req.method not in ("GET", "HEAD"):
                self.close_connection = True  # any request body is left unread
            access_log.info(json.dumps({
                "method": req.method,
                "path": self.path,
                "status": resp.status,
                "format": resp.format.name.lower() if resp.format else None,
                "language": resp.language,
            }, sort_keys=True))
            self.send_response(resp.status, resp.reason)
            for name, value in resp.headers:
                self.send_header(name, value)
            self.end_headers()
            if resp.body:
                self.wfile.write(resp.body)

        do_GET = do_HEAD = do_POST = do_PUT = do_DELETE = do_PATCH = do_OPTIONS = _serve

        def log_message(self, format, *args):
            # The structured access line above replaces the default log.
            pass

    return Handler


def make_server(holder: SnapshotHolder, cfg: ServerConfig) -> ThreadingHTTPServer:
    server = ThreadingHTTPServer((cfg.host, cfg.port), _handler_class(holder, cfg))
    server.daemon_threads = True
    return server


def serve_forever(holder: SnapshotHolder, cfg: ServerConfig, reload=None) -> None:
    """Serve until interrupted. ``reload()`` builds a fresh snapshot on SIGHUP."""
    server = make_server(holder, cfg)
    if reload is not None and hasattr(signal, "SIGHUP"):
        def on_hup(signum, frame):
            try:
                holder.swap(reload())
                access_log.info(json.dumps({"event": "reload", "status": "ok"}))
            except Exception as exc:  # keep serving the old snapshot
                access_log.error(json.dumps({"event": "reload", "status": "failed", "error": str(exc)}))
        signal.signal(signal.SIGHUP, on_hup)
    access_log.info(json.dumps({"event": "listening", "host": cfg.host, "port": server.server_address[1]}))
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
