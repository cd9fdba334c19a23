"""Recipe-6 dispatch over the URI space.

:func:`handle` is a pure function of the request, an immutable
:class:`VocabularySnapshot` and the :class:`ServerConfig`; the socket
adapter lives in :mod:`vocab_forge.http.server`.
"""

from __future__ import annotations

import hashlib
import json
import logging
import types
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Mapping
from urllib.parse import unquote

from .. import DEFAULT_BASE
from ..conneg import Format, parse_accept, parse_accept_language, select_format, select_language
from ..errors import UriError, VocabForgeError
from ..identifiers import Version
from ..rdf.jsonld import serialize_jsonld
from ..rdf.turtle import parse_turtle, serialize_turtle
from ..uris import (
    ALTERNATE_QUALITY,
    DATA,
    LANGUAGE_PARAM,
    PAGE,
    SCHEME,
    SCHEME_DATA,
    SCHEME_PAGE,
    STATEMENT,
    ResourceRef,
    Variant,
    parse_path,
    validate_params,
)
from ..vocab.graphs import load_scheme, scheme_to_graph, statement_to_graph
from ..vocab.model import ConceptScheme
from .headers import build_alternates, build_link
from .pages import render_error, render_page, render_scheme_page

log = logging.getLogger(__name__)

ALLOWED_METHODS = ("GET", "HEAD")
CACHE_CONTROL = "public, max-age=86400"

_REASONS = {
    200: "OK",
    301: "Moved Permanently",
    303: "See Other",
    304: "Not Modified",
    400: "Bad Request",
    404: "Not Found",
    405: "Method Not Allowed",
    406: "Not Acceptable",
    500: "Internal Server Error",
}

# Server preference order; used to break quality ties.
_CONCEPT_FORMATS = (Format.HTML, Format.TURTLE, Format.JSONLD)
_DATA_FORMATS = (Format.TURTLE, Format.JSONLD)


class Headers:
    """Case-insensitive multimap of request headers."""

    def __init__(self, items=()):
        if isinstance(items, Mapping):
            items = items.items()
        self._items = [(str(k), str(v)) for k, v in items]

    def get(self, name, default=None):
        values = self.get_all(name)
        return ", ".join(values) if values else default

    def get_all(self, name):
        name = name.lower()
        return [v for k, v in self._items if k.lower() == name]

    def __contains__(self, name):
        return bool(self.get_all(name))

    def __iter__(self):
        return iter(self._items)


@dataclass(frozen=True)
class Request:
    method: str
    path: str
    query: str = ""
    headers: Headers = field(default_factory=Headers)

    def __post_init__(self):
        if not isinstance(self.headers, Headers):
            object.__setattr__(self, "headers", Headers(self.headers))

    @classmethod
    def get(cls, target: str, headers=None, method: str = "GET") -> "Request":
        """Build a request from a path with optional ``?query``."""
        path, _, query = target.partition("?")
        return cls(method, path, query, Headers(headers or ()))


@dataclass(frozen=True)
class Response:
    status: int
    headers: tuple = ()
    body: bytes = b""
    format: Format | None = None
    language: str | None = None

    @property
    def reason(self):
        return _REASONS.get(self.status, "")

    def header(self, name, default=None):
        name = name.lower()
        for k, v in self.headers:
            if k.lower() == name:
                return v
        return default

    @property
    def content_type(self):
        return self.header("Content-Type")

    @property
    def text(self):
        return self.body.decode("utf-8")


@dataclass(frozen=True)
class ServerConfig:
    base_uri: str = DEFAULT_BASE
    host: str = "127.0.0.1"
    port: int = 8080
    vocab_files: tuple = ()
    default_language: str = "en"
    template_dir: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "base_uri", self.base_uri.rstrip("/"))
        object.__setattr__(self, "vocab_files", tuple(str(p) for p in self.vocab_files))
        object.__setattr__(self, "port", int(self.port))

    @classmethod
    def from_file(cls, path, **overrides) -> "ServerConfig":
        """Read a JSON object of config fields; non-None overrides win."""
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        if not isinstance(data, dict):
            raise VocabForgeError(f"{path}: config must be a JSON object", "MALFORMED_CONFIG")
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise VocabForgeError(f"{path}: unknown config keys {', '.join(unknown)}", "MALFORMED_CONFIG")
        data.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**data)

    def evolve(self, **changes) -> "ServerConfig":
        return replace(self, **{k: v for k, v in changes.items() if v is not None})


class VocabularySnapshot:
    """All published versions, frozen at load time."""

    __slots__ = ("_schemes", "_current")

    def __init__(self, schemes: Mapping[Version, ConceptScheme], current_version: Version | None = None):
        if not schemes:
            raise VocabForgeError("a snapshot needs at least one scheme version", "EMPTY_SNAPSHOT")
        for version, scheme in schemes.items():
            if scheme.version != version:
                raise VocabForgeError(f"scheme {scheme.version} filed under {version}", "VERSION_MISMATCH")
        current = max(schemes) if current_version is None else current_version
        if current not in schemes:
            raise VocabForgeError(f"current version {current} is not loaded", "UNKNOWN_VERSION")
        object.__setattr__(self, "_schemes", types.MappingProxyType(dict(sorted(schemes.items()))))
        object.__setattr__(self, "_current", current)

    def __setattr__(self, name, value):
        raise AttributeError("VocabularySnapshot is immutable")

    @property
    def schemes(self):
        return self._schemes

    @property
    def current_version(self):
        return self._current

    @classmethod
    def from_schemes(cls, schemes) -> "VocabularySnapshot":
        by_version = {}
        for scheme in schemes:
            if scheme.version in by_version:
                raise VocabForgeError(f"version {scheme.version} is loaded twice", "DUPLICATE_VERSION")
            by_version[scheme.version] = scheme
        return cls(by_version)

    @classmethod
    def load(cls, paths, base_uri: str = DEFAULT_BASE, default_language: str = "en") -> "VocabularySnapshot":
        schemes = []
        for path in paths:
            text = Path(path).read_text(encoding="utf-8")
            schemes.append(load_scheme(parse_turtle(text), base_uri, default_language))
        return cls.from_schemes(schemes)

    def scheme(self, version: Version) -> ConceptScheme | None:
        return self._schemes.get(version)

    def statement(self, ident: str, version: Version):
        scheme = self._schemes.get(version)
        return scheme.get(ident) if scheme else None

    def missing_default_language(self, language: str):
        """(id, version) of every statement lacking a prefLabel in ``language``."""
        return [
            (s.id, s.version)
            for scheme in self._schemes.values()
            for s in scheme.members
            if language not in s.pref_label
        ]


def representation(ref: ResourceRef, fmt: Format, snap: VocabularySnapshot, cfg: ServerConfig) -> bytes:
    """Serialized data document for a statement or scheme data reference."""
    scheme = snap.scheme(ref.version)
    if ref.is_scheme:
        graph = scheme_to_graph(scheme, cfg.base_uri)
    else:
        graph = statement_to_graph(scheme[ref.id], cfg.base_uri)
    text = serialize_turtle(graph) if fmt is Format.TURTLE else serialize_jsonld(graph)
    return text.encode("utf-8")


def _etag(body: bytes) -> str:
    return '"' + hashlib.sha256(body).hexdigest()[:32] + '"'


def _finish(req, status, headers, body=b"", fmt=None, language=None, cacheable=False):
    headers = list(headers)
    if cacheable:
        headers.append(("Cache-Control", CACHE_CONTROL))
    if cacheable and status == 200:
        etag = _etag(body)
        headers.append(("ETag", etag))
        if etag in _if_none_match(req):
            kept = [(k, v) for k, v in headers if k.lower() != "content-type"]
            return Response(304, tuple(kept), b"", fmt, language)
    headers.append(("Content-Length", str(len(body))))
    if req.method == "HEAD":
        body = b""
    return Response(status, tuple(headers), body, fmt, language)


def _if_none_match(req):
    value = req.headers.get("If-None-Match", "")
    return {v.strip() for v in value.split(",")} if value else set()


def _error(req, status, message, cfg, alternates=(), extra_headers=()):
    body = render_error(status, _REASONS[status], message, alternates, cfg).encode("utf-8")
    headers = [("Content-Type", Format.HTML.content_type)]
    if alternates:
        headers.append(("Alternates", build_alternates(alternates)))
    headers += extra_headers
    return _finish(req, status, headers, body)


def _derivedfrom(ref: ResourceRef, language: str, cfg: ServerConfig):
    """Link to the base default-language page from translated or parameterized pages."""
    if ref.params or language != cfg.default_language:
        return [("Link", build_link(ref.page_ref().path(), "derivedfrom"))]
    return []


def _negotiate_concept(req, ref, cfg):
    fmt = select_format(parse_accept(req.headers.get("Accept")), _CONCEPT_FORMATS)
    if fmt is None:
        variants = [Variant(ref.page_ref().path(), ALTERNATE_QUALITY, Format.HTML.media_type)]
        variants += [Variant(ref.data_ref(f.extension).path(), ALTERNATE_QUALITY, f.media_type) for f in _DATA_FORMATS]
        return _error(req, 406, "None of the available formats is acceptable.", cfg, variants,
                      [("Vary", "Accept")])
    target = ref.page_ref() if fmt is Format.HTML else ref.data_ref()
    headers = [
        ("Location", target.path()),
        ("Link", build_link(ref.page_ref().path(), "describedby")),
        ("Vary", "Accept"),
    ]
    return _finish(req, 303, headers, b"", fmt, cacheable=True)


def _serve_data(req, ref, snap, cfg):
    if ref.extension is not None:
        fmt = Format.from_extension(ref.extension)
        body = representation(ref, fmt, snap, cfg)
        return _finish(req, 200, [("Content-Type", fmt.content_type)], body, fmt, cacheable=True)
    fmt = select_format(parse_accept(req.headers.get("Accept")), _DATA_FORMATS)
    if fmt is None:
        variants = [Variant(ref.data_ref(f.extension).path(), ALTERNATE_QUALITY, f.media_type) for f in _DATA_FORMATS]
        return _error(req, 406, "Only Turtle and JSON-LD are served here; see the page URI for HTML.", cfg,
                      variants, [("Vary", "Accept")])
    body = representation(ref, fmt, snap, cfg)
    headers = [
        ("Content-Type", fmt.content_type),
        ("Content-Location", ref.data_ref(fmt.extension).path()),
        ("Vary", "Accept"),
    ]
    return _finish(req, 200, headers, body, fmt, cacheable=True)


def _page_language(req, ref, available, cfg):
    """The page language, or a 406 Response for an unavailable ?language=."""
    requested = dict(ref.params).get(LANGUAGE_PARAM)
    if requested is not None:
        by_lower = {t.lower(): t for t in available}
        if requested.lower() in by_lower:
            return by_lower[requested.lower()]
        others = tuple((k, v) for k, v in ref.params if k != LANGUAGE_PARAM)
        variants = [
            Variant(ref.page_ref(params=others + ((LANGUAGE_PARAM, tag),)).path(), ALTERNATE_QUALITY,
                    Format.HTML.media_type)
            for tag in sorted(available)
        ]
        return _error(req, 406, f"No {requested} translation is available.", cfg, variants)
    ranges = parse_accept_language(req.headers.get("Accept-Language"))
    return select_language(ranges, available, cfg.default_language)


def _serve_page(req, ref, snap, cfg):
    scheme = snap.scheme(ref.version)
    if ref.kind == SCHEME_PAGE:
        available = (scheme.languages() | set(scheme.title) | {cfg.default_language}) - {""}
    else:
        available = scheme[ref.id].languages() - {""}
    language = _page_language(req, ref, available, cfg)
    if isinstance(language, Response):
        return language
    if ref.kind == SCHEME_PAGE:
        html = render_scheme_page(scheme, language, cfg)
    else:
        html = render_page(scheme[ref.id], language, ref.params, snap, cfg)
    headers = [
        ("Content-Type", Format.HTML.content_type),
        ("Content-Language", language),
        ("Vary", "Accept-Language"),
    ]
    headers += _derivedfrom(ref, language, cfg)
    return _finish(req, 200, headers, html.encode("utf-8"), Format.HTML, language, cacheable=True)


def _dispatch(req: Request, snap: VocabularySnapshot, cfg: ServerConfig) -> Response:
    if req.method not in ALLOWED_METHODS:
        return _error(req, 405, f"{req.method} is not supported.", cfg,
                      extra_headers=[("Allow", ", ".join(ALLOWED_METHODS))])
    try:
        ref = parse_path(unquote(req.path), req.query)
    except UriError as exc:
        return _error(req, 404, exc.message, cfg)
    scheme = snap.scheme(ref.version)
    if scheme is None:
        return _error(req, 404, f"Version {ref.version} is not published.", cfg)
    if ref.id is not None and ref.id not in scheme:
        return _error(req, 404, f"{ref.id} is not part of version {ref.version}.", cfg)
    if not ref.trailing_slash_ok:
        location = ref.as_kind(ref.kind).path() + (f"?{req.query}" if req.query else "")
        return _finish(req, 301, [("Location", location)], b"", cacheable=True)

    outcome = validate_params(ref)
    if not outcome.valid:
        return _error(req, 406, outcome.message, cfg, outcome.alternates)

    if ref.kind in (STATEMENT, SCHEME):
        return _negotiate_concept(req, ref, cfg)
    if ref.kind in (DATA, SCHEME_DATA):
        return _serve_data(req, ref, snap, cfg)
    if ref.kind in (PAGE, SCHEME_PAGE):
        return _serve_page(req, ref, snap, cfg)
    raise AssertionError(f"unhandled kind {ref.kind}")


def handle(req: Request, snap: VocabularySnapshot, cfg: ServerConfig) -> Response:
    """Answer one request. Never raises: unexpected failures become 500s."""
    try:
        return _dispatch(req, snap, cfg)
    except Exception:
        log.exception("unhandled error serving %s %s", req.method, req.path)
        body = b"Internal Server Error\n"
        return Response(500, (("Content-Type", "text/plain; charset=utf-8"), ("Content-Length", str(len(body)))),
                        b"" if req.method == "HEAD" else body)
