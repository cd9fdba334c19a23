"""The vocabulary URI grammar and per-statement query parameter rules.

Resource kinds and their paths::

    statement    /vocab/<id>/<version>/
    scheme       /vocab/<version>/
    data         /data/<id>/<version>/   or  /data/<id>/<version>.<ttl|json>
    scheme_data  /data/<version>/        or  /data/<version>.<ttl|json>
    page         /page/<id>/<version>/[?name=value[&...]]
    scheme_page  /page/<version>/[?language=tag]
"""

from __future__ import annotations

import datetime
import re
from dataclasses import dataclass, field
from urllib.parse import parse_qsl, quote, urlsplit

from .conneg import is_wellformed_bcp47
from .errors import UriError
from .identifiers import Version, is_statement_id

STATEMENT = "statement"
SCHEME = "scheme"
DATA = "data"
SCHEME_DATA = "scheme_data"
PAGE = "page"
SCHEME_PAGE = "scheme_page"

KINDS = (STATEMENT, SCHEME, DATA, SCHEME_DATA, PAGE, SCHEME_PAGE)
EXTENSIONS = ("ttl", "json")

_SEGMENT_KINDS = {
    "vocab": (STATEMENT, SCHEME),
    "data": (DATA, SCHEME_DATA),
    "page": (PAGE, SCHEME_PAGE),
}
_PREFIX = {STATEMENT: "vocab", SCHEME: "vocab", DATA: "data", SCHEME_DATA: "data", PAGE: "page", SCHEME_PAGE: "page"}
_STATEMENT_KINDS = (STATEMENT, DATA, PAGE)
_PAGE_KINDS = (PAGE, SCHEME_PAGE)
_EXT_RE = re.compile(r"(.+)\.([A-Za-z0-9]+)")


@dataclass(frozen=True)
class ResourceRef:
    kind: str
    version: Version
    id: str | None = None
    extension: str | None = None
    params: tuple[tuple[str, str], ...] = ()
    trailing_slash_ok: bool = True

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown resource kind {self.kind!r}")
        if (self.id is None) == (self.kind in _STATEMENT_KINDS):
            raise ValueError(f"{self.kind} references {'need' if self.id is None else 'take no'} statement id")
        if self.extension is not None and self.kind not in (DATA, SCHEME_DATA):
            raise ValueError("extensions are only valid on data URIs")
        if self.extension is not None and self.extension not in EXTENSIONS:
            raise ValueError(f"unknown extension {self.extension!r}")
        object.__setattr__(self, "params", tuple((str(k), str(v)) for k, v in self.params))

    @property
    def is_scheme(self):
        return self.kind in (SCHEME, SCHEME_DATA, SCHEME_PAGE)

    def as_kind(self, kind, *, extension=None, params=()):
        """The sibling reference of another kind for the same resource."""
        return ResourceRef(kind, self.version, self.id, extension, params)

    def statement_ref(self):
        return self.as_kind(SCHEME if self.is_scheme else STATEMENT)

    def page_ref(self, params=()):
        return self.as_kind(SCHEME_PAGE if self.is_scheme else PAGE, params=params)

    def data_ref(self, extension=None):
        return self.as_kind(SCHEME_DATA if self.is_scheme else DATA, extension=extension)

    def canonical(self):
        return ResourceRef(self.kind, self.version, self.id, self.extension, self.params)

    def path(self):
        return format_uri(self, "")


def parse_path(path: str, query: str = "") -> ResourceRef:
    """Decode a request path and query string into a :class:`ResourceRef`.

    Raises :class:`UriError` with code ``UNKNOWN_PATTERN``, ``MALFORMED_ID``,
    ``MALFORMED_VERSION`` or ``EXTENSION_ON_NON_DATA``.
    """
    if not path.startswith("/"):
        raise UriError(f"path must start with '/': {path!r}")
    parts = path[1:].split("/")
    if parts[0] not in _SEGMENT_KINDS:
        raise UriError(f"no resource pattern for {path!r}")
    statement_kind, scheme_kind = _SEGMENT_KINDS[parts[0]]
    segments = parts[1:]
    slash = bool(segments) and segments[-1] == ""
    if slash:
        segments = segments[:-1]
    if not segments or len(segments) > 2 or any(s == "" for s in segments):
        raise UriError(f"no resource pattern for {path!r}")

    *id_part, last = segments
    ident = id_part[0] if id_part else None
    kind = statement_kind if ident is not None else scheme_kind
    extension = None
    if not Version.is_valid(last):
        m = _EXT_RE.fullmatch(last)
        if m and Version.is_valid(m.group(1)):
            if kind not in (DATA, SCHEME_DATA):
                raise UriError(f"extension .{m.group(2)} on a non-data URI", code="EXTENSION_ON_NON_DATA")
            if m.group(2) not in EXTENSIONS or slash:
                raise UriError(f"no resource pattern for {path!r}")
            last, extension = m.group(1), m.group(2)
        else:
            raise UriError(f"malformed version {last!r}", code="MALFORMED_VERSION")
    if ident is not None and not is_statement_id(ident):
        raise UriError(f"malformed statement identifier {ident!r}", code="MALFORMED_ID")
    version = Version.parse(last)
    params = tuple(parse_qsl(query, keep_blank_values=True)) if query else ()
    return ResourceRef(
        kind,
        version,
        ident,
        extension,
        params,
        trailing_slash_ok=slash or extension is not None,
    )


_QUERY_SAFE = ":/@!$'()*,;"


def format_query(params) -> str:
    return "&".join(f"{quote(k, safe=_QUERY_SAFE)}={quote(v, safe=_QUERY_SAFE)}" for k, v in params)


def format_uri(ref: ResourceRef, base: str = "") -> str:
    """Render ``ref`` under ``base`` (pass ``""`` for a server-relative path)."""
    base = base.rstrip("/")
    segs = [_PREFIX[ref.kind]]
    if ref.id is not None:
        segs.append(ref.id)
    path = "/" + "/".join(segs) + "/" + str(ref.version)
    path += f".{ref.extension}" if ref.extension else "/"
    if ref.params:
        path += "?" + format_query(ref.params)
    return base + path


def statement_uri(base: str, ident: str, version: Version) -> str:
    return format_uri(ResourceRef(STATEMENT, version, ident), base)


def scheme_uri(base: str, version: Version) -> str:
    return format_uri(ResourceRef(SCHEME, version), base)


# -- extra-metadata parameters -------------------------------------------------------

ABSOLUTE_URL = "absolute_url"
ISO8601_DATE = "iso8601_date"


@dataclass(frozen=True)
class ParamRule:
    statement: str
    name: str
    value_kind: str


PARAM_RULES = (
    ParamRule("InC-OW-EU", "relatedURL", ABSOLUTE_URL),
    ParamRule("NoC-NC", "date", ISO8601_DATE),
    ParamRule("NoC-CR", "relatedURL", ABSOLUTE_URL),
    ParamRule("NoC-OKLR", "relatedURL", ABSOLUTE_URL),
)
EXTRA_METADATA_PARAMS = frozenset(r.name for r in PARAM_RULES)
LANGUAGE_PARAM = "language"
_RULES = {(r.statement, r.name): r for r in PARAM_RULES}

VALID = "valid"
INVALID = "invalid"
ALTERNATE_QUALITY = 0.9


@dataclass(frozen=True)
class Variant:
    uri: str
    quality: float
    media_type: str | None = None


@dataclass(frozen=True)
class ParamOutcome:
    verdict: str
    reason: str | None = None
    alternates: tuple[Variant, ...] = field(default_factory=tuple)
    message: str = ""

    @property
    def valid(self):
        return self.verdict == VALID


_DATE_RE = re.compile(r"[0-9]{4}-[0-9]{2}-[0-9]{2}")


def is_iso8601_date(value: str) -> bool:
    """Exactly ``YYYY-MM-DD`` naming a real calendar day."""
    if not _DATE_RE.fullmatch(value):
        return False
    try:
        datetime.date.fromisoformat(value)
    except ValueError:
        return False
    return True


def is_absolute_url(value: str) -> bool:
    if not value or re.search(r"\s", value):
        return False
    try:
        parts = urlsplit(value)
    except ValueError:
        return False
    return parts.scheme in ("http", "https") and bool(parts.netloc)


def rule_for(statement: str, name: str) -> ParamRule | None:
    return _RULES.get((statement, name))


def _check_value(rule, value):
    if rule.value_kind == ISO8601_DATE and not is_iso8601_date(value):
        return "MALFORMED_DATE", f"{rule.name}={value!r} is not an ISO 8601 calendar date"
    if rule.value_kind == ABSOLUTE_URL and not is_absolute_url(value):
        return "MALFORMED_URL", f"{rule.name}={value!r} is not an absolute http(s) URL"
    return None


def _problems(ref):
    """Yield (name, code, message) for every offending parameter occurrence."""
    seen = set()
    for name, value in ref.params:
        if name in seen:
            yield name, "DUPLICATE_PARAM", f"parameter {name!r} given more than once"
            continue
        seen.add(name)
        if name == LANGUAGE_PARAM:
            if ref.kind not in _PAGE_KINDS:
                yield name, "PARAM_NOT_ALLOWED_ON_RESOURCE", "language is only valid on page URIs"
            elif not is_wellformed_bcp47(value):
                yield name, "MALFORMED_LANGUAGE", f"language={value!r} is not a BCP47 tag"
        elif name in EXTRA_METADATA_PARAMS:
            if ref.kind != PAGE:
                yield name, "PARAM_NOT_ALLOWED_ON_RESOURCE", f"{name} is only valid on statement page URIs"
                continue
            rule = rule_for(ref.id, name)
            if rule is None:
                yield name, "PARAM_NOT_ALLOWED_FOR_STATEMENT", f"{name} is not defined for {ref.id}"
                continue
            bad = _check_value(rule, value)
            if bad:
                yield (name, *bad)
        else:
            yield name, "UNKNOWN_PARAM", f"unknown parameter {name!r}"


def validate_params(ref: ResourceRef) -> ParamOutcome:
    """Check ``ref.params`` and suggest recovery variants when invalid."""
    problems = list(_problems(ref))
    if not problems:
        return ParamOutcome(VALID)
    _, reason, message = problems[0]

    alternates = []
    extra = any(name in EXTRA_METADATA_PARAMS for name, _ in ref.params)
    if ref.kind in (STATEMENT, DATA) and extra:
        page = ref.page_ref(params=ref.params)
        if not list(_problems(page)):
            alternates.append(Variant(page.path(), ALTERNATE_QUALITY, "text/html"))
        alternates.append(Variant(ref.statement_ref().path(), ALTERNATE_QUALITY))
    elif ref.kind in _PAGE_KINDS:
        bad = {name for name, _, _ in problems}
        kept = tuple((k, v) for k, v in ref.params if k not in bad)
        alternates.append(Variant(ref.page_ref(params=kept).path(), ALTERNATE_QUALITY, "text/html"))
    else:
        alternates.append(Variant(ref.statement_ref().path(), ALTERNATE_QUALITY))
    return ParamOutcome(INVALID, reason, tuple(alternates), message)
