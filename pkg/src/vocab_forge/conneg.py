"""HTTP negotiation primitives: Accept, Accept-Language and BCP47 tags.

>>> [str(r) for r in parse_accept("text/html;q=0.8, application/ld+json")]
['application/ld+json', 'text/html;q=0.8']
>>> select_language(parse_accept_language("es-MX"), {"en", "es"}, "en")
'es'
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass

# RFC 5646 tag syntax, well-formedness only (no registry lookups).
_ALPHANUM = "[A-Za-z0-9]"
_LANGUAGE = r"(?:[A-Za-z]{2,3}(?:-[A-Za-z]{3}){0,3}|[A-Za-z]{4}|[A-Za-z]{5,8})"
_SCRIPT = r"(?:-[A-Za-z]{4})"
_REGION = r"(?:-(?:[A-Za-z]{2}|[0-9]{3}))"
_VARIANT = rf"(?:-(?:{_ALPHANUM}{{5,8}}|[0-9]{_ALPHANUM}{{3}}))"
_EXTENSION = rf"(?:-[0-9A-WY-Za-wy-z](?:-{_ALPHANUM}{{2,8}})+)"
_PRIVATEUSE = rf"(?:x(?:-{_ALPHANUM}{{1,8}})+)"
_LANGTAG = rf"{_LANGUAGE}{_SCRIPT}?{_REGION}?{_VARIANT}*{_EXTENSION}*(?:-{_PRIVATEUSE})?"
_GRANDFATHERED = (
    "en-GB-oed|i-ami|i-bnn|i-default|i-enochian|i-hak|i-klingon|i-lux|i-mingo|i-navajo|"
    "i-pwn|i-tao|i-tay|i-tsu|sgn-BE-FR|sgn-BE-NL|sgn-CH-DE|"
    "art-lojban|cel-gaulish|no-bok|no-nyn|zh-guoyu|zh-hakka|zh-min|zh-min-nan|zh-xiang"
)
_BCP47_RE = re.compile(rf"(?:{_LANGTAG}|{_PRIVATEUSE}|{_GRANDFATHERED})", re.IGNORECASE)


def is_wellformed_bcp47(tag) -> bool:
    """True iff ``tag`` is a syntactically well-formed BCP47 language tag."""
    return isinstance(tag, str) and _BCP47_RE.fullmatch(tag) is not None


class Format(enum.Enum):
    TURTLE = "turtle"
    JSONLD = "jsonld"
    HTML = "html"

    @property
    def media_type(self):
        return _MEDIA_TYPES[self]

    @property
    def extension(self):
        """The ``/data/`` file extension, or None for HTML."""
        return _EXTENSIONS.get(self)

    @property
    def content_type(self):
        if self is Format.JSONLD:
            return self.media_type
        return f"{self.media_type}; charset=utf-8"

    @classmethod
    def from_extension(cls, ext):
        for fmt, e in _EXTENSIONS.items():
            if e == ext:
                return fmt
        raise ValueError(f"no format for extension {ext!r}")


_MEDIA_TYPES = {
    Format.TURTLE: "text/turtle",
    Format.JSONLD: "application/ld+json",
    Format.HTML: "text/html",
}
_EXTENSIONS = {Format.TURTLE: "ttl", Format.JSONLD: "json"}


@dataclass(frozen=True)
class MediaRange:
    type: str
    subtype: str
    quality: float = 1.0
    params: tuple[tuple[str, str], ...] = ()

    @property
    def specificity(self):
        if self.type == "*":
            return 0
        if self.subtype == "*":
            return 1
        return 3 if self.params else 2

    def matches(self, media_type: str) -> bool:
        mtype, _, msub = media_type.partition("/")
        return self.type in ("*", mtype) and self.subtype in ("*", msub)

    def __str__(self):
        s = f"{self.type}/{self.subtype}"
        for k, v in self.params:
            s += f";{k}={v}"
        if self.quality != 1.0:
            s += f";q={self.quality:g}"
        return s


@dataclass(frozen=True)
class LanguageRange:
    range: str
    quality: float = 1.0


_TOKEN_RE = re.compile(r"[!#$%&'*+.^_`|~0-9A-Za-z-]+")
_QVALUE_RE = re.compile(r"(?:0(?:\.[0-9]{0,3})?|1(?:\.0{0,3})?)")


def _split_params(segment):
    parts = [p.strip() for p in segment.split(";")]
    head, quality, params = parts[0], 1.0, []
    for p in parts[1:]:
        if not p:
            continue
        name, eq, value = p.partition("=")
        name, value = name.strip().lower(), value.strip()
        if not eq or not _TOKEN_RE.fullmatch(name):
            return None
        if name == "q":
            if not _QVALUE_RE.fullmatch(value):
                return None
            quality = float(value)
        else:
            params.append((name, value.strip('"')))
    return head, quality, tuple(params)


def parse_accept(header) -> list[MediaRange]:
    """Parse an Accept header; best ranges first, header order kept on ties.

    Malformed segments are skipped.
    """
    if not header:
        return []
    ranges = []
    for segment in header.split(","):
        if not segment.strip():
            continue
        split = _split_params(segment)
        if split is None:
            continue
        head, quality, params = split
        mtype, slash, msub = head.lower().partition("/")
        if not slash or not _TOKEN_RE.fullmatch(mtype) or not _TOKEN_RE.fullmatch(msub):
            continue
        if mtype == "*" and msub != "*":
            continue
        ranges.append(MediaRange(mtype, msub, quality, params))
    # sorted() is stable, which preserves header order for equal keys.
    return sorted(ranges, key=lambda r: (-r.quality, -r.specificity))


def parse_accept_language(header) -> list[LanguageRange]:
    if not header:
        return []
    ranges = []
    for segment in header.split(","):
        if not segment.strip():
            continue
        split = _split_params(segment)
        if split is None:
            continue
        tag, quality, _ = split
        if tag != "*" and not is_wellformed_bcp47(tag):
            continue
        ranges.append(LanguageRange(tag, quality))
    return sorted(ranges, key=lambda r: -r.quality)


def _effective_quality(ranges, media_type):
    best = None
    for r in ranges:
        if r.matches(media_type):
            key = (r.specificity, r.quality)
            if best is None or key > best:
                best = key
    return 0.0 if best is None else best[1]


def select_format(ranges, available):
    """Pick the best of ``available`` (in server-preference order).

    No ranges at all means a browser-like client: HTML, or the first
    available format when HTML is not on offer. Returns None when every
    format is unacceptable.
    """
    available = list(available)
    if not available:
        raise ValueError("no formats available")
    if not ranges:
        return Format.HTML if Format.HTML in available else available[0]
    best, best_q = None, 0.0
    for fmt in available:
        q = _effective_quality(ranges, fmt.media_type)
        if q > best_q:
            best, best_q = fmt, q
    return best


def _prefix_match(a, b):
    return b.startswith(a) and (len(b) == len(a) or b[len(a)] == "-")


def select_language(ranges, available, default: str) -> str:
    """Choose a language from ``available`` for the given ranges.

    A range matches a tag when they are equal, or when either is a prefix of
    the other at a subtag boundary, so ``es-MX`` is served ``es``. Exact
    matches win over prefix matches of the same quality. Falls back to
    ``default``.
    """
    by_lower = {t.lower(): t for t in sorted(available)}
    excluded = set()
    for r in ranges:
        if r.quality == 0 and r.range != "*":
            excluded.update(t for t in by_lower if _prefix_match(r.range.lower(), t))
    for r in ranges:
        if r.quality <= 0:
            continue
        rng = r.range.lower()
        if rng == "*":
            candidates = [t for t in by_lower if t not in excluded]
            if default.lower() in candidates:
                return by_lower[default.lower()]
            if candidates:
                return by_lower[candidates[0]]
            continue
        if rng in by_lower and rng not in excluded:
            return by_lower[rng]
        for t in by_lower:
            if t not in excluded and (_prefix_match(rng, t) or _prefix_match(t, rng)):
                return by_lower[t]
    return default
