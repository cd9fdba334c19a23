"""Alternates (RFC 2295) and Link (RFC 5988) header values."""

from __future__ import annotations

from ..uris import Variant


def _variant(v) -> str:
    if isinstance(v, Variant):
        uri, quality, media_type = v.uri, v.quality, v.media_type
    else:
        uri, quality, *rest = v
        media_type = rest[0] if rest else None
    entry = f'{{"{uri}" {quality:.1f}'
    if media_type:
        entry += f" {{type {media_type}}}"
    return entry + "}"


def build_alternates(variants) -> str:
    """Render fallback variants as an Alternates header value.

    >>> build_alternates([("/vocab/InC/1.0/", 0.9, None)])
    '{"/vocab/InC/1.0/" 0.9}'
    """
    variants = list(variants)
    if not variants:
        raise ValueError("an Alternates header needs at least one variant")
    return ", ".join(_variant(v) for v in variants)


def build_link(target: str, rel: str) -> str:
    return f'<{target}>; rel="{rel}"'
