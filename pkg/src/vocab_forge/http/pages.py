"""HTML+RDFa rendering of statement, scheme and error pages."""

from __future__ import annotations

import functools
from pathlib import Path

import jinja2

from ..rdf.namespaces import VOCAB_PREFIXES
from ..uris import DATA, EXTENSIONS, PAGE, SCHEME_DATA, SCHEME_PAGE, ResourceRef

_BUILTIN_TEMPLATES = Path(__file__).parent / "templates"

# Endonyms shown on translation links; unknown tags are shown as-is.
LANGUAGE_NAMES = {
    "de": "Deutsch",
    "en": "English",
    "es": "Español",
    "fi": "Suomi",
    "fr": "Français",
    "it": "Italiano",
    "nl": "Nederlands",
    "pl": "Polski",
    "pt": "Português",
    "sv": "Svenska",
}

PARAM_LABELS = {"date": "Date", "relatedURL": "Related URL"}

_RDFA_PREFIXES = " ".join(f"{k}: {v}" for k, v in sorted(VOCAB_PREFIXES.items()))

_MEDIA_TYPES = {"ttl": "text/turtle", "json": "application/ld+json"}
_FORMAT_NAMES = {"ttl": "Turtle", "json": "JSON-LD"}


@functools.lru_cache(maxsize=8)
def _environment(template_dir: str | None) -> jinja2.Environment:
    paths = [str(_BUILTIN_TEMPLATES)]
    if template_dir:
        paths.insert(0, template_dir)
    return jinja2.Environment(
        loader=jinja2.FileSystemLoader(paths),
        autoescape=True,
        trim_blocks=True,
        lstrip_blocks=True,
        keep_trailing_newline=True,
    )


def _pick(textset, language, default):
    """(text, tag) in ``language``, else the default language, else None."""
    for tag in (language, default):
        if tag in textset:
            return textset[tag], tag
    return None


def _notes(notes, language, default):
    for tag in (language, default):
        if notes.get(tag):
            return [(text, tag) for text in notes[tag]]
    return []


def _translations(ref: ResourceRef, languages, selected):
    kept = tuple((k, v) for k, v in ref.params if k != "language")
    out = []
    for tag in sorted(languages):
        if not tag:
            continue
        page = ref.page_ref(params=kept + (("language", tag),))
        out.append({
            "tag": tag,
            "name": LANGUAGE_NAMES.get(tag.split("-")[0], tag),
            "href": page.path(),
            "current": tag == selected,
        })
    return out


def _downloads(ref: ResourceRef):
    kind = SCHEME_DATA if ref.is_scheme else DATA
    return [
        {"href": ref.as_kind(kind, extension=ext).path(), "type": _MEDIA_TYPES[ext], "name": _FORMAT_NAMES[ext]}
        for ext in EXTENSIONS
    ]


def _template_dir(cfg):
    return str(cfg.template_dir) if cfg is not None and cfg.template_dir else None


def render_page(s, language, params, snap, cfg) -> str:
    """The human-readable page of statement ``s`` in ``language``.

    Fields lacking a translation fall back to the default language; every
    literal carries its actual tag so the RDFa stays truthful.
    """
    default = cfg.default_language
    base = cfg.base_uri
    ref = ResourceRef(PAGE, s.version, s.id, params=params)
    extra = [
        {"name": name, "label": PARAM_LABELS.get(name, name), "value": value, "is_url": name == "relatedURL"}
        for name, value in params
        if name != "language"
    ]
    context = {
        "lang": language,
        "prefixes": _RDFA_PREFIXES,
        "uri": s.uri(base),
        "s": s,
        "pref_label": _pick(s.pref_label, language, default),
        "definition": _pick(s.definition, language, default),
        "scope_note": _pick(s.scope_note, language, default),
        "history_note": _pick(s.history_note or {}, language, default),
        "notes": _notes(s.notes, language, default),
        "extra": extra,
        "translations": _translations(ref, s.languages(), language),
        "downloads": _downloads(ref),
        "scheme_page": ResourceRef(SCHEME_PAGE, s.version).path(),
        "version": str(s.version),
    }
    return _environment(_template_dir(cfg)).get_template("statement.html").render(context)


def render_scheme_page(scheme, language, cfg) -> str:
    """Overview of one vocabulary version, grouped by collection."""
    default = cfg.default_language
    base = cfg.base_uri
    ref = ResourceRef(SCHEME_PAGE, scheme.version)

    def entry(ident):
        s = scheme.get(ident)
        label = _pick(s.pref_label, language, default) if s else None
        return {"id": ident, "uri": s.uri(base) if s else "", "label": label,
                "page": ResourceRef(PAGE, scheme.version, ident).path()}

    grouped = set()
    collections = []
    for coll in scheme.collections:
        members = [entry(i) for i in coll.members if i in scheme]
        grouped.update(coll.members)
        collections.append({"key": coll.key, "label": _pick(coll.labels, language, default), "members": members})
    ungrouped = [entry(s.id) for s in scheme.members if s.id not in grouped]
    notes = [(text, lang) for lang, text in scheme.editorial_notes if lang in (language, default, "")]
    context = {
        "lang": language,
        "prefixes": _RDFA_PREFIXES,
        "uri": scheme.uri.value,
        "title": _pick(scheme.title, language, default),
        "version": str(scheme.version),
        "collections": collections,
        "ungrouped": ungrouped,
        "editorial_notes": notes,
        "translations": _translations(ref, scheme.languages() | set(scheme.title), language),
        "downloads": _downloads(ref),
    }
    return _environment(_template_dir(cfg)).get_template("scheme.html").render(context)


def render_error(status, reason, message, alternates=(), cfg=None) -> str:
    links = [{"href": v.uri, "type": v.media_type} for v in alternates]
    return _environment(_template_dir(cfg)).get_template("error.html").render(
        status=status, reason=reason, message=message, alternates=links)
