"""Editorial operations. Each returns new scheme values; inputs are never modified."""

from __future__ import annotations

import datetime
from typing import Mapping

from ..conneg import is_wellformed_bcp47
from ..errors import EditorialError
from ..identifiers import Version, is_statement_id
from ..rdf.terms import Iri
from ..uris import scheme_uri, statement_uri
from .model import ConceptScheme, RightsStatement

TEXT_FIELDS = ("pref_label", "definition", "scope_note", "notes", "history_note")


def add_statement(scheme: ConceptScheme, s: RightsStatement) -> ConceptScheme:
    """Add a new statement to the current version; no new version is needed."""
    if not is_statement_id(s.id):
        raise EditorialError(f"malformed statement identifier {s.id!r}", "MALFORMED_ID")
    if s.id in scheme:
        raise EditorialError(f"{s.id} already exists in scheme {scheme.version}", "DUPLICATE_ID")
    if s.version != scheme.version:
        raise EditorialError(
            f"{s.id} has version {s.version}; new statements join the current version {scheme.version}",
            "VERSION_MISMATCH")
    if s.in_scheme != scheme.uri:
        raise EditorialError(f"{s.id} points at scheme <{s.in_scheme}>, not <{scheme.uri}>", "SCHEME_MISMATCH")
    return scheme.evolve(members=scheme.members + (s,))


def create_new_version(
    current: ConceptScheme,
    new_version: Version,
    deprecations: Mapping[str, str | None] | None = None,
    history_notes: Mapping[str, Mapping[str, str]] | None = None,
) -> tuple[ConceptScheme, ConceptScheme]:
    """Publish ``new_version`` of the vocabulary.

    Returns ``(new, updated_old)``. Every statement not listed in
    ``deprecations`` moves to ``new_version`` together, linked both ways
    with dcterms:replaces / dcterms:isReplacedBy. A deprecated statement is
    left out of the new scheme; when its replacement id is given, the old
    version points at that statement's new URI. ``history_notes`` attach a
    skos:historyNote to the old versions.
    """
    deprecations = dict(deprecations or {})
    history_notes = dict(history_notes or {})
    if new_version <= current.version:
        raise EditorialError(
            f"new version {new_version} must be greater than {current.version}", "NON_MONOTONIC_VERSION")
    for ident in list(deprecations) + list(history_notes):
        if ident not in current:
            raise EditorialError(f"{ident} is not a member of scheme {current.version}", "UNKNOWN_STATEMENT")
    for ident, notes in history_notes.items():
        for lang, text in notes.items():
            if not is_wellformed_bcp47(lang) or not text.strip():
                raise EditorialError(f"history note for {ident} needs a language tag and text", "MALFORMED_TEXT")

    base = current.base
    new_uri = Iri(scheme_uri(base, new_version))
    carried = [s for s in current.members if not s.deprecated and s.id not in deprecations]
    carried_ids = {s.id for s in carried}
    for ident, replacement in deprecations.items():
        if replacement is not None and replacement not in carried_ids:
            raise EditorialError(
                f"replacement {replacement} for {ident} is not part of version {new_version}", "UNKNOWN_REPLACEMENT")

    successors = []
    for s in carried:
        successors.append(s.evolve(
            version=new_version,
            in_scheme=new_uri,
            replaces=Iri(s.uri(base)),
            replaced_by=None,
            deprecated=False,
            history_note=None,
        ))

    old_members = []
    for s in current.members:
        changes = {}
        if s.id in carried_ids:
            changes.update(deprecated=True, replaced_by=Iri(statement_uri(base, s.id, new_version)))
        elif s.id in deprecations:
            changes["deprecated"] = True
            replacement = deprecations[s.id]
            if replacement is not None:
                changes["replaced_by"] = Iri(statement_uri(base, replacement, new_version))
        if s.id in history_notes:
            merged = dict(s.history_note or {})
            merged.update(history_notes[s.id])
            changes["history_note"] = merged
        old_members.append(s.evolve(**changes) if changes else s)

    collections = []
    for coll in current.collections:
        kept = tuple(i for i in coll.members if i in carried_ids)
        if kept:
            collections.append(type(coll)(coll.key, dict(coll.labels), kept))

    new = ConceptScheme(
        version=new_version,
        uri=new_uri,
        title=dict(current.title),
        members=tuple(successors),
        collections=tuple(collections),
        editorial_notes=current.editorial_notes,
        default_language=current.default_language,
    )
    updated_old = current.evolve(members=tuple(old_members))
    return new, updated_old


def apply_minor_change(
    scheme: ConceptScheme,
    ident: str,
    field: str,
    language: str,
    new_text: str,
    changed_on: datetime.date,
    index: int | None = None,
) -> ConceptScheme:
    """Correct or translate one literal in place, keeping the version.

    A language without an entry for ``field`` gets a new one (translation
    integration). For ``notes`` pass ``index`` to replace one note of a
    language; without it the text is appended.
    """
    s = scheme.get(ident)
    if s is None:
        raise EditorialError(f"no statement {ident!r} in scheme {scheme.version}", "UNKNOWN_STATEMENT")
    if field not in TEXT_FIELDS:
        raise EditorialError(f"{field!r} is not a literal-valued field", "UNKNOWN_FIELD")
    if not is_wellformed_bcp47(language):
        raise EditorialError(f"malformed language tag {language!r}", "MALFORMED_LANGUAGE_TAG")
    if not new_text.strip():
        raise EditorialError("replacement text is empty", "MALFORMED_TEXT")
    language = language.lower()

    if field == "notes":
        notes = {k: list(v) for k, v in s.notes.items()}
        entries = notes.setdefault(language, [])
        if index is None:
            entries.append(new_text)
        elif 0 <= index < len(entries):
            entries[index] = new_text
        else:
            raise EditorialError(f"{ident} has no note {index} in {language!r}", "UNKNOWN_ENTRY")
        value = notes
    else:
        value = dict(getattr(s, field) or {})
        value[language] = new_text
    updated = s.evolve(**{field: value, "modified": changed_on})
    members = tuple(updated if m is s else m for m in scheme.members)
    return scheme.evolve(members=members)
