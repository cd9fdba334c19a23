"""Rights statements, collections and concept schemes as value objects.

A text set maps a language tag to its text; notes map a tag to a tuple of
texts. The empty tag ``""`` stands for a literal that had no language tag,
which validation reports.
"""

from __future__ import annotations

import datetime
from dataclasses import dataclass, field, replace
from typing import Mapping

from ..identifiers import Version
from ..rdf.terms import Iri
from ..uris import scheme_uri, statement_uri

MATCH_RELATIONS = ("closeMatch", "exactMatch", "broadMatch", "narrowMatch", "relatedMatch")

TextSet = Mapping[str, str]


def _freeze_notes(notes):
    return {lang: tuple(sorted(texts)) for lang, texts in sorted(notes.items())}


@dataclass(frozen=True)
class RightsStatement:
    id: str
    version: Version
    pref_label: dict
    in_scheme: Iri
    definition: dict = field(default_factory=dict)
    notes: dict = field(default_factory=dict)
    scope_note: dict = field(default_factory=dict)
    creator: Iri | None = None
    modified: datetime.date | None = None
    related_matches: tuple = ()
    replaced_by: Iri | None = None
    replaces: Iri | None = None
    history_note: dict | None = None
    deprecated: bool = False

    def __post_init__(self):
        # Graphs are unordered, so multi-valued fields are kept sorted to make
        # graph round trips exact.
        object.__setattr__(self, "pref_label", dict(sorted(self.pref_label.items())))
        object.__setattr__(self, "definition", dict(sorted(self.definition.items())))
        object.__setattr__(self, "scope_note", dict(sorted(self.scope_note.items())))
        object.__setattr__(self, "notes", _freeze_notes(self.notes))
        if self.history_note is not None:
            object.__setattr__(self, "history_note", dict(sorted(self.history_note.items())))
        for rel, _ in self.related_matches:
            if rel not in MATCH_RELATIONS:
                raise ValueError(f"unknown mapping relation {rel!r}")
        object.__setattr__(self, "related_matches", tuple(sorted(self.related_matches)))

    @property
    def identifier(self):
        return self.id

    def uri(self, base: str) -> str:
        return statement_uri(base, self.id, self.version)

    def languages(self):
        return set(self.pref_label)

    def evolve(self, **changes) -> "RightsStatement":
        return replace(self, **changes)


@dataclass(frozen=True)
class StatementCollection:
    key: str
    labels: dict
    members: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "labels", dict(sorted(self.labels.items())))
        object.__setattr__(self, "members", tuple(sorted(self.members)))


@dataclass(frozen=True)
class ConceptScheme:
    version: Version
    uri: Iri
    title: dict
    members: tuple = ()
    collections: tuple = ()
    editorial_notes: tuple = ()
    default_language: str = "en"

    def __post_init__(self):
        object.__setattr__(self, "title", dict(sorted(self.title.items())))
        object.__setattr__(self, "members", tuple(sorted(self.members, key=lambda m: (m.id, m.version))))
        object.__setattr__(self, "collections", tuple(sorted(self.collections, key=lambda c: c.key)))
        object.__setattr__(self, "editorial_notes", tuple(sorted(tuple(n) for n in self.editorial_notes)))

    @classmethod
    def create(cls, base, version, title, **kwargs):
        return cls(version, Iri(scheme_uri(base, version)), title, **kwargs)

    @property
    def base(self) -> str:
        suffix = f"/vocab/{self.version}/"
        value = self.uri.value
        return value[: -len(suffix)] if value.endswith(suffix) else value.rsplit("/vocab/", 1)[0]

    @property
    def ids(self):
        return [s.id for s in self.members]

    def get(self, ident):
        for s in self.members:
            if s.id == ident:
                return s
        return None

    def __contains__(self, ident):
        return self.get(ident) is not None

    def __getitem__(self, ident):
        s = self.get(ident)
        if s is None:
            raise KeyError(ident)
        return s

    def __len__(self):
        return len(self.members)

    def languages(self):
        """Language inventory: every tag used by any member's labels."""
        langs = set()
        for s in self.members:
            langs |= set(s.pref_label) | set(s.definition)
        langs.discard("")
        return langs

    def evolve(self, **changes) -> "ConceptScheme":
        return replace(self, **changes)
