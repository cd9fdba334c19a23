"""RDF 1.1 terms, triples and graphs. All values are immutable."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping, Union

from ..conneg import is_wellformed_bcp47

_SCHEME_RE = re.compile(r"[A-Za-z][A-Za-z0-9+.\-]*:")
_IRI_FORBIDDEN_RE = re.compile(r'[\x00-\x20<>"{}|^`\\]')

XSD_STRING = "http://www.w3.org/2001/XMLSchema#string"
RDF_LANGSTRING = "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString"


def is_absolute_iri(value) -> bool:
    return (
        isinstance(value, str)
        and _SCHEME_RE.match(value) is not None
        and _IRI_FORBIDDEN_RE.search(value) is None
    )


@dataclass(frozen=True, order=True)
class Iri:
    value: str

    def __post_init__(self):
        if not is_absolute_iri(self.value):
            raise ValueError(f"not an absolute IRI: {self.value!r}")

    def __str__(self):
        return self.value


@dataclass(frozen=True, order=True)
class BlankNode:
    label: str

    def __post_init__(self):
        if not self.label or not re.fullmatch(r"[\w.\-]+", self.label):
            raise ValueError(f"bad blank node label: {self.label!r}")

    def __str__(self):
        return f"_:{self.label}"


@dataclass(frozen=True)
class Literal:
    """A literal; language tags are stored lower-cased.

    ``xsd:string`` is the implicit datatype of plain literals and is
    normalised away.
    """

    lexical: str
    language: str | None = None
    datatype: Iri | None = None

    def __post_init__(self):
        if not isinstance(self.lexical, str):
            raise TypeError("literal lexical form must be a string")
        if self.language is not None:
            if self.datatype is not None and self.datatype.value != RDF_LANGSTRING:
                raise ValueError("a literal cannot have both a language and a datatype")
            if not is_wellformed_bcp47(self.language):
                raise ValueError(f"malformed language tag: {self.language!r}")
            object.__setattr__(self, "language", self.language.lower())
            object.__setattr__(self, "datatype", None)
        elif self.datatype is not None:
            if not isinstance(self.datatype, Iri):
                raise TypeError("datatype must be an Iri")
            if self.datatype.value == XSD_STRING:
                object.__setattr__(self, "datatype", None)
            elif self.datatype.value == RDF_LANGSTRING:
                raise ValueError("rdf:langString requires a language tag")

    def __str__(self):
        if self.language:
            return f'"{self.lexical}"@{self.language}'
        if self.datatype:
            return f'"{self.lexical}"^^<{self.datatype}>'
        return f'"{self.lexical}"'


Subject = Union[Iri, BlankNode]
Term = Union[Iri, BlankNode, Literal]


def term_key(term):
    """Total order over terms: IRIs, then blank nodes, then literals."""
    if isinstance(term, Iri):
        return (0, term.value, "", "")
    if isinstance(term, BlankNode):
        return (1, term.label, "", "")
    return (2, term.lexical, term.language or "", term.datatype.value if term.datatype else "")


@dataclass(frozen=True)
class Triple:
    subject: Subject
    predicate: Iri
    object: Term

    def __post_init__(self):
        if not isinstance(self.subject, (Iri, BlankNode)):
            raise TypeError(f"subject must be an IRI or blank node, got {self.subject!r}")
        if not isinstance(self.predicate, Iri):
            raise TypeError(f"predicate must be an IRI, got {self.predicate!r}")
        if not isinstance(self.object, (Iri, BlankNode, Literal)):
            raise TypeError(f"object must be an RDF term, got {self.object!r}")

    def __iter__(self):
        return iter((self.subject, self.predicate, self.object))

    def sort_key(self):
        return (term_key(self.subject), term_key(self.predicate), term_key(self.object))


class Graph:
    """An immutable set of triples plus a prefix table.

    >>> g = Graph([Triple(Iri("http://x/s"), Iri("http://x/p"), Literal("o"))])
    >>> len(g)
    1
    """

    __slots__ = ("_triples", "_prefixes", "_by_subject")

    def __init__(self, triples: Iterable[Triple] = (), prefixes: Mapping[str, str] | None = None):
        ts = frozenset(triples)
        for t in ts:
            if not isinstance(t, Triple):
                raise TypeError(f"not a Triple: {t!r}")
        pfx = {}
        for k, v in (prefixes or {}).items():
            pfx[k] = v.value if isinstance(v, Iri) else str(v)
        self._triples = ts
        self._prefixes = MappingProxyType(pfx)
        self._by_subject = None

    @property
    def triples(self) -> frozenset:
        return self._triples

    @property
    def prefixes(self) -> Mapping[str, str]:
        return self._prefixes

    def __len__(self):
        return len(self._triples)

    def __iter__(self):
        return iter(sorted(self._triples, key=Triple.sort_key))

    def __contains__(self, triple):
        return triple in self._triples

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self._triples == other._triples

    def __hash__(self):
        return hash(self._triples)

    def __repr__(self):
        return f"<Graph with {len(self)} triples>"

    def union(self, *others: "Graph") -> "Graph":
        triples = set(self._triples)
        prefixes = dict(self._prefixes)
        for o in others:
            triples |= o._triples
            for k, v in o._prefixes.items():
                prefixes.setdefault(k, v)
        return Graph(triples, prefixes)

    def with_prefixes(self, prefixes: Mapping[str, str]) -> "Graph":
        return Graph(self._triples, prefixes)

    def _index(self):
        if self._by_subject is None:
            idx = {}
            for t in self._triples:
                idx.setdefault(t.subject, []).append(t)
            self._by_subject = idx
        return self._by_subject

    def subjects(self, predicate=None, obj=None):
        out = {
            t.subject
            for t in self._triples
            if (predicate is None or t.predicate == predicate) and (obj is None or t.object == obj)
        }
        return sorted(out, key=term_key)

    def objects(self, subject, predicate=None):
        out = [
            t.object
            for t in self._index().get(subject, ())
            if predicate is None or t.predicate == predicate
        ]
        return sorted(out, key=term_key)

    def predicate_objects(self, subject):
        return sorted(((t.predicate, t.object) for t in self._index().get(subject, ())),
                      key=lambda po: (term_key(po[0]), term_key(po[1])))

    def value(self, subject, predicate):
        """The single object of (subject, predicate), or None; raises if several."""
        objs = self.objects(subject, predicate)
        if len(objs) > 1:
            raise ValueError(f"{subject} has several {predicate} values")
        return objs[0] if objs else None

    def blank_nodes(self):
        nodes = set()
        for t in self._triples:
            if isinstance(t.subject, BlankNode):
                nodes.add(t.subject)
            if isinstance(t.object, BlankNode):
                nodes.add(t.object)
        return nodes
