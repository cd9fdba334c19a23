"""Mapping between the vocabulary model and RDF graphs."""

from __future__ import annotations

import datetime

from ..errors import ModelError, UriError
from ..identifiers import Version
from ..rdf.namespaces import DC, DCTERMS, OWL, RDF_TYPE, SKOS, VOCAB_PREFIXES, XSD
from ..rdf.terms import BlankNode, Graph, Iri, Literal, Triple
from ..uris import STATEMENT, parse_path, statement_uri
from .model import MATCH_RELATIONS, ConceptScheme, RightsStatement, StatementCollection

_TRUE = Literal("true", datatype=XSD.boolean)


def _text(value, lang):
    return Literal(value, lang or None)


def _textset_triples(subject, predicate, textset):
    for lang, value in textset.items():
        yield Triple(subject, predicate, _text(value, lang))


def statement_triples(s: RightsStatement, base: str):
    subject = Iri(s.uri(base))
    yield Triple(subject, RDF_TYPE, DCTERMS.RightsStatement)
    yield Triple(subject, RDF_TYPE, SKOS.Concept)
    yield from _textset_triples(subject, SKOS.prefLabel, s.pref_label)
    yield from _textset_triples(subject, SKOS.definition, s.definition)
    yield from _textset_triples(subject, SKOS.scopeNote, s.scope_note)
    for lang, texts in s.notes.items():
        for text in texts:
            yield Triple(subject, SKOS.note, _text(text, lang))
    if s.history_note:
        yield from _textset_triples(subject, SKOS.historyNote, s.history_note)
    yield Triple(subject, DC.identifier, Literal(s.id))
    yield Triple(subject, OWL.versionInfo, Literal(str(s.version)))
    yield Triple(subject, SKOS.inScheme, s.in_scheme)
    if s.creator is not None:
        yield Triple(subject, DCTERMS.creator, s.creator)
    if s.modified is not None:
        yield Triple(subject, DCTERMS.modified, Literal(s.modified.isoformat()))
    for rel, target in s.related_matches:
        yield Triple(subject, SKOS[rel], target)
    if s.replaced_by is not None:
        yield Triple(subject, DCTERMS.isReplacedBy, s.replaced_by)
    if s.replaces is not None:
        yield Triple(subject, DCTERMS.replaces, s.replaces)
    if s.deprecated:
        yield Triple(subject, OWL.deprecated, _TRUE)


def statement_to_graph(s: RightsStatement, base: str) -> Graph:
    """The data document for one statement, typed as both a
    dcterms:RightsStatement and a skos:Concept."""
    return Graph(statement_triples(s, base), VOCAB_PREFIXES)


def _textset(g, subject, predicate, what):
    out = {}
    for obj in g.objects(subject, predicate):
        if not isinstance(obj, Literal) or obj.datatype is not None:
            raise ModelError(f"{subject}: {what} must be a plain or language-tagged literal", "MALFORMED_LITERAL")
        lang = obj.language or ""
        if lang in out:
            raise ModelError(f"{subject}: two {what} values for language {lang or '(none)'}", "DUPLICATE_LANGUAGE")
        out[lang] = obj.lexical
    return out


def _single_literal(g, subject, predicate, what, code):
    objs = g.objects(subject, predicate)
    if not objs:
        return None
    if len(objs) > 1 or not isinstance(objs[0], Literal):
        raise ModelError(f"{subject}: expected exactly one {what} literal", code)
    return objs[0].lexical


def _single_iri(g, subject, predicate, what):
    objs = g.objects(subject, predicate)
    if not objs:
        return None
    if len(objs) > 1 or not isinstance(objs[0], Iri):
        raise ModelError(f"{subject}: expected a single {what} IRI", "MALFORMED_LINK")
    return objs[0]


def statement_from_graph(g: Graph, subject: Iri) -> RightsStatement:
    """Rebuild a :class:`RightsStatement`; the inverse of :func:`statement_to_graph`."""
    types = set(g.objects(subject, RDF_TYPE))
    if DCTERMS.RightsStatement not in types or SKOS.Concept not in types:
        raise ModelError(f"{subject} is not typed dcterms:RightsStatement and skos:Concept", "NOT_A_RIGHTS_STATEMENT")
    pref_label = _textset(g, subject, SKOS.prefLabel, "skos:prefLabel")
    if not pref_label:
        raise ModelError(f"{subject}: missing preferred label", "MISSING_PREF_LABEL")
    version_text = _single_literal(g, subject, OWL.versionInfo, "owl:versionInfo", "MALFORMED_VERSION")
    if version_text is None:
        raise ModelError(f"{subject}: missing owl:versionInfo", "MISSING_VERSION")
    if not Version.is_valid(version_text):
        raise ModelError(f"{subject}: malformed version {version_text!r}", "MALFORMED_VERSION")
    version = Version.parse(version_text)
    ident = _single_literal(g, subject, DC.identifier, "dc:identifier", "MALFORMED_IDENTIFIER")
    if ident is None:
        raise ModelError(f"{subject}: missing dc:identifier", "MISSING_IDENTIFIER")
    if not subject.value.endswith(f"/vocab/{ident}/{version}/"):
        raise ModelError(
            f"{subject} does not match the URI pattern for {ident} {version} (/vocab/{ident}/{version}/)",
            "MALFORMED_STATEMENT_URI",
        )
    in_scheme = _single_iri(g, subject, SKOS.inScheme, "skos:inScheme")
    if in_scheme is None:
        raise ModelError(f"{subject}: missing skos:inScheme", "MISSING_SCHEME")

    modified = _single_literal(g, subject, DCTERMS.modified, "dcterms:modified", "MALFORMED_DATE")
    if modified is not None:
        try:
            modified = datetime.date.fromisoformat(modified)
        except ValueError:
            raise ModelError(f"{subject}: dcterms:modified {modified!r} is not a date", "MALFORMED_DATE") from None

    notes = {}
    for obj in g.objects(subject, SKOS.note):
        if not isinstance(obj, Literal) or obj.datatype is not None:
            raise ModelError(f"{subject}: skos:note must be a literal", "MALFORMED_LITERAL")
        notes.setdefault(obj.language or "", []).append(obj.lexical)

    related = []
    for rel in MATCH_RELATIONS:
        for obj in g.objects(subject, SKOS[rel]):
            if not isinstance(obj, Iri):
                raise ModelError(f"{subject}: skos:{rel} must link to an IRI", "MALFORMED_LINK")
            related.append((rel, obj))

    history = _textset(g, subject, SKOS.historyNote, "skos:historyNote")
    deprecated = any(
        isinstance(o, Literal) and o.lexical in ("true", "1") for o in g.objects(subject, OWL.deprecated)
    )
    return RightsStatement(
        id=ident,
        version=version,
        pref_label=pref_label,
        in_scheme=in_scheme,
        definition=_textset(g, subject, SKOS.definition, "skos:definition"),
        notes=notes,
        scope_note=_textset(g, subject, SKOS.scopeNote, "skos:scopeNote"),
        creator=_single_iri(g, subject, DCTERMS.creator, "dcterms:creator"),
        modified=modified,
        related_matches=tuple(related),
        replaced_by=_single_iri(g, subject, DCTERMS.isReplacedBy, "dcterms:isReplacedBy"),
        replaces=_single_iri(g, subject, DCTERMS.replaces, "dcterms:replaces"),
        history_note=history or None,
        deprecated=deprecated,
    )


def scheme_to_graph(scheme: ConceptScheme, base: str | None = None) -> Graph:
    """The whole scheme, members and collections included, as one graph."""
    base = scheme.base if base is None else base
    triples = [
        Triple(scheme.uri, RDF_TYPE, SKOS.ConceptScheme),
        Triple(scheme.uri, OWL.versionInfo, Literal(str(scheme.version))),
    ]
    triples += _textset_triples(scheme.uri, DCTERMS.title, scheme.title)
    for lang, text in scheme.editorial_notes:
        triples.append(Triple(scheme.uri, SKOS.editorialNote, _text(text, lang)))
    uris = {s.id: Iri(s.uri(base)) for s in scheme.members}
    for i, coll in enumerate(scheme.collections):
        node = BlankNode(f"c{i}")
        triples.append(Triple(node, RDF_TYPE, SKOS.Collection))
        triples.append(Triple(node, DC.identifier, Literal(coll.key)))
        triples += _textset_triples(node, SKOS.prefLabel, coll.labels)
        for ident in coll.members:
            target = uris.get(ident) or Iri(statement_uri(base, ident, scheme.version))
            triples.append(Triple(node, SKOS.member, target))
    for s in scheme.members:
        triples += statement_triples(s, base)
    return Graph(triples, VOCAB_PREFIXES)


def _collection(g, node, base):
    key = _single_literal(g, node, DC.identifier, "dc:identifier", "MALFORMED_IDENTIFIER")
    if key is None:
        raise ModelError(f"collection {node} has no dc:identifier", "MISSING_IDENTIFIER")
    members = []
    for obj in g.objects(node, SKOS.member):
        ref = None
        if isinstance(obj, Iri) and obj.value.startswith(base + "/"):
            try:
                ref = parse_path(obj.value[len(base):])
            except UriError:
                ref = None
        if ref is None or ref.kind != STATEMENT:
            raise ModelError(f"collection {key}: member {obj} is not a statement URI", "MALFORMED_COLLECTION")
        members.append(ref.id)
    return StatementCollection(key, _textset(g, node, SKOS.prefLabel, "skos:prefLabel"), tuple(members))


def load_scheme(g: Graph, base: str, default_language: str = "en") -> ConceptScheme:
    """Materialise the single concept scheme described by ``g``."""
    base = base.rstrip("/")
    schemes = g.subjects(RDF_TYPE, SKOS.ConceptScheme)
    if not schemes:
        raise ModelError("no skos:ConceptScheme in document", "NO_SCHEME")
    if len(schemes) > 1:
        raise ModelError(f"ambiguous scheme: {len(schemes)} skos:ConceptScheme subjects", "AMBIGUOUS_SCHEME")
    uri = schemes[0]
    if not isinstance(uri, Iri):
        raise ModelError("the concept scheme must be named by an IRI", "MALFORMED_SCHEME")
    version_text = _single_literal(g, uri, OWL.versionInfo, "owl:versionInfo", "MALFORMED_VERSION")
    if version_text is None:
        raise ModelError(f"{uri}: missing owl:versionInfo", "MISSING_VERSION")
    if not Version.is_valid(version_text):
        raise ModelError(f"{uri}: malformed version {version_text!r}", "MALFORMED_VERSION")

    members = []
    for subject in g.subjects(RDF_TYPE, DCTERMS.RightsStatement):
        if not isinstance(subject, Iri):
            raise ModelError("rights statements must be named by IRIs", "MALFORMED_STATEMENT_URI")
        s = statement_from_graph(g, subject)
        if s.in_scheme != uri:
            raise ModelError(f"{subject} belongs to {s.in_scheme}, not {uri}", "SCHEME_MISMATCH")
        members.append(s)
    collections = [_collection(g, node, base) for node in g.subjects(RDF_TYPE, SKOS.Collection)]
    notes = []
    for obj in g.objects(uri, SKOS.editorialNote):
        if isinstance(obj, Literal):
            notes.append((obj.language or "", obj.lexical))
    return ConceptScheme(
        version=Version.parse(version_text),
        uri=uri,
        title=_textset(g, uri, DCTERMS.title, "dcterms:title"),
        members=tuple(members),
        collections=tuple(collections),
        editorial_notes=tuple(notes),
        default_language=default_language,
    )
