"""Hypothesis strategies for graphs and URI references."""

from __future__ import annotations

from hypothesis import strategies as st

from vocab_forge.identifiers import Version
from vocab_forge.rdf import BlankNode, Graph, Iri, Literal, Triple
from vocab_forge.uris import DATA, EXTENSIONS, KINDS, PAGE, SCHEME_DATA, STATEMENT, ResourceRef

EX = "http://example.org/"

local_names = st.sampled_from(["a", "b", "c", "thing", "Thing2", "x-y", "under_score", "n1", "ünï"])
odd_iris = st.sampled_from([
    "http://example.org/path/with/slashes",
    "http://example.org/with.dot",
    "urn:isbn:0451450523",
    "http://other.example/#frag",
    "http://example.org/q?x=1&y=2",
    "http://example.org/",
])
iris = st.one_of(local_names.map(lambda n: Iri(EX + n)), odd_iris.map(Iri))
predicates = st.one_of(
    st.sampled_from(["p", "q", "r"]).map(lambda n: Iri(EX + n)),
    st.just(Iri("http://www.w3.org/1999/02/22-rdf-syntax-ns#type")),
)
blank_nodes = st.sampled_from(["b0", "b1", "b2", "b3", "b4"]).map(BlankNode)

texts = st.one_of(
    st.text(max_size=20),
    st.sampled_from(["", "quote \" inside", "back\\slash", "line\nbreak", "tab\there", "'single'", '"""', "é ☃ 𝄞"]),
)
languages = st.sampled_from(["en", "es", "es-MX", "de-CH", "zh-Hant-TW"])
# Custom datatypes only: rdflib warns about ill-typed lexical forms of xsd types.
datatypes = st.sampled_from(["http://example.org/custom", "http://example.org/dt#other"]).map(Iri)


def _literal(draw):
    kind = draw(st.sampled_from(["plain", "lang", "typed"]))
    text = draw(texts.filter(lambda t: "\r" not in t and not any(0xD800 <= ord(c) <= 0xDFFF for c in t)))
    if kind == "lang":
        return Literal(text, draw(languages))
    if kind == "typed":
        return Literal(text, datatype=draw(datatypes))
    return Literal(text)


literals = st.composite(lambda draw: _literal(draw))()


@st.composite
def triples(draw):
    subject = draw(st.one_of(iris, blank_nodes))
    obj = draw(st.one_of(iris, blank_nodes, literals))
    return Triple(subject, draw(predicates), obj)


@st.composite
def graphs(draw, max_triples=12):
    items = draw(st.lists(triples(), max_size=max_triples))
    prefixes = draw(st.sampled_from([{}, {"ex": EX}, {"ex": EX, "rdf": "http://www.w3.org/1999/02/22-rdf-syntax-ns#"}]))
    return Graph(items, prefixes)


versions = st.builds(Version, st.integers(0, 30), st.integers(0, 30))
statement_ids = st.from_regex(r"[A-Za-z]{1,6}(-[A-Za-z]{1,4}){0,2}", fullmatch=True)
param_names = st.sampled_from(["date", "relatedURL", "language", "bogus"])
param_values = st.sampled_from(["2029-11-17", "http://example.com/x?a=b&c=d", "es", "a b", "ü", "", "x=y"])


@st.composite
def resource_refs(draw):
    kind = draw(st.sampled_from(KINDS))
    ident = draw(statement_ids) if kind in (STATEMENT, DATA, PAGE) else None
    extension = draw(st.sampled_from((None,) + EXTENSIONS)) if kind in (DATA, SCHEME_DATA) else None
    params = tuple(draw(st.lists(st.tuples(param_names, param_values), max_size=3)))
    return ResourceRef(kind, draw(versions), ident, extension, params)
