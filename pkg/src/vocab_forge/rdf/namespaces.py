"""Namespaces used by the vocabulary and by provider metadata."""

from __future__ import annotations

from .terms import Iri


class Namespace:
    """A namespace IRI; attribute or item access mints member IRIs.

    >>> SKOS.prefLabel
    Iri(value='http://www.w3.org/2004/02/skos/core#prefLabel')
    """

    __slots__ = ("_uri",)

    def __init__(self, uri: str):
        self._uri = uri

    def __getattr__(self, name):
        if name.startswith("__"):
            raise AttributeError(name)
        return Iri(self._uri + name)

    def __getitem__(self, name):
        return Iri(self._uri + name)

    def __str__(self):
        return self._uri

    def __repr__(self):
        return f"Namespace({self._uri!r})"


RDF = Namespace("http://www.w3.org/1999/02/22-rdf-syntax-ns#")
RDFS = Namespace("http://www.w3.org/2000/01/rdf-schema#")
XSD = Namespace("http://www.w3.org/2001/XMLSchema#")
CC = Namespace("http://creativecommons.org/ns#")
DC = Namespace("http://purl.org/dc/elements/1.1/")
DCMITYPE = Namespace("http://purl.org/dc/dcmitype/")
DCTERMS = Namespace("http://purl.org/dc/terms/")
EDM = Namespace("http://www.europeana.eu/schemas/edm/")
ODRL = Namespace("http://www.w3.org/ns/odrl/2/")
# Spelling that appears in some published prefix tables; accepted on input.
ODRL_W3C_ORG = Namespace("http://www.w3c.org/ns/odrl/2/")
PREMISCOPY = Namespace("http://id.loc.gov/vocabulary/preservation/copyrightStatus/")
SKOS = Namespace("http://www.w3.org/2004/02/skos/core#")
OWL = Namespace("http://www.w3.org/2002/07/owl#")
ODRS = Namespace("http://schema.theodi.org/odrs#")

RDF_TYPE = RDF.type

# Prefixes written into every vocabulary document.
VOCAB_PREFIXES = {
    "cc": str(CC),
    "dc": str(DC),
    "dcmitype": str(DCMITYPE),
    "dcterms": str(DCTERMS),
    "edm": str(EDM),
    "odrl": str(ODRL),
    "odrs": str(ODRS),
    "owl": str(OWL),
    "premiscopy": str(PREMISCOPY),
    "rdf": str(RDF),
    "skos": str(SKOS),
    "xsd": str(XSD),
}
