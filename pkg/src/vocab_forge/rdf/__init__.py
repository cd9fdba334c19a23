"""A minimal RDF 1.1 toolkit: terms, Turtle, JSON-LD output, isomorphism."""

from .compare import graph_isomorphic
from .jsonld import jsonld_object, serialize_jsonld
from .terms import BlankNode, Graph, Iri, Literal, Triple, is_absolute_iri
from .turtle import parse_turtle, serialize_turtle

__all__ = [
    "BlankNode",
    "Graph",
    "Iri",
    "Literal",
    "Triple",
    "graph_isomorphic",
    "is_absolute_iri",
    "jsonld_object",
    "parse_turtle",
    "serialize_jsonld",
    "serialize_turtle",
]
