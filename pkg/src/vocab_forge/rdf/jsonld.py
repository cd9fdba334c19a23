"""Compacted JSON-LD output with a context built from the graph's prefixes."""

from __future__ import annotations

import json
import re

from .namespaces import RDF_TYPE
from .terms import BlankNode, Graph, Iri, Literal, term_key

_SAFE_SUFFIX_RE = re.compile(r"[A-Za-z0-9_](?:[A-Za-z0-9_.\-]*[A-Za-z0-9_\-])?")
# JSON-LD 1.1 only treats simple terms as prefixes when they end in a gen-delim.
_GEN_DELIMS = ":/?#[]@"


class _Compactor:
    def __init__(self, graph):
        self.prefixes = {
            p: ns for p, ns in sorted(graph.prefixes.items())
            if ns and ns[-1] in _GEN_DELIMS and not p.startswith("@") and "://" not in p
        }
        self.by_length = sorted(self.prefixes.items(), key=lambda kv: (-len(kv[1]), kv[0]))
        self.labels = {}

    def iri(self, iri: Iri):
        for prefix, ns in self.by_length:
            suffix = iri.value[len(ns):]
            if iri.value.startswith(ns) and _SAFE_SUFFIX_RE.fullmatch(suffix):
                return f"{prefix}:{suffix}"
        return iri.value

    def bnode(self, node):
        if node not in self.labels:
            self.labels[node] = f"_:b{len(self.labels)}"
        return self.labels[node]

    def node_id(self, term):
        return self.iri(term) if isinstance(term, Iri) else self.bnode(term)

    def value(self, term):
        if isinstance(term, Literal):
            if term.language:
                return {"@value": term.lexical, "@language": term.language}
            if term.datatype:
                return {"@value": term.lexical, "@type": self.iri(term.datatype)}
            return term.lexical
        return {"@id": self.node_id(term)}


def jsonld_object(graph: Graph) -> dict:
    """The JSON-LD document as a Python object (see :func:`serialize_jsonld`)."""
    c = _Compactor(graph)
    nodes = []
    subjects = sorted({t.subject for t in graph.triples}, key=lambda s: (isinstance(s, BlankNode), term_key(s)))
    for s in subjects:
        node = {"@id": c.node_id(s)}
        types, props = [], {}
        for p, o in graph.predicate_objects(s):
            if p == RDF_TYPE and isinstance(o, Iri):
                types.append(c.iri(o))
            else:
                props.setdefault(c.iri(p), []).append(c.value(o))
        if types:
            node["@type"] = types[0] if len(types) == 1 else types
        for key in sorted(props):
            vals = props[key]
            node[key] = vals[0] if len(vals) == 1 else vals
        nodes.append(node)
    return {"@context": dict(c.prefixes), "@graph": nodes}


def serialize_jsonld(graph: Graph) -> str:
    """Deterministic compacted JSON-LD; no remote contexts are referenced."""
    return json.dumps(jsonld_object(graph), indent=2, ensure_ascii=False) + "\n"
