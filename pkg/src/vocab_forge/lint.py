"""Checks on how provider object metadata references rights statements.

Only IRI-valued rights triples are examined; free-text ``dc:rights``
literals and IRIs outside the vocabulary base (Creative Commons licences,
for instance) are left alone.
"""

from __future__ import annotations

from urllib.parse import urlsplit

from . import DEFAULT_BASE
from .errors import UriError
from .findings import ERROR, INFO, Finding
from .rdf.namespaces import DC, DCTERMS, EDM, ODRL, ODRL_W3C_ORG
from .rdf.terms import BlankNode, Graph, Iri
from .uris import DATA, PAGE, SCHEME, SCHEME_DATA, SCHEME_PAGE, parse_path

RIGHTS_PREDICATES = (EDM.rights, DCTERMS.rights, DC.rights)
INHERIT_PREDICATES = (ODRL.inheritFrom, ODRL_W3C_ORG.inheritFrom)

_KIND_CODES = {
    PAGE: ("PAGE_URI_IN_METADATA", "a human-readable page URI is used where the statement URI belongs"),
    SCHEME_PAGE: ("PAGE_URI_IN_METADATA", "a human-readable page URI is used where the statement URI belongs"),
    DATA: ("DATA_URI_IN_METADATA", "a data document URI is used where the statement URI belongs"),
    SCHEME_DATA: ("DATA_URI_IN_METADATA", "a data document URI is used where the statement URI belongs"),
    SCHEME: ("SCHEME_URI_IN_METADATA", "the vocabulary URI names no rights statement"),
}


def _subject_label(term):
    return f"_:{term.label}" if isinstance(term, BlankNode) else term.value


def _known_pairs(known):
    """Accept a snapshot, schemes, or (id, version) pairs."""
    if hasattr(known, "schemes"):
        known = known.schemes.values()
    pairs = set()
    for item in known:
        if hasattr(item, "members"):
            pairs.update((s.id, s.version) for s in item.members)
        else:
            ident, version = item
            pairs.add((ident, version))
    return pairs


def _statement_ref(iri: Iri, base: str):
    """(ref, finding-args) for an IRI under ``base``; ref is None when unparseable."""
    parts = urlsplit(iri.value[len(base):])
    try:
        return parse_path(parts.path, parts.query), None
    except UriError as exc:
        return None, ("MALFORMED_STATEMENT_URI", f"<{iri.value}> matches no rights statement URI pattern ({exc.message})")


def check_reference(iri: Iri, known_pairs, base: str = DEFAULT_BASE):
    """List (severity, code, message) for one vocabulary reference."""
    base = base.rstrip("/")
    if not iri.value.startswith(base + "/"):
        return []
    ref, problem = _statement_ref(iri, base)
    if ref is None:
        return [(ERROR, *problem)]
    if ref.kind in _KIND_CODES:
        code, message = _KIND_CODES[ref.kind]
        return [(ERROR, code, f"{message}: <{iri.value}>")]
    out = []
    if not ref.trailing_slash_ok:
        out.append((ERROR, "MISSING_TRAILING_SLASH", f"<{iri.value}> lacks the trailing slash"))
    if ref.params or "?" in iri.value:
        out.append((ERROR, "QUERY_IN_STATEMENT_URI", f"<{iri.value}> carries query parameters"))
    if (ref.id, ref.version) not in known_pairs:
        out.append((ERROR, "UNKNOWN_STATEMENT", f"{ref.id} {ref.version} is not in the vocabulary"))
    return out


def lint_graph(graph: Graph, known, base: str = DEFAULT_BASE, source: str = "") -> list[Finding]:
    """All findings for one metadata graph, in a stable order."""
    base = base.rstrip("/")
    pairs = _known_pairs(known)
    findings = []
    for predicate in RIGHTS_PREDICATES:
        for triple in graph:
            if triple.predicate != predicate:
                continue
            obj = triple.object
            if isinstance(obj, Iri):
                for severity, code, message in check_reference(obj, pairs, base):
                    findings.append(Finding(severity, code, message, _subject_label(triple.subject), source))
            elif isinstance(obj, BlankNode):
                findings += _custom_statement(graph, obj, pairs, base, source)
    return sorted(set(findings), key=Finding.sort_key)


def _custom_statement(graph, node, pairs, base, source):
    out = []
    label = _subject_label(node)
    for predicate in INHERIT_PREDICATES:
        for target in graph.objects(node, predicate):
            if not isinstance(target, Iri):
                continue
            problems = check_reference(target, pairs, base)
            if problems:
                out += [Finding(sev, code, msg, label, source) for sev, code, msg in problems]
            elif target.value.startswith(base + "/"):
                out.append(Finding(
                    INFO, "CUSTOM_STATEMENT_PATTERN",
                    f"customized statement derived from <{target.value}>", label, source))
    return out
