"""Structural checks that decide whether a scheme can be published."""

from __future__ import annotations

from collections import Counter

from ..conneg import is_wellformed_bcp47
from ..findings import ERROR, WARNING, Finding, ValidationReport
from ..identifiers import is_statement_id
from ..uris import scheme_uri
from .model import ConceptScheme, RightsStatement


def _check_textset(findings, subject, field, textset, default_language, required):
    if required and default_language not in textset:
        findings.append(Finding(
            ERROR, "MISSING_DEFAULT_LANGUAGE",
            f"{field} has no value in the default language {default_language!r}", subject))
    for lang, value in textset.items():
        texts = value if isinstance(value, tuple) else (value,)
        if lang == "":
            findings.append(Finding(ERROR, "MISSING_LANGUAGE_TAG", f"{field} literal has no language tag", subject))
        elif not is_wellformed_bcp47(lang):
            findings.append(Finding(ERROR, "MALFORMED_LANGUAGE_TAG", f"{field} uses malformed tag {lang!r}", subject))
        if any(not t.strip() for t in texts):
            findings.append(Finding(ERROR, "EMPTY_TEXT", f"{field}@{lang} is empty", subject))


def _check_vocab_link(findings, subject, field, iri, base):
    if iri is None:
        return
    value = iri.value
    if value.startswith(base + "/vocab/") and not value.endswith("/"):
        findings.append(Finding(ERROR, "MALFORMED_URI", f"{field} <{value}> lacks the trailing slash", subject))


def _check_statement(findings, s: RightsStatement, scheme: ConceptScheme, languages):
    base = scheme.base
    subject = s.uri(base) if is_statement_id(s.id) else s.id
    lang = scheme.default_language
    if not is_statement_id(s.id):
        findings.append(Finding(ERROR, "MALFORMED_ID", f"identifier {s.id!r} is not a valid statement id", subject))
    if s.version != scheme.version:
        findings.append(Finding(
            ERROR, "VERSION_MISMATCH",
            f"statement version {s.version} differs from scheme version {scheme.version}", subject))
    if s.in_scheme != scheme.uri:
        findings.append(Finding(ERROR, "SCHEME_MISMATCH", f"skos:inScheme is <{s.in_scheme}>, not <{scheme.uri}>", subject))
    _check_textset(findings, subject, "skos:prefLabel", s.pref_label, lang, required=True)
    _check_textset(findings, subject, "skos:definition", s.definition, lang, required=True)
    _check_textset(findings, subject, "skos:scopeNote", s.scope_note, lang, required=False)
    _check_textset(findings, subject, "skos:note", s.notes, lang, required=False)
    _check_textset(findings, subject, "skos:historyNote", s.history_note or {}, lang, required=False)
    for field, iri in (("skos:inScheme", s.in_scheme), ("dcterms:isReplacedBy", s.replaced_by),
                       ("dcterms:replaces", s.replaces)):
        _check_vocab_link(findings, subject, field, iri, base)
    for rel, target in s.related_matches:
        _check_vocab_link(findings, subject, f"skos:{rel}", target, base)
    if s.replaced_by is not None and not s.deprecated:
        findings.append(Finding(
            ERROR, "REPLACED_BY_NOT_DEPRECATED", "dcterms:isReplacedBy is set on a statement not marked deprecated",
            subject))
    for field, textset in (("skos:prefLabel", s.pref_label), ("skos:definition", s.definition)):
        missing = sorted(languages - set(textset))
        if missing:
            findings.append(Finding(
                WARNING, "MISSING_TRANSLATION", f"{field} has no translation for {', '.join(missing)}", subject))


def validate(scheme: ConceptScheme) -> ValidationReport:
    """Report every structural problem; an error-free report means publishable."""
    findings = []
    base = scheme.base
    if scheme.uri.value != scheme_uri(base, scheme.version):
        findings.append(Finding(
            ERROR, "MALFORMED_URI", f"scheme URI does not follow /vocab/{scheme.version}/", scheme.uri.value))
    if not is_wellformed_bcp47(scheme.default_language):
        findings.append(Finding(
            ERROR, "MALFORMED_LANGUAGE_TAG", f"default language {scheme.default_language!r} is malformed",
            scheme.uri.value))
    _check_textset(findings, scheme.uri.value, "dcterms:title", scheme.title, scheme.default_language, required=True)
    for lang, _ in scheme.editorial_notes:
        if lang == "":
            findings.append(Finding(ERROR, "MISSING_LANGUAGE_TAG", "skos:editorialNote has no language tag",
                                    scheme.uri.value))
    counts = Counter(s.id for s in scheme.members)
    for ident, n in sorted(counts.items()):
        if n > 1:
            findings.append(Finding(ERROR, "DUPLICATE_ID", f"{n} members share identifier {ident!r}", ident))
    languages = scheme.languages()
    for s in scheme.members:
        _check_statement(findings, s, scheme, languages)
    for coll in scheme.collections:
        _check_textset(findings, coll.key, "collection skos:prefLabel", coll.labels, scheme.default_language,
                       required=True)
        for ident in coll.members:
            if ident not in scheme:
                findings.append(Finding(
                    ERROR, "UNKNOWN_COLLECTION_MEMBER", f"collection {coll.key} lists unknown statement {ident}",
                    coll.key))
    return ValidationReport(tuple(findings))
