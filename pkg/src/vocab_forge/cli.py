"""Command-line entry point: serve, validate, new-version, export, lint."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import tempfile
from pathlib import Path

from . import DEFAULT_BASE, __version__, sample_vocabulary_path
from .conneg import is_wellformed_bcp47
from .errors import EditorialError, ModelError, TurtleSyntaxError, UriError, VocabForgeError
from .findings import ERROR, WARNING, Finding
from .identifiers import Version
from .lint import lint_graph
from .rdf.terms import Iri
from .rdf.turtle import parse_turtle, serialize_turtle
from .uris import STATEMENT, parse_path
from .vocab import create_new_version, load_scheme, scheme_to_graph, validate

EXIT_OK = 0
EXIT_FINDINGS = 1
EXIT_USAGE = 2

VOCAB_GLOB = "vocab-*.ttl"
EXPORT_FORMATS = {"turtle": "ttl", "jsonld": "json", "html": None}


class UsageError(Exception):
    """Bad arguments or unreadable input; maps to exit status 2."""


# ---------------------------------------------------------------- loading

def vocabulary_files(data) -> list[Path]:
    """Vocabulary files named by ``--data``: a file, or a directory of vocab-*.ttl."""
    if data is None:
        return [Path(sample_vocabulary_path())]
    path = Path(data)
    if path.is_file():
        return [path]
    if path.is_dir():
        files = sorted(path.glob(VOCAB_GLOB))
        if not files:
            raise UsageError(f"{path}: no {VOCAB_GLOB} files")
        return files
    raise UsageError(f"{path}: no such file or directory")


def _read(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror or exc}") from None


def _load_file(path: Path, base: str, language: str):
    """(scheme or None, findings) for one vocabulary file."""
    try:
        graph = parse_turtle(_read(path))
    except TurtleSyntaxError as exc:
        return None, [Finding(ERROR, "PARSE_ERROR", f"line {exc.line}, column {exc.column}: {exc.reason}",
                              source=str(path))]
    try:
        return load_scheme(graph, base, language), []
    except ModelError as exc:
        return None, [Finding(ERROR, exc.code or "MALFORMED_VOCABULARY", exc.message, source=str(path))]


def _load_all(files, base, language):
    schemes, findings = [], []
    for path in files:
        scheme, problems = _load_file(path, base, language)
        findings += problems
        if scheme is not None:
            schemes.append((path, scheme))
    return schemes, findings


# ------------------------------------------------------------- reporting

def _emit(findings, fmt, out=None):
    out = out or sys.stdout
    findings = sorted(findings, key=Finding.sort_key)
    if fmt == "json":
        json.dump({"findings": [f.as_dict() for f in findings]}, out, indent=2, ensure_ascii=False)
        out.write("\n")
    else:
        for f in findings:
            out.write(f"{f}\n")
    errors = sum(f.severity == ERROR for f in findings)
    warnings = sum(f.severity == WARNING for f in findings)
    print(f"{errors} error(s), {warnings} warning(s)", file=sys.stderr)
    return EXIT_FINDINGS if errors else EXIT_OK


# ----------------------------------------------------- cross-version checks

def _vocab_ref(iri: Iri, base: str):
    if iri is None or not iri.value.startswith(base + "/"):
        return None
    try:
        ref = parse_path(iri.value[len(base):])
    except UriError:
        return None
    return ref if ref.kind == STATEMENT else None


def cross_version_findings(loaded, base):
    """Checks spanning versions: successor links, their targets and ordering."""
    findings = []
    by_version = {}
    for path, scheme in loaded:
        if scheme.version in by_version:
            findings.append(Finding(ERROR, "DUPLICATE_VERSION", f"version {scheme.version} is defined twice",
                                    scheme.uri.value, str(path)))
        by_version.setdefault(scheme.version, (path, scheme))
    versions = sorted(by_version)
    for older, newer in zip(versions, versions[1:]):
        path, old = by_version[older]
        new = by_version[newer][1]
        for s in old.members:
            if s.id in new and s.replaced_by is None:
                findings.append(Finding(
                    WARNING, "REPLACED_BY_MISSING",
                    f"{s.id} continues in {newer} but {older} has no dcterms:isReplacedBy", s.uri(base), str(path)))
    for path, scheme in loaded:
        for s in scheme.members:
            for field, target, later in (("dcterms:isReplacedBy", s.replaced_by, True),
                                         ("dcterms:replaces", s.replaces, False)):
                ref = _vocab_ref(target, base)
                if ref is None:
                    continue
                if (ref.version > s.version) != later or ref.version == s.version:
                    findings.append(Finding(
                        ERROR, "NON_MONOTONIC_VERSION",
                        f"{field} <{target.value}> points {'backwards' if later else 'forwards'} in version order",
                        s.uri(base), str(path)))
                elif ref.version in by_version and ref.id not in by_version[ref.version][1]:
                    findings.append(Finding(
                        ERROR, "DANGLING_LINK", f"{field} <{target.value}> names no statement in {ref.version}",
                        s.uri(base), str(path)))
    return findings


# -------------------------------------------------------------- commands

def cmd_validate(args) -> int:
    files = [Path(f) for f in args.files] if args.files else vocabulary_files(args.data)
    loaded, findings = _load_all(files, args.base_uri, args.default_language)
    for path, scheme in loaded:
        findings += [
            Finding(f.severity, f.code, f.message, f.subject, str(path)) for f in validate(scheme).findings
        ]
    findings += cross_version_findings(loaded, args.base_uri)
    return _emit(findings, args.format)


def _atomic_write(path: Path, text: str):
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _parse_deprecations(values):
    out = {}
    for item in values or ():
        ident, sep, replacement = item.partition("=")
        out[ident] = replacement if sep and replacement else None
    return out


def _parse_history_notes(values, language):
    out = {}
    for item in values or ():
        ident, sep, text = item.partition("=")
        if not sep:
            raise UsageError(f"--history-note expects ID=TEXT, got {item!r}")
        out.setdefault(ident, {})[language] = text
    return out


def cmd_new_version(args) -> int:
    try:
        new_version = Version.parse(args.version)
    except VocabForgeError as exc:
        raise UsageError(exc.message) from None
    if args.file:
        current_path = Path(args.file)
    elif args.data:
        files = vocabulary_files(args.data)
        loaded, problems = _load_all(files, args.base_uri, args.default_language)
        if problems:
            return _emit(problems, args.format)
        current_path = max(loaded, key=lambda item: item[1].version)[0]
    else:
        raise UsageError("new-version needs --file or --data")

    current, problems = _load_file(current_path, args.base_uri, args.default_language)
    if current is None:
        return _emit(problems, args.format)
    report = validate(current)
    if report.errors:
        print(f"{current_path}: current vocabulary is not valid", file=sys.stderr)
        return _emit(report.findings, args.format)

    try:
        new, updated_old = create_new_version(
            current, new_version,
            deprecations=_parse_deprecations(args.deprecate),
            history_notes=_parse_history_notes(args.history_note, args.default_language),
        )
    except EditorialError as exc:
        print(f"error: {exc.code}: {exc.message}", file=sys.stderr)
        return EXIT_USAGE

    findings = []
    for scheme in (new, updated_old):
        findings += validate(scheme).errors
    if findings:
        print("refusing to write: the new files would not validate", file=sys.stderr)
        return _emit(findings, args.format)

    out_dir = Path(args.output_dir) if args.output_dir else current_path.parent
    new_path = out_dir / f"vocab-{new_version}.ttl"
    if new_path.exists() and not args.force:
        raise UsageError(f"{new_path} already exists (use --force to overwrite)")
    _atomic_write(new_path, serialize_turtle(scheme_to_graph(new, args.base_uri)))
    _atomic_write(current_path, serialize_turtle(scheme_to_graph(updated_old, args.base_uri)))
    print(f"wrote {new_path} ({len(new)} statements); updated {current_path}", file=sys.stderr)
    return EXIT_OK


def _snapshot(args):
    from .http.service import VocabularySnapshot

    loaded, problems = _load_all(vocabulary_files(args.data), args.base_uri, args.default_language)
    if problems:
        return None, problems
    try:
        return VocabularySnapshot.from_schemes([s for _, s in loaded]), []
    except VocabForgeError as exc:
        return None, [Finding(ERROR, exc.code or "SNAPSHOT_ERROR", exc.message)]


def export_bytes(snap, cfg, ident, version, fmt, language=None) -> bytes:
    """The body the server returns for this statement representation."""
    from .http.service import Request, handle

    ext = EXPORT_FORMATS[fmt]
    if ext is None:
        target = f"/page/{ident}/{version}/" + (f"?language={language}" if language else "")
    else:
        target = f"/data/{ident}/{version}.{ext}"
    resp = handle(Request.get(target), snap, cfg)
    if resp.status != 200:
        raise UsageError(f"{ident} {version}: {resp.status} {resp.reason}")
    return resp.body


def cmd_export(args) -> int:
    from .http.service import ServerConfig

    if args.export_format not in EXPORT_FORMATS:
        raise UsageError(f"unknown format {args.export_format!r}; choose from {', '.join(EXPORT_FORMATS)}")
    try:
        version = Version.parse(args.version)
    except VocabForgeError as exc:
        raise UsageError(exc.message) from None
    snap, problems = _snapshot(args)
    if snap is None:
        _emit(problems, args.format, sys.stderr)
        return EXIT_USAGE
    if snap.statement(args.id, version) is None:
        raise UsageError(f"no statement {args.id} {version} in the vocabulary")
    cfg = ServerConfig(base_uri=args.base_uri, default_language=args.default_language)
    sys.stdout.buffer.write(export_bytes(snap, cfg, args.id, version, args.export_format, args.language))
    sys.stdout.flush()
    return EXIT_OK


def cmd_lint(args) -> int:
    loaded, problems = _load_all(vocabulary_files(args.data), args.base_uri, args.default_language)
    if problems:
        _emit(problems, args.format, sys.stderr)
        return EXIT_USAGE
    schemes = [s for _, s in loaded]
    findings = []
    for name in args.files:
        path = Path(name)
        try:
            graph = parse_turtle(_read(path), base=path.resolve().as_uri())
        except TurtleSyntaxError as exc:
            findings.append(Finding(ERROR, "PARSE_ERROR", f"line {exc.line}, column {exc.column}: {exc.reason}",
                                    source=str(path)))
            continue
        findings += lint_graph(graph, schemes, args.base_uri, str(path))
    return _emit(findings, args.format)


def cmd_serve(args) -> int:
    from .http.server import SnapshotHolder, serve_forever
    from .http.service import ServerConfig

    overrides = dict(host=args.host, port=args.port, template_dir=args.template_dir,
                     base_uri=args.base_uri_flag, default_language=args.default_language_flag)
    try:
        cfg = ServerConfig.from_file(args.config, **overrides) if args.config else ServerConfig().evolve(**overrides)
    except (OSError, ValueError, TypeError, VocabForgeError) as exc:
        raise UsageError(f"config: {exc}") from None
    if args.data is None and cfg.vocab_files:
        files = [Path(f) for f in cfg.vocab_files]
    else:
        files = vocabulary_files(args.data)
    if not is_wellformed_bcp47(cfg.default_language):
        raise UsageError(f"malformed default language {cfg.default_language!r}")

    def load():
        from .http.service import VocabularySnapshot

        loaded, findings = _load_all(files, cfg.base_uri, cfg.default_language)
        for path, scheme in loaded:
            findings += [Finding(f.severity, f.code, f.message, f.subject, str(path))
                         for f in validate(scheme).errors]
        if findings:
            raise _StartupError(findings)
        snap = VocabularySnapshot.from_schemes([s for _, s in loaded])
        return snap

    try:
        snap = load()
    except _StartupError as exc:
        print("refusing to start: the vocabulary does not validate", file=sys.stderr)
        _emit(exc.findings, args.format, sys.stderr)
        return EXIT_USAGE
    except VocabForgeError as exc:
        print(f"refusing to start: {exc.message}", file=sys.stderr)
        return EXIT_USAGE
    missing = snap.missing_default_language(cfg.default_language)
    if missing:
        listed = ", ".join(f"{i} {v}" for i, v in missing)
        print(f"refusing to start: no {cfg.default_language} prefLabel for {listed}", file=sys.stderr)
        return EXIT_USAGE

    logging.basicConfig(level=logging.INFO, format="%(message)s", stream=sys.stderr)
    try:
        serve_forever(SnapshotHolder(snap), cfg, reload=load)
    except OSError as exc:
        print(f"cannot listen on {cfg.host}:{cfg.port}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


class _StartupError(Exception):
    def __init__(self, findings):
        super().__init__(f"{len(findings)} finding(s)")
        self.findings = findings


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--data", help="vocabulary file, or directory of vocab-*.ttl files")
    common.add_argument("--base-uri", default=DEFAULT_BASE, help=f"vocabulary base URI (default {DEFAULT_BASE})")
    common.add_argument("--default-language", default="en", help="default language tag (default en)")
    common.add_argument("--format", choices=("text", "json"), default="text", help="findings output format")

    parser = argparse.ArgumentParser(prog="vocab-forge", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser("serve", help="run the publication server")
    serve.add_argument("--data", help="vocabulary file, or directory of vocab-*.ttl files")
    serve.add_argument("--config", help="JSON file with server settings")
    serve.add_argument("--host")
    serve.add_argument("--port", type=int)
    serve.add_argument("--template-dir", metavar="DIR", help="templates overriding the built-in pages")
    serve.add_argument("--base-uri", dest="base_uri_flag", metavar="URI", help="vocabulary base URI")
    serve.add_argument("--default-language", dest="default_language_flag", metavar="TAG", help="default page language")
    serve.add_argument("--format", choices=("text", "json"), default="text")
    serve.set_defaults(func=cmd_serve)

    val = sub.add_parser("validate", parents=[common], help="check vocabulary files")
    val.add_argument("files", nargs="*", help="vocabulary files (default: those under --data)")
    val.set_defaults(func=cmd_validate)

    nv = sub.add_parser("new-version", parents=[common], help="publish a new vocabulary version")
    nv.add_argument("version", help="new version number, e.g. 2.0")
    nv.add_argument("--file", help="current vocabulary file (default: newest under --data)")
    nv.add_argument("--deprecate", action="append", metavar="ID[=REPLACEMENT]",
                    help="drop ID from the new version, optionally naming its successor")
    nv.add_argument("--history-note", action="append", metavar="ID=TEXT",
                    help="history note (default language) added to the old version of ID")
    nv.add_argument("--output-dir", help="where to write vocab-<version>.ttl (default: beside the current file)")
    nv.add_argument("--force", action="store_true", help="overwrite an existing output file")
    nv.set_defaults(func=cmd_new_version)

    ex = sub.add_parser("export", parents=[common], help="print a served representation")
    ex.add_argument("id")
    ex.add_argument("version")
    ex.add_argument("export_format", metavar="FORMAT", help="turtle, jsonld or html")
    ex.add_argument("--language", help="page language for html")
    ex.set_defaults(func=cmd_export)

    lint = sub.add_parser("lint", parents=[common], help="check rights references in object metadata")
    lint.add_argument("files", nargs="+", help="Turtle metadata files")
    lint.set_defaults(func=cmd_lint)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if hasattr(args, "base_uri"):
        args.base_uri = args.base_uri.rstrip("/")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
