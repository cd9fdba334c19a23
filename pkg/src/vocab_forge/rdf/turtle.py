"""Turtle reader and writer for the subset used by the vocabulary.

Supported: ``@prefix``/``@base`` (and the SPARQL-style ``PREFIX``/``BASE``),
IRIs, prefixed names, ``a``, ``;`` and ``,`` lists, short and long string
literals, language tags, ``^^`` datatypes, labelled and anonymous blank
nodes, comments. Collections and numeric/boolean shorthand raise an
"unsupported construct" error rather than being mis-read.
"""

from __future__ import annotations

import bisect
import re
from urllib.parse import urljoin

from ..conneg import is_wellformed_bcp47
from ..errors import TurtleSyntaxError
from .namespaces import RDF_TYPE
from .terms import BlankNode, Graph, Iri, Literal, Triple, is_absolute_iri, term_key

_UCHAR = r"\\u[0-9A-Fa-f]{4}|\\U[0-9A-Fa-f]{8}"
_ECHAR = r"""\\[tbnrf"'\\]"""
_PN_CHARS_BASE = r"A-Za-zÀ-ÖØ-öø-˿Ͱ-ͽͿ-῿‌-‍⁰-↏Ⰰ-⿯、-퟿豈-﷏ﷰ-�"
_PN_CHARS_U = _PN_CHARS_BASE + "_"
_PN_CHARS = _PN_CHARS_U + r"\-0-9·̀-ͯ‿-⁀"
_PN_PREFIX = rf"[{_PN_CHARS_BASE}](?:[{_PN_CHARS}.]*[{_PN_CHARS}])?"
_PLX = r"%[0-9A-Fa-f]{2}|\\[_~.\-!$&'()*+,;=/?#@%]"
_PN_LOCAL = (
    rf"(?:[{_PN_CHARS_U}:0-9]|{_PLX})"
    rf"(?:(?:[{_PN_CHARS}.:]|{_PLX})*(?:[{_PN_CHARS}:]|{_PLX}))?"
)

_TOKENS = [
    ("WS", r"[ \t\r\n]+"),
    ("COMMENT", r"#[^\r\n]*"),
    ("IRIREF", rf"<(?:[^\x00-\x20<>\"{{}}|^`\\]|{_UCHAR})*>"),
    ("STRING_LONG_QUOTE", rf'"""(?:(?:"|"")?(?:[^"\\]|{_ECHAR}|{_UCHAR}))*"""'),
    ("STRING_LONG_SINGLE_QUOTE", rf"'''(?:(?:'|'')?(?:[^'\\]|{_ECHAR}|{_UCHAR}))*'''"),
    ("STRING_QUOTE", rf'"(?:[^"\\\n\r]|{_ECHAR}|{_UCHAR})*"'),
    ("STRING_SINGLE_QUOTE", rf"'(?:[^'\\\n\r]|{_ECHAR}|{_UCHAR})*'"),
    ("AT", r"@[A-Za-z]+(?:-[A-Za-z0-9]+)*"),
    ("DTYPE", r"\^\^"),
    ("BLANK_NODE_LABEL", rf"_:[{_PN_CHARS_U}0-9](?:[{_PN_CHARS}.]*[{_PN_CHARS}])?"),
    ("PNAME", rf"(?:{_PN_PREFIX})?:(?:{_PN_LOCAL})?"),
    ("NUMBER", r"[+-]?(?:[0-9]+(?:\.[0-9]*)?|\.[0-9]+)(?:[eE][+-]?[0-9]+)?"),
    ("NAME", r"[A-Za-z][A-Za-z0-9_\-]*"),
    ("PUNCT", r"[.;,\[\]()]"),
]
_TOKEN_RE = re.compile("|".join(f"(?P<{name}>{rx})" for name, rx in _TOKENS))
_ESCAPES = {"t": "\t", "b": "\b", "n": "\n", "r": "\r", "f": "\f", '"': '"', "'": "'", "\\": "\\"}
_STRING_ESCAPE_RE = re.compile(rf"{_UCHAR}|{_ECHAR}")


class _Token:
    __slots__ = ("kind", "text", "pos")

    def __init__(self, kind, text, pos):
        self.kind, self.text, self.pos = kind, text, pos

    def __repr__(self):
        return f"{self.kind}({self.text!r})"


def _unescape_string(body):
    def repl(m):
        s = m.group(0)
        if s[1] in "uU":
            return chr(int(s[2:], 16))
        return _ESCAPES[s[1]]

    return _STRING_ESCAPE_RE.sub(repl, body)


class _Parser:
    def __init__(self, text, base):
        self.text = text
        self.base = base
        self.line_starts = [0] + [m.end() for m in re.finditer(r"\n", text)]
        self.tokens = self._tokenize()
        self.i = 0
        self.prefixes = {}
        self.bnodes = {}
        self.bnode_count = 0
        self.triples = set()

    # -- positions and errors -------------------------------------------------
    def _where(self, pos):
        line = bisect.bisect_right(self.line_starts, pos) - 1
        return line + 1, pos - self.line_starts[line] + 1

    def error(self, message, pos=None, code=None):
        if pos is None:
            pos = self.tokens[self.i].pos if self.i < len(self.tokens) else len(self.text)
        line, col = self._where(pos)
        return TurtleSyntaxError(message, line, col, code)

    def _tokenize(self):
        tokens, pos, n = [], 0, len(self.text)
        while pos < n:
            m = _TOKEN_RE.match(self.text, pos)
            if m is None:
                raise self.error(f"unexpected character {self.text[pos]!r}", pos)
            kind = m.lastgroup
            if kind not in ("WS", "COMMENT"):
                tokens.append(_Token(kind, m.group(0), pos))
            pos = m.end()
        return tokens

    # -- token stream ----------------------------------------------------------
    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def next(self):
        tok = self.peek()
        if tok is None:
            raise self.error("unexpected end of document")
        self.i += 1
        return tok

    def expect_punct(self, ch):
        tok = self.peek()
        if tok is None or tok.kind != "PUNCT" or tok.text != ch:
            found = "end of document" if tok is None else repr(tok.text)
            raise self.error(f"expected {ch!r}, found {found}")
        self.i += 1

    def at_punct(self, ch):
        tok = self.peek()
        return tok is not None and tok.kind == "PUNCT" and tok.text == ch

    # -- terms -----------------------------------------------------------------
    def resolve(self, raw, pos):
        value = _unescape_string(raw)
        if not is_absolute_iri(value):
            if self.base is None or re.search(r'[\x00-\x20<>"{}|^`\\]', value):
                raise self.error(f"malformed IRI <{value}>", pos, "MALFORMED_IRI")
            value = urljoin(self.base, value)
        try:
            return Iri(value)
        except ValueError:
            raise self.error(f"malformed IRI <{value}>", pos, "MALFORMED_IRI") from None

    def pname(self, tok):
        prefix, _, local = tok.text.partition(":")
        if prefix not in self.prefixes:
            raise self.error(f"undefined prefix {prefix!r}", tok.pos, "UNDEFINED_PREFIX")
        local = re.sub(r"\\(.)", r"\1", local)
        try:
            return Iri(self.prefixes[prefix] + local)
        except ValueError:
            raise self.error(f"malformed IRI from {tok.text!r}", tok.pos, "MALFORMED_IRI") from None

    def iri(self, tok):
        if tok.kind == "IRIREF":
            return self.resolve(tok.text[1:-1], tok.pos)
        if tok.kind == "PNAME":
            return self.pname(tok)
        raise self.error(f"expected an IRI, found {tok.text!r}", tok.pos)

    def fresh_bnode(self):
        node = BlankNode(f"b{self.bnode_count}")
        self.bnode_count += 1
        return node

    def labelled_bnode(self, label):
        if label not in self.bnodes:
            self.bnodes[label] = self.fresh_bnode()
        return self.bnodes[label]

    def unsupported(self, tok, what):
        return self.error(f"unsupported construct: {what}", tok.pos, "UNSUPPORTED_CONSTRUCT")

    # -- grammar -----------------------------------------------------------------
    def parse(self):
        while self.peek() is not None:
            tok = self.peek()
            if tok.kind == "AT" and tok.text in ("@prefix", "@base"):
                self.i += 1
                self.directive(tok.text[1:], sparql=False)
            elif tok.kind == "NAME" and tok.text.upper() in ("PREFIX", "BASE"):
                self.i += 1
                self.directive(tok.text.lower(), sparql=True)
            else:
                self.triples_statement()
                self.expect_punct(".")
        return Graph(self.triples, self.prefixes)

    def directive(self, kind, sparql):
        if kind == "prefix":
            tok = self.next()
            if tok.kind != "PNAME" or not tok.text.endswith(":") or tok.text.count(":") != 1:
                raise self.error("expected a prefix name such as 'ex:'", tok.pos)
            iri_tok = self.next()
            if iri_tok.kind != "IRIREF":
                raise self.error("expected a namespace IRI", iri_tok.pos)
            self.prefixes[tok.text[:-1]] = self.resolve(iri_tok.text[1:-1], iri_tok.pos).value
        else:
            iri_tok = self.next()
            if iri_tok.kind != "IRIREF":
                raise self.error("expected a base IRI", iri_tok.pos)
            self.base = self.resolve(iri_tok.text[1:-1], iri_tok.pos).value
        if not sparql:
            self.expect_punct(".")

    def triples_statement(self):
        tok = self.peek()
        if tok.kind == "PUNCT" and tok.text == "[":
            self.i += 1
            if self.at_punct("]"):
                self.i += 1
                subject = self.fresh_bnode()
                self.predicate_object_list(subject)
            else:
                subject = self.fresh_bnode()
                self.predicate_object_list(subject)
                self.expect_punct("]")
                if not self.at_punct("."):
                    self.predicate_object_list(subject)
            return
        self.predicate_object_list(self.subject())

    def subject(self):
        tok = self.next()
        if tok.kind in ("IRIREF", "PNAME"):
            return self.iri(tok)
        if tok.kind == "BLANK_NODE_LABEL":
            return self.labelled_bnode(tok.text[2:])
        if tok.kind == "PUNCT" and tok.text == "(":
            raise self.unsupported(tok, "collections")
        raise self.error(f"expected a subject, found {tok.text!r}", tok.pos)

    def verb(self):
        tok = self.next()
        if tok.kind == "NAME" and tok.text == "a":
            return RDF_TYPE
        if tok.kind in ("IRIREF", "PNAME"):
            return self.iri(tok)
        raise self.error(f"expected a predicate, found {tok.text!r}", tok.pos)

    def predicate_object_list(self, subject):
        while True:
            predicate = self.verb()
            self.object_list(subject, predicate)
            if not self.at_punct(";"):
                return
            while self.at_punct(";"):
                self.i += 1
            tok = self.peek()
            if tok is None or (tok.kind == "PUNCT" and tok.text in ".]"):
                return

    def object_list(self, subject, predicate):
        while True:
            obj = self.object()
            self.triples.add(Triple(subject, predicate, obj))
            if not self.at_punct(","):
                return
            self.i += 1

    def object(self):
        tok = self.next()
        if tok.kind in ("IRIREF", "PNAME"):
            return self.iri(tok)
        if tok.kind == "BLANK_NODE_LABEL":
            return self.labelled_bnode(tok.text[2:])
        if tok.kind.startswith("STRING"):
            return self.literal(tok)
        if tok.kind == "PUNCT" and tok.text == "[":
            node = self.fresh_bnode()
            if not self.at_punct("]"):
                self.predicate_object_list(node)
            self.expect_punct("]")
            return node
        if tok.kind == "PUNCT" and tok.text == "(":
            raise self.unsupported(tok, "collections")
        if tok.kind == "NUMBER":
            raise self.unsupported(tok, "numeric literal shorthand")
        if tok.kind == "NAME" and tok.text in ("true", "false"):
            raise self.unsupported(tok, "boolean literal shorthand")
        raise self.error(f"expected an object, found {tok.text!r}", tok.pos)

    def literal(self, tok):
        quote = 3 if tok.kind.startswith("STRING_LONG") else 1
        lexical = _unescape_string(tok.text[quote:-quote])
        nxt = self.peek()
        language = datatype = None
        if nxt is not None and nxt.kind == "AT":
            self.i += 1
            language = nxt.text[1:]
            if not is_wellformed_bcp47(language):
                raise self.error(f"malformed language tag {language!r}", nxt.pos, "MALFORMED_LANGUAGE_TAG")
        elif nxt is not None and nxt.kind == "DTYPE":
            self.i += 1
            dt_tok = self.next()
            datatype = self.iri(dt_tok)
        try:
            return Literal(lexical, language, datatype)
        except ValueError as exc:
            raise self.error(str(exc), tok.pos, "INVALID_LITERAL") from None


def parse_turtle(text: str, base: str | None = None) -> Graph:
    """Parse a Turtle document into a :class:`Graph`.

    Blank nodes are relabelled ``b0, b1, ...`` in order of first appearance.
    Relative IRIs need ``base`` (or an ``@base`` directive).
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    if text.startswith("﻿"):
        text = text[1:]
    return _Parser(text, base).parse()


# -- writer ------------------------------------------------------------------------

_SAFE_LOCAL_RE = re.compile(r"(?:[A-Za-z0-9_](?:[A-Za-z0-9_.\-]*[A-Za-z0-9_\-])?)?")
_WRITE_ESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\r": "\\r", "\t": "\\t", "\b": "\\b", "\f": "\\f"}
_LONG_ESCAPES = {"\\": "\\\\", '"': '\\"', "\r": "\\r", "\b": "\\b", "\f": "\\f"}


def _escape(text, table):
    out = []
    for ch in text:
        if ch in table:
            out.append(table[ch])
        elif ch in "\n\t" and table is _LONG_ESCAPES:
            out.append(ch)
        elif ord(ch) < 0x20 or ord(ch) == 0x7F:
            out.append(f"\\u{ord(ch):04X}")
        else:
            out.append(ch)
    return "".join(out)


class _Writer:
    def __init__(self, graph: Graph):
        self.graph = graph
        # longest namespace first so the most specific prefix wins
        self.namespaces = sorted(graph.prefixes.items(), key=lambda kv: (-len(kv[1]), kv[0]))
        self.labels = {}

    def iri(self, iri: Iri):
        value = iri.value
        for prefix, ns in self.namespaces:
            if value.startswith(ns) and _SAFE_LOCAL_RE.fullmatch(value[len(ns):]):
                return f"{prefix}:{value[len(ns):]}"
        return "<" + value.replace("\\", "\\\\") + ">"

    def literal(self, lit: Literal):
        if "\n" in lit.lexical:
            s = '"""' + _escape(lit.lexical, _LONG_ESCAPES) + '"""'
        else:
            s = '"' + _escape(lit.lexical, _WRITE_ESCAPES) + '"'
        if lit.language:
            s += "@" + lit.language
        elif lit.datatype:
            s += "^^" + self.iri(lit.datatype)
        return s

    def label(self, node):
        if node not in self.labels:
            self.labels[node] = f"_:b{len(self.labels)}"
        return self.labels[node]

    def plan(self):
        g = self.graph
        refs = {}
        for t in g.triples:
            if isinstance(t.object, BlankNode):
                refs[t.object] = refs.get(t.object, 0) + 1
        subjects = {t.subject for t in g.triples}
        inline = {b for b, n in refs.items() if n == 1}
        while True:
            roots = [s for s in subjects if s not in inline]
            reached = set()
            stack = list(roots)
            while stack:
                s = stack.pop()
                for o in g.objects(s):
                    if o in inline and o not in reached:
                        reached.add(o)
                        stack.append(o)
            # Only a subject can head a block of its own, so demote one of those.
            stranded = sorted((b for b in inline if b not in reached and b in subjects), key=term_key)
            if not stranded:
                break
            inline.discard(stranded[0])
        self.inline = inline
        roots = [s for s in subjects if s not in inline]
        return sorted(roots, key=term_key)

    def term(self, term, indent):
        if isinstance(term, Iri):
            return self.iri(term)
        if isinstance(term, Literal):
            return self.literal(term)
        if term in self.inline:
            pos = self.graph.predicate_objects(term)
            if not pos:
                return "[]"
            inner = self.predicate_object_block(term, indent + 1)
            return "[\n" + inner + "\n" + "    " * indent + "]"
        return self.label(term)

    def object_key(self, o, indent):
        # Independent of blank node labels, so output survives relabelling.
        if isinstance(o, BlankNode) and o not in self.inline:
            return (1, int(self.labels[o][3:]) if o in self.labels else float("inf"), term_key(o))
        return (0, 0, self.term(o, indent))

    def predicate_object_block(self, subject, indent):
        pad = "    " * indent
        groups = {}
        for p, o in self.graph.predicate_objects(subject):
            groups.setdefault(p, []).append(o)
        order = sorted(groups, key=lambda p: (p != RDF_TYPE, p.value))
        lines = []
        for p in order:
            verb = "a" if p == RDF_TYPE else self.iri(p)
            objs = [self.term(o, indent) for o in sorted(groups[p], key=lambda o: self.object_key(o, indent))]
            sep = ",\n" + pad + " " * (len(verb) + 1)
            lines.append(f"{pad}{verb} " + sep.join(objs))
        return " ;\n".join(lines)

    def block(self, s):
        head = self.iri(s) if isinstance(s, Iri) else self.label(s)
        return head + "\n" + self.predicate_object_block(s, 1) + " ."

    def write(self):
        out = [f"@prefix {p}: <{ns}> ." for p, ns in sorted(self.graph.prefixes.items())]
        roots = self.plan()
        blocks = []
        for s in roots:
            if isinstance(s, Iri):
                blocks.append(self.block(s))
        # Blank roots follow in label order; labels are handed out on first
        # use, so a re-parse (which numbers nodes by appearance) agrees.
        pending = [s for s in roots if isinstance(s, BlankNode)]
        while pending:
            labelled = [s for s in pending if s in self.labels]
            s = min(labelled, key=lambda b: int(self.labels[b][3:])) if labelled else pending[0]
            pending.remove(s)
            blocks.append(self.block(s))
        text = "\n".join(out)
        if blocks:
            text += ("\n\n" if out else "") + "\n\n".join(blocks)
        return text + "\n" if text else ""


def serialize_turtle(graph: Graph) -> str:
    """Deterministic Turtle: sorted subjects, ``rdf:type`` first, sorted predicates.

    Blank nodes referenced exactly once are written inline as ``[ ... ]``;
    the rest get labels ``_:b0, _:b1, ...`` in order of first use.
    """
    return _Writer(graph).write()
