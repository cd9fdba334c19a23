import pytest
from hypothesis import HealthCheck, given, settings

from conftest import FIXTURES
from oracles import rdflib_parse_turtle, same_graph
from strategies import graphs
from vocab_forge.errors import TurtleSyntaxError
from vocab_forge.rdf import BlankNode, Graph, Iri, Literal, Triple, graph_isomorphic, parse_turtle, serialize_turtle

EX = "http://example.org/"


def test_prefixes_base_and_shorthand():
    g = parse_turtle(
        """
        @base <http://example.org/> .
        PREFIX ex: <http://example.org/ns#>
        <s> a ex:Thing ;
            ex:label "hi"@en-GB, "plain" ;
            ex:n "5"^^<http://www.w3.org/2001/XMLSchema#integer> .
        """
    )
    s = Iri("http://example.org/s")
    assert Triple(s, Iri("http://www.w3.org/1999/02/22-rdf-syntax-ns#type"), Iri("http://example.org/ns#Thing")) in g
    assert Triple(s, Iri("http://example.org/ns#label"), Literal("hi", "en-gb")) in g
    assert len(g) == 4
    assert g.prefixes == {"ex": "http://example.org/ns#"}


def test_blank_node_labels_follow_document_order():
    g = parse_turtle("<http://x/s> <http://x/p> _:zed, [ <http://x/q> _:alpha ] .")
    assert {t.object for t in g if t.subject == Iri("http://x/s")} == {BlankNode("b0"), BlankNode("b1")}


def test_long_strings_and_escapes():
    g = parse_turtle('<http://x/s> <http://x/p> """a "quoted"\nline""", "tab\\t\\u00e9" .')
    assert {t.object for t in g} == {Literal('a "quoted"\nline'), Literal("tab\té")}


@pytest.mark.parametrize(
    "text, code, line, column",
    [
        ("<http://x/a> <http://x/b> (1 2) .", "UNSUPPORTED_CONSTRUCT", 1, 27),
        ("<http://x/a> <http://x/b> 5 .", "UNSUPPORTED_CONSTRUCT", 1, 27),
        ("<http://x/a> <http://x/b> true .", "UNSUPPORTED_CONSTRUCT", 1, 27),
        ("\nfoo:a <http://x/b> <http://x/c> .", "UNDEFINED_PREFIX", 2, 1),
        ("<a> <http://x/b> <http://x/c> .", "MALFORMED_IRI", 1, 1),
        ('<http://x/a> <http://x/b> "x"@abcdefghi .', "MALFORMED_LANGUAGE_TAG", 1, 30),
        ('<http://x/a> <http://x/b> "x"@en-- .', "TURTLE_SYNTAX", 1, 33),
        ('<http://x/a> <http://x/b> "x"', "TURTLE_SYNTAX", 1, 30),
    ],
)
def test_errors_are_positioned(text, code, line, column):
    with pytest.raises(TurtleSyntaxError) as info:
        parse_turtle(text)
    assert (info.value.code, info.value.line, info.value.column) == (code, line, column)
    assert isinstance(info.value, ValueError)


def test_serializer_is_deterministic_and_groups_subjects():
    g = parse_turtle(
        "@prefix ex: <http://example.org/> . ex:s ex:b ex:o ; a ex:T ; ex:a [ ex:c \"x\" ] ."
    )
    text = serialize_turtle(g)
    assert text == serialize_turtle(parse_turtle(text))
    body = text.split("\n\n", 1)[1]
    assert body.startswith("ex:s\n    a ex:T ;")
    assert "[\n" in body  # singly referenced blank node inlined


def test_shared_and_cyclic_blank_nodes_survive():
    a, b = BlankNode("a"), BlankNode("b")
    p = Iri(EX + "p")
    g = Graph([Triple(a, p, b), Triple(b, p, a), Triple(Iri(EX + "s"), p, a), Triple(Iri(EX + "t"), p, b)])
    assert graph_isomorphic(parse_turtle(serialize_turtle(g)), g)


def test_inc_edu_example_matches_rdflib(inc_edu_example_graph):
    text = (FIXTURES / "inc-edu-example.ttl").read_text(encoding="utf-8")
    assert same_graph(inc_edu_example_graph, rdflib_parse_turtle(text))
    assert len(inc_edu_example_graph) == 14


@settings(max_examples=60, suppress_health_check=[HealthCheck.too_slow])
@given(graphs())
def test_output_is_read_identically_by_rdflib(g):
    text = serialize_turtle(g)
    assert same_graph(rdflib_parse_turtle(text), g)


@settings(max_examples=60, suppress_health_check=[HealthCheck.too_slow])
@given(graphs())
def test_serializer_is_idempotent(g):
    once = serialize_turtle(g)
    assert serialize_turtle(parse_turtle(once)) == once
