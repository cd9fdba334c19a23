import pytest

from vocab_forge.rdf import BlankNode, Graph, Iri, Literal, Triple, is_absolute_iri

XSD = "http://www.w3.org/2001/XMLSchema#"
EX = "http://example.org/"


def test_iri_must_be_absolute():
    assert is_absolute_iri("http://example.org/a")
    assert is_absolute_iri("urn:isbn:1")
    for bad in ("relative/path", "http://exa mple.org/", "<http://x/>", ""):
        with pytest.raises(ValueError):
            Iri(bad)


def test_language_tags_are_lowercased():
    assert Literal("x", "es-MX") == Literal("x", "es-mx")
    assert Literal("x", "es-MX").language == "es-mx"


def test_xsd_string_is_the_plain_literal():
    assert Literal("x", datatype=Iri(XSD + "string")) == Literal("x")


def test_language_and_datatype_are_exclusive():
    with pytest.raises(ValueError):
        Literal("x", "en", Iri(XSD + "integer"))


def test_malformed_language_rejected():
    with pytest.raises(ValueError):
        Literal("x", "not a tag")


def test_triple_positions_are_checked():
    with pytest.raises(TypeError):
        Triple(Literal("s"), Iri(EX + "p"), Iri(EX + "o"))
    with pytest.raises(TypeError):
        Triple(Iri(EX + "s"), BlankNode("b"), Iri(EX + "o"))


def test_graph_is_a_set_with_prefixes():
    t = Triple(Iri(EX + "s"), Iri(EX + "p"), Literal("o"))
    g = Graph([t, t], {"ex": EX})
    assert len(g) == 1 and t in g
    assert g == Graph([t])  # prefixes are presentation only
    assert g.prefixes["ex"] == EX
    with pytest.raises(TypeError):
        g.prefixes["x"] = "y"


def test_graph_accessors():
    s, p, q = Iri(EX + "s"), Iri(EX + "p"), Iri(EX + "q")
    g = Graph([Triple(s, p, Literal("b")), Triple(s, p, Literal("a")), Triple(s, q, BlankNode("n"))])
    assert g.objects(s, p) == [Literal("a"), Literal("b")]
    assert g.subjects(q, BlankNode("n")) == [s]
    assert g.blank_nodes() == {BlankNode("n")}
    assert len(g.union(Graph([Triple(s, p, Literal("c"))]))) == 4
