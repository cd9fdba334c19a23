import json
import threading
import urllib.request
from http.client import HTTPConnection

import pytest

from conftest import BASE
from oracles import extract_rdfa, html_lang
from vocab_forge.conneg import Format
from vocab_forge.errors import VocabForgeError
from vocab_forge.http import ServerConfig, VocabularySnapshot, build_alternates, build_link
from vocab_forge.http import service
from vocab_forge.http.server import SnapshotHolder, make_server
from vocab_forge.identifiers import Version
from vocab_forge.vocab import statement_to_graph

V1 = Version(1, 0)
IDS = ["InC", "InC-EDU", "InC-OW-EU", "NoC-CR", "NoC-NC", "NoC-OKLR"]


def test_build_alternates_examples():
    assert build_alternates([("/vocab/InC/1.0/", 0.9, None)]) == '{"/vocab/InC/1.0/" 0.9}'
    assert build_alternates([("/x", 1, "text/html")]) == '{"/x" 1.0 {type text/html}}'
    with pytest.raises(ValueError):
        build_alternates([])
    assert build_link("/page/InC/1.0/", "describedby") == '</page/InC/1.0/>; rel="describedby"'


@pytest.mark.parametrize(
    "target, accept, status, location",
    [
        ("/vocab/InC/1.0/", "text/html", 303, "/page/InC/1.0/"),
        ("/vocab/InC/1.0/", "text/turtle", 303, "/data/InC/1.0/"),
        ("/vocab/InC/1.0/", "application/ld+json", 303, "/data/InC/1.0/"),
        ("/vocab/InC/1.0/", None, 303, "/page/InC/1.0/"),
        ("/vocab/1.0/", "text/html", 303, "/page/1.0/"),
        ("/vocab/1.0/", "text/turtle", 303, "/data/1.0/"),
        ("/vocab/InC/1.0", None, 301, "/vocab/InC/1.0/"),
        ("/page/NoC-NC/1.0?date=2029-11-17", None, 301, "/page/NoC-NC/1.0/?date=2029-11-17"),
    ],
)
def test_redirects(get, target, accept, status, location):
    r = get(target, {"Accept": accept} if accept else None)
    assert r.status == status
    assert r.header("Location") == location
    assert r.body == b""


def test_describedby_on_concept_redirects(get):
    r = get("/vocab/NoC-NC/1.0/", {"Accept": "text/turtle"})
    assert r.header("Link") == '</page/NoC-NC/1.0/>; rel="describedby"'
    assert r.header("Vary") == "Accept"


def test_unacceptable_concept_format(get):
    r = get("/vocab/InC/1.0/", {"Accept": "image/png"})
    assert r.status == 406
    assert r.header("Alternates") == (
        '{"/page/InC/1.0/" 0.9 {type text/html}}, {"/data/InC/1.0.ttl" 0.9 {type text/turtle}}, '
        '{"/data/InC/1.0.json" 0.9 {type application/ld+json}}'
    )


@pytest.mark.parametrize("accept, fmt", [(None, Format.TURTLE), ("text/turtle", Format.TURTLE),
                                         ("application/ld+json", Format.JSONLD)])
def test_generic_data(get, accept, fmt):
    r = get("/data/InC/1.0/", {"Accept": accept} if accept else None)
    assert r.status == 200 and r.format is fmt
    assert r.header("Content-Location") == f"/data/InC/1.0.{fmt.extension}"
    assert r.content_type == fmt.content_type


def test_html_is_not_served_from_data(get):
    r = get("/data/InC/1.0/", {"Accept": "text/html"})
    assert r.status == 406
    assert r.header("Alternates") == (
        '{"/data/InC/1.0.ttl" 0.9 {type text/turtle}}, {"/data/InC/1.0.json" 0.9 {type application/ld+json}}'
    )


def test_extension_data_ignores_accept(get):
    r = get("/data/InC/1.0.json", {"Accept": "text/turtle"})
    assert r.status == 200 and r.format is Format.JSONLD
    assert r.header("Content-Location") is None
    json.loads(r.body)


@pytest.mark.parametrize(
    "target, status",
    [
        ("/vocab/Nope/1.0/", 404),
        ("/vocab/InC/9.9/", 404),
        ("/page/InC/2.0/", 404),
        ("/favicon.ico", 404),
        ("/", 404),
        ("/vocab/InC/1.0/?bogus=1", 406),
        ("/data/NoC-NC/1.0/?date=2029-11-17", 406),
        ("/page/InC/1.0/?language=en_GB", 406),
    ],
)
def test_error_statuses(get, target, status):
    r = get(target)
    assert r.status == status
    assert r.content_type.startswith("text/html")


def test_method_not_allowed(get):
    r = get("/vocab/InC/1.0/", method="POST")
    assert r.status == 405 and r.header("Allow") == "GET, HEAD"


@pytest.mark.parametrize("target", ["/vocab/InC/1.0/", "/data/InC/1.0/", "/data/1.0.ttl", "/page/InC/1.0/",
                                    "/page/1.0/?language=es", "/vocab/NoC-NC/1.0/?date=2028-01-01", "/nope"])
def test_head_mirrors_get(get, target):
    g, h = get(target), get(target, method="HEAD")
    assert h.status == g.status and h.headers == g.headers and h.body == b""


def test_responses_are_deterministic(get):
    for target in ["/data/1.0.ttl", "/data/1.0.json", "/page/1.0/", "/page/NoC-NC/1.0/?date=2029-11-17"]:
        assert get(target) == get(target)


def test_every_redirect_resolves(get):
    for ident in IDS:
        for accept in ("text/html", "text/turtle", "application/ld+json"):
            r = get(f"/vocab/{ident}/1.0/", {"Accept": accept})
            follow = get(r.header("Location"), {"Accept": accept})
            assert follow.status == 200
            assert get(r.header("Link").split(">")[0][1:]).status == 200


def test_conditional_get(get):
    first = get("/data/InC/1.0.ttl")
    etag = first.header("ETag")
    again = get("/data/InC/1.0.ttl", {"If-None-Match": etag})
    assert again.status == 304 and again.body == b"" and again.header("Content-Type") is None
    assert get("/data/InC/1.0.ttl", {"If-None-Match": '"other"'}).status == 200
    assert get("/data/NoC-NC/1.0.ttl").header("ETag") != etag


def test_unexpected_failure_is_a_500(get, monkeypatch):
    def boom(*a, **k):
        raise RuntimeError("boom")

    monkeypatch.setattr(service, "render_page", boom)
    r = get("/page/InC/1.0/")
    assert r.status == 500 and b"boom" not in r.body


# -- pages ---------------------------------------------------------------------------

@pytest.mark.parametrize("ident", IDS)
def test_page_rdfa_is_a_subset_of_the_statement_graph(get, sample_scheme, ident):
    html = get(f"/page/{ident}/1.0/").text
    full = statement_to_graph(sample_scheme[ident], BASE)
    embedded = extract_rdfa(html)
    assert len(embedded) > 0
    assert set(embedded) <= set(full)


def test_page_shows_expiry_date_and_links_downloads(get):
    r = get("/page/NoC-NC/1.0/?date=2029-11-17")
    assert r.status == 200 and "2029-11-17" in r.text
    assert r.header("Link") == '</page/NoC-NC/1.0/>; rel="derivedfrom"'
    assert 'href="/data/NoC-NC/1.0.ttl"' in r.text and 'href="/data/NoC-NC/1.0.json"' in r.text


def test_default_page_has_no_derivedfrom(get):
    r = get("/page/InC/1.0/")
    assert r.header("Link") is None and r.header("Content-Language") == "en"
    assert html_lang(r.text) == "en"
    assert 'hreflang="es"' in r.text


def test_spanish_page(get):
    r = get("/page/InC/1.0/?language=es")
    assert html_lang(r.text) == "es" and "En copyright" in r.text
    assert r.header("Link") == '</page/InC/1.0/>; rel="derivedfrom"'


def test_untranslated_statement_falls_back(get):
    r = get("/page/InC-EDU/1.0/", {"Accept-Language": "es"})
    assert r.header("Content-Language") == "en"
    assert get("/page/InC-EDU/1.0/?language=es").status == 406


def test_unavailable_language_parameter_lists_translations(get):
    r = get("/page/InC/1.0/?language=fr")
    assert r.status == 406
    assert r.header("Alternates") == (
        '{"/page/InC/1.0/?language=en" 0.9 {type text/html}}, {"/page/InC/1.0/?language=es" 0.9 {type text/html}}'
    )


def test_scheme_page(get, sample_scheme):
    r = get("/page/1.0/", {"Accept-Language": "es"})
    assert r.status == 200 and r.header("Content-Language") == "es"
    for ident in IDS:
        assert f'href="/page/{ident}/1.0/"' in r.text
    assert sample_scheme.title["en"] in r.text or sample_scheme.title.get("es", "") in r.text


# -- configuration and snapshots -----------------------------------------------------

def test_config_from_file(tmp_path):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"base_uri": "http://example.org", "port": 9000}))
    cfg = ServerConfig.from_file(path, port=9100)
    assert (cfg.base_uri, cfg.port, cfg.default_language) == ("http://example.org", 9100, "en")
    path.write_text(json.dumps({"colour": "red"}))
    with pytest.raises(VocabForgeError) as info:
        ServerConfig.from_file(path)
    assert info.value.code == "MALFORMED_CONFIG"


def test_snapshot_is_immutable(snapshot, sample_scheme):
    with pytest.raises(AttributeError):
        snapshot.current_version = Version(2, 0)
    with pytest.raises(TypeError):
        snapshot.schemes[Version(2, 0)] = sample_scheme
    assert snapshot.current_version == V1
    assert snapshot.statement("InC", V1) is sample_scheme["InC"]


def test_duplicate_versions_rejected(sample_scheme):
    with pytest.raises(VocabForgeError) as info:
        VocabularySnapshot.from_schemes([sample_scheme, sample_scheme])
    assert info.value.code == "DUPLICATE_VERSION"


def test_missing_default_language(snapshot):
    assert snapshot.missing_default_language("en") == []
    assert len(snapshot.missing_default_language("de")) > 0


# -- the socket server ---------------------------------------------------------------

@pytest.fixture
def live(snapshot, config):
    holder = SnapshotHolder(snapshot)
    server = make_server(holder, config.evolve(port=0))
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    yield server.server_address[1], holder
    server.shutdown()
    server.server_close()


def test_live_server_answers(live, caplog):
    port, _ = live
    conn = HTTPConnection("127.0.0.1", port, timeout=5)
    with caplog.at_level("INFO", logger="vocab_forge.access"):
        conn.request("GET", "/vocab/InC/1.0/", headers={"Accept": "text/turtle"})
        r = conn.getresponse()
        r.read()
    assert r.status == 303 and r.getheader("Location") == "/data/InC/1.0/"
    line = json.loads(caplog.records[-1].getMessage())
    assert line["status"] == 303 and line["path"] == "/vocab/InC/1.0/"
    with urllib.request.urlopen(f"http://127.0.0.1:{port}/data/InC/1.0.ttl", timeout=5) as body:
        assert body.read().startswith(b"@prefix")


def test_snapshot_swap_is_visible(live, sample_scheme):
    port, holder = live
    shrunk = sample_scheme.evolve(members=tuple(m for m in sample_scheme.members if m.id != "InC-EDU"))
    holder.swap(VocabularySnapshot.from_schemes([shrunk]))
    conn = HTTPConnection("127.0.0.1", port, timeout=5)
    conn.request("GET", "/page/InC-EDU/1.0/")
    assert conn.getresponse().status == 404
