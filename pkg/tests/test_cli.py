import json
import shutil
import socket
import subprocess
import sys
import time
from http.client import HTTPConnection

import pytest

from conftest import BASE, FIXTURES
from oracles import jsonld_to_graph, same_graph
from vocab_forge import sample_vocabulary_path
from vocab_forge.cli import EXIT_FINDINGS, EXIT_OK, EXIT_USAGE, main
from vocab_forge.rdf import parse_turtle
from vocab_forge.vocab import load_scheme, statement_to_graph


@pytest.fixture
def data_dir(tmp_path):
    shutil.copy(sample_vocabulary_path(), tmp_path / "vocab-1.0.ttl")
    return tmp_path


def _scheme(path):
    return load_scheme(parse_turtle(path.read_text(encoding="utf-8")), BASE)


def test_validate_sample(capsys):
    assert main(["validate"]) == EXIT_OK
    err = capsys.readouterr().err
    assert "0 error(s), 2 warning(s)" in err


def test_validate_reports_missing_default_language(data_dir, capsys):
    path = data_dir / "vocab-1.0.ttl"
    text = path.read_text(encoding="utf-8")
    path.write_text(text.replace('"In Copyright - Educational Use Permitted"@en', '"X"@es'), encoding="utf-8")
    assert main(["validate", "--data", str(data_dir), "--format", "json"]) == EXIT_FINDINGS
    codes = {f["code"] for f in json.loads(capsys.readouterr().out)["findings"]}
    assert "MISSING_DEFAULT_LANGUAGE" in codes


def test_validate_parse_error(tmp_path, capsys):
    bad = tmp_path / "vocab-1.0.ttl"
    bad.write_text("@prefix ex: <http://example.org/> .\nex:a ex:b", encoding="utf-8")
    assert main(["validate", str(bad)]) == EXIT_FINDINGS
    out = capsys.readouterr().out
    assert "PARSE_ERROR" in out and "line 2" in out


def test_validate_flags_missing_successor_link(data_dir, capsys):
    assert main(["new-version", "2.0", "--data", str(data_dir)]) == EXIT_OK
    old = data_dir / "vocab-1.0.ttl"
    text = old.read_text(encoding="utf-8")
    kept = "\n".join(line for line in text.splitlines()
                     if "isReplacedBy" not in line or "/InC/2.0/" not in line)
    assert kept != text
    old.write_text(kept + "\n", encoding="utf-8")
    capsys.readouterr()
    main(["validate", "--data", str(data_dir)])
    out = capsys.readouterr().out
    assert "WARNING REPLACED_BY_MISSING <http://rightsstatements.org/vocab/InC/1.0/>" in out


def test_new_version_with_deprecation(data_dir, capsys):
    rc = main(["new-version", "2.0", "--data", str(data_dir), "--deprecate", "InC-EDU=InC",
               "--history-note", "InC-EDU=Folded into InC."])
    assert rc == EXIT_OK
    new, old = _scheme(data_dir / "vocab-2.0.ttl"), _scheme(data_dir / "vocab-1.0.ttl")
    assert len(new) == 5 and len(old) == 6
    assert old["InC-EDU"].history_note == {"en": "Folded into InC."}
    assert main(["validate", "--data", str(data_dir)]) == EXIT_OK


def test_new_version_refuses_to_go_backwards(data_dir, capsys):
    before = (data_dir / "vocab-1.0.ttl").read_bytes()
    assert main(["new-version", "0.5", "--data", str(data_dir)]) == EXIT_USAGE
    assert "NON_MONOTONIC_VERSION" in capsys.readouterr().err
    assert (data_dir / "vocab-1.0.ttl").read_bytes() == before
    assert not (data_dir / "vocab-0.5.ttl").exists()


def test_new_version_needs_a_source(capsys):
    assert main(["new-version", "2.0"]) == EXIT_USAGE


def test_new_version_will_not_clobber(data_dir, capsys):
    (data_dir / "vocab-2.0.ttl").write_text("", encoding="utf-8")
    assert main(["new-version", "2.0", "--file", str(data_dir / "vocab-1.0.ttl")]) == EXIT_USAGE


def test_export_turtle_matches_example(capsysbinary, inc_edu_example_graph):
    assert main(["export", "InC-EDU", "1.0", "turtle"]) == EXIT_OK
    out = capsysbinary.readouterr().out.decode("utf-8")
    assert same_graph(parse_turtle(out), inc_edu_example_graph)


def test_export_jsonld(capsysbinary, sample_scheme):
    assert main(["export", "NoC-NC", "1.0", "jsonld"]) == EXIT_OK
    out = capsysbinary.readouterr().out.decode("utf-8")
    assert same_graph(jsonld_to_graph(out), statement_to_graph(sample_scheme["NoC-NC"], BASE))


def test_export_html_language(capsysbinary):
    assert main(["export", "InC", "1.0", "html", "--language", "es"]) == EXIT_OK
    assert b'lang="es"' in capsysbinary.readouterr().out


@pytest.mark.parametrize("argv", [["export", "Nope", "1.0", "turtle"], ["export", "InC", "1.0", "rdfxml"],
                                  ["export", "InC", "x", "turtle"]])
def test_export_usage_errors(argv, capsys):
    assert main(argv) == EXIT_USAGE


def test_lint_exit_codes(capsys):
    assert main(["lint", str(FIXTURES / "europeana-la-polka.ttl")]) == EXIT_OK
    assert "INFO CUSTOM_STATEMENT_PATTERN" in capsys.readouterr().out
    assert main(["lint", "--format", "json", str(FIXTURES / "europeana-stanton-harcourt-page-uri.ttl")]) == EXIT_FINDINGS
    findings = json.loads(capsys.readouterr().out)["findings"]
    assert [(f["severity"], f["code"]) for f in findings] == [("error", "PAGE_URI_IN_METADATA")]


def test_lint_with_invalid_vocabulary(tmp_path, capsys):
    (tmp_path / "vocab-1.0.ttl").write_text("nonsense", encoding="utf-8")
    assert main(["lint", "--data", str(tmp_path), str(FIXTURES / "ucsd-local.ttl")]) == EXIT_USAGE


def test_version_flag(capsys):
    assert main(["--version"]) == EXIT_OK
    assert "vocab-forge" in capsys.readouterr().out


def test_no_command_is_a_usage_error(capsys):
    assert main([]) == EXIT_USAGE


# -- serve ---------------------------------------------------------------------------

def _free_port():
    with socket.socket() as s:
        s.bind(("127.0.0.1", 0))
        return s.getsockname()[1]


def _run(*args, timeout=20):
    return subprocess.run([sys.executable, "-m", "vocab_forge", *args], capture_output=True, text=True,
                          timeout=timeout)


def test_serve_end_to_end():
    port = _free_port()
    proc = subprocess.Popen([sys.executable, "-m", "vocab_forge", "serve", "--port", str(port)],
                            stderr=subprocess.PIPE, text=True)
    try:
        deadline = time.monotonic() + 15
        while True:
            try:
                conn = HTTPConnection("127.0.0.1", port, timeout=2)
                conn.request("GET", "/vocab/InC/1.0/", headers={"Accept": "text/turtle"})
                r = conn.getresponse()
                break
            except OSError:
                if time.monotonic() > deadline or proc.poll() is not None:
                    raise
                time.sleep(0.1)
        assert r.status == 303 and r.getheader("Location") == "/data/InC/1.0/"
    finally:
        proc.terminate()
        _, err = proc.communicate(timeout=10)
    lines = [json.loads(x) for x in err.splitlines() if x.startswith("{")]
    assert lines[0] == {"event": "listening", "host": "127.0.0.1", "port": port}
    assert lines[1] == {"method": "GET", "path": "/vocab/InC/1.0/", "status": 303, "format": "turtle",
                        "language": None}


def test_serve_refuses_invalid_vocabulary(tmp_path):
    (tmp_path / "vocab-1.0.ttl").write_text("nonsense", encoding="utf-8")
    result = _run("serve", "--data", str(tmp_path), "--port", str(_free_port()))
    assert result.returncode == EXIT_USAGE
    assert "refusing to start" in result.stderr


def test_serve_refuses_unsupported_default_language():
    result = _run("serve", "--default-language", "de", "--port", str(_free_port()))
    assert result.returncode == EXIT_USAGE
    assert "MISSING_DEFAULT_LANGUAGE" in result.stderr
