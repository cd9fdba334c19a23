from __future__ import annotations

from collections import defaultdict
from pathlib import Path

import pytest

from vocab_forge import sample_vocabulary_path
from vocab_forge.http import Request, ServerConfig, VocabularySnapshot, handle
from vocab_forge.rdf import parse_turtle
from vocab_forge.vocab import load_scheme

FIXTURES = Path(__file__).parent / "fixtures"
BASE = "http://rightsstatements.org"

CRITERIA = {
    1: "406 byte-exactness",
    2: "recipe-6 conformance matrix",
    3: "dereferenceability sweep",
    4: "round-trip properties",
    5: "versioning state machine",
    6: "parameter-rule closure",
    7: "language negotiation",
    8: "lint corpus",
    9: "CLI/server equivalence",
}

_outcomes: dict[int, list[str]] = defaultdict(list)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion exercised by the test")


def pytest_runtest_logreport(report):
    number = getattr(report, "criterion", None)
    if number is None:
        return
    if report.when == "call" or report.outcome != "passed":
        _outcomes[number].append(report.outcome)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        outcome.get_result().criterion = marker.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for number, name in CRITERIA.items():
        results = _outcomes.get(number)
        if not results:
            status = "NOT RUN"
        elif all(r == "passed" for r in results):
            status = "PASS"
        else:
            status = "FAIL"
        terminalreporter.write_line(f"criterion {number} ({name}): {status} [{len(results)} test(s)]")


@pytest.fixture(scope="session")
def sample_text() -> str:
    return Path(sample_vocabulary_path()).read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def sample_scheme(sample_text):
    return load_scheme(parse_turtle(sample_text), BASE)


@pytest.fixture(scope="session")
def snapshot(sample_scheme):
    return VocabularySnapshot.from_schemes([sample_scheme])


@pytest.fixture(scope="session")
def config():
    return ServerConfig(base_uri=BASE)


@pytest.fixture
def get(snapshot, config):
    def _get(target, headers=None, method="GET", snap=None, cfg=None):
        return handle(Request.get(target, headers, method), snap or snapshot, cfg or config)

    return _get


@pytest.fixture(scope="session")
def inc_edu_example_graph():
    return parse_turtle((FIXTURES / "inc-edu-example.ttl").read_text(encoding="utf-8"))
