from __future__ import annotations

from functools import lru_cache

import pytest

from greedycox.automaton import build_greedy_automaton
from greedycox.corpus import load_group
from greedycox.coxeter import compute_nerve
from greedycox.series import from_automaton

_criteria: dict[str, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(id): acceptance criterion covered by the test")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    for key in report.keywords:
        if key.startswith("AC") and key[2:].isdigit():
            prior = _criteria.get(key, "PASS")
            _criteria[key] = "PASS" if prior == "PASS" and report.outcome == "passed" else "FAIL"


def pytest_collection_modifyitems(items):
    for item in items:
        for mark in item.iter_markers("criterion"):
            item.keywords[mark.args[0]] = True


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_criteria, key=lambda k: int(k[2:])):
        terminalreporter.write_line(f"{key} {_criteria[key]}")


@lru_cache(maxsize=None)
def corpus_bundle(name: str):
    """(system, nerve, automaton, representation) for a bundled group, built once."""
    system = load_group(name)
    nerve = compute_nerve(system)
    automaton = build_greedy_automaton(system, nerve=nerve)
    return system, nerve, automaton, from_automaton(automaton)


@pytest.fixture
def bundle():
    return corpus_bundle
