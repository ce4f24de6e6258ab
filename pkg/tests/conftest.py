import pytest

from conceptspace.space import ConstraintVertex, build_space


def make(edges, ids=None, name="t", contents=None):
    """Structural space from an edge list; isolated ids via ``ids``."""
    contents = contents or {}
    all_ids = set(ids or ())
    for u, v in edges:
        all_ids |= {u, v}
    verts = [ConstraintVertex(i, i, contents.get(i)) for i in sorted(all_ids)]
    return build_space(name, verts, edges)


@pytest.fixture
def geo():
    return make([("V1", "V2"), ("V2", "A1"), ("V2", "A2")], name="geo")


@pytest.fixture
def helio():
    return make([("V1", "V2"), ("V2", "A1"), ("V2", "A2"), ("V3'", "V2")], name="helio")


_ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion id")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when not in ("setup", "call"):
        return
    label = marker.args[0]
    if report.failed:
        _ACCEPTANCE[label] = "fail"
    elif report.when == "call" and _ACCEPTANCE.get(label) != "fail":
        _ACCEPTANCE[label] = "pass"


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_ACCEPTANCE, key=lambda s: int(s.split(".")[0])):
        terminalreporter.write_line(f"{_ACCEPTANCE[label].upper():4}  {label}")
