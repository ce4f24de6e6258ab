import pytest

from conceptspace.errors import (
    CycleDetected,
    DocumentSyntaxError,
    SchemaError,
    UnknownCorpusEntry,
    WitnessNotInIntersection,
)
from conceptspace.io import (
    CORPUS_NAMES,
    corpus_text,
    export_dot,
    load_corpus,
    parse_document,
    parse_script,
    write_document,
    write_script,
)
from conceptspace.space import axioms, check_theorem, empty_space
from conceptspace.transform import apply_script, diff

MINIMAL = '{"version": 1, "vertices": [], "edges": []}'


def test_minimal_document():
    doc = parse_document(MINIMAL)
    assert doc.space == empty_space()
    assert write_document(doc) == '{\n  "version": 1,\n  "name": "",\n  "vertices": [],\n  "edges": []\n}\n'


def test_unknown_edge_endpoint_is_schema_error():
    text = '{"version": 1, "vertices": [{"id": "X", "label": "x"}], "edges": [["X", "Zed"]]}'
    with pytest.raises(SchemaError) as info:
        parse_document(text)
    assert "Zed" in str(info.value)
    assert info.value.path == "edges[0]"


def test_syntax_error_position():
    with pytest.raises(DocumentSyntaxError) as info:
        parse_document('{\n  "version": 1,\n  "vertices": [,]\n}')
    assert (info.value.line, info.value.column) == (3, 16)


@pytest.mark.parametrize(
    "text",
    [
        '{"version": 1.0, "vertices": [], "edges": []}',
        '{"version": 1, "vertices": [], "edges": [], "name": NaN}',
        '{"version": 1, "version": 1, "vertices": [], "edges": []}',
    ],
)
def test_outside_the_json_subset(text):
    with pytest.raises(DocumentSyntaxError):
        parse_document(text)


@pytest.mark.parametrize(
    "text, path",
    [
        ('{"version": 2, "vertices": [], "edges": []}', "version"),
        ('{"version": true, "vertices": [], "edges": []}', "version"),
        ('{"vertices": [], "edges": []}', ""),
        ('{"version": 1, "vertices": [], "edges": [], "extra": 1}', ""),
        ('{"version": 1, "vertices": [{"id": "X"}], "edges": []}', "vertices[0]"),
        ('{"version": 1, "vertices": [{"id": "X", "label": "x", "content": null}], "edges": []}',
         "vertices[0].content"),
        ('{"version": 1, "vertices": [{"id": "X", "label": "x", "content": ["a", "a"]}], "edges": []}',
         "vertices[0].content"),
        ('{"version": 1, "vertices": [], "edges": [["X"]]}', "edges[0]"),
        ('{"version": 1, "vertices": [], "edges": [], "scripts": {"s": {"mode": "loose", "steps": []}}}',
         "scripts.s.mode"),
        ('{"version": 1, "vertices": [], "edges": [], "scripts": {"s": {"mode": "strict", "steps": [{"op": "zap"}]}}}',
         "scripts.s.steps[0].op"),
    ],
)
def test_schema_errors(text, path):
    with pytest.raises(SchemaError) as info:
        parse_document(text)
    assert info.value.path == path


def test_build_errors_propagate():
    text = ('{"version": 1, "vertices": [{"id": "X", "label": "x"}, {"id": "Y", "label": "y"}],'
            ' "edges": [["X", "Y"], ["Y", "X"]]}')
    with pytest.raises(CycleDetected):
        parse_document(text)


def test_artifact_errors_carry_location():
    text = ('{"version": 1, "vertices": [{"id": "X", "label": "x", "content": ["a"]}], "edges": [],'
            ' "artifacts": [{"header": "law", "support": ["X"], "witness": "b"}]}')
    with pytest.raises(WitnessNotInIntersection) as info:
        parse_document(text)
    assert info.value.location == "artifacts[0]"


def test_unordered_input_is_sorted_on_write():
    text = ('{"version": 1, "name": "u", "vertices": [{"id": "b", "label": "B", "content": ["z", "y"]},'
            ' {"id": "a", "label": "A"}], "edges": [["b", "a"]]}')
    out = write_document(parse_document(text))
    assert out.index('"id": "a"') < out.index('"id": "b"')
    assert '"content": ["y", "z"]' in out
    assert write_document(parse_document(out)) == out


def test_unicode_written_verbatim():
    out = corpus_text("relativistic")
    assert "√(1−v²/c²)" in out


@pytest.mark.parametrize("name", CORPUS_NAMES)
def test_corpus_round_trip(name):
    text = corpus_text(name)
    doc = parse_document(text)
    assert write_document(doc) == text
    assert parse_document(write_document(doc)) == doc
    assert text.endswith("\n") and "\r" not in text


@pytest.mark.parametrize("name", CORPUS_NAMES)
def test_corpus_theorem_holds(name):
    assert check_theorem(load_corpus(name).space).holds


def test_geocentric_entry():
    s = load_corpus("geocentric").space
    assert s.ids == ("A1", "A2", "V1", "V2")
    assert s.vertex("A1").label == "Earth Stationary & Central"
    assert s.vertex("A2").label == "Uniform Circular Motion"
    assert s.vertex("V2").label == "Epicycle-Deferent Model"
    assert s.vertex("V1").label == "Planetary Predictions"
    assert len(s.edges) == 3


def test_newtonian_entry():
    s = load_corpus("newtonian").space
    labels = {s.vertex(a).label for a in axioms(s)}
    assert labels == {"Absolute time", "Separate space and time", "Gravity as force"}
    assert s.vertex("R1").label == "p = mv"
    assert ("R1", "A1") in s.edge_set


def test_relativistic_entry():
    s = load_corpus("relativistic").space
    assert s.vertex("R1").label == "p = mv/√(1−v²/c²)"
    assert s.vertex("A1").label == "Lorentz invariance"
    assert s.vertex("A2").label == "Constant speed of light"
    assert {("R1", "A1"), ("R1", "A2")} <= s.edge_set


def test_euclidean_entries():
    euc = load_corpus("euclidean").space
    assert "P" in axioms(euc)
    assert euc.vertex("P").label.startswith("Parallel Postulate")
    assert euc.vertex("R1").label == "Triangle angle sum = 180°"
    assert ("R1", "P") in euc.edge_set
    non = load_corpus("noneuclidean").space
    assert "P" not in non
    assert axioms(non) == axioms(euc) - {"P"}


@pytest.mark.parametrize(
    "src, dst, script",
    [
        ("geocentric", "heliocentric", "copernican"),
        ("newtonian", "relativistic", "relativity"),
        ("euclidean", "noneuclidean", "parallel-removal"),
    ],
)
def test_corpus_pairs(src, dst, script):
    a, b = load_corpus(src), load_corpus(dst)
    assert apply_script(a.space, a.scripts[script]).structurally_equal(b.space)
    assert apply_script(a.space, diff(a.space, b.space)).structurally_equal(b.space)
    assert diff(a.space, b.space) == a.scripts[script]


def test_unknown_corpus_entry():
    with pytest.raises(UnknownCorpusEntry):
        load_corpus("phlogiston")


def test_script_file_round_trip():
    doc = load_corpus("geocentric")
    text = write_script(doc.scripts["copernican"])
    assert parse_script(text) == doc.scripts["copernican"]
    assert write_script(parse_script(text)) == text


def test_dot_geocentric():
    dot = export_dot(load_corpus("geocentric").space)
    lines = dot.splitlines()
    nodes = [line for line in lines if "[label=" in line]
    edges = [line for line in lines if "->" in line]
    assert len(nodes) == 4 and len(edges) == 3
    assert [n.split()[0] for n in nodes if "bold" in n] == ['"A1"', '"A2"']
    assert export_dot(load_corpus("geocentric").space) == dot


def test_dot_empty_and_escaping():
    assert export_dot(empty_space()) == 'digraph "space" {\n  rankdir=TB;\n}\n'
    doc = parse_document(
        '{"version": 1, "name": "q", "vertices": [{"id": "X", "label": "say \\"hi\\""}], "edges": []}'
    )
    assert '[label="say \\"hi\\"", ' in export_dot(doc.space)
