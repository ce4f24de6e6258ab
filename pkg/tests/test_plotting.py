from conceptspace.io import load_corpus
from conceptspace.plotting import layers, layout, render_space


def test_layers_put_axioms_at_the_bottom():
    s = load_corpus("heliocentric").space
    assert layers(s) == {"A1": 0, "A2": 0, "V2": 1, "V1": 2, "V3'": 2}


def test_layout_centres_rows():
    pos = layout(load_corpus("geocentric").space)
    assert pos["A1"] == (-0.5, 0.0) and pos["A2"] == (0.5, 0.0)
    assert pos["V1"] == (0.0, 2.0)


def test_render_svg(tmp_path):
    out = render_space(load_corpus("euclidean").space, tmp_path / "euclid.svg")
    text = out.read_text()
    assert text.lstrip().startswith("<?xml") and "</svg>" in text
