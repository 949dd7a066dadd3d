import pytest

from dissect import families
from dissect.render import render_svg


def test_pair_with_hgraph(pair):
    svg = render_svg(pair, ["tiles", "hgraph"])
    assert svg.count("<polygon") == 2
    assert svg.count("<line") == 2
    assert 'marker-end="url(#arrow)"' in svg


def test_polygons_only(pair):
    svg = render_svg(pair)
    assert svg.count("<polygon") == 2
    assert "<line" not in svg and "<circle" not in svg


def test_deterministic():
    t = families.mixed_pairs_16()
    layers = ["tiles", "labels", "vertices", "hgraph", "segments"]
    assert render_svg(t, layers) == render_svg(families.mixed_pairs_16(), layers)


def test_segments_and_vertices(grid2):
    svg = render_svg(grid2, ["tiles", "segments", "vertices"])
    assert svg.count("<circle") == 9
    assert svg.count("<line") == 2  # the two interior lines


def test_unknown_layer(pair):
    with pytest.raises(ValueError):
        render_svg(pair, ["tiles", "glow"])


def test_y_axis_flipped(grid2):
    # the tile at the origin is drawn at the bottom of the picture
    svg = render_svg(grid2)
    first = next(line for line in svg.splitlines() if line.startswith("<polygon"))
    assert '10,410' in first
