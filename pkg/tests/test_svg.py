"""Hand-written SVG plots and their backing CSV."""
import csv
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from sepscope.svg import PlotSpec, Series, render, write_plot


def _spec(kind):
    x = np.linspace(0, 1, 5)
    z = x**2 if kind == "scatter3d-projection" else None
    return PlotSpec(kind, "t <&>", "x", "y", [Series("a", x, x, z, err=0.1 * x), Series("b", x, 1 - x, z)])


@pytest.mark.parametrize("kind", ["curve", "scatter3d-projection", "histogram"])
def test_render_is_valid_xml(kind):
    root = ET.fromstring(render(_spec(kind)).encode())
    assert root.tag.endswith("svg") and root.get("version") == "1.1"


def test_unknown_kind():
    with pytest.raises(ValueError):
        PlotSpec("pie", "t", "x", "y")


def test_nan_points_skipped():
    s = PlotSpec("curve", "t", "x", "y", [Series("a", np.array([0.0, 0.5, 1.0]), np.array([0.0, np.nan, 1.0]))])
    assert "nan" not in render(s)


def test_write_plot_backing_csv(tmp_path):
    svg, data = write_plot(_spec("scatter3d-projection"), tmp_path / "p")
    assert svg.suffix == ".svg" and data.suffix == ".csv"
    rows = list(csv.DictReader(data.open()))
    assert len(rows) == 10
    assert list(rows[0]) == ["series", "x", "y", "z", "err"]
    assert float(rows[4]["z"]) == 1.0
