import io
import re

import pytest

from safetyreg.csvio import read_sweep_csv, sweep_csv_text
from safetyreg.game import GameParams
from safetyreg.heatmap import CLASS_COLORS, ramp, render, select_delta
from safetyreg.sweep import SweepGrid, run_sweep


@pytest.fixture(scope="module")
def line_rows():
    recs = run_sweep(GameParams.canonical(), SweepGrid.safety_line())
    return read_sweep_csv(io.StringIO(sweep_csv_text(recs)))


def _cell(svg, tg, td):
    m = re.search(rf'<rect [^>]*data-theta-g="{tg}" data-theta-d="{td}" data-value="([^"]*)"', svg)
    return m.group(1) if m else None


def test_safety_heatmap_cells(line_rows):
    svg = render(line_rows, "safety")
    assert svg.startswith("<svg") and svg.rstrip().endswith("</svg>")
    assert svg.count("data-theta-g=") == 501
    assert _cell(svg, "0.0", "0.45") == "0.45"
    assert _cell(svg, "0.0", "0.0") == "0.5"
    assert "θ_G" in svg and "θ_D" in svg
    assert "legend-min" in svg and "legend-max" in svg


def test_class_heatmap(line_rows):
    svg = render(line_rows, "class")
    assert _cell(svg, "0.0", "0.45") == "backfire"
    assert CLASS_COLORS["backfire"] in svg


def test_ramp_endpoints():
    assert ramp(0.0) == ramp(-1.0) == "#d73027"
    assert ramp(0.5) == "#ffffbf"
    assert ramp(1.0) == ramp(2.0) == "#1a9850"


def test_select_delta_prefers_half():
    rows = [{"delta": d} for d in (0.3, 0.45, 0.55, 0.9)]
    assert select_delta(rows) == 0.45


def test_unknown_metric_and_empty():
    with pytest.raises(ValueError):
        render([{"delta": 0.5}], "profit")
    with pytest.raises(ValueError):
        render([], "safety")
