from fractions import Fraction as Fr
import xml.etree.ElementTree as ET

from riordan_chordal.documents import solution_document
from riordan_chordal.report import sample_arcs, t_grid, to_csv, to_svg
from riordan_chordal.series import RATIONAL


def _arcs(circle_run, count=5):
    np, sol = circle_run
    doc = solution_document(sol, np, "rational", None)
    return sample_arcs(sol, doc["normalized"], t_grid(Fr(-1, 10), Fr(1, 10), count, RATIONAL))


def test_grid_is_exact():
    assert t_grid(Fr(0), Fr(1), 3, RATIONAL) == [0, Fr(1, 2), 1]


def test_csv_rows(circle_run):
    lines = to_csv(_arcs(circle_run)).splitlines()
    assert lines[0] == "t,x,y"
    assert len(lines) == 6
    assert lines[3] == "0,2,0"
    t, x, y = lines[1].split(",")
    assert (t, y) == ("-1/10", "-1/10")


def test_arcs_start_at_vertices(circle_run):
    arcs = _arcs(circle_run, 3)
    assert arcs.near_v1[1] == (2, 0)
    assert arcs.near_v2_P[1] == (-3, 0) == arcs.near_v2_Q[1]
    assert arcs.points == {"V1": (2, 0), "P": (1, 0), "Q": (-1, 0), "V2": (-3, 0)}


def test_svg_is_deterministic_and_labeled(circle_run):
    a, b = to_svg(_arcs(circle_run)), to_svg(_arcs(circle_run))
    assert a == b
    root = ET.fromstring(a)
    ids = {el.get("id") for el in root if el.get("id")}
    assert ids == {"axis", "near-V1", "near-V2-P", "near-V2-Q"}
    labels = [el.text for el in root if el.tag.endswith("text")]
    assert labels == ["V1", "P", "Q", "V2"]


def test_figure_is_written(circle_run, tmp_path):
    from riordan_chordal.plotting import plot_local_solution

    out = plot_local_solution(_arcs(circle_run, 11), circle_run[1], tmp_path / "arcs.png", dpi=60)
    assert out.exists() and out.read_bytes()[:4] == b"\x89PNG"
