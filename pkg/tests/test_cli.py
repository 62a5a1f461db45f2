import csv
import io

import pytest

from straightedge.cli import main
from straightedge.io import CSV_HEADER


def _rows(text):
    rows = list(csv.reader(io.StringIO(text)))
    assert tuple(rows[0]) == CSV_HEADER
    return rows[1:]


@pytest.fixture
def grid_file(tmp_path):
    path = tmp_path / "g.graphml"
    assert main(["generate", "grid", "--k", "5", "--out", str(path)]) == 0
    return path


def test_generate_then_graph_straightness(grid_file, capsys):
    capsys.readouterr()
    assert main(["graph-straightness", "--graph", str(grid_file), "--mode", "continuous"]) == 0
    (row,) = _rows(capsys.readouterr().out)
    assert row[0] == "S_G(G)" and 0 <= float(row[2]) <= 1


def test_unknown_flag(grid_file, capsys):
    assert main(["graph-straightness", "--graph", str(grid_file), "--frobnicate"]) == 1
    assert "usage" in capsys.readouterr().err


def test_discrete_needs_theta(grid_file, capsys):
    assert main(["vertex-straightness", "--graph", str(grid_file), "--vertex", "0", "--mode", "discrete"]) == 1
    assert "--theta" in capsys.readouterr().err


def test_missing_file_is_runtime_error(tmp_path, capsys):
    assert main(["graph-straightness", "--graph", str(tmp_path / "none.graphml")]) == 2


def test_vertex_edge_and_discrete_commands(grid_file, capsys, tmp_path):
    capsys.readouterr()
    out_csv = tmp_path / "r.csv"
    assert main(["vertex-straightness", "--graph", str(grid_file), "--vertex", "0",
                 "--mode", "discrete", "--theta", "3", "--distances", "precomputed",
                 "--output", str(out_csv)]) == 0
    (row,) = _rows(capsys.readouterr().out)
    assert row[0] == "sigma_theta" and row[3] == "3" and row[7] == "precomputed"
    assert out_csv.exists()
    assert main(["vertex-straightness", "--graph", str(grid_file), "--vertex", "0", "--target", "1,2"]) == 0
    (row,) = _rows(capsys.readouterr().out)
    assert row[0] == "S_uv(p)" and float(row[2]) == pytest.approx(1.0)
    assert main(["edge-straightness", "--graph", str(grid_file), "--edge", "0,1", "--target", "5,6"]) == 0
    assert _rows(capsys.readouterr().out)[0][0] == "S_e2(e1)"
    assert main(["edge-straightness", "--graph", str(grid_file), "--edge", "0,1", "--exclude-self"]) == 0
    assert _rows(capsys.readouterr().out)[0][0] == "S_G(e)"


def test_sweep_writes_plot(grid_file, capsys, tmp_path):
    capsys.readouterr()
    png = tmp_path / "s.png"
    assert main(["sweep", "--graph", str(grid_file), "--thetas", "1,2,4", "--plot", str(png)]) == 0
    rows = _rows(capsys.readouterr().out)
    assert [r[0] for r in rows] == ["S_G(G)", "sigma_theta", "sigma_theta", "sigma_theta"]
    assert png.exists()


def test_render(grid_file, tmp_path):
    svg = tmp_path / "a.svg"
    assert main(["render", "--graph", str(grid_file), "--measure", "point-edge", "--anchor", "0",
                 "--out", str(svg)]) == 0
    assert svg.read_text(encoding="utf-8").count("<line ") == 40
    assert main(["render", "--graph", str(grid_file), "--measure", "edge-edge", "--anchor", "0",
                 "--out", str(svg)]) == 1
    assert main(["render", "--graph", str(grid_file), "--measure", "point-point", "--anchor", "0",
                 "--out", str(svg)]) == 0


def test_invalid_vertex_is_runtime_error(grid_file):
    assert main(["vertex-straightness", "--graph", str(grid_file), "--vertex", "99"]) == 2
