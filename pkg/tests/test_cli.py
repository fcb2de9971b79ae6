import json

import numpy as np
import pytest

from rgstates.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_threshold_star3(capsys):
    code, out, _ = run(capsys, "threshold", "--graph", "star:3", "--level", "exact")
    assert code == 0
    doc = json.loads(out)
    assert abs(doc["p_w"] - 3 ** -0.5) < 1e-9


def test_threshold_level_key_and_null(capsys):
    code, out, _ = run(capsys, "threshold", "--graph", "cycle:4", "--level", "2")
    assert code == 0
    assert "p_F" in json.loads(out)
    # single edge: witness already negative on the whole bracket
    code, out, _ = run(capsys, "threshold", "--graph", "path:2")
    assert code == 0
    assert json.loads(out) == {"p_w": None}


def test_rank_complete3(capsys):
    code, out, _ = run(capsys, "rank", "--graph", "complete:3", "--p", "0.5")
    assert code == 0
    assert json.loads(out) == {"rank": 5}


def test_overlap_and_witness_agree(capsys):
    _, out_exact, _ = run(capsys, "witness", "--graph", "path:5",
                          "--p", "0.75", "--level", "exact")
    _, out_full, _ = run(capsys, "witness", "--graph", "path:5",
                         "--p", "0.75", "--level", "4")
    exact, full = json.loads(out_exact), json.loads(out_full)
    assert abs(exact["witness"] - full["witness"]) < 1e-12
    assert exact["constant"] == 0.5
    assert abs(exact["witness"] - (0.5 - exact["overlap"])) < 1e-12


def test_overlap_value(capsys):
    code, out, _ = run(capsys, "overlap", "--graph", "star:3", "--p", "0.5")
    assert code == 0
    assert abs(json.loads(out)["overlap"] - 0.4375) < 1e-12


def test_sweep_csv_row_count_and_stability(capsys):
    args = ("sweep", "--graph", "path:6", "--quantity", "gme_witness",
            "--level", "2", "--p-grid", "0.5:1.0:0.01", "--out", "csv")
    code, out, _ = run(capsys, *args)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "p,value"
    assert len(lines) == 52
    assert lines[1].startswith("0.5,")
    assert lines[-1].startswith("1,")
    code2, out2, _ = run(capsys, *args)
    assert out2 == out  # bit-stable across runs


def test_sweep_json_records(capsys):
    code, out, _ = run(capsys, "sweep", "--graph", "star:3", "--quantity",
                       "overlap", "--p-grid", "0:1:0.5", "--out", "json")
    assert code == 0
    records = json.loads(out)
    assert [r["p"] for r in records] == [0.0, 0.5, 1.0]
    assert records[0] == {"p": 0.0, "value": 0.25, "quantity": "overlap",
                          "graph_spec": "star:3", "level": "exact"}


def test_sweep_negativity_requires_bipartition(capsys):
    code, _, err = run(capsys, "sweep", "--graph", "path:3", "--quantity",
                       "negativity", "--p-grid", "0:1:0.5")
    assert code == 2
    assert "bipartition" in err
    code, out, _ = run(capsys, "sweep", "--graph", "path:3", "--quantity",
                       "negativity", "--p-grid", "0:1:0.5",
                       "--bipartition", "0|1,2")
    assert code == 0
    rows = out.strip().splitlines()[1:]
    assert float(rows[0].split(",")[1]) < 1e-12
    assert float(rows[-1].split(",")[1]) > 0.0


def test_sweep_rank_and_lhv(capsys):
    code, out, _ = run(capsys, "sweep", "--graph", "path:3", "--quantity",
                       "rank", "--p-grid", "0.5:0.5:0.1")
    assert code == 0
    assert out.strip().splitlines()[1] == "0.5,4"
    code, out, _ = run(capsys, "sweep", "--graph", "star:3", "--quantity",
                       "lhv_witness", "--level", "2", "--p-grid", "0.5:1:0.25")
    assert code == 0
    values = [float(line.split(",")[1])
              for line in out.strip().splitlines()[1:]]
    assert values[0] > 0.0 and values[-1] < 0.0


def test_negativity_subcommand(capsys):
    code, out, _ = run(capsys, "negativity", "--graph", "complete:3",
                       "--p", "1", "--bipartition", "0|1,2")
    assert code == 0
    assert json.loads(out)["negativity"] > 0.4


def test_negativity_rejects_bad_bipartition(capsys):
    for bad in ("0|1", "0,1|1,2", "0;1", "0,9|1,2"):
        code, _, err = run(capsys, "negativity", "--graph", "complete:3",
                           "--p", "0.5", "--bipartition", bad)
        assert code == 2, bad
        assert err


def test_dim_cover_lhv_bound(capsys):
    assert json.loads(run(capsys, "dim", "--graph", "complete:4")[1]) == {"dim": 12}
    assert json.loads(run(capsys, "cover", "--graph", "cycle:5")[1]) == {"cover": 3}
    doc = json.loads(run(capsys, "lhv-bound", "--graph", "star:3")[1])
    assert abs(doc["D"] - 0.75) < 1e-12


def test_lhv_threshold_supplied_bound(capsys):
    code, out, _ = run(capsys, "lhv-threshold", "--graph", "star:6",
                       "--lhv-bound", "0.625")
    assert code == 0
    doc = json.loads(out)
    assert doc["D"] == 0.625
    assert 0.5 < doc["p_lhv"] < 1.0
    code, out, _ = run(capsys, "lhv-threshold", "--graph", "path:2",
                       "--lhv-bound", "1.0")
    assert json.loads(out)["p_lhv"] is None


def test_sample_schema_and_determinism(capsys):
    args = ("sample", "--graph", "path:3", "--p", "0.5", "--shots", "2000",
            "--seed", "11")
    code, out, _ = run(capsys, *args)
    assert code == 0
    doc = json.loads(out)
    assert doc["shots"] == 2000 and doc["seed"] == 11
    assert sum(doc["counts"].values()) == 2000
    assert run(capsys, *args)[1] == out


def test_json_graph_and_file_specs(capsys, tmp_path):
    path = tmp_path / "g.json"
    path.write_text('{"n":2,"edges":[[0,1]]}')
    code, out, _ = run(capsys, "rank", "--graph", f"file:{path}", "--p", "1")
    assert code == 0
    assert json.loads(out) == {"rank": 1}
    code, out, _ = run(capsys, "rank", "--graph", '{"n":2,"edges":[[0,1]]}',
                       "--p", "1")
    assert json.loads(out) == {"rank": 1}


def test_dump_matrix(capsys, tmp_path):
    base = tmp_path / "rho"
    code, _, _ = run(capsys, "rank", "--graph", "path:2", "--p", "0.25",
                     "--dump-matrix", str(base))
    assert code == 0
    header = json.loads((tmp_path / "rho.json").read_text())
    assert header == {"n": 2, "p": 0.25, "graph_spec": "path:2"}
    rows = (tmp_path / "rho.csv").read_text().splitlines()
    matrix = np.array([[float(v) for v in row.split(",")] for row in rows])
    assert matrix.shape == (4, 4)
    assert abs(np.trace(matrix) - 1) < 1e-10


def test_usage_errors_exit_2(capsys):
    assert run(capsys, "threshold", "--graph", "bogus:3")[0] == 2
    assert run(capsys, "rank", "--graph", "path:3", "--p", "1.5")[0] == 2
    assert run(capsys, "rank", "--graph", "path:3", "--p", "0.5",
               "--unknown-flag")[0] == 2
    assert run(capsys, "not-a-command")[0] == 2
    assert run(capsys, "sweep", "--graph", "path:3", "--quantity", "overlap",
               "--p-grid", "0.9:0.1:0.1")[0] == 2


def test_size_cap_exits_1(capsys):
    code, _, err = run(capsys, "rank", "--graph", "complete:9", "--p", "0.5")
    assert code == 1
    assert "capped" in err


def test_figs_targets(capsys, tmp_path):
    code, out, _ = run(capsys, "figs", "--target", "fig4",
                       "--out-dir", str(tmp_path))
    assert code == 0
    written = json.loads(out)["written"]
    lines = (tmp_path / "fig4.csv").read_text().strip().splitlines()
    assert lines[0] == "family,n,p_w"
    star_rows = [l for l in lines[1:] if l.startswith("star,")]
    assert len(star_rows) == 8
    for row in star_rows:
        _, n, p_w = row.split(",")
        assert abs(float(p_w) - 3 ** (-1 / (int(n) - 1))) < 1e-9
    assert written.endswith("fig4.csv")


def test_figs_rejects_fig3(capsys):
    # the PPT-mixer figure needs an SDP solver and is out of scope
    assert run(capsys, "figs", "--target", "fig3")[0] == 2


def test_grid_includes_endpoints(capsys):
    code, out, _ = run(capsys, "sweep", "--graph", "star:3", "--quantity",
                       "overlap", "--p-grid", "0.1:0.7:0.2")
    grid = [float(line.split(",")[0]) for line in out.strip().splitlines()[1:]]
    assert grid == pytest.approx([0.1, 0.3, 0.5, 0.7])
