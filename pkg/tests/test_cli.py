"""Command line interface: flags, schemas, determinism, exit codes."""

import csv
import json

import pytest

from entvol import cli


def run_cli(*argv):
    return cli.main(list(argv))


def read_rows(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


BASE = ["run", "--family", "bell-diagonal", "--samples", "4000",
        "--chains", "4", "--seed", "7", "--threads", "1"]


def test_run_writes_csv_with_schema(tmp_path, capsys):
    out = tmp_path / "bd.csv"
    assert run_cli(*BASE, "--out", str(out)) == 0
    rows = read_rows(out)
    assert rows[0] == cli.RUN_CSV_HEADER
    by_criterion = {(r[2], r[3]): r for r in rows[1:]}
    ppt = by_criterion[("ppt", "")]
    assert ppt[0] == "bell-diagonal" and ppt[1] == "2x2"
    assert 0.4 < float(ppt[6]) < 0.6
    assert ppt[9] == "7" and ppt[10] == "4000"
    assert ("renyi", "inf") in by_criterion
    assert "criterion" in capsys.readouterr().out


def test_run_output_is_byte_identical(tmp_path):
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    run_cli(*BASE, "--out", str(out1))
    run_cli(*BASE, "--out", str(out2))
    assert out1.read_bytes() == out2.read_bytes()


def test_run_json_manifest_roundtrips(tmp_path):
    out = tmp_path / "bd.json"
    assert run_cli(*BASE, "--format", "json", "--out", str(out)) == 0
    manifest = json.loads(out.read_text())
    assert manifest["schema"] == "entvol-run/1"
    assert manifest["config"]["family"] == "bell-diagonal"
    assert manifest["config"]["alphas"][-1] == "inf"
    assert len(manifest["results"]) == 9  # ppt/reduction/majorization + 6 alphas
    assert json.loads(json.dumps(manifest)) == manifest
    for entry in manifest["results"]:
        assert entry["count"] <= entry["total"] == 4000


@pytest.mark.parametrize(
    "argv",
    [
        ["run", "--family", "general", "--dims", "2x2", "--samples", "0"],
        ["run", "--family", "general", "--samples", "100"],  # missing dims
        ["run", "--family", "bell-diagonal", "--dims", "2x3", "--samples", "100"],
        ["run", "--family", "qbqt-i", "--dims", "2x2", "--samples", "100"],
        ["run", "--family", "no-such-family", "--samples", "100"],
        ["run", "--family", "bell-diagonal", "--samples", "10", "--chains", "20"],
        ["run", "--family", "general", "--dims", "1x3", "--samples", "100"],
        ["run", "--family", "bell-diagonal", "--samples", "100", "--alpha", "-1"],
        ["sweep-alpha", "--family", "bell-diagonal", "--samples", "100"],  # no grid
        ["slice-bd", "--points", "1"],
    ],
)
def test_usage_errors_exit_2(argv, tmp_path):
    with pytest.raises(SystemExit) as exc:
        run_cli(*argv, "--out", str(tmp_path / "x.csv"))
    assert exc.value.code == 2


def test_runtime_error_exits_3(tmp_path):
    ckpt = tmp_path / "ckpt.json"
    args = ["run", "--family", "bell-diagonal", "--samples", "64", "--chains", "2",
            "--threads", "1", "--checkpoint", str(ckpt)]
    assert run_cli(*args, "--seed", "1", "--out", str(tmp_path / "a.csv")) == 0
    # resuming with a different seed mismatches the checkpoint
    code = run_cli(*args, "--seed", "2", "--out", str(tmp_path / "b.csv"))
    assert code == 3


def test_out_dir_environment_variable(tmp_path, monkeypatch):
    monkeypatch.setenv("ENTVOL_OUT_DIR", str(tmp_path))
    assert run_cli(*BASE, "--out", "sub.csv") == 0
    assert (tmp_path / "sub.csv").exists()


def test_sweep_alpha_grid_and_schema(tmp_path):
    out = tmp_path / "sweep.csv"
    code = run_cli(
        "sweep-alpha", "--family", "x-state", "--samples", "2000", "--chains", "2",
        "--seed", "3", "--threads", "1", "--alpha-grid", "1:2:3,inf", "--out", str(out),
    )
    assert code == 0
    rows = read_rows(out)
    assert rows[0] == cli.SWEEP_CSV_HEADER
    assert [r[1] for r in rows[1:]] == ["1", "1.5", "2", "inf"]
    assert float(rows[1][2]) == 1.0
    assert float(rows[4][2]) == 0.0  # 1/alpha for inf
    ratios = [float(r[3]) for r in rows[1:]]
    assert ratios[0] >= ratios[-1]  # higher order detects at least as much


def test_sweep_alpha_single_inf_grid(tmp_path):
    out = tmp_path / "inf.csv"
    code = run_cli(
        "sweep-alpha", "--family", "bell-diagonal", "--samples", "1000", "--chains", "2",
        "--seed", "3", "--threads", "1", "--alpha-grid", "inf", "--out", str(out),
    )
    assert code == 0
    rows = read_rows(out)
    assert len(rows) == 2 and rows[1][1] == "inf"


def test_slice_bd_boundaries(tmp_path):
    out = tmp_path / "slice.csv"
    assert run_cli("slice-bd", "--points", "241", "--out", str(out)) == 0
    rows = read_rows(out)
    assert rows[0] == cli.SLICE_CSV_HEADER
    by_x = {round(float(r[0]), 6): r for r in rows[1:]}
    grid = sorted(by_x)

    def row(x):
        return by_x[round(x, 6)]

    assert row(0.0)[1:] == ["true"] * 6
    # outside |x| <= 5/12 the slice leaves the state body
    assert row(grid[0])[1] == "false" and row(grid[-1])[1] == "false"
    assert row(0.45)[2] == ""
    # four equivalent criteria flip right past 1/12 = 20/240
    assert row(19 / 240)[2:6] == ["true"] * 4
    assert row(21 / 240)[2:6] == ["false"] * 4
    # S_1 flips between 92/240 and 93/240 (0.3833 < 0.3873 < 0.3875)
    assert row(92 / 240)[6] == "true"
    assert row(93 / 240)[6] == "false"


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        run_cli("--version")
    assert exc.value.code == 0
