"""The CSV written by the CLI is the input of the plotting script; pin its schema."""

import csv
import json
import math
import os
import subprocess

import pytest

CLI = os.environ.get("HOLDEREM_CLI", "holderem")
HEADER = ["experiment", "model", "n", "p", "M", "seed", "stat", "estimate", "std_error", "bound", "quotient"]


def run(args, tmp_path, config=None):
    cmd = [CLI, *args]
    if config is not None:
        path = tmp_path / "config.json"
        path.write_text(json.dumps(config))
        cmd += ["--config", str(path)]
    return subprocess.run(cmd, capture_output=True, text=True, timeout=600)


def read_csv(path):
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        return header, [dict(zip(header, row)) for row in reader]


def check_schema(header, rows):
    assert header == HEADER
    for row in rows:
        assert len(row) == len(HEADER)
        assert row["experiment"] and row["model"] and row["stat"]
        int(row["seed"])
        assert math.isfinite(float(row["estimate"]))
        for key in ("n", "M"):
            if row[key]:
                assert int(row[key]) >= 0
        for key in ("p", "std_error", "bound", "quotient"):
            if row[key]:
                float(row[key])


def test_figure1_csv_schema(tmp_path):
    out = tmp_path / "fig.csv"
    r = run(["figure1", "--out", str(out), "--samples", "40"], tmp_path, {"n_list": [2, 4, 8, 16]})
    assert r.returncode in (0, 1), r.stderr
    header, rows = read_csv(out)
    check_schema(header, rows)
    assert [int(row["n"]) for row in rows] == [2, 4, 8, 16]
    assert all(row["stat"] == "four_point" and row["M"] == "40" for row in rows)
    assert all(row["quotient"] for row in rows)


def test_stdout_and_constant_rates(tmp_path):
    r = run(["rates", "--model", "constant", "--samples", "20"], tmp_path, {"n_list": [2, 4]})
    assert r.returncode == 0, r.stderr
    lines = r.stdout.splitlines()
    assert lines[0] == ",".join(HEADER)
    rows = list(csv.DictReader(lines))
    check_schema(HEADER, rows)
    assert rows and all(float(row["estimate"]) <= 1e-12 for row in rows)


def test_bounds_rows_carry_bounds(tmp_path):
    out = tmp_path / "b.csv"
    cfg = {"samples": 50, "p_list": [4], "sweep": {"s": [0.0], "t": [1.0], "x": [[1.0]], "n": [16], "finest_n": 16}}
    r = run(["bounds-table", "--out", str(out)], tmp_path, cfg)
    assert r.returncode == 0, r.stderr
    header, rows = read_csv(out)
    check_schema(header, rows)
    assert rows and all(row["bound"] for row in rows)
    assert {row["stat"].split(":")[0] for row in rows} == {f"holder_{i}" for i in ("i", "ii", "iii", "iv", "v", "vi")}


@pytest.mark.parametrize(
    "config",
    [{"bogus": 1}, {"experiment": "rates"}, {"model": {"expr": {"mu": "cos(x", "sigma": "1"}}}],
)
def test_config_errors_exit_2(tmp_path, config):
    r = run(["figure1"], tmp_path, config)
    assert r.returncode == 2
    assert r.stderr
