"""CLI contract tests: output formats, exit codes, round trips."""

import json
import os
import subprocess
import sys

from hfsurgery import cli

REPO = os.path.abspath(os.path.join(os.path.dirname(__file__), os.pardir))


def run(args, capsys):
    try:
        code = cli.main(args)
    except SystemExit as exc:  # argparse usage errors
        code = exc.code
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestRank:
    def test_trefoil_both(self, capsys):
        code, out, _ = run(["rank", "trefoil_rh", "-p", "1", "-q", "1"], capsys)
        assert code == 0
        assert out.strip() == "oracle=1 formula=1"

    def test_oracle_only(self, capsys):
        code, out, _ = run(["rank", "figure_eight", "-p", "1", "-q", "2", "--method", "oracle"], capsys)
        assert code == 0 and out.strip() == "oracle=5"

    def test_formula_only(self, capsys):
        code, out, _ = run(["rank", "figure_eight", "-p", "1", "-q", "2", "--method", "formula"], capsys)
        assert code == 0 and out.strip() == "formula=5"

    def test_json_format(self, capsys):
        code, out, _ = run(["rank", "t25", "-p", "3", "-q", "2", "--format", "json"], capsys)
        assert code == 0
        data = json.loads(out)
        assert data["oracle"] == data["formula"]
        assert data["p"] == 3 and data["q"] == 2

    def test_tsv_and_json_numeric_parity(self, capsys):
        code, tsv_out, _ = run(["rank", "t25", "-p", "3", "-q", "2", "--format", "tsv"], capsys)
        assert code == 0
        header, row = tsv_out.strip().splitlines()
        cells = dict(zip(header.split("\t"), row.split("\t")))
        code, json_out, _ = run(["rank", "t25", "-p", "3", "-q", "2", "--format", "json"], capsys)
        data = json.loads(json_out)
        for column in ("oracle", "formula", "t", "b", "genus"):
            assert cells[column] == str(data[column])

    def test_noncoprime_usage_error(self, capsys):
        code, _, err = run(["rank", "trefoil_rh", "-p", "2", "-q", "4"], capsys)
        assert code == 2 and "lowest terms" in err

    def test_unknown_input_usage_error(self, capsys):
        code, _, err = run(["rank", "granny", "-p", "1", "-q", "1"], capsys)
        assert code == 2 and "builtin" in err


class TestScan:
    def test_unknot_grid(self, capsys):
        code, out, _ = run(["scan", "unknot", "--pmax", "4", "--qmax", "4", "--check"], capsys)
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0].startswith("name\t")
        rows = lines[1:]
        assert len(rows) == 11  # coprime pairs up to 4
        for row in rows:
            cells = row.split("\t")
            assert cells[3] == cells[1]  # oracle equals p

    def test_rows_sorted_by_slope(self, capsys):
        _, out, _ = run(["scan", "trefoil_rh", "--pmax", "3", "--qmax", "3"], capsys)
        rows = [line.split("\t") for line in out.strip().splitlines()[1:]]
        slopes = [(int(r[1]), int(r[2])) for r in rows]
        assert slopes == sorted(slopes)

    def test_json_matches_tsv(self, capsys):
        _, tsv_out, _ = run(["scan", "figure_eight", "--pmax", "2", "--qmax", "2"], capsys)
        _, json_out, _ = run(["scan", "figure_eight", "--pmax", "2", "--qmax", "2", "--format", "json"], capsys)
        rows = [line.split("\t") for line in tsv_out.strip().splitlines()[1:]]
        data = json.loads(json_out)
        assert len(rows) == len(data)
        for row, entry in zip(rows, data):
            assert int(row[3]) == entry["oracle"]
            assert int(row[4]) == entry["formula"]


class TestObstructionCommands:
    def test_complement_figure_eight(self, capsys):
        code, out, _ = run(["complement", "figure_eight", "-q", "2"], capsys)
        assert code == 0
        assert "verdict=obstructed" in out and "5" in out

    def test_cosmetic_obstructed(self, capsys):
        code, out, _ = run(["cosmetic", "trefoil_rh", "-r", "1/1", "-s", "1/2"], capsys)
        assert code == 0 and "verdict=obstructed" in out

    def test_cosmetic_json(self, capsys):
        code, out, _ = run(
            ["cosmetic", "unknot", "-r", "1/1", "-s", "1/2", "--format", "json"], capsys
        )
        assert code == 0
        data = json.loads(out)
        assert data["verdict"] == "consistent" and data["ranks"] == [1, 1]

    def test_bad_slope_usage_error(self, capsys):
        code, _, err = run(["cosmetic", "unknot", "-r", "0/1", "-s", "1/2"], capsys)
        assert code == 2


class TestInfoValidate:
    def test_info_trefoil(self, capsys):
        code, out, _ = run(["info", "trefoil_rh"], capsys)
        assert code == 0
        assert "genus=1" in out and "b=1" in out and "nu=1" in out
        assert "hypothesis=pass" in out
        assert "hfk=-1:1,0:1,1:1" in out

    def test_info_json(self, capsys):
        code, out, _ = run(["info", "t27", "--format", "json"], capsys)
        data = json.loads(out)
        assert data["genus"] == 3 and data["b"] == 1 and data["nu"] == 3

    def test_validate_builtin(self, capsys):
        code, out, _ = run(["validate", "figure_eight"], capsys)
        assert code == 0 and "valid=yes" in out

    def test_validate_invalid_file(self, tmp_path, capsys):
        bad = {
            "name": "broken",
            "generators": [{"id": "x", "alexander": 0}],
            "differential": [{"from": "x", "to": "x", "upower": 0}],
        }
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(bad))
        code, out, _ = run(["validate", str(path)], capsys)
        assert code == 1 and "valid=no" in out


class TestGen:
    def test_gen_builtin_round_trip(self, tmp_path, capsys):
        code, out, _ = run(["gen", "--builtin", "trefoil_rh"], capsys)
        assert code == 0
        path = tmp_path / "trefoil.json"
        path.write_text(out)
        code, rank_out, _ = run(["rank", str(path), "-p", "1", "-q", "1"], capsys)
        assert code == 0 and rank_out.strip() == "oracle=1 formula=1"

    def test_gen_random_deterministic(self, capsys):
        args = ["gen", "--random", "--seed", "9", "--dots", "2", "--boxes", "2"]
        _, first, _ = run(args, capsys)
        _, second, _ = run(args, capsys)
        assert first == second

    def test_gen_random_validates(self, tmp_path, capsys):
        _, out, _ = run(["gen", "--random", "--seed", "3", "--boxes", "3"], capsys)
        path = tmp_path / "random.json"
        path.write_text(out)
        code, _, _ = run(["validate", str(path)], capsys)
        assert code == 0

    def test_gen_name_override(self, capsys):
        _, out, _ = run(["gen", "--builtin", "t25", "--name", "cinquefoil"], capsys)
        assert json.loads(out)["name"] == "cinquefoil"


def test_module_entry_point():
    env = dict(os.environ)
    env["PYTHONPATH"] = os.path.join(REPO, "src") + os.pathsep + env.get("PYTHONPATH", "")
    proc = subprocess.run(
        [sys.executable, "-m", "hfsurgery", "rank", "trefoil_rh", "-p", "1", "-q", "1"],
        capture_output=True,
        text=True,
        env=env,
        cwd=REPO,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "oracle=1 formula=1"
