"""CLI behaviour: formats, exit codes, reproducibility, schema."""

import json
import math
import subprocess
import sys

import pytest

jsonschema = pytest.importorskip("jsonschema")

from intident.identities import RunSettings, verify_suite
from intident.report import Report, render_report
from intident.specfun import catalan_const

PI = math.pi

REPORT_SCHEMA = {
    "type": "object",
    "required": ["version", "config", "records", "summary"],
    "properties": {
        "version": {"type": "string"},
        "config": {"type": "object"},
        "records": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["identity", "route", "point", "lhs", "rhs",
                             "abs_diff", "rel_diff", "tol_abs", "tol_rel",
                             "verdict"],
                "properties": {
                    "verdict": {"enum": ["pass", "fail", "inconclusive"]},
                },
            },
        },
        "summary": {
            "type": "object",
            "required": ["pass", "fail", "inconclusive"],
            "additionalProperties": {"type": "integer"},
        },
    },
}


def run_cli(*args, **kw):
    return subprocess.run([sys.executable, "-m", "intident.cli", *args],
                          capture_output=True, text=True, **kw)


class TestVerifyCommand:
    def test_single_identity_json_report(self, tmp_path):
        out = tmp_path / "report.json"
        proc = run_cli("verify", "--id", "EQ23", "--format", "json",
                       "--out", str(out), "--jobs", "1")
        assert proc.returncode == 0
        payload = json.loads(out.read_text())
        jsonschema.validate(payload, REPORT_SCHEMA)
        (rec,) = payload["records"]
        assert rec["identity"] == "EQ23"
        assert rec["rhs"] == pytest.approx(PI * catalan_const() / 4.0,
                                           abs=1e-15)
        assert payload["summary"] == {"pass": 1, "fail": 0, "inconclusive": 0}

    def test_unknown_identity_exits_64(self):
        proc = run_cli("verify", "--id", "NOPE")
        assert proc.returncode == 64
        assert "unknown identity" in proc.stderr

    def test_missing_selection_exits_64(self):
        proc = run_cli("verify")
        assert proc.returncode == 64

    def test_byte_identical_reports(self, tmp_path):
        args = ("verify", "--id", "EQ20", "--id", "EQ23", "--format", "json",
                "--seed", "0", "--jobs", "1")
        a = tmp_path / "a.json"
        b = tmp_path / "b.json"
        assert run_cli(*args, "--out", str(a)).returncode == 0
        assert run_cli(*args, "--out", str(b)).returncode == 0
        assert a.read_bytes() == b.read_bytes()

    def test_grid_and_tol_overrides(self, tmp_path):
        out = tmp_path / "r.json"
        proc = run_cli("verify", "--id", "EQ7", "--grid", "x=0.1,1,10",
                       "--tol", "standard=1e-7", "--format", "json",
                       "--out", str(out), "--jobs", "1")
        assert proc.returncode == 0
        payload = json.loads(out.read_text())
        assert len(payload["records"]) == 3
        assert all(r["tol_abs"] == 1e-7 for r in payload["records"])
        assert payload["config"]["grid"] == {"x": [0.1, 1.0, 10.0]}

    def test_inconclusive_exit_code_two(self, tmp_path):
        proc = run_cli("verify", "--id", "EQ19", "--max-evals", "500",
                       "--format", "json", "--out", str(tmp_path / "r.json"),
                       "--jobs", "1")
        assert proc.returncode == 2

    def test_config_file_mirrors_flags(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"ids": ["EQ23"], "format": "json"}))
        out_a = tmp_path / "a.json"
        proc = run_cli("verify", "--config", str(cfg), "--out", str(out_a),
                       "--jobs", "1")
        assert proc.returncode == 0
        assert json.loads(out_a.read_text())["records"][0]["identity"] == "EQ23"
        # Flags win over the file.
        out_b = tmp_path / "b.json"
        proc = run_cli("verify", "--config", str(cfg), "--id", "EQ20",
                       "--out", str(out_b), "--format", "json", "--jobs", "1")
        assert proc.returncode == 0
        ids = {r["identity"] for r in json.loads(out_b.read_text())["records"]}
        assert ids == {"EQ20"}

    def test_text_and_csv_formats(self):
        text = run_cli("verify", "--id", "EQ23", "--format", "text", "--jobs", "1")
        assert text.returncode == 0
        assert "summary: 1 pass" in text.stdout
        csv = run_cli("verify", "--id", "EQ23", "--format", "csv", "--jobs", "1")
        assert csv.returncode == 0
        header = csv.stdout.splitlines()[0]
        assert header.startswith("identity,route,point,lhs,rhs")

    def test_timing_opt_in(self, tmp_path):
        out = tmp_path / "t.json"
        proc = run_cli("verify", "--id", "EQ23", "--format", "json",
                       "--timing", "--out", str(out), "--jobs", "1")
        assert proc.returncode == 0
        assert "wall_time_s" in json.loads(out.read_text())
        # and absent by default
        out2 = tmp_path / "t2.json"
        run_cli("verify", "--id", "EQ23", "--format", "json", "--out",
                str(out2), "--jobs", "1")
        assert "wall_time_s" not in json.loads(out2.read_text())


class TestMomentsCommand:
    def test_table_includes_base_row(self):
        proc = run_cli("moments", "--max-n", "2", "--format", "json")
        assert proc.returncode == 0
        payload = json.loads(proc.stdout)
        rows = payload["rows"]
        assert rows[0]["n"] == 1
        assert rows[0]["recursion_value"] == PI ** 2 / 8.0
        assert rows[0]["verdict"] == "base"

    def test_eight_rows_all_within_tolerance(self):
        proc = run_cli("moments", "--max-n", "8", "--format", "json")
        assert proc.returncode == 0
        payload = json.loads(proc.stdout)
        assert len(payload["rows"]) == 8
        diffs = [r["abs_diff"] for r in payload["rows"] if r["abs_diff"]]
        assert max(diffs) <= 1e-8
        assert payload["summary"]["fail"] == 0

    def test_out_of_range_exits_64(self):
        assert run_cli("moments", "--max-n", "1").returncode == 64
        assert run_cli("moments", "--max-n", "31").returncode == 64


class TestReduceCommand:
    def test_three_fold_catalan_case(self):
        proc = run_cli("reduce", "--n", "3", "--fn", "inv_sqrt_one_minus_t2",
                       "--x", "1", "--target-error", "1e-5", "--format", "json")
        assert proc.returncode == 0
        payload = json.loads(proc.stdout)
        target = PI * catalan_const()
        assert payload["original"]["value"] == pytest.approx(target, abs=1e-4)
        assert payload["reduced"]["value"] == pytest.approx(target, abs=1e-5)
        assert payload["reduced"]["evaluations"] < payload["original"]["evaluations"]

    def test_two_fold_exponential_case(self):
        proc = run_cli("reduce", "--n", "2", "--fn", "exp_neg", "--x", "1",
                       "--format", "json")
        assert proc.returncode == 0
        payload = json.loads(proc.stdout)
        expected = PI / 2.0 * (1.0 - math.exp(-1.0))
        assert payload["reduced"]["value"] == pytest.approx(expected, abs=1e-8)
        assert payload["closed_form"] == pytest.approx(expected, abs=1e-14)

    def test_unsupported_order_exits_64(self):
        assert run_cli("reduce", "--n", "5", "--fn", "exp_neg",
                       "--x", "1").returncode == 64

    def test_unknown_function_exits_64(self):
        assert run_cli("reduce", "--n", "2", "--fn", "wat",
                       "--x", "1").returncode == 64


class TestReportObject:
    def test_summary_matches_records(self):
        records = verify_suite(ids=["EQ20"], settings=RunSettings(), jobs=1)
        report = Report(config={"command": "verify"}, records=records)
        assert sum(report.summary.values()) == len(records)
        assert report.exit_status == 0

    def test_render_rejects_unknown_format(self):
        report = Report(config={}, records=[])
        with pytest.raises(ValueError):
            render_report(report, "xml")

    def test_float_round_trip_in_json(self):
        records = verify_suite(ids=["EQ23"], settings=RunSettings(), jobs=1)
        report = Report(config={}, records=records)
        payload = json.loads(render_report(report, "json"))
        assert payload["records"][0]["lhs"] == records[0].lhs  # exact round trip
