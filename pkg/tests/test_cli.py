import copy
import json
import math

import pytest
from click.testing import CliRunner

from hypercurve.cli import main, run_job
from hypercurve.errors import JobError
from hypercurve.expr import parse, to_string

BASIC_JOB = """
[config]
tol = 1e-9

[paths.unit]
kind = "expr"
gamma1 = "t"
gamma2 = "s"
domain1 = [0.0, 1.0]
domain2 = [0.0, 1.0]

[functions.ident]
f1 = "z"

[[tasks]]
kind = "integrate"
f = "ident"
path = "unit"
"""

MISSING_PATH_JOB = """
[functions.ident]
f1 = "z"

[[tasks]]
kind = "integrate"
f = "ident"
path = "nope"
"""

FTC_JOB = """
[paths.diag]
kind = "segment"
start = "0"
end = "1 + j"

[functions.ident]
f1 = "z"

[functions.halfsquare]
f1 = "z^2/2"

[[tasks]]
kind = "ftc-check"
f = "ident"
F = "halfsquare"
path = "diag"
"""

KITCHEN_SINK_JOB = """
[config]
tol = 1e-8
tag = "midpoint"

[paths.circle]
kind = "bicircle"
radius = 1.0
turns = 1.0

[paths.zig]
kind = "polyline"
params1 = [0.0, 0.5, 1.0]
values1 = [[0.0, 0.0], [1.0, 1.0], [2.0, 0.0]]
params2 = [0.0, 1.0]
values2 = [[0.0, 0.0], [3.0, 0.0]]

[functions.one]
f1 = "1"

[functions.sq]
f1 = "z^2"

[[tasks]]
kind = "variation"
path = "zig"

[[tasks]]
kind = "length"
path = "circle"

[[tasks]]
kind = "line-integral"
f = "sq"
path = "circle"

[[tasks]]
kind = "arclength-integral"
f = "one"
path = "circle"

[[tasks]]
kind = "ml-bound"
f = "sq"
path = "circle"

[[tasks]]
kind = "props-check"
suite = "orientation"
seed = 11
n = 5
"""


def write_job(tmp_path, text, name="job.toml"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def strip_wall_time(report: dict) -> dict:
    out = copy.deepcopy(report)
    for rec in out["tasks"]:
        rec.pop("wall_time_ms", None)
    return out


class TestRunJob:
    def test_integrate_identity(self, tmp_path):
        report, code = run_job(write_job(tmp_path, BASIC_JOB))
        assert code == 0
        rec = report["tasks"][0]
        assert rec["converged"]
        assert rec["result"]["w1"] == [0.5, 0.0]
        assert rec["result"]["w2"] == [0.5, 0.0]
        assert rec["result"]["cartesian"].startswith("0.5")
        assert report["summary"]["all_passed"]

    def test_undefined_path_is_input_error(self, tmp_path):
        with pytest.raises(JobError) as err:
            run_job(write_job(tmp_path, MISSING_PATH_JOB))
        assert "nope" in str(err.value)
        assert "path" in str(err.value)

    def test_ftc_check(self, tmp_path):
        report, code = run_job(write_job(tmp_path, FTC_JOB))
        assert code == 0
        rec = report["tasks"][0]
        assert rec["converged"]
        assert max(rec["residual"]) < 1e-6
        # value is 1 + j, i.e. idempotent components (2, 0)
        assert abs(rec["result"]["w1"][0] - 2.0) < 1e-9
        assert abs(rec["result"]["w2"][0]) < 1e-9

    def test_kitchen_sink_kinds(self, tmp_path):
        report, code = run_job(write_job(tmp_path, KITCHEN_SINK_JOB), seed=3)
        assert code == 0
        by_kind = {rec["kind"]: rec for rec in report["tasks"]}
        # polyline variation is exact: 2*sqrt(2) and 3
        var = by_kind["variation"]["result"]["components"]
        assert abs(var[0] - 2 * math.sqrt(2)) < 1e-12
        assert abs(var[1] - 3.0) < 1e-12
        ln = by_kind["length"]["result"]["components"]
        assert abs(ln[0] - 2 * math.pi) < 1e-8
        li = by_kind["line-integral"]["result"]
        assert abs(li["w1"][0]) < 1e-6 and abs(li["w1"][1]) < 1e-6
        arc = by_kind["arclength-integral"]["result"]
        assert abs(arc["w1"][0] - 2 * math.pi) < 1e-6
        ml = by_kind["ml-bound"]["result"]["components"]
        assert abs(ml[0] - 2 * math.pi) < 1e-6
        props = by_kind["props-check"]["result"]
        assert props["passed"] and props["seed"] == 11

    def test_parallel_matches_serial(self, tmp_path):
        job = write_job(tmp_path, KITCHEN_SINK_JOB)
        serial, _ = run_job(job, seed=3, parallel=False)
        para, _ = run_job(job, seed=3, parallel=True)
        assert strip_wall_time(serial) == strip_wall_time(para)

    def test_report_deterministic_for_fixed_seed(self, tmp_path):
        job = write_job(tmp_path, KITCHEN_SINK_JOB)
        a, _ = run_job(job, seed=5)
        b, _ = run_job(job, seed=5)
        # byte-identical serialization once the wall_time fields are dropped
        assert json.dumps(strip_wall_time(a), indent=2) == json.dumps(
            strip_wall_time(b), indent=2
        )

    def test_echoed_expressions_parse_back(self, tmp_path):
        report, _ = run_job(write_job(tmp_path, FTC_JOB))
        rec = report["tasks"][0]
        for key in ("f1", "f2"):
            echoed = rec["inputs"]["f_def"][key]
            assert to_string(parse(echoed)) == echoed
        for key in ("start", "end"):
            echoed = rec["inputs"]["path_def"][key]
            assert to_string(parse(echoed)) == echoed

    def test_nonconvergent_task_exits_2(self, tmp_path):
        job = write_job(
            tmp_path,
            """
[paths.unit]
kind = "expr"
gamma1 = "t"
gamma2 = "s"
domain1 = [0.0, 1.0]
domain2 = [0.0, 1.0]

[functions.sq]
f1 = "z^2"

[[tasks]]
kind = "integrate"
f = "sq"
path = "unit"
tol = 1e-16
max_levels = 3
""",
        )
        report, code = run_job(job)
        assert code == 2
        assert not report["tasks"][0]["converged"]
        assert not report["summary"]["all_passed"]

    def test_bad_expression_reports_position(self, tmp_path):
        job = write_job(
            tmp_path,
            """
[paths.unit]
kind = "expr"
gamma1 = "t +"
gamma2 = "s"
domain1 = [0.0, 1.0]
domain2 = [0.0, 1.0]

[functions.ident]
f1 = "z"

[[tasks]]
kind = "variation"
path = "unit"
""",
        )
        with pytest.raises(JobError) as err:
            run_job(job)
        assert "offset" in str(err.value)

    def test_per_component_tolerance_array(self, tmp_path):
        job = write_job(
            tmp_path,
            """
[config]
tol = [1e-5, 1e-10]

[paths.unit]
kind = "expr"
gamma1 = "t"
gamma2 = "s"
domain1 = [0.0, 1.0]
domain2 = [0.0, 1.0]

[functions.sq]
f1 = "z^2"

[[tasks]]
kind = "integrate"
f = "sq"
path = "unit"
""",
        )
        report, code = run_job(job)
        assert code == 0
        rec = report["tasks"][0]
        assert rec["converged"]
        # the loose component tolerance is satisfied by the tight one's depth
        assert rec["est_error"][0] <= 1e-5 and rec["est_error"][1] <= 1e-10

    def test_ftc_check_inline_primitive_keys(self, tmp_path):
        job = write_job(
            tmp_path,
            """
[paths.diag]
kind = "segment"
start = "0"
end = "1 + j"

[functions.ident]
f1 = "z"

[[tasks]]
kind = "ftc-check"
f = "ident"
F1 = "z^2/2"
path = "diag"
""",
        )
        report, code = run_job(job)
        assert code == 0
        rec = report["tasks"][0]
        assert rec["converged"] and max(rec["residual"]) < 1e-6
        assert rec["inputs"]["F1"] == "z^2 / 2"

    def test_task_error_recorded_without_aborting_later_tasks(self, tmp_path):
        job = write_job(
            tmp_path,
            """
[paths.diag]
kind = "segment"
start = "0"
end = "1 + j"

[functions.ident]
f1 = "z"

[[tasks]]
kind = "ftc-check"
f = "ident"
F1 = "z^2"   # wrong primitive: derivative is 2z, guard trips at run time
path = "diag"

[[tasks]]
kind = "integrate"
f = "ident"
path = "diag"
""",
        )
        report, code = run_job(job)
        assert code == 2
        first, second = report["tasks"]
        assert "error" in first and not first["converged"]
        assert "derivative differs" in first["error"]
        # rs-integral of f(tau)=tau against the segment: 2 * 1/2 in the
        # first component, 0 in the flat one
        assert second["converged"] and abs(second["result"]["w1"][0] - 1.0) < 1e-8

    def test_unknown_task_kind(self, tmp_path):
        job = write_job(
            tmp_path,
            """
[paths.unit]
kind = "expr"
gamma1 = "t"
gamma2 = "s"
domain1 = [0.0, 1.0]
domain2 = [0.0, 1.0]

[[tasks]]
kind = "frobnicate"
path = "unit"
""",
        )
        with pytest.raises(JobError) as err:
            run_job(job)
        assert "frobnicate" in str(err.value)


class TestCliCommands:
    def test_run_exit_codes(self, tmp_path):
        runner = CliRunner()
        ok = runner.invoke(main, ["run", write_job(tmp_path, BASIC_JOB, "a.toml")])
        assert ok.exit_code == 0
        assert '"all_passed": true' in ok.output
        bad = runner.invoke(main, ["run", write_job(tmp_path, MISSING_PATH_JOB, "b.toml")])
        assert bad.exit_code == 1
        assert "nope" in bad.output

    def test_missing_job_file_is_input_error(self, tmp_path):
        runner = CliRunner()
        res = runner.invoke(main, ["run", str(tmp_path / "absent.toml")])
        assert res.exit_code == 1
        assert "absent.toml" in res.output

    def test_run_writes_out_file(self, tmp_path):
        runner = CliRunner()
        out = tmp_path / "report.json"
        res = runner.invoke(
            main, ["run", write_job(tmp_path, BASIC_JOB), "--out", str(out)]
        )
        assert res.exit_code == 0
        report = json.loads(out.read_text())
        assert report["summary"]["all_passed"]

    def test_eval_prints_both_forms(self):
        runner = CliRunner()
        res = runner.invoke(main, ["eval", "(1+j)^2/2"])
        assert res.exit_code == 0
        lines = res.output.strip().split("\n")
        assert lines[0].startswith("cartesian:")
        assert lines[1].startswith("idempotent:")
        assert "[2.0+0.0*i1 | 0.0+0.0*i1]" in lines[1]

    def test_eval_error(self):
        runner = CliRunner()
        res = runner.invoke(main, ["eval", "z +"])
        assert res.exit_code == 1
        assert "offset" in res.output
        res = runner.invoke(main, ["eval", "z + 1"])
        assert res.exit_code == 1
        assert "unbound" in res.output

    def test_check_known_suites(self):
        runner = CliRunner()
        res = runner.invoke(main, ["check", "orientation", "--seed", "42", "-n", "20"])
        assert res.exit_code == 0
        assert "orientation: pass" in res.output
        res = runner.invoke(main, ["check", "ml-bound", "--seed", "7", "-n", "20"])
        assert res.exit_code == 0
        assert "ml-bound: pass" in res.output

    def test_check_unknown_suite(self):
        runner = CliRunner()
        res = runner.invoke(main, ["check", "bogus"])
        assert res.exit_code == 1
        assert "unknown suite" in res.output

    def test_tolerance_env_override(self, tmp_path, monkeypatch):
        job = write_job(
            tmp_path,
            """
[paths.unit]
kind = "expr"
gamma1 = "t"
gamma2 = "s"
domain1 = [0.0, 1.0]
domain2 = [0.0, 1.0]

[functions.sq]
f1 = "z^2"

[[tasks]]
kind = "integrate"
f = "sq"
path = "unit"
""",
        )
        monkeypatch.setenv("HYPERCURVE_TOL", "1e-3")
        loose, _ = run_job(job)
        monkeypatch.setenv("HYPERCURVE_TOL", "1e-12")
        tight, _ = run_job(job)
        assert loose["tasks"][0]["levels_used"] < tight["tasks"][0]["levels_used"]
        monkeypatch.setenv("HYPERCURVE_TOL", "not-a-number")
        with pytest.raises(JobError):
            run_job(job)
