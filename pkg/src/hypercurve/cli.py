"""Batch front end: TOML job files in, JSON reports out.

A job file names paths and product-type functions, then lists tasks to run
against them::

    [config]
    tol = 1e-9
    tag = "midpoint"

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

Path kinds: segment (bicomplex endpoint literals), bicircle (center,
radius, turns), expr (component expressions in t and s with real domains),
polyline (params/values sample arrays).  Task kinds: variation, length,
integrate, line-integral, arclength-integral, ftc-check, ml-bound,
props-check.

Exit codes: 0 all tasks converged and property checks passed, 2 when any
task failed or did not converge, 1 on input errors.  Reports are
deterministic for a fixed job file and seed, except the wall_time fields.
"""

from __future__ import annotations

import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Any

import click

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from . import expr as _expr
from . import suites as _suites
from .errors import HypercurveError, JobError
from .expr import ParseError
from .integrate import (
    Integrand,
    IntegrationConfig,
    Tag,
    ftc_eval,
    line_integral,
    line_integral_arclength,
    ml_bound,
    rs_integral,
)
from .numbers import BiComplex, Hyperbolic, format_cartesian, format_idempotent
from .paths import ComponentPath, DPath, smooth_length, total_variation

TASK_KINDS = (
    "variation",
    "length",
    "integrate",
    "line-integral",
    "arclength-integral",
    "ftc-check",
    "ml-bound",
    "props-check",
)

_TAGS = {"left": Tag.LEFT, "midpoint": Tag.MIDPOINT, "right": Tag.RIGHT}


def _default_tol() -> float:
    raw = os.environ.get("HYPERCURVE_TOL")
    if raw is None:
        return 1e-9
    try:
        tol = float(raw)
    except ValueError:
        raise JobError(f"HYPERCURVE_TOL is not a number: {raw!r}") from None
    if tol <= 0:
        raise JobError(f"HYPERCURVE_TOL must be positive: {raw!r}")
    return tol


def _canonical(text: str, where: str) -> str:
    """Parse an expression and echo its canonical printed form."""
    try:
        return _expr.to_string(_expr.parse(text))
    except ParseError as exc:
        raise JobError(f"{where}: {exc}") from None


def _constant(text: str, where: str) -> BiComplex:
    try:
        ast = _expr.parse(text)
    except ParseError as exc:
        raise JobError(f"{where}: {exc}") from None
    free = _expr.free_variables(ast)
    if free:
        raise JobError(f"{where}: expected a constant, found variables {sorted(free)}")
    return _expr.evaluate(ast, {})


def _domain(spec: Any, where: str) -> tuple[float, float]:
    if (
        not isinstance(spec, (list, tuple))
        or len(spec) != 2
        or not all(isinstance(v, (int, float)) for v in spec)
    ):
        raise JobError(f"{where}: expected a two-number array")
    return float(spec[0]), float(spec[1])


def _build_path(name: str, spec: dict, echo: dict) -> DPath:
    where = f"paths.{name}"
    kind = spec.get("kind")
    try:
        if kind == "segment":
            start = _constant(spec["start"], f"{where}.start")
            end = _constant(spec["end"], f"{where}.end")
            echo.update(start=_canonical(spec["start"], where), end=_canonical(spec["end"], where))
            return DPath.segment(start, end)
        if kind == "bicircle":
            center = _constant(spec.get("center", "0"), f"{where}.center")
            radius = float(spec.get("radius", 1.0))
            turns = float(spec.get("turns", 1.0))
            echo.update(center=format_idempotent(center), radius=radius, turns=turns)
            return DPath.bicircle(center, radius, turns)
        if kind == "expr":
            d1 = _domain(spec["domain1"], f"{where}.domain1")
            d2 = _domain(spec["domain2"], f"{where}.domain2")
            g1 = _canonical(spec["gamma1"], f"{where}.gamma1")
            g2 = _canonical(spec["gamma2"], f"{where}.gamma2")
            echo.update(gamma1=g1, gamma2=g2, domain1=list(d1), domain2=list(d2))
            return DPath(
                ComponentPath.from_expression(spec["gamma1"], "t", d1),
                ComponentPath.from_expression(spec["gamma2"], "s", d2),
            )
        if kind == "polyline":
            p1, v1 = spec["params1"], spec["values1"]
            p2, v2 = spec["params2"], spec["values2"]
            echo.update(params1=p1, values1=v1, params2=p2, values2=v2)
            return DPath(
                ComponentPath.polyline(p1, [complex(a, b) for a, b in v1]),
                ComponentPath.polyline(p2, [complex(a, b) for a, b in v2]),
            )
    except KeyError as exc:
        raise JobError(f"{where}: missing key {exc.args[0]!r}") from None
    except (ValueError, TypeError) as exc:
        raise JobError(f"{where}: {exc}") from None
    raise JobError(f"{where}.kind: unknown path kind {kind!r}")


def _build_function(name: str, spec: dict, echo: dict) -> Integrand:
    where = f"functions.{name}"
    if "f1" not in spec:
        raise JobError(f"{where}: missing key 'f1'")
    f1 = spec["f1"]
    f2 = spec.get("f2", f1)
    echo.update(f1=_canonical(f1, f"{where}.f1"), f2=_canonical(f2, f"{where}.f2"))
    try:
        return Integrand.from_expressions(f1, f2)
    except (ParseError, ValueError) as exc:
        raise JobError(f"{where}: {exc}") from None


def _config_from(table: dict, base_tol: float, where: str) -> IntegrationConfig:
    tol = table.get("tol", base_tol)
    if isinstance(tol, (list, tuple)):
        if len(tol) != 2:
            raise JobError(f"{where}.tol: expected a number or a two-number array")
        tol_h = Hyperbolic(float(tol[0]), float(tol[1]))
    else:
        tol_h = Hyperbolic.from_real(float(tol))
    tag_name = str(table.get("tag", "midpoint")).lower()
    if tag_name not in _TAGS:
        raise JobError(f"{where}.tag: unknown tag {tag_name!r}")
    max_levels = int(table.get("max_levels", 24))
    try:
        return IntegrationConfig(tol=tol_h, max_levels=max_levels, tag=_TAGS[tag_name])
    except ValueError as exc:
        raise JobError(f"{where}: {exc}") from None


def _render_bicomplex(v: BiComplex) -> dict:
    return {
        "cartesian": format_cartesian(v),
        "idempotent": format_idempotent(v),
        "w1": [v.w1.real, v.w1.imag],
        "w2": [v.w2.real, v.w2.imag],
    }


def _render_hyperbolic(v: Hyperbolic) -> dict:
    out = _render_bicomplex(v.to_bicomplex())
    out["components"] = [v.v1, v.v2]
    return out


class _Job:
    def __init__(self, doc: dict, job_path: str, seed: int):
        if not isinstance(doc, dict):
            raise JobError("job file must be a TOML table")
        self.job_path = job_path
        self.seed = seed
        self.base_tol = _default_tol()
        self.config = doc.get("config", {})
        if not isinstance(self.config, dict):
            raise JobError("config: must be a table")
        self.global_cfg = _config_from(self.config, self.base_tol, "config")

        self.paths: dict[str, DPath] = {}
        self.path_echo: dict[str, dict] = {}
        for name, spec in doc.get("paths", {}).items():
            echo: dict = {"kind": spec.get("kind")}
            self.paths[name] = _build_path(name, spec, echo)
            self.path_echo[name] = echo

        self.functions: dict[str, Integrand] = {}
        self.function_echo: dict[str, dict] = {}
        for name, spec in doc.get("functions", {}).items():
            echo = {}
            self.functions[name] = _build_function(name, spec, echo)
            self.function_echo[name] = echo

        self.tasks = doc.get("tasks", [])
        if not isinstance(self.tasks, list) or not self.tasks:
            raise JobError("tasks: need a nonempty task array")
        for idx, task in enumerate(self.tasks):
            self._validate_task(idx, task)

    def _validate_task(self, idx: int, task: dict) -> None:
        where = f"tasks[{idx}]"
        kind = task.get("kind")
        if kind not in TASK_KINDS:
            raise JobError(f"{where}.kind: unknown task kind {kind!r}")
        needs_path = kind not in ("props-check",)
        if needs_path:
            pname = task.get("path")
            if pname not in self.paths:
                raise JobError(f"{where}.path: undefined path {pname!r}")
        if kind in ("integrate", "line-integral", "arclength-integral", "ftc-check", "ml-bound"):
            fname = task.get("f")
            if fname not in self.functions:
                raise JobError(f"{where}.f: undefined function {fname!r}")
        if kind == "ftc-check":
            if "F1" in task:
                _canonical(task["F1"], f"{where}.F1")
                if "F2" in task:
                    _canonical(task["F2"], f"{where}.F2")
            else:
                big = task.get("F")
                if big not in self.functions:
                    raise JobError(f"{where}.F: undefined function {big!r}")
        if kind == "props-check":
            suite = task.get("suite")
            if suite not in _suites.SUITES:
                raise JobError(f"{where}.suite: unknown suite {suite!r}")

    # -- execution ------------------------------------------------------------

    def run_task(self, idx: int) -> dict:
        task = self.tasks[idx]
        kind = task["kind"]
        record: dict = {"task": idx, "kind": kind, "inputs": self._echo_inputs(task)}
        start = time.perf_counter()
        try:
            self._execute(task, record)
        except HypercurveError as exc:
            record["error"] = str(exc)
            record["converged"] = False
        record["wall_time_ms"] = round((time.perf_counter() - start) * 1e3, 3)
        return record

    def _echo_inputs(self, task: dict) -> dict:
        echo: dict = {}
        for key in ("path", "f", "F", "suite"):
            if key in task:
                echo[key] = task[key]
        for key in ("F1", "F2"):
            if key in task:
                echo[key] = _canonical(task[key], f"task.{key}")
        if "path" in echo:
            echo["path_def"] = self.path_echo.get(echo["path"], {})
        if "f" in echo:
            echo["f_def"] = self.function_echo.get(echo["f"], {})
        if "F" in echo:
            echo["F_def"] = self.function_echo.get(echo["F"], {})
        for key in ("tol", "max_levels", "tag", "seed", "n", "samples"):
            if key in task:
                echo[key] = task[key]
        return echo

    def _execute(self, task: dict, record: dict) -> None:
        kind = task["kind"]
        cfg = _config_from({**self.config, **task}, self.base_tol, "task")
        path = self.paths.get(task.get("path", ""))
        fn = self.functions.get(task.get("f", ""))

        if kind == "variation":
            tol = min(cfg.tol.v1, cfg.tol.v2)
            levels = int(task.get("max_levels", self.config.get("max_levels", 22)))
            report = total_variation(path, tol=tol, max_levels=levels)
            record["result"] = _render_hyperbolic(report.total)
            record["levels_used"] = report.levels
            record["converged"] = report.converged
            record["est_error"] = None
            return
        if kind == "length":
            value = smooth_length(path)
            record["result"] = _render_hyperbolic(value)
            record["converged"] = True
            record["est_error"] = None
            return
        if kind in ("integrate", "line-integral", "arclength-integral"):
            run = {
                "integrate": rs_integral,
                "line-integral": line_integral,
                "arclength-integral": line_integral_arclength,
            }[kind]
            result = run(fn, path, cfg)
            record["result"] = _render_bicomplex(result.value)
            record["est_error"] = [result.est_error.v1, result.est_error.v2]
            record["levels_used"] = result.levels_used
            record["converged"] = result.converged
            record["method"] = result.method
            return
        if kind == "ftc-check":
            if "F1" in task:
                primitive = Integrand.from_expressions(task["F1"], task.get("F2"))
            else:
                primitive = self.functions[task["F"]]
            exact = ftc_eval(primitive, path, fn)
            numeric = line_integral(fn, path, cfg)
            residual = (exact - numeric.value).d_modulus()
            ok = numeric.converged and residual.v1 < 1e-6 and residual.v2 < 1e-6
            record["result"] = _render_bicomplex(exact)
            record["residual"] = [residual.v1, residual.v2]
            record["est_error"] = [numeric.est_error.v1, numeric.est_error.v2]
            record["levels_used"] = numeric.levels_used
            record["converged"] = ok
            return
        if kind == "ml-bound":
            samples = int(task.get("samples", 4096))
            value = ml_bound(fn, path, samples)
            record["result"] = _render_hyperbolic(value)
            record["converged"] = True
            record["est_error"] = None
            return
        if kind == "props-check":
            seed = int(task.get("seed", self.seed))
            n = int(task.get("n", 100))
            result = _suites.run_suite(task["suite"], seed=seed, n=n)
            record["result"] = {
                "passed": result.passed,
                "n": result.n,
                "seed": result.seed,
                "failures": result.failures,
            }
            record["converged"] = result.passed
            record["est_error"] = None
            return
        raise JobError(f"unknown task kind {kind!r}")  # unreachable after validation


def run_job(job_path: str, seed: int = 0, parallel: bool = False) -> tuple[dict, int]:
    """Execute a job file; returns (report, exit_code)."""
    with open(job_path, "rb") as fh:
        try:
            doc = tomllib.load(fh)
        except tomllib.TOMLDecodeError as exc:
            raise JobError(f"TOML parse error: {exc}") from None

    job = _Job(doc, job_path, seed)
    indices = range(len(job.tasks))
    if parallel:
        with ThreadPoolExecutor() as pool:
            records = list(pool.map(job.run_task, indices))
    else:
        records = [job.run_task(i) for i in indices]

    n_bad = sum(1 for r in records if not r.get("converged", False))
    report = {
        "job": job_path,
        "seed": seed,
        "tasks": records,
        "summary": {
            "tasks": len(records),
            "passed": len(records) - n_bad,
            "failed": n_bad,
            "all_passed": n_bad == 0,
        },
    }
    return report, (0 if n_bad == 0 else 2)


# -- click commands --------------------------------------------------------------


@click.group()
def main() -> None:
    """Hyperbolic-curve calculus: run job files, check invariants, eval expressions."""


@main.command("run")
@click.argument("job_file", type=click.Path(dir_okay=False))
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Write the JSON report here instead of stdout.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--parallel", is_flag=True, help="Run independent tasks concurrently.")
def cmd_run(job_file: str, out: str | None, seed: int, parallel: bool) -> None:
    """Execute all tasks in a TOML job file and emit a JSON report."""
    try:
        report, code = run_job(job_file, seed=seed, parallel=parallel)
    except (JobError, HypercurveError, OSError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    text = json.dumps(report, indent=2, allow_nan=False) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
        click.echo(f"report written to {out}")
    else:
        click.echo(text, nl=False)
    sys.exit(code)


@main.command("check")
@click.argument("suite")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("-n", "--instances", type=int, default=100, show_default=True)
def cmd_check(suite: str, seed: int, instances: int) -> None:
    """Run one named property suite on seeded random instances."""
    try:
        result = _suites.run_suite(suite, seed=seed, n=instances)
    except HypercurveError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    click.echo(result.summary())
    for failure in result.failures:
        click.echo(json.dumps(failure, default=str))
    sys.exit(0 if result.passed else 2)


@main.command("eval")
@click.argument("expression")
def cmd_eval(expression: str) -> None:
    """Evaluate a constant expression; print cartesian and idempotent forms."""
    try:
        value = _expr.evaluate(_expr.parse(expression), {})
    except HypercurveError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    click.echo(f"cartesian:  {format_cartesian(value)}")
    click.echo(f"idempotent: {format_idempotent(value)}")


if __name__ == "__main__":
    main()
