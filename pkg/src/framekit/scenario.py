"""Scenario parsing, suite orchestration, and report emission.

A scenario document (YAML; JSON is accepted as a YAML subset) names the
frames, fields, and checks to run plus sampling/FD parameters.  Unknown
keys are rejected so typos cannot silently disable a check.  Reports are
deterministic for a given (scenario, seed): every (frame, field, check)
triple gets its own seeded generator, so execution order and parallelism
cannot change the numbers.
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field

import numpy as np
import yaml

from . import objectivity as obj
from .diffops import FdConfig
from .errors import ScenarioError
from .fields import FIELD_CATALOG, ScalarField, make_field
from .frames import FRAME_CATALOG, make_frame

VERSION = "0.1.0"

_TOP_KEYS = {"frames", "fields", "checks", "box", "samples", "seed", "fd",
             "tolerances", "material", "pressure"}
_FD_KEYS = {"h", "ht", "order"}
_MATERIAL_KEYS = {"mu", "rho", "g", "conductivity"}


@dataclass(frozen=True)
class Material:
    """Fluid constants used by the constitutive and momentum checks."""
    mu: float = 1.0
    rho: float = 1.0
    g: tuple = (0.0, 0.0, -9.81)
    conductivity: float = 1.0


@dataclass(frozen=True)
class Scenario:
    """A validated run specification."""
    frames: tuple            # ((name, params), ...)
    fields: tuple
    checks: tuple
    box: tuple = obj.DEFAULT_BOX
    samples: int = 100
    seed: int = 42
    fd: FdConfig = dc_field(default_factory=FdConfig)
    tolerances: dict = dc_field(default_factory=dict)
    material: Material = dc_field(default_factory=Material)
    pressure: tuple = ("gaussian_T", {})

    def tolerance(self, check_id: str) -> float:
        return float(self.tolerances.get(check_id,
                                         obj.DEFAULT_TOLERANCES[check_id]))


@dataclass(frozen=True)
class Report:
    """Suite outcome: one row per executed (frame, field, check) triple."""
    scenario: dict
    results: tuple           # of row dicts
    passed: bool
    wall_time_s: float
    version: str = VERSION


def _named_entries(raw, kind: str, catalog) -> tuple:
    if not isinstance(raw, list) or not raw:
        raise ScenarioError(f"'{kind}' must be a non-empty list")
    entries = []
    for item in raw:
        if isinstance(item, str):
            name, params = item, {}
        elif isinstance(item, dict):
            extra = set(item) - {"name", "params"}
            if extra:
                raise ScenarioError(
                    f"unknown key(s) {sorted(extra)} in a '{kind}' entry")
            name = item.get("name")
            params = item.get("params", {}) or {}
        else:
            raise ScenarioError(f"each '{kind}' entry must be a name or mapping")
        if name not in catalog:
            raise ScenarioError(
                f"unknown {kind[:-1]} id {name!r}; valid ids: {sorted(catalog)}")
        if not isinstance(params, dict):
            raise ScenarioError(f"'params' for {kind[:-1]} {name!r} must be a mapping")
        entries.append((name, dict(params)))
    return tuple(entries)


def _parse_box(raw) -> tuple:
    if raw is None:
        return obj.DEFAULT_BOX
    box = np.asarray(raw, dtype=float)
    if box.shape == (2,):
        box = np.tile(box, (3, 1))
    if box.shape != (3, 2) or not np.all(box[:, 0] < box[:, 1]):
        raise ScenarioError("'box' must be [lo, hi] or three [lo, hi] pairs")
    return tuple((float(lo), float(hi)) for lo, hi in box)


def parse_scenario(text: str) -> Scenario:
    """Parse and validate a scenario document; fill documented defaults."""
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ScenarioError(f"scenario document is not valid YAML: {exc}") from exc
    if not isinstance(doc, dict):
        raise ScenarioError("scenario document must be a mapping")
    extra = set(doc) - _TOP_KEYS
    if extra:
        raise ScenarioError(f"unknown scenario key(s): {sorted(extra)}")
    for key in ("frames", "fields", "checks"):
        if key not in doc:
            raise ScenarioError(f"scenario is missing required key '{key}'")

    frames = _named_entries(doc["frames"], "frames", FRAME_CATALOG)
    fields = _named_entries(doc["fields"], "fields", FIELD_CATALOG)

    checks = doc["checks"]
    if not isinstance(checks, list) or not checks:
        raise ScenarioError("'checks' must be a non-empty list")
    for c in checks:
        if c not in obj.CHECK_IDS:
            raise ScenarioError(
                f"unknown check id {c!r}; valid ids: {list(obj.CHECK_IDS)}")

    samples = doc.get("samples", 100)
    if not isinstance(samples, int) or samples < 1:
        raise ScenarioError("'samples' must be an integer >= 1")
    seed = doc.get("seed", 42)
    if not isinstance(seed, int):
        raise ScenarioError("'seed' must be an integer")

    fd_doc = doc.get("fd", {}) or {}
    extra = set(fd_doc) - _FD_KEYS
    if extra:
        raise ScenarioError(f"unknown 'fd' key(s): {sorted(extra)}")
    fd = FdConfig(h=float(fd_doc.get("h", 1e-3)),
                  h_t=float(fd_doc.get("ht", 1e-5)),
                  order=int(fd_doc.get("order", 4)))

    tols = doc.get("tolerances", {}) or {}
    for c in tols:
        if c not in obj.CHECK_IDS:
            raise ScenarioError(
                f"tolerance for unknown check id {c!r}; valid ids: {list(obj.CHECK_IDS)}")

    mat_doc = doc.get("material", {}) or {}
    extra = set(mat_doc) - _MATERIAL_KEYS
    if extra:
        raise ScenarioError(f"unknown 'material' key(s): {sorted(extra)}")
    material = Material(
        mu=float(mat_doc.get("mu", Material.mu)),
        rho=float(mat_doc.get("rho", Material.rho)),
        g=tuple(float(v) for v in mat_doc.get("g", Material.g)),
        conductivity=float(mat_doc.get("conductivity", Material.conductivity)))

    pressure_doc = doc.get("pressure")
    if pressure_doc is None:
        pressure = ("gaussian_T", {})
    else:
        pressure = _named_entries([pressure_doc], "fields", FIELD_CATALOG)[0]

    return Scenario(frames=frames, fields=fields, checks=tuple(checks),
                    box=_parse_box(doc.get("box")), samples=samples, seed=seed,
                    fd=fd, tolerances={k: float(v) for k, v in tols.items()},
                    material=material, pressure=pressure)


def load_scenario(path) -> Scenario:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_scenario(fh.read())


# --------------------------------------------------------------------------
# Suite execution
# --------------------------------------------------------------------------

def _applicable(check_id: str, field_obj) -> bool:
    is_scalar = isinstance(field_obj, ScalarField)
    if check_id in obj.SCALAR_CHECK_IDS:
        return is_scalar
    return not is_scalar


def _run_triple(scenario: Scenario, frame, field_obj, check_id: str,
                rng: np.random.Generator, p_field) -> obj.CheckResult:
    common = dict(box=scenario.box, samples=scenario.samples, rng=rng,
                  fd=scenario.fd, tol=scenario.tolerance(check_id))
    if check_id == "div_invariance":
        return obj.check_divergence_invariance(frame, field_obj, **common)
    if check_id == "scalar_grad_invariance":
        return obj.check_scalar_gradient_invariance(frame, field_obj, **common)
    if check_id == "velgrad_relation":
        return obj.check_velocity_gradient_relation(frame, field_obj, **common)
    if check_id == "strain_rate_invariance":
        return obj.check_strain_rate_invariance(frame, field_obj, **common)
    if check_id == "vorticity_relation":
        return obj.check_vorticity_relation(frame, field_obj, **common)
    if check_id == "stress_transform":
        return obj.check_stress_transform_random(
            frame, samples=scenario.samples, rng=rng,
            tol=scenario.tolerance(check_id))
    if check_id == "constitutive_invariance":
        return obj.check_constitutive_frame_invariance(
            frame, field_obj, p_field, scenario.material.mu, **common)
    if check_id == "acceleration_decomposition":
        return obj.check_acceleration_decomposition(frame, field_obj, **common)
    if check_id == "ns_rhs_equivalence":
        force = obj.BodyForce(g=np.asarray(scenario.material.g),
                              rho=scenario.material.rho)
        return obj.check_ns_rhs_equivalence(
            frame, field_obj, p_field, force, scenario.material.mu, **common)
    raise ScenarioError(f"unknown check id {check_id!r}")


def _scenario_echo(scenario: Scenario) -> dict:
    return {
        "frames": [{"name": n, "params": p} for n, p in scenario.frames],
        "fields": [{"name": n, "params": p} for n, p in scenario.fields],
        "checks": list(scenario.checks),
        "box": [list(b) for b in scenario.box],
        "samples": scenario.samples,
        "seed": scenario.seed,
        "fd": {"h": scenario.fd.h, "ht": scenario.fd.h_t,
               "order": scenario.fd.order},
        "tolerances": {k: scenario.tolerances[k]
                       for k in sorted(scenario.tolerances)},
        "material": {"mu": scenario.material.mu, "rho": scenario.material.rho,
                     "g": list(scenario.material.g),
                     "conductivity": scenario.material.conductivity},
        "pressure": {"name": scenario.pressure[0],
                     "params": scenario.pressure[1]},
    }


def run_suite(scenario: Scenario) -> Report:
    """Execute every applicable (frame, field, check) triple.

    Per-triple errors are captured as 'error' rows; they fail the suite
    but do not abort it.  FRAMEKIT_THREADS > 1 enables a thread pool;
    results are always assembled in (frame, field, check) order.
    """
    start = time.perf_counter()
    frames = [(i, name, make_frame(name, **params))
              for i, (name, params) in enumerate(scenario.frames)]
    fields = [(i, name, make_field(name, **params))
              for i, (name, params) in enumerate(scenario.fields)]
    p_field = make_field(scenario.pressure[0], **scenario.pressure[1])
    if not isinstance(p_field, ScalarField):
        raise ScenarioError("'pressure' must name a scalar field")

    triples = []
    for fi, fname, frame in frames:
        for gi, gname, field_obj in fields:
            for ci, check_id in enumerate(scenario.checks):
                if _applicable(check_id, field_obj):
                    triples.append((fi, fname, frame, gi, gname, field_obj,
                                    ci, check_id))

    def execute(triple):
        fi, fname, frame, gi, gname, field_obj, ci, check_id = triple
        rng = np.random.default_rng([scenario.seed, fi, gi, ci])
        row = {"frame": fname, "field": gname, "check": check_id}
        try:
            res = _run_triple(scenario, frame, field_obj, check_id, rng, p_field)
            row.update(samples=res.samples, max_abs_err=res.max_abs_err,
                       mean_abs_err=res.mean_abs_err, tol=res.tol,
                       witness=res.witness,
                       status="pass" if res.passed else "fail")
        except Exception as exc:  # captured per-triple by contract
            row.update(samples=0, max_abs_err=None, mean_abs_err=None,
                       tol=scenario.tolerance(check_id), witness=None,
                       status="error", message=f"{type(exc).__name__}: {exc}")
        return row

    n_threads = max(1, int(os.environ.get("FRAMEKIT_THREADS", "1")))
    if n_threads > 1 and len(triples) > 1:
        with ThreadPoolExecutor(max_workers=n_threads) as pool:
            rows = list(pool.map(execute, triples))
    else:
        rows = [execute(t) for t in triples]

    passed = all(r["status"] == "pass" for r in rows)
    return Report(scenario=_scenario_echo(scenario), results=tuple(rows),
                  passed=passed, wall_time_s=time.perf_counter() - start)


# --------------------------------------------------------------------------
# Report emission
# --------------------------------------------------------------------------

def _fmt(value, indent: int) -> str:
    pad = "  " * indent
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "null"
    if isinstance(value, int):
        return repr(value)
    if isinstance(value, float):
        return format(value, ".17g")
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f'{pad}  {json.dumps(str(k))}: {_fmt(v, indent + 1)}'
                 for k, v in value.items()]
        return "{\n" + ",\n".join(items) + f"\n{pad}}}"
    if isinstance(value, (list, tuple)):
        if not len(value):
            return "[]"
        items = [f"{pad}  {_fmt(v, indent + 1)}" for v in value]
        return "[\n" + ",\n".join(items) + f"\n{pad}]"
    raise TypeError(f"cannot serialize {type(value).__name__}")


def _report_dict(report: Report, include_wall_time: bool) -> dict:
    out = {"version": report.version,
           "scenario": report.scenario,
           "results": list(report.results),
           "suite_verdict": "pass" if report.passed else "fail"}
    if include_wall_time:
        out["wall_time_s"] = report.wall_time_s
    return out


def canonical_report_json(report: Report) -> str:
    """Byte-stable JSON form with the wall-time field excluded."""
    return _fmt(_report_dict(report, include_wall_time=False), 0) + "\n"


def emit_report(report: Report, format: str = "json") -> str:
    """Render a report as JSON (stable key order, 17 significant digits)
    or as a human-readable table."""
    if format == "json":
        return _fmt(_report_dict(report, include_wall_time=True), 0) + "\n"
    if format != "table":
        raise ScenarioError(f"unknown report format {format!r}")
    header = (f"{'frame':<24} {'field':<14} {'check':<27} "
              f"{'max_err':>12} {'tol':>9} {'witness':>10} verdict")
    lines = [header, "-" * len(header)]
    for row in report.results:
        mx = "-" if row["max_abs_err"] is None else f"{row['max_abs_err']:.3e}"
        wit = "-" if row.get("witness") is None else f"{row['witness']:.3e}"
        lines.append(f"{row['frame']:<24} {row['field']:<14} {row['check']:<27} "
                     f"{mx:>12} {row['tol']:>9.0e} {wit:>10} {row['status']}")
        if row.get("message"):
            lines.append(f"    {row['message']}")
    lines.append(f"suite verdict: {'pass' if report.passed else 'fail'} "
                 f"({len(report.results)} triples, {report.wall_time_s:.2f}s)")
    return "\n".join(lines) + "\n"
