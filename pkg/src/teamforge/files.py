"""Scenario files, experiment configs and results bundles on disk."""
from __future__ import annotations

import csv
import io as _io
import json
import math
import os
import shutil
import tempfile
from pathlib import Path
from typing import Iterable, Sequence

import jsonschema

from .experiment import ExperimentConfig, ExperimentResult
from .model import FitnessWeights, Instance, Project, SocialGraph, Worker, validate_instance

FORMAT_VERSION = "teamforge/1"
RESULTS_FORMAT = "teamforge-results/1"

ROW_COLUMNS = (
    "realization",
    "strategy",
    "solver",
    "skill_level",
    "relationship",
    "cost",
    "cost_normalized",
    "uncertainty_skill",
    "uncertainty_social",
    "fitness_true",
    "fitness_perceived",
    "approx_factor",
    "runtime_ms",
)
AGGREGATE_COLUMNS = (
    "strategy",
    "solver",
    "metric",
    "count",
    "mean",
    "sd",
    "ci_low",
    "ci_high",
    "ci_half_width",
    "sd_defined",
)


class ScenarioError(ValueError):
    """A scenario document that does not describe a valid instance."""


_num = {"type": "number"}
_point = {"type": "array", "items": {"type": "number", "minimum": 0, "maximum": 1}, "minItems": 2, "maxItems": 2}

SCENARIO_SCHEMA = {
    "type": "object",
    "required": ["meta", "workers", "edges", "project"],
    "properties": {
        "meta": {
            "type": "object",
            "required": ["format_version"],
            "properties": {"format_version": {"const": FORMAT_VERSION}},
        },
        "workers": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["id", "skills", "reward", "travel_rate", "history", "location"],
                "additionalProperties": False,
                "properties": {
                    "id": {"type": "integer", "minimum": 0},
                    "skills": {"type": "array", "items": {"type": "number", "minimum": 0, "maximum": 1}},
                    "reward": {"type": "number", "minimum": 0},
                    "travel_rate": {"type": "number", "minimum": 0},
                    "history": {"type": "integer", "minimum": 0},
                    "location": _point,
                },
            },
        },
        "edges": {
            "type": "array",
            "items": {
                "type": "array",
                "prefixItems": [{"type": "integer", "minimum": 0}, {"type": "integer", "minimum": 0}, _num],
                "minItems": 3,
                "maxItems": 3,
            },
        },
        "project": {
            "type": "object",
            "required": ["required_skills", "location", "weights"],
            "properties": {
                "required_skills": {"type": "array", "items": {"type": "integer", "minimum": 0}, "minItems": 1},
                "location": _point,
                "weights": {
                    "type": "object",
                    "required": ["w_skill", "w_rel", "w_cost", "w_unc"],
                    "additionalProperties": False,
                    "properties": {k: {"type": "number", "minimum": 0} for k in ("w_skill", "w_rel", "w_cost", "w_unc")},
                },
                "max_skills_per_worker": {"type": "integer", "minimum": 1},
            },
        },
    },
}


def scenario_to_dict(instance: Instance, meta: dict | None = None) -> dict:
    p = instance.project
    return {
        "meta": {"format_version": FORMAT_VERSION, **(meta or {})},
        "workers": [
            {
                "id": w.id,
                "skills": list(w.skill_levels),
                "reward": w.reward_demand,
                "travel_rate": w.travel_rate,
                "history": w.history_count,
                "location": list(w.location),
            }
            for w in instance.roster
        ],
        "edges": [[i, j, wt] for i, j, wt in instance.graph.edges],
        "project": {
            "required_skills": list(p.required_skills),
            "location": list(p.location),
            "weights": {
                "w_skill": p.weights.w_skill,
                "w_rel": p.weights.w_rel,
                "w_cost": p.weights.w_cost,
                "w_unc": p.weights.w_unc,
            },
            "max_skills_per_worker": p.max_skills_per_worker,
        },
    }


def _path(err: jsonschema.ValidationError) -> str:
    return "/" + "/".join(str(x) for x in err.absolute_path)


def scenario_from_dict(doc) -> Instance:
    """Parse and validate; raises :class:`ScenarioError` naming the first violation."""
    validator = jsonschema.Draft202012Validator(SCENARIO_SCHEMA)
    errors = sorted(validator.iter_errors(doc), key=lambda e: (list(map(str, e.absolute_path)), e.message))
    if errors:
        e = errors[0]
        raise ScenarioError(f"schema violation at {_path(e)}: {e.message}")
    roster = tuple(
        Worker(
            id=w["id"],
            skill_levels=tuple(float(x) for x in w["skills"]),
            reward_demand=float(w["reward"]),
            travel_rate=float(w["travel_rate"]),
            history_count=int(w["history"]),
            location=(float(w["location"][0]), float(w["location"][1])),
        )
        for w in doc["workers"]
    )
    graph = SocialGraph.from_edges(len(roster), [tuple(e) for e in doc["edges"]])
    pj = doc["project"]
    project = Project(
        required_skills=tuple(int(s) for s in pj["required_skills"]),
        location=(float(pj["location"][0]), float(pj["location"][1])),
        weights=FitnessWeights(**{k: float(v) for k, v in pj["weights"].items()}),
        max_skills_per_worker=int(pj.get("max_skills_per_worker", 1)),
    )
    inst = Instance(roster, graph, project)
    problems = validate_instance(inst)
    if problems:
        raise ScenarioError(f"invalid instance: {problems[0]}")
    return inst


def dumps_scenario(instance: Instance, meta: dict | None = None) -> str:
    return json.dumps(scenario_to_dict(instance, meta), indent=1) + "\n"


def write_scenario(path, instance: Instance, meta: dict | None = None):
    Path(path).write_text(dumps_scenario(instance, meta), encoding="utf-8")


def read_scenario(path) -> Instance:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ScenarioError(f"cannot read scenario {path}: {e.strerror}") from e
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ScenarioError(f"scenario is not valid JSON: {e}") from e
    return scenario_from_dict(doc)


def read_config(path) -> ExperimentConfig:
    with open(path, encoding="utf-8") as fh:
        return ExperimentConfig.from_dict(json.load(fh))


def fmt(x) -> str:
    """9 significant digits; missing values become an empty field."""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return ""
    return format(float(x), ".9g")


def _csv(header: Sequence[str], records: Iterable[Sequence]) -> str:
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for rec in records:
        w.writerow([fmt(v) if not isinstance(v, str) else v for v in rec])
    return buf.getvalue()


def rows_csv(result: ExperimentResult) -> str:
    timed = result.config.record_runtime
    recs = []
    for r in result.rows:
        t = r.true
        recs.append((
            r.realization, r.strategy, r.solver,
            t.skill_level, t.relationship, t.cost, t.cost_normalized,
            t.uncertainty_skill, t.uncertainty_social,
            t.fitness, r.perceived.fitness, r.approx_factor,
            r.runtime * 1000.0 if timed else math.nan,
        ))
    return _csv(ROW_COLUMNS, recs)


def aggregates_csv(result: ExperimentResult) -> str:
    recs = [
        (a.strategy, a.solver, a.metric, a.count, a.mean, a.sd, a.ci_low, a.ci_high,
         a.ci_half_width, a.sd_defined)
        for a in result.aggregates
    ]
    return _csv(AGGREGATE_COLUMNS, recs)


def metadata(result: ExperimentResult, extra: dict | None = None) -> dict:
    from . import __version__

    return {
        "format": RESULTS_FORMAT,
        "code_version": __version__,
        "mode": result.mode,
        "label": result.label,
        "master_seed": result.config.master_seed,
        "realizations": result.config.realizations,
        "row_count": len(result.rows),
        "fitness_shift": result.fitness_shift,
        "approximation": result.approximation,
        "rows_columns": list(ROW_COLUMNS),
        "aggregates_columns": list(AGGREGATE_COLUMNS),
        "config": result.config.to_dict(),
        **(extra or {}),
    }


def _write_result_files(d: Path, result: ExperimentResult, extra: dict | None = None):
    (d / "rows.csv").write_text(rows_csv(result), encoding="utf-8")
    (d / "aggregates.csv").write_text(aggregates_csv(result), encoding="utf-8")
    (d / "metadata.json").write_text(json.dumps(metadata(result, extra), indent=1) + "\n", encoding="utf-8")


def atomic_dir(target, fill):
    """Populate a fresh temp directory with ``fill(path)``, then move it onto ``target``.

    On failure the temp directory is removed and ``target`` is left as it was.
    """
    target = Path(target)
    target.parent.mkdir(parents=True, exist_ok=True)
    tmp = Path(tempfile.mkdtemp(prefix=f".{target.name}.tmp-", dir=target.parent))
    try:
        fill(tmp)
        if target.exists():
            old = Path(tempfile.mkdtemp(prefix=f".{target.name}.old-", dir=target.parent))
            os.rmdir(old)
            os.replace(target, old)
            os.replace(tmp, target)
            shutil.rmtree(old)
        else:
            os.replace(tmp, target)
    except BaseException:
        shutil.rmtree(tmp, ignore_errors=True)
        raise


def write_bundle(target, result: ExperimentResult, extra: dict | None = None):
    atomic_dir(target, lambda d: _write_result_files(d, result, extra))


def write_sweep_bundle(target, results: Sequence[ExperimentResult], extra: dict | None = None):
    def fill(d: Path):
        summary = []
        for res in results:
            sub = d / res.label
            sub.mkdir()
            _write_result_files(sub, res, extra)
            for a in res.aggregates:
                summary.append((res.label, res.config.netgen.k, res.config.netgen.beta, a.strategy,
                                a.solver, a.metric, a.count, a.mean, a.sd, a.ci_low, a.ci_high))
        (d / "sweep.csv").write_text(
            _csv(("point", "k", "beta", "strategy", "solver", "metric", "count", "mean", "sd",
                  "ci_low", "ci_high"), summary),
            encoding="utf-8",
        )
        from . import __version__

        meta = {
            "format": RESULTS_FORMAT,
            "code_version": __version__,
            "mode": "sweep",
            "points": [res.label for res in results],
            "config": results[0].config.to_dict() if results else None,
            **(extra or {}),
        }
        (d / "metadata.json").write_text(json.dumps(meta, indent=1) + "\n", encoding="utf-8")

    atomic_dir(target, fill)


def read_aggregates(results_dir) -> list[dict]:
    path = Path(results_dir) / "aggregates.csv"
    if not path.is_file():
        raise FileNotFoundError(f"missing {path}")
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    for r in rows:
        for k in ("mean", "sd", "ci_low", "ci_high", "ci_half_width"):
            r[k] = float(r[k])
        r["count"] = int(r["count"])
    return rows
