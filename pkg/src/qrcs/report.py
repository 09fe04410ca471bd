"""Scenarios, reports and CSV emission."""

from __future__ import annotations

import csv
import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import __version__
from .cost_models import CostParams, KappaScalingLaw, ModelVariant, kappa_scaling
from .crossover import COARSE_CAVEAT, RuntimeSeries, crossover_exact, runtime_curves
from .mesh import MeshTopology, SparsityReport, build_mesh, sparsity_parameter
from .precision import (
    CAVEAT_DB_CONVENTION,
    CAVEAT_RANGE_FORMULA,
    DbConvention,
    crossover_vs_precision,
    delta_series,
    precision_curves,
    regime_table,
)
from .resources import (
    CAVEAT_NO_QEC,
    CAVEAT_SINGLE_POINT_FIT,
    SCHERER_ANCHOR,
    HardwareProfile,
    extrapolate,
    fit_prefactor,
    hamiltonian_accounting,
    improvement_scenario,
    scaling_denominator,
    wall_clock,
)

ARTIFACTS = ("crossover", "curves", "table_a1", "fig_a2", "estimate", "sparsity")
FIG_A2_EPSILONS = (1e-1, 1e-2, 1e-3)

CSV_HEADERS = {
    "curves": ("N", "t_cg", "t_cjs"),
    "sparsity": ("nonzeros", "edges"),
    "table_a1": ("epsilon", "delta_db", "range_error_pct", "use_case"),
    "fig_a1": ("epsilon", "delta_db"),
    "fig_a2": ("epsilon", "algorithm", "N", "t"),
    "estimate_sweep": ("N", "steps", "seconds", "years", "universe_ages"),
}


class ScenarioError(ValueError):
    pass


@dataclass(frozen=True)
class CurveSpec:
    n_min: float = 1e6
    n_max: float = 1e10
    points: int = 100
    scale: str = "linear"


@dataclass(frozen=True)
class Scenario:
    name: str = "scenario"
    cost_params: CostParams = field(default_factory=SCHERER_ANCHOR.cost_params)
    kappa_law: KappaScalingLaw | None = None
    topology: MeshTopology | None = None
    hardware: HardwareProfile = field(default_factory=HardwareProfile)
    outputs: tuple[str, ...] = ()
    curves: CurveSpec = field(default_factory=CurveSpec)
    variant: ModelVariant = ModelVariant.CJS
    improvement_orders: tuple[float, ...] = (5.0,)
    db_convention: DbConvention = DbConvention.WORST_SIDE

    def __post_init__(self):
        for out in self.outputs:
            if out not in ARTIFACTS:
                raise ScenarioError(f"outputs: unknown artifact {out!r}; expected one of {list(ARTIFACTS)}")

    @classmethod
    def from_dict(cls, data: dict) -> "Scenario":
        known = {"name", "cost_params", "kappa_law", "topology", "hardware", "outputs", "curves",
                 "variant", "improvement_orders", "db_convention"}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ScenarioError(f"unknown scenario field(s): {unknown}")
        kwargs = {}
        if "name" in data:
            kwargs["name"] = str(data["name"])
        base = asdict(SCHERER_ANCHOR.cost_params())
        base.update(data.get("cost_params") or {})
        kwargs["cost_params"] = _build("cost_params", CostParams, base)
        if data.get("kappa_law") is not None:
            kwargs["kappa_law"] = _build("kappa_law", KappaScalingLaw, data["kappa_law"])
        if data.get("topology") is not None:
            kwargs["topology"] = _build("topology", MeshTopology, data["topology"])
        if data.get("hardware") is not None:
            kwargs["hardware"] = _build("hardware", HardwareProfile, data["hardware"])
        if data.get("curves") is not None:
            kwargs["curves"] = _build("curves", CurveSpec, data["curves"])
        if "outputs" in data:
            kwargs["outputs"] = tuple(data["outputs"])
        if "variant" in data:
            kwargs["variant"] = _wrap("variant", ModelVariant.parse, data["variant"])
        if "improvement_orders" in data:
            kwargs["improvement_orders"] = tuple(float(o) for o in data["improvement_orders"])
        if "db_convention" in data:
            kwargs["db_convention"] = _wrap("db_convention", DbConvention.parse, data["db_convention"])
        return cls(**kwargs)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "cost_params": asdict(self.cost_params),
            "kappa_law": asdict(self.kappa_law) if self.kappa_law else None,
            "topology": asdict(self.topology) if self.topology else None,
            "hardware": asdict(self.hardware),
            "outputs": list(self.outputs),
            "curves": asdict(self.curves),
            "variant": self.variant.value,
            "improvement_orders": list(self.improvement_orders),
            "db_convention": self.db_convention.value,
        }


def _wrap(name, fn, value):
    try:
        return fn(value)
    except (TypeError, ValueError) as exc:
        raise ScenarioError(f"{name}: {exc}") from None


def _build(name, cls, value):
    if not isinstance(value, dict):
        raise ScenarioError(f"{name}: expected an object, got {type(value).__name__}")
    return _wrap(name, lambda v: cls(**v), value)


def load_scenario(path) -> Scenario:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ScenarioError("scenario file must hold a JSON object")
    return Scenario.from_dict(data)


@dataclass
class Report:
    scenario: dict
    effective: dict
    results: dict
    errors: dict
    caveats: list
    csv_tables: dict = field(default_factory=dict, repr=False)
    tool: str = "qrcs"
    version: str = __version__

    @property
    def ok(self) -> bool:
        return not self.errors

    def as_dict(self) -> dict:
        return {
            "tool": self.tool,
            "version": self.version,
            "scenario": self.scenario,
            "effective": self.effective,
            "results": self.results,
            "errors": self.errors,
            "caveats": self.caveats,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, allow_nan=False) + "\n"


def _effective_params(s: Scenario) -> tuple[CostParams, dict]:
    p = s.cost_params
    eff = {"requested_d": p.d, "effective_d": p.d, "kappa": p.kappa}
    if s.topology is not None:
        report = sparsity_parameter(build_mesh(s.topology))
        p = p.with_(d=report.d)
        eff["effective_d"] = report.d
    if s.kappa_law is not None:
        p = p.with_(kappa=kappa_scaling(s.kappa_law, p.n))
        eff["kappa"] = p.kappa
    return p, eff


def _crossover(s, p, rep):
    res = crossover_exact(p)
    rep.caveats.append(COARSE_CAVEAT)
    return res.as_dict()


def _curves(s, p, rep):
    c = s.curves
    series = runtime_curves(p, c.n_min, c.n_max, c.points, c.scale)
    rep.csv_tables["curves"] = series.rows()
    return {"scale": series.scale, "N": list(series.n_values), "t_cg": list(series.t_cg), "t_cjs": list(series.t_cjs)}


def _table_a1(s, p, rep):
    rows = regime_table(s.db_convention)
    rep.caveats += [CAVEAT_DB_CONVENTION, CAVEAT_RANGE_FORMULA]
    rep.csv_tables["table_a1"] = [(r.epsilon, r.delta_db, r.range_error_pct, r.use_case) for r in rows]
    eps_grid = [10.0 ** (-4 + 3 * i / 60) for i in range(61)]
    rep.csv_tables["fig_a1"] = delta_series(eps_grid, s.db_convention)
    return [asdict(r) for r in rows]


def _fig_a2(s, p, rep):
    ratio = p.c_cjs / p.c_cg
    results = crossover_vs_precision(p.d, FIG_A2_EPSILONS, ratio)
    rep.caveats.append(COARSE_CAVEAT)
    rep.csv_tables["fig_a2"] = precision_curves(p.d, FIG_A2_EPSILONS, prefactor_ratio=ratio)
    return [{"epsilon": e, **r.as_dict()} for e, r in zip(FIG_A2_EPSILONS, results)]


def _estimate(s, p, rep):
    c_cjs = fit_prefactor(SCHERER_ANCHOR)
    ext = extrapolate(c_cjs, p, s.variant)
    wc = wall_clock(ext.steps, s.hardware)
    ham = hamiltonian_accounting(p)
    rep.caveats += [CAVEAT_SINGLE_POINT_FIT, CAVEAT_NO_QEC]
    sweep = []
    for n in (10.0 ** (k / 4) for k in range(24, 61)):
        steps = extrapolate(c_cjs, p.with_(n=n), s.variant).steps
        w = wall_clock(steps, s.hardware)
        sweep.append((n, w.steps, w.seconds, w.years, w.universe_ages))
    rep.csv_tables["estimate_sweep"] = sweep
    prefactor_wc = wall_clock(c_cjs, s.hardware)
    return {
        "c_cjs": c_cjs,
        "anchor_denominator": scaling_denominator(SCHERER_ANCHOR),
        "prefactor_wall_clock_years": prefactor_wc.years,
        "variant": ext.variant.value,
        "steps": wc.steps,
        "seconds": wc.seconds,
        "years": wc.years,
        "universe_ages": wc.universe_ages,
        "anchor_qubits": {"with_oracles": SCHERER_ANCHOR.with_oracles.logical_qubits,
                          "without_oracles": SCHERER_ANCHOR.without_oracles.logical_qubits},
        "hamiltonian": ham.as_dict(),
        "improvements": [
            {"orders_of_magnitude": o, **improvement_scenario(ext.steps, o, s.hardware).as_dict()}
            for o in s.improvement_orders
        ],
        "caveats": [CAVEAT_SINGLE_POINT_FIT, CAVEAT_NO_QEC],
    }


def _sparsity(s, p, rep):
    if s.topology is None:
        raise ScenarioError("sparsity artifact requires a topology")
    mesh = build_mesh(s.topology)
    sr = sparsity_parameter(mesh)
    rep.csv_tables["sparsity"] = sr.histogram_rows()
    return {
        "topology": s.topology.kind,
        "m": s.topology.m,
        "edges": int(len(mesh.edges)),
        "cells": int(len(mesh.cells)),
        "d": sr.d,
        "per_edge_counts": {str(k): v for k, v in sr.histogram_rows()},
        "boundary_min": sr.boundary_min,
    }


_RUNNERS = {
    "crossover": _crossover,
    "curves": _curves,
    "table_a1": _table_a1,
    "fig_a2": _fig_a2,
    "estimate": _estimate,
    "sparsity": _sparsity,
}


def run_scenario(s: Scenario) -> Report:
    rep = Report(scenario=s.to_dict(), effective={}, results={}, errors={}, caveats=[])
    try:
        p, eff = _effective_params(s)
    except ValueError as exc:
        rep.errors["effective"] = str(exc)
        return rep
    rep.effective = eff
    for name in s.outputs:
        try:
            rep.results[name] = _RUNNERS[name](s, p, rep)
        except (ValueError, ArithmeticError) as exc:
            rep.errors[name] = str(exc)
    rep.caveats = list(dict.fromkeys(rep.caveats))
    return rep


def _fmt(value) -> str:
    if isinstance(value, bool):
        return str(value)
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite value {value!r} cannot be written to CSV")
        return f"{value:.16e}"
    return str(value)


def emit_csv(kind: str, rows, path) -> Path:
    """Write rows under the fixed header for ``kind``; reals get 17 significant digits."""
    if kind not in CSV_HEADERS:
        raise ValueError(f"unknown CSV kind {kind!r}; expected one of {sorted(CSV_HEADERS)}")
    if isinstance(rows, RuntimeSeries):
        rows = rows.rows()
    elif isinstance(rows, SparsityReport):
        rows = rows.histogram_rows()
    path = Path(path)
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(CSV_HEADERS[kind])
            for row in rows:
                w.writerow([_fmt(v) for v in row])
    except OSError as exc:
        raise OSError(f"cannot write CSV to {path}: {exc.strerror or exc}") from exc
    return path


def write_tables(rep: Report, out_dir) -> list[Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    return [emit_csv(kind, rows, out / f"{kind}.csv") for kind, rows in rep.csv_tables.items()]
