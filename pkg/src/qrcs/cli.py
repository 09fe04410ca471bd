"""Command line entry point: ``qrcs <subcommand> [flags]``."""

from __future__ import annotations

import argparse
import json
import os
import sys

from .precision import PrecisionRegime, format_table
from .report import ARTIFACTS, Report, Scenario, ScenarioError, load_scenario, run_scenario, write_tables

SINGLE_SHOT = {
    "crossover": ("crossover",),
    "sparsity": ("sparsity",),
    "estimate": ("estimate",),
    "precision": ("table_a1", "fig_a2"),
    "curves": ("curves",),
}


def _add_common(ap: argparse.ArgumentParser) -> None:
    g = ap.add_argument_group("cost parameters")
    g.add_argument("--n", type=float, help="problem size (mesh edges)")
    g.add_argument("--d", type=int, help="sparsity parameter")
    g.add_argument("--kappa", type=float, help="condition number")
    g.add_argument("--epsilon", type=float, help="relative precision in (0, 1)")
    g.add_argument("--c-cg", type=float, help="classical prefactor")
    g.add_argument("--c-cjs", type=float, help="quantum prefactor")
    g.add_argument("--kappa-mode", choices=["fixed", "unpreconditioned", "scherer2d", "scherer3d"])
    g.add_argument("--kappa-dims", type=int, help="spatial dimensions for --kappa-mode unpreconditioned")
    g.add_argument("--topology", help="square2d, triangular2d, cubic3d, tet6 or tet5 (overrides --d)")
    g.add_argument("--mesh-size", type=int, help="vertices per side for --topology")
    g.add_argument("--seconds-per-step", type=float, help="seconds per logical time step")
    g.add_argument("--variant", help="CG, CJS, CJSWithCorrection or CJS_CKS (estimate)")
    g.add_argument("--improvement-orders", type=float, nargs="+", help="orders of magnitude of speedup to evaluate")
    g.add_argument("--db-convention", help="WorstSide or PlusSide")
    c = ap.add_argument_group("curves")
    c.add_argument("--n-min", type=float)
    c.add_argument("--n-max", type=float)
    c.add_argument("--points", type=int)
    c.add_argument("--scale", choices=["linear", "loglog"])
    o = ap.add_argument_group("output")
    o.add_argument("--format", choices=["text", "json"], default="text")
    o.add_argument("--out", metavar="DIR", help="write CSV tables into DIR")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qrcs", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)
    for name in SINGLE_SHOT:
        _add_common(sub.add_parser(name, help=f"run the {name} analysis"))
    sc = sub.add_parser("scenario", help="run a JSON scenario file")
    sc.add_argument("file")
    sc.add_argument("--outputs", nargs="+", choices=ARTIFACTS, help="override the artifact list")
    _add_common(sc)
    return ap


def _overrides(args) -> dict:
    """Scenario fragment from flags that were given."""
    data: dict = {}
    cp = {k: getattr(args, k) for k in ("n", "d", "kappa", "epsilon", "c_cg", "c_cjs") if getattr(args, k) is not None}
    if cp:
        data["cost_params"] = cp
    if args.kappa_mode and not (args.kappa_mode == "fixed" and args.kappa is None):
        law = {"mode": args.kappa_mode}
        if args.kappa_mode == "fixed":
            law["value"] = args.kappa
        elif args.kappa_mode == "unpreconditioned":
            law.update(value=None, dims=args.kappa_dims)
        else:
            law["value"] = None
        data["kappa_law"] = law
    if args.topology or args.mesh_size:
        data["topology"] = {"kind": args.topology or "square2d", "m": args.mesh_size or 6}
    if args.seconds_per_step is not None:
        data["hardware"] = {"seconds_per_logical_step": args.seconds_per_step}
    curves = {k: getattr(args, k) for k in ("n_min", "n_max", "points", "scale") if getattr(args, k) is not None}
    if curves:
        data["curves"] = curves
    if args.variant:
        data["variant"] = args.variant
    if args.improvement_orders:
        data["improvement_orders"] = args.improvement_orders
    if args.db_convention:
        data["db_convention"] = args.db_convention
    return data


def _merge(base: dict, extra: dict) -> dict:
    merged = dict(base)
    for k, v in extra.items():
        if isinstance(v, dict) and isinstance(merged.get(k), dict):
            merged[k] = {**merged[k], **v}
        else:
            merged[k] = v
    return merged


def scenario_from_args(args) -> Scenario:
    if args.command == "scenario":
        base = load_scenario(args.file).to_dict()
        data = _merge(base, _overrides(args))
        if args.outputs:
            data["outputs"] = args.outputs
        return Scenario.from_dict(data)
    data = _overrides(args)
    data["name"] = args.command
    data["outputs"] = list(SINGLE_SHOT[args.command])
    if args.command == "sparsity" and "topology" not in data:
        data["topology"] = {"kind": "square2d", "m": 6}
    return Scenario.from_dict(data)


def _num(v) -> str:
    if isinstance(v, float):
        return f"{v:.4g}"
    return str(v)


def _lines(value, indent=""):
    if isinstance(value, dict):
        for k, v in value.items():
            if k == "caveats":
                # gathered once at the end of the report
                continue
            if isinstance(v, (dict, list)):
                yield f"{indent}{k}:"
                yield from _lines(v, indent + "  ")
            else:
                yield f"{indent}{k}: {_num(v)}"
    elif isinstance(value, list):
        if all(not isinstance(v, (dict, list)) for v in value):
            shown = value if len(value) <= 8 else value[:3] + ["..."] + value[-3:]
            yield f"{indent}[{', '.join(_num(v) for v in shown)}] ({len(value)} values)"
        else:
            for v in value:
                yield f"{indent}-"
                yield from _lines(v, indent + "  ")


def render_text(rep: Report, show_caveats: bool = True) -> str:
    out = [f"qrcs {rep.version} :: {rep.scenario.get('name', '')}"]
    if rep.effective:
        out.append("effective: " + ", ".join(f"{k}={_num(v)}" for k, v in rep.effective.items()))
    for name, res in rep.results.items():
        out.append(f"[{name}]")
        if name == "table_a1":
            out.append(format_table([PrecisionRegime(**r) for r in res]).rstrip("\n"))
        elif name == "curves":
            out.append(f"  {len(res['N'])} points, scale={res['scale']}, N in [{_num(res['N'][0])}, {_num(res['N'][-1])}]")
        else:
            out.extend(_lines(res, "  "))
    for name, msg in rep.errors.items():
        out.append(f"[error] {name}: {msg}")
    if show_caveats and rep.caveats:
        out.append("caveats:")
        out.extend(f"  - {c}" for c in rep.caveats)
    return "\n".join(out) + "\n"


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        scenario = scenario_from_args(args)
    except (ScenarioError, OSError, json.JSONDecodeError) as exc:
        print(f"qrcs: invalid scenario: {exc}", file=sys.stderr)
        return 2
    rep = run_scenario(scenario)
    if args.format == "json":
        sys.stdout.write(rep.to_json())
    else:
        sys.stdout.write(render_text(rep, show_caveats=os.environ.get("QRCS_NO_CAVEATS") != "1"))
    if args.out:
        try:
            write_tables(rep, args.out)
        except OSError as exc:
            rep.errors["csv"] = str(exc)
    if rep.errors:
        for name, msg in rep.errors.items():
            print(f"qrcs: {name} failed: {msg}", file=sys.stderr)
        return 1
    return 0
