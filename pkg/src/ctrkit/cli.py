"""Command-line interface: ``ctrkit <command> [options]``."""

from __future__ import annotations

import argparse
import csv
import json
import logging
import math
import sys
from dataclasses import asdict, dataclass, field

from . import io
from .curvefit import circumcircle, fit_circle_lsq
from .design import DesignGrid, enumerate_designs
from .mechanics import StiffnessTerm, compose_shape, equilibrium_curvature
from .testdata import DEFAULT_DEVIATION_TOL, DEFAULT_FIT_WINDOW, analyze_fatigue, analyze_tensile, predict_plastic_set
from .tube import NYLON12_MJF, Tube, bending_stiffness, second_moment_of_area, straightening_strain

logger = logging.getLogger(__name__)

# In-plane bending trials: (outer od, outer R, inner od, inner R, reported R*, reported RMSE).
# All tubes have 0.6 mm walls; lengths in mm.
BENDING_TRIALS = (
    (1, 3.8, 69.0, 2.2, 21.9, 54.7, 1.7),
    (2, 3.8, 39.9, 2.2, 22.1, 36.4, 0.8),
    (3, 5.4, 68.6, 3.8, 43.2, 64.0, 1.9),
    (4, 5.4, 34.5, 3.8, 70.9, 36.8, 0.3),
)
TRIAL_WALL = 0.6
TRIAL_MATCH_TOL = 0.1


@dataclass
class RunReport:
    command: str
    inputs: dict = field(default_factory=dict)
    outputs: list = field(default_factory=list)
    warnings: list = field(default_factory=list)
    lines: list = field(default_factory=list, repr=False)

    def to_json(self) -> str:
        d = asdict(self)
        d.pop("lines")
        return json.dumps(_finite(d), indent=2, sort_keys=True)


def _finite(obj):
    # JSON has no inf; straight radii serialize as null
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    if isinstance(obj, dict):
        return {k: _finite(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_finite(v) for v in obj]
    return obj


def _fmt_r(r):
    return "straight" if math.isinf(r) else f"{r:.2f}"


def cmd_predict(args) -> RunReport:
    materials = io.load_materials(args.material)
    ts = io.load_tubeset(args.tubeset, materials)
    rep = RunReport("predict", {"tubeset": args.tubeset, "material": args.material})
    terms = [StiffnessTerm(bending_stiffness(t), t.precurvature) for t in ts]
    kappa = equilibrium_curvature(terms)
    radius = math.inf if abs(kappa) < 1e-15 else 1.0 / kappa
    rep.lines.append(f"tubes: {len(ts)}  clearance_mm: {ts.clearance:.3f}")
    rep.lines.append("tube  od_mm  wall_mm  R_mm      I_mm4       EI_Nmm2        strain   limit   exceeds")
    for i, t in enumerate(ts):
        pp = predict_plastic_set(t, 0.0)
        row = {
            "tube": i,
            "od_mm": t.od,
            "wall_mm": t.wall,
            "precurvature_radius_mm": t.radius,
            "I_mm4": second_moment_of_area(t),
            "EI_Nmm2": bending_stiffness(t),
            "straightening_strain": pp.peak_strain,
            "elastic_limit_strain": t.material.elastic_limit_strain,
            "exceeds_elastic_limit": pp.exceeds,
        }
        rep.outputs.append(row)
        rep.lines.append(
            f"{i:<4d}  {t.od:5.2f}  {t.wall:7.2f}  {_fmt_r(t.radius):>8s}  {row['I_mm4']:10.4f}  "
            f"{row['EI_Nmm2']:12.2f}  {pp.peak_strain:7.5f}  {row['elastic_limit_strain']:6.4f}  "
            f"{'yes' if pp.exceeds else 'no'}"
        )
        if pp.exceeds:
            rep.warnings.append(f"tube {i} straightening strain {pp.peak_strain:.4f} exceeds elastic limit")
    rep.outputs.append({"tube": "equilibrium", "curvature_per_mm": kappa, "radius_mm": radius})
    rep.lines.append(f"equilibrium curvature_per_mm: {kappa:.6f}")
    rep.lines.append(f"equilibrium R*_mm: {_fmt_r(radius)}")

    if args.shape_csv or args.svg:
        # tips aligned so that equal-length curved sections overlap completely
        ext = min(t.total_len for t in ts)
        shape = compose_shape(ts, [ext] * len(ts))
        if args.shape_csv:
            io.write_shape_csv(shape, args.shape_csv, args.step)
        if args.svg:
            io.write_shape_svg(shape, args.svg, args.step)
    return rep


def verify_bending_trials() -> list[dict]:
    rows = []
    for trial, od_o, r_o, od_i, r_i, published_r, published_rmse in BENDING_TRIALS:
        outer = Tube.from_radius(od_o, TRIAL_WALL, r_o, curved_len=50.0)
        inner = Tube.from_radius(od_i, TRIAL_WALL, r_i, curved_len=50.0)
        kappa = equilibrium_curvature(
            [
                StiffnessTerm(bending_stiffness(outer), outer.precurvature),
                StiffnessTerm(bending_stiffness(inner), inner.precurvature),
            ]
        )
        computed = 1.0 / kappa
        rows.append(
            {
                "trial": trial,
                "computed_R_mm": computed,
                "published_R_mm": published_r,
                "difference_mm": computed - published_r,
                "match": abs(computed - published_r) <= TRIAL_MATCH_TOL,
                "published_rmse_mm": published_rmse,
            }
        )
    return rows


def cmd_verify(args) -> RunReport:
    rep = RunReport("verify", {"tolerance_mm": TRIAL_MATCH_TOL})
    rep.lines.append("trial  computed_R_mm  published_R_mm  diff_mm  status")
    for row in verify_bending_trials():
        status = "match" if row["match"] else "MISMATCH"
        rep.outputs.append(row)
        rep.lines.append(
            f"{row['trial']:<5d}  {row['computed_R_mm']:13.2f}  {row['published_R_mm']:10.2f}  "
            f"{row['difference_mm']:+7.2f}  {status}"
        )
        if not row["match"]:
            rep.warnings.append(
                f"trial {row['trial']}: nominal geometry gives {row['computed_R_mm']:.2f} mm, "
                f"published value is {row['published_R_mm']:.2f} mm; not reproducible from nominal "
                "walls, radii and a shared modulus"
            )
    return rep


def cmd_fit_circle(args) -> RunReport:
    pts = io.load_points(args.points)
    mode = "three-point" if args.three_point else "lsq"
    rep = RunReport("fit-circle", {"points": args.points, "mode": mode})
    if mode == "three-point":
        if len(pts) != 3:
            raise ValueError(f"three-point mode needs exactly 3 points, got {len(pts)}")
        fit = circumcircle(*pts)
    else:
        fit = fit_circle_lsq(pts)
    rep.outputs.append(
        {
            "center_x_mm": fit.center.x,
            "center_y_mm": fit.center.y,
            "radius_mm": fit.radius,
            "rms_residual_mm": fit.rms_residual,
            "n_points": fit.n_points,
        }
    )
    rep.lines.append(f"center_mm: ({fit.center.x:.4f}, {fit.center.y:.4f})")
    rep.lines.append(f"radius_mm: {fit.radius:.4f}")
    rep.lines.append(f"rms_residual_mm: {fit.rms_residual:.6f}")
    rep.lines.append(f"n_points: {fit.n_points}")
    return rep


def cmd_tensile(args) -> RunReport:
    curve = io.load_tensile(args.csv)
    s = analyze_tensile(curve, args.window, args.tol)
    rep = RunReport("tensile", {"csv": args.csv, "window": args.window, "tol": args.tol})
    rep.outputs.append(
        {
            "youngs_modulus_mpa": s.youngs_modulus,
            "youngs_modulus_gpa": s.youngs_modulus / 1000.0,
            "proportional_limit_strain": s.proportional_limit_strain,
            "break_strain": s.break_strain,
        }
    )
    rep.lines.append(f"youngs_modulus_MPa: {s.youngs_modulus:.2f}")
    rep.lines.append(f"youngs_modulus_GPa: {s.youngs_modulus / 1000.0:.4f}")
    rep.lines.append(f"proportional_limit_strain: {s.proportional_limit_strain:.4f}")
    rep.lines.append(f"break_strain: {s.break_strain:.4f}")
    return rep


def cmd_fatigue(args) -> RunReport:
    log = io.load_fatigue(args.csv)
    materials = io.load_materials(args.material)
    ts = io.load_tubeset(args.tubeset, materials, check_nesting=False)
    tube = ts[args.tube]
    s = analyze_fatigue(log, tube)
    rep = RunReport("fatigue", {"csv": args.csv, "tubeset": args.tubeset, "tube": args.tube})
    rep.lines.append("cycle  retention")
    for c, r in s.retention:
        rep.outputs.append({"cycle": c, "retention": r})
        rep.lines.append(f"{c:<5d}  {r:9.4f}")
    rep.lines.append(f"final_retention: {s.final_retention:.4f}")
    rep.lines.append(f"peak_strain: {s.peak_strain:.5f}")
    rep.lines.append(f"elastic_limit_strain: {tube.material.elastic_limit_strain:.4f}")
    verdict = "exceeds elastic limit (plastic set expected)" if s.exceeds_elastic_limit else "within elastic limit"
    rep.lines.append(f"verdict: {verdict}")
    if s.exceeds_elastic_limit:
        rep.warnings.append(f"straightening strain {s.peak_strain:.4f} exceeds elastic limit")
    return rep


def cmd_design(args) -> RunReport:
    c = io.load_constraints(args.constraints)
    material = NYLON12_MJF
    if args.material:
        cat = io.load_materials(args.material)
        material = cat[args.material_name] if args.material_name else list(cat.values())[-1]
    grid = DesignGrid.from_steps(
        c, args.od_step, args.wall_step, args.n_radii, args.wall_max, not args.no_straight
    )
    designs = enumerate_designs(args.target_radius, c, grid, material, workers=args.workers)
    out = args.results or "designs.csv"
    io.write_designs_csv(designs, out)
    rep = RunReport(
        "design",
        {
            "constraints": io.constraints_to_dict(c),
            "target_radius_mm": args.target_radius,
            "material": material.name,
            "od_step": args.od_step,
            "wall_step": args.wall_step,
            "n_radii": args.n_radii,
            "results": out,
        },
    )
    rep.lines.append(f"feasible designs: {len(designs)} (written to {out})")
    rep.lines.append("rank  outer_od  outer_wall  outer_R   inner_od  inner_wall  inner_R   pred_R    score_per_mm")
    for rank, d in enumerate(designs[:10], start=1):
        rep.outputs.append(dict(zip(io.DESIGN_HEADER, io.design_row(d))))
        rep.lines.append(
            f"{rank:<4d}  {d.outer.od:8.2f}  {d.outer.wall:10.2f}  {_fmt_r(d.outer.radius):>8s}  "
            f"{d.inner.od:8.2f}  {d.inner.wall:10.2f}  {_fmt_r(d.inner.radius):>8s}  "
            f"{_fmt_r(d.predicted_equilibrium_radius):>8s}  {d.score:.6e}"
        )
    if not designs:
        rep.warnings.append("no feasible design on this grid")
    return rep


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ctrkit", description="In-plane mechanics and design of 3D-printed concentric tube pairs.")
    p.add_argument("--output", metavar="PATH", help="write the report rows as CSV")
    p.add_argument("--json", action="store_true", help="print the report as JSON")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("predict", help="equilibrium curvature of a fully overlapped tube set")
    sp.add_argument("tubeset")
    sp.add_argument("material", nargs="?", help="material catalog JSON (default: built-in nylon12-mjf)")
    sp.add_argument("--shape-csv", metavar="PATH")
    sp.add_argument("--svg", metavar="PATH")
    sp.add_argument("--step", type=float, default=1.0, help="shape sampling step, mm")
    sp.set_defaults(func=cmd_predict)

    sp = sub.add_parser("verify", help="recompute the published in-plane bending trials from nominal geometry")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("fit-circle", help="radius of digitized centerline points")
    sp.add_argument("points")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--three-point", action="store_true")
    g.add_argument("--lsq", action="store_true")
    sp.set_defaults(func=cmd_fit_circle)

    sp = sub.add_parser("tensile", help="modulus and limits from a tensile curve")
    sp.add_argument("csv")
    sp.add_argument("--window", type=float, default=DEFAULT_FIT_WINDOW)
    sp.add_argument("--tol", type=float, default=DEFAULT_DEVIATION_TOL)
    sp.set_defaults(func=cmd_tensile)

    sp = sub.add_parser("fatigue", help="precurvature retention over bending cycles")
    sp.add_argument("csv")
    sp.add_argument("tubeset")
    sp.add_argument("--material")
    sp.add_argument("--tube", type=int, default=0, help="index of the tested tube in the set")
    sp.set_defaults(func=cmd_fatigue)

    sp = sub.add_parser("design", help="grid search for tube pairs matching a target radius")
    sp.add_argument("constraints")
    sp.add_argument("--target-radius", type=float, required=True)
    sp.add_argument("--od-step", type=float, default=0.2)
    sp.add_argument("--wall-step", type=float, default=0.2)
    sp.add_argument("--wall-max", type=float)
    sp.add_argument("--n-radii", type=int, default=16)
    sp.add_argument("--no-straight", action="store_true")
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--material")
    sp.add_argument("--material-name")
    sp.add_argument("--results", metavar="PATH", help="design CSV path (default designs.csv)")
    sp.set_defaults(func=cmd_design)
    return p


def _write_csv(rows, path):
    keys = []
    for r in rows:
        keys += [k for k in r if k not in keys]
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=keys, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: repr(v) if isinstance(v, float) else v for k, v in r.items()})


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        rep = args.func(args)
    except (ValueError, KeyError, IndexError, OSError) as e:
        msg = e.args[0] if isinstance(e, KeyError) else e
        print(f"error: {msg}", file=sys.stderr)
        return 2
    if args.json:
        print(rep.to_json())
    else:
        for line in rep.lines:
            print(line)
        for w in rep.warnings:
            print(f"warning: {w}")
    if args.output:
        _write_csv(rep.outputs, args.output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
