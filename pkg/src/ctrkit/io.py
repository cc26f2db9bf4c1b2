"""Readers and writers for the tube-set, material, constraint and CSV formats."""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path

from .curvefit import Point2
from .design import CandidateDesign, DesignConstraints
from .mechanics import PlanarShape, sample_shape
from .testdata import FatigueLog, StressStrainCurve, fatigue_log_from_radii
from .tube import DEFAULT_CLEARANCE, NYLON12_MJF, Material, Tube, TubeSet, validate_nesting


class FormatError(ValueError):
    pass


def _load_json(path):
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise FormatError(f"{path}: invalid JSON ({e})") from None


def material_from_dict(d: dict) -> Material:
    try:
        return Material(
            name=str(d["name"]),
            youngs_modulus=float(d["youngs_modulus_gpa"]) * 1000.0,
            elastic_limit_strain=float(d["elastic_limit_strain"]),
            break_strain=float(d["break_strain"]),
            notes=str(d.get("notes", "")),
        )
    except KeyError as e:
        raise FormatError(f"material: missing field {e.args[0]!r}") from None


def material_to_dict(m: Material) -> dict:
    return {
        "name": m.name,
        "youngs_modulus_gpa": m.youngs_modulus / 1000.0,
        "elastic_limit_strain": m.elastic_limit_strain,
        "break_strain": m.break_strain,
    }


def load_materials(path=None) -> dict[str, Material]:
    """Material catalog keyed by name; a file may hold one object or a list."""
    catalog = {NYLON12_MJF.name: NYLON12_MJF}
    if path is None:
        return catalog
    data = _load_json(path)
    items = data if isinstance(data, list) else data.get("materials", [data])
    for d in items:
        m = material_from_dict(d)
        catalog[m.name] = m
    return catalog


def tube_from_dict(d: dict, materials: dict[str, Material]) -> Tube:
    try:
        name = d.get("material", NYLON12_MJF.name)
        if name not in materials:
            raise FormatError(f"unknown material {name!r}")
        r = d.get("precurvature_radius_mm")
        if r is not None and float(r) == 0:
            raise FormatError("precurvature_radius_mm must be non-zero (null for straight)")
        return Tube.from_radius(
            float(d["od_mm"]),
            float(d["wall_mm"]),
            None if r is None else float(r),
            curved_len=float(d.get("curved_len_mm", 0.0)),
            straight_len=float(d.get("straight_len_mm", 0.0)),
            material=materials[name],
        )
    except KeyError as e:
        raise FormatError(f"tube: missing field {e.args[0]!r}") from None


def tube_to_dict(t: Tube) -> dict:
    return {
        "od_mm": t.od,
        "wall_mm": t.wall,
        "precurvature_radius_mm": None if t.precurvature == 0 else t.radius,
        "curved_len_mm": t.curved_len,
        "straight_len_mm": t.straight_len,
        "material": t.material.name,
    }


def load_tubeset(path, materials=None, check_nesting=True) -> TubeSet:
    """Read a tube-set file; raises if a consecutive pair fails its clearance."""
    materials = materials or load_materials()
    data = _load_json(path)
    tubes = [tube_from_dict(d, materials) for d in data.get("tubes", [])]
    if not tubes:
        raise FormatError("empty tube set")
    ts = TubeSet(tuple(tubes), float(data.get("clearance_mm", DEFAULT_CLEARANCE)))
    if check_nesting:
        rep = validate_nesting(ts)
        if not rep.ok:
            raise FormatError("; ".join(rep.failures()))
    return ts


def dump_tubeset(ts: TubeSet, path) -> None:
    payload = {"clearance_mm": ts.clearance, "tubes": [tube_to_dict(t) for t in ts]}
    Path(path).write_text(json.dumps(payload, indent=2) + "\n")


_CONSTRAINT_KEYS = {
    "od_min": "od_min_mm",
    "od_max": "od_max_mm",
    "wall_min": "wall_min_mm",
    "min_clearance": "min_clearance_mm",
    "max_recoverable_strain": "max_recoverable_strain",
    "radius_min": "radius_min_mm",
    "radius_max": "radius_max_mm",
    "curved_len": "curved_len_mm",
}


def load_constraints(path) -> DesignConstraints:
    data = _load_json(path)
    unknown = set(data) - set(_CONSTRAINT_KEYS.values())
    if unknown:
        raise FormatError(f"constraints: unknown fields {sorted(unknown)}")
    kw = {f: float(data[k]) for f, k in _CONSTRAINT_KEYS.items() if k in data}
    return DesignConstraints(**kw)


def constraints_to_dict(c: DesignConstraints) -> dict:
    return {k: getattr(c, f) for f, k in _CONSTRAINT_KEYS.items()}


def _read_rows(path, header):
    rows = []
    with open(path, newline="") as fh:
        lines = [ln for ln in fh if ln.strip() and not ln.lstrip().startswith("#")]
    reader = csv.reader(lines)
    try:
        head = [h.strip() for h in next(reader)]
    except StopIteration:
        raise FormatError(f"{path}: empty file") from None
    if head != list(header):
        raise FormatError(f"{path}: expected header {','.join(header)}, got {','.join(head)}")
    for lineno, row in enumerate(reader, start=2):
        if len(row) != len(header):
            raise FormatError(f"{path}: row {lineno} has {len(row)} fields")
        try:
            rows.append([float(v) if v.strip() else math.nan for v in row])
        except ValueError:
            raise FormatError(f"{path}: row {lineno} is not numeric") from None
    return rows


def load_points(path) -> list[Point2]:
    return [Point2(x, y) for x, y in _read_rows(path, ("x_mm", "y_mm"))]


def load_tensile(path) -> StressStrainCurve:
    return StressStrainCurve(tuple((e, s) for e, s in _read_rows(path, ("strain", "stress_mpa"))))


def load_fatigue(path) -> FatigueLog:
    rows = []
    for c, r in _read_rows(path, ("cycle", "radius_mm")):
        if math.isnan(r) or r == 0:
            raise FormatError(f"{path}: cycle {c:g} has missing or zero radius")
        if c != int(c):
            raise FormatError(f"{path}: cycle {c} is not an integer")
        rows.append((int(c), r))
    return fatigue_log_from_radii(rows)


DESIGN_HEADER = ("outer_od", "outer_wall", "outer_R", "inner_od", "inner_wall", "inner_R", "pred_R", "score")


def design_row(d: CandidateDesign) -> list:
    return [
        d.outer.od,
        d.outer.wall,
        d.outer.radius,
        d.inner.od,
        d.inner.wall,
        d.inner.radius,
        d.predicted_equilibrium_radius,
        d.score,
    ]


def write_designs_csv(designs, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(DESIGN_HEADER)
        for d in designs:
            w.writerow([repr(float(v)) for v in design_row(d)])


def write_shape_csv(shape: PlanarShape, path, step=1.0) -> None:
    rows = sample_shape(shape, step)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(("s_mm", "x_mm", "y_mm", "kappa_per_mm"))
        for r in rows:
            w.writerow([repr(float(v)) for v in r])


def write_shape_svg(shape: PlanarShape, path, step=1.0, margin=5.0) -> None:
    """Polyline of the centerline at 1 px = 1 mm, y axis pointing up."""
    pts = sample_shape(shape, step)[:, 1:3]
    xmin, ymin = pts.min(axis=0) - margin
    xmax, ymax = pts.max(axis=0) + margin
    w, h = xmax - xmin, ymax - ymin
    poly = " ".join(f"{x - xmin:.3f},{ymax - y:.3f}" for x, y in pts)
    Path(path).write_text(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w:.3f}" height="{h:.3f}" '
        f'viewBox="0 0 {w:.3f} {h:.3f}">\n'
        f'  <polyline fill="none" stroke="black" stroke-width="0.5" points="{poly}"/>\n'
        "</svg>\n"
    )
