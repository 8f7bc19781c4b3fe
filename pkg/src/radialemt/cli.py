"""Command-line front end.

Six subcommands, one job each:

  effective   closed-form effective conductivity of a geometry
  rotation    interior field rotation of a cored geometry
  verify      closed form vs an independent numeric oracle
  optimize    best spiral angle, or the core radius hitting a target rotation
  sweep       one-parameter table of an observable, as CSV
  field       sampled (r, theta, u, j_r, j_theta) table, optional SVG

Scalar results are JSON on stdout, tables are CSV, SVG only behind --svg.
Geometry arguments accept a file path or inline JSON. Exit codes: 0 success,
1 verification over threshold, 2 bad input or usage. The EMT_TOL environment
variable overrides the default verification threshold of 1e-8. Output never
embeds timestamps or versions; `--version` exists for that.
"""

from __future__ import annotations

import argparse
import dataclasses
import io
import json
import math
import os
import re
import sys
from typing import Optional

from . import __version__, closed_form, field_solver, geometry, optimize, oracle, svgplot

__all__ = ["RunConfig", "main", "parse_angle", "DEFAULT_THRESHOLD"]

DEFAULT_THRESHOLD = 1e-8

_ANGLE_RE = re.compile(
    r"^\s*(-?)(\d+(?:\.\d*)?|\.\d+)?\s*\*?\s*pi\s*(?:/\s*(\d+(?:\.\d*)?))?\s*$"
)


class UsageError(Exception):
    """Bad input; carries the machine-readable payload printed on exit 2."""

    def __init__(self, code: str, detail: str, **extra):
        super().__init__(f"{code}: {detail}")
        self.payload = {"error": code, "detail": detail}
        self.payload.update(extra)


@dataclasses.dataclass(frozen=True)
class RunConfig:
    """One resolved invocation: command plus every knob it may consume."""

    command: str
    source: Optional[str] = None  # geometry or sweep spec: path or inline JSON
    output: Optional[str] = None
    fmt: str = "json"
    tol: Optional[float] = None
    method: str = "ode"
    grid_n: int = 256
    box_half_width: float = 3.0
    nr: int = 24
    ntheta: int = 48
    svg: Optional[str] = None
    k1: Optional[float] = None
    k2: Optional[float] = None
    r0: Optional[float] = None
    target_angle: Optional[str] = None


def parse_angle(text: str) -> float:
    """Angle in radians, or multiples of pi written as 'pi', 'pi/2', '2pi/3'."""
    try:
        return float(text)
    except ValueError:
        pass
    m = _ANGLE_RE.match(text)
    if m is None:
        raise UsageError("angle", f"cannot parse angle {text!r}")
    sign = -1.0 if m.group(1) else 1.0
    coef = float(m.group(2)) if m.group(2) else 1.0
    den = float(m.group(3)) if m.group(3) else 1.0
    return sign * coef * math.pi / den


def _default_threshold() -> float:
    raw = os.environ.get("EMT_TOL")
    if raw is None:
        return DEFAULT_THRESHOLD
    try:
        return float(raw)
    except ValueError:
        raise UsageError("env", f"EMT_TOL must be a number, got {raw!r}") from None


def _load_json(source: str) -> dict:
    text = source
    if not source.lstrip().startswith("{"):
        try:
            with open(source, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as e:
            raise UsageError("io", f"cannot read {source!r}: {e}") from e
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise UsageError("parse", f"malformed JSON: {e}") from e


def _load_geometry(source: str) -> geometry.Assemblage:
    d = _load_json(source)
    try:
        a = geometry.assemblage_from_dict(d)
    except ValueError as e:
        raise UsageError("schema", str(e)) from e
    violations = geometry.validate(a)
    if violations:
        raise UsageError(
            "validation",
            "geometry violates its invariants",
            violations=[
                {"code": v.code, "field": v.field, "message": v.message} for v in violations
            ],
        )
    return a


def _emit(cfg: RunConfig, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_text(obj: dict) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


# ---------------------------------------------------------------------------
# subcommands


def cmd_effective(cfg: RunConfig) -> int:
    a = _load_geometry(cfg.source)
    _emit(cfg, _json_text({
        "geometry": geometry.assemblage_to_dict(a),
        "sigma_star": closed_form.sigma_star(a),
        "formula_name": closed_form.formula_name(a),
    }))
    return 0


def cmd_rotation(cfg: RunConfig) -> int:
    a = _load_geometry(cfg.source)
    if not geometry.has_core(a):
        raise UsageError("no_core", "rotation is defined for assemblages with a core")
    rot = field_solver.nucleus_field(field_solver.solve(a))
    _emit(cfg, _json_text({
        "upsilon": rot.upsilon,
        "psi": rot.psi,
        "magnitude": rot.magnitude,
    }))
    return 0


def cmd_verify(cfg: RunConfig) -> int:
    a = _load_geometry(cfg.source)
    threshold = cfg.tol if cfg.tol is not None else _default_threshold()
    try:
        report = oracle.verify(
            a, method=cfg.method, grid_n=cfg.grid_n, box_half_width=cfg.box_half_width
        )
    except oracle.MethodGeometryMismatch as e:
        raise UsageError("method_geometry_mismatch", str(e)) from e
    except (ArithmeticError, RuntimeError, ValueError) as e:
        raise UsageError("oracle_failure", f"{type(e).__name__}: {e}") from e
    out = report.to_json_dict()
    out["threshold"] = threshold
    out["passed"] = report.rel_err <= threshold
    _emit(cfg, _json_text(out))
    return 0 if out["passed"] else 1


def cmd_optimize(cfg: RunConfig) -> int:
    if cfg.k1 is None or cfg.k2 is None:
        raise UsageError("usage", "--k1 and --k2 are required")
    if (cfg.r0 is None) == (cfg.target_angle is None):
        raise UsageError("usage", "give exactly one of --r0 or --target-angle")

    if cfg.target_angle is not None:
        ups = parse_angle(cfg.target_angle)
        try:
            r0 = closed_form.radius_for_rotation(cfg.k1, cfg.k2, ups)
        except closed_form.EqualConductivities as e:
            raise UsageError("equal_conductivities", str(e)) from e
        except ValueError as e:
            raise UsageError("usage", str(e)) from e
        s1, s2 = geometry.laminate_eigen(geometry.LaminateSpec(cfg.k1, cfg.k2, 0.5))
        _emit(cfg, _json_text({
            "k1": cfg.k1,
            "k2": cfg.k2,
            "m1": 0.5,
            "sigma1": s1,
            "sigma2": s2,
            "phi0": closed_form.optimal_phi(s1, s2),
            "target_upsilon": ups,
            "r0": r0,
        }))
        return 0

    if not 0.0 < cfg.r0 < 1.0:
        raise UsageError("usage", f"--r0 must lie in (0, 1), got {cfg.r0!r}")
    best = optimize.maximize_rotation_numeric(cfg.k1, cfg.k2, cfg.r0)
    _emit(cfg, _json_text({
        "sigma1": cfg.k1,
        "sigma2": cfg.k2,
        "r0": cfg.r0,
        "phi0": best.phi_hat,
        "upsilon_max": best.upsilon_hat,
        "flat_landscape": best.flat,
    }))
    return 0


def cmd_sweep(cfg: RunConfig) -> int:
    d = _load_json(cfg.source)
    for key in ("geometry", "parameter", "lo", "hi", "steps", "observable"):
        if key not in d:
            raise UsageError("schema", f"sweep spec is missing {key!r}")
    try:
        a = geometry.assemblage_from_dict(d["geometry"])
        geometry.require_valid(a)
    except (ValueError, geometry.InvalidAssemblage) as e:
        raise UsageError("schema", str(e)) from e
    spec = optimize.SweepSpec(
        geometry=a,
        parameter=str(d["parameter"]),
        lo=float(d["lo"]),
        hi=float(d["hi"]),
        steps=int(d["steps"]),
        observable=str(d["observable"]),
    )
    try:
        text = optimize.sweep_csv(spec)
    except (optimize.InvalidParameterPath, optimize.RangeViolatesInvariant, ValueError) as e:
        raise UsageError("sweep", str(e)) from e
    _emit(cfg, text)
    return 0


def cmd_field(cfg: RunConfig) -> int:
    if cfg.nr < 2 or cfg.ntheta < 4:
        raise UsageError("grid", f"need nr >= 2 and ntheta >= 4, got {cfg.nr}, {cfg.ntheta}")
    a = _load_geometry(cfg.source)
    sol = field_solver.solve(a)

    buf = io.StringIO()
    buf.write("r,theta,u,j_r,j_theta\n")
    # interior rings k/nr for k = 1..nr, then one exterior ring showing the
    # unperturbed surroundings
    radii = [k / cfg.nr for k in range(1, cfg.nr + 1)] + [1.25]
    for r in radii:
        for j in range(cfg.ntheta):
            th = 2.0 * math.pi * j / cfg.ntheta
            u = float(field_solver.eval_potential(sol, r, th))
            jr, jt = field_solver.eval_current(sol, r, th)
            buf.write(f"{r!r},{th!r},{u!r},{float(jr)!r},{float(jt)!r}\n")
    _emit(cfg, buf.getvalue())

    if cfg.svg:
        markup = svgplot.render_svg(a, sol)
        with open(cfg.svg, "w", encoding="utf-8") as fh:
            fh.write(markup)
    return 0


_DISPATCH = {
    "effective": cmd_effective,
    "rotation": cmd_rotation,
    "verify": cmd_verify,
    "optimize": cmd_optimize,
    "sweep": cmd_sweep,
    "field": cmd_field,
}


# ---------------------------------------------------------------------------
# argument parsing


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="radialemt",
        description="Effective conductivity and interior fields of radially "
        "symmetric composite assemblages.",
    )
    p.add_argument("--version", action="version", version=f"radialemt {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def add_geometry(sp):
        sp.add_argument("geometry", help="geometry JSON: file path or inline object")

    def add_output(sp):
        sp.add_argument("-o", "--output", default=None, help="write to file instead of stdout")

    sp = sub.add_parser("effective", help="closed-form effective conductivity")
    add_geometry(sp)
    add_output(sp)

    sp = sub.add_parser("rotation", help="interior field rotation of a cored geometry")
    add_geometry(sp)
    add_output(sp)

    sp = sub.add_parser("verify", help="check the closed form against a numeric oracle")
    add_geometry(sp)
    add_output(sp)
    sp.add_argument("--method", choices=("ode", "fd"), default="ode")
    sp.add_argument("--tol", type=float, default=None,
                    help=f"pass threshold on rel_err (default {DEFAULT_THRESHOLD} or EMT_TOL)")
    sp.add_argument("--grid", type=int, default=256, dest="grid_n", help="fd grid cells per side")
    sp.add_argument("--box", type=float, default=3.0, dest="box_half_width",
                    help="fd box half-width")

    sp = sub.add_parser("optimize", help="best spiral angle or target-rotation design")
    add_output(sp)
    sp.add_argument("--k1", type=float, required=True)
    sp.add_argument("--k2", type=float, required=True)
    sp.add_argument("--r0", type=float, default=None,
                    help="core radius: report the best angle and rotation for sigma1=k1, sigma2=k2")
    sp.add_argument("--target-angle", default=None,
                    help="target rotation (radians or 'pi', 'pi/2'): report the core radius "
                    "reaching it with k1, k2 laminated at equal fractions")

    sp = sub.add_parser("sweep", help="CSV table of an observable along one parameter")
    sp.add_argument("spec", help="sweep spec JSON: file path or inline object")
    add_output(sp)

    sp = sub.add_parser("field", help="sample u and j on a polar grid; optional SVG")
    add_geometry(sp)
    add_output(sp)
    sp.add_argument("--nr", type=int, default=24, help="radial samples (>= 2)")
    sp.add_argument("--ntheta", type=int, default=48, help="angular samples (>= 4)")
    sp.add_argument("--svg", default=None, help="also render an SVG to this path")
    return p


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    fmt = {"sweep": "csv", "field": "csv"}.get(args.command, "json")
    return RunConfig(
        command=args.command,
        source=getattr(args, "geometry", None) or getattr(args, "spec", None),
        output=getattr(args, "output", None),
        fmt=fmt,
        tol=getattr(args, "tol", None),
        method=getattr(args, "method", "ode"),
        grid_n=getattr(args, "grid_n", 256),
        box_half_width=getattr(args, "box_half_width", 3.0),
        nr=getattr(args, "nr", 24),
        ntheta=getattr(args, "ntheta", 48),
        svg=getattr(args, "svg", None),
        k1=getattr(args, "k1", None),
        k2=getattr(args, "k2", None),
        r0=getattr(args, "r0", None),
        target_angle=getattr(args, "target_angle", None),
    )


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse prints its own message; keep its code (2 on usage, 0 on --help)
        return int(e.code or 0)
    cfg = _config_from_args(args)
    try:
        return _DISPATCH[cfg.command](cfg)
    except UsageError as e:
        sys.stdout.write(_json_text(e.payload) + "\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
