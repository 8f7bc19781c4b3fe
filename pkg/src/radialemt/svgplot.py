"""Standalone SVG rendering of assemblage fields.

Everything is drawn by hand into a fixed 1000 x 1000 viewBox showing the
square |x|, |y| <= 1.5, with the unit inclusion centered. Three layers:

  * equipotential polylines of u, traced by marching squares over a polar
    sample grid (the grid follows the material interfaces, so contours stay
    clean across them);
  * current-direction arrows on a coarser polar grid;
  * for spiral materials, the eigendirection curves theta(r) = theta0 +
    tan(phi) ln r along which the conductivity is sigma1.

Output is plain markup with fixed-precision coordinates, so identical
inputs give byte-identical files. No drawing library is involved; the
point of this module is a dependency-free artifact, not a plotting API.
"""

from __future__ import annotations

import math

from . import field_solver, geometry

__all__ = ["VIEW_SIZE", "WORLD_HALF", "render_svg"]

VIEW_SIZE = 1000
WORLD_HALF = 1.5

_SCALE = VIEW_SIZE / (2.0 * WORLD_HALF)

# marching-squares segments per corner-sign case; edges are numbered
# 0: (c00,c10), 1: (c10,c11), 2: (c11,c01), 3: (c01,c00)
_MS_TABLE = {
    1: ((3, 0),),
    2: ((0, 1),),
    3: ((3, 1),),
    4: ((1, 2),),
    5: ((3, 0), (1, 2)),
    6: ((0, 2),),
    7: ((3, 2),),
    8: ((2, 3),),
    9: ((0, 2),),
    10: ((0, 1), (2, 3)),
    11: ((1, 2),),
    12: ((1, 3),),
    13: ((0, 1),),
    14: ((3, 0),),
}


def _px(x: float, y: float) -> tuple[float, float]:
    # world -> pixel, y axis flipped
    return (x + WORLD_HALF) * _SCALE, (WORLD_HALF - y) * _SCALE


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def _pt(x: float, y: float) -> str:
    px, py = _px(x, y)
    return f"{_fmt(px)} {_fmt(py)}"


def _interface_radii(a: geometry.Assemblage) -> list[float]:
    radii = [1.0]
    for name in ("r0", "r1", "rho0"):
        v = getattr(a, name, None)
        if v is not None:
            radii.append(float(v))
    return sorted(set(radii))


def _radial_samples(a: geometry.Assemblage, n: int) -> list[float]:
    """Radii from near zero to the window edge, snapped onto interfaces.

    Each interface radius appears twice, nudged a hair to either side, so a
    marching-squares cell never straddles a material jump.
    """
    eps = 1e-6
    cuts = [0.012] + _interface_radii(a) + [WORLD_HALF]
    out: list[float] = []
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        a_, b_ = lo + eps, hi - eps
        m = max(3, round(n * (hi - lo) / WORLD_HALF))
        out.extend(a_ + (b_ - a_) * k / (m - 1) for k in range(m))
    return out


def _contour_levels(samples: list[list[float]], count: int) -> list[float]:
    lo = min(min(row) for row in samples)
    hi = max(max(row) for row in samples)
    if hi <= lo:
        return []
    pad = (hi - lo) / (count + 1)
    return [lo + pad + (hi - lo - 2 * pad) * k / (count - 1) for k in range(count)]


def _contour_path(
    level: float, radii: list[float], thetas: list[float], u: list[list[float]]
) -> str:
    pieces: list[str] = []
    for i in range(len(radii) - 1):
        for j in range(len(thetas) - 1):
            corners = (
                (radii[i], thetas[j], u[i][j]),
                (radii[i + 1], thetas[j], u[i + 1][j]),
                (radii[i + 1], thetas[j + 1], u[i + 1][j + 1]),
                (radii[i], thetas[j + 1], u[i][j + 1]),
            )
            case = 0
            for bit, (_, _, val) in enumerate(corners):
                if val > level:
                    case |= 1 << bit
            segs = _MS_TABLE.get(case)
            if not segs:
                continue
            for e_from, e_to in segs:
                pts = []
                for e in (e_from, e_to):
                    r0_, t0_, u0 = corners[e]
                    r1_, t1_, u1 = corners[(e + 1) % 4]
                    t = (level - u0) / (u1 - u0)
                    rr = r0_ + (r1_ - r0_) * t
                    tt = t0_ + (t1_ - t0_) * t
                    pts.append(_pt(rr * math.cos(tt), rr * math.sin(tt)))
                pieces.append(f"M {pts[0]} L {pts[1]}")
    return " ".join(pieces)


def _arrows(sol: field_solver.FieldSolution, radii: list[float], n_theta: int) -> list[str]:
    out = []
    head = 7.0
    half = 11.0
    for r in radii:
        for k in range(n_theta):
            th = 2.0 * math.pi * (k + 0.5) / n_theta
            jr, jt = field_solver.eval_current(sol, r, th)
            c, s = math.cos(th), math.sin(th)
            jx = jr * c - jt * s
            jy = jr * s + jt * c
            mag = math.hypot(jx, jy)
            if mag < 1e-12:
                continue
            ux, uy = jx / mag, jy / mag
            cx, cy = _px(r * c, r * s)
            # pixel frame flips y
            dx, dy = ux, -uy
            x0, y0 = cx - half * dx, cy - half * dy
            x1, y1 = cx + half * dx, cy + half * dy
            # arrowhead wings
            wx, wy = -dy, dx
            ax0 = x1 - head * dx + 0.5 * head * wx
            ay0 = y1 - head * dy + 0.5 * head * wy
            ax1 = x1 - head * dx - 0.5 * head * wx
            ay1 = y1 - head * dy - 0.5 * head * wy
            out.append(
                f'<path d="M {_fmt(x0)} {_fmt(y0)} L {_fmt(x1)} {_fmt(y1)} '
                f'M {_fmt(ax0)} {_fmt(ay0)} L {_fmt(x1)} {_fmt(y1)} '
                f'L {_fmt(ax1)} {_fmt(ay1)}" class="arr"/>'
            )
    return out


def _spiral_annulus(a: geometry.Assemblage) -> tuple[float, float, float] | None:
    """(r_lo, r_hi, phi) of the spiral-material region, if any."""
    if isinstance(a, geometry.SpiralWithCore):
        return a.r0, 1.0, a.spiral.phi
    if isinstance(a, geometry.SpiralWithShell):
        return 0.03, a.r0, a.spiral.phi
    if isinstance(a, geometry.BasicSpiral):
        return 0.03, 1.0, a.phi
    return None


def _spiral_curves(a: geometry.Assemblage, count: int = 8, points: int = 64) -> list[str]:
    region = _spiral_annulus(a)
    if region is None:
        return []
    r_lo, r_hi, phi = region
    slope = math.tan(phi)
    out = []
    for m in range(count):
        theta0 = 2.0 * math.pi * m / count
        pts = []
        for k in range(points):
            r = r_lo * (r_hi / r_lo) ** (k / (points - 1))
            th = theta0 + slope * math.log(r)
            pts.append(_pt(r * math.cos(th), r * math.sin(th)))
        d = "M " + " L ".join(pts)
        out.append(f'<path d="{d}" class="eig"/>')
    return out


def render_svg(
    a: geometry.Assemblage,
    sol: field_solver.FieldSolution | None = None,
    n_radial: int = 110,
    n_angular: int = 240,
    n_levels: int = 11,
    arrow_rings: tuple[float, ...] = (0.2, 0.45, 0.7, 0.92, 1.12, 1.35),
    arrows_per_ring: int = 16,
) -> str:
    """Render the assemblage's potential and current to SVG markup."""
    if sol is None:
        sol = field_solver.solve(a)

    radii = _radial_samples(a, n_radial)
    thetas = [2.0 * math.pi * j / n_angular for j in range(n_angular + 1)]
    u = [[field_solver.eval_potential(sol, r, th) for th in thetas] for r in radii]
    levels = _contour_levels(u, n_levels)

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{VIEW_SIZE}" height="{VIEW_SIZE}" '
        f'viewBox="0 0 {VIEW_SIZE} {VIEW_SIZE}">',
        f"<title>{geometry.assemblage_to_json(a)}</title>",
        "<style>",
        ".equi { fill: none; stroke: #1f77b4; stroke-width: 1.6; }",
        ".arr { fill: none; stroke: #d62728; stroke-width: 1.8; }",
        ".eig { fill: none; stroke: #888888; stroke-width: 1.0; stroke-dasharray: 6 5; }",
        ".iface { fill: none; stroke: #222222; stroke-width: 2.0; }",
        "</style>",
        f'<rect width="{VIEW_SIZE}" height="{VIEW_SIZE}" fill="#ffffff"/>',
    ]

    for level in levels:
        d = _contour_path(level, radii, thetas, u)
        if d:
            lines.append(f'<path d="{d}" class="equi"/>')

    lines.extend(_spiral_curves(a))
    lines.extend(_arrows(sol, list(arrow_rings), arrows_per_ring))

    cx = cy = VIEW_SIZE / 2.0
    for r in _interface_radii(a):
        lines.append(
            f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(r * _SCALE)}" class="iface"/>'
        )

    lines.append("</svg>")
    return "\n".join(lines) + "\n"
