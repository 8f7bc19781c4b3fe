"""Numeric optimization and sweeps over the closed-form landscape.

The rotation Upsilon(phi) of a spiral annulus has exactly one interior
critical point on (0, pi/2), at phi0 = arctan sqrt(sigma1/sigma2), so a
bracketing method needs no derivatives and cannot be trapped. We use plain
golden-section search with a fixed iteration cap and confirm the assumed
unimodality with a coarse pre-scan before trusting it. The same machinery
maximizes over the laminate fraction m1 when the spiral material is itself
mixed from two isotropic constituents; there the product of the arithmetic
and harmonic means is what varies, and it peaks at m1 = 1/2 for any pair.

Sweeps evaluate a single scalar observable along one parameter of an
assemblage, for tables and plots. They reuse the validation in `geometry`
so a sweep cannot silently walk out of the domain where the closed forms
hold.
"""

from __future__ import annotations

import csv
import dataclasses
import io
import math
from typing import Callable, NamedTuple

from . import closed_form, field_solver, geometry

__all__ = [
    "GOLDEN_MAX_ITER",
    "GOLDEN_XTOL",
    "PRESCAN_POINTS",
    "NotUnimodal",
    "InvalidParameterPath",
    "RangeViolatesInvariant",
    "RotationOptimum",
    "FractionOptimum",
    "golden_section_max",
    "maximize_rotation_numeric",
    "maximize_rotation_over_fractions",
    "SweepSpec",
    "OBSERVABLES",
    "sweep",
    "sweep_csv",
]

GOLDEN_MAX_ITER = 200
GOLDEN_XTOL = 1e-10
PRESCAN_POINTS = 64

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
_INV_PHI_SQ = (3.0 - math.sqrt(5.0)) / 2.0


class NotUnimodal(ValueError):
    """Pre-scan found more than one local maximum; golden section unsafe."""


class InvalidParameterPath(ValueError):
    """Sweep parameter path does not name a numeric field of the geometry."""


class RangeViolatesInvariant(ValueError):
    """A swept parameter value leaves the assemblage's validity range."""


# ---------------------------------------------------------------------------
# golden section


def golden_section_max(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    xtol: float = GOLDEN_XTOL,
    max_iter: int = GOLDEN_MAX_ITER,
) -> tuple[float, float]:
    """Maximize f on [lo, hi], assumed unimodal there.

    Returns (x, f(x)) with the bracket narrowed below xtol or the iteration
    cap reached, whichever is first. The cap exists so a bad objective can
    never hang a sweep; at the default tolerances it is far from binding.
    """
    if not hi > lo:
        raise ValueError(f"need lo < hi, got [{lo!r}, {hi!r}]")
    a, b = lo, hi
    h = b - a
    c = a + _INV_PHI_SQ * h
    d = a + _INV_PHI * h
    yc = f(c)
    yd = f(d)
    for _ in range(max_iter):
        if h <= xtol:
            break
        if yc > yd:
            b, d, yd = d, c, yc
            h = b - a
            c = a + _INV_PHI_SQ * h
            yc = f(c)
        else:
            a, c, yc = c, d, yd
            h = b - a
            d = a + _INV_PHI * h
            yd = f(d)
    x = c if yc > yd else d
    return x, f(x)


def _parabolic_polish(
    f: Callable[[float], float], x: float, lo: float, hi: float
) -> tuple[float, float]:
    """One wide-baseline parabola fit through (x - d, x, x + d).

    Golden section compares nearly equal values once the bracket is tiny, so
    rounding noise limits the located abscissa to about sqrt(eps / curvature).
    A vertex fit over a wide baseline reads the curvature far above the noise
    floor and recovers several extra digits. Keeps whichever point is better.
    """
    d = 0.02 * (hi - lo)
    xm, xp = x - d, x + d
    if xm <= lo or xp >= hi:
        return x, f(x)
    fm, f0, fp = f(xm), f(x), f(xp)
    den = fm - 2.0 * f0 + fp
    if den >= 0.0:  # no downward curvature to read
        return x, f0
    shift = 0.5 * d * (fm - fp) / den
    if abs(shift) >= d:
        return x, f0
    xv = x + shift
    fv = f(xv)
    if fv >= f0:
        return xv, fv
    return x, f0


def _prescan(f: Callable[[float], float], lo: float, hi: float) -> tuple[float, float, bool]:
    """Sample f on a uniform grid; return a bracket around the best sample.

    Raises NotUnimodal when the samples rise again after falling (more than
    one interior peak at grid resolution). Returns (bracket_lo, bracket_hi,
    flat) where flat means the landscape is constant to rounding and there
    is nothing to optimize.
    """
    n = PRESCAN_POINTS
    xs = [lo + (hi - lo) * i / (n - 1) for i in range(n)]
    vs = [f(x) for x in xs]
    top = max(vs)
    spread = top - min(vs)
    if spread <= 1e-13 * max(1.0, abs(top)):
        return lo, hi, True
    # tolerate rounding-level wiggle when classifying rise vs fall
    tiny = 1e-12 * max(1.0, abs(top))
    falling = False
    for i in range(n - 1):
        d = vs[i + 1] - vs[i]
        if d < -tiny:
            falling = True
        elif d > tiny and falling:
            raise NotUnimodal(f"second rise near x = {xs[i]!r}")
    k = vs.index(top)
    return xs[max(k - 1, 0)], xs[min(k + 1, n - 1)], False


# ---------------------------------------------------------------------------
# rotation maximizers


class RotationOptimum(NamedTuple):
    phi_hat: float
    upsilon_hat: float
    flat: bool


class FractionOptimum(NamedTuple):
    m1_hat: float
    phi_hat: float
    upsilon_hat: float
    flat: bool


def _require_unit_interval(name: str, value: float) -> None:
    if not 0.0 < value < 1.0:
        raise ValueError(f"{name} must lie in (0, 1), got {value!r}")


def _require_positive(name: str, value: float) -> None:
    if not value > 0.0:
        raise ValueError(f"{name} must be > 0, got {value!r}")


def maximize_rotation_numeric(sigma1: float, sigma2: float, r0: float) -> RotationOptimum:
    """Angle maximizing the core rotation of a spiral-with-core assemblage.

    Golden-section maximization of Upsilon(phi) on (0, pi/2). Agrees with
    closed_form.optimal_phi and closed_form.max_rotation; it exists so the
    closed forms can be cross-checked and so callers with no appetite for
    formulas get the same answer. A flat landscape (sigma1 = sigma2) returns
    phi = pi/4 with the flat flag set instead of failing.
    """
    _require_positive("sigma1", sigma1)
    _require_positive("sigma2", sigma2)
    _require_unit_interval("r0", r0)
    if sigma1 == sigma2:
        return RotationOptimum(math.pi / 4.0, 0.0, True)

    def ups(phi: float) -> float:
        return closed_form.rotation_angle(sigma1, sigma2, phi, r0).upsilon

    blo, bhi, flat = _prescan(ups, 0.0, math.pi / 2.0)
    if flat:
        return RotationOptimum(math.pi / 4.0, 0.0, True)
    phi_hat, _ = golden_section_max(ups, blo, bhi)
    phi_hat, ups_hat = _parabolic_polish(ups, phi_hat, 0.0, math.pi / 2.0)
    return RotationOptimum(phi_hat, ups_hat, False)


def maximize_rotation_over_fractions(k1: float, k2: float, r0: float) -> FractionOptimum:
    """Best rotation when the spiral material is laminated from k1 and k2.

    Outer golden-section search over the volume fraction m1; for each m1 the
    spiral conductivities are the laminate eigenvalues (arithmetic and
    harmonic means) and the inner angle is the closed-form optimum phi0, so
    only one numeric loop is needed. The maximum sits at m1 = 1/2 for every
    pair k1 != k2; k1 = k2 is flat and reports the canonical point.
    """
    _require_positive("k1", k1)
    _require_positive("k2", k2)
    _require_unit_interval("r0", r0)
    if k1 == k2:
        return FractionOptimum(0.5, math.pi / 4.0, 0.0, True)

    def ups(m1: float) -> float:
        s1, s2 = geometry.laminate_eigen(geometry.LaminateSpec(k1, k2, m1))
        return closed_form.max_rotation(s1, s2, r0)

    blo, bhi, flat = _prescan(ups, 0.0, 1.0)
    if flat:
        return FractionOptimum(0.5, math.pi / 4.0, 0.0, True)
    m1_hat, _ = golden_section_max(ups, blo, bhi)
    m1_hat, ups_hat = _parabolic_polish(ups, m1_hat, 0.0, 1.0)
    s1, s2 = geometry.laminate_eigen(geometry.LaminateSpec(k1, k2, m1_hat))
    return FractionOptimum(m1_hat, closed_form.optimal_phi(s1, s2), ups_hat, False)


# ---------------------------------------------------------------------------
# sweeps

OBSERVABLES = ("sigma_star", "upsilon", "psi", "magnitude")


@dataclasses.dataclass(frozen=True)
class SweepSpec:
    """One-parameter sweep: evaluate `observable` at `steps` equally spaced
    values of the field named by `parameter` (dotted paths reach nested
    materials, e.g. "spiral.phi")."""

    geometry: geometry.Assemblage
    parameter: str
    lo: float
    hi: float
    steps: int
    observable: str


def _field_names(obj) -> set:
    if not dataclasses.is_dataclass(obj):
        return set()
    return {f.name for f in dataclasses.fields(obj)}


def _with_parameter(a: geometry.Assemblage, path: str, value: float) -> geometry.Assemblage:
    parts = path.split(".")
    owners = [a]
    for name in parts[:-1]:
        cur = owners[-1]
        if name not in _field_names(cur):
            raise InvalidParameterPath(f"{type(cur).__name__} has no field {name!r}")
        owners.append(getattr(cur, name))
    leaf_owner = owners[-1]
    leaf = parts[-1]
    if leaf not in _field_names(leaf_owner):
        raise InvalidParameterPath(f"{type(leaf_owner).__name__} has no field {leaf!r}")
    current = getattr(leaf_owner, leaf)
    if isinstance(current, bool) or not isinstance(current, (int, float)):
        raise InvalidParameterPath(f"{path} is not a numeric field")
    rebuilt = dataclasses.replace(leaf_owner, **{leaf: value})
    for owner, name in zip(reversed(owners[:-1]), reversed(parts[:-1])):
        rebuilt = dataclasses.replace(owner, **{name: rebuilt})
    return rebuilt


def _evaluate(a: geometry.Assemblage, observable: str) -> float:
    if observable == "sigma_star":
        return closed_form.sigma_star(a)
    rot = field_solver.nucleus_field(field_solver.solve(a))
    return getattr(rot, observable)


def sweep(spec: SweepSpec) -> list[tuple[float, float]]:
    """Rows of (parameter value, observable value), ascending in the parameter.

    Every step is validated before evaluation; a value outside the
    assemblage's domain raises RangeViolatesInvariant naming the offender
    rather than producing a nonsense row.
    """
    if spec.observable not in OBSERVABLES:
        raise ValueError(f"unknown observable {spec.observable!r}; pick from {OBSERVABLES}")
    if spec.steps < 2:
        raise RangeViolatesInvariant(f"steps must be >= 2, got {spec.steps!r}")
    if not spec.lo < spec.hi:
        raise RangeViolatesInvariant(f"need lo < hi, got [{spec.lo!r}, {spec.hi!r}]")
    if spec.observable != "sigma_star" and not geometry.has_core(spec.geometry):
        raise ValueError(f"observable {spec.observable!r} needs an assemblage with a core")
    rows = []
    for i in range(spec.steps):
        x = spec.lo + (spec.hi - spec.lo) * i / (spec.steps - 1)
        cand = _with_parameter(spec.geometry, spec.parameter, x)
        try:
            geometry.require_valid(cand)
        except geometry.InvalidAssemblage as e:
            raise RangeViolatesInvariant(f"{spec.parameter} = {x!r}: {e}") from e
        y = _evaluate(cand, spec.observable)
        if not math.isfinite(y):
            raise RangeViolatesInvariant(f"{spec.parameter} = {x!r} gives non-finite {spec.observable}")
        rows.append((x, y))
    return rows


def sweep_csv(spec: SweepSpec, rows: list[tuple[float, float]] | None = None) -> str:
    """CSV text for a sweep: header names the parameter and the observable.

    Floats are written with repr (shortest round-trip form, '.' decimal
    separator) so output is byte-identical across runs and locales.
    """
    if rows is None:
        rows = sweep(spec)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([spec.parameter, spec.observable])
    for x, y in rows:
        w.writerow([repr(float(x)), repr(float(y))])
    return buf.getvalue()
