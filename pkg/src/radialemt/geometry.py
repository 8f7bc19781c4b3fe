"""Domain types for radially symmetric composite assemblages.

Materials, polar-frame conductivity tensors, laminate constituents, and the
eleven assemblage geometries handled by this package. These are plain
immutable value types; validation is explicit (``validate``) rather than
baked into construction so that malformed inputs can be inspected and
reported.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields
from typing import NamedTuple, Union

__all__ = [
    "IsotropicMaterial",
    "SpiralMaterial",
    "PolarTensor",
    "LaminateSpec",
    "SpiralWithCore",
    "CoatedCircles",
    "Schulgasser",
    "OrangeWithCore",
    "OrangeWithShell",
    "BasicSpiral",
    "SpiralWithShell",
    "Wheel",
    "Star",
    "Hub",
    "SpikyBall",
    "Assemblage",
    "ASSEMBLAGE_TYPES",
    "Violation",
    "InvalidAssemblage",
    "spiral_tensor",
    "laminate_eigen",
    "validate",
    "require_valid",
    "dimension",
    "has_core",
    "assemblage_to_dict",
    "assemblage_from_dict",
    "assemblage_to_json",
    "assemblage_from_json",
]


# ---------------------------------------------------------------------------
# materials and tensors


@dataclass(frozen=True)
class IsotropicMaterial:
    """Scalar conductivity sigma > 0."""

    sigma: float


@dataclass(frozen=True)
class SpiralMaterial:
    """Anisotropic material whose eigendirections hold a fixed angle to the radius.

    sigma1 is the eigenvalue along the direction at angle ``phi`` from the
    radial direction, sigma2 the orthogonal one. phi is limited to
    (-pi/2, pi/2]; phi = 0 gives a radially laminated (orange-like) material.
    """

    sigma1: float
    sigma2: float
    phi: float


@dataclass(frozen=True)
class PolarTensor:
    """Symmetric 2x2 conductivity tensor in the (e_r, e_theta) frame."""

    k_rr: float
    k_rtheta: float
    k_thetatheta: float

    @classmethod
    def isotropic(cls, sigma: float) -> "PolarTensor":
        return cls(sigma, 0.0, sigma)

    def det(self) -> float:
        return self.k_rr * self.k_thetatheta - self.k_rtheta**2

    def trace(self) -> float:
        return self.k_rr + self.k_thetatheta

    def is_positive_semidefinite(self) -> bool:
        return self.k_rr > 0.0 and self.k_thetatheta >= 0.0 and self.det() >= -1e-14


@dataclass(frozen=True)
class LaminateSpec:
    """Two isotropic constituents k1, k2 mixed with fractions m1, 1 - m1."""

    k1: float
    k2: float
    m1: float


def spiral_tensor(m: SpiralMaterial) -> PolarTensor:
    """Polar-frame tensor of a spiral material.

    Rotating diag(sigma1, sigma2) by phi gives
      K_rr = s1 cos^2 + s2 sin^2,  K_rtheta = (s1 - s2) cos sin,
      K_thetatheta = s1 sin^2 + s2 cos^2,
    so det K = s1 s2 and trace K = s1 + s2 for every phi.
    """
    c = math.cos(m.phi)
    s = math.sin(m.phi)
    return PolarTensor(
        k_rr=m.sigma1 * c * c + m.sigma2 * s * s,
        k_rtheta=(m.sigma1 - m.sigma2) * c * s,
        k_thetatheta=m.sigma1 * s * s + m.sigma2 * c * c,
    )


def laminate_eigen(spec: LaminateSpec) -> tuple[float, float]:
    """Eigenvalues of a fine two-phase laminate: (arithmetic, harmonic) means.

    sigma1 = m1 k1 + m2 k2 acts along the layers, sigma2 = (m1/k1 + m2/k2)^-1
    across them.
    """
    if spec.k1 <= 0.0 or spec.k2 <= 0.0:
        raise ValueError("laminate constituents must have positive conductivity")
    if not 0.0 <= spec.m1 <= 1.0:
        raise ValueError("laminate fraction m1 must lie in [0, 1]")
    m2 = 1.0 - spec.m1
    sigma1 = spec.m1 * spec.k1 + m2 * spec.k2
    sigma2 = 1.0 / (spec.m1 / spec.k1 + m2 / spec.k2)
    return sigma1, sigma2


# ---------------------------------------------------------------------------
# assemblages


@dataclass(frozen=True)
class SpiralWithCore:
    """Isotropic core of radius r0 inside a spiral-material annulus (2D)."""

    sigma_i: float
    spiral: SpiralMaterial
    r0: float


@dataclass(frozen=True)
class CoatedCircles:
    """Isotropic core sigma_i coated by an isotropic shell sigma1 (2D)."""

    sigma_i: float
    sigma1: float
    r0: float


@dataclass(frozen=True)
class Schulgasser:
    """Radially laminated disk with no core (2D): eigenvalues sigma1 radial, sigma2 tangential."""

    sigma1: float
    sigma2: float


@dataclass(frozen=True)
class OrangeWithCore:
    """Isotropic core inside a radially laminated annulus (2D)."""

    sigma_i: float
    sigma1: float
    sigma2: float
    r0: float


@dataclass(frozen=True)
class OrangeWithShell:
    """Radially laminated disk (sigma_r, sigma_theta) coated by isotropic sigma1 (2D)."""

    sigma1: float
    sigma_r: float
    sigma_theta: float
    r0: float


@dataclass(frozen=True)
class BasicSpiral:
    """Spiral-material disk with no core (2D)."""

    sigma1: float
    sigma2: float
    phi: float


@dataclass(frozen=True)
class SpiralWithShell:
    """Spiral-material disk coated by an isotropic shell (2D)."""

    sigma1_shell: float
    spiral: SpiralMaterial
    r0: float


@dataclass(frozen=True)
class Wheel:
    """Core, spoke annulus, isotropic rim (2D).

    The spoke annulus on (r0, r1) carries the degenerate tensor
    K = diag(sigma1 / r, 0); sigma1 is the spoke-tensor coefficient, not a
    material conductivity. Use ``from_spoke_material`` to build it from a
    spoke conductivity sigma and relative spoke thickness mu at r0.
    """

    sigma_i: float
    sigma1: float
    sigma2: float
    r0: float
    r1: float

    @classmethod
    def from_spoke_material(
        cls, sigma_i: float, sigma: float, mu: float, r0: float, r1: float, sigma2: float
    ) -> "Wheel":
        return cls(sigma_i=sigma_i, sigma1=sigma * mu * r0, sigma2=sigma2, r0=r0, r1=r1)


@dataclass(frozen=True)
class Star:
    """Core plus spokes reaching the boundary (2D). mu is the spoke fraction at r0."""

    sigma_i: float
    sigma: float
    mu: float
    r0: float


@dataclass(frozen=True)
class Hub:
    """3D core of radius rho0 with radial spikes to the boundary; spike tensor ~ rho^-2."""

    sigma_i: float
    sigma: float
    mu: float
    rho0: float


@dataclass(frozen=True)
class SpikyBall:
    """3D core with radial spikes whose tensor decays like rho^-n, n > 1."""

    sigma_i: float
    sigma: float
    mu: float
    rho0: float
    n: float


Assemblage = Union[
    SpiralWithCore,
    CoatedCircles,
    Schulgasser,
    OrangeWithCore,
    OrangeWithShell,
    BasicSpiral,
    SpiralWithShell,
    Wheel,
    Star,
    Hub,
    SpikyBall,
]

ASSEMBLAGE_TYPES = {
    "spiral_with_core": SpiralWithCore,
    "coated_circles": CoatedCircles,
    "schulgasser": Schulgasser,
    "orange_with_core": OrangeWithCore,
    "orange_with_shell": OrangeWithShell,
    "basic_spiral": BasicSpiral,
    "spiral_with_shell": SpiralWithShell,
    "wheel": Wheel,
    "star": Star,
    "hub": Hub,
    "spiky_ball": SpikyBall,
}

_TYPE_NAMES = {cls: name for name, cls in ASSEMBLAGE_TYPES.items()}


def dimension(a: Assemblage) -> int:
    """2 for planar assemblages, 3 for Hub and SpikyBall."""
    return 3 if isinstance(a, (Hub, SpikyBall)) else 2


def has_core(a: Assemblage) -> bool:
    return not isinstance(a, (Schulgasser, BasicSpiral))


# ---------------------------------------------------------------------------
# validation


class Violation(NamedTuple):
    code: str
    field: str
    message: str

    def __str__(self) -> str:
        return f"{self.code}: {self.message}"


class InvalidAssemblage(ValueError):
    """Raised by require_valid; carries the violation list."""

    def __init__(self, violations: list[Violation]):
        self.violations = violations
        super().__init__("; ".join(str(v) for v in violations))


def _check_sigma(out: list[Violation], name: str, value: float) -> None:
    if not (isinstance(value, (int, float)) and math.isfinite(value)) or value <= 0.0:
        out.append(Violation("NonPositiveConductivity", name, f"{name} must be finite and > 0, got {value!r}"))


def _check_radius(out: list[Violation], name: str, value: float) -> None:
    if not (isinstance(value, (int, float)) and math.isfinite(value)) or not (0.0 < value < 1.0):
        out.append(Violation("RadiusOutOfRange", name, f"{name} must lie in (0, 1), got {value!r}"))


def _check_fraction(out: list[Violation], name: str, value: float) -> None:
    if not (isinstance(value, (int, float)) and math.isfinite(value)) or not (0.0 <= value <= 1.0):
        out.append(Violation("FractionOutOfRange", name, f"{name} must lie in [0, 1], got {value!r}"))


def _check_phi(out: list[Violation], name: str, value: float) -> None:
    if not (isinstance(value, (int, float)) and math.isfinite(value)) or not (-math.pi / 2 < value <= math.pi / 2):
        out.append(Violation("AngleOutOfRange", name, f"{name} must lie in (-pi/2, pi/2], got {value!r}"))


def validate(a: Assemblage) -> list[Violation]:
    """Return the list of constraint violations (empty when the geometry is usable)."""
    out: list[Violation] = []
    if isinstance(a, SpiralWithCore):
        _check_sigma(out, "sigma_i", a.sigma_i)
        _check_sigma(out, "sigma1", a.spiral.sigma1)
        _check_sigma(out, "sigma2", a.spiral.sigma2)
        _check_phi(out, "phi", a.spiral.phi)
        _check_radius(out, "r0", a.r0)
    elif isinstance(a, CoatedCircles):
        _check_sigma(out, "sigma_i", a.sigma_i)
        _check_sigma(out, "sigma1", a.sigma1)
        _check_radius(out, "r0", a.r0)
    elif isinstance(a, Schulgasser):
        _check_sigma(out, "sigma1", a.sigma1)
        _check_sigma(out, "sigma2", a.sigma2)
    elif isinstance(a, OrangeWithCore):
        _check_sigma(out, "sigma_i", a.sigma_i)
        _check_sigma(out, "sigma1", a.sigma1)
        _check_sigma(out, "sigma2", a.sigma2)
        _check_radius(out, "r0", a.r0)
    elif isinstance(a, OrangeWithShell):
        _check_sigma(out, "sigma1", a.sigma1)
        _check_sigma(out, "sigma_r", a.sigma_r)
        _check_sigma(out, "sigma_theta", a.sigma_theta)
        _check_radius(out, "r0", a.r0)
    elif isinstance(a, BasicSpiral):
        _check_sigma(out, "sigma1", a.sigma1)
        _check_sigma(out, "sigma2", a.sigma2)
        _check_phi(out, "phi", a.phi)
    elif isinstance(a, SpiralWithShell):
        _check_sigma(out, "sigma1_shell", a.sigma1_shell)
        _check_sigma(out, "sigma1", a.spiral.sigma1)
        _check_sigma(out, "sigma2", a.spiral.sigma2)
        _check_phi(out, "phi", a.spiral.phi)
        _check_radius(out, "r0", a.r0)
    elif isinstance(a, Wheel):
        _check_sigma(out, "sigma_i", a.sigma_i)
        _check_sigma(out, "sigma1", a.sigma1)
        _check_sigma(out, "sigma2", a.sigma2)
        _check_radius(out, "r0", a.r0)
        _check_radius(out, "r1", a.r1)
        if math.isfinite(a.r0) and math.isfinite(a.r1) and not a.r0 < a.r1:
            out.append(Violation("RadiusOrdering", "r0", f"need r0 < r1, got r0={a.r0!r}, r1={a.r1!r}"))
    elif isinstance(a, Star):
        _check_sigma(out, "sigma_i", a.sigma_i)
        _check_sigma(out, "sigma", a.sigma)
        _check_fraction(out, "mu", a.mu)
        _check_radius(out, "r0", a.r0)
    elif isinstance(a, Hub):
        _check_sigma(out, "sigma_i", a.sigma_i)
        _check_sigma(out, "sigma", a.sigma)
        _check_fraction(out, "mu", a.mu)
        _check_radius(out, "rho0", a.rho0)
    elif isinstance(a, SpikyBall):
        _check_sigma(out, "sigma_i", a.sigma_i)
        _check_sigma(out, "sigma", a.sigma)
        _check_fraction(out, "mu", a.mu)
        _check_radius(out, "rho0", a.rho0)
        if not (isinstance(a.n, (int, float)) and math.isfinite(a.n)) or a.n <= 1.0:
            out.append(Violation("ExponentOutOfRange", "n", f"spike exponent n must be > 1, got {a.n!r}"))
    else:
        out.append(Violation("UnknownGeometry", "", f"not an assemblage: {a!r}"))
    return out


def require_valid(a: Assemblage) -> Assemblage:
    violations = validate(a)
    if violations:
        raise InvalidAssemblage(violations)
    return a


# ---------------------------------------------------------------------------
# JSON wire format
#
# {"type": "<snake_case name>", <numeric fields>}. Spiral materials are
# flattened into sigma1/sigma2/phi so the wire format stays one level deep.


def assemblage_to_dict(a: Assemblage) -> dict:
    name = _TYPE_NAMES.get(type(a))
    if name is None:
        raise TypeError(f"not an assemblage: {a!r}")
    d: dict = {"type": name}
    if isinstance(a, (SpiralWithCore, SpiralWithShell)):
        for f in fields(a):
            if f.name == "spiral":
                d["sigma1"] = a.spiral.sigma1
                d["sigma2"] = a.spiral.sigma2
                d["phi"] = a.spiral.phi
            else:
                d[f.name] = getattr(a, f.name)
    else:
        for f in fields(a):
            d[f.name] = getattr(a, f.name)
    return d


def assemblage_from_dict(d: dict) -> Assemblage:
    if not isinstance(d, dict) or "type" not in d:
        raise ValueError("geometry object must be a JSON object with a 'type' key")
    name = d["type"]
    cls = ASSEMBLAGE_TYPES.get(name)
    if cls is None:
        known = ", ".join(sorted(ASSEMBLAGE_TYPES))
        raise ValueError(f"unknown geometry type {name!r}; expected one of: {known}")
    payload = {k: v for k, v in d.items() if k != "type"}
    for key, value in payload.items():
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise ValueError(f"field {key!r} must be a number, got {value!r}")
    if cls in (SpiralWithCore, SpiralWithShell):
        try:
            spiral = SpiralMaterial(
                sigma1=float(payload.pop("sigma1")),
                sigma2=float(payload.pop("sigma2")),
                phi=float(payload.pop("phi")),
            )
            return cls(spiral=spiral, **{k: float(v) for k, v in payload.items()})
        except (KeyError, TypeError) as exc:
            raise ValueError(f"bad fields for geometry {name!r}: {exc}") from exc
    try:
        return cls(**{k: float(v) for k, v in payload.items()})
    except TypeError as exc:
        raise ValueError(f"bad fields for geometry {name!r}: {exc}") from exc


def assemblage_to_json(a: Assemblage) -> str:
    import json

    return json.dumps(assemblage_to_dict(a))


def assemblage_from_json(text: str) -> Assemblage:
    import json

    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed JSON: {exc}") from exc
    return assemblage_from_dict(d)
