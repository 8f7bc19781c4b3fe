"""Closed-form effective conductivities and field-rotation angles.

Every formula here is for a unit-radius assemblage embedded in the matching
effective medium, normalized so that the exterior potential is exactly
u = r cos(theta). Each one has an independent numerical counterpart in
``radialemt.oracle``; the two are never allowed to share code paths.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .geometry import (
    Assemblage,
    BasicSpiral,
    CoatedCircles,
    Hub,
    OrangeWithCore,
    OrangeWithShell,
    Schulgasser,
    SpikyBall,
    SpiralMaterial,
    SpiralWithCore,
    SpiralWithShell,
    Star,
    Wheel,
    spiral_tensor,
)

__all__ = [
    "RotationResult",
    "spiral_core_sigma_star",
    "hs_coated_circles",
    "schulgasser",
    "orange_with_core",
    "orange_with_shell",
    "basic_spiral",
    "spiral_with_shell",
    "insulated_shell_limit",
    "insulated_spiral_core_limit",
    "wheel",
    "wheel_printed_form",
    "wheel_report",
    "star",
    "star_fraction",
    "hub",
    "spiky_ball",
    "harmonic_decomposition",
    "rotation_angle",
    "interior_amplitude",
    "optimal_phi",
    "max_rotation",
    "max_rotation_laminate",
    "radius_for_rotation",
    "reduce_angle",
    "sigma_star",
    "formula_name",
]


class DegenerateDenominator(ArithmeticError):
    """A closed form was evaluated where its denominator vanishes."""


class EqualConductivities(ValueError):
    """Rotation-by-laminate design requires two distinct constituents."""


# ---------------------------------------------------------------------------
# effective conductivities


def spiral_core_sigma_star(sigma_i: float, sigma1: float, sigma2: float, phi: float, r0: float) -> float:
    """Effective conductivity of an isotropic core in a spiral annulus.

    gamma = 2 sqrt(s1 s2) / (sin^2(phi) s1 - sin^2(phi) s2 - s1); the gamma
    denominator equals -K_rr of the spiral tensor, so it is strictly negative
    for admissible inputs and gamma < 0.
    """
    g = math.sqrt(sigma1 * sigma2)
    den = math.sin(phi) ** 2 * sigma1 - math.sin(phi) ** 2 * sigma2 - sigma1
    if den == 0.0:
        raise DegenerateDenominator("spiral tensor K_rr vanished")
    gamma = 2.0 * g / den
    p = r0**gamma
    num = sigma2 * sigma1 * (p - 1.0) + sigma_i * g * (p + 1.0)
    dnm = sigma_i * (p - 1.0) + g * (p + 1.0)
    if dnm == 0.0:
        raise DegenerateDenominator("effective-conductivity denominator vanished")
    return num / dnm


def hs_coated_circles(sigma_i: float, sigma1: float, r0: float) -> float:
    """Coated circles: core sigma_i of radius fraction r0 in a sigma1 shell."""
    num = (sigma_i + sigma1) + r0**2 * (sigma_i - sigma1)
    den = (sigma_i + sigma1) - r0**2 * (sigma_i - sigma1)
    return sigma1 * num / den


def schulgasser(sigma1: float, sigma2: float) -> float:
    """Coreless radial laminate: the geometric mean of the eigenvalues."""
    return math.sqrt(sigma1 * sigma2)


def orange_with_core(sigma_i: float, sigma1: float, sigma2: float, r0: float) -> float:
    """Isotropic core inside a radially laminated annulus; kappa = sqrt(s2/s1)."""
    kappa = math.sqrt(sigma2 / sigma1)
    p = r0 ** (2.0 * kappa)
    num = sigma_i * kappa * (1.0 + p) + sigma2 * (1.0 - p)
    den = sigma1 * kappa * (1.0 + p) + sigma_i * (1.0 - p)
    return sigma1 * num / den


def orange_with_shell(sigma1: float, sigma_r: float, sigma_theta: float, r0: float) -> float:
    """Radially laminated disk coated by an isotropic shell sigma1.

    The laminated interior acts on the n = 1 mode exactly like an isotropic
    disk of conductivity sqrt(sigma_r sigma_theta).
    """
    g = math.sqrt(sigma_theta * sigma_r)
    num = g * (r0**2 + 1.0) + sigma1 * (1.0 - r0**2)
    den = g * (1.0 - r0**2) + sigma1 * (r0**2 + 1.0)
    return sigma1 * num / den


def basic_spiral(sigma1: float, sigma2: float, phi: float) -> float:
    """Coreless spiral disk. Independent of phi."""
    del phi
    return math.sqrt(sigma1 * sigma2)


def spiral_with_shell(sigma1_shell: float, sigma1: float, sigma2: float, r0: float) -> float:
    """Spiral disk in an isotropic shell; only sqrt(s1 s2) of the disk matters."""
    return orange_with_shell(sigma1_shell, sigma1, sigma2, r0)


def insulated_shell_limit(sigma_shell: float, r0: float) -> float:
    """Conducting shell around an insulated core: sigma (1 - r0^2) / (1 + r0^2)."""
    return sigma_shell * (1.0 - r0**2) / (1.0 + r0**2)


def insulated_spiral_core_limit(sigma_i: float, sigma_r: float, phi: float, r0: float) -> float:
    """Limit of the spiral-with-core value as the cross-spiral eigenvalue -> 0.

    sigma_r is the eigenvalue that stays finite (the radial one at phi = 0).
    Degenerate edges: r0 = 0 and |phi| = pi/2 both shut the current path off.
    """
    if r0 == 0.0:
        return 0.0
    c2 = math.cos(phi) ** 2
    if abs(abs(phi) - math.pi / 2) < 1e-15:
        return 0.0
    num = sigma_i * sigma_r * c2
    den = sigma_r * c2 - sigma_i * math.log(r0)
    return num / den


def wheel(sigma_i: float, sigma1: float, sigma2: float, r0: float, r1: float) -> float:
    """Core, spoke annulus (coefficient sigma1), isotropic rim sigma2.

    Computed by exact interface matching of the n = 1 mode:
      core u = z r cos(theta);
      spokes carry U = c1 r + c2 with radial flux sigma1 c1 / r;
      rim U = a r + b / r.
    This is the primary path; ``wheel_printed_form`` is kept only as a
    diagnostic counterpart.
    """
    z = 1.0
    # spoke layer: flux continuity at r0 fixes c1, potential continuity fixes c2
    c1 = sigma_i * z * r0 / sigma1
    u_r1 = z * r0 + c1 * (r1 - r0)
    j_r1 = sigma1 * c1 / r1
    # rim layer: match potential and flux at r1
    a = (u_r1 / r1 + j_r1 / sigma2) / 2.0
    b = r1 * (u_r1 - j_r1 * r1 / sigma2) / 2.0
    den = a + b
    if den == 0.0:
        raise DegenerateDenominator("wheel rim matching degenerated")
    return sigma2 * (a - b) / den


def wheel_printed_form(sigma_i: float, sigma1: float, sigma2: float, r0: float, r1: float) -> float:
    """Wheel value from the explicit polynomial coefficients.

    One radius symbol in the published coefficient list is ambiguous; exact
    rederivation shows it must read r1, which is what is used here.
    """
    A = r1**2 * sigma1 * sigma_i + r1**2 * r0 * sigma2 * sigma_i - r1**2 * sigma1 * sigma2 - r1**3 * sigma2 * sigma_i
    B = r1 * sigma_i * sigma2 + sigma2 * sigma1 + sigma1 * sigma_i - r0 * sigma2 * sigma_i
    if B - A == 0.0:
        raise DegenerateDenominator("wheel coefficient denominator vanished")
    return sigma2 * (A + B) / (B - A)


def wheel_report(sigma_i: float, sigma1: float, sigma2: float, r0: float, r1: float) -> dict:
    """Evaluate both wheel paths and report their relative disagreement."""
    k_match = wheel(sigma_i, sigma1, sigma2, r0, r1)
    k_printed = wheel_printed_form(sigma_i, sigma1, sigma2, r0, r1)
    return {
        "k_matching": k_match,
        "k_printed": k_printed,
        "rel_disagreement": abs(k_match - k_printed) / abs(k_match),
    }


def star(sigma_i: float, sigma1: float, r0: float) -> float:
    """Core plus spokes to the boundary: sigma_i sigma1 / (sigma1 + sigma_i (1 - r0))."""
    return sigma_i * sigma1 / (sigma1 + sigma_i * (1.0 - r0))


def star_fraction(sigma: float, mu: float, r0: float) -> tuple[float, float]:
    """Star made of one conductor (core and spokes both sigma).

    Returns (m, k): the conductor volume fraction m = r0^2 + 2 mu r0 (1 - r0)
    and the effective conductivity. For mu = 1/2 the fraction equals r0 and
    k = sigma m / (2 - m); for other mu the value comes from ``star`` with
    spoke coefficient sigma mu r0 and does not reduce to that expression.
    """
    m = r0**2 + 2.0 * mu * r0 * (1.0 - r0)
    k = star(sigma, sigma * mu * r0, r0)
    return m, k


def hub(sigma_i: float, sigma: float, mu: float, rho0: float) -> float:
    """3D core with rho^-2 spikes: si s rho0^2 mu / (si (1 - rho0) + s mu rho0)."""
    num = sigma_i * sigma * rho0**2 * mu
    den = sigma_i * (1.0 - rho0) + sigma * mu * rho0
    return num / den


def spiky_ball(sigma_i: float, sigma: float, mu: float, rho0: float, n: float) -> float:
    """3D core with rho^-n spikes, n > 1; n = 2 recovers ``hub`` exactly."""
    if n <= 1.0:
        raise ValueError(f"spike exponent n must be > 1, got {n!r}")
    q = rho0 ** (n - 1.0)
    num = sigma_i * sigma * rho0**n * mu * (n - 1.0)
    den = sigma_i * (1.0 - q) + sigma * mu * q * (n - 1.0)
    return num / den


def harmonic_decomposition(a: Assemblage) -> tuple[float, float]:
    """Geometry-only constants (a, b) with 1/k = a/sigma + b/sigma_i.

    Valid for the one-conductor spoke families (Star, Hub, SpikyBall), whose
    closed forms are harmonic in the two conductivities. Solved from two
    evaluations rather than read off the algebra, so it doubles as a check
    that the structure really is of that form.
    """
    if isinstance(a, Star):
        def k(sig, sig_i):
            return star(sig_i, sig * a.mu * a.r0, a.r0)
    elif isinstance(a, Hub):
        def k(sig, sig_i):
            return hub(sig_i, sig, a.mu, a.rho0)
    elif isinstance(a, SpikyBall):
        def k(sig, sig_i):
            return spiky_ball(sig_i, sig, a.mu, a.rho0, a.n)
    else:
        raise TypeError(f"harmonic decomposition applies to Star, Hub, SpikyBall; got {type(a).__name__}")
    # 1/k(s, si) = a_coef/s + b_coef/si at (1, 1) and (2, 1)
    inv11 = 1.0 / k(1.0, 1.0)
    inv21 = 1.0 / k(2.0, 1.0)
    a_coef = 2.0 * (inv11 - inv21)
    b_coef = inv11 - a_coef
    return a_coef, b_coef


# ---------------------------------------------------------------------------
# rotation of the interior field


def reduce_angle(x: float) -> float:
    """Reduce an angle into (-pi, pi]."""
    y = math.atan2(math.sin(x), math.cos(x))
    # atan2 lands on -pi for arguments equivalent to pi; fold to +pi
    if y == -math.pi:
        y = math.pi
    return y


@dataclass(frozen=True)
class RotationResult:
    """Interior field rotation of a spiral-with-core assemblage.

    upsilon is the unbounded rotation magnitude accumulated across the
    annulus (it can exceed pi); psi is upsilon reduced into (-pi, pi].
    upsilon_signed carries the direction: negative means the interior field
    is rotated clockwise relative to the applied one (this is the case for
    sigma1 > sigma2 with phi in (0, pi/2)). magnitude is the interior field
    amplitude |z| with u_core = Re(z) r cos + Im(z) r sin.
    """

    upsilon: float
    psi: float
    magnitude: float
    upsilon_signed: float


def _spiral_alpha_t(sigma1: float, sigma2: float, phi: float, r0: float) -> tuple[float, float, float]:
    K = spiral_tensor(SpiralMaterial(sigma1, sigma2, phi))
    g = math.sqrt(sigma1 * sigma2)
    alpha = g / K.k_rr
    t = r0 ** (2.0 * alpha)
    return g, alpha, t


def interior_amplitude(sigma_i: float, sigma1: float, sigma2: float, phi: float, r0: float) -> float:
    """|z| of the core field, u_core = |z| r cos(theta - beta(r0)).

    2 g r0^(alpha - 1) / (g (1 + t) + sigma_i (1 - t)) with t = r0^(2 alpha);
    always positive, equal to r0^(alpha - 1) when sigma_i = g.
    """
    g, alpha, t = _spiral_alpha_t(sigma1, sigma2, phi, r0)
    return 2.0 * g * r0 ** (alpha - 1.0) / (g * (1.0 + t) + sigma_i * (1.0 - t))


def rotation_angle(
    sigma1: float, sigma2: float, phi: float, r0: float, sigma_i: float | None = None
) -> RotationResult:
    """Rotation of the core field relative to the applied field.

    The annulus phase obeys V/U = tan(beta(r)) with
    beta(r) = (K_rtheta / K_rr) ln r, so the signed core rotation is
    beta(r0) = ln(r0) cos(phi) sin(phi) (sigma1 - sigma2) / K_rr.

    The amplitude depends on the core conductivity; when sigma_i is omitted
    the neutral choice sigma_i = sqrt(sigma1 sigma2) is used (the core that
    makes the whole disk exactly equivalent to its own annulus).
    """
    K = spiral_tensor(SpiralMaterial(sigma1, sigma2, phi))
    signed = math.log(r0) * math.cos(phi) * math.sin(phi) * (sigma1 - sigma2) / K.k_rr
    ups = abs(signed)
    if sigma_i is None:
        sigma_i = math.sqrt(sigma1 * sigma2)
    mag = interior_amplitude(sigma_i, sigma1, sigma2, phi, r0)
    return RotationResult(upsilon=ups, psi=reduce_angle(ups), magnitude=mag, upsilon_signed=signed)


def optimal_phi(sigma1: float, sigma2: float) -> float:
    """Spiral angle maximizing the rotation: arctan(sqrt(sigma1/sigma2))."""
    return math.atan(math.sqrt(sigma1 / sigma2))


def max_rotation(sigma1: float, sigma2: float, r0: float) -> float:
    """Rotation magnitude at the optimal angle: -ln(r0)|s1/s2 - 1| sqrt(s2/s1) / 2."""
    return -0.5 * math.log(r0) * abs(sigma1 / sigma2 - 1.0) * math.sqrt(sigma2 / sigma1)


class LaminateRotation(NamedTuple):
    m1: float
    upsilon_max: float
    degenerate: bool


def max_rotation_laminate(k1: float, k2: float, r0: float) -> LaminateRotation:
    """Best rotation achievable by laminating k1, k2 into the spiral material.

    Equal fractions are optimal; then sigma1 sigma2 = k1 k2 and
    upsilon = -ln(r0) (k1 - k2)^2 / (4 (k1 + k2) sqrt(k1 k2)).
    For k1 = k2 every fraction performs equally (upsilon = 0): the returned
    m1 = 1/2 is arbitrary and the degenerate flag is set.
    """
    if k1 == k2:
        return LaminateRotation(0.5, 0.0, True)
    ups = -math.log(r0) * (k1 - k2) ** 2 / (4.0 * (k1 + k2) * math.sqrt(k1 * k2))
    return LaminateRotation(0.5, ups, False)


def radius_for_rotation(k1: float, k2: float, upsilon: float) -> float:
    """Core radius at which the optimal laminated spiral reaches rotation upsilon.

    r0 = exp(-4 upsilon (k1 + k2) sqrt(k1 k2) / (k1 - k2)^2). Requires
    k1 != k2 and upsilon > 0.
    """
    if k1 == k2:
        raise EqualConductivities("rotation vanishes for k1 = k2 at every radius")
    if upsilon <= 0.0:
        raise ValueError(f"target rotation must be > 0, got {upsilon!r}")
    return math.exp(-4.0 * upsilon * (k1 + k2) * math.sqrt(k1 * k2) / (k1 - k2) ** 2)


# ---------------------------------------------------------------------------
# dispatch


def sigma_star(a: Assemblage) -> float:
    """Closed-form effective conductivity of any assemblage."""
    if isinstance(a, SpiralWithCore):
        return spiral_core_sigma_star(a.sigma_i, a.spiral.sigma1, a.spiral.sigma2, a.spiral.phi, a.r0)
    if isinstance(a, CoatedCircles):
        return hs_coated_circles(a.sigma_i, a.sigma1, a.r0)
    if isinstance(a, Schulgasser):
        return schulgasser(a.sigma1, a.sigma2)
    if isinstance(a, OrangeWithCore):
        return orange_with_core(a.sigma_i, a.sigma1, a.sigma2, a.r0)
    if isinstance(a, OrangeWithShell):
        return orange_with_shell(a.sigma1, a.sigma_r, a.sigma_theta, a.r0)
    if isinstance(a, BasicSpiral):
        return basic_spiral(a.sigma1, a.sigma2, a.phi)
    if isinstance(a, SpiralWithShell):
        return spiral_with_shell(a.sigma1_shell, a.spiral.sigma1, a.spiral.sigma2, a.r0)
    if isinstance(a, Wheel):
        return wheel(a.sigma_i, a.sigma1, a.sigma2, a.r0, a.r1)
    if isinstance(a, Star):
        return star(a.sigma_i, a.sigma * a.mu * a.r0, a.r0)
    if isinstance(a, Hub):
        return hub(a.sigma_i, a.sigma, a.mu, a.rho0)
    if isinstance(a, SpikyBall):
        return spiky_ball(a.sigma_i, a.sigma, a.mu, a.rho0, a.n)
    raise TypeError(f"not an assemblage: {a!r}")


_FORMULA_NAMES = {
    SpiralWithCore: "spiral_core_sigma_star",
    CoatedCircles: "hs_coated_circles",
    Schulgasser: "schulgasser",
    OrangeWithCore: "orange_with_core",
    OrangeWithShell: "orange_with_shell",
    BasicSpiral: "basic_spiral",
    SpiralWithShell: "spiral_with_shell",
    Wheel: "wheel",
    Star: "star",
    Hub: "hub",
    SpikyBall: "spiky_ball",
}


def formula_name(a: Assemblage) -> str:
    try:
        return _FORMULA_NAMES[type(a)]
    except KeyError:
        raise TypeError(f"not an assemblage: {a!r}") from None
