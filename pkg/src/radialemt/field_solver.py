"""Exact interior fields for the unit applied field e = (1, 0).

Everything here works on the first angular mode. In 2D the potential is
u = U(r) cos(theta) + V(r) sin(theta), packed as the complex profile
W(r) = U + iV with complex radial flux

    J_W = K_rr W' - i K_rtheta W / r,

whose real and imaginary parts are the cos/sin components of the radial
current. In a uniform spiral annulus W is spanned by r^(lambda) with

    K_rr lambda^2 - 2 i K_rtheta lambda - K_thetatheta = 0,
    lambda = +/- alpha + i b,  alpha = sqrt(det K) / K_rr,  b = K_rtheta / K_rr,

and the flux of the pure modes is J_W = +/- sqrt(det K) r^(lambda - 1).
Writing the two coefficients as complex numbers c+ = C1 + i C2,
c- = C3 + i C4, the outer cloaking conditions force C2 = C4 = 0, which is
why V/U = tan(b ln r) throughout the annulus.

In 3D the mode is u = U(rho) cos(theta) with real U and flux J = K_rho U';
the same chain machinery runs with the imaginary parts identically zero.

The solvers below do exact piecewise matching with these bases. They share
no code with the ODE/finite-difference oracles, which integrate the raw
equations numerically.
"""

from __future__ import annotations

import cmath
import dataclasses
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

import numpy as np
from scipy.integrate import quad

from . import closed_form
from .geometry import (
    Assemblage,
    BasicSpiral,
    CoatedCircles,
    Hub,
    OrangeWithCore,
    OrangeWithShell,
    PolarTensor,
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
    "ModeExponents",
    "Layer",
    "LayerSolution",
    "FieldSolution",
    "SolverSingular",
    "EmptyLayerList",
    "mode_exponents",
    "solve_spiral_core",
    "solve_piecewise_isotropic_chain",
    "solve",
    "eval_potential",
    "eval_current",
    "nucleus_field",
    "jump_residuals",
    "interior_dissipation",
]


class SolverSingular(ArithmeticError):
    """The interface-matching linear system was singular."""


class EmptyLayerList(ValueError):
    """A chain solve needs at least one layer."""


class ModeExponents(NamedTuple):
    """Radial growth rate alpha and phase coefficient b of the annulus modes.

    W ~ r^(+/- alpha + i b); b = K_rtheta / K_rr so that V/U = tan(b ln r)
    on the cloaked solution. b > 0 with ln r0 < 0 makes the physical core
    rotation negative (clockwise) for sigma1 > sigma2, phi in (0, pi/2).
    """

    alpha: float
    beta_coef: float


def mode_exponents(tensor: PolarTensor) -> ModeExponents:
    det = tensor.det()
    if tensor.k_rr <= 0.0 or det <= 0.0:
        raise ValueError(f"mode exponents need a positive-definite tensor, got {tensor!r}")
    return ModeExponents(alpha=math.sqrt(det) / tensor.k_rr, beta_coef=tensor.k_rtheta / tensor.k_rr)


class Layer(NamedTuple):
    """One annular layer.

    kind/params:
      "isotropic": (sigma,)                      2D or 3D
      "polar":     (k_rr, k_rtheta, k_thetatheta)  2D only
      "spoke2d":   (sigma1,)    tensor diag(sigma1/r, 0)
      "spoke3d":   (coef, n)    radial tensor coef/rho^n, n > 1
    """

    kind: str
    r_lo: float
    r_hi: float
    params: tuple


class LayerSolution(NamedTuple):
    layer: Layer
    c1: complex
    c2: complex


def _basis(layer: Layer, r: float, dim: int):
    """Two mode triples (w, w', J) for the layer at radius r."""
    if layer.kind == "isotropic":
        (sigma,) = layer.params
        if dim == 2:
            return ((r, 1.0, sigma), (1.0 / r, -1.0 / r**2, -sigma / r**2))
        return ((r, 1.0, sigma), (r**-2, -2.0 * r**-3, -2.0 * sigma / r**3))
    if layer.kind == "polar":
        krr, krt, ktt = layer.params
        det = krr * ktt - krt * krt
        g = math.sqrt(det)
        alpha = g / krr
        b = krt / krr
        lam_p = complex(alpha, b)
        lam_m = complex(-alpha, b)
        rp = r ** (lam_p - 1.0)
        rm = r ** (lam_m - 1.0)
        return ((r * rp, lam_p * rp, g * rp), (r * rm, lam_m * rm, -g * rm))
    if layer.kind == "spoke2d":
        (sigma1,) = layer.params
        return ((r, 1.0, sigma1 / r), (1.0, 0.0, 0.0))
    if layer.kind == "spoke3d":
        coef, n = layer.params
        w = r ** (n - 1.0)
        return ((w, (n - 1.0) * w / r, (n - 1.0) * coef / r**2), (1.0, 0.0, 0.0))
    raise ValueError(f"unknown layer kind {layer.kind!r}")


def _layer_tensor(layer: Layer, r: float, dim: int) -> tuple[float, float, float]:
    """(K_rr, K_rtheta, K_thetatheta) in 2D; (K_rho, 0, K_t) in 3D."""
    if layer.kind == "isotropic":
        (sigma,) = layer.params
        return sigma, 0.0, sigma
    if layer.kind == "polar":
        return layer.params
    if layer.kind == "spoke2d":
        (sigma1,) = layer.params
        return sigma1 / r, 0.0, 0.0
    if layer.kind == "spoke3d":
        coef, n = layer.params
        return coef / r**n, 0.0, 0.0
    raise ValueError(f"unknown layer kind {layer.kind!r}")


@dataclass(frozen=True)
class FieldSolution:
    """Solved interior field of an assemblage under the unit applied field.

    The exterior potential is exactly r cos(theta) (that is the construction,
    not an approximation). a_core/b_core are the cosine/sine core
    coefficients, u_core = a_core r cos + b_core r sin; they are None for
    coreless geometries. For solutions whose annulus is a single uniform
    polar-tensor layer, c1..c4 expose the classical four real coefficients;
    the outer boundary forces c2 = c4 = 0.
    """

    geometry: Assemblage
    dim: int
    sigma_star: float
    core_sigma: Optional[float]
    core_radius: Optional[float]
    a_core: Optional[float]
    b_core: Optional[float]
    layers: tuple[LayerSolution, ...]
    exponents: Optional[ModeExponents]

    def _single_polar(self) -> LayerSolution:
        polar = [ls for ls in self.layers if ls.layer.kind == "polar"]
        if len(polar) != 1:
            raise ValueError("c1..c4 are defined for solutions with a single uniform annulus")
        return polar[0]

    @property
    def c1(self) -> float:
        return self._single_polar().c1.real

    @property
    def c2(self) -> float:
        return self._single_polar().c1.imag

    @property
    def c3(self) -> float:
        return self._single_polar().c2.real

    @property
    def c4(self) -> float:
        return self._single_polar().c2.imag


def solve_spiral_core(a: SpiralWithCore) -> FieldSolution:
    """Match core, spiral annulus, and exterior across both interfaces.

    After the outer conditions kill the C2/C4 components, the remaining
    unknowns are real: C1, C3, the core amplitude along the rotated
    direction, and sigma*. Scaling the decaying coefficient by r0^alpha
    keeps the 4x4 system well conditioned even for alpha near its extremes.
    """
    K = spiral_tensor(a.spiral)
    exps = mode_exponents(K)
    alpha, b = exps
    g = math.sqrt(K.det())
    r0 = a.r0
    si = a.sigma_i
    ra = r0**alpha

    # unknowns: (C1, D3, zt, sigma*) with C3 = D3 ra, z = zt e^{i b ln r0}
    M = np.array(
        [
            [1.0, ra, 0.0, 0.0],
            [g, -g * ra, 0.0, -1.0],
            [ra, 1.0, -r0, 0.0],
            [g * ra, -g, -si * r0, 0.0],
        ]
    )
    rhs = np.array([1.0, 0.0, 0.0, 0.0])
    try:
        c1, d3, zt, sig = np.linalg.solve(M, rhs)
    except np.linalg.LinAlgError as exc:
        raise SolverSingular(f"spiral-core matching system singular: {exc}") from exc
    c3 = d3 * ra
    beta0 = b * math.log(r0)
    z = complex(zt * cmath.exp(1j * beta0))
    layer = Layer("polar", r0, 1.0, (K.k_rr, K.k_rtheta, K.k_thetatheta))
    return FieldSolution(
        geometry=a,
        dim=2,
        sigma_star=float(sig),
        core_sigma=si,
        core_radius=r0,
        a_core=z.real,
        b_core=z.imag,
        layers=(LayerSolution(layer, complex(c1), complex(c3)),),
        exponents=exps,
    )


def _solve_coreless_single(a: Assemblage, tensor: PolarTensor) -> FieldSolution:
    """Coreless uniform disk: only the regular mode survives at the origin."""
    exps = mode_exponents(tensor)
    g = math.sqrt(tensor.det())
    layer = Layer("polar", 0.0, 1.0, (tensor.k_rr, tensor.k_rtheta, tensor.k_thetatheta))
    return FieldSolution(
        geometry=a,
        dim=2,
        sigma_star=g,
        core_sigma=None,
        core_radius=None,
        a_core=None,
        b_core=None,
        layers=(LayerSolution(layer, 1.0 + 0.0j, 0.0 + 0.0j),),
        exponents=exps,
    )


def solve_piecewise_isotropic_chain(
    layers: Sequence[Layer],
    core_sigma: Optional[float] = None,
    dim: int = 2,
    geometry: Optional[Assemblage] = None,
) -> FieldSolution:
    """Propagate (W, J_W) outward through concentric layers and normalize.

    With a core, the start state is the regular core mode W = z r (z = 1
    before normalization). Without one, the innermost layer must admit a
    mode regular at the origin and only that mode is used. The final
    solution is rescaled so the exterior is exactly r cos(theta), and
    sigma* = J_W(1) / W(1).
    """
    if not layers:
        raise EmptyLayerList("need at least one layer")
    for lay in layers:
        if lay.kind in ("polar", "spoke2d") and dim != 2:
            raise ValueError(f"layer kind {lay.kind!r} is 2D only")
        if lay.kind == "spoke3d" and dim != 3:
            raise ValueError("spoke3d layers require dim=3")

    sols: list[LayerSolution] = []
    if core_sigma is not None:
        r = layers[0].r_lo
        state_w: complex = complex(r)
        state_j: complex = complex(core_sigma)
        start = 0
    else:
        first = layers[0]
        if first.r_lo != 0.0:
            raise ValueError("coreless chain must start at the origin")
        (b1, _b2) = _basis(first, first.r_hi, dim)
        sols.append(LayerSolution(first, 1.0 + 0.0j, 0.0 + 0.0j))
        state_w, _, state_j = (complex(v) for v in b1)
        start = 1

    for lay in layers[start:]:
        (w1, _, j1), (w2, _, j2) = _basis(lay, lay.r_lo, dim)
        M = np.array([[w1, w2], [j1, j2]], dtype=complex)
        try:
            c = np.linalg.solve(M, np.array([state_w, state_j], dtype=complex))
        except np.linalg.LinAlgError as exc:
            raise SolverSingular(f"layer matching singular at r={lay.r_lo}: {exc}") from exc
        sols.append(LayerSolution(lay, complex(c[0]), complex(c[1])))
        (w1, _, j1), (w2, _, j2) = _basis(lay, lay.r_hi, dim)
        state_w = c[0] * w1 + c[1] * w2
        state_j = c[0] * j1 + c[1] * j2

    if state_w == 0:
        raise SolverSingular("vanishing boundary potential; cannot normalize")
    sig = state_j / state_w
    if abs(sig.imag) > 1e-9 * max(1.0, abs(sig.real)):
        raise SolverSingular(f"admittance came out complex: {sig}")

    scale = complex(1.0 / state_w)
    sols = [LayerSolution(ls.layer, complex(ls.c1 * scale), complex(ls.c2 * scale)) for ls in sols]
    z = scale  # core coefficient was 1 before rescaling
    return FieldSolution(
        geometry=geometry,
        dim=dim,
        sigma_star=float(sig.real),
        core_sigma=core_sigma,
        core_radius=layers[0].r_lo if core_sigma is not None else None,
        a_core=z.real if core_sigma is not None else None,
        b_core=z.imag if core_sigma is not None else None,
        layers=tuple(sols),
        exponents=None,
    )


def solve(a: Assemblage) -> FieldSolution:
    """Exact field solution for any assemblage."""
    if isinstance(a, SpiralWithCore):
        return solve_spiral_core(a)
    if isinstance(a, OrangeWithCore):
        eq = SpiralWithCore(a.sigma_i, SpiralMaterial(a.sigma1, a.sigma2, 0.0), a.r0)
        return dataclasses.replace(solve_spiral_core(eq), geometry=a)
    if isinstance(a, CoatedCircles):
        lay = Layer("isotropic", a.r0, 1.0, (a.sigma1,))
        return solve_piecewise_isotropic_chain([lay], core_sigma=a.sigma_i, dim=2, geometry=a)
    if isinstance(a, Schulgasser):
        return _solve_coreless_single(a, PolarTensor(a.sigma1, 0.0, a.sigma2))
    if isinstance(a, BasicSpiral):
        return _solve_coreless_single(a, spiral_tensor(SpiralMaterial(a.sigma1, a.sigma2, a.phi)))
    if isinstance(a, OrangeWithShell):
        inner = Layer("polar", 0.0, a.r0, (a.sigma_r, 0.0, a.sigma_theta))
        shell = Layer("isotropic", a.r0, 1.0, (a.sigma1,))
        return solve_piecewise_isotropic_chain([inner, shell], core_sigma=None, dim=2, geometry=a)
    if isinstance(a, SpiralWithShell):
        K = spiral_tensor(a.spiral)
        inner = Layer("polar", 0.0, a.r0, (K.k_rr, K.k_rtheta, K.k_thetatheta))
        shell = Layer("isotropic", a.r0, 1.0, (a.sigma1_shell,))
        return solve_piecewise_isotropic_chain([inner, shell], core_sigma=None, dim=2, geometry=a)
    if isinstance(a, Wheel):
        spoke = Layer("spoke2d", a.r0, a.r1, (a.sigma1,))
        rim = Layer("isotropic", a.r1, 1.0, (a.sigma2,))
        return solve_piecewise_isotropic_chain([spoke, rim], core_sigma=a.sigma_i, dim=2, geometry=a)
    if isinstance(a, Star):
        spoke = Layer("spoke2d", a.r0, 1.0, (a.sigma * a.mu * a.r0,))
        return solve_piecewise_isotropic_chain([spoke], core_sigma=a.sigma_i, dim=2, geometry=a)
    if isinstance(a, Hub):
        spike = Layer("spoke3d", a.rho0, 1.0, (a.sigma * a.mu * a.rho0**2, 2.0))
        return solve_piecewise_isotropic_chain([spike], core_sigma=a.sigma_i, dim=3, geometry=a)
    if isinstance(a, SpikyBall):
        spike = Layer("spoke3d", a.rho0, 1.0, (a.sigma * a.mu * a.rho0**a.n, float(a.n)))
        return solve_piecewise_isotropic_chain([spike], core_sigma=a.sigma_i, dim=3, geometry=a)
    raise TypeError(f"not an assemblage: {a!r}")


# ---------------------------------------------------------------------------
# evaluation


def _profile_at(s: FieldSolution, r: float) -> tuple[complex, complex, tuple[float, float, float]]:
    """(W, W', tensor) at interior radius r; also covers core and exterior.

    The boundary r = 1 reports the exterior side, where W = r exactly.
    """
    if r >= 1.0:
        sig = s.sigma_star
        return complex(r), complex(1.0), (sig, 0.0, sig)
    if s.core_radius is not None and r <= s.core_radius:
        z = complex(s.a_core, s.b_core)
        return z * r, z, (s.core_sigma, 0.0, s.core_sigma)
    for ls in s.layers:
        if r <= ls.layer.r_hi or ls is s.layers[-1]:
            (w1, w1p, _), (w2, w2p, _) = _basis(ls.layer, r, s.dim)
            W = ls.c1 * w1 + ls.c2 * w2
            Wp = ls.c1 * w1p + ls.c2 * w2p
            return W, Wp, _layer_tensor(ls.layer, r, s.dim)
    raise ValueError(f"radius {r} outside the solved profile")


def eval_potential(s: FieldSolution, r: float, theta: float) -> float:
    """u(r, theta); theta is the polar angle from the applied-field axis.

    Exterior points return exactly r cos(theta).
    """
    if r < 0.0:
        raise ValueError("radius must be >= 0")
    if r == 0.0:
        return 0.0
    W, _, _ = _profile_at(s, r)
    return W.real * math.cos(theta) + W.imag * math.sin(theta)


def eval_current(s: FieldSolution, r: float, theta: float) -> tuple[float, float]:
    """Current density (j_r, j_theta) at (r, theta).

    2D: j_r = Re(J_W) cos + Im(J_W) sin with J_W = K_rr W' - i K_rt W/r,
        j_theta = K_rt (U' cos + V' sin) + K_tt (V cos - U sin)/r.
    3D: j_rho = K_rho U' cos, j_theta = -K_t U sin / rho.
    """
    if r <= 0.0:
        raise ValueError("radius must be > 0")
    ct, st = math.cos(theta), math.sin(theta)
    if s.core_radius is not None and r <= s.core_radius:
        A, B = s.a_core, s.b_core
        si = s.core_sigma
        if s.dim == 2:
            return si * (A * ct + B * st), si * (-A * st + B * ct)
        return si * A * ct, -si * A * st
    W, Wp, (krr, krt, ktt) = _profile_at(s, r)
    if s.dim == 2:
        jw = krr * Wp - 1j * krt * W / r
        j_r = jw.real * ct + jw.imag * st
        j_t = krt * (Wp.real * ct + Wp.imag * st) + ktt * (W.imag * ct - W.real * st) / r
        return j_r, j_t
    return krr * Wp.real * ct, -ktt * W.real * st / r


def nucleus_field(s: FieldSolution) -> closed_form.RotationResult:
    """Amplitude and rotation of the uniform core field."""
    if s.a_core is None:
        raise ValueError("geometry has no core")
    signed = math.atan2(s.b_core, s.a_core)
    mag = math.hypot(s.a_core, s.b_core)
    ups = abs(signed)
    return closed_form.RotationResult(
        upsilon=ups, psi=closed_form.reduce_angle(ups), magnitude=mag, upsilon_signed=signed
    )


def jump_residuals(s: FieldSolution) -> dict:
    """Max interface mismatches of (U, V, J_u, J_v); all should be ~eps."""
    eps = 1e-12  # evaluate limits just inside/outside to stay in the right branch

    def state(r: float) -> tuple[complex, complex]:
        W, Wp, (krr, krt, _) = _profile_at(s, r)
        return W, krr * Wp - 1j * krt * W / r

    radii = []
    if s.core_radius is not None:
        radii.append(s.core_radius)
    for ls in s.layers[1:]:
        radii.append(ls.layer.r_lo)
    radii.append(1.0)

    worst = {"u": 0.0, "v": 0.0, "j_u": 0.0, "j_v": 0.0}
    for rk in radii:
        w_in, j_in = state(rk * (1.0 - eps))
        w_out, j_out = state(rk * (1.0 + eps))
        worst["u"] = max(worst["u"], abs(w_in.real - w_out.real))
        worst["v"] = max(worst["v"], abs(w_in.imag - w_out.imag))
        worst["j_u"] = max(worst["j_u"], abs(j_in.real - j_out.real))
        worst["j_v"] = max(worst["j_v"], abs(j_in.imag - j_out.imag))
    worst["max"] = max(worst.values())
    return worst


def interior_dissipation(s: FieldSolution) -> float:
    """Energy dissipated inside the unit inclusion.

    Equals sigma* times (pi in 2D, 4 pi/3 in 3D) for the cloaked solution;
    used as an integral sanity check on solved fields.
    """
    if s.dim == 2:
        total = 0.0
        if s.core_radius is not None:
            total += s.core_sigma * (s.a_core**2 + s.b_core**2) * s.core_radius**2

        for ls in s.layers:
            def f(r: float) -> float:
                (w1, w1p, _), (w2, w2p, _) = _basis(ls.layer, r, 2)
                W = ls.c1 * w1 + ls.c2 * w2
                Wp = ls.c1 * w1p + ls.c2 * w2p
                krr, krt, ktt = _layer_tensor(ls.layer, r, 2)
                cross = (Wp.conjugate() * W).imag
                return (krr * abs(Wp) ** 2 + 2.0 * krt * cross / r + ktt * abs(W) ** 2 / r**2) * r

            val, _err = quad(f, ls.layer.r_lo, ls.layer.r_hi, limit=200)
            total += val
        return math.pi * total

    total = 0.0
    if s.core_radius is not None:
        total += s.core_sigma * s.a_core**2 * s.core_radius**3

    for ls in s.layers:
        def f3(rho: float) -> float:
            (w1, w1p, _), (w2, w2p, _) = _basis(ls.layer, rho, 3)
            U = (ls.c1 * w1 + ls.c2 * w2).real
            Up = (ls.c1 * w1p + ls.c2 * w2p).real
            krho, _, kt = _layer_tensor(ls.layer, rho, 3)
            return krho * Up**2 * rho**2 + 2.0 * kt * U**2

        val, _err = quad(f3, ls.layer.r_lo, ls.layer.r_hi, limit=200)
        total += val
    return 4.0 * math.pi / 3.0 * total
