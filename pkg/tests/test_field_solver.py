import cmath
import math

import numpy as np
import pytest

from radialemt import closed_form as cf
from radialemt import field_solver as fs
from radialemt import geometry as geo


def rel(a, b):
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


def all_geometries(rng):
    """One random valid draw of every assemblage type."""
    def sig():
        return 10.0 ** rng.uniform(-1, 1)

    phi = rng.uniform(-1.25, 1.25)
    r0 = rng.uniform(0.15, 0.85)
    mu = rng.uniform(0.05, 1.0)
    wr0 = rng.uniform(0.1, 0.5)
    wr1 = rng.uniform(wr0 + 0.1, 0.9)
    return [
        geo.SpiralWithCore(sig(), geo.SpiralMaterial(sig(), sig(), phi), r0),
        geo.CoatedCircles(sig(), sig(), r0),
        geo.Schulgasser(sig(), sig()),
        geo.OrangeWithCore(sig(), sig(), sig(), r0),
        geo.OrangeWithShell(sig(), sig(), sig(), r0),
        geo.BasicSpiral(sig(), sig(), phi),
        geo.SpiralWithShell(sig(), geo.SpiralMaterial(sig(), sig(), phi), r0),
        geo.Wheel(sig(), sig(), sig(), wr0, wr1),
        geo.Star(sig(), sig(), mu, r0),
        geo.Hub(sig(), sig(), mu, r0),
        geo.SpikyBall(sig(), sig(), mu, r0, rng.uniform(1.2, 4.0)),
    ]


# ---------------------------------------------------------------------------
# mode structure


def test_mode_exponents_of_spiral_tensor():
    K = geo.spiral_tensor(geo.SpiralMaterial(9.0, 1.0, math.pi / 4))
    ex = fs.mode_exponents(K)
    assert rel(ex.alpha, math.sqrt(9.0) / K.k_rr) < 1e-14
    assert rel(ex.beta_coef, K.k_rtheta / K.k_rr) < 1e-14


def test_mode_exponents_reject_indefinite_tensor():
    with pytest.raises(ValueError):
        fs.mode_exponents(geo.PolarTensor(1.0, 2.0, 1.0))  # det < K_rt^2 contribution
    with pytest.raises(ValueError):
        fs.mode_exponents(geo.PolarTensor(-1.0, 0.0, 1.0))


def test_spiral_core_frozen_solution():
    a = geo.SpiralWithCore(1.0, geo.SpiralMaterial(9.0, 1.0, math.pi / 4), 0.5)
    s = fs.solve(a)
    assert rel(s.sigma_star, 1.9275743446461837) < 1e-13
    assert rel(s.a_core, 1.3819204105334784) < 1e-12
    assert abs(s.b_core - (-0.8558764816735541)) < 1e-12
    assert rel(s.c1, 0.821262390774364) < 1e-12
    assert rel(s.c3, 0.1787376092256361) < 1e-12
    rot = fs.nucleus_field(s)
    assert abs(rot.upsilon_signed - (-0.5545177444479561)) < 1e-12
    assert rel(rot.magnitude, 1.6254933321705503) < 1e-12


def test_sigma_star_matches_closed_form_everywhere():
    rng = np.random.default_rng(11)
    for _ in range(25):
        for a in all_geometries(rng):
            s = fs.solve(a)
            assert rel(s.sigma_star, cf.sigma_star(a)) < 1e-10, a


def test_exterior_potential_is_exactly_applied_field():
    rng = np.random.default_rng(12)
    for a in all_geometries(rng):
        s = fs.solve(a)
        for r in (1.0, 1.3, 2.7):
            for th in (0.0, 0.4, 2.0):
                assert fs.eval_potential(s, r, th) == r * math.cos(th)


def test_annulus_phase_ratio_identity():
    # V/U = tan(beta_coef * ln r) inside the spiral annulus (normalized so
    # the phase vanishes at r = 1)
    a = geo.SpiralWithCore(2.0, geo.SpiralMaterial(7.0, 2.0, 0.9), 0.3)
    s = fs.solve(a)
    bcoef = s.exponents.beta_coef
    for k in range(100):
        r = 0.3 + (1.0 - 0.3) * (k + 0.5) / 100
        u = fs.eval_potential(s, r, 0.0)
        v = fs.eval_potential(s, r, math.pi / 2.0)
        want = math.tan(bcoef * math.log(r))
        assert abs(v / u - want) < 1e-10


def test_jump_residuals_small_for_all_geometries():
    rng = np.random.default_rng(13)
    for a in all_geometries(rng):
        res = fs.jump_residuals(fs.solve(a))
        assert res["max"] < 1e-9, (a, res)


def test_potential_continuity_across_interfaces():
    a = geo.Wheel(2.0, 0.25, 3.0, 0.3, 0.7)
    s = fs.solve(a)
    for r in (0.3, 0.7, 1.0):
        below = fs.eval_potential(s, r - 1e-11, 0.7)
        above = fs.eval_potential(s, r + 1e-11, 0.7)
        assert abs(below - above) < 1e-9


def test_interior_dissipation_equals_effective_medium_value():
    # cloaking means the inclusion dissipates exactly like the homogeneous
    # sigma* disk it replaces: integral = sigma* pi (2D) or sigma* 4pi/3 (3D)
    rng = np.random.default_rng(14)
    for a in all_geometries(rng):
        s = fs.solve(a)
        want = s.sigma_star * (math.pi if s.dim == 2 else 4.0 * math.pi / 3.0)
        assert rel(fs.interior_dissipation(s), want) < 1e-8, a


def test_star_current_concentration_in_spokes():
    # spokes occupy a mu fraction at r0; at mu = 1/2 the spoke current
    # density doubles the core's radial current at the junction
    a = geo.Star(1.0, 1.0, 0.5, 0.5)
    s = fs.solve(a)
    j_core, _ = fs.eval_current(s, a.r0 - 1e-12, 0.0)
    j_spoke, _ = fs.eval_current(s, a.r0 + 1e-12, 0.0)
    assert rel(j_spoke / j_core, 1.0) < 1e-9  # homogenized flux is continuous
    # the physical in-spoke density is j_spoke / mu = 2 j_core
    assert rel((j_spoke / a.mu) / j_core, 2.0) < 1e-9


def test_nucleus_field_matches_closed_form_rotation():
    rng = np.random.default_rng(15)
    for _ in range(50):
        s1 = 10.0 ** rng.uniform(-1, 1)
        s2 = 10.0 ** rng.uniform(-1, 1)
        phi = rng.uniform(-1.25, 1.25)
        r0 = rng.uniform(0.15, 0.85)
        si = 10.0 ** rng.uniform(-1, 1)
        a = geo.SpiralWithCore(si, geo.SpiralMaterial(s1, s2, phi), r0)
        rot_solver = fs.nucleus_field(fs.solve(a))
        rot_formula = cf.rotation_angle(s1, s2, phi, r0, sigma_i=si)
        # the solver sees the principal angle; the formula the full winding
        wrap = cf.reduce_angle(rot_solver.upsilon_signed - rot_formula.upsilon_signed)
        assert abs(wrap) < 1e-10
        assert rel(rot_solver.magnitude, rot_formula.magnitude) < 1e-10


def test_nucleus_field_requires_core():
    s = fs.solve(geo.Schulgasser(4.0, 9.0))
    with pytest.raises(ValueError):
        fs.nucleus_field(s)


def test_core_field_is_uniform():
    a = geo.SpiralWithCore(1.0, geo.SpiralMaterial(9.0, 1.0, 0.8), 0.5)
    s = fs.solve(a)
    # u linear in r at fixed angle within the core
    u1 = fs.eval_potential(s, 0.1, 0.3)
    u2 = fs.eval_potential(s, 0.2, 0.3)
    u4 = fs.eval_potential(s, 0.4, 0.3)
    assert abs(u2 - 2.0 * u1) < 1e-14
    assert abs(u4 - 4.0 * u1) < 1e-14
    # current direction identical at any two core points
    j1 = fs.eval_current(s, 0.1, 0.3)
    j2 = fs.eval_current(s, 0.4, 0.3)
    assert abs(j1[0] - j2[0]) < 1e-13 and abs(j1[1] - j2[1]) < 1e-13


def test_eval_current_exterior_matches_effective_medium():
    a = geo.CoatedCircles(1.0, 5.0, 0.5)
    s = fs.solve(a)
    jr, jt = fs.eval_current(s, 2.0, 0.7)
    assert rel(jr, s.sigma_star * math.cos(0.7)) < 1e-14
    assert rel(jt, -s.sigma_star * math.sin(0.7)) < 1e-14


def test_three_dimensional_exterior_and_core():
    a = geo.Hub(1.0, 1.0, 1.0 / 3.0, 0.5)
    s = fs.solve(a)
    assert s.dim == 3
    assert fs.eval_potential(s, 1.7, 0.4) == 1.7 * math.cos(0.4)
    # 3D core field is along the applied axis, no rotation possible
    rot = fs.nucleus_field(s)
    assert rot.upsilon == 0.0


def test_solver_coefficient_types_are_plain_python():
    rng = np.random.default_rng(16)
    for a in all_geometries(rng):
        s = fs.solve(a)
        assert isinstance(s.sigma_star, float)
        if s.a_core is not None:
            assert isinstance(s.a_core, float) and isinstance(s.b_core, float)
        for ls in s.layers:
            assert isinstance(ls.c1, complex) and isinstance(ls.c2, complex)
        jr, jt = fs.eval_current(s, 0.97, 0.3)
        assert isinstance(jr, float) and isinstance(jt, float)


def test_chain_solver_rejects_empty_and_mismatched_layers():
    with pytest.raises(fs.EmptyLayerList):
        fs.solve_piecewise_isotropic_chain([])
    lay = fs.Layer("spoke3d", 0.3, 1.0, (0.5, 2.0))
    with pytest.raises(ValueError):
        fs.solve_piecewise_isotropic_chain([lay], core_sigma=1.0, dim=2)
