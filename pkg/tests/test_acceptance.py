"""Acceptance gate: the eight release criteria, one test each.

Each test prints a single pass/fail line (visible with -v through the test
name, or with -s through the print) and pins its tolerances inline. These
are deliberately repetitive and self-contained: each criterion re-derives
what it needs rather than trusting another test.
"""

import math

import numpy as np

from radialemt import closed_form as cf
from radialemt import field_solver as fs
from radialemt import geometry as geo
from radialemt import optimize as op
from radialemt import oracle


def _report(n: int, label: str, ok: bool) -> bool:
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {label}")
    return ok


def rel(a, b):
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


def test_criterion_1_opposite_field_design_point():
    # laminate of 1 and 100 at equal fractions, best angle: the core radius
    # that flips the interior field is 0.274 +- 0.001, and at r0 = 0.274 the
    # reduced rotation is within 0.01 of pi
    r0 = cf.radius_for_rotation(1.0, 100.0, math.pi)
    s1, s2 = geo.laminate_eigen(geo.LaminateSpec(1.0, 100.0, 0.5))
    rot = cf.rotation_angle(s1, s2, cf.optimal_phi(s1, s2), 0.274)
    ok = abs(r0 - 0.274) <= 1e-3 and abs(rot.psi - math.pi) <= 0.01
    assert _report(1, f"r0 = {r0:.6f} (+-1e-3 of 0.274), |psi - pi| = {abs(rot.psi - math.pi):.2e} (<= 0.01)", ok)


def test_criterion_2_reduction_web():
    rng = np.random.default_rng(101)
    worst_iso = worst_zero_phi = worst_ball = 0.0
    for _ in range(100):
        s1 = 10.0 ** rng.uniform(-1, 1)
        s2 = 10.0 ** rng.uniform(-1, 1)
        si = 10.0 ** rng.uniform(-1, 1)
        phi = rng.uniform(-1.25, 1.25)
        r0 = rng.uniform(0.15, 0.85)
        mu = rng.uniform(0.05, 1.0)
        worst_iso = max(worst_iso, rel(
            cf.spiral_core_sigma_star(si, s1, s1, phi, r0), cf.hs_coated_circles(si, s1, r0)))
        worst_zero_phi = max(worst_zero_phi, rel(
            cf.spiral_core_sigma_star(si, s1, s2, 0.0, r0), cf.orange_with_core(si, s1, s2, r0)))
        worst_ball = max(worst_ball, rel(
            cf.spiky_ball(si, s1, mu, r0, 2.0), cf.hub(si, s1, mu, r0)))
    # stated limits, checked at a representative point each
    g_err = rel(cf.spiral_core_sigma_star(4.0, 9.0, 1.0, math.pi / 4, 1e-8), 3.0)
    wheel_err = max(
        rel(cf.wheel(si, s1, s2, wr0, 1.0 - 1e-11), cf.star(si, s1, wr0))
        for si, s1, s2, wr0 in [(2.0, 0.3, 3.0, 0.25), (0.5, 1.2, 0.7, 0.4)]
    )
    identities = max(worst_iso, worst_zero_phi, worst_ball)
    ok = identities <= 1e-12 and g_err <= 1e-8 and wheel_err <= 1e-8
    assert _report(2, f"identities {identities:.2e} (<=1e-12), small-core {g_err:.2e}, "
                      f"wheel->star {wheel_err:.2e} (<=1e-8)", ok)


def test_criterion_3_radial_oracle_agreement():
    rng = np.random.default_rng(102)

    def sig():
        return 10.0 ** rng.uniform(-1, 1)

    worst = 0.0
    worst_imag = 0.0
    count = 0
    for _ in range(100):
        phi = rng.uniform(-1.25, 1.25)
        r0 = rng.uniform(0.15, 0.85)
        mu = rng.uniform(0.05, 1.0)
        wr0 = rng.uniform(0.1, 0.5)
        wr1 = rng.uniform(wr0 + 0.1, 0.9)
        draws = [
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
        for a in draws:
            count += 1
            prof = oracle.profile_for(a)
            adm = oracle.ode_admittance(prof)
            if prof.dim == 2:
                worst_imag = max(worst_imag, abs(adm.imag) / abs(adm))
            worst = max(worst, rel(adm.real, cf.sigma_star(a)))
    ok = worst <= 1e-6 and worst_imag <= 1e-8
    assert _report(3, f"{count} draws over 11 geometries: worst rel {worst:.2e} (<=1e-6), "
                      f"worst imag {worst_imag:.2e} (<=1e-8)", ok)


def test_criterion_4_spoke_families_against_series_forms():
    worst_star = max(
        rel(cf.star_fraction(3.0, 0.5, m)[1], 3.0 * m / (2.0 - m))
        for m in [0.1 * i for i in range(1, 10)]
    )
    worst_hub = max(
        rel(cf.hub(2.0, 2.0, 1.0 / 3.0, math.sqrt(m)), 2.0 * m / (3.0 - 2.0 * math.sqrt(m)))
        for m in [0.1 * i for i in range(1, 10)]
    )
    # hub vs 3D coated spheres (insulated core, conducting shell of the same
    # volume fraction m = 0.25), the latter from the radial oracle
    m = 0.25
    rc = (1.0 - m) ** (1.0 / 3.0)
    prof = oracle.RadialProfile(
        3, oracle.CoreSpec("insulated", None, rc), (oracle.uniform_segment(rc, 1.0, 1.0),))
    k_spheres = oracle.ode_effective_conductivity(prof)
    k_hub = cf.hub(1.0, 1.0, 1.0 / 3.0, math.sqrt(m))
    gap = abs(k_hub - k_spheres) / k_spheres
    ok = worst_star <= 1e-12 and worst_hub <= 1e-12 and gap > 0.05
    assert _report(4, f"star {worst_star:.2e}, hub {worst_hub:.2e} (<=1e-12); "
                      f"hub {k_hub:.4f} vs coated spheres {k_spheres:.4f}: gap {gap:.1%} (>5%)", ok)


def test_criterion_5_fd_cloaking_and_convergence():
    a = geo.CoatedCircles(1.0, 5.0, 0.5)
    results, order = oracle.fd_convergence(a, grids=(128, 256, 512))
    far512 = results[-1].farfield_norm
    control = oracle.fd_cloaking_check(a, grid_n=512, sigma_exterior=1.5 * 25.0 / 7.0)
    ok = far512 <= 2e-2 and order >= 1.8 and control.farfield_norm >= 5e-2
    assert _report(5, f"farfield(512) {far512:.2e} (<=2e-2), order {order:.2f} (>=1.8), "
                      f"x1.5 control {control.farfield_norm:.2e} (>=5e-2)", ok)


def test_criterion_6_optimizer_matches_closed_forms():
    rng = np.random.default_rng(103)
    worst_phi = worst_m1 = 0.0
    for _ in range(100):
        s1 = 10.0 ** rng.uniform(-1, 1)
        s2 = 10.0 ** rng.uniform(-1, 1)
        r0 = rng.uniform(0.05, 0.95)
        best = op.maximize_rotation_numeric(s1, s2, r0)
        worst_phi = max(worst_phi, abs(best.phi_hat - cf.optimal_phi(s1, s2)))
        frac = op.maximize_rotation_over_fractions(s1, s2, r0)
        worst_m1 = max(worst_m1, abs(frac.m1_hat - 0.5))
    ok = worst_phi <= 1e-6 and worst_m1 <= 1e-6
    assert _report(6, f"100 draws: |phi_hat - phi0| {worst_phi:.2e}, "
                      f"|m1_hat - 0.5| {worst_m1:.2e} (<=1e-6)", ok)


def test_criterion_7_field_identities():
    a = geo.SpiralWithCore(2.0, geo.SpiralMaterial(7.0, 2.0, 0.9), 0.3)
    s = fs.solve(a)
    bcoef = s.exponents.beta_coef
    worst_ratio = 0.0
    for k in range(100):
        r = a.r0 + (1.0 - a.r0) * (k + 0.5) / 100
        u = fs.eval_potential(s, r, 0.0)
        v = fs.eval_potential(s, r, math.pi / 2)
        worst_ratio = max(worst_ratio, abs(v / u - math.tan(bcoef * math.log(r))))
    jumps = fs.jump_residuals(s)["max"]
    exterior_exact = all(
        fs.eval_potential(s, r, th) == r * math.cos(th)
        for r in (1.0, 1.4, 2.2) for th in (0.0, 0.9, 2.5))
    ok = worst_ratio <= 1e-10 and jumps <= 1e-10 and exterior_exact
    assert _report(7, f"phase ratio {worst_ratio:.2e}, jumps {jumps:.2e} (<=1e-10), "
                      f"exterior exact: {exterior_exact}", ok)


def test_criterion_8_harmonic_mean_structure():
    sigmas = [0.5, 1.0, 2.0, 4.0, 8.0]
    worst = 0.0
    for a in (geo.Star(1.0, 1.0, 0.4, 0.5),
              geo.Hub(1.0, 1.0, 1.0 / 3.0, 0.5),
              geo.SpikyBall(1.0, 1.0, 0.6, 0.45, 2.5)):
        ca, cb = cf.harmonic_decomposition(a)
        for s in sigmas:
            for si in sigmas:
                if isinstance(a, geo.Star):
                    k = cf.star(si, s * a.mu * a.r0, a.r0)
                elif isinstance(a, geo.Hub):
                    k = cf.hub(si, s, a.mu, a.rho0)
                else:
                    k = cf.spiky_ball(si, s, a.mu, a.rho0, a.n)
                worst = max(worst, rel(k, 1.0 / (ca / s + cb / si)))
    ok = worst <= 1e-12
    assert _report(8, f"5x5 conductivity grid, 3 spoke families: worst {worst:.2e} (<=1e-12)", ok)
