import json
import math

import numpy as np
import pytest

from radialemt import geometry as geo


def test_spiral_tensor_det_and_trace_invariant_under_phi():
    rng = np.random.default_rng(42)
    for _ in range(50):
        s1 = 10.0 ** rng.uniform(-1, 1)
        s2 = 10.0 ** rng.uniform(-1, 1)
        phi = rng.uniform(-math.pi / 2 + 1e-3, math.pi / 2)
        K = geo.spiral_tensor(geo.SpiralMaterial(s1, s2, phi))
        assert abs(K.det() - s1 * s2) < 1e-12 * s1 * s2
        assert abs(K.k_rr + K.k_thetatheta - (s1 + s2)) < 1e-12 * (s1 + s2)


def test_spiral_tensor_zero_angle_is_diagonal():
    K = geo.spiral_tensor(geo.SpiralMaterial(5.0, 2.0, 0.0))
    assert K.k_rr == 5.0
    assert K.k_rtheta == 0.0
    assert K.k_thetatheta == 2.0


def test_laminate_eigen_means():
    s1, s2 = geo.laminate_eigen(geo.LaminateSpec(1.0, 100.0, 0.5))
    assert abs(s1 - 50.5) < 1e-12
    assert abs(s2 - 2.0 / (1.0 / 1.0 + 1.0 / 100.0)) < 1e-12
    # fraction 0 or 1 degenerates to a single constituent
    assert geo.laminate_eigen(geo.LaminateSpec(3.0, 7.0, 1.0)) == (3.0, 3.0)
    assert geo.laminate_eigen(geo.LaminateSpec(3.0, 7.0, 0.0)) == (7.0, 7.0)
    with pytest.raises(ValueError):
        geo.laminate_eigen(geo.LaminateSpec(3.0, 7.0, 1.5))
    with pytest.raises(ValueError):
        geo.laminate_eigen(geo.LaminateSpec(-1.0, 7.0, 0.5))


def test_dimension_and_core_flags():
    assert geo.dimension(geo.Hub(1.0, 1.0, 0.5, 0.5)) == 3
    assert geo.dimension(geo.SpikyBall(1.0, 1.0, 0.5, 0.5, 2.5)) == 3
    assert geo.dimension(geo.CoatedCircles(1.0, 2.0, 0.5)) == 2
    assert geo.has_core(geo.CoatedCircles(1.0, 2.0, 0.5))
    assert not geo.has_core(geo.Schulgasser(1.0, 4.0))
    assert not geo.has_core(geo.BasicSpiral(1.0, 4.0, 0.3))


def test_validate_accepts_good_geometries():
    good = [
        geo.SpiralWithCore(1.0, geo.SpiralMaterial(9.0, 1.0, math.pi / 4), 0.5),
        geo.CoatedCircles(1.0, 5.0, 0.5),
        geo.Schulgasser(4.0, 9.0),
        geo.OrangeWithCore(2.0, 3.0, 5.0, 0.4),
        geo.OrangeWithShell(2.5, 3.0, 5.0, 0.55),
        geo.BasicSpiral(9.0, 1.0, 0.6),
        geo.SpiralWithShell(2.5, geo.SpiralMaterial(3.0, 5.0, 0.4), 0.55),
        geo.Wheel(2.0, 0.25, 3.0, 0.3, 0.7),
        geo.Star(1.0, 1.0, 0.5, 0.5),
        geo.Hub(1.0, 1.0, 1.0 / 3.0, 0.5),
        geo.SpikyBall(1.0, 2.0, 0.4, 0.45, 2.5),
    ]
    for a in good:
        assert geo.validate(a) == []
        assert geo.require_valid(a) is a


def test_validate_reports_each_bad_field():
    vs = geo.validate(geo.CoatedCircles(-1.0, 5.0, 1.5))
    fields = {v.field for v in vs}
    assert fields == {"sigma_i", "r0"}
    codes = {v.code for v in vs}
    assert codes == {"NonPositiveConductivity", "RadiusOutOfRange"}


def test_validate_wheel_radius_ordering():
    vs = geo.validate(geo.Wheel(1.0, 1.0, 1.0, 0.7, 0.3))
    assert any(v.code == "RadiusOrdering" for v in vs)


def test_validate_spiral_angle_range():
    vs = geo.validate(geo.BasicSpiral(1.0, 2.0, math.pi))
    assert any(v.code == "AngleOutOfRange" for v in vs)
    assert geo.validate(geo.BasicSpiral(1.0, 2.0, math.pi / 2)) == []


def test_validate_spiky_ball_exponent():
    assert any(v.field == "n" for v in geo.validate(geo.SpikyBall(1.0, 1.0, 0.5, 0.5, 1.0)))
    assert geo.validate(geo.SpikyBall(1.0, 1.0, 0.5, 0.5, 1.01)) == []


def test_require_valid_raises_with_violation_list():
    with pytest.raises(geo.InvalidAssemblage) as exc:
        geo.require_valid(geo.Star(1.0, 1.0, 2.0, 0.5))
    assert exc.value.violations
    assert all(isinstance(v, geo.Violation) for v in exc.value.violations)


def test_json_round_trip_all_types():
    originals = [
        geo.SpiralWithCore(1.5, geo.SpiralMaterial(9.0, 1.0, 0.7), 0.5),
        geo.CoatedCircles(1.0, 5.0, 0.5),
        geo.Schulgasser(4.0, 9.0),
        geo.OrangeWithCore(2.0, 3.0, 5.0, 0.4),
        geo.OrangeWithShell(2.5, 3.0, 5.0, 0.55),
        geo.BasicSpiral(9.0, 1.0, 0.6),
        geo.SpiralWithShell(2.5, geo.SpiralMaterial(3.0, 5.0, 0.4), 0.55),
        geo.Wheel(2.0, 0.25, 3.0, 0.3, 0.7),
        geo.Star(1.0, 1.0, 0.5, 0.5),
        geo.Hub(1.0, 1.0, 1.0 / 3.0, 0.5),
        geo.SpikyBall(1.0, 2.0, 0.4, 0.45, 2.5),
    ]
    for a in originals:
        text = geo.assemblage_to_json(a)
        back = geo.assemblage_from_json(text)
        assert back == a
        d = json.loads(text)
        assert d["type"] in geo.ASSEMBLAGE_TYPES


def test_spiral_json_is_flat():
    a = geo.SpiralWithCore(1.5, geo.SpiralMaterial(9.0, 1.0, 0.7), 0.5)
    d = geo.assemblage_to_dict(a)
    assert set(d) == {"type", "sigma_i", "sigma1", "sigma2", "phi", "r0"}


def test_from_dict_rejects_bad_input():
    with pytest.raises(ValueError):
        geo.assemblage_from_dict({"sigma_i": 1.0})
    with pytest.raises(ValueError):
        geo.assemblage_from_dict({"type": "mystery", "sigma_i": 1.0})
    with pytest.raises(ValueError):
        geo.assemblage_from_dict({"type": "coated_circles", "sigma_i": "one", "sigma1": 5, "r0": 0.5})
    with pytest.raises(ValueError):
        geo.assemblage_from_dict({"type": "coated_circles", "sigma_i": 1})  # missing fields


def test_wheel_from_spoke_material():
    w = geo.Wheel.from_spoke_material(2.0, sigma=4.0, mu=0.25, r0=0.3, r1=0.7, sigma2=3.0)
    assert w.sigma1 == 4.0 * 0.25 * 0.3
    assert w.r0 == 0.3 and w.r1 == 0.7
