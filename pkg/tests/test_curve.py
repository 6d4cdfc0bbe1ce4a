import json
import math

import pytest
from hypothesis import given, settings, strategies as st

from curvehull.curve import (
    BINARY_RING,
    ProjectiveCurve,
    TrigCurveSpec,
    cusp_count,
    cusp_form,
    load_spec,
    to_projective,
)
from curvehull.errors import DegenerateSpec, ParseError
from curvehull.rings import Q, gcd

R = BINARY_RING


def _forms(curve):
    return curve.forms


def _simple_quartic_spec():
    # (cos t, sin t, sin 2t)
    return TrigCurveSpec(2, [Q(0)] * 3,
                         [[Q(1), Q(0)], [Q(0), Q(0)], [Q(0), Q(0)]],
                         [[Q(0), Q(0)], [Q(1), Q(0)], [Q(0), Q(1)]])


def _running_spec():
    # (cos t, sin 2t, cos 3t)
    return TrigCurveSpec(3, [Q(0)] * 3,
                         [[Q(1), Q(0), Q(0)], [Q(0), Q(0), Q(0)], [Q(0), Q(0), Q(1)]],
                         [[Q(0), Q(0), Q(0)], [Q(0), Q(1), Q(0)], [Q(0), Q(0), Q(0)]])


class TestToProjective:
    def test_simple_quartic_forms(self):
        c = to_projective(_simple_quartic_spec())
        assert c.degree == 4
        f0, f1, f2, f3 = c.forms
        assert f0 == R.parse("x0^4+2*x0^2*x1^2+x1^4")
        assert f1 == R.parse("x0^4-x1^4")
        assert f2 == R.parse("2*x0^3*x1+2*x0*x1^3")
        assert f3 == R.parse("4*x0^3*x1-4*x0*x1^3")

    def test_running_curve_satisfies_defining_surfaces(self, running_curve):
        # the image lies on x^2-y^2-xz and z-4x^3+3x
        f0, f1, f2, f3 = running_curve.forms
        assert f1 * f1 - f2 * f2 - f1 * f3 == R.zero
        assert f3 * f0 * f0 - 4 * f1 ** 3 + 3 * f1 * f0 * f0 == R.zero

    def test_forms_have_no_common_factor(self, running_curve):
        forms = running_curve.forms
        g = R.zero
        for f in forms:
            g = gcd(g, f)
        assert g.total_degree() == 0

    def test_float_bridge(self):
        spec = _running_spec()
        c = to_projective(spec)
        for k in range(20):
            theta = 0.1 + 6.2 * k / 20.0
            t = math.tan(theta / 2.0)
            vals = [f.evaluate_float([1.0, t]) for f in c.forms]
            pt = spec.evaluate_float(theta)
            for got, want in zip(vals[1:], pt):
                assert abs(got - want * vals[0]) < 1e-9 * max(1.0, abs(vals[0]))

    def test_point_image_rejected(self):
        with pytest.raises(DegenerateSpec):
            to_projective(TrigCurveSpec(
                2, [Q(1), Q(2), Q(3)],
                [[Q(0), Q(0)]] * 3, [[Q(0), Q(0)]] * 3))

    def test_top_frequency_required(self):
        with pytest.raises(DegenerateSpec):
            TrigCurveSpec(2, [Q(0)] * 3,
                          [[Q(1), Q(0)]] * 3, [[Q(0), Q(0)]] * 3)


class TestCusps:
    def test_twisted_cubic_style_immersion(self, quartic_curve):
        assert cusp_count(quartic_curve) == 0

    def test_running_curve_immersed(self, running_curve):
        assert cusp_count(running_curve) == 0

    def test_ramified_parametrization_detected(self):
        # every coordinate a function of x0^2, x1^2: the Jacobian minors
        # share a factor and the count is positive
        c = ProjectiveCurve([
            R.parse("x0^4"),
            R.parse("x1^4"),
            R.parse("x0^2*x1^2"),
            R.parse("x0^4+x1^4+x0^2*x1^2"),
        ])
        assert cusp_count(c) > 0

    def test_cusp_form_is_gcd_of_minors(self, quartic_curve):
        assert cusp_form(quartic_curve).total_degree() == 0


class TestLoadSpec:
    def test_trig_round_trip(self, tmp_path):
        data = {
            "type": "trigonometric",
            "m": 3,
            "x": {"cos": ["1"]},
            "y": {"sin": ["0", "1"]},
            "z": {"cos": ["0", "0", "1"]},
        }
        path = tmp_path / "spec.json"
        path.write_text(json.dumps(data))
        spec = load_spec(str(path))
        assert isinstance(spec, TrigCurveSpec)
        assert spec.m == 3
        assert spec.cos_coeffs[0] == [Q(1), Q(0), Q(0)]
        assert spec.sin_coeffs[1] == [Q(0), Q(1), Q(0)]

    def test_rational_strings(self):
        spec = load_spec({
            "type": "trigonometric",
            "m": 2,
            "x": {"const": "1/2", "cos": ["3/7", "1"]},
            "y": {"sin": ["1", "0"]},
            "z": {"sin": ["0", "2"]},
        })
        assert spec.const[0] == Q(1, 2)
        assert spec.cos_coeffs[0][0] == Q(3, 7)

    def test_binary_forms(self):
        curve = load_spec({
            "type": "binary_forms",
            "F0": "x0^4",
            "F1": "x0^3*x1",
            "F2": "x0*x1^3",
            "F3": "x1^4",
        })
        assert isinstance(curve, ProjectiveCurve)
        assert curve.degree == 4

    def test_declared_degree_mismatch(self):
        with pytest.raises(ParseError):
            load_spec({"type": "binary_forms", "d": 6,
                       "F0": "x0^4", "F1": "x0^3*x1",
                       "F2": "x0*x1^3", "F3": "x1^4"})

    def test_missing_coordinate(self):
        with pytest.raises(ParseError):
            load_spec({"type": "trigonometric", "m": 2,
                       "x": {"cos": ["0", "1"]}, "y": {"sin": ["0", "1"]}})

    def test_unknown_type(self):
        with pytest.raises(ParseError):
            load_spec({"type": "fourier"})


@given(st.integers(2, 5), st.integers(0, 200))
@settings(max_examples=25, deadline=None)
def test_single_frequency_lands_on_unit_circle(m, seed):
    # x = cos(m*theta), y = sin(m*theta), z arbitrary frequency-m signal:
    # the (x, y) shadow satisfies x^2 + y^2 = 1
    cos_rows = [[Q(0)] * m for _ in range(3)]
    sin_rows = [[Q(0)] * m for _ in range(3)]
    cos_rows[0][m - 1] = Q(1)
    sin_rows[1][m - 1] = Q(1)
    cos_rows[2][seed % m] = Q(1 + seed % 3)
    spec = TrigCurveSpec(m, [Q(0)] * 3, cos_rows, sin_rows)
    f0, f1, f2, _ = to_projective(spec).forms
    assert f1 * f1 + f2 * f2 == f0 * f0
