import pytest
from hypothesis import given, settings, strategies as st
from math import comb

from curvehull.degrees import (
    CurveInvariants,
    NSClass,
    bisecant_class,
    dejonquieres,
    double_curve_degree,
    hyperplane_class,
    ns_intersect,
    report,
)
from curvehull.errors import InvalidProfile


class TestDeJonquieres:
    def test_dual_surface_degree(self):
        # planes tangent at one point: a=(2,1), n=(1,d-2), s=1
        for d in range(4, 10):
            for g in range(0, 4):
                if d - 1 - g < 0:
                    continue
                got = dejonquieres([2, 1], [1, d - 2], d, g, 1)
                assert got == 2 * (d + g - 1)

    def test_tritangent_count(self):
        # a=(2,1), n=(3,d-6), s=3
        for d in range(6, 12):
            for g in range(0, 4):
                if d - 3 - g < 0:
                    continue
                got = dejonquieres([2, 1], [3, d - 6], d, g, 3)
                want = (8 * comb(d + g - 1, 3)
                        - 8 * (d + g - 4) * (d + 2 * g - 2) + 8 * g - 8)
                assert got == want

    def test_stall_count(self):
        # planes with a single 4-fold tangency: a=(4,1), n=(1,d-4), s=3
        for d in range(5, 10):
            for g in range(0, 3):
                got = dejonquieres([4, 1], [1, d - 4], d, g, 3)
                assert got == 4 * (d + 3 * g - 3)

    def test_rational_tritangents_binomial(self):
        # for g = 0 the tritangent count collapses to 8*C(d-3, 3)
        for d in range(6, 14):
            got = dejonquieres([2, 1], [3, d - 6], d, 0, 3)
            assert got == 8 * comb(d - 3, 3)

    def test_profile_validation(self):
        with pytest.raises(InvalidProfile):
            dejonquieres([2, 2], [1, 1], 4, 0, 2)  # repeated order
        with pytest.raises(InvalidProfile):
            dejonquieres([2, 1], [1, 1], 4, 0, 2)  # sum != d
        with pytest.raises(InvalidProfile):
            dejonquieres([2, 1], [1, 2], 4, 0, 0)  # wrong s
        with pytest.raises(InvalidProfile):
            dejonquieres([2, -1], [1, 2], 0, 0, 1)  # negative order


class TestNeronSeveri:
    def test_pairing(self):
        g = 2
        cp = NSClass(1, 0)
        delta = NSClass(0, 1)
        assert ns_intersect(cp, cp, g) == 1
        assert ns_intersect(cp, delta, g) == 1
        assert ns_intersect(delta, delta, g) == 1 - g

    def test_edge_degree_from_classes(self):
        # H.(H+B)/something: the scroll degree comes out of the pairing of
        # the hyperplane class with the stationary bisecant class
        for d in range(4, 9):
            for g in range(0, 3):
                h = hyperplane_class(d)
                b = bisecant_class(d, g)
                # B = 2(d+g-1)Cp - 4D pairs with H = dCp - D to the degree
                # of the edge surface plus twice the count of stalls' source
                assert ns_intersect(h, b, g) == 2 * d * (d + g - 1) - 2 * (
                    d + g - 1) - 4 * d + 4 * (1 - g)


class TestReport:
    def test_running_curve_values(self):
        out = report(CurveInvariants(d=6, g=0, n=2))
        assert out["edge_degree"] == 2 * 3 * 5 - 4
        assert out["tritangent_count"] == 8
        assert out["dual_degree"] == 10

    def test_smooth_quartic(self):
        out = report(CurveInvariants(d=4, g=0))
        assert out["edge_degree"] == 6
        assert out["tritangent_count"] == 0
        assert out["double_curve_degree"] == 0
        assert out["stalls"] == 4

    def test_cusp_cone_reported_only_with_cusps(self):
        assert "cusp_cone_degree" not in report(CurveInvariants(d=4))
        assert report(CurveInvariants(d=5, k=1))["cusp_cone_degree"] == 3

    def test_invalid(self):
        with pytest.raises(InvalidProfile):
            CurveInvariants(d=3)
        with pytest.raises(InvalidProfile):
            CurveInvariants(d=5, g=-1)


@given(st.integers(4, 12), st.integers(0, 5))
@settings(max_examples=60, deadline=None)
def test_report_values_are_integers(d, g):
    out = report(CurveInvariants(d=d, g=g))
    assert all(isinstance(v, int) for v in out.values())
