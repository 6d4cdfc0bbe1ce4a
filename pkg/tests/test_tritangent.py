import random

import pytest

from curvehull.errors import DegreeMismatch
from curvehull.rings import Q, Ring
from curvehull.tritangent import (
    PLANE_RING,
    XYZ_RING,
    chow_form,
    minimal_generators,
    squares_ideal,
    tritangent_ideal,
)

PRINTED_QUARTICS = [
    "16*k0^2*k6^2+8*k0*k1*k5*k6-4*k0*k3^2*k6+k1^2*k5^2",
    "8*k0^2*k5*k6+2*k0*k1*k5^2-4*k0*k2*k3*k6+k1^2*k3*k6",
]


@pytest.fixture(scope="module")
def p6():
    return squares_ideal(6)


class TestSquaresIdeal:
    def test_forty_five_quartics(self, p6):
        gens = p6.ideal.generators
        assert len(gens) == 45
        assert all(g.total_degree() == 4 for g in gens)

    def test_printed_generators_present(self, p6):
        ring = p6.ideal.generators[0].ring
        have = {str(g) for g in p6.ideal.generators}
        for s in PRINTED_QUARTICS:
            g = ring.parse(s)
            assert str(g) in have or str(-g) in have

    def test_squares_satisfy_ideal(self, p6):
        rng = random.Random(7)
        ring = p6.ideal.generators[0].ring
        for _ in range(25):
            nu = [Q(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(4)]
            kappa = [sum((nu[p] * nu[i - p]
                          for p in range(max(0, i - 3), min(i, 3) + 1)),
                         Q(0))
                     for i in range(7)]
            for g in p6.ideal.generators:
                assert g.evaluate(kappa) == 0

    def test_generators_minimal(self, p6):
        assert minimal_generators(p6.ideal.generators) == p6.ideal.generators

    def test_cache_round_trip(self, p6, tmp_path, monkeypatch):
        monkeypatch.setenv("CURVEHULL_CACHE_DIR", str(tmp_path))
        first = squares_ideal(6)
        assert (tmp_path / "P_6.ideal").exists()
        second = squares_ideal(6)
        assert [str(g) for g in first.ideal.generators] == \
               [str(g) for g in second.ideal.generators]
        assert [str(g) for g in second.ideal.generators] == \
               [str(g) for g in p6.ideal.generators]

    def test_odd_degree_rejected(self):
        with pytest.raises(ValueError):
            squares_ideal(5)

    def test_cap_enforced(self):
        with pytest.raises(ValueError):
            squares_ideal(10, degree_cap=8)


class TestTritangentIdeal:
    def test_degree_mismatch(self, p6, quartic_curve):
        with pytest.raises(DegreeMismatch):
            tritangent_ideal(quartic_curve, p6)

    def test_plane_ring(self, p6, running_curve):
        t = tritangent_ideal(running_curve, p6)
        assert t.ideal.ring == PLANE_RING
        assert all(g.is_homogeneous() for g in t.ideal.generators)


class TestChowForm:
    def test_running_curve(self, p6, running_curve):
        t = tritangent_ideal(running_curve, p6)
        chow = chow_form(t)
        p = XYZ_RING.parse
        expected = (p("z-1") * p("z+1") * p("x-1") ** 3 * p("x+1") ** 3)
        assert chow in (expected.primitive(), (-expected).primitive())

    def test_morton_curve(self, p6, morton_curve, golden):
        t = tritangent_ideal(morton_curve, p6)
        chow = chow_form(t)
        quartic = XYZ_RING.parse(golden("morton_chow_quartic.txt"))
        expected = (XYZ_RING.parse("x^2+y^2") ** 2 * quartic).primitive()
        assert chow in (expected, -expected)

    def test_seed_independence(self, p6, running_curve):
        t = tritangent_ideal(running_curve, p6)
        assert chow_form(t, seed=0) == chow_form(t, seed=12345)
