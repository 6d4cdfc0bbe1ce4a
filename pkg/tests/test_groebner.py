import random

import pytest
from hypothesis import given, settings, strategies as st

from curvehull.errors import NotZeroDimensional, ResourceLimit
from curvehull.groebner import (
    GroebnerBasis,
    Ideal,
    eliminate,
    groebner_basis,
    intersect,
    mult_matrix,
    quotient_algebra,
    saturate,
    saturate_by_ideal,
)
from curvehull.rings import Q, Ring

R2 = Ring(("x", "y"))
R3 = Ring(("x", "y", "z"))


class TestBasis:
    def test_monomials(self):
        gb = groebner_basis(Ideal(R2, [R2.gen("x"), R2.gen("y")]))
        assert [str(g) for g in gb] == ["x", "y"]

    def test_membership(self):
        f1 = R2.parse("x^2+y^2")
        f2 = R2.parse("x^2-y^2")
        gb = groebner_basis(Ideal(R2, [f1, f2]))
        assert gb.contains(f1)
        assert gb.contains(R2.parse("y^2*x^3-y^4*x"))
        assert not gb.contains(R2.gen("x"))

    def test_generators_reduce_to_zero(self):
        gens = [R3.parse("x^2*y-z"), R3.parse("x*z-y^2"), R3.parse("x+y+z-1")]
        gb = groebner_basis(Ideal(R3, gens))
        for g in gens:
            assert gb.normal_form(g) == R3.zero

    def test_determinism_under_permutation(self):
        gens = [R3.parse("x^2+y*z"), R3.parse("y^2-x*z"), R3.parse("x*y+z^2-1")]
        reference = [str(g) for g in groebner_basis(Ideal(R3, gens))]
        rng = random.Random(7)
        for _ in range(4):
            shuffled = gens[:]
            rng.shuffle(shuffled)
            assert [str(g) for g in groebner_basis(Ideal(R3, shuffled))] == reference

    def test_budget(self):
        gens = [R3.parse("x^5+y^3*z-z"), R3.parse("y^5-x*z^2+x"), R3.parse("z^5-x^2*y")]
        with pytest.raises(ResourceLimit):
            groebner_basis(Ideal(R3, gens), budget=3)

    def test_image_curve_quadrics(self, quartic_curve):
        # the secant-map image of the quartic's stationary conic is cut out
        # by eight quadrics (plus the cubics completing the basis)
        from curvehull.edgesurface import U_NAMES, secant_coordinates, stationary_form

        phi = stationary_form(quartic_curve)
        coords = secant_coordinates(quartic_curve)
        big = Ring(("a", "b", "c") + U_NAMES)
        gens = [phi.rename(big)]
        for name, u in zip(U_NAMES, coords):
            gens.append(u.rename(big) - big.gen(name))
        image = eliminate(Ideal(big, gens), {"a", "b", "c"})
        quadrics = [g for g in image.generators if g.total_degree() == 2]
        assert len(quadrics) == 8


class TestEliminate:
    def test_diagonal(self):
        ring = Ring(("t", "x", "y"))
        t, x, y = ring.gens
        out = eliminate(Ideal(ring, [t - x, t - y]), {"t"})
        assert [str(g) for g in out.generators] == ["x-y"]

    def test_twisted_cubic_graph(self):
        ring = Ring(("s", "w", "x", "y", "z"))
        s = ring.gen("s")
        images = [ring.one, s, s * s, s * s * s]
        gens = [ring.gen(v) - img for v, img in zip(("w", "x", "y", "z"), images)]
        out = eliminate(Ideal(ring, gens), {"s"})
        small = out.ring
        minors = {small.parse("x^2-w*y"), small.parse("x*y-w*z"), small.parse("y^2-x*z")}
        # dehomogenized twisted cubic: the affine minors at w=1
        gb = groebner_basis(out)
        for m in minors:
            assert gb.contains(m)

    def test_graph_substitution_property(self):
        rng = random.Random(3)
        src = Ring(("s", "t"))
        for _ in range(5):
            p1 = src.poly({(rng.randint(0, 2), rng.randint(0, 2)): Q(rng.randint(-3, 3))
                           for _ in range(3)})
            p2 = src.poly({(rng.randint(0, 2), rng.randint(0, 2)): Q(rng.randint(-3, 3))
                           for _ in range(3)})
            big = Ring(("s", "t", "y1", "y2"))
            gens = [big.gen("y1") - p1.rename(big), big.gen("y2") - p2.rename(big)]
            out = eliminate(Ideal(big, gens), {"s", "t"})
            for g in out.generators:
                assert g.substitute(src, [p1, p2]) == src.zero

    def test_stepwise_matches_block(self):
        ring = Ring(("s", "t", "x", "y"))
        s, t, x, y = ring.gens
        gens = [x - s * s - t, y - s * t, s * s * s - t * t]
        a = eliminate(Ideal(ring, gens), {"s", "t"})
        b = eliminate(Ideal(ring, gens), {"s", "t"}, stepwise=True)
        assert [str(g) for g in a.generators] == [str(g) for g in b.generators]


class TestSaturate:
    def test_monomial(self):
        out = saturate(Ideal(R2, [R2.parse("x*y")]), R2.gen("x"))
        assert [str(g) for g in out.generators] == ["y"]

    def test_embedded_component(self):
        # (x^2, xy) : x^inf = (x)
        out = saturate(Ideal(R2, [R2.parse("x^2"), R2.parse("x*y")]), R2.gen("x"))
        assert [str(g) for g in out.generators] == ["x"]

    def test_idempotent(self):
        i = Ideal(R2, [R2.parse("x^2*y-y^3"), R2.parse("x*y^2")])
        f = R2.gen("y")
        once = saturate(i, f)
        twice = saturate(once, f)
        assert [str(g) for g in once.generators] == [str(g) for g in twice.generators]

    def test_by_ideal(self):
        i = Ideal(R3, [R3.parse("x*z"), R3.parse("y*z")])
        j = Ideal(R3, [R3.gen("x"), R3.gen("y")])
        out = saturate_by_ideal(i, j)
        assert [str(g) for g in out.generators] == ["z"]

    def test_by_ideal_matches_stabilized_colon(self):
        rng = random.Random(11)
        for _ in range(10):
            mono = lambda: R3.poly({(rng.randint(0, 2), rng.randint(0, 2),
                                     rng.randint(0, 2)): Q(1)})
            i = Ideal(R3, [mono() for _ in range(3)])
            j = Ideal(R3, [mono() for _ in range(2)])
            exact = saturate_by_ideal(i, j, fast_path=False)
            fast = saturate_by_ideal(i, j, fast_path=True)
            gb_e = groebner_basis(exact)
            gb_f = groebner_basis(fast)
            assert [str(g) for g in gb_e.elements] == [str(g) for g in gb_f.elements]


class TestIntersect:
    def test_principal(self):
        out = intersect(Ideal(R2, [R2.gen("x")]), Ideal(R2, [R2.gen("y")]))
        assert [str(g) for g in out.generators] == ["x*y"]

    def test_two_planes(self):
        i = Ideal(R3, [R3.gen("x"), R3.gen("y")])
        j = Ideal(R3, [R3.gen("x"), R3.gen("z")])
        gb = groebner_basis(intersect(i, j))
        assert gb.contains(R3.gen("x"))
        assert gb.contains(R3.parse("y*z"))
        assert not gb.contains(R3.gen("y"))

    def test_lcm_of_principal(self):
        f = R2.parse("x^2-y^2")
        g = R2.parse("x+y")
        out = intersect(Ideal(R2, [f]), Ideal(R2, [g]))
        assert [str(q) for q in out.generators] == [str(f.primitive())]


class TestQuotient:
    def test_two_points(self):
        ring = Ring(("x",))
        gb = groebner_basis(Ideal(ring, [ring.parse("x^2-1")]))
        qa = quotient_algebra(gb)
        assert qa.dimension == 2
        m = mult_matrix(qa, "x")
        # characteristic polynomial is t^2 - 1: trace 0, det -1
        assert m[0][0] + m[1][1] == 0
        assert m[0][0] * m[1][1] - m[0][1] * m[1][0] == -1

    def test_fat_point(self):
        gb = groebner_basis(Ideal(R2, [R2.parse("x^2"), R2.parse("y^2"), R2.parse("x*y")]))
        qa = quotient_algebra(gb)
        assert qa.dimension == 3
        mx = mult_matrix(qa, "x")
        sq = [[sum(mx[i][k] * mx[k][j] for k in range(3)) for j in range(3)]
              for i in range(3)]
        assert all(all(v == 0 for v in row) for row in sq)

    def test_not_zero_dimensional(self):
        gb = groebner_basis(Ideal(R2, [R2.gen("x")]))
        with pytest.raises(NotZeroDimensional):
            quotient_algebra(gb)

    def test_mult_matrices_commute(self):
        gens = [R2.parse("x^3-y-1"), R2.parse("y^2-x")]
        gb = groebner_basis(Ideal(R2, gens))
        qa = quotient_algebra(gb)
        mx = mult_matrix(qa, "x")
        my = mult_matrix(qa, "y")
        n = qa.dimension
        xy = [[sum(mx[i][k] * my[k][j] for k in range(n)) for j in range(n)]
              for i in range(n)]
        yx = [[sum(my[i][k] * mx[k][j] for k in range(n)) for j in range(n)]
              for i in range(n)]
        assert xy == yx
