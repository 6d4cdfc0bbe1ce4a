"""Edge surfaces: secant coordinates, stationary bisecants, component surfaces.

Pipeline for a degree-d curve (F0:F1:F2:F3):

1. Evaluate the forms at two points x_p, x_q of the parameter line; the 2x2
   minors of the resulting 2x4 matrix, divided by x_p0*x_q1 - x_p1*x_q0, are
   the Pluecker coordinates of the secant line, expressed in the swap
   invariants a = x_p0*x_q0, b = x_p1*x_q1, c = x_p0*x_q1 + x_p1*x_q0.
2. The determinant of the 4x4 matrix of derivatives vanishes exactly on
   stationary secants; dividing out the same factor to the fourth power and
   symmetrizing yields the form Phi(a,b,c) of degree 2(d-3).
3. Phi is factored; each irreducible factor is pushed to a surface in
   (x,y,z): through the Grassmannian image ideal, by direct substitution of
   the coordinates into the line-through-point conditions, or - for factors
   too big for exact elimination - by modular slice interpolation.
"""

from __future__ import annotations

import concurrent.futures
import logging
import math

from .curve import ProjectiveCurve, QuadricPencilSpec
from .errors import (
    ChartFailure,
    DegeneratePencil,
    NotInInvariantRing,
    NotSymmetric,
    ResourceLimit,
    ZeroDeterminant,
)
from .factor import factor_homogeneous
from .groebner import DEFAULT_PAIR_BUDGET, Ideal, eliminate, saturate_by_ideal
from .surfacelift import component_surface
from .rings import (
    PolyMatrix,
    Q,
    QZERO,
    Ring,
    determinant,
    exact_divide,
    resultant_univariate,
    squarefree_part,
)

log = logging.getLogger("curvehull")

PAIR_RING = Ring(("xp0", "xp1", "xq0", "xq1"))
ABC_RING = Ring(("a", "b", "c"))
XYZ_RING = Ring(("x", "y", "z"))

U_NAMES = ("u01", "u02", "u03", "u12", "u13", "u23")


class SecantCoordinates:
    """The six Pluecker coordinate polynomials in (a,b,c), jointly primitive."""

    def __init__(self, u):
        self.u = tuple(u)
        if len(self.u) != 6:
            raise ValueError("expected six coordinates")

    def __iter__(self):
        return iter(self.u)

    def plucker_residual(self):
        u01, u02, u03, u12, u13, u23 = self.u
        return u01 * u23 - u02 * u13 + u03 * u12


class EdgeComponent:
    def __init__(self, phi_factor, surface, raw_degree, generators=None, error=None):
        self.phi_factor = phi_factor
        self.surface = surface
        self.degree = surface.total_degree() if surface is not None else None
        self.raw_degree = raw_degree
        self.reduced = surface is not None and self.degree == raw_degree
        self.generators = generators
        self.error = error

    def as_dict(self):
        out = {
            "phi_factor": str(self.phi_factor),
            "surface": str(self.surface) if self.surface is not None else None,
            "degree": self.degree,
            "reduced": self.reduced,
        }
        if self.raw_degree != self.degree:
            out["raw_degree"] = self.raw_degree
        if self.generators is not None:
            out["generators"] = [str(g) for g in self.generators]
        if self.error is not None:
            out["error"] = self.error
        return out


# -- symmetrization -------------------------------------------------------------


def _bidegree(f):
    degs = {(m[0] + m[1], m[2] + m[3]) for m in f.terms}
    if len(degs) != 1:
        raise NotSymmetric("not bihomogeneous")
    return degs.pop()

def _swap_pq(f):
    return f.ring.poly({(m[2], m[3], m[0], m[1]): c for m, c in f.terms.items()})


def symmetrize(f):
    """The unique g(a,b,c) with g(xp0*xq0, xp1*xq1, xp0*xq1+xp1*xq0) = f.

    Works by expanding all degree-m monomials in (a,b,c) and solving the
    exact linear system for their coefficients.
    """
    if f.ring != PAIR_RING:
        raise ValueError("input must live in the two-point ring")
    if not f:
        return ABC_RING.zero
    n1, n2 = _bidegree(f)
    if n1 != n2:
        raise NotSymmetric(f"bidegree ({n1},{n2}) is not balanced")
    if _swap_pq(f) != f:
        raise NotSymmetric("not invariant under swapping the two points")
    n = n1
    a = PAIR_RING.parse("xp0*xq0")
    b = PAIR_RING.parse("xp1*xq1")
    c = PAIR_RING.parse("xp0*xq1+xp1*xq0")
    monoms = [(i, j, n - i - j) for i in range(n + 1) for j in range(n + 1 - i)]
    images = [a ** i * b ** j * c ** k for (i, j, k) in monoms]

    # columns: unknown coefficients of the abc monomials; rows: PAIR monomials
    row_index = {}
    for img in images:
        for m in img.terms:
            row_index.setdefault(m, len(row_index))
    for m in f.terms:
        row_index.setdefault(m, len(row_index))
    ncols = len(monoms)
    rows = [[QZERO] * (ncols + 1) for _ in range(len(row_index))]
    for j, img in enumerate(images):
        for m, coeff in img.terms.items():
            rows[row_index[m]][j] = coeff
    for m, coeff in f.terms.items():
        rows[row_index[m]][ncols] = coeff

    sol = _solve_exact(rows, ncols)
    if sol is None:
        raise NotInInvariantRing("no expression in the invariants exists")
    return ABC_RING.poly({monoms[j]: sol[j] for j in range(ncols)})


def _solve_exact(rows, ncols):
    """Gaussian elimination on an augmented matrix; None when inconsistent."""
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pr = rows[r]
        inv = 1 / pr[col]
        rows[r] = pr = [v * inv for v in pr]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                ratio = rows[i][col]
                rows[i] = [u - ratio * v for u, v in zip(rows[i], pr)]
        pivots.append(col)
        r += 1
    for i in range(r, len(rows)):
        if rows[i][ncols]:
            return None
    sol = [QZERO] * ncols
    for i, col in enumerate(pivots):
        sol[col] = rows[i][ncols]
    return sol


# -- secant map and stationary form ------------------------------------------------


def _point_forms(curve, which):
    v0, v1 = (f"x{which}0", f"x{which}1")
    images = [PAIR_RING.gen(v0), PAIR_RING.gen(v1)]
    return [f.substitute(PAIR_RING, images) for f in curve.forms]


def secant_coordinates(curve: ProjectiveCurve) -> SecantCoordinates:
    fp = _point_forms(curve, "p")
    fq = _point_forms(curve, "q")
    delta = PAIR_RING.parse("xp0*xq1-xp1*xq0")
    us = []
    for i in range(4):
        for j in range(i + 1, 4):
            minor = fp[i] * fq[j] - fp[j] * fq[i]
            us.append(symmetrize(exact_divide(minor, delta)))
    # joint normalization: divide by the common positive integer content
    num = 0
    den = 1
    for u in us:
        for coeff in u.terms.values():
            num = math.gcd(num, int(coeff.numerator))
            d = int(coeff.denominator)
            den = den * d // math.gcd(den, d)
    if num:
        scale = Q(num, den)
        us = [u * (1 / scale) for u in us]
    coords = SecantCoordinates(us)
    if coords.plucker_residual():
        raise AssertionError("Pluecker relation violated")
    return coords


def stationary_form(curve: ProjectiveCurve):
    """Phi(a,b,c): vanishes exactly on the stationary secants; degree 2(d-3)."""
    fp = _point_forms(curve, "p")
    fq = _point_forms(curve, "q")
    mat = PolyMatrix([
        [f.derivative("xp0") for f in fp],
        [f.derivative("xp1") for f in fp],
        [f.derivative("xq0") for f in fq],
        [f.derivative("xq1") for f in fq],
    ])
    det = determinant(mat)
    if not det:
        raise ZeroDeterminant("derivative matrix is singular: degenerate curve")
    delta = PAIR_RING.parse("xp0*xq1-xp1*xq0")
    reduced = exact_divide(det, delta ** 4)
    return symmetrize(reduced).primitive()


# -- component elimination -----------------------------------------------------------


def _grassmannian_component(phi_factor, coords, budget):
    """Surface ideal of one factor through the image curve in the Grassmannian."""
    # stage A: image ideal of the factor under the secant map,
    # as the elimination of (a,b,c) from its graph
    big = Ring(("a", "b", "c") + U_NAMES)
    gens = [phi_factor.rename(big)]
    for name, u in zip(U_NAMES, coords):
        gens.append(u.rename(big) - big.gen(name))
    image = eliminate(Ideal(big, gens), {"a", "b", "c"}, budget)

    # stage B: a line (u01:...:u23) passes through (1:x:y:z) exactly when the
    # skew-matrix product vanishes; three of those four entries solve for
    # u12, u13, u23 and the fourth is then implied, so the image ideal can be
    # pushed to Q[u01,u02,u03,x,y,z] by substitution
    small = Ring(("u01", "u02", "u03", "x", "y", "z"))
    u01, u02, u03 = (small.gen(n) for n in ("u01", "u02", "u03"))
    x, y, z = (small.gen(n) for n in ("x", "y", "z"))
    images = [u01, u02, u03, u02 * x - u01 * y, u03 * x - u01 * z, u03 * y - u02 * z]
    substituted = [g.substitute(small, images).primitive()
                   for g in image.generators]

    # keep one of u01, u02, u03 so the ideal stays homogeneous in the line
    # block, and eliminate the other two; every generator of the result is
    # then (kept u)^k * P(x,y,z), and the surviving coordinate must not
    # vanish identically on the factor or nothing is retained
    from .rings import gcd as poly_gcd

    chart = None
    for k in range(3):
        if poly_gcd(phi_factor, coords.u[k]).total_degree() == 0:
            chart = k
            break
    if chart is None:
        raise ChartFailure("every line coordinate vanishes on this factor")
    drop = {n for i, n in enumerate(("u01", "u02", "u03")) if i != chart}
    ideal = Ideal(small, [g for g in substituted if g])

    # the elimination ideal is generated in low line-block grade (the hull
    # boundary surface appears as (kept u)^k * P with small k), so truncate
    # the pair queue at an increasing grade cap instead of paying for the
    # full basis; the first cap that retains anything already contains the
    # surface, and the gcd strips u-powers and spurious multiples
    stripped = []
    for cap in (2, 3, 4, 6, None):
        out = eliminate(ideal, drop, budget, stepwise=True,
                        grade_vars={"u01", "u02", "u03"}, grade_cap=cap)
        stripped = []
        for g in out.generators:
            if len({m[0] for m in g.terms}) != 1:
                raise AssertionError("line-block homogeneity lost in elimination")
            p = out.ring.poly({(0,) + m[1:]: c for m, c in g.terms.items()})
            stripped.append(p.rename(XYZ_RING).primitive())
        if stripped:
            break
    common = stripped[0]
    for p in stripped[1:]:
        common = poly_gcd(common, p)
    return Ideal(XYZ_RING, [common.primitive()])


def _direct_component(phi_factor, coords, budget):
    """Same surface by substituting the coordinates into the line conditions."""
    big = Ring(("a", "b", "c", "x", "y", "z"))
    u01, u02, u03, u12, u13, u23 = (u.rename(big) for u in coords)
    x, y, z = (big.gen(n) for n in ("x", "y", "z"))
    gens = [
        phi_factor.rename(big),
        u23 * x - u13 * y + u12 * z,
        -u23 + u03 * y - u02 * z,
        u13 - u03 * x + u01 * z,
        -u12 + u02 * x - u01 * y,
    ]
    abc = Ideal(big, [big.gen("a"), big.gen("b"), big.gen("c")])
    sat = saturate_by_ideal(Ideal(big, gens), abc, budget)
    return eliminate(sat, {"a", "b", "c"}, budget)


def _interpolated_component(phi_factor, coords, budget):
    """Same surface via modular slice interpolation; see surfacelift."""
    surface = component_surface(phi_factor, coords, budget)
    return Ideal(XYZ_RING, [surface])


_ROUTES = {
    "grassmannian": _grassmannian_component,
    "direct": _direct_component,
    "interpolation": _interpolated_component,
}


def edge_components(curve: ProjectiveCurve, route="auto",
                    budget=DEFAULT_PAIR_BUDGET, threads=1):
    """One EdgeComponent per irreducible factor of Phi, in factor order.

    The default route picks per factor: the exact Grassmannian elimination
    for factors of degree at most two, modular slice interpolation above
    that, where the exact elimination is out of reach.
    """
    if route != "auto" and route not in _ROUTES:
        raise ValueError(f"unknown route {route!r}")
    phi = stationary_form(curve)
    coords = secant_coordinates(curve)
    factors = [f for f, _ in factor_homogeneous(phi)]

    def pick(phi_factor):
        if route != "auto":
            return _ROUTES[route]
        if phi_factor.total_degree() <= 2:
            return _grassmannian_component
        return _interpolated_component

    def build(phi_factor):
        log.info("edge component for factor %s", phi_factor)
        try:
            result = pick(phi_factor)(phi_factor, coords, budget)
        except (ResourceLimit, ChartFailure) as exc:
            log.warning("factor %s hit the budget: %s", phi_factor, exc)
            return EdgeComponent(phi_factor, None, None, error=str(exc))
        gens = result.generators
        if len(gens) != 1:
            return EdgeComponent(phi_factor, None, None, generators=gens)
        raw = gens[0].primitive()
        surface = squarefree_part(raw)
        return EdgeComponent(phi_factor, surface, raw.total_degree())

    if threads > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(build, factors))
    return [build(f) for f in factors]


# -- pencil of quadrics shortcut ---------------------------------------------------


def pencil_edge_surface(p: QuadricPencilSpec):
    """Resultant of det(Q1+t*Q2) and the pencil quadric at (1:x:y:z)."""
    ring = Ring(("t", "x", "y", "z"))
    t = ring.gen("t")
    entries = [[ring.const(p.q1[i][j]) + t * p.q2[i][j] for j in range(4)]
               for i in range(4)]
    f = determinant(PolyMatrix(entries))
    if f.degree_in("t") < 4:
        raise DegeneratePencil("det(Q1+t*Q2) must have degree 4 in t")
    vec = [ring.one, ring.gen("x"), ring.gen("y"), ring.gen("z")]
    g = ring.zero
    for i in range(4):
        for j in range(4):
            g = g + entries[i][j] * vec[i] * vec[j]
    res = resultant_univariate(f, g, "t")
    return res.rename(XYZ_RING).primitive()
