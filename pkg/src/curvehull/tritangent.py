"""Tritangent planes: the three-double-roots ideal and the Chow form.

A plane (alpha:beta:gamma:delta) is tritangent to the degree-d curve
(F0:F1:F2:F3) when the binary form alpha*F0 + beta*F1 + gamma*F2 + delta*F3
has three double roots, i.e. is a square of a form of degree d/2 (times a
unit). The coefficients kappa_i of squares of binary forms cut out an ideal
P_d that depends only on d; substituting the curve's coefficient combinations
specializes it to the curve's tritangent ideal.

The Chow form of the (generically finite) set of tritangent planes is the
product of the corresponding linear forms, with multiplicity, obtained as a
multiplication-matrix determinant on the quotient algebra.
"""

from __future__ import annotations

import itertools
import logging
import os
import random
import tempfile

from .errors import ChartFailure, DegreeMismatch, ResourceLimit
from .groebner import (
    DEFAULT_PAIR_BUDGET,
    Ideal,
    eliminate,
    groebner_basis,
    mult_matrix,
    quotient_algebra,
    saturate_by_ideal,
)
from .rings import PolyMatrix, Q, QZERO, Ring, determinant

log = logging.getLogger("curvehull")

PLANE_VARS = ("alpha", "beta", "gamma", "delta")
PLANE_RING = Ring(PLANE_VARS)
XYZ_RING = Ring(("x", "y", "z"))

DEFAULT_DEGREE_CAP = 8
CACHE_ENV = "CURVEHULL_CACHE_DIR"


class SquaresIdeal:
    """Minimal homogeneous generators of the coefficient ideal of squares."""

    def __init__(self, d, ideal):
        self.d = d
        self.ideal = ideal


class TritangentIdeal:
    def __init__(self, curve, ideal):
        self.curve = curve
        self.ideal = ideal


class TritangentCurve:
    """Positive-dimensional tritangent locus, returned saturated and flagged."""

    positive_dimensional = True

    def __init__(self, ideal):
        self.ideal = ideal


# -- P_d ---------------------------------------------------------------------


def _kappa_ring(d):
    return Ring(tuple(f"k{i}" for i in range(d + 1)))


def _squares_generators(d, budget):
    m = d // 2
    kvars = tuple(f"k{i}" for i in range(d + 1))
    nvars = tuple(f"n{j}" for j in range(m + 1))
    big = Ring(nvars + kvars)
    gens = []
    for i in range(d + 1):
        s = big.zero
        for p in range(max(0, i - m), min(i, m) + 1):
            s = s + big.gen(f"n{p}") * big.gen(f"n{i - p}")
        gens.append(big.gen(f"k{i}") - s)
    elim = eliminate(Ideal(big, gens), set(nvars), budget)
    target = _kappa_ring(d)
    return minimal_generators([g.rename(target) for g in elim.generators])


def minimal_generators(gens):
    """Minimal homogeneous generators of the ideal spanned by `gens`.

    Processes candidates degree by degree; a candidate is kept only when it
    is not in the span of monomial multiples of the already-kept generators.
    """
    if not gens:
        return []
    ring = gens[0].ring
    chosen = []
    for degree, group in itertools.groupby(
        sorted(gens, key=lambda g: (g.total_degree(), ring.key(g.leading_monomial()))),
        key=lambda g: g.total_degree(),
    ):
        pivots = {}  # leading monomial -> reduced row (dict)
        for g in chosen:
            shift = degree - g.total_degree()
            for mono in _monomials(ring, shift):
                row = {tuple(map(int.__add__, m, mono)): c for m, c in g.terms.items()}
                _row_reduce_insert(ring, pivots, row)
        for g in group:
            if not g.is_homogeneous():
                raise ValueError("minimal_generators expects homogeneous input")
            if _row_reduce_insert(ring, pivots, dict(g.terms)):
                chosen.append(g.primitive())
    return chosen


def _monomials(ring, degree):
    if degree == 0:
        yield (0,) * ring.nvars
        return
    for combo in itertools.combinations_with_replacement(range(ring.nvars), degree):
        m = [0] * ring.nvars
        for i in combo:
            m[i] += 1
        yield tuple(m)


def _row_reduce_insert(ring, pivots, row):
    """Reduce `row` against `pivots`; install and return True if independent."""
    while row:
        lead = max(row, key=ring.key)
        piv = pivots.get(lead)
        if piv is None:
            lc = row[lead]
            pivots[lead] = {m: c / lc for m, c in row.items()}
            return True
        ratio = row[lead]
        for m, c in piv.items():
            s = row.get(m, QZERO) - ratio * c
            if s:
                row[m] = s
            else:
                row.pop(m, None)
    return False


def squares_ideal(d, degree_cap=DEFAULT_DEGREE_CAP, budget=DEFAULT_PAIR_BUDGET):
    """The ideal P_d of degree-d binary forms with three (i.e. all) double roots."""
    if d % 2 or d < 6:
        raise ValueError("d must be even and at least 6")
    if d > degree_cap:
        raise ValueError(f"d={d} exceeds the cap {degree_cap}")
    ring = _kappa_ring(d)
    cached = _cache_load(d, ring)
    if cached is not None:
        return SquaresIdeal(d, Ideal(ring, cached))
    gens = _squares_generators(d, budget)
    _cache_store(d, gens)
    return SquaresIdeal(d, Ideal(ring, gens))


def _cache_path(d):
    base = os.environ.get(CACHE_ENV)
    if base is None:
        base = os.path.join(os.path.expanduser("~"), ".cache", "curvehull")
    return os.path.join(base, f"P_{d}.ideal")


def _cache_load(d, ring):
    path = _cache_path(d)
    try:
        with open(path) as fh:
            lines = [line.strip() for line in fh if line.strip()]
    except OSError:
        return None
    try:
        return [ring.parse(line) for line in lines]
    except Exception:
        log.warning("ignoring unreadable cache file %s", path)
        return None


def _cache_store(d, gens):
    path = _cache_path(d)
    try:
        os.makedirs(os.path.dirname(path), exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=os.path.dirname(path))
        with os.fdopen(fd, "w") as fh:
            for g in gens:
                fh.write(str(g) + "\n")
        os.replace(tmp, path)
    except OSError as exc:
        log.warning("could not cache P_%d: %s", d, exc)


# -- specialization -------------------------------------------------------------


def tritangent_ideal(curve, squares: SquaresIdeal) -> TritangentIdeal:
    """Substitute kappa_i <- i-th coefficient of alpha*F0 + ... + delta*F3."""
    d = squares.d
    if curve.degree != d:
        raise DegreeMismatch(f"curve degree {curve.degree} != ideal degree {d}")
    # kappa_i is the coefficient of x0^i * x1^(d-i)
    images = []
    for i in range(d + 1):
        lin = PLANE_RING.zero
        for var, form in zip(PLANE_VARS, curve.forms):
            coeff = form.coefficient((i, d - i))
            if coeff:
                lin = lin + PLANE_RING.gen(var) * coeff
        images.append(lin)
    gens = [g.substitute(PLANE_RING, images) for g in squares.ideal.generators]
    return TritangentIdeal(curve, Ideal(PLANE_RING, [g for g in gens if g]))


# -- Chow form -------------------------------------------------------------------


def _krull_dimension(gb):
    """Krull dimension of the quotient, from the leading monomial ideal."""
    ring = gb.ideal.ring
    lms = [g.leading_monomial() for g in gb.elements]
    if any(sum(m) == 0 for m in lms):
        return -1
    best = 0
    for r in range(ring.nvars, 0, -1):
        for subset in itertools.combinations(range(ring.nvars), r):
            keep = set(subset)
            if all(any(m[i] for i in range(ring.nvars) if i not in keep) for m in lms):
                return r
    return best


def _random_matrix(rng):
    while True:
        a = [[Q(rng.randint(-5, 5)) for _ in range(4)] for _ in range(4)]
        if _det4(a):
            return a


def _det4(a):
    total = QZERO
    for perm in itertools.permutations(range(4)):
        sign = 1
        p = list(perm)
        for i in range(4):
            for j in range(i + 1, 4):
                if p[i] > p[j]:
                    sign = -sign
        term = Q(sign)
        for i in range(4):
            term *= a[i][perm[i]]
        total += term
    return total


def _chart_is_valid(ideal, budget):
    """True when the projective variety meets {alpha = 0} only at the origin."""
    gens = ideal.generators + [PLANE_RING.gen("alpha")]
    gb = groebner_basis(Ideal(PLANE_RING, gens), budget=budget)
    lms = [g.leading_monomial() for g in gb.elements]
    if any(sum(m) == 0 for m in lms):
        return True
    for i in range(1, 4):
        if not any(m[i] > 0 and all(e == 0 for j, e in enumerate(m) if j != i)
                   for m in lms):
            return False
    return True


def chow_form(t: TritangentIdeal, budget=DEFAULT_PAIR_BUDGET, seed=0,
              max_charts=5):
    """Product of the tritangent linear forms alpha + beta*x + gamma*y + delta*z.

    Multiplicities are preserved: the result is the determinant of
    l0 + l1*M_beta + l2*M_gamma + l3*M_delta on the quotient algebra, where
    (l0,l1,l2,l3) is (1,x,y,z) pushed through any coordinate change used to
    reach a valid chart. When the tritangent locus is a curve (positive
    dimensional), the saturated ideal is returned flagged instead.
    """
    base = t.ideal
    gb = groebner_basis(base, budget=budget)
    if not gb.elements or _krull_dimension(gb) >= 2:
        irrelevant = Ideal(PLANE_RING, [PLANE_RING.gen(v) for v in PLANE_VARS])
        return TritangentCurve(saturate_by_ideal(base, irrelevant, budget))

    rng = random.Random(seed)
    matrix = None  # identity
    ideal = base
    for attempt in range(max_charts):
        if _chart_is_valid(ideal, budget):
            break
        matrix = _random_matrix(rng)
        images = []
        for i in range(4):
            lin = PLANE_RING.zero
            for j in range(4):
                if matrix[i][j]:
                    lin = lin + PLANE_RING.gen(PLANE_VARS[j]) * matrix[i][j]
            images.append(lin)
        ideal = Ideal(PLANE_RING,
                      [g.substitute(PLANE_RING, images) for g in base.generators])
    else:
        raise ChartFailure(f"no valid chart after {max_charts} attempts")

    chart_ring = Ring(("beta", "gamma", "delta"))
    chart_images = [chart_ring.one] + [chart_ring.gen(v) for v in ("beta", "gamma", "delta")]
    affine = [g.substitute(chart_ring, chart_images) for g in ideal.generators]
    agb = groebner_basis(Ideal(chart_ring, [g for g in affine if g]), budget=budget)
    qa = quotient_algebra(agb)
    if qa.dimension == 0:
        return XYZ_RING.one
    mats = [mult_matrix(qa, v) for v in ("beta", "gamma", "delta")]
    _assert_commuting(mats)

    # the linear forms (1,x,y,z) transported through the coordinate change
    point = [XYZ_RING.one, XYZ_RING.gen("x"), XYZ_RING.gen("y"), XYZ_RING.gen("z")]
    if matrix is None:
        ell = point
    else:
        ell = []
        for i in range(4):
            s = XYZ_RING.zero
            for j in range(4):
                if matrix[j][i]:
                    s = s + point[j] * matrix[j][i]
            ell.append(s)

    n = qa.dimension
    entries = [[XYZ_RING.zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            e = XYZ_RING.zero
            if i == j:
                e = e + ell[0]
            for k in range(3):
                if mats[k][i][j]:
                    e = e + ell[k + 1] * mats[k][i][j]
            entries[i][j] = e
    det = determinant(PolyMatrix(entries))
    return det.primitive()


def _assert_commuting(mats):
    n = len(mats[0])
    for a in range(3):
        for b in range(a + 1, 3):
            ma, mb = mats[a], mats[b]
            for i in range(n):
                for j in range(n):
                    ab = sum((ma[i][k] * mb[k][j] for k in range(n)), QZERO)
                    ba = sum((mb[i][k] * ma[k][j] for k in range(n)), QZERO)
                    if ab != ba:
                        raise AssertionError("multiplication matrices do not commute")
