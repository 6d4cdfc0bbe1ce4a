"""Modular slice interpolation for component surfaces.

The elimination that carves one component of the edge surface out of the
line-incidence system is far too expensive over the rationals once the
stationary form has a factor of degree three or more.  This module recovers
the same polynomial by slicing: over a word-sized prime, with the parameter
plane restricted to an affine chart and two of (x, y, z) set to numbers,
eliminating the two curve parameters is cheap and yields the monic
restriction of the component surface to a coordinate line.  The surface is
then interpolated from a triangular grid of slices, lifted back to the
rationals (CRT plus rational reconstruction when one prime is not enough),
and validated against reserve slices that took no part in the
interpolation together with one slice recomputed over the rationals.

Generic slices miss every junk component of the incidence system - the
base points of the secant map only pollute positive-dimensional fibers -
so no saturation is needed on this route.
"""

import itertools
import logging
from fractions import Fraction

from .errors import ChartFailure, ResourceLimit
from .groebner import DEFAULT_PAIR_BUDGET, Ideal, eliminate
from .rings import Ring, exact_divide, gcd as poly_gcd

log = logging.getLogger("curvehull")

XYZ_RING = Ring(("x", "y", "z"))

PRIMES = (2147483647, 2147483629, 2147483587, 2147483579, 2147483563)

_M21 = (1 << 21) - 1


# -- line-incidence system ------------------------------------------------------


def reduced_line_conditions(phi_factor, coords):
    """[factor, rows]: the four point-on-line forms with abc-content removed.

    Each row of the skew incidence matrix vanishes at (1:x:y:z) exactly when
    the point lies on the secant line.  A common factor of a row's
    coefficient polynomials that is coprime to the curve factor vanishes at
    only finitely many parameters, so dividing it out keeps the component
    surface while shrinking the junk the row drags along.
    """
    big = Ring(("a", "b", "c", "x", "y", "z"))
    u01, u02, u03, u12, u13, u23 = (u.rename(big) for u in coords)
    x, y, z = (big.gen(n) for n in ("x", "y", "z"))
    factor = phi_factor.rename(big)
    rows = [
        u23 * x - u13 * y + u12 * z,
        -u23 + u03 * y - u02 * z,
        u13 - u03 * x + u01 * z,
        -u12 + u02 * x - u01 * y,
    ]
    out = [factor]
    for r in rows:
        groups = {}
        for m, c in r.terms.items():
            groups.setdefault(m[3:], {})[m[:3] + (0, 0, 0)] = c
        content = None
        for d in groups.values():
            p = big.poly(d)
            content = p if content is None else poly_gcd(content, p)
        if content.total_degree() > 0 and poly_gcd(content, factor).total_degree() == 0:
            r = exact_divide(r, content)
        out.append(r)
    return out


# -- packed finite-field Buchberger ----------------------------------------------
#
# Monomials are packed into single ints whose natural comparison realizes the
# monomial order, so the hot reduction loop runs on machine-int dict keys.
# Three-variable step (v1, v2, s), eliminating v1 (degree of v1 dominates,
# graded on the back pair):  e1 << 42 | (e2 + es) << 21 | e2.
# Two-variable step (v2, s), eliminating v2:  e2 << 21 | es.


def _pack3(e):
    return (e[0] << 42) | ((e[1] + e[2]) << 21) | e[1]


def _unpack3(m):
    b = m & _M21
    return (m >> 42, b, ((m >> 21) & _M21) - b)


def _pack2(e):
    return (e[0] << 21) | e[1]


def _unpack2(m):
    return (m >> 21, m & _M21)


def _gb_packed(gens, p, pack, unpack, budget):
    def lcm(m1, m2):
        return pack(tuple(max(a, b) for a, b in zip(unpack(m1), unpack(m2))))

    def coprime(m1, m2):
        return all(a == 0 or b == 0 for a, b in zip(unpack(m1), unpack(m2)))

    def divides(m1, m2):
        for a, b in zip(unpack(m1), unpack(m2)):
            if a > b:
                return False
        return True

    def total(m):
        return sum(unpack(m))

    def monic(t):
        lm = max(t)
        inv = pow(t[lm], p - 2, p)
        return {m: c * inv % p for m, c in t.items()}

    polys = []  # (terms, lm, sugar, lm exponents, tail items)
    active = []
    pairs = {}
    basis_cache = [None]

    def add_poly(t, sugar):
        t = monic(t)
        lm = max(t)
        idx = len(polys)
        polys.append((t, lm, sugar, unpack(lm),
                      [(m, c) for m, c in t.items() if m != lm]))
        return idx

    def nf(work):
        basis = basis_cache[0]
        if basis is None:
            basis = [(polys[g][3], polys[g][4]) for g in active]
            basis_cache[0] = basis
        out = {}
        work = dict(work)
        work_get = work.get
        work_pop = work.pop
        while work:
            m = max(work)
            c = work_pop(m)
            me = unpack(m)
            for ge, tail in basis:
                reducible = True
                for a, b in zip(ge, me):
                    if a > b:
                        reducible = False
                        break
                if not reducible:
                    continue
                shift = m - pack(ge)
                for m2, c2 in tail:
                    mm = m2 + shift
                    v = (work_get(mm, 0) - c * c2) % p
                    if v:
                        work[mm] = v
                    else:
                        work_pop(mm, None)
                break
            else:
                out[m] = c
        return out

    def update(h):
        # Gebauer-Moeller, mirroring the rational engine
        lmh, sugh = polys[h][1], polys[h][2]
        cand = [(g, lcm(polys[g][1], lmh)) for g in active]
        kept = []
        for i, (g, t) in enumerate(cand):
            if coprime(polys[g][1], lmh):
                kept.append((g, t, True))
                continue
            skip = False
            for j, (g2, t2) in enumerate(cand):
                if j == i:
                    continue
                if t2 == t:
                    if g2 < g and not coprime(polys[g2][1], lmh):
                        skip = True
                        break
                elif divides(t2, t):
                    skip = True
                    break
            if not skip:
                kept.append((g, t, False))
        for (i, j), (sug, t) in list(pairs.items()):
            if divides(lmh, t) and lcm(polys[i][1], lmh) != t and lcm(polys[j][1], lmh) != t:
                del pairs[(i, j)]
        for g, t, cp in kept:
            if cp:
                continue
            lmg, sugg = polys[g][1], polys[g][2]
            sug = max(sugg + total(t) - total(lmg), sugh + total(t) - total(lmh))
            pairs[(g, h)] = (sug, t)
        active[:] = [g for g in active if not divides(lmh, polys[g][1])]
        active.append(h)
        basis_cache[0] = None

    for s in sorted((g for g in gens if g), key=lambda t: max(t)):
        update(add_poly(s, total(max(s))))

    steps = 0
    while pairs:
        (i, j), (sug, t) = min(pairs.items(),
                               key=lambda kv: (kv[1][0], kv[1][1], kv[0]))
        del pairs[(i, j)]
        steps += 1
        if steps > budget:
            raise ResourceLimit(f"pair budget {budget} exceeded in a slice")
        ti, lmi = polys[i][0], polys[i][1]
        tj, lmj = polys[j][0], polys[j][1]
        si = t - lmi
        sj = t - lmj
        s_terms = {}
        for m, c in ti.items():
            mm = m + si
            s_terms[mm] = (s_terms.get(mm, 0) + c) % p
        for m, c in tj.items():
            mm = m + sj
            v = (s_terms.get(mm, 0) - c) % p
            if v:
                s_terms[mm] = v
            else:
                s_terms.pop(mm, None)
        if not s_terms:
            continue
        r = nf(s_terms)
        if r:
            update(add_poly(r, sug))

    members = [polys[g][0] for g in active]
    out = []
    for i, t in enumerate(members):
        basis = [(unpack(max(o)), [(m, c) for m, c in o.items() if m != max(o)])
                 for j, o in enumerate(members) if j != i]
        work = dict(t)
        red = {}
        while work:
            m = max(work)
            c = work.pop(m)
            me = unpack(m)
            for ge, tail in basis:
                if all(a <= b for a, b in zip(ge, me)):
                    shift = m - pack(ge)
                    for m2, c2 in tail:
                        mm = m2 + shift
                        v = (work.get(mm, 0) - c * c2) % p
                        if v:
                            work[mm] = v
                        else:
                            work.pop(mm, None)
                    break
            else:
                red[m] = c
        if red:
            out.append(monic(red))
    return out


def _slice_univariate(gens3, p, budget):
    """Monic generator of the ideal's intersection with F_p[s], or None."""
    packed = [{_pack3(m): c for m, c in g.items()} for g in gens3 if g]
    gb = _gb_packed(packed, p, _pack3, _unpack3, budget)
    kept = []
    for g in gb:
        if all(m >> 42 == 0 for m in g):
            kept.append({(m & _M21, ((m >> 21) & _M21) - (m & _M21)): c
                         for m, c in g.items()})
    if not kept:
        return None
    packed2 = [{_pack2(m): c for m, c in g.items()} for g in kept]
    gb2 = _gb_packed(packed2, p, _pack2, _unpack2, budget)
    final = [g for g in gb2 if all(m >> 21 == 0 for m in g)]
    if not final:
        return None
    best = min(final, key=max)
    return {m & _M21: c for m, c in best.items()}


# -- chart and slice construction -------------------------------------------------

_PARAM_VARS = ("a", "b", "c")
_SPACE_VARS = ("x", "y", "z")


def _modp_terms(g, p):
    out = {}
    for m, c in g.terms.items():
        out[m] = int(c.numerator) * pow(int(c.denominator), p - 2, p) % p
    return out


def _slice_gens(mp_gens, chart, sym, n1, n2, p):
    """Specialize chart var to 1 and the two non-symbolic space vars to n1, n2.

    Returns generators over the three remaining variables (v1, v2, s) as
    exponent-tuple dicts.
    """
    keep = [i for i in range(3) if i != chart]
    nums = [i for i in range(3, 6) if i != sym]
    out = []
    for d in mp_gens:
        nd = {}
        for m, c in d.items():
            v = c * pow(n1, m[nums[0]], p) * pow(n2, m[nums[1]], p) % p
            key = (m[keep[0]], m[keep[1]], m[sym])
            nd[key] = (nd.get(key, 0) + v) % p
        out.append({k: v for k, v in nd.items() if v})
    return out


# -- interpolation and lifting -----------------------------------------------------


def _solve_modp(matrix, rhs_cols, p):
    """Solve M * X = RHS mod p by Gaussian elimination; M square invertible."""
    n = len(matrix)
    width = len(rhs_cols[0])
    aug = [list(matrix[i]) + list(rhs_cols[i]) for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] % p), None)
        if piv is None:
            raise ChartFailure("interpolation nodes are not unisolvent")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = pow(aug[col][col], p - 2, p)
        aug[col] = [v * inv % p for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [(a - f * b) % p for a, b in zip(aug[r], aug[col])]
    return [row[n:n + width] for row in aug]


def _interpolate(values, ys, zs, degree, p):
    """Coefficients {(dy, dz): c} of the bivariate poly of total degree
    <= `degree` taking `values[(s, t)]` at (ys[s], zs[t]) on the triangle."""
    monoms = [(dy, dz) for dy in range(degree + 1) for dz in range(degree + 1 - dy)]
    nodes = [(s, t) for s in range(degree + 1) for t in range(degree + 1 - s)]
    matrix = [[pow(ys[s], dy, p) * pow(zs[t], dz, p) % p for dy, dz in monoms]
              for s, t in nodes]
    rhs = [[values[(s, t)]] for s, t in nodes]
    sol = _solve_modp(matrix, rhs, p)
    return {m: sol[i][0] for i, m in enumerate(monoms) if sol[i][0]}


def _crt(pairs):
    """Combine [(residue, modulus), ...] into (residue, modulus)."""
    r, m = pairs[0]
    for r2, m2 in pairs[1:]:
        t = (r2 - r) * pow(m % m2, -1, m2) % m2
        r += m * t
        m *= m2
    return r % m, m


def _rational_reconstruct(u, m):
    """n/d with u*d = n mod m and |n|, d <= sqrt(m/2), or None."""
    u %= m
    if u == 0:
        return Fraction(0)
    bound = int((m // 2) ** 0.5)
    r0, r1 = m, u
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if abs(s1) > bound or s1 == 0:
        return None
    from math import gcd as igcd
    if igcd(r1, abs(s1)) != 1:
        return None
    return Fraction(r1, s1) if s1 > 0 else Fraction(-r1, -s1)


# -- main entry --------------------------------------------------------------------


class _SliceFailure(Exception):
    """A node or chart produced an unusable slice; try the next one."""


def _node_values(start, count):
    return list(range(start, start + count))


def _collect_slices(mp_gens, chart, sym, degree, ys, zs, p, budget):
    """Slice polynomials on the full triangle s+t <= degree; column y-values
    that hit a degenerate node are swapped out for fresh ones."""
    values = {}
    spare = itertools.count(ys[-1] + 1)
    for s in range(degree + 1):
        for attempt in range(6):
            column = {}
            for t in range(degree + 1 - s):
                g = _slice_gens(mp_gens, chart, sym, ys[s], zs[t], p)
                sl = _slice_univariate(g, p, budget)
                if sl is None or max(sl) != degree:
                    column = None
                    break
                column[t] = sl
            if column is not None:
                break
            ys[s] = next(spare)
            log.debug("slice column %d degenerate; retrying with y=%d", s, ys[s])
        else:
            raise _SliceFailure("could not find a clean slice column")
        for t, sl in column.items():
            values[(s, t)] = sl
    return values


def _attempt(mp_list, chart, sym, budget):
    """One prime-sequence attempt for a fixed chart/symbolic-variable choice.

    Returns {(ds, dy, dz): Fraction} in (sym, num1, num2) exponent order.
    """
    # probe the slice degree with the first prime
    p0, mp0 = mp_list[0]
    probes = []
    for n1, n2 in ((5, 17), (7, 23), (11, 29)):
        sl = _slice_univariate(_slice_gens(mp0, chart, sym, n1, n2, p0), p0, budget)
        if sl is not None:
            probes.append(max(sl))
    if not probes or len(set(probes)) != 1:
        raise _SliceFailure("inconsistent probe degrees")
    degree = probes[0]
    if degree == 0:
        raise _SliceFailure("slices are constant")

    residues = {}  # monom -> list of (residue, prime)
    used = []
    for p, mp in mp_list:
        ys = _node_values(2, degree + 1)
        zs = _node_values(degree + 40, degree + 1)
        slices = _collect_slices(mp, chart, sym, degree, ys, zs, p, budget)
        coeffs = {}
        for j in range(degree + 1):
            vals = {st: sl.get(j, 0) for st, sl in slices.items()}
            part = _interpolate(vals, ys, zs, degree - j, p) if degree - j >= 0 else {}
            for (dy, dz), c in part.items():
                coeffs[(j, dy, dz)] = c
        # reserve nodes: slices that took no part in the interpolation
        for n1, n2 in ((degree + 3, 3 * degree + 101), (degree + 9, 3 * degree + 113)):
            sl = _slice_univariate(_slice_gens(mp, chart, sym, n1, n2, p), p, budget)
            if sl is None or max(sl) != degree:
                raise _SliceFailure("reserve slice degenerated")
            for j in range(degree + 1):
                pred = 0
                for (jj, dy, dz), c in coeffs.items():
                    if jj == j:
                        pred = (pred + c * pow(n1, dy, p) * pow(n2, dz, p)) % p
                if pred != sl.get(j, 0):
                    raise _SliceFailure("reserve slice mismatch")
        for m in set(residues) | set(coeffs):
            lst = residues.setdefault(m, [(0, q) for q in used])
            lst.append((coeffs.get(m, 0), p))
        used.append(p)

        # try to lift with the primes accumulated so far
        lifted = {}
        ok = True
        for m, rs in residues.items():
            r, mod = _crt(rs)
            q = _rational_reconstruct(r, mod)
            if q is None:
                ok = False
                break
            lifted[m] = q
        if ok:
            return degree, lifted
    raise _SliceFailure("rational reconstruction failed with all primes")


def component_surface(phi_factor, coords, budget=DEFAULT_PAIR_BUDGET):
    """The edge-surface component of one stationary-form factor, by slicing.

    The lifted polynomial is validated against one slice recomputed over the
    rationals before it is returned.
    """
    gens = reduced_line_conditions(phi_factor, coords)
    big = gens[0].ring
    charts = [i for i, n in enumerate(_PARAM_VARS)
              if poly_gcd(phi_factor, phi_factor.ring.gen(n)).total_degree() == 0]
    if not charts:
        raise ChartFailure("every parameter coordinate vanishes on this factor")
    for chart in charts:
        for sym in (3, 4, 5):
            mp_list = [(p, [_modp_terms(g, p) for g in gens]) for p in PRIMES[:3]]
            try:
                degree, lifted = _attempt(mp_list, chart, sym, budget)
            except _SliceFailure as exc:
                log.debug("chart %s / symbolic %s failed: %s",
                          _PARAM_VARS[chart], _SPACE_VARS[sym - 3], exc)
                continue
            poly = _assemble(lifted, sym)
            if _validate_exact(poly, gens, chart, sym, degree, budget):
                return poly
            log.debug("exact slice validation failed on chart %s / %s",
                      _PARAM_VARS[chart], _SPACE_VARS[sym - 3])
    raise ChartFailure("no chart/direction produced a consistent surface")


def _assemble(lifted, sym):
    """Rational coefficient dict -> primitive integer polynomial in XYZ_RING."""
    nums = [i for i in range(3, 6) if i != sym]
    terms = {}
    for (j, dy, dz), q in lifted.items():
        mon = [0, 0, 0]
        mon[sym - 3] = j
        mon[nums[0] - 3] = dy
        mon[nums[1] - 3] = dz
        terms[tuple(mon)] = q
    return XYZ_RING.poly(terms).primitive()


def _validate_exact(poly, gens, chart, sym, degree, budget):
    """Recompute one slice over Q and compare with the lifted polynomial."""
    keep = [i for i in range(3) if i != chart]
    nums = [i for i in range(3, 6) if i != sym]
    node = (19, 173)
    small = Ring(("v1", "v2", "s"))
    images = [None] * 6
    images[chart] = small.one
    images[keep[0]] = small.gen("v1")
    images[keep[1]] = small.gen("v2")
    images[sym] = small.gen("s")
    images[nums[0]] = small.const(node[0])
    images[nums[1]] = small.const(node[1])
    sliced = [g.substitute(small, images) for g in gens]
    out = eliminate(Ideal(small, [g for g in sliced if g]), {"v1", "v2"},
                    budget, stepwise=True)
    cands = [g for g in out.generators if g]
    if len(cands) != 1:
        return False
    got = cands[0].primitive()
    # restrict the lifted polynomial to the same line
    expect = {}
    for m, c in poly.terms.items():
        e = (m[sym - 3],)
        v = c * node[0] ** m[nums[0] - 3] * node[1] ** m[nums[1] - 3]
        expect[e] = expect.get(e, 0) + v
    expected = got.ring.poly({m: c for m, c in expect.items() if c}).primitive()
    return expected == got
