"""Groebner bases, elimination, saturation, and zero-dimensional machinery.

The engine is a Buchberger loop with Gebauer-Moeller pair elimination and
sugar-based selection. Everything is deterministic: pair selection breaks
ties by (sugar, order key of the lcm, pair indices), and reduced bases are
normalized to integer content 1 with positive leading coefficient, so a given
ideal and order always yield the same basis.
"""

from __future__ import annotations

import heapq
import logging

from .errors import NotZeroDimensional, ResourceLimit
from .orders import GREVLEX, Block, negate_key
from .rings import Polynomial, Q, QZERO, Ring

log = logging.getLogger("curvehull")

DEFAULT_PAIR_BUDGET = 500_000


class Ideal:
    """Generator list in a fixed ring; zero generators are stripped."""

    def __init__(self, ring, generators):
        self.ring = ring
        gens = []
        for g in generators:
            if g.ring != ring:
                raise ValueError("generator from a different ring")
            if g:
                gens.append(g)
        self.generators = gens

    def __repr__(self):
        return f"<ideal with {len(self.generators)} gens in {','.join(self.ring.variables)}>"

    def __eq__(self, other):
        # syntactic equality only; use groebner bases for semantic comparison
        return (
            isinstance(other, Ideal)
            and self.ring == other.ring
            and self.generators == other.generators
        )


class GroebnerBasis:
    def __init__(self, ideal, order, elements):
        self.ideal = ideal
        self.order = order
        self.elements = elements

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def normal_form(self, f):
        return _nf_poly(f, self.elements)

    def contains(self, f):
        return not self.normal_form(f)


class QuotientAlgebra:
    """Standard-monomial basis of a zero-dimensional quotient ring."""

    def __init__(self, gb, basis):
        self.gb = gb
        self.basis = basis
        self.dimension = len(basis)


# -- monomial helpers ---------------------------------------------------------


def _lcm(m1, m2):
    return tuple(a if a >= b else b for a, b in zip(m1, m2))


def _divides(m1, m2):
    return all(a <= b for a, b in zip(m1, m2))


def _coprime(m1, m2):
    return all(a == 0 or b == 0 for a, b in zip(m1, m2))


# -- reduction ----------------------------------------------------------------


def _nf_terms(terms, basis_data, ring):
    """Normal form of a term dict against [(lm, lc, tail_items), ...]."""
    key = ring.key
    work = dict(terms)
    heap = [(negate_key(key(m)), m) for m in work]
    heapq.heapify(heap)
    queued = set(work)
    out = {}
    while heap:
        _, m = heapq.heappop(heap)
        queued.discard(m)
        c = work.get(m)
        if not c:
            work.pop(m, None)
            continue
        del work[m]
        for lm, lc, tail in basis_data:
            if all(a >= b for a, b in zip(m, lm)):
                ratio = c / lc
                for m2, c2 in tail:
                    mm = tuple(map(int.__add__, m2, m))
                    mm = tuple(mm[i] - lm[i] for i in range(len(lm)))
                    s = work.get(mm, QZERO) - ratio * c2
                    if s:
                        work[mm] = s
                        if mm not in queued:
                            heapq.heappush(heap, (negate_key(key(mm)), mm))
                            queued.add(mm)
                    else:
                        work.pop(mm, None)
                break
        else:
            out[m] = c
    return out


def _basis_entry(p, ring):
    lm = p.leading_monomial()
    return (lm, p.terms[lm], [(m, c) for m, c in p.terms.items() if m != lm])


def _nf_poly(f, basis_polys):
    if not f:
        return f
    ring = f.ring
    data = [_basis_entry(g, ring) for g in basis_polys if g]
    return Polynomial(ring, _nf_terms(f.terms, data, ring))


# -- Buchberger ---------------------------------------------------------------


def _buchberger(gens, ring, budget, grade_weights=None, grade_cap=None):
    """Reduced Groebner basis of `gens` under `ring.order`.

    With `grade_weights`/`grade_cap` set, the input must be homogeneous for
    the weighted grading; S-pairs whose lcm exceeds the cap are discarded,
    which yields every basis element of grade at most the cap (a truncated
    basis of the graded ideal) at a fraction of the cost.
    """
    key = ring.key

    def grade(m):
        return sum(w * e for w, e in zip(grade_weights, m))

    if grade_cap is not None:
        for g in gens:
            if g and len({grade(m) for m in g.terms}) != 1:
                raise ValueError("graded truncation requires graded-homogeneous input")

    polys = []  # all basis candidates ever added: (poly, lm, sugar)
    active = []  # indices of current basis members

    def add_poly(p, sugar):
        p = p.primitive()
        idx = len(polys)
        polys.append((p, p.leading_monomial(), sugar))
        return idx

    seeds = sorted(
        (g.primitive() for g in gens if g),
        key=lambda p: (key(p.leading_monomial()), sorted(p.terms)),
    )
    if not seeds:
        return []

    pairs = {}  # (i, j) -> (sugar, lcm monom)

    def update(h):
        # Gebauer-Moeller update with new element index h
        ph, lmh, sugh = polys[h]
        cand = []
        for g in active:
            lmg = polys[g][1]
            cand.append((g, _lcm(lmg, lmh)))
        # criterion M/F: keep only minimal lcms (coprime pairs survive to B-check)
        kept = []
        for i, (g, t) in enumerate(cand):
            lmg = polys[g][1]
            if _coprime(lmg, lmh):
                kept.append((g, t, True))
                continue
            skip = False
            for j, (g2, t2) in enumerate(cand):
                if j == i:
                    continue
                if t2 == t:
                    # among equal lcms keep the lowest index pair
                    if g2 < g and not _coprime(polys[g2][1], lmh):
                        skip = True
                        break
                elif _divides(t2, t):
                    skip = True
                    break
            if not skip:
                kept.append((g, t, False))
        # criterion B: prune old pairs whose lcm is strictly reducible by lmh
        for (i, j), (sug, t) in list(pairs.items()):
            if _divides(lmh, t) and _lcm(polys[i][1], lmh) != t and _lcm(polys[j][1], lmh) != t:
                del pairs[(i, j)]
        # install surviving new pairs, dropping coprime ones (Buchberger 1)
        for g, t, coprime in kept:
            if coprime:
                continue
            if grade_cap is not None and grade(t) > grade_cap:
                continue
            lmg, sugg = polys[g][1], polys[g][2]
            sug = max(sugg + sum(t) - sum(lmg), sugh + sum(t) - sum(lmh))
            pairs[(g, h)] = (sug, t)
        # drop active members with leading monomial reducible by lmh
        active[:] = [g for g in active if not _divides(lmh, polys[g][1])]
        active.append(h)

    for s in seeds:
        update(add_poly(s, s.total_degree()))

    steps = 0
    while pairs:
        (i, j), (sug, t) = min(
            pairs.items(), key=lambda kv: (kv[1][0], key(kv[1][1]), kv[0])
        )
        del pairs[(i, j)]
        steps += 1
        if steps > budget:
            raise ResourceLimit(f"pair budget {budget} exceeded")
        if steps % 500 == 0:
            log.debug("groebner: %d pairs processed, %d active, %d queued",
                      steps, len(active), len(pairs))
        pi, lmi, _ = polys[i]
        pj, lmj, _ = polys[j]
        # S-polynomial
        si = tuple(map(int.__sub__, t, lmi))
        sj = tuple(map(int.__sub__, t, lmj))
        ci = pi.terms[lmi]
        cj = pj.terms[lmj]
        s_terms = {}
        for m, c in pi.terms.items():
            mm = tuple(map(int.__add__, m, si))
            s_terms[mm] = s_terms.get(mm, QZERO) + c / ci
        for m, c in pj.terms.items():
            mm = tuple(map(int.__add__, m, sj))
            v = s_terms.get(mm, QZERO) - c / cj
            if v:
                s_terms[mm] = v
            else:
                s_terms.pop(mm, None)
        if not s_terms:
            continue
        basis_data = [(polys[g][1], polys[g][0].terms[polys[g][1]],
                       [(m, c) for m, c in polys[g][0].terms.items() if m != polys[g][1]])
                      for g in active]
        r = _nf_terms(s_terms, basis_data, ring)
        if r:
            update(add_poly(Polynomial(ring, r), sug))

    # inter-reduce to the unique reduced basis
    result = []
    members = [polys[g][0] for g in active]
    for i, p in enumerate(members):
        others = members[:i] + members[i + 1:]
        r = _nf_poly(p, others)
        if r:
            result.append(r.primitive())
    result.sort(key=lambda p: key(p.leading_monomial()), reverse=True)
    return result


def groebner_basis(ideal, order=None, budget=DEFAULT_PAIR_BUDGET):
    """Reduced Groebner basis of `ideal` under `order` (default: ring order)."""
    ring = ideal.ring
    if order is not None and order != ring.order:
        ring = ring.with_order(order)
        gens = [Polynomial(ring, g.terms) for g in ideal.generators]
        ideal = Ideal(ring, gens)
    elements = _buchberger(ideal.generators, ring, budget)
    return GroebnerBasis(ideal, ring.order, elements)


# -- elimination / saturation ---------------------------------------------------


def eliminate(ideal, drop_vars, budget=DEFAULT_PAIR_BUDGET, stepwise=False,
              grade_vars=None, grade_cap=None):
    """Generators of the ideal's intersection with the subring without `drop_vars`.

    With `stepwise` the variables are eliminated one at a time, which often
    keeps the intermediate bases far smaller than one big block elimination.
    `grade_vars`/`grade_cap` enable graded S-pair truncation (the input must
    be homogeneous in `grade_vars`); the output is then only guaranteed to
    contain the elimination-ideal elements of grade at most the cap.
    """
    drop = set(drop_vars)
    unknown = drop - set(ideal.ring.variables)
    if unknown:
        raise ValueError(f"variables {sorted(unknown)} not in ring")
    if stepwise and len(drop) > 1:
        out = ideal
        for v in sorted(drop):
            out = eliminate(out, {v}, budget,
                            grade_vars=grade_vars, grade_cap=grade_cap)
        return out
    front = [v for v in ideal.ring.variables if v in drop]
    back = [v for v in ideal.ring.variables if v not in drop]
    work_ring = Ring(tuple(front + back), Block(len(front)))
    gens = [g.rename(work_ring) for g in ideal.generators]
    weights = None
    if grade_cap is not None:
        weights = tuple(1 if v in grade_vars else 0 for v in work_ring.variables)
    gb = _buchberger(gens, work_ring, budget,
                     grade_weights=weights, grade_cap=grade_cap)
    small = Ring(tuple(back), GREVLEX)
    kept = []
    nfront = len(front)
    for g in gb:
        if all(all(e == 0 for e in m[:nfront]) for m in g.terms):
            kept.append(g.rename(small))
    return Ideal(small, kept)


def _fresh_var(ring, base="t"):
    name = base
    i = 0
    while name in ring.variables:
        i += 1
        name = f"{base}{i}_"
    return name


def saturate(ideal, f, budget=DEFAULT_PAIR_BUDGET):
    """(ideal : f^infinity) via the Rabinowitsch trick."""
    if not f:
        raise ValueError("saturation by zero")
    ring = ideal.ring
    t = _fresh_var(ring, "t_sat")
    big = Ring((t,) + ring.variables, Block(1))
    gens = [g.rename(big) for g in ideal.generators]
    gens.append(big.gen(t) * f.rename(big) - big.one)
    elim = eliminate(Ideal(big, gens), {t}, budget)
    return Ideal(ring, [g.rename(ring) for g in elim.generators])


def intersect(i, j, budget=DEFAULT_PAIR_BUDGET):
    """Ideal intersection via the t*i + (1-t)*j elimination trick."""
    if i.ring != j.ring:
        raise ValueError("ideals from different rings")
    ring = i.ring
    t = _fresh_var(ring, "t_int")
    big = Ring((t,) + ring.variables, Block(1))
    tv = big.gen(t)
    gens = [tv * g.rename(big) for g in i.generators]
    gens += [(big.one - tv) * g.rename(big) for g in j.generators]
    elim = eliminate(Ideal(big, gens), {t}, budget)
    return Ideal(ring, [g.rename(ring) for g in elim.generators])


def saturate_by_ideal(i, j, budget=DEFAULT_PAIR_BUDGET, fast_path=True):
    """(i : j^infinity) = intersection of (i : g^infinity) over generators g of j.

    The fast path saturates by one fixed Q-linear combination of the
    generators and verifies the candidate via bounded power membership
    against i; on any failure it falls back to the exact route.
    """
    if not j.generators:
        raise ValueError("saturation by the zero ideal")
    if i.ring != j.ring:
        raise ValueError("ideals from different rings")
    gens = j.generators
    if len(gens) == 1:
        return saturate(i, gens[0], budget)

    if fast_path:
        # deterministic "random" combination: small primes as weights
        weights = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
        combo = i.ring.zero
        for w, g in zip(weights, gens):
            combo = combo + g * w
        candidate = saturate(i, combo, budget)
        if _verify_saturation(i, j, candidate, budget):
            return candidate
        log.debug("saturation fast path failed verification; using exact route")

    result = saturate(i, gens[0], budget)
    for g in gens[1:]:
        result = intersect(result, saturate(i, g, budget), budget)
    return result


def _verify_saturation(i, j, candidate, budget, max_power=8):
    """Check candidate subset of (i : g^inf) for every generator g of j.

    Sound but incomplete: membership of f*g^n in i for some n <= max_power
    proves f in (i : g^inf); if no power works we report failure and the
    caller falls back.  Candidate always contains the true saturation, so
    success proves equality.
    """
    gb = groebner_basis(i, budget=budget)
    for f in candidate.generators:
        for g in j.generators:
            prod = f
            ok = False
            for _ in range(max_power):
                prod = prod * g
                if gb.contains(prod):
                    ok = True
                    break
            if not ok:
                return False
    return True


# -- zero-dimensional machinery ---------------------------------------------------


def quotient_algebra(gb):
    """Standard-monomial basis of R/I for a zero-dimensional ideal."""
    ring = gb.ideal.ring
    lms = [g.leading_monomial() for g in gb.elements]
    if any(sum(m) == 0 for m in lms):
        return QuotientAlgebra(gb, [])
    # zero-dimensionality: every variable needs a pure-power leading monomial
    for i in range(ring.nvars):
        if not any(all(e == 0 for k, e in enumerate(m) if k != i) and m[i] > 0 for m in lms):
            raise NotZeroDimensional(
                f"no pure power of {ring.variables[i]} among leading terms"
            )
    zero = (0,) * ring.nvars
    seen = {zero}
    queue = [zero]
    basis = []
    while queue:
        m = queue.pop()
        if any(_divides(lm, m) for lm in lms):
            continue
        basis.append(m)
        for i in range(ring.nvars):
            m2 = m[:i] + (m[i] + 1,) + m[i + 1:]
            if m2 not in seen:
                seen.add(m2)
                queue.append(m2)
    basis.sort(key=ring.key)
    return QuotientAlgebra(gb, basis)


def mult_matrix(qa, var):
    """Matrix of multiplication by `var` on the quotient, columns over qa.basis."""
    ring = qa.gb.ideal.ring
    i = ring.variables.index(var)
    index = {m: k for k, m in enumerate(qa.basis)}
    n = qa.dimension
    cols = []
    data = [_basis_entry(g, ring) for g in qa.gb.elements]
    for m in qa.basis:
        m2 = m[:i] + (m[i] + 1,) + m[i + 1:]
        nf = _nf_terms({m2: Q(1)}, data, ring)
        col = [QZERO] * n
        for mm, c in nf.items():
            col[index[mm]] = c
        cols.append(col)
    # rows: entry [r][c] = coefficient of basis[r] in var*basis[c]
    return [[cols[c][r] for c in range(n)] for r in range(n)]
