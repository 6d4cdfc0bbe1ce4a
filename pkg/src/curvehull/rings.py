"""Exact sparse multivariate polynomial arithmetic over Q.

Polynomials live in a named `Ring` with a monomial order and are stored as a
dict mapping exponent tuples to nonzero rationals. Everything is immutable in
practice: operations return fresh objects and never mutate their inputs.
"""

from __future__ import annotations

import heapq
import math
import re

from .errors import DegreeZero, NonSquare, NotDivisible, ParseError
from .orders import GREVLEX, Block, Grevlex, Lex, MonomialOrder, negate_key

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover
    from fractions import Fraction as Q

QONE = Q(1)
QZERO = Q(0)


def rational_from_string(s):
    """Parse 'p' or 'p/q' into an exact rational."""
    s = s.strip()
    try:
        return Q(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {s!r}") from exc


def rational_to_string(q):
    q = Q(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class Ring:
    """A polynomial ring: an ordered list of variable names plus a monomial order."""

    def __init__(self, variables, order: MonomialOrder = GREVLEX):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError("duplicate variable names")
        if isinstance(order, Block) and order.splits and order.splits[-1] >= len(variables):
            raise ValueError("block split outside variable range")
        self.variables = variables
        self.order = order
        self.nvars = len(variables)
        self._key_cache = {}
        self._zero_monom = (0,) * self.nvars

    # -- identity ---------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Ring)
            and self.variables == other.variables
            and self.order == other.order
        )

    def __hash__(self):
        return hash((self.variables, self.order))

    def __repr__(self):
        return f"Ring({','.join(self.variables)}; {self.order!r})"

    # -- monomial order ----------------------------------------------------

    def key(self, monom):
        k = self._key_cache.get(monom)
        if k is None:
            k = self.order.key(monom)
            self._key_cache[monom] = k
        return k

    def with_order(self, order):
        return Ring(self.variables, order)

    def subring(self, variables, order=None):
        return Ring(variables, order or GREVLEX)

    # -- constructors ------------------------------------------------------

    def poly(self, terms):
        return Polynomial(self, {m: Q(c) for m, c in terms.items() if c})

    @property
    def zero(self):
        return Polynomial(self, {})

    @property
    def one(self):
        return Polynomial(self, {self._zero_monom: QONE})

    def const(self, c):
        c = Q(c)
        return Polynomial(self, {self._zero_monom: c} if c else {})

    def gen(self, name):
        i = self.variables.index(name)
        monom = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Polynomial(self, {monom: QONE})

    @property
    def gens(self):
        return tuple(self.gen(v) for v in self.variables)

    # -- text grammar ------------------------------------------------------

    _TERM_RE = re.compile(
        r"""(?P<coeff>\d+(?:/\d+)?)?      # optional p or p/q
            (?P<vars>(?:\*?[A-Za-z_][A-Za-z_0-9]*(?:\^\d+)?)*)$""",
        re.VERBOSE,
    )

    def parse(self, text):
        """Parse the canonical text grammar, e.g. '1024*x^16-3/2*x*y+z^8'."""
        text = text.replace(" ", "").replace("**", "^")
        if not text:
            raise ParseError("empty polynomial text")
        if text == "0":
            return self.zero
        # split into signed terms
        chunks = re.findall(r"[+-]?[^+-]+", text)
        if "".join(chunks) != text:
            raise ParseError(f"cannot tokenize {text!r}")
        terms = {}
        index = {v: i for i, v in enumerate(self.variables)}
        for chunk in chunks:
            sign = QONE
            body = chunk
            if body[0] in "+-":
                if body[0] == "-":
                    sign = -QONE
                body = body[1:]
            m = self._TERM_RE.match(body)
            if not m or (not m.group("coeff") and not m.group("vars")):
                raise ParseError(f"bad term {chunk!r}")
            coeff = sign * (Q(m.group("coeff")) if m.group("coeff") else QONE)
            exps = [0] * self.nvars
            for part in filter(None, m.group("vars").split("*")):
                if "^" in part:
                    name, e = part.split("^")
                    e = int(e)
                else:
                    name, e = part, 1
                if name not in index:
                    raise ParseError(f"unknown variable {name!r} in {chunk!r}")
                exps[index[name]] += e
            monom = tuple(exps)
            terms[monom] = terms.get(monom, QZERO) + coeff
        return self.poly(terms)


class Polynomial:
    """Sparse polynomial: exponent-tuple -> nonzero rational coefficient."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms

    # -- basic queries -----------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, int):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or set(self.terms) == {self.ring._zero_monom}

    def constant_value(self):
        return self.terms.get(self.ring._zero_monom, QZERO)

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def degree_in(self, var):
        i = self.ring.variables.index(var) if isinstance(var, str) else var
        if not self.terms:
            return -1
        return max(m[i] for m in self.terms)

    def is_homogeneous(self):
        degs = {sum(m) for m in self.terms}
        return len(degs) <= 1

    def variables_used(self):
        used = set()
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    used.add(self.ring.variables[i])
        return used

    def leading_monomial(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self.terms, key=self.ring.key)

    def leading_coefficient(self):
        return self.terms[self.leading_monomial()]

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: self.ring.key(t[0]), reverse=True)

    def coefficient(self, monom):
        return self.terms.get(tuple(monom), QZERO)

    def monomials(self):
        return list(self.terms)

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other):
        if self.ring != other.ring:
            raise ValueError("polynomials from different rings")

    def __add__(self, other):
        if isinstance(other, (int, type(QONE))):
            other = self.ring.const(other)
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, QZERO) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, type(QONE))):
            other = self.ring.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, type(QONE))):
            c = Q(other)
            if not c:
                return self.ring.zero
            return Polynomial(self.ring, {m: cc * c for m, cc in self.terms.items()})
        self._check(other)
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = tuple(map(int.__add__, m1, m2))
                s = out.get(m, QZERO) + c1 * c2
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def derivative(self, var):
        i = self.ring.variables.index(var) if isinstance(var, str) else var
        out = {}
        for m, c in self.terms.items():
            if m[i]:
                m2 = m[:i] + (m[i] - 1,) + m[i + 1:]
                s = out.get(m2, QZERO) + c * m[i]
                if s:
                    out[m2] = s
                else:
                    del out[m2]
        return Polynomial(self.ring, out)

    # -- normalization -------------------------------------------------------

    def content(self):
        """Positive rational c with self/c integer-primitive, 0 for zero poly."""
        if not self.terms:
            return QZERO
        num = 0
        den = 1
        for c in self.terms.values():
            num = math.gcd(num, int(c.numerator))
            d = int(c.denominator)
            den = den * d // math.gcd(den, d)
        return Q(num, den)

    def primitive(self):
        """Integer content 1 and positive leading coefficient under the ring order."""
        if not self.terms:
            return self
        c = self.content()
        if self.leading_coefficient() < 0:
            c = -c
        return Polynomial(self.ring, {m: cc / c for m, cc in self.terms.items()})

    def monic(self):
        if not self.terms:
            return self
        lc = self.leading_coefficient()
        return Polynomial(self.ring, {m: cc / lc for m, cc in self.terms.items()})

    # -- mapping between rings -----------------------------------------------

    def substitute(self, ring, images):
        """Evaluate the polynomial at `images` (one target polynomial per variable)."""
        if len(images) != self.ring.nvars:
            raise ValueError("one image per variable required")
        pow_cache = [{} for _ in images]

        def power(i, e):
            p = pow_cache[i].get(e)
            if p is None:
                p = images[i] ** e
                pow_cache[i][e] = p
            return p

        out = ring.zero
        for m, c in self.terms.items():
            t = ring.const(c)
            for i, e in enumerate(m):
                if e:
                    t = t * power(i, e)
            out = out + t
        return out

    def rename(self, ring, mapping=None):
        """Move to another ring by variable name (default: same names)."""
        if mapping is None:
            mapping = {v: v for v in self.ring.variables}
        index = {v: ring.variables.index(mapping[v]) if mapping.get(v) in ring.variables else None
                 for v in self.ring.variables}
        out = {}
        for m, c in self.terms.items():
            exps = [0] * ring.nvars
            for i, e in enumerate(m):
                if not e:
                    continue
                j = index[self.ring.variables[i]]
                if j is None:
                    raise ValueError(f"variable {self.ring.variables[i]} not in target ring")
                exps[j] += e
            m2 = tuple(exps)
            s = out.get(m2, QZERO) + c
            if s:
                out[m2] = s
            else:
                del out[m2]
        return Polynomial(ring, out)

    def evaluate(self, values):
        """Exact evaluation at a full point (list of rationals)."""
        total = QZERO
        for m, c in self.terms.items():
            t = c
            for i, e in enumerate(m):
                if e:
                    t = t * Q(values[i]) ** e
            total += t
        return total

    def evaluate_float(self, values):
        total = 0.0
        for m, c in self.terms.items():
            t = float(c)
            for i, e in enumerate(m):
                if e:
                    t *= float(values[i]) ** e
            total += t
        return total

    # -- text ------------------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        # canonical output is always grevlex-sorted regardless of the ring order
        items = sorted(self.terms.items(), key=lambda t: GREVLEX.key(t[0]), reverse=True)
        parts = []
        for m, c in items:
            factors = []
            for name, e in zip(self.ring.variables, m):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mag = abs(c)
            if not factors:
                body = rational_to_string(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = rational_to_string(mag) + "*" + "*".join(factors)
            parts.append(("-" if c < 0 else "+") + body)
        out = "".join(parts)
        return out[1:] if out[0] == "+" else out

    def __repr__(self):
        return f"<poly {self} in {','.join(self.ring.variables)}>"


# -- division ------------------------------------------------------------------


def _heap_divide(f, divisors, want_quotients=False):
    """Multivariate division of f by a list of divisors.

    Returns (quotients, remainder); quotients is None unless requested.
    Uses a lazy max-heap over the dividend's monomials so each step finds the
    current leading term in O(log n) instead of a full scan.
    """
    ring = f.ring
    key = ring.key
    div_data = []
    for g in divisors:
        if not g:
            raise ZeroDivisionError("division by zero polynomial")
        lm = g.leading_monomial()
        lc = g.terms[lm]
        tail = [(m, c) for m, c in g.terms.items() if m != lm]
        div_data.append((lm, lc, tail))

    work = dict(f.terms)
    heap = [(negate_key(key(m)), m) for m in work]
    heapq.heapify(heap)
    queued = set(work)
    remainder = {}
    quotients = [{} for _ in divisors] if want_quotients else None

    while heap:
        _, m = heapq.heappop(heap)
        queued.discard(m)
        c = work.get(m)
        if not c:
            work.pop(m, None)
            continue
        for gi, (lm, lc, tail) in enumerate(div_data):
            if all(a >= b for a, b in zip(m, lm)):
                shift = tuple(map(int.__sub__, m, lm))
                ratio = c / lc
                del work[m]
                if want_quotients:
                    qd = quotients[gi]
                    qd[shift] = qd.get(shift, QZERO) + ratio
                for m2, c2 in tail:
                    mm = tuple(map(int.__add__, m2, shift))
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
            remainder[m] = c
            del work[m]

    if want_quotients:
        quotients = [Polynomial(ring, {m: c for m, c in qd.items() if c}) for qd in quotients]
    return quotients, Polynomial(ring, remainder)


def normal_form(f, divisors):
    """Remainder of f under multivariate division by `divisors`."""
    if not f:
        return f
    _, r = _heap_divide(f, [g for g in divisors if g])
    return r


def exact_divide(f, g):
    """Exact quotient f/g; raises NotDivisible if the division has a remainder."""
    if not g:
        raise ZeroDivisionError("division by zero polynomial")
    if f.ring != g.ring:
        raise ValueError("polynomials from different rings")
    if not f:
        return f
    (q,), r = _heap_divide(f, [g], want_quotients=True)
    if r:
        raise NotDivisible(f"no exact quotient (remainder has {len(r.terms)} terms)")
    return q


# -- gcd / squarefree (backed by sympy's polynomial engine) ----------------------


def _to_sympy(f):
    import sympy

    syms = sympy.symbols(f.ring.variables) if f.ring.nvars > 1 else (sympy.Symbol(f.ring.variables[0]),)
    if not isinstance(syms, tuple):
        syms = (syms,)
    rep = {m: sympy.Rational(int(c.numerator), int(c.denominator)) for m, c in f.terms.items()}
    return sympy.Poly.from_dict(rep, *syms, domain="QQ"), syms


def _from_sympy(p, ring):
    out = {}
    for m, c in p.rep.to_dict().items():
        out[tuple(int(e) for e in m)] = Q(int(c.numerator), int(c.denominator))
    return Polynomial(ring, out)


def gcd(f, g):
    """Primitive gcd, normalized to content 1 and positive leading coefficient."""
    if f.ring != g.ring:
        raise ValueError("polynomials from different rings")
    if not f and not g:
        return f.ring.zero
    if not f:
        return g.primitive()
    if not g:
        return f.primitive()
    import sympy

    pf, _ = _to_sympy(f)
    pg, _ = _to_sympy(g)
    return _from_sympy(pf.gcd(pg), f.ring).primitive()


def squarefree_part(f):
    """Product of the distinct irreducible factors of f, to the first power."""
    if not f:
        raise ValueError("squarefree part of zero")
    result = f
    for i in range(f.ring.nvars):
        d = result.derivative(i)
        if d:
            result = exact_divide(result, gcd(result, d))
    return result.primitive()


# -- matrices --------------------------------------------------------------------


class PolyMatrix:
    """Rectangular matrix of polynomials over one shared ring."""

    def __init__(self, entries):
        if not entries or not entries[0]:
            raise ValueError("empty matrix")
        self.entries = [list(row) for row in entries]
        self.rows = len(entries)
        self.cols = len(entries[0])
        ring = entries[0][0].ring
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError("ragged matrix")
            for e in row:
                if e.ring != ring:
                    raise ValueError("entries from different rings")
        self.ring = ring

    def __getitem__(self, ij):
        return self.entries[ij[0]][ij[1]]

    def minor_det(self, rows, cols, method="bareiss"):
        sub = [[self.entries[r][c] for c in cols] for r in rows]
        return determinant(PolyMatrix(sub), method=method)


def _det_cofactor(entries, ring):
    n = len(entries)
    if n == 1:
        return entries[0][0]
    total = ring.zero
    sign = 1
    for j in range(n):
        a = entries[0][j]
        if a:
            sub = [row[:j] + row[j + 1:] for row in entries[1:]]
            term = a * _det_cofactor(sub, ring)
            total = total + (term if sign > 0 else -term)
        sign = -sign
    return total


def determinant(m, method="bareiss"):
    """Exact determinant; fraction-free Bareiss by default."""
    if m.rows != m.cols:
        raise NonSquare(f"{m.rows}x{m.cols} matrix")
    ring = m.ring
    n = m.rows
    if method == "cofactor" or n <= 2:
        return _det_cofactor(m.entries, ring)
    if method != "bareiss":
        raise ValueError(f"unknown method {method!r}")
    a = [row[:] for row in m.entries]
    sign = 1
    prev = ring.one
    for k in range(n - 1):
        if not a[k][k]:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return ring.zero
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * pivot - a[i][k] * a[k][j]
                a[i][j] = num if k == 0 else exact_divide(num, prev)
        prev = pivot
    d = a[n - 1][n - 1]
    return d if sign > 0 else -d


def resultant_univariate(f, g, var):
    """Resultant with respect to `var` as the Sylvester-matrix determinant."""
    ring = f.ring
    if g.ring != ring:
        raise ValueError("polynomials from different rings")
    i = ring.variables.index(var) if isinstance(var, str) else var
    n, m = f.degree_in(i), g.degree_in(i)
    if n <= 0 or m <= 0:
        raise DegreeZero(f"inputs must have positive degree in {ring.variables[i]}")

    def coeffs(p, d):
        # coefficient of var^j as a polynomial in the remaining ring, kept in `ring`
        out = [dict() for _ in range(d + 1)]
        for mon, c in p.terms.items():
            m2 = mon[:i] + (0,) + mon[i + 1:]
            out[mon[i]][m2] = out[mon[i]].get(m2, QZERO) + c
        return [Polynomial(ring, {mm: cc for mm, cc in t.items() if cc}) for t in out]

    fc = coeffs(f, n)
    gc = coeffs(g, m)
    size = n + m
    zero = ring.zero
    rows = []
    for r in range(m):
        row = [zero] * size
        for j in range(n + 1):
            row[r + j] = fc[n - j]
        rows.append(row)
    for r in range(n):
        row = [zero] * size
        for j in range(m + 1):
            row[r + j] = gc[m - j]
        rows.append(row)
    return determinant(PolyMatrix(rows))
