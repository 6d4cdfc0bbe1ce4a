"""Factorization over Q for the small degrees the pipelines need.

Univariate and homogeneous trivariate inputs only. The heavy lifting is
delegated to sympy's factorization; this module enforces the caps, the
normalization convention (primitive factors, positive leading coefficient)
and the exact round-trip guarantee.
"""

from __future__ import annotations

import sympy

from .errors import DegreeCapExceeded, NotHomogeneous
from .rings import Polynomial, Q, _from_sympy, _to_sympy

DEFAULT_UNIVARIATE_CAP = 128
DEFAULT_HOMOGENEOUS_CAP = 12


class Factorization:
    """unit * product(factor^mult) reproduces the input exactly."""

    def __init__(self, unit, factors):
        self.unit = unit
        self.factors = factors

    def expand(self):
        ring = self.factors[0][0].ring if self.factors else None
        if ring is None:
            raise ValueError("empty factorization has no ring")
        out = ring.const(self.unit)
        for f, mult in self.factors:
            out = out * f ** mult
        return out

    def __iter__(self):
        return iter(self.factors)

    def __repr__(self):
        parts = " * ".join(f"({f})^{m}" for f, m in self.factors)
        return f"{self.unit} * {parts}"


def _normalize_factors(f, raw_factors):
    """Primitive positive-lead factors plus the exact rational unit."""
    ring = f.ring
    factors = []
    for g, mult in raw_factors:
        if g.total_degree() == 0:
            continue
        factors.append((g.primitive(), int(mult)))
    factors.sort(key=lambda fm: (fm[0].total_degree(),
                                 ring.key(fm[0].leading_monomial()),
                                 sorted(fm[0].terms)))
    prod = ring.one
    for g, mult in factors:
        prod = prod * g ** mult
    lm = f.leading_monomial()
    unit = f.terms[lm] / prod.terms[lm]
    check = prod * unit
    if check != f:
        raise AssertionError("factorization does not reproduce input")
    return Factorization(unit, factors)


def factor_univariate(f: Polynomial, degree_cap=DEFAULT_UNIVARIATE_CAP) -> Factorization:
    """Complete irreducible factorization over Q of a one-variable polynomial."""
    used = [v for v, d in zip(f.ring.variables,
                              (f.degree_in(v) for v in f.ring.variables)) if d > 0]
    if len(used) != 1:
        raise ValueError(f"expected one active variable, found {used}")
    d = f.degree_in(used[0])
    if d > degree_cap:
        raise DegreeCapExceeded(f"degree {d} exceeds cap {degree_cap}")
    return _normalize_factors(f, _sympy_factors(f))


def factor_homogeneous(f: Polynomial, degree_cap=DEFAULT_HOMOGENEOUS_CAP) -> Factorization:
    """Irreducible factorization of a homogeneous form in at most 3 variables."""
    if not f.is_homogeneous():
        raise NotHomogeneous("input form is not homogeneous")
    used = [v for v in f.ring.variables if f.degree_in(v) > 0]
    if len(used) > 3:
        raise ValueError(f"at most 3 active variables supported, found {len(used)}")
    d = f.total_degree()
    if d > degree_cap:
        raise DegreeCapExceeded(f"degree {d} exceeds cap {degree_cap}")
    fac = _normalize_factors(f, _sympy_factors(f))
    for g, _ in fac.factors:
        if not g.is_homogeneous():
            raise AssertionError("factor of a homogeneous form must be homogeneous")
    return fac


def _sympy_factors(f):
    pf, syms = _to_sympy(f)
    _, parts = sympy.factor_list(pf)
    return [(_from_sympy(sympy.Poly(g, *syms, domain="QQ"), f.ring), m) for g, m in parts]
