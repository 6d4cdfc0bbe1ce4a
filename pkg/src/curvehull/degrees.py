"""Enumerative invariants: tangency counts, degree formulas, intersection pairing.

Everything here is exact integer arithmetic in closed form; the symbolic
pipelines cross-check against these numbers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

from .errors import InvalidProfile


@dataclass(frozen=True)
class CurveInvariants:
    d: int
    g: int = 0
    n: int = 0
    k: int = 0

    def __post_init__(self):
        for name in ("d", "g", "n", "k"):
            if getattr(self, name) < 0:
                raise InvalidProfile(f"{name} must be nonnegative")
        if self.d <= 3:
            raise InvalidProfile("degree must be at least 4")


@dataclass(frozen=True)
class NSClass:
    """Class cp*C_p + delta*D in the Neron-Severi basis of the symmetric square."""

    cp: int
    delta: int

    def __add__(self, other):
        return NSClass(self.cp + other.cp, self.delta + other.delta)

    def __mul__(self, scalar):
        return NSClass(self.cp * scalar, self.delta * scalar)

    __rmul__ = __mul__


def ns_intersect(u: NSClass, v: NSClass, g: int) -> int:
    """Intersection number with pairing Cp.Cp = Cp.D = 1, D.D = 1-g."""
    return u.cp * v.cp + u.cp * v.delta + u.delta * v.cp + u.delta * v.delta * (1 - g)


def hyperplane_class(d: int) -> NSClass:
    return NSClass(d, -1)


def bisecant_class(d: int, g: int) -> NSClass:
    return NSClass(2 * (d + g - 1), -4)


def dejonquieres(a, n, d, g, s):
    """Count of hyperplanes with tangency profile (a_i with multiplicity n_i).

    The coefficient of prod(t_i^n_i) in
    (1 + sum a_i^2 t_i)^g * (1 + sum a_i t_i)^(d-s-g), expanded exactly.
    """
    a = list(a)
    n = list(n)
    if len(a) != len(n):
        raise InvalidProfile("profile lists must have equal length")
    if any(x <= 0 for x in a) or len(set(a)) != len(a):
        raise InvalidProfile("tangency orders must be distinct and positive")
    if any(x < 0 for x in n):
        raise InvalidProfile("multiplicities must be nonnegative")
    if sum(x * y for x, y in zip(a, n)) != d:
        raise InvalidProfile("profile must sum to the degree")
    if s != d - sum(n):
        raise InvalidProfile("wrong number of free conditions s")
    e = d - s - g
    if e < 0:
        raise InvalidProfile("d - s - g must be nonnegative")

    total = 0
    # split each exponent n_i = p_i (from the genus factor) + q_i
    ranges = [range(min(ni, g) + 1) for ni in n]
    for p in itertools.product(*ranges):
        if sum(p) > g:
            continue
        q = [ni - pi for ni, pi in zip(n, p)]
        if sum(q) > e:
            continue
        term = _multinomial(g, p) * _multinomial(e, q)
        for ai, pi, qi in zip(a, p, q):
            term *= ai ** (2 * pi + qi)
        total += term
    return total


def _multinomial(total, parts):
    out = 1
    rest = total
    for p in parts:
        out *= comb(rest, p)
        rest -= p
    return out


def double_curve_degree(d, g):
    return (2 * d ** 4 + 4 * d ** 3 * g + 2 * d ** 2 * g ** 2 - 18 * d ** 3
            - 14 * d * g ** 2 - 32 * d ** 2 * g + 46 * d ** 2 + 52 * d * g
            + 8 * g ** 2 - 6 * d + 64 * g - 72)


def report(ci: CurveInvariants) -> dict:
    """All closed-form invariants of the edge surface and tritangent count."""
    d, g, n, k = ci.d, ci.g, ci.n, ci.k
    out = {
        "edge_degree": 2 * (d - 3) * (d + g - 1) - 2 * n - 2 * k,
        "tritangent_count": 8 * comb(d + g - 1, 3) - 8 * (d + g - 4) * (d + 2 * g - 2) + 8 * g - 8,
        "dual_degree": 2 * (d + g - 1),
        "stalls": 4 * (d + 3 * g - 3),
        "multiplicity_along_curve": 2 * (d + g - 3),
        "cuspidal_edge_degree": 6 * ((d + g - 3) ** 2 - 4 * g),
        "double_curve_degree": double_curve_degree(d, g),
        "bisecant_curve_genus": 2 * (d + g - 2) * (d + 2 * g - 4) + d - 7 * g - 4,
    }
    if k > 0:
        out["cusp_cone_degree"] = d - 2
    return out


# smooth rational quartics have no double curve; a transcription error in the
# big quartic polynomial above would almost surely break this
assert double_curve_degree(4, 0) == 0
