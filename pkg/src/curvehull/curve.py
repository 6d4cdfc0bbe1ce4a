"""Curve ingestion: trig specs to projective binary forms, cusp detection.

A trigonometric curve (sums of cos(j*theta), sin(j*theta) per coordinate)
becomes a tuple of four binary forms (F0:F1:F2:F3) in (x0,x1) through the
rational parametrization of the circle. The half-angle substitution

    cos(theta) = (x0^2 - x1^2) / (x0^2 + x1^2)
    sin(theta) = 2*x0*x1 / (x0^2 + x1^2)

turns frequency j into a pair of binary forms of degree 2j over the common
denominator (x0^2 + x1^2)^j, expanded by the angle-addition recurrence.
"""

from __future__ import annotations

import json

from .errors import DegenerateSpec, DegreeZero, ParseError
from .rings import (
    PolyMatrix,
    Q,
    Ring,
    gcd,
    rational_from_string,
    squarefree_part,
)

BINARY_RING = Ring(("x0", "x1"))


class TrigCurveSpec:
    """One rational trig polynomial per coordinate, all truncated at frequency m."""

    def __init__(self, m, const, cos_coeffs, sin_coeffs):
        self.m = int(m)
        self.const = [Q(c) for c in const]
        self.cos_coeffs = [[Q(c) for c in row] for row in cos_coeffs]
        self.sin_coeffs = [[Q(c) for c in row] for row in sin_coeffs]
        if len(self.const) != 3 or len(self.cos_coeffs) != 3 or len(self.sin_coeffs) != 3:
            raise DegenerateSpec("expected three coordinates")
        for row in self.cos_coeffs + self.sin_coeffs:
            if len(row) != self.m:
                raise DegenerateSpec(f"coefficient lists must have length m={self.m}")
        if self.m < 2:
            raise DegenerateSpec("curve degree 2m must be at least 4")
        if all(not self.cos_coeffs[c][-1] and not self.sin_coeffs[c][-1] for c in range(3)):
            raise DegenerateSpec("top frequency m must appear in some coordinate")

    @property
    def degree(self):
        return 2 * self.m

    def evaluate_float(self, theta):
        import math

        out = []
        for c in range(3):
            v = float(self.const[c])
            for j in range(1, self.m + 1):
                v += float(self.cos_coeffs[c][j - 1]) * math.cos(j * theta)
                v += float(self.sin_coeffs[c][j - 1]) * math.sin(j * theta)
            out.append(v)
        return out


class ProjectiveCurve:
    """Four binary forms of one common degree with trivial common gcd."""

    def __init__(self, forms, check=True):
        forms = tuple(forms)
        if len(forms) != 4:
            raise ValueError("expected four forms")
        ring = forms[0].ring
        degs = {f.total_degree() for f in forms if f}
        if check:
            if not forms[0]:
                raise DegenerateSpec("F0 must be nonzero")
            if len(degs) != 1:
                raise DegenerateSpec(f"forms have unequal degrees {sorted(degs)}")
            for f in forms:
                if f and not f.is_homogeneous():
                    raise DegenerateSpec("forms must be homogeneous")
            g = ring.zero
            for f in forms:
                g = gcd(g, f)
            if g.total_degree() > 0:
                raise DegenerateSpec(f"forms share the common factor {g}")
        self.forms = forms
        self.ring = ring
        self.degree = max(degs)

    def __repr__(self):
        return f"<curve of degree {self.degree}>"


class QuadricPencilSpec:
    """Two symmetric 4x4 rational quadratic forms in coordinates (1:x:y:z)."""

    def __init__(self, q1, q2):
        self.q1 = [[Q(v) for v in row] for row in q1]
        self.q2 = [[Q(v) for v in row] for row in q2]
        for q in (self.q1, self.q2):
            if len(q) != 4 or any(len(row) != 4 for row in q):
                raise DegenerateSpec("quadrics must be 4x4")
            for i in range(4):
                for j in range(i):
                    if q[i][j] != q[j][i]:
                        raise DegenerateSpec("quadrics must be symmetric")


def _circle_powers(m, ring):
    """Numerators of cos(j*theta), sin(j*theta) over (x0^2+x1^2)^j, j=0..m."""
    x0, x1 = ring.gen("x0"), ring.gen("x1")
    cos1 = x0 * x0 - x1 * x1
    sin1 = 2 * x0 * x1
    cos_forms = [ring.one, cos1]
    sin_forms = [ring.zero, sin1]
    for _ in range(2, m + 1):
        cp, sp = cos_forms[-1], sin_forms[-1]
        cos_forms.append(cp * cos1 - sp * sin1)
        sin_forms.append(sp * cos1 + cp * sin1)
    return cos_forms, sin_forms


def to_projective(spec: TrigCurveSpec) -> ProjectiveCurve:
    """Clear the common denominator (x0^2+x1^2)^m and remove any shared factor."""
    ring = BINARY_RING
    m = spec.m
    cos_forms, sin_forms = _circle_powers(m, ring)
    denom = ring.parse("x0^2+x1^2")
    denom_pow = [ring.one]
    for _ in range(m):
        denom_pow.append(denom_pow[-1] * denom)

    forms = [denom_pow[m]]
    for c in range(3):
        f = denom_pow[m] * spec.const[c]
        for j in range(1, m + 1):
            if spec.cos_coeffs[c][j - 1]:
                f = f + cos_forms[j] * denom_pow[m - j] * spec.cos_coeffs[c][j - 1]
            if spec.sin_coeffs[c][j - 1]:
                f = f + sin_forms[j] * denom_pow[m - j] * spec.sin_coeffs[c][j - 1]
        forms.append(f)

    g = ring.zero
    for f in forms:
        g = gcd(g, f)
    if g.total_degree() > 0:
        forms = [_exact(f, g) for f in forms]
    if all((not forms[i]) or _is_scalar_multiple(forms[i], forms[0]) for i in (1, 2, 3)):
        raise DegenerateSpec("all coordinates are constant: the image is a point")
    return ProjectiveCurve(forms)


def _exact(f, g):
    from .rings import exact_divide

    return f if not f else exact_divide(f, g)


def _is_scalar_multiple(f, g):
    if set(f.terms) != set(g.terms):
        return False
    ratios = {f.terms[m] / g.terms[m] for m in f.terms}
    return len(ratios) <= 1


def cusp_form(c: ProjectiveCurve):
    """Gcd of the 2x2 minors of the Jacobian; constant exactly when immersed."""
    ring = c.ring
    jac = PolyMatrix([
        [f.derivative("x0") for f in c.forms],
        [f.derivative("x1") for f in c.forms],
    ])
    g = ring.zero
    for i in range(4):
        for j in range(i + 1, 4):
            g = gcd(g, jac.minor_det((0, 1), (i, j)))
    return g


def cusp_count(c: ProjectiveCurve) -> int:
    g = cusp_form(c)
    if g.total_degree() <= 0:
        return 0
    return squarefree_part(g).total_degree()


# -- spec files ---------------------------------------------------------------


def _coord(block, m):
    const = block.get("const", "0")
    cos = block.get("cos", [])
    sin = block.get("sin", [])
    cos = [rational_from_string(str(v)) for v in cos] + [Q(0)] * (m - len(cos))
    sin = [rational_from_string(str(v)) for v in sin] + [Q(0)] * (m - len(sin))
    return rational_from_string(str(const)), cos, sin


def load_spec(source):
    """Parse a spec file (path or dict) into one of the three curve types."""
    if isinstance(source, str):
        with open(source) as fh:
            data = json.load(fh)
    else:
        data = source
    kind = data.get("type")
    if kind == "trigonometric":
        m = int(data["m"])
        consts, coss, sins = [], [], []
        for axis in ("x", "y", "z"):
            if axis not in data:
                raise ParseError(f"missing coordinate block {axis!r}")
            c, cc, ss = _coord(data[axis], m)
            consts.append(c)
            coss.append(cc)
            sins.append(ss)
        return TrigCurveSpec(m, consts, coss, sins)
    if kind == "binary_forms":
        forms = [BINARY_RING.parse(data[k]) for k in ("F0", "F1", "F2", "F3")]
        curve = ProjectiveCurve(forms)
        if "d" in data and curve.degree != int(data["d"]):
            raise ParseError(f"declared degree {data['d']} but forms have degree {curve.degree}")
        return curve
    if kind == "quadric_pencil":
        q1 = [[rational_from_string(str(v)) for v in row] for row in data["Q1"]]
        q2 = [[rational_from_string(str(v)) for v in row] for row in data["Q2"]]
        return QuadricPencilSpec(q1, q2)
    raise ParseError(f"unknown spec type {kind!r}")
