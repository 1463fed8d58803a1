"""Character variety tools for rank-two presentations.

Characters of the free group on a, b are coordinatized by
(x, y, z) = (tr a, tr b, tr ab).  A representation with these traces is

    a = [[s, 1], [0, 1/s]],   b = [[p, 0], [r, 1/p]]

with s + 1/s = x, p + 1/p = y and r = z - s p - 1/(s p), built over at most
two quadratic extensions of the field of the coordinates.
"""

import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from importlib import resources
from math import gcd

from .algebra import (
    FieldError,
    LaurentPolynomial,
    QuotientExtension,
    field_from_description,
)
from .algebra import upoly
from .algebra.laurent import laurent_from_coefficients
from .presentation import parse_presentation
from .torsion import Representation, mat_trace, torsion_polynomial

INFINITY = "inf"


@dataclass(frozen=True)
class TraceCoordinates:
    x: object
    y: object
    z: object


@dataclass
class TraceRepresentation:
    representation: Representation
    base: object
    field: object
    reducible: bool
    s: object
    p: object


def _quadratic_root(K, trace, var, sign):
    """A root of X^2 - trace X + 1, adjoining one to K when needed."""
    two, four = K.from_int(2), K.from_int(4)
    disc = K.sub(K.mul(trace, trace), four)
    root = K.sqrt(disc)
    if root is not None:
        if sign < 0:
            root = K.neg(root)
        return K, K.div(K.add(trace, root), two)
    L = QuotientExtension(K, (K.one, K.neg(trace), K.one), var)
    g = L.gen
    return L, (g if sign > 0 else L.sub(L.embed(trace), g))


def rep_from_traces(presentation, tc, field, *, signs=(1, 1), validate=True):
    """Representation of a two-generator presentation with prescribed traces.

    ``signs`` picks the root for s and for p.  The returned record flags
    reducible characters (tr [a, b] = 2), which are permitted.
    """
    if presentation.ngens != 2:
        raise ValueError("trace coordinates need a two-generator presentation")
    K0 = field
    K1, s = _quadratic_root(K0, tc.x, "s", signs[0])
    y1 = K1.coerce(tc.y, K0)
    K2, p = _quadratic_root(K1, y1, "p", signs[1])
    s2 = K2.coerce(s, K1) if K2 is not K1 else s
    z2 = K2.coerce(tc.z, K0)
    sp = K2.mul(s2, p)
    r = K2.sub(K2.sub(z2, sp), K2.inv(sp))
    a = [[s2, K2.one], [K2.zero, K2.inv(s2)]]
    b = [[p, K2.zero], [r, K2.inv(p)]]
    rep = Representation(presentation, K2, [a, b], validate=validate)
    x, y, z = tc.x, tc.y, tc.z
    k = K0
    comm = k.sub(k.add(k.add(k.mul(x, x), k.mul(y, y)), k.mul(z, z)),
                 k.add(k.mul(k.mul(x, y), z), k.from_int(2)))
    reducible = k.eq(comm, k.from_int(2))
    return TraceRepresentation(rep, K0, K2, reducible, s2, p)


def descend_to(K, a, target):
    """Walk an element down the tower until it lives in ``target``."""
    while K != target:
        a = K.descend(a)
        K = K.base
        if K is None:
            raise FieldError("target field is not below the element's field")
    return a


def trace_of_word(rep, w):
    return mat_trace(rep.field, rep.image(w))


# -- pole orders and slopes ---------------------------------------------------------

def pole_order(K, f, point):
    """Order of the pole of f in K = base(u) at a base point or at INFINITY."""
    num, den = f
    if not num:
        return 0
    if point == INFINITY:
        return max(len(num) - len(den), 0)
    B = K.base
    lin = (B.neg(point), B.one)
    order = 0
    while len(den) > 1:
        q, r = upoly.divmod_(B, den, lin)
        if r:
            break
        den = q
        order += 1
    return order


def value_at(K, f, point):
    """Finite value of f at the point (INFINITY via u -> 1/u); None at a pole."""
    if pole_order(K, f, point):
        return None
    if point == INFINITY:
        inv_u = K.inv(K.gen)
        g = K.substitute(f, inv_u, K)
        return K.evaluate(g, K.base.zero)
    return K.evaluate(f, point)


def boundary_slope(orders):
    """Primitive (p, q) with orders proportional to |q|, |p|, |q - p|.

    The three orders belong to mu, lambda and mu*lambda; a slope mu^p lambda^q
    meets mu^a lambda^b in |a q - b p| points.  Returns None if no slope fits.
    """
    if not any(orders):
        return None
    bound = max(orders) + 1
    for p in range(0, bound + 1):
        for q in range(-bound, bound + 1):
            if (p, q) == (0, 0) or gcd(p, q) != 1 or (p == 0 and q < 0):
                continue
            target = (abs(q), abs(p), abs(q - p))
            if all(orders[i] * target[j] == orders[j] * target[i]
                   for i in range(3) for j in range(3)):
                return (p, q)
    return None


def format_slope(slope):
    if slope is None:
        return "undetermined"
    p, q = slope
    parts = []
    for sym, e in (("mu", p), ("lambda", q)):
        if e:
            parts.append(sym if e == 1 else f"{sym}^{e}")
    return "*".join(parts) or "1"


# -- curve fixtures -------------------------------------------------------------------

@dataclass
class CurveComponentFixture:
    name: str
    presentation: object
    field: object
    traces: TraceCoordinates
    signs: tuple = (1, 1)
    excluded: tuple = ()
    expected_torsion: object = None
    peripheral: dict = dc_field(default_factory=dict)
    expected_peripheral_traces: dict = dc_field(default_factory=dict)
    ideal_points: tuple = ()
    expected_slopes: dict = dc_field(default_factory=dict)
    curve_representation: dict | None = None
    raw: dict | None = None

    def representation(self):
        return rep_from_traces(self.presentation, self.traces, self.field, signs=self.signs)

    def specialize(self, u):
        """Trace coordinates at a base point."""
        K = self.field
        vals = [K.evaluate(c, u) for c in (self.traces.x, self.traces.y, self.traces.z)]
        return TraceCoordinates(*vals)


def parse_point(text):
    if isinstance(text, str) and text.strip().lower() in ("inf", "infinity", "oo"):
        return INFINITY
    return Fraction(text)


def load_fixture_dict(data):
    K = field_from_description(data["field"])
    pres = parse_presentation(data["presentation"])
    tr = data["traces"]
    tc = TraceCoordinates(K.parse(tr["x"]), K.parse(tr["y"]), K.parse(tr["z"]))
    expected = None
    if data.get("expected_torsion"):
        expected = laurent_from_coefficients(K, data["expected_torsion"])
    peripheral = {k: pres.word(v) for k, v in data.get("peripheral", {}).items()}
    exp_tr = {k: K.parse(v) for k, v in data.get("expected_peripheral_traces", {}).items()}
    slopes = {}
    for k, v in data.get("expected_slopes", {}).items():
        slopes[parse_point(k)] = tuple(v)
    return CurveComponentFixture(
        name=data["name"], presentation=pres, field=K, traces=tc,
        signs=tuple(data.get("signs", (1, 1))),
        excluded=tuple(parse_point(x) for x in data.get("excluded", [])),
        expected_torsion=expected, peripheral=peripheral,
        expected_peripheral_traces=exp_tr,
        ideal_points=tuple(parse_point(x) for x in data.get("ideal_points", [])),
        expected_slopes=slopes, curve_representation=data.get("curve_representation"),
        raw=data)


def fixture_names():
    out = []
    for entry in resources.files("knottorsion.data").iterdir():
        if entry.name.endswith(".json"):
            out.append(entry.name[:-5])
    return sorted(out)


def read_fixture_json(name):
    path = resources.files("knottorsion.data").joinpath(f"{name}.json")
    if not path.is_file():
        raise KeyError(f"unknown fixture {name!r}")
    return json.loads(path.read_text())


def load_curve_fixture(name):
    data = read_fixture_json(name)
    if data.get("kind") != "curve":
        raise KeyError(f"fixture {name!r} is not a character variety curve")
    return load_fixture_dict(data)


def curve_representation(fix):
    """The explicit representation over the curve of representations, if shipped.

    Returns (Representation, field of the curve, u as an element of that field).
    """
    data = fix.curve_representation
    if not data:
        return None
    L = field_from_description(data["field"])
    pres = fix.presentation
    mats = [[[L.parse(x) for x in row] for row in data["matrices"][g]] for g in pres.generators]
    rep = Representation(pres, L, mats)
    return rep, L, L.parse(data["u"])


# -- universal torsion ----------------------------------------------------------------

def universal_torsion(fix):
    """Torsion over the extension tower, descended to the field of u."""
    lift = fix.representation()
    T = torsion_polynomial(fix.presentation, lift.representation)
    K = fix.field
    terms = {}
    for k, c in T.poly.terms.items():
        try:
            terms[k] = descend_to(lift.field, c, K)
        except FieldError:
            raise FieldError(
                f"coefficient of t^{k} does not descend to {K!r}; the construction is inconsistent"
            ) from None
    return LaurentPolynomial(K, terms)


def peripheral_traces(fix, rep=None, lift_field=None):
    """Trace functions of the peripheral words, in the field of u."""
    if rep is None:
        lift = fix.representation()
        rep, lift_field = lift.representation, lift.field
    out = {}
    for name, w in fix.peripheral.items():
        out[name] = descend_to(lift_field, trace_of_word(rep, w), fix.field)
    return out


@dataclass
class IdealPointReport:
    point: object
    pole_orders: tuple
    boundary_slope: object
    lead_coefficient: object     # value, or None at a pole
    coefficients: dict           # exponent -> ("value", v) or ("pole", order)
    evaluation: object           # LaurentPolynomial over the base, or None
    identically_zero: bool


def ideal_point_evaluation(T, point):
    """Per-coefficient values or pole orders of T at a point of the u-line."""
    K = T.field
    coeffs = {}
    finite = {}
    for k, c in T.items():
        order = pole_order(K, c, point)
        if order:
            coeffs[k] = ("pole", order)
        else:
            v = value_at(K, c, point)
            coeffs[k] = ("value", v)
            finite[k] = v
    all_finite = len(finite) == len(T.terms)
    evaluation = LaurentPolynomial(K.base, finite) if all_finite else None
    zero = all_finite and evaluation.is_zero()
    lead = coeffs[T.maxdeg][1] if T.terms and coeffs[T.maxdeg][0] == "value" else None
    return coeffs, evaluation, zero, lead


def analyze_ideal_point(fix, T, traces, point):
    coeffs, evaluation, zero, lead = ideal_point_evaluation(T, point)
    orders = ()
    slope = None
    keys = ("mu", "lambda", "mu_lambda")
    if all(k in traces for k in keys):
        orders = tuple(pole_order(fix.field, traces[k], point) for k in keys)
        slope = boundary_slope(orders)
    return IdealPointReport(point, orders, slope, lead, coeffs, evaluation, zero)


def specialization_check(fix, T, u):
    """Compare T(u) against the torsion of the representation specialized at u."""
    K = fix.field
    tc = fix.specialize(u)
    lift = rep_from_traces(fix.presentation, tc, K.base, signs=fix.signs)
    if lift.reducible:
        return None
    direct = torsion_polynomial(fix.presentation, lift.representation)
    terms = {k: descend_to(lift.field, c, K.base) for k, c in direct.poly.terms.items()}
    direct = LaurentPolynomial(K.base, terms)
    evaluated = LaurentPolynomial(K.base, {k: K.evaluate(c, u) for k, c in T.terms.items()})
    return direct == evaluated
