"""Seeded self-checks behind ``knottorsion selftest``.

Quick mode runs the algebraic identities (Fox calculus, field axioms,
symmetry and conjugation invariance of the torsion).  Full mode adds the
Fried round trip and comparisons against every packaged fixture.
"""

import random
import time
from dataclasses import dataclass
from fractions import Fraction

from .algebra import QQ, BigComplexField, LaurentPolynomial, QuotientExtension
from .charvar import (
    analyze_ideal_point,
    load_curve_fixture,
    peripheral_traces,
    rep_from_traces,
    universal_torsion,
)
from .diagnostics import cyclic_cover_torsion, diagnose, fried_reconstruct
from .presentation import GroupRingElement, Word, fox_derivative, parse_presentation
from .torsion import Representation, mat_det, torsion_polynomial


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0


# -- random objects --------------------------------------------------------------

def random_word(rng, ngens, length):
    letters = [(rng.randrange(ngens), rng.choice((1, -1))) for _ in range(length)]
    return Word(letters)


def random_rational(rng, size=9):
    return Fraction(rng.randint(-size, size), rng.randint(1, size))


def random_invertible(rng, K=QQ, size=9):
    while True:
        M = [[K.from_fraction(random_rational(rng, size)) for _ in range(2)] for _ in range(2)]
        if not K.is_zero(mat_det(K, M)):
            return M


def random_rational_point(rng, excluded=(), size=12):
    while True:
        u = random_rational(rng, size)
        if u not in excluded:
            return u


def specialized_rep(fix, u):
    """Exact representation of the fixture's presentation at the point u."""
    lift = rep_from_traces(fix.presentation, fix.specialize(u), fix.field.base, signs=fix.signs)
    return None if lift.reducible else lift.representation


TREFOIL = "<a,b | a^2B^3>"


def trefoil_rep(rng):
    """Irreducible trefoil rep with tr a = 0, tr b = 1, randomly conjugated."""
    pres = parse_presentation(TREFOIL)
    K = QQ
    while True:
        c = random_rational(rng) or K.one
        x = random_rational(rng) or K.one
        # a^2 = b^3 = -I
        a = [[K.zero, K.inv(c)], [K.neg(c), K.zero]]
        b = [[K.one, x], [K.neg(K.inv(x)), K.zero]]
        rep = Representation(pres, K, [a, b])
        if rep.is_irreducible():
            return pres, rep.conjugate(random_invertible(rng))


# -- individual checks -------------------------------------------------------------

def check_fox_identity(rng, count):
    for _ in range(count):
        n = rng.randint(1, 4)
        w = random_word(rng, n, rng.randint(0, 14))
        total = GroupRingElement.zero()
        for i in range(n):
            total = total + fox_derivative(w, i) * (GroupRingElement.from_word(Word.gen(i)) - GroupRingElement.one())
        if total != GroupRingElement.from_word(w) - GroupRingElement.one():
            return f"identity fails for {w!r}"
    return ""


def check_field_axioms(rng, count):
    K = QuotientExtension(QQ, (QQ.from_int(2), QQ.zero, QQ.zero, QQ.one), "r")
    for _ in range(count):
        a, b, c = (tuple(K.base.from_fraction(random_rational(rng)) for _ in range(3)) for _ in range(3))
        if K.mul(K.add(a, b), c) != K.add(K.mul(a, c), K.mul(b, c)):
            return "distributivity fails"
        if K.mul(a, b) != K.mul(b, a):
            return "commutativity fails"
        if not K.is_zero(a) and K.mul(a, K.inv(a)) != K.one:
            return "inverse fails"
    return ""


def check_torsion_symmetry(rng, count):
    fixes = [load_curve_fixture(n) for n in ("m003", "m006", "m037")]
    for i in range(count):
        if i % 4 == 3:
            pres, rep = trefoil_rep(rng)
        else:
            fix = fixes[i % 3]
            rep = None
            while rep is None:
                rep = specialized_rep(fix, random_rational_point(rng, fix.excluded))
            pres = fix.presentation
        T = torsion_polynomial(pres, rep)
        if T.check_row is None and pres.ngens > 2:
            return "no second row to compare"
        if T.poly != T.poly.substitute_inverse():
            return f"T(t) != T(1/t) for {pres.format()}"
        g = random_invertible(rng, rep.field)
        if torsion_polynomial(pres, rep.conjugate(g)).poly != T.poly:
            return f"conjugation changed the torsion of {pres.format()}"
    return ""


def check_fried_round_trip(rng, count):
    K = BigComplexField(60)
    ctx = K.ctx
    for _ in range(count):
        d = rng.choice((2, 4))
        cs = [ctx.mpc(rng.randint(-5, 5), rng.randint(-5, 5)) for _ in range(d // 2 + 1)]
        cs[-1] = ctx.mpc(1 + rng.randint(0, 3), rng.randint(-2, 2))
        terms = {0: cs[0]}
        for k in range(1, len(cs)):
            terms[k] = terms[-k] = cs[k]
        p = LaurentPolynomial(K, terms)
        rs = [cyclic_cover_torsion(p, m, cross_check=False) for m in range(1, d + 3)]
        if any(abs(r) <= ctx.mpf(10) ** -40 for r in rs):
            continue
        q = fried_reconstruct(d, rs, K, seed=rng.randrange(10 ** 6)).poly
        if max(abs(p.coeff(k) - q.coeff(k)) for k in range(-d // 2, d // 2 + 1)) > ctx.mpf(10) ** -15:
            return f"round trip failed for span {d}"
    return ""


def check_curve_fixtures():
    for name in ("m003", "m006", "m037"):
        fix = load_curve_fixture(name)
        T = universal_torsion(fix)
        if T != fix.expected_torsion:
            return f"{name}: universal torsion differs from the fixture"
        if fix.expected_peripheral_traces:
            tr = peripheral_traces(fix)
            for k, v in fix.expected_peripheral_traces.items():
                if not fix.field.eq(tr[k], v):
                    return f"{name}: peripheral trace {k} differs"
            for pt, slope in fix.expected_slopes.items():
                got = analyze_ideal_point(fix, T, tr, pt).boundary_slope
                if got != slope:
                    return f"{name}: slope at {pt} is {got}, expected {slope}"
    return ""


def check_job_fixtures():
    from .io import parse_job, read_document
    expected = {"fig8": (2, True), "trefoil": (2, True), "conway": (10, False), "kt": (6, False)}
    values = {}
    for name, (span, monic) in expected.items():
        data, _ = read_document(name)
        job = parse_job(data)
        rep = job.build(precision=60 if job.numeric else None)
        T = torsion_polynomial(job.presentation, rep)
        d = diagnose(T, m_max=12)
        if T.span != span or d.monic != monic:
            return f"{name}: span {T.span}, monic {d.monic}"
        values[name] = (T.evaluate(rep.field.one), T.evaluate(rep.field.from_int(-1)))
    (c1, cm), (k1, km) = values["conway"], values["kt"]
    if abs(c1 - k1) > 1e-40 or abs(cm - km) > 1e-40:
        return "T(1) or T(-1) differs between the Conway and KT knots"
    return ""


QUICK = [
    ("fox identity", lambda rng, n: check_fox_identity(rng, 20 * n)),
    ("field axioms", lambda rng, n: check_field_axioms(rng, 10 * n)),
    ("torsion symmetry and conjugation invariance", lambda rng, n: check_torsion_symmetry(rng, n)),
]
FULL = [
    ("fried round trip", lambda rng, n: check_fried_round_trip(rng, n)),
    ("character variety fixtures", lambda rng, n: check_curve_fixtures()),
    ("job fixtures", lambda rng, n: check_job_fixtures()),
]


def run(full=False, seed=0, scale=None):
    """Run the checks; returns a list of CheckResult."""
    n = scale or (12 if full else 4)
    results = []
    for name, fn in QUICK + (FULL if full else []):
        rng = random.Random(f"{seed}:{name}")
        start = time.perf_counter()
        try:
            detail = fn(rng, n)
        except Exception as exc:  # a crash is a failure, reported with its type
            detail = f"{type(exc).__name__}: {exc}"
        results.append(CheckResult(name, not detail, detail, time.perf_counter() - start))
    return results
