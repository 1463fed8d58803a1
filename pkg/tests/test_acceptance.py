"""One test per acceptance criterion, at the stated tolerances."""

import random
import time

import mpmath
import pytest

from knottorsion.algebra import QQ, BigComplexField, LaurentPolynomial, QuotientExtension, RationalFunctionField
from knottorsion.charvar import (
    INFINITY,
    analyze_ideal_point,
    curve_representation,
    load_curve_fixture,
    peripheral_traces,
    universal_torsion,
)
from knottorsion.diagnostics import (
    ReconstructionError,
    cyclic_cover_torsion,
    diagnose,
    direct_root_of_unity_product,
    fried_distinguish,
    fried_reconstruct,
    nonvanishing_at_roots_of_unity,
)
from knottorsion.io import parse_job, read_document
from knottorsion.presentation import GroupRingElement, Word, fox_derivative, parse_presentation
from knottorsion.selftest import random_invertible, random_rational_point, random_word, specialized_rep, trefoil_rep
from knottorsion.torsion import (
    adjoint_torsion,
    admissible_rows,
    alexander_polynomial,
    center_rational,
    diagonal_representation,
    rational_equal,
    reducible_torsion,
    symmetrize,
    torsion_polynomial,
    wada_quotient,
)

QU = RationalFunctionField(QQ, "u")
QV = RationalFunctionField(QQ, "v")


def laurent(K, coeffs):
    return LaurentPolynomial(K, {k: K.parse(c) for k, c in coeffs.items()})


def numeric_job(name, digits=250):
    data, _ = read_document(name)
    job = parse_job(data)
    rep = job.build(precision=digits)
    return job, rep


# -- 1. m003 ----------------------------------------------------------------------------

def test_criterion_01_m003_universal_torsion():
    start = time.perf_counter()
    fix = load_curve_fixture("m003")
    rep, L, u_of_v = curve_representation(fix)
    assert L == QV
    over_v = torsion_polynomial(fix.presentation, rep).poly
    assert over_v == laurent(QV, {1: "1", 0: "-2*(v^4 + v^2 + 1)/(v^3 + v)", -1: "1"})

    over_u = universal_torsion(fix)
    assert over_u == laurent(QU, {1: "1", 0: "2*(u^2 - 1)/u", -1: "1"})
    # substituting u = v/(v^2 + 1) into the Q(u) answer gives back the Q(v) answer
    assert QV.format(u_of_v) == "v/(v^2 + 1)"
    sub = {k: QV.parse(QU.format(c).replace("u", f"({QV.format(u_of_v)})")) for k, c in over_u.terms.items()}
    assert LaurentPolynomial(QV, sub) == over_v
    assert time.perf_counter() - start < 1.0


# -- 2. m006 ----------------------------------------------------------------------------

def test_criterion_02_m006():
    fix = load_curve_fixture("m006")
    T = universal_torsion(fix)
    assert T == laurent(QU, {1: "(2*u^2 - 1)/(u^2 - 1)", 0: "2*u^3/(u^2 - 1)", -1: "(2*u^2 - 1)/(u^2 - 1)"})
    tr = peripheral_traces(fix)
    assert tr["mu"] == QU.parse("-u*(u^4 - u^2 - 1)/((u - 1)^2*(u + 1)^2)")
    assert tr["lambda"] == QU.parse("-u*(u^4 - 3*u^2 + 3)/((u - 1)*(u + 1))")
    assert tr["mu_lambda"] == QU.parse("(u^2 - 2)*(u^4 - u^2 + 1)/((u - 1)*(u + 1))")
    slopes = {pt: analyze_ideal_point(fix, T, tr, pt).boundary_slope for pt in (1, -1, INFINITY)}
    assert slopes == {1: (1, 2), -1: (1, 2), INFINITY: (3, -1)}


# -- 3. m037 ----------------------------------------------------------------------------

def test_criterion_03_m037():
    fix = load_curve_fixture("m037")
    T = universal_torsion(fix)
    assert T == laurent(QU, {
        1: "(u + 2)^4/(16*u^2)",
        0: "(u + 2)*(u^4 + 4*u^3 - 8*u^2 + 16*u + 16)/(8*(u - 2)*u^2)",
        -1: "(u + 2)^4/(16*u^2)",
    })
    tr = peripheral_traces(fix)
    at2 = analyze_ideal_point(fix, T, tr, 2)
    assert at2.lead_coefficient == 4 and at2.coefficients[0] == ("pole", 1)
    assert analyze_ideal_point(fix, T, tr, -2).identically_zero
    for pt in (2, -2):
        assert analyze_ideal_point(fix, T, tr, pt).boundary_slope == (2, -1)
    for pt in (0, INFINITY):
        assert analyze_ideal_point(fix, T, tr, pt).boundary_slope == (4, 3)


# -- 4. Conway and Kinoshita-Terasaka coefficients ----------------------------------------

CONWAY_APPROX = {5: 4.89524 + 0.09920j, 4: -15.68571 - 0.29761j, 3: 23.10363 - 0.07842j,
                 2: -26.94164 + 4.84509j, 1: 38.38349 - 24.49426j, 0: -43.32401 + 44.08061j}
KT_APPROX = {3: 4.41793 - 0.37603j, 2: -22.94164 + 4.84509j, 1: 61.96443 - 24.09744j,
             0: -82.69542 + 43.48539j}


@pytest.mark.parametrize("name, degree, approx", [("conway", 10, CONWAY_APPROX), ("kt", 6, KT_APPROX)])
def test_criterion_04_conway_kt_coefficients(name, degree, approx):
    start = time.perf_counter()
    job, rep = numeric_job(name)
    T = torsion_polynomial(job.presentation, rep)
    assert T.degree == degree
    for k, want in approx.items():
        assert abs(complex(T.coefficient(k)) - want) < 1e-4, k
        assert abs(complex(T.coefficient(-k)) - want) < 1e-4, -k
    d = diagnose(T, m_max=12)
    assert not d.monic and not d.real_coefficients
    assert time.perf_counter() - start < 10


# -- 5. mutation invariance at t = +-1 ------------------------------------------------------

def test_criterion_05_mutation_invariance():
    values = {}
    for name in ("conway", "kt"):
        job, rep = numeric_job(name)
        K = rep.field
        assert K.ctx.dps >= 250
        T = torsion_polynomial(job.presentation, rep)
        values[name] = (T.evaluate(K.one), T.evaluate(K.from_int(-1)))
    tol = mpmath.mpf(10) ** -40
    assert abs(values["conway"][0] - values["kt"][0]) < tol
    assert abs(values["conway"][1] - values["kt"][1]) < tol


# -- 6. exact coefficients in the degree-11 trace field ---------------------------------------

THETA_MODULUS = (-1, 2, -5, 6, -5, 8, -8, 5, -4, 3, -1, 1)   # constant term first
ETA = (1, 6, 0, 47, 10, 19, 1, 3, 28, 9, 20)                  # times 1/53
# coefficients of theta^10, ..., theta^1 and of eta
CONWAY_EXACT = {
    5: (-79, -35, -111, -11, -4, -71, -38, -187, -2, -24, 206),
    4: (257, 114, 361, 36, 13, 232, 124, 608, 6, 78, -671),
    3: (-372, -165, -523, -51, -21, -334, -183, -877, -11, -111, 972),
    2: (373, 162, 528, 40, 33, 312, 200, 866, 24, 99, -968),
    1: (-303, -115, -445, 14, -75, -152, -227, -649, -73, -29, 749),
    0: (116, 14, 200, -88, 116, -122, 204, 146, 124, -78, -220),
}
KT_EXACT = {
    3: (-55, -24, -78, -6, -5, -45, -29, -128, -5, -15, 142),
    2: (293, 126, 416, 28, 29, 236, 160, 678, 24, 75, -756),
    1: (-699, -291, -1001, -42, -95, -512, -419, -1585, -81, -149, 1785),
    0: (790, 314, 1146, 8, 150, 494, 532, 1738, 136, 126, -1986),
}


def test_criterion_06_number_field_cross_check():
    F = QuotientExtension(QQ, tuple(QQ(c) for c in THETA_MODULUS), "theta", embedding="0.1233737 - 0.5213097*I")
    eta = F.div(tuple(QQ(c) for c in ETA), F.from_int(53))
    ctx = mpmath.MPContext()
    ctx.dps = 50
    theta = F.to_complex(F.gen, ctx)
    assert abs(theta - ctx.mpc("0.1233737", "-0.5213097")) < 1e-6
    for exact, approx in ((CONWAY_EXACT, CONWAY_APPROX), (KT_EXACT, KT_APPROX)):
        for k, cs in exact.items():
            c = F.mul(F.from_int(cs[-1]), eta)
            for power, n in zip(range(10, 0, -1), cs[:-1]):
                c = F.add(c, F.mul(F.from_int(n), F.pow(F.gen, power)))
            assert abs(complex(F.to_complex(c, ctx)) - approx[k]) < 1e-4, k


# -- 7. adjoint torsion -------------------------------------------------------------------

CONWAY_ADJ = [-0.2788 + 16.4072j, -3.9858 - 20.1706j, -4.2204 - 60.5497j, 52.0953 + 134.5013j,
              -147.7856 - 46.07448j, 897.2087 + 62.3265j, -2465.8556 - 1308.0110j]
KT_ADJ = [-0.7378 + 12.4047j, 29.9408 - 56.5548j, -655.7823 - 173.0400j, 2056.7509 + 1678.4875j]


@pytest.mark.parametrize("name, degree, top", [("conway", 13, CONWAY_ADJ), ("kt", 7, KT_ADJ)])
def test_criterion_07_adjoint_torsion(name, degree, top):
    job, rep = numeric_job(name, 60)
    assert adjoint_torsion(job.presentation, rep).degree == degree
    # The published adjoint values belong to the complex-conjugate (mirror) holonomy,
    # compared up to the overall sign of the sign-refined torsion.
    A = adjoint_torsion(job.presentation, rep.complex_conjugate())
    assert A.degree == degree
    got = [complex(A.coefficient(degree - j)) for j in range(len(top))]
    low = [complex(A.coefficient(j)) for j in range(len(top))]
    assert all(abs(g + l) < 1e-6 * max(1, abs(g)) for g, l in zip(got, low))
    sign = 1 if abs(got[0] - top[0]) < abs(got[0] + top[0]) else -1
    for j, want in enumerate(top):
        assert abs(sign * got[j] - want) < 1e-3, degree - j


# -- 8. Fox fundamental identity ------------------------------------------------------------

def test_criterion_08_fox_identity():
    rng = random.Random(8)
    one = GroupRingElement.one()
    for _ in range(1000):
        n = rng.randint(1, 4)
        w = random_word(rng, n, rng.randint(0, 16))
        total = GroupRingElement.zero()
        for i in range(n):
            total = total + fox_derivative(w, i) * (GroupRingElement.from_word(Word.gen(i)) - one)
        assert total == GroupRingElement.from_word(w) - one, w


# -- 9. symmetry, row independence, conjugation invariance -------------------------------------

def test_criterion_09_torsion_invariance():
    rng = random.Random(9)
    fixes = [load_curve_fixture(n) for n in ("m003", "m006", "m037")]
    checked = 0
    for i in range(40):
        if i % 4 == 3:
            pres, rep = trefoil_rep(rng)
        else:
            fix = fixes[i % 3]
            rep = specialized_rep(fix, random_rational_point(rng, fix.excluded))
            if rep is None:
                continue
            pres = fix.presentation
        T = torsion_polynomial(pres, rep)
        assert T.span <= 10
        assert T.poly == T.poly.substitute_inverse()
        rows = admissible_rows(rep)
        assert len(rows) >= 2
        for r in rows:
            assert symmetrize(wada_quotient(pres, rep, r)).poly == T.poly
        assert torsion_polynomial(pres, rep.conjugate(random_invertible(rng, rep.field))).poly == T.poly
        checked += 1
    assert checked >= 30


# -- 10. reducible (diagonal) representations --------------------------------------------------

@pytest.mark.parametrize("text", ["<a,b | a^2B^3>", "<a,b | aBAbaBabAB>"])
def test_criterion_10_diagonal_reps(text):
    Kz = RationalFunctionField(QQ, "z")
    pres = parse_presentation(text)
    rep = diagonal_representation(pres, Kz, Kz.gen)
    delta = alexander_polynomial(pres).map_coefficients(lambda c: Kz.from_fraction(c), Kz)
    expected = center_rational(*reducible_torsion(delta, Kz.gen))
    for i in range(pres.ngens):
        q = wada_quotient(pres, rep, i)
        got = center_rational(q.numerator, q.denominator)
        assert rational_equal(got, expected) or rational_equal((-got[0], got[1]), expected)


# -- 11. resultants against numeric root-of-unity products ------------------------------------

def test_criterion_11_resultants():
    rng = random.Random(11)
    ctx = mpmath.MPContext()
    ctx.dps = 50
    for _ in range(100):
        d = rng.randint(0, 5)
        cs = [QQ(rng.randint(-20, 20)) / QQ(rng.randint(1, 6)) for _ in range(d + 1)]
        cs[-1] = cs[-1] or QQ.one
        terms = {0: cs[0]}
        for k in range(1, d + 1):
            terms[k] = terms[-k] = cs[k]
        p = LaurentPolynomial(QQ, terms)
        for m in range(1, 13):
            exact = cyclic_cover_torsion(p, m, cross_check=False)
            direct = direct_root_of_unity_product(p, m, ctx)
            assert abs(direct - ctx.mpf(exact.numerator) / exact.denominator) <= 1e-20 * max(1, abs(exact))


# -- 12. Fried reconstruction and distinguishing -------------------------------------------

def test_criterion_12a_fried_round_trip():
    rng = random.Random(12)
    K = BigComplexField(60)
    ctx = K.ctx
    converged = attempted = 0
    trials = 40
    for i in range(trials):
        d = 2 * (1 + i % 4)
        cs = [ctx.mpc(rng.randint(-5, 5), rng.randint(-5, 5)) for _ in range(d // 2 + 1)]
        cs[-1] = ctx.mpc(rng.randint(1, 4), rng.randint(-3, 3))
        terms = {0: cs[0]}
        for k in range(1, len(cs)):
            terms[k] = terms[-k] = cs[k]
        p = LaurentPolynomial(K, terms)
        rs = [cyclic_cover_torsion(p, m, cross_check=False) for m in range(1, d + 3)]
        if any(abs(r) < 1e-30 for r in rs):
            continue        # uniqueness needs nonzero products
        attempted += 1
        try:
            q = fried_reconstruct(d, rs, K, seed=i).poly
        except ReconstructionError:
            continue
        converged += 1
        assert max(abs(p.coeff(k) - q.coeff(k)) for k in range(-d // 2, d // 2 + 1)) < 1e-15
    assert attempted >= 30 and converged >= attempted // 2


def test_criterion_12b_fried_distinguish():
    rng = random.Random(1212)

    def random_symmetric():
        d = rng.randint(1, 4)
        cs = [QQ(rng.randint(-6, 6)) for _ in range(d + 1)]
        cs[-1] = cs[-1] or QQ.one
        terms = {0: cs[0]}
        for k in range(1, d + 1):
            terms[k] = terms[-k] = cs[k]
        return LaurentPolynomial(QQ, {k: c for k, c in terms.items() if c})

    pairs = 0
    while pairs < 1000:
        p, q = random_symmetric(), random_symmetric()
        if p == q or not nonvanishing_at_roots_of_unity(p, 50)[0] or not nonvanishing_at_roots_of_unity(q, 50)[0]:
            continue
        m = fried_distinguish(p, q, m_max=50)
        assert m is not None and m <= 50, (p.format(), q.format())
        assert cyclic_cover_torsion(p, m) != cyclic_cover_torsion(q, m)
        pairs += 1


# -- 13. figure-8 knot -------------------------------------------------------------------

def test_criterion_13_figure_eight():
    data, _ = read_document("fig8")
    job = parse_job(data)
    rep = job.build()
    K = rep.field
    assert K.describe()["modulus"] == "w^2 - w + 1"
    T = torsion_polynomial(job.presentation, rep)
    assert T.span == 2 and T.span // 2 == 1          # genus one
    assert K.eq(T.poly.lead, K.one)                   # monic
    # Z[w] is the ring of integers of Q(w), w^2 - w + 1 = 0
    for c in T.poly.terms.values():
        assert all(x.denominator == 1 for x in c)
    ok, first = nonvanishing_at_roots_of_unity(T.poly, 24)
    assert ok and first is None
    assert all(not K.is_zero(cyclic_cover_torsion(T.poly, m)) for m in range(1, 25))
