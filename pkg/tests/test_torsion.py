import random

import pytest
import sympy
from hypothesis import given, strategies as st

from knottorsion.algebra import QQ, QuotientExtension, RationalFunctionField
from knottorsion.presentation import parse_presentation
from knottorsion.selftest import random_invertible, trefoil_rep
from knottorsion.torsion import (
    Representation,
    RepresentationError,
    TorsionError,
    adjoint_matrix,
    adjoint_torsion,
    admissible_rows,
    alexander_polynomial,
    diagonal_representation,
    mat_mul,
    symmetrize,
    torsion_polynomial,
    wada_quotient,
)

FIG8 = "<a,b | aBAbaBabAB>"
W = QuotientExtension(QQ, (1, -1, 1), "w", embedding="0.5 + 0.8660254037844386*I")
T_SYM = sympy.Symbol("t")
W_SYM = (1 + sympy.sqrt(-3)) / 2


def fig8_rep():
    K = W
    return Representation(parse_presentation(FIG8), K,
                          [[[K.one, K.one], [K.zero, K.one]], [[K.one, K.zero], [K.gen, K.one]]])


# -- an independent oracle: Fox matrix built letter by letter in sympy -------------------

def to_sympy(K, c):
    if K is QQ:
        return sympy.Rational(c.numerator, c.denominator)
    if K is W:
        return to_sympy(QQ, c[0]) + to_sympy(QQ, c[1]) * W_SYM
    raise TypeError(K)


def oracle_wada(pres, rep, mats=None):
    """det Phi(A_i) / det(Phi(x_i) - 1) without the involution, as a sympy expression."""
    K = rep.field
    mats = mats or [sympy.Matrix([[to_sympy(K, x) for x in row] for row in M]) for M in rep.matrices]
    d = mats[0].shape[0]
    phi = rep.phi
    n = pres.ngens
    t = T_SYM

    def letter(g, s):
        M = mats[g] * t ** phi[g]
        return M if s > 0 else M.inv()

    cols = []
    for r in pres.relators:
        blocks = [sympy.zeros(d, d) for _ in range(n)]
        prefix = sympy.eye(d)
        for g, s in r.letters():
            if s > 0:
                blocks[g] += prefix
                prefix = prefix * letter(g, 1)
            else:
                prefix = prefix * letter(g, -1)
                blocks[g] -= prefix
        cols.append(blocks)
    i = next(k for k in range(n) if phi[k])
    rows = [k for k in range(n) if k != i]
    A = sympy.Matrix(sympy.BlockMatrix([[cols[j][k] for j in range(len(cols))] for k in rows]))
    num = sympy.expand(A.det())
    den = sympy.expand((letter(i, 1) - sympy.eye(d)).det())
    return sympy.cancel(num / den)


def poly_to_sympy(p):
    return sum(to_sympy(p.field, c) * T_SYM ** k for k, c in p.terms.items())


def _is_unit_monomial(e):
    e = sympy.expand(e)
    P = sympy.Poly(e, T_SYM)
    return P.is_monomial and sympy.simplify(sympy.Abs(P.LC()) - 1) == 0


def equal_up_to_unit(expr, p):
    """expr == +-t^k p(t) or +-t^k p(1/t)."""
    for q in (poly_to_sympy(p), poly_to_sympy(p.substitute_inverse())):
        num, den = sympy.fraction(sympy.factor(sympy.cancel(sympy.expand(expr) / sympy.expand(q))))
        if _is_unit_monomial(num) and _is_unit_monomial(den):
            return True
    return False


def oracle_adjoint_mats(rep):
    """Ad(g) on the basis (E, H, F), built by conjugating basis matrices in sympy."""
    E = sympy.Matrix([[0, 1], [0, 0]])
    H = sympy.Matrix([[1, 0], [0, -1]])
    F = sympy.Matrix([[0, 0], [1, 0]])
    out = []
    for M in rep.matrices:
        g = sympy.Matrix([[to_sympy(rep.field, x) for x in row] for row in M])
        cols = []
        for X in (E, H, F):
            Y = sympy.expand(g * X * g.inv())
            cols.append([Y[0, 1], Y[0, 0], Y[1, 0]])
        out.append(sympy.Matrix(cols).T)
    return out


# -- oracle comparisons -------------------------------------------------------------

def test_fig8_torsion_exact():
    pres, rep = parse_presentation(FIG8), fig8_rep()
    T = torsion_polynomial(pres, rep)
    assert T.format() == "t - 4 + t^-1"
    assert equal_up_to_unit(oracle_wada(pres, rep), T.poly)


@pytest.mark.parametrize("seed", range(4))
def test_trefoil_torsion_matches_oracle(seed):
    pres, rep = trefoil_rep(random.Random(seed))
    T = torsion_polynomial(pres, rep)
    assert T.format() == "t + t^-1"
    assert equal_up_to_unit(oracle_wada(pres, rep), T.poly)


def test_fig8_adjoint_matches_oracle():
    pres, rep = parse_presentation(FIG8), fig8_rep()
    A = adjoint_torsion(pres, rep)
    assert A.format() == "t^3 - 6*t^2 + 6*t - 1"
    assert equal_up_to_unit(oracle_wada(pres, rep, oracle_adjoint_mats(rep)), A.poly)


@pytest.mark.parametrize("seed", range(3))
def test_trefoil_adjoint_matches_oracle(seed):
    pres, rep = trefoil_rep(random.Random(seed))
    A = adjoint_torsion(pres, rep)
    assert A.poly.mindeg == 0 and A.degree == 3
    assert equal_up_to_unit(oracle_wada(pres, rep, oracle_adjoint_mats(rep)), A.poly)


@given(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=5), min_size=4, max_size=4))
def test_adjoint_is_a_homomorphism(xs):
    K = QQ
    g = [[K.one, xs[0]], [xs[1], K.add(K.one, K.mul(xs[0], xs[1]))]]
    h = [[xs[2], K.one], [K.neg(K.one), K.zero]] if xs[2] else [[K.one, xs[3]], [K.zero, K.one]]
    assert adjoint_matrix(K, mat_mul(K, g, h)) == mat_mul(K, adjoint_matrix(K, g), adjoint_matrix(K, h))


# -- invariance properties ---------------------------------------------------------------

@given(st.integers(0, 10 ** 6))
def test_conjugation_and_row_independence(seed):
    rng = random.Random(seed)
    pres, rep = trefoil_rep(rng)
    T = torsion_polynomial(pres, rep)
    assert torsion_polynomial(pres, rep.conjugate(random_invertible(rng))) == T
    for i in admissible_rows(rep):
        assert symmetrize(wada_quotient(pres, rep, i)).poly == T.poly
    assert T.poly == T.poly.substitute_inverse()


def test_lift_flip_substitutes_minus_t():
    pres, rep = parse_presentation(FIG8), fig8_rep()
    T = torsion_polynomial(pres, rep).poly
    flipped = torsion_polynomial(pres, rep.lift_flip()).poly
    assert flipped == T.substitute_negate() or flipped == -T.substitute_negate()
    assert flipped.format() == "t + 4 + t^-1"


def test_reducible_representation_rejected():
    pres = parse_presentation(FIG8)
    rep = diagonal_representation(pres, QQ, QQ(3))
    with pytest.raises(TorsionError, match="reducible"):
        torsion_polynomial(pres, rep)


def test_invalid_representation_rejected():
    pres = parse_presentation(FIG8)
    K = QQ
    with pytest.raises(RepresentationError, match="does not map to the identity"):
        Representation(pres, K, [[[K.one, K.one], [K.zero, K.one]], [[K.one, K.zero], [K.one, K.one]]])
    with pytest.raises(RepresentationError, match="determinant"):
        Representation(pres, K, [[[K(2), K.zero], [K.zero, K.one]], [[K.one, K.zero], [K.zero, K.one]]])


# -- Alexander polynomial -------------------------------------------------------------------

@pytest.mark.parametrize("text, expected", [
    ("<a,b | a^2B^3>", "t - 1 + t^-1"),
    (FIG8, "t - 3 + t^-1"),
    ("<a,b | bab^3abA^2>", "t + 3 + t^-1"),
    ("<a | >", "1"),
])
def test_alexander_polynomial(text, expected):
    assert alexander_polynomial(parse_presentation(text)).format() == expected


def test_alexander_of_conway_knot_is_one():
    from knottorsion.io import parse_job, read_document
    data, _ = read_document("conway")
    assert alexander_polynomial(parse_job(data).presentation).format() == "1"


def test_reducible_torsion_formula_trefoil():
    from knottorsion.torsion import reducible_torsion
    Kz = RationalFunctionField(QQ, "z")
    pres = parse_presentation("<a,b | a^2B^3>")
    delta = alexander_polynomial(pres).map_coefficients(lambda c: Kz.from_fraction(c), Kz)
    num, den = reducible_torsion(delta, Kz.gen)
    assert den.format() == "t + ((-z^2 - 1)/z) + t^-1"
    assert num.span == 4
