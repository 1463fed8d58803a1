"""Twisted torsion polynomials of deficiency-one presentations.

The computation follows the Fox-calculus formula

    T(t) = t^l * det((a x phi)(bar A_i)) / det((a x phi)(bar x_i - 1))

where A is the Jacobian d r_j / d x_i, bar is the involution g -> g^-1 and
A_i drops the row of generator x_i.  The exponent l is recovered afterwards
from the symmetry T(1/t) = T(t).
"""

import itertools
from dataclasses import dataclass, field as dc_field

from .algebra import FieldError, LaurentPolynomial, NotDivisible, SquareMatrix
from .presentation import Word, abelianize, fox_derivative, involute


class TorsionError(ArithmeticError):
    """Computational failure: symmetry violation, singular denominators, ..."""


class RepresentationError(ValueError):
    """Input matrices do not define a representation of the group."""


# -- small dense matrices over a field ---------------------------------------

def mat_mul(K, A, B):
    n, m, k = len(A), len(B), len(B[0])
    return [[_dot(K, [A[i][r] for r in range(m)], [B[r][j] for r in range(m)]) for j in range(k)]
            for i in range(n)]


def _dot(K, xs, ys):
    acc = K.zero
    for x, y in zip(xs, ys):
        acc = K.add(acc, K.mul(x, y))
    return acc


def mat_identity(K, d):
    return [[K.one if i == j else K.zero for j in range(d)] for i in range(d)]


def mat_det(K, A):
    if len(A) == 1:
        return A[0][0]
    if len(A) == 2:
        return K.sub(K.mul(A[0][0], A[1][1]), K.mul(A[0][1], A[1][0]))
    return SquareMatrix(K, A).determinant()


def mat_inv(K, A):
    d = len(A)
    if d == 1:
        return [[K.inv(A[0][0])]]
    if d == 2:
        det = mat_det(K, A)
        s = K.inv(det)
        return [[K.mul(A[1][1], s), K.neg(K.mul(A[0][1], s))],
                [K.neg(K.mul(A[1][0], s)), K.mul(A[0][0], s)]]
    # Gauss-Jordan for the adjoint case
    M = [list(A[i]) + [K.one if i == j else K.zero for j in range(d)] for i in range(d)]
    for c in range(d):
        rows = [r for r in range(c, d) if not K.is_zero(M[r][c])]
        if not rows:
            raise ZeroDivisionError("singular matrix")
        p = rows[0] if K.exact else max(rows, key=lambda r: abs(M[r][c]))
        M[c], M[p] = M[p], M[c]
        inv = K.inv(M[c][c])
        M[c] = [K.mul(x, inv) for x in M[c]]
        for r in range(d):
            if r != c and not K.is_zero(M[r][c]):
                f = M[r][c]
                M[r] = [K.sub(x, K.mul(f, y)) for x, y in zip(M[r], M[c])]
    return [row[d:] for row in M]


def mat_trace(K, A):
    acc = K.zero
    for i in range(len(A)):
        acc = K.add(acc, A[i][i])
    return acc


def mat_is_identity(K, A):
    d = len(A)
    return all(K.eq(A[i][j], K.one if i == j else K.zero) for i in range(d) for j in range(d))


def adjoint_matrix(K, g):
    """Action X -> g X g^-1 on trace-zero matrices in the basis (E, H, F)."""
    a, b = g[0]
    c, d = g[1]
    m, two = K.mul, K.from_int(2)
    return [
        [m(a, a), K.neg(m(two, m(a, b))), K.neg(m(b, b))],
        [K.neg(m(a, c)), K.add(m(a, d), m(b, c)), m(b, d)],
        [K.neg(m(c, c)), m(two, m(c, d)), m(d, d)],
    ]


# -- representations ---------------------------------------------------------

class Representation:
    """Generator images of a presentation in GL(d, K) with abelianization weights.

    For d = 1 the stored matrices are [[1]]; the t^phi factor is added
    when the Fox matrix is built.
    """

    def __init__(self, presentation, field, matrices, *, validate=True, abelianization=None):
        self.presentation = presentation
        self.field = field
        self.matrices = [[list(row) for row in M] for M in matrices]
        if len(self.matrices) != presentation.ngens:
            raise RepresentationError(
                f"expected {presentation.ngens} generator matrices, got {len(self.matrices)}")
        self.dim = len(self.matrices[0]) if self.matrices else 1
        for M in self.matrices:
            if len(M) != self.dim or any(len(r) != self.dim for r in M):
                raise RepresentationError("generator matrices must be square of a common size")
        self.abelianization = abelianization or abelianize(presentation)
        self._cache = {}
        self._inverse = [None] * len(self.matrices)
        if validate:
            self.validate()

    @property
    def phi(self):
        return self.abelianization.phi

    @classmethod
    def trivial(cls, presentation):
        from .algebra import QQ
        return cls(presentation, QQ, [[[QQ.one]] for _ in presentation.generators])

    def validate(self):
        K = self.field
        if self.dim == 2:
            for name, M in zip(self.presentation.generators, self.matrices):
                det = mat_det(K, M)
                if not K.eq(det, K.one):
                    raise RepresentationError(
                        f"matrix of {name!r} has determinant {K.format(det)}, expected 1")
        for r in self.presentation.relators:
            if not mat_is_identity(K, self.image(r)):
                raise RepresentationError(
                    f"relator {r.format(self.presentation.generators)} does not map to the identity")

    def _gen_inverse(self, g):
        if self._inverse[g] is None:
            self._inverse[g] = mat_inv(self.field, self.matrices[g])
        return self._inverse[g]

    def _power(self, g, e):
        key = Word.gen(g, e)
        if key in self._cache:
            return self._cache[key]
        K = self.field
        base = self.matrices[g] if e > 0 else self._gen_inverse(g)
        M = base
        for _ in range(abs(e) - 1):
            M = mat_mul(K, M, base)
        self._cache[key] = M
        return M

    def image(self, w):
        """alpha(w), memoized by peeling off the leading run."""
        if not w.nruns:
            return mat_identity(self.field, self.dim)
        if w in self._cache:
            return self._cache[w]
        runs = list(w.runs())
        g, e = runs[0]
        head = self._power(g, e)
        if len(runs) == 1:
            return head
        M = mat_mul(self.field, head, self.image(Word._raw(tuple(runs[1:]))))
        self._cache[w] = M
        return M

    def weight(self, w):
        return self.abelianization.weight(w)

    def trace(self, w):
        return mat_trace(self.field, self.image(w))

    # -- derived representations ---------------------------------------------
    def _derived(self, matrices):
        return Representation(self.presentation, self.field, matrices, validate=False,
                              abelianization=self.abelianization)

    def conjugate(self, g):
        """g alpha g^-1 for an invertible g."""
        K = self.field
        gi = mat_inv(K, g)
        return self._derived([mat_mul(K, mat_mul(K, g, M), gi) for M in self.matrices])

    def lift_flip(self):
        """x -> (-1)^phi(x) alpha(x)."""
        K = self.field
        out = []
        for M, w in zip(self.matrices, self.phi):
            out.append([[K.neg(x) for x in row] for row in M] if w % 2 else M)
        return self._derived(out)

    def complex_conjugate(self):
        K = self.field
        if K.exact:
            raise TypeError("complex conjugation needs a numeric field")
        return self._derived([[[K.conjugate(x) for x in row] for row in M] for M in self.matrices])

    def adjoint(self):
        if self.dim != 2:
            raise RepresentationError("adjoint representation needs a 2-dimensional input")
        return self._derived([adjoint_matrix(self.field, M) for M in self.matrices])

    def is_irreducible(self, depth=4):
        """Look for a word whose image has trace != 2 in the commutator subgroup."""
        return self.irreducibility_witness(depth) is not None

    def irreducibility_witness(self, depth=4):
        if self.dim != 2:
            raise RepresentationError("irreducibility test is for 2-dimensional representations")
        K = self.field
        two = K.from_int(2)
        n = self.presentation.ngens
        words = [Word.gen(i, e) for i in range(n) for e in (1, -1)]
        pool = list(words)
        frontier = list(words)
        for _ in range(depth - 1):
            frontier = [u * v for u in frontier for v in words if (u * v).length > u.length]
            pool.extend(frontier)
            if len(pool) > 200:
                break
        short = [w for w in pool if w.length <= 2]
        for u, v in itertools.product(short, pool):
            c = u * v * u.inverse() * v.inverse()
            if c.nruns and not K.eq(self.trace(c), two):
                return c
        return None


def diagonal_representation(presentation, field, z):
    """x -> diag(z^phi(x), z^-phi(x)); reducible, factors through H_1/torsion."""
    ab = abelianize(presentation)
    mats = []
    for w in ab.phi:
        a = field.pow(z, w)
        mats.append([[a, field.zero], [field.zero, field.inv(a)]])
    return Representation(presentation, field, mats, abelianization=ab)


# -- Fox matrix and Wada quotient ---------------------------------------------

def _laurent_block(rep, element):
    """(alpha x phi)(element) as a d x d block of Laurent polynomials."""
    K, d = rep.field, rep.dim
    acc = [[{} for _ in range(d)] for _ in range(d)]
    for w, c in element.terms.items():
        M = rep.image(w)
        k = rep.weight(w)
        cK = K.from_int(c)
        for i in range(d):
            for j in range(d):
                x = M[i][j]
                if K.is_zero(x):
                    continue
                x = K.mul(cK, x)
                slot = acc[i][j]
                slot[k] = K.add(slot[k], x) if k in slot else x
    return [[LaurentPolynomial(K, acc[i][j]) for j in range(d)] for i in range(d)]


def alexander_fox_matrix(presentation, rep, delete):
    """Block matrix (alpha x phi)(bar A_i) with the row of ``delete`` removed."""
    n = presentation.ngens
    if not 0 <= delete < n:
        raise IndexError(f"row {delete} out of range")
    d = rep.dim
    size = d * (n - 1)
    rows = [[None] * size for _ in range(size)]
    kept = [i for i in range(n) if i != delete]
    for bi, gen in enumerate(kept):
        for bj, rel in enumerate(presentation.relators):
            block = _laurent_block(rep, involute(fox_derivative(rel, gen)))
            for a in range(d):
                for b in range(d):
                    rows[bi * d + a][bj * d + b] = block[a][b]
    return SquareMatrix(rep.field, rows, laurent=True)


def denominator_matrix(rep, i):
    """(alpha x phi)(x_i^-1 - 1)."""
    K, d = rep.field, rep.dim
    g = Word.gen(i, -1)
    M = rep.image(g)
    k = rep.weight(g)
    rows = []
    for a in range(d):
        row = []
        for b in range(d):
            terms = {k: M[a][b]}
            if a == b:
                terms[0] = K.sub(terms.get(0, K.zero), K.one) if k == 0 else K.neg(K.one)
            row.append(LaurentPolynomial(K, terms))
        rows.append(row)
    return SquareMatrix(K, rows, laurent=True)


@dataclass
class WadaQuotient:
    numerator: LaurentPolynomial
    denominator: LaurentPolynomial
    row: int

    @property
    def field(self):
        return self.numerator.field

    def as_laurent(self):
        """Exact quotient, or None when the quotient is not a Laurent polynomial."""
        return self.numerator.try_div(self.denominator)

    def centered(self):
        """Rational function t^l * num / den with symmetric exponent range."""
        return center_rational(self.numerator, self.denominator)


def wada_quotient(presentation, rep, delete):
    den = denominator_matrix(rep, delete).determinant()
    if den.is_zero():
        raise TorsionError(
            f"denominator vanishes for row {presentation.generators[delete]!r}; delete a different row")
    num = alexander_fox_matrix(presentation, rep, delete).determinant()
    return WadaQuotient(num, den, delete)


def _exponent_sum(p):
    return p.mindeg + p.maxdeg if p.terms else 0


def center_rational(num, den):
    """Shift num/den by a power of t so its exponent range is symmetric."""
    if num.is_zero():
        return num, den
    total = _exponent_sum(num) - _exponent_sum(den)
    if total % 2:
        raise TorsionError("asymmetric span: no integer normalization exponent")
    return num.shift(-total // 2), den


def rational_equal(a, b):
    """Cross-multiplied equality of (num, den) pairs."""
    return a[0] * b[1] == b[0] * a[1]


# -- symmetric normalization ----------------------------------------------------

@dataclass
class TorsionPolynomial:
    poly: LaurentPolynomial
    shift: int = 0
    row: int | None = None
    check_row: int | None = None
    meta: dict = dc_field(default_factory=dict)

    @property
    def field(self):
        return self.poly.field

    @property
    def span(self):
        return self.poly.span

    @property
    def degree(self):
        return self.poly.span

    def coefficient(self, k):
        return self.poly.coeff(k)

    def evaluate(self, x):
        return self.poly.evaluate(x)

    def format(self, var="t"):
        return self.poly.format(var)

    def __eq__(self, other):
        if isinstance(other, TorsionPolynomial):
            other = other.poly
        return self.poly == other


def symmetrize(w):
    """Center a Laurent polynomial (or exactly divisible WadaQuotient) and verify symmetry."""
    row = None
    if isinstance(w, WadaQuotient):
        row = w.row
        try:
            w = w.numerator.exact_div(w.denominator)
        except NotDivisible:
            raise TorsionError("quotient is not a Laurent polynomial; keep the rational form") from None
    if w.is_zero():
        return TorsionPolynomial(w, 0, row)
    total = w.mindeg + w.maxdeg
    if total % 2:
        raise TorsionError("asymmetric span: no integer normalization exponent")
    l = -total // 2
    p = w.shift(l)
    K = p.field
    for k, c in p.terms.items():
        if not K.eq(c, p.coeff(-k)):
            raise TorsionError(
                f"symmetry violation at t^{k}: {K.format(c)} != {K.format(p.coeff(-k))}")
    for k in p.terms:
        if -k not in p.terms:
            raise TorsionError(f"symmetry violation at t^{k}")
    return TorsionPolynomial(p, l, row)


def admissible_rows(rep):
    """Rows ordered by preference: large |phi| first, then trace != 2."""
    K = rep.field
    n = rep.presentation.ngens
    two = K.from_int(rep.dim)
    weighted = sorted((i for i in range(n) if rep.phi[i]), key=lambda i: (-abs(rep.phi[i]), i))
    rest = [i for i in range(n) if not rep.phi[i]
            and not K.eq(mat_trace(K, rep.matrices[i]), two)]
    return weighted + rest


def torsion_polynomial(presentation, rep, *, check=True, require_irreducible=True):
    """Symmetric torsion polynomial of a 2-dimensional irreducible representation."""
    if rep.dim != 2:
        raise RepresentationError("torsion_polynomial expects a 2-dimensional representation")
    if require_irreducible and presentation.ngens > 1 and not rep.is_irreducible():
        raise TorsionError("representation looks reducible; use reducible_torsion with its diagonal part")
    rows = admissible_rows(rep)
    if not rows:
        raise TorsionError("no admissible row to delete")
    first = None
    for i in rows:
        try:
            first = symmetrize(wada_quotient(presentation, rep, i))
            break
        except TorsionError as exc:
            if "denominator" not in str(exc):
                raise
    if first is None:
        raise TorsionError("every admissible row has a vanishing denominator")
    if check:
        for j in rows:
            if j == first.row:
                continue
            try:
                second = symmetrize(wada_quotient(presentation, rep, j))
            except TorsionError as exc:
                if "denominator" in str(exc):
                    continue
                raise
            if not (second.poly == first.poly):
                raise TorsionError(
                    f"row consistency failure between rows {first.row} and {second.row}")
            first.check_row = j
            break
    return first


# -- ordinary Alexander polynomial and the reducible case ---------------------------

def alexander_polynomial(presentation):
    """Symmetrized Alexander polynomial with positive leading coefficient."""
    from .algebra import QQ
    if presentation.ngens == 1:
        return LaurentPolynomial.one(QQ)
    rep = Representation.trivial(presentation)
    rows = sorted((i for i in range(presentation.ngens) if rep.phi[i]),
                  key=lambda i: (-abs(rep.phi[i]), i))
    i = rows[0]
    num = alexander_fox_matrix(presentation, rep, i).determinant()
    # det(bar A_i) = Delta(1/t) (t^-phi - 1) / (t^-1 - 1) up to units
    k = rep.phi[i]
    t = LaurentPolynomial.monomial(QQ, 1)
    one = LaurentPolynomial.one(QQ)
    den = LaurentPolynomial.monomial(QQ, -k) - one
    try:
        delta = (num * (t ** -1 - one)).exact_div(den)
    except NotDivisible:
        raise TorsionError("Alexander quotient is not a Laurent polynomial") from None
    delta = delta.substitute_inverse()
    if delta.is_zero():
        return delta
    total = delta.mindeg + delta.maxdeg
    if total % 2:
        raise TorsionError("asymmetric span: Alexander polynomial has odd span")
    delta = delta.shift(-total // 2)
    if delta.lead < 0:
        delta = -delta
    for c in delta.terms.values():
        if c.denominator != 1:
            raise TorsionError("Alexander polynomial has non-integer coefficients")
    return delta


def reducible_torsion(delta, z):
    """Delta(z t) Delta(t / z) / (t - (z + 1/z) + 1/t) as a (num, den) pair."""
    K = delta.field
    if K.is_zero(z):
        raise ValueError("z must be nonzero")
    zi = K.inv(z)
    a = LaurentPolynomial(K, {k: K.mul(c, K.pow(z, k)) for k, c in delta.terms.items()})
    b = LaurentPolynomial(K, {k: K.mul(c, K.pow(zi, k)) for k, c in delta.terms.items()})
    den = LaurentPolynomial(K, {1: K.one, 0: K.neg(K.add(z, zi)), -1: K.one})
    return a * b, den


# -- adjoint torsion -----------------------------------------------------------

@dataclass
class AdjointTorsionPolynomial:
    poly: LaurentPolynomial
    sign_convention: str = "antisymmetric, top coefficient with Im >= 0 (ties Re >= 0)"
    row: int | None = None

    @property
    def field(self):
        return self.poly.field

    @property
    def degree(self):
        return self.poly.maxdeg if self.poly.terms else 0

    span = degree

    def coefficient(self, k):
        return self.poly.coeff(k)

    def format(self, var="t"):
        return self.poly.format(var)


def _sign_key(K, c):
    if K.exact:
        # sign is meaningful only for coefficients that descend to Q
        while not K.is_rationals:
            try:
                c, K = K.descend(c), K.base
            except FieldError:
                return (True, True)
        return (c > 0, True)
    re, im = K.ctx.re(c), K.ctx.im(c)
    if abs(im) > K.tolerance:
        return (im > 0, True)
    return (re >= 0, True)


def normalize_adjoint(p):
    """Shift to minimum degree 0 and fix the overall sign."""
    K = p.field
    if p.is_zero():
        raise TorsionError("adjoint torsion vanishes")
    p = p.shift(-p.mindeg)
    D = p.maxdeg
    for k in range(D + 1):
        if not K.eq(p.coeff(k), K.neg(p.coeff(D - k))):
            raise TorsionError(f"antisymmetric pairing fails at t^{k}")
    if not _sign_key(K, p.lead)[0]:
        p = -p
    return p


def adjoint_torsion(presentation, rep):
    if rep.dim != 2:
        raise RepresentationError("adjoint_torsion expects a 2-dimensional representation")
    ad = rep.adjoint()
    rows = admissible_rows(ad)
    for i in rows:
        try:
            q = wada_quotient(presentation, ad, i)
        except TorsionError:
            continue
        p = q.as_laurent()
        if p is None:
            raise TorsionError("adjoint quotient is not a Laurent polynomial")
        return AdjointTorsionPolynomial(normalize_adjoint(p), row=i)
    raise TorsionError("every admissible row has a vanishing denominator")
