"""Square matrices over a field or over its Laurent ring, and determinants."""

from itertools import permutations

from . import upoly
from .laurent import LaurentPolynomial


class SquareMatrix:
    """Row-major square matrix; entries are raw field elements or, when
    ``laurent`` is set, :class:`LaurentPolynomial` values over ``field``."""

    def __init__(self, field, rows, laurent=False):
        rows = [list(r) for r in rows]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix is not square")
        self.field = field
        self.rows = rows
        self.laurent = laurent

    @property
    def dim(self):
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    @classmethod
    def identity(cls, field, n, laurent=False):
        one = LaurentPolynomial.one(field) if laurent else field.one
        zero = LaurentPolynomial.zero(field) if laurent else field.zero
        return cls(field, [[one if i == j else zero for j in range(n)] for i in range(n)], laurent)

    def _ops(self):
        K = self.field
        if self.laurent:
            return (lambda a, b: a + b), (lambda a, b: a * b), LaurentPolynomial.zero(K)
        return K.add, K.mul, K.zero

    def __matmul__(self, other):
        add, mul, zero = self._ops()
        n = self.dim
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = zero
                for k in range(n):
                    acc = add(acc, mul(self.rows[i][k], other.rows[k][j]))
                row.append(acc)
            out.append(row)
        return SquareMatrix(self.field, out, self.laurent)

    def determinant(self):
        if self.dim == 0:
            return LaurentPolynomial.one(self.field) if self.laurent else self.field.one
        if self.laurent:
            return laurent_determinant(self.field, self.rows)
        return field_determinant(self.field, self.rows)

    def cofactor_determinant(self):
        """Leibniz expansion; an independent check for small dimensions."""
        add, mul, zero = self._ops()
        n = self.dim
        one = LaurentPolynomial.one(self.field) if self.laurent else self.field.one
        total = zero
        for perm in permutations(range(n)):
            term = one
            for i, j in enumerate(perm):
                term = mul(term, self.rows[i][j])
            inversions = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
            if inversions % 2:
                term = -term if self.laurent else self.field.neg(term)
            total = add(total, term)
        return total


def field_determinant(K, rows):
    """Gaussian elimination over a field, largest-modulus pivots when numeric."""
    m = [list(r) for r in rows]
    n = len(m)
    det = K.one
    for c in range(n):
        candidates = [r for r in range(c, n) if not K.is_zero(m[r][c])]
        if not candidates:
            return K.zero
        p = candidates[0] if K.exact else max(candidates, key=lambda r: abs(m[r][c]))
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = K.neg(det)
        piv = m[c][c]
        det = K.mul(det, piv)
        inv = K.inv(piv)
        for r in range(c + 1, n):
            if K.is_zero(m[r][c]):
                continue
            f = K.mul(m[r][c], inv)
            for k in range(c + 1, n):
                m[r][k] = K.sub(m[r][k], K.mul(f, m[c][k]))
    return det


def _poly_size(K, p):
    if not p:
        return -1
    if K.exact:
        return -len(p)
    return max(abs(c) for c in p)


def bareiss(K, rows):
    """Fraction-free determinant of a matrix over K[x] (dense tuples)."""
    m = [list(r) for r in rows]
    n = len(m)
    sign = 1
    prev = (K.one,)
    for c in range(n - 1):
        candidates = [r for r in range(c, n) if m[r][c]]
        if not candidates:
            return ()
        # prefer short (exact) or large (numeric) pivots
        p = max(candidates, key=lambda r: _poly_size(K, m[r][c]))
        if p != c:
            m[c], m[p] = m[p], m[c]
            sign = -sign
        piv = m[c][c]
        for r in range(c + 1, n):
            for k in range(c + 1, n):
                num = upoly.sub(K, upoly.mul(K, piv, m[r][k]), upoly.mul(K, m[r][c], m[c][k]))
                q, rem = upoly.divmod_(K, num, prev)
                if rem and K.exact:
                    raise ArithmeticError("Bareiss division left a remainder")
                m[r][k] = q
            m[r][c] = ()
        prev = piv
    det = m[n - 1][n - 1]
    return upoly.neg(K, det) if sign < 0 else det


def laurent_determinant(K, rows):
    """Determinant over F[t^{+-1}]: clear negative exponents row by row,
    run Bareiss in F[t], then divide by the accumulated power of t."""
    n = len(rows)
    total_shift = 0
    dense_rows = []
    for row in rows:
        nonzero = [e for e in row if e.terms]
        if not nonzero:
            return LaurentPolynomial.zero(K)
        low = min(e.mindeg for e in nonzero)
        total_shift += low
        dense_row = []
        for e in row:
            if not e.terms:
                dense_row.append(())
                continue
            lo, coeffs = e.to_dense()
            dense_row.append(upoly.shift(K, coeffs, lo - low))
        dense_rows.append(dense_row)
    if n == 1:
        det = dense_rows[0][0]
    else:
        det = bareiss(K, dense_rows)
    return LaurentPolynomial.from_dense(K, det, total_shift)
