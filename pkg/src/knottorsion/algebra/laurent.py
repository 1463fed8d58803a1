"""Laurent polynomials in t over a coefficient field."""

from . import upoly


class NotDivisible(ArithmeticError):
    """Raised by :meth:`LaurentPolynomial.exact_div` for a nonzero remainder."""


class LaurentPolynomial:
    __slots__ = ("field", "terms")

    def __init__(self, field, terms=None):
        self.field = field
        clean = {}
        if terms:
            for k, c in terms.items():
                if not field.is_zero(c):
                    clean[int(k)] = c
        self.terms = clean

    @classmethod
    def monomial(cls, field, exp, coef=None):
        return cls(field, {exp: field.one if coef is None else coef})

    @classmethod
    def constant(cls, field, c):
        return cls(field, {0: c})

    @classmethod
    def zero(cls, field):
        return cls(field)

    @classmethod
    def one(cls, field):
        return cls(field, {0: field.one})

    @classmethod
    def from_dense(cls, field, coeffs, low=0):
        return cls(field, {low + i: c for i, c in enumerate(coeffs)})

    @classmethod
    def from_ints(cls, field, mapping):
        return cls(field, {k: field.from_int(v) for k, v in mapping.items()})

    # -- shape --------------------------------------------------------------
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    @property
    def mindeg(self):
        return min(self.terms)

    @property
    def maxdeg(self):
        return max(self.terms)

    @property
    def span(self):
        return self.maxdeg - self.mindeg if self.terms else 0

    def coeff(self, k):
        return self.terms.get(k, self.field.zero)

    @property
    def lead(self):
        return self.terms[self.maxdeg]

    @property
    def trail(self):
        return self.terms[self.mindeg]

    def items(self):
        return sorted(self.terms.items())

    def to_dense(self):
        """(low exponent, coefficient tuple from low to high)."""
        if not self.terms:
            return 0, ()
        lo, hi = self.mindeg, self.maxdeg
        z = self.field.zero
        return lo, tuple(self.terms.get(k, z) for k in range(lo, hi + 1))

    # -- arithmetic ---------------------------------------------------------
    def _check(self, other):
        if not isinstance(other, LaurentPolynomial):
            raise TypeError(f"expected LaurentPolynomial, got {type(other).__name__}")
        if other.field is not self.field and other.field != self.field:
            raise ValueError("Laurent polynomials over different fields")

    def __add__(self, other):
        self._check(other)
        K = self.field
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = K.add(out[k], c) if k in out else c
        return LaurentPolynomial(K, out)

    def __neg__(self):
        K = self.field
        return LaurentPolynomial(K, {k: K.neg(c) for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        self._check(other)
        K = self.field
        out = {}
        for i, a in self.terms.items():
            for j, b in other.terms.items():
                k = i + j
                ab = K.mul(a, b)
                out[k] = K.add(out[k], ab) if k in out else ab
        return LaurentPolynomial(K, out)

    def __pow__(self, n):
        if n < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (k, c), = self.terms.items()
            return LaurentPolynomial(self.field, {-k: self.field.inv(c)}) ** (-n)
        result = LaurentPolynomial.one(self.field)
        for _ in range(n):
            result = result * self
        return result

    def scale(self, c):
        K = self.field
        return LaurentPolynomial(K, {k: K.mul(v, c) for k, v in self.terms.items()})

    def shift(self, k):
        """Multiply by t^k."""
        return LaurentPolynomial(self.field, {e + k: c for e, c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        K = self.field
        if K.exact:
            return self.terms == other.terms
        keys = set(self.terms) | set(other.terms)
        return all(K.eq(self.coeff(k), other.coeff(k)) for k in keys)

    __hash__ = None

    def evaluate(self, x):
        K = self.field
        if not self.terms:
            return K.zero
        lo, dense = self.to_dense()
        value = upoly.evaluate(K, dense, x)
        return K.mul(value, K.pow(x, lo)) if lo else value

    def substitute_inverse(self):
        """t -> t^-1."""
        return LaurentPolynomial(self.field, {-k: c for k, c in self.terms.items()})

    def substitute_negate(self):
        """t -> -t."""
        K = self.field
        return LaurentPolynomial(K, {k: (K.neg(c) if k % 2 else c) for k, c in self.terms.items()})

    def map_coefficients(self, fn, field=None):
        return LaurentPolynomial(field or self.field, {k: fn(c) for k, c in self.terms.items()})

    def divmod_dense(self, other):
        """Division in F[t] after stripping the monomial parts of both sides."""
        self._check(other)
        a_lo, a = self.to_dense()
        b_lo, b = other.to_dense()
        q, r = upoly.divmod_(self.field, a, b)
        return q, r, a_lo - b_lo

    def exact_div(self, other):
        """The Laurent quotient self/other; raises NotDivisible otherwise."""
        if not other.terms:
            raise ZeroDivisionError("division by the zero Laurent polynomial")
        if not self.terms:
            return LaurentPolynomial.zero(self.field)
        q, r, offset = self.divmod_dense(other)
        if r:
            raise NotDivisible("nonzero remainder in Laurent division")
        return LaurentPolynomial.from_dense(self.field, q, offset)

    def try_div(self, other):
        """Quotient or None (non-divisibility is an outcome, not an error)."""
        try:
            return self.exact_div(other)
        except NotDivisible:
            return None

    # -- text ---------------------------------------------------------------
    def format(self, var="t"):
        from .fields import _needs_parens
        K = self.field
        if not self.terms:
            return "0"
        parts = []
        for k, c in sorted(self.terms.items(), reverse=True):
            text = K.format(c)
            if k == 0:
                term = f"({text})" if _needs_parens(text) and parts else text
            else:
                mono = var if k == 1 else f"{var}^{k}"
                if text == "1":
                    term = mono
                elif text == "-1":
                    term = "-" + mono
                else:
                    term = f"({text})*{mono}" if _needs_parens(text) else f"{text}*{mono}"
            if parts:
                parts.append(" - " + term[1:] if term.startswith("-") else " + " + term)
            else:
                parts.append(term)
        return "".join(parts)

    def __repr__(self):
        return f"LaurentPolynomial({self.format()})"


def laurent_from_coefficients(field, mapping):
    """Build from a {exponent: serialized coefficient} mapping."""
    return LaurentPolynomial(field, {int(k): field.parse(v) if isinstance(v, str) else v
                                     for k, v in mapping.items()})


class LaurentRing:
    """Adapter exposing F[t, t^-1] to the expression parser.

    Division is allowed only by monomials.
    """

    def __init__(self, field, var="t"):
        if var in field.variables() or var == "I":
            raise ValueError(f"variable name {var!r} already used in {field!r}")
        self.field = field
        self.var = var
        self.exact = field.exact
        self.zero = LaurentPolynomial.zero(field)
        self.one = LaurentPolynomial.one(field)
        if not field.exact:
            self.I = LaurentPolynomial.constant(field, field.I)
            self.ctx = _ScalarLift(field)

    def variables(self):
        names = {k: LaurentPolynomial.constant(self.field, v) for k, v in self.field.variables().items()}
        names[self.var] = LaurentPolynomial.monomial(self.field, 1)
        return names

    def from_fraction(self, q):
        return LaurentPolynomial.constant(self.field, self.field.from_fraction(q))

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def div(self, a, b):
        if len(b.terms) != 1:
            raise ValueError("Laurent polynomials can only be divided by monomials")
        return a * b ** -1

    def pow(self, a, n):
        return a ** n


class _ScalarLift:
    """Numeric literal hook used by the parser for big complex coefficients."""

    def __init__(self, field):
        self.field = field

    def mpf(self, text):
        return self.field.ctx.mpf(text)

    def mpc(self, value):
        return LaurentPolynomial.constant(self.field, self.field.ctx.mpc(value))


def parse_laurent(field, text, var="t"):
    """Parse a Laurent polynomial in ``var`` with coefficients in ``field``."""
    from .expr import parse_element
    return parse_element(LaurentRing(field, var), text)
