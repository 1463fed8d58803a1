"""Coefficient fields.

Elements are plain Python values owned by their field object (``Fraction``
for the rationals, tuples for extensions and rational functions, ``mpc`` for
big complex numbers); all arithmetic goes through the field.  Exact fields
keep a unique canonical form per value so ``==`` on raw elements is equality.
"""

import re
from fractions import Fraction
from math import isqrt

import mpmath

from . import upoly


class FieldError(ValueError):
    pass


class Field:
    exact = True
    is_rationals = False

    # -- derived operations -------------------------------------------------
    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n):
        if n < 0:
            return self.pow(self.inv(a), -n)
        result, base = self.one, a
        while n:
            if n & 1:
                result = self.mul(result, base)
            n >>= 1
            if n:
                base = self.mul(base, base)
        return result

    def is_zero(self, a):
        return a == self.zero

    def eq(self, a, b):
        return a == b

    def is_one(self, a):
        return self.eq(a, self.one)

    def from_fraction(self, q):
        q = Fraction(q)
        return self.div(self.from_int(q.numerator), self.from_int(q.denominator))

    def __call__(self, value):
        if isinstance(value, str):
            from .expr import parse_element
            return parse_element(self, value)
        if isinstance(value, int):
            return self.from_int(value)
        if isinstance(value, Fraction):
            return self.from_fraction(value)
        raise TypeError(f"cannot convert {value!r} into {self}")

    def parse(self, text):
        from .expr import parse_element
        return parse_element(self, text)

    # -- tower --------------------------------------------------------------
    @property
    def base(self):
        return None

    def tower(self):
        """Fields from the root up to self."""
        chain = [self]
        while chain[-1].base is not None:
            chain.append(chain[-1].base)
        return chain[::-1]

    @property
    def root(self):
        return self.tower()[0]

    def variables(self):
        """Map of generator name to its element of this field."""
        names = {}
        for F in self.tower():
            name = getattr(F, "var", None)
            if name is not None:
                names[name] = self.coerce(F.gen, F)
        return names

    def coerce(self, a, source):
        """Embed an element of a subfield ``source`` of the tower into self."""
        if source is self:
            return a
        if self.base is None:
            raise FieldError(f"{source} is not a subfield of {self}")
        return self.embed(self.base.coerce(a, source))

    def sqrt(self, a):
        return None


class RationalField(Field):
    is_rationals = True

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def from_int(self, n):
        return Fraction(n)

    def from_fraction(self, q):
        return Fraction(q)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("division by zero in QQ")
        return 1 / a

    def div(self, a, b):
        if not b:
            raise ZeroDivisionError("division by zero in QQ")
        return a / b

    def is_zero(self, a):
        return not a

    def sqrt(self, a):
        if a < 0:
            return None
        n, d = isqrt(a.numerator), isqrt(a.denominator)
        if n * n == a.numerator and d * d == a.denominator:
            return Fraction(n, d)
        return None

    def format(self, a):
        return str(a)

    def to_complex(self, a, ctx):
        return ctx.mpf(a.numerator) / a.denominator

    def describe(self):
        return {"kind": "rationals"}


QQ = RationalField()


def _needs_parens(text):
    body = text[1:] if text.startswith("-") else text
    return any(ch in body for ch in "+-/") or ("*" in body and "I" in body)


def format_poly(K, p, var):
    """Render a dense polynomial over K in the variable ``var``."""
    if not p:
        return "0"
    parts = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if K.is_zero(c):
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        text = K.format(c)
        if mono:
            if text == "1":
                term = mono
            elif text == "-1":
                term = "-" + mono
            else:
                term = f"({text})*{mono}" if _needs_parens(text) else f"{text}*{mono}"
        else:
            term = f"({text})" if _needs_parens(text) and parts else text
        if parts:
            if term.startswith("-"):
                parts.append(" - " + term[1:])
            else:
                parts.append(" + " + term)
        else:
            parts.append(term)
    return "".join(parts)


class QuotientExtension(Field):
    """base[var]/(modulus) for a monic irreducible modulus of degree >= 2.

    Elements are residue coefficient tuples of fixed length deg(modulus).
    ``embedding`` optionally names an approximate complex root, which fixes
    how elements are evaluated numerically (see :meth:`to_complex`).
    """

    def __init__(self, base, modulus, var, *, trusted=False, embedding=None, check=True):
        modulus = upoly.trim(base, modulus)
        if len(modulus) < 3:
            raise FieldError("extension modulus must have degree >= 2")
        if not base.is_one(modulus[-1]):
            modulus = upoly.monic(base, modulus)
        if var in base.variables() or var == "I":
            raise FieldError(f"variable name {var!r} already used in the tower")
        self._base = base
        self.modulus = tuple(modulus)
        self.var = var
        self.n = len(modulus) - 1
        self.trusted = trusted
        self.embedding = embedding
        self.exact = base.exact
        self.zero = (base.zero,) * self.n
        self.one = (base.one,) + (base.zero,) * (self.n - 1)
        self.gen = (base.zero, base.one) + (base.zero,) * (self.n - 2)
        self._root_cache = {}
        if check and not trusted:
            check_irreducible(base, self.modulus)

    @property
    def base(self):
        return self._base

    def __repr__(self):
        return f"{self._base!r}[{self.var}]/({format_poly(self._base, self.modulus, self.var)})"

    def __eq__(self, other):
        return (isinstance(other, QuotientExtension) and other._base == self._base
                and other.modulus == self.modulus and other.var == self.var)

    def __hash__(self):
        return hash((self._base, self.modulus, self.var))

    def _pad(self, p):
        p = tuple(p)
        return p + (self._base.zero,) * (self.n - len(p))

    def _reduce(self, p):
        p = list(p)
        K, m, n = self._base, self.modulus, self.n
        for k in range(len(p) - 1, n - 1, -1):
            c = p[k]
            if K.is_zero(c):
                continue
            for j in range(n):
                p[k - n + j] = K.sub(p[k - n + j], K.mul(c, m[j]))
            p[k] = K.zero
        return self._pad(p[:n])

    def from_int(self, n):
        return (self._base.from_int(n),) + (self._base.zero,) * (self.n - 1)

    def from_fraction(self, q):
        return (self._base.from_fraction(q),) + (self._base.zero,) * (self.n - 1)

    def embed(self, b):
        return (b,) + (self._base.zero,) * (self.n - 1)

    def descend(self, a):
        """The base element equal to ``a``; FieldError if a is not in the base."""
        if any(not self._base.is_zero(c) for c in a[1:]):
            raise FieldError(f"element does not lie in {self._base!r}")
        return a[0]

    def from_poly(self, p):
        return self._reduce(p)

    def add(self, a, b):
        K = self._base
        return tuple(K.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        K = self._base
        return tuple(K.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        K = self._base
        return tuple(K.neg(x) for x in a)

    def mul(self, a, b):
        K = self._base
        n = self.n
        prod = [K.zero] * (2 * n - 1)
        for i, x in enumerate(a):
            if K.is_zero(x):
                continue
            for j, y in enumerate(b):
                if K.is_zero(y):
                    continue
                prod[i + j] = K.add(prod[i + j], K.mul(x, y))
        return self._reduce(prod)

    def inv(self, a):
        K = self._base
        p = upoly.trim(K, a)
        if not p:
            raise ZeroDivisionError(f"division by zero in {self!r}")
        g, s, _ = upoly.xgcd(K, p, self.modulus)
        if len(g) != 1:
            raise FieldError(f"modulus of {self!r} is reducible: {a!r} is a zero divisor")
        return self._pad(s)

    def is_zero(self, a):
        K = self._base
        return all(K.is_zero(x) for x in a)

    def eq(self, a, b):
        if self.exact:
            return a == b
        K = self._base
        return all(K.eq(x, y) for x, y in zip(a, b))

    def sqrt(self, a):
        K = self._base
        if self.is_zero(a):
            return self.zero
        try:
            b = self.descend(a)
        except FieldError:
            return None
        r = K.sqrt(b)
        if r is not None:
            return self.embed(r)
        if self.n != 2:
            return None
        # base[s]/(s^2 - x s + 1): (c*(s - x/2))^2 = c^2 (x^2 - 4)/4
        x = K.neg(self.modulus[1])
        disc = K.sub(K.mul(x, x), K.mul(K.from_int(4), self.modulus[0]))
        if K.is_zero(disc):
            return None
        c = K.sqrt(K.div(K.mul(K.from_int(4), b), disc))
        if c is None:
            return None
        half_x = K.div(x, K.from_int(2))
        return (K.neg(K.mul(c, half_x)), c)

    def format(self, a):
        return format_poly(self._base, upoly.trim(self._base, a), self.var)

    def conjugate_root(self, ctx):
        """The complex root of the modulus selected by ``embedding``."""
        key = ctx.prec
        if key in self._root_cache:
            return self._root_cache[key]
        if self.embedding is None:
            raise FieldError(f"{self!r} has no complex embedding")
        guess = parse_complex(ctx, self.embedding)
        coeffs = [self._base.to_complex(c, ctx) for c in self.modulus]
        with ctx.workprec(ctx.prec + 40):
            roots = ctx.polyroots(coeffs[::-1], maxsteps=400, extraprec=2 * ctx.prec)
        best = min(roots, key=lambda r: abs(r - guess))
        self._root_cache[key] = best
        return best

    def to_complex(self, a, ctx):
        theta = self.conjugate_root(ctx)
        acc = ctx.mpc(0)
        for c in reversed(a):
            acc = acc * theta + self._base.to_complex(c, ctx)
        return acc

    def describe(self):
        d = {
            "kind": "extension",
            "base": self._base.describe(),
            "variable": self.var,
            "modulus": format_poly(self._base, self.modulus, self.var),
        }
        if self.embedding is not None:
            d["embedding"] = self.embedding
        if self.trusted:
            d["trusted"] = True
        return d


class RationalFunctionField(Field):
    """base(var): reduced fractions num/den with den monic."""

    def __init__(self, base, var):
        if var in base.variables() or var == "I":
            raise FieldError(f"variable name {var!r} already used in the tower")
        if not base.exact:
            raise FieldError("rational functions need an exact base field")
        self._base = base
        self.var = var
        self.zero = ((), (base.one,))
        self.one = ((base.one,), (base.one,))
        self.gen = ((base.zero, base.one), (base.one,))

    @property
    def base(self):
        return self._base

    def __repr__(self):
        return f"{self._base!r}({self.var})"

    def __eq__(self, other):
        return (isinstance(other, RationalFunctionField) and other._base == self._base
                and other.var == self.var)

    def __hash__(self):
        return hash((self._base, "frac", self.var))

    def make(self, num, den=None):
        """Canonical element num/den from dense polynomials over the base."""
        K = self._base
        num = upoly.trim(K, num)
        den = (K.one,) if den is None else upoly.trim(K, den)
        if not den:
            raise ZeroDivisionError(f"zero denominator in {self!r}")
        if not num:
            return self.zero
        if len(den) > 1:
            g = upoly.gcd(K, num, den)
            if len(g) > 1:
                num = upoly.divmod_(K, num, g)[0]
                den = upoly.divmod_(K, den, g)[0]
        lc = den[-1]
        if not K.is_one(lc):
            inv = K.inv(lc)
            num = upoly.scale(K, num, inv)
            den = upoly.scale(K, den, inv)
        return (num, den)

    def from_int(self, n):
        return self.embed(self._base.from_int(n))

    def from_fraction(self, q):
        return self.embed(self._base.from_fraction(q))

    def embed(self, b):
        if self._base.is_zero(b):
            return self.zero
        return ((b,), (self._base.one,))

    def descend(self, a):
        num, den = a
        if len(num) > 1 or len(den) > 1:
            raise FieldError(f"element is not constant in {self.var}")
        return num[0] if num else self._base.zero

    def add(self, a, b):
        K = self._base
        (an, ad), (bn, bd) = a, b
        if not an:
            return b
        if not bn:
            return a
        if ad == bd:
            return self.make(upoly.add(K, an, bn), ad)
        if len(ad) == 1 and len(bd) == 1:
            num = upoly.add(K, an, bn)
            return (num, ad) if num else self.zero
        g = upoly.gcd(K, ad, bd)
        ad_g = upoly.divmod_(K, ad, g)[0]
        bd_g = upoly.divmod_(K, bd, g)[0]
        num = upoly.add(K, upoly.mul(K, an, bd_g), upoly.mul(K, bn, ad_g))
        return self.make(num, upoly.mul(K, ad, bd_g))

    def neg(self, a):
        return (upoly.neg(self._base, a[0]), a[1])

    def mul(self, a, b):
        K = self._base
        (an, ad), (bn, bd) = a, b
        if not an or not bn:
            return self.zero
        if len(ad) == 1 and len(bd) == 1:
            return (upoly.mul(K, an, bn), ad)
        g1 = upoly.gcd(K, an, bd)
        g2 = upoly.gcd(K, bn, ad)
        if len(g1) > 1:
            an = upoly.divmod_(K, an, g1)[0]
            bd = upoly.divmod_(K, bd, g1)[0]
        if len(g2) > 1:
            bn = upoly.divmod_(K, bn, g2)[0]
            ad = upoly.divmod_(K, ad, g2)[0]
        num = upoly.mul(K, an, bn)
        den = upoly.mul(K, ad, bd)
        lc = den[-1]
        if not K.is_one(lc):
            inv = K.inv(lc)
            num, den = upoly.scale(K, num, inv), upoly.scale(K, den, inv)
        return (num, den)

    def inv(self, a):
        if not a[0]:
            raise ZeroDivisionError(f"division by zero in {self!r}")
        K = self._base
        num, den = a[1], a[0]
        inv = K.inv(den[-1])
        return (upoly.scale(K, num, inv), upoly.scale(K, den, inv))

    def is_zero(self, a):
        return not a[0]

    def sqrt(self, a):
        K = self._base
        num, den = a
        if not num:
            return self.zero
        rn = upoly.sqrt(K, num)
        if rn is None:
            return None
        rd = upoly.sqrt(K, den)
        if rd is None:
            return None
        return self.make(rn, rd)

    def evaluate(self, a, point):
        """Value at a base-field point; ZeroDivisionError at a pole."""
        K = self._base
        den = upoly.evaluate(K, a[1], point)
        if K.is_zero(den):
            raise ZeroDivisionError("pole")
        return K.div(upoly.evaluate(K, a[0], point), den)

    def substitute(self, a, g, target):
        """Compose a(var) with var -> g, an element of the field ``target``.

        ``target`` must contain this field's base (e.g. another rational
        function field over the same base).
        """
        K = self._base
        num = target.zero
        for c in reversed(a[0]):
            num = target.add(target.mul(num, g), target.coerce(c, K))
        den = target.zero
        for c in reversed(a[1]):
            den = target.add(target.mul(den, g), target.coerce(c, K))
        return target.div(num, den)

    def format(self, a):
        num, den = a
        if self._base.is_rationals and num:
            num, den = _integral_pair(num, den)
        ntext = format_poly(self._base, num, self.var)
        if len(den) == 1 and den[0] == 1:
            return ntext
        dtext = format_poly(self._base, den, self.var)
        if sum(1 for c in num if not self._base.is_zero(c)) > 1 or _needs_parens(ntext):
            ntext = f"({ntext})"
        if not re.fullmatch(rf"\d+|{re.escape(self.var)}(\^\d+)?", dtext):
            dtext = f"({dtext})"
        return f"{ntext}/{dtext}"

    def describe(self):
        return {"kind": "rational_functions", "base": self._base.describe(), "variable": self.var}


def _integral_pair(num, den):
    """Scale num/den over QQ to coprime integer coefficients, den lead > 0."""
    from math import gcd, lcm
    scale = 1
    for c in num + den:
        scale = lcm(scale, c.denominator)
    ni = [int(c * scale) for c in num]
    di = [int(c * scale) for c in den]
    g = 0
    for c in ni + di:
        g = gcd(g, c)
    if di[-1] < 0:
        g = -g
    return tuple(Fraction(c // g) for c in ni), tuple(Fraction(c // g) for c in di)


class BigComplexField(Field):
    """Fixed-precision complex numbers; equality is within ``tolerance``."""

    exact = False

    def __init__(self, precision=250, tolerance=None):
        if precision < 15:
            raise FieldError("precision must be at least 15 digits")
        self.precision = precision
        self.ctx = mpmath.MPContext()
        self.ctx.dps = precision
        if tolerance is None:
            self.tolerance = self.ctx.mpf(10) ** (-(precision // 2))
            self._tol_text = f"1e-{precision // 2}"
        else:
            self.tolerance = self.ctx.mpf(tolerance)
            self._tol_text = str(tolerance)
        self.zero = self.ctx.mpc(0)
        self.one = self.ctx.mpc(1)
        self.I = self.ctx.mpc(0, 1)

    def __repr__(self):
        return f"CC[{self.precision}]"

    def __eq__(self, other):
        return (isinstance(other, BigComplexField) and other.precision == self.precision
                and other.tolerance == self.tolerance)

    def __hash__(self):
        return hash(("CC", self.precision))

    def variables(self):
        return {}

    def from_int(self, n):
        return self.ctx.mpc(n)

    def from_fraction(self, q):
        q = Fraction(q)
        return self.ctx.mpc(self.ctx.mpf(q.numerator) / q.denominator)

    def from_complex(self, z):
        return self.ctx.mpc(z)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if abs(a) <= self.tolerance:
            raise ZeroDivisionError("inversion of a value below tolerance")
        return 1 / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a):
        return abs(a) <= self.tolerance

    def eq(self, a, b):
        return abs(a - b) <= self.tolerance

    def conjugate(self, a):
        return self.ctx.conj(a)

    def sqrt(self, a):
        return self.ctx.sqrt(a)

    def format(self, a):
        return format_complex(self.ctx, a, self.precision)

    def to_complex(self, a, ctx):
        return ctx.mpc(a)

    def describe(self):
        return {"kind": "complex", "precision": self.precision, "tolerance": self._tol_text}


def format_complex(ctx, z, digits):
    def fmt(x):
        return ctx.nstr(x, digits, strip_zeros=False, min_fixed=-5, max_fixed=6)
    re, im = ctx.re(z), ctx.im(z)
    im_text = fmt(im)
    if im_text.startswith("-"):
        return f"{fmt(re)} - {im_text[1:]}*I"
    return f"{fmt(re)} + {im_text}*I"


def parse_complex(ctx, text):
    from .expr import parse_element
    return parse_element(BigComplexField(max(15, ctx.dps)), text) if isinstance(text, str) else ctx.mpc(text)


def check_irreducible(base, modulus):
    """Verify irreducibility; exact over QQ, via square roots for quadratics.

    Anything else must be declared ``trusted``.
    """
    if base.is_rationals:
        import sympy
        x = sympy.Symbol("x")
        poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in modulus[::-1]], x, domain="QQ")
        if not poly.is_irreducible:
            raise FieldError(f"modulus {poly.as_expr()} is reducible over QQ")
        return
    if len(modulus) == 3 and base.exact:
        b, c = modulus[1], modulus[0]
        disc = base.sub(base.mul(b, b), base.mul(base.from_int(4), c))
        if base.sqrt(disc) is not None:
            raise FieldError(f"quadratic modulus splits over {base!r}")
        return
    raise FieldError(
        f"cannot certify irreducibility over {base!r}; pass trusted=True to accept the modulus")


def field_from_description(desc):
    kind = desc["kind"]
    if kind == "rationals":
        return QQ
    if kind == "complex":
        return BigComplexField(int(desc.get("precision", 250)), desc.get("tolerance"))
    base = field_from_description(desc["base"])
    var = desc["variable"]
    if kind == "rational_functions":
        return RationalFunctionField(base, var)
    if kind == "extension":
        ring = RationalFunctionField(base, var) if base.exact else None
        if ring is None:
            raise FieldError("extensions of numeric fields are not supported")
        num, den = ring.parse(desc["modulus"])
        if len(den) != 1:
            raise FieldError("extension modulus must be a polynomial")
        modulus = upoly.scale(base, num, base.inv(den[0]))
        return QuotientExtension(base, modulus, var, trusted=bool(desc.get("trusted", False)),
                                 embedding=desc.get("embedding"))
    raise FieldError(f"unknown field kind {kind!r}")
