"""Dense univariate polynomials over a field context.

A polynomial is a tuple of raw field elements, lowest degree first, with no
trailing zeros; the zero polynomial is ``()``.  Every function takes the
coefficient field ``K`` as its first argument.
"""

from fractions import Fraction
from math import gcd as igcd


def trim(K, p):
    p = list(p)
    while p and K.is_zero(p[-1]):
        p.pop()
    return tuple(p)


def degree(p):
    return len(p) - 1


def lead(p):
    return p[-1]


def const(K, c):
    return () if K.is_zero(c) else (c,)


def add(K, p, q):
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] = K.add(out[i], c)
    return trim(K, out)


def neg(K, p):
    return tuple(K.neg(c) for c in p)


def sub(K, p, q):
    return add(K, p, neg(K, q))


def scale(K, p, c):
    if K.is_zero(c):
        return ()
    return trim(K, [K.mul(a, c) for a in p])


def shift(K, p, k):
    """Multiply by x^k, k >= 0."""
    if not p:
        return ()
    return (K.zero,) * k + tuple(p)


def mul(K, p, q):
    if not p or not q:
        return ()
    out = [K.zero] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if K.is_zero(a):
            continue
        for j, b in enumerate(q):
            out[i + j] = K.add(out[i + j], K.mul(a, b))
    return trim(K, out)


def power(K, p, n):
    result = (K.one,)
    base = p
    while n:
        if n & 1:
            result = mul(K, result, base)
        n >>= 1
        if n:
            base = mul(K, base, base)
    return result


def divmod_(K, p, q):
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(p)
    dq = len(q) - 1
    if len(r) <= dq:
        return (), tuple(p)
    inv_lc = K.inv(q[-1])
    quot = [K.zero] * (len(r) - dq)
    for k in range(len(r) - 1 - dq, -1, -1):
        c = r[k + dq]
        if K.is_zero(c):
            continue
        c = K.mul(c, inv_lc)
        quot[k] = c
        for j in range(dq + 1):
            r[k + j] = K.sub(r[k + j], K.mul(c, q[j]))
        # keep the eliminated slot exactly zero even on numeric fields
        r[k + dq] = K.zero
    return trim(K, quot), trim(K, r[:dq])


def rem(K, p, q):
    return divmod_(K, p, q)[1]


def exact_quotient(K, p, q):
    """Quotient p/q, or None when q does not divide p."""
    quot, r = divmod_(K, p, q)
    return None if r else quot


def monic(K, p):
    if not p:
        return ()
    return scale(K, p, K.inv(p[-1]))


def evaluate(K, p, x):
    acc = K.zero
    for c in reversed(p):
        acc = K.add(K.mul(acc, x), c)
    return acc


def derivative(K, p):
    return trim(K, [K.mul(K.from_int(i), c) for i, c in enumerate(p)][1:])


def compose(K, p, q):
    """p(q(x))."""
    acc = ()
    for c in reversed(p):
        acc = add(K, mul(K, acc, q), const(K, c))
    return acc


# -- gcd ---------------------------------------------------------------------

def _primitive_int(p):
    """Scale a Fraction polynomial to a primitive integer polynomial."""
    den = 1
    for c in p:
        den = den * c.denominator // igcd(den, c.denominator)
    ints = [int(c * den) for c in p]
    g = 0
    for c in ints:
        g = igcd(g, c)
    if g > 1:
        ints = [c // g for c in ints]
    return ints


def _int_rem(a, b):
    """Pseudo-remainder of integer polynomials: lc(b)^(da-db+1) a mod b."""
    a = list(a)
    db = len(b) - 1
    lcb = b[-1]
    for _ in range(len(a) - db):
        c = a[-1]
        a = [x * lcb for x in a]
        if c:
            off = len(a) - 1 - db
            for j in range(db + 1):
                a[off + j] -= c * b[j]
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def subresultant_gcd_int(a, b):
    """Primitive gcd of integer polynomials via the subresultant PRS."""
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return a
    g, h = 1, 1
    while True:
        delta = len(a) - len(b)
        r = _int_rem(a, b)
        if not r:
            break
        if len(r) == 1:
            return [1]
        divisor = g * h ** delta
        a, b = b, [c // divisor for c in r]
        g = a[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = g ** delta // h ** (delta - 1)
    content = 0
    for c in b:
        content = igcd(content, c)
    return [c // content for c in b]


def gcd(K, p, q):
    """Monic gcd; subresultant PRS over the rationals, Euclid elsewhere."""
    if not p:
        return monic(K, q)
    if not q:
        return monic(K, p)
    if getattr(K, "is_rationals", False):
        if len(p) == 1 or len(q) == 1:
            return (K.one,)
        g = subresultant_gcd_int(_primitive_int(p), _primitive_int(q))
        lc = g[-1]
        return tuple(Fraction(c, lc) for c in g)
    while q:
        p, q = q, rem(K, p, q)
    return monic(K, p)


def xgcd(K, p, q):
    """Return (g, s, t) with s*p + t*q = g monic."""
    r0, r1 = p, q
    s0, s1 = (K.one,), ()
    t0, t1 = (), (K.one,)
    while r1:
        quo, r = divmod_(K, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(K, s0, mul(K, quo, s1))
        t0, t1 = t1, sub(K, t0, mul(K, quo, t1))
    if not r0:
        return (), (), ()
    inv = K.inv(r0[-1])
    return scale(K, r0, inv), scale(K, s0, inv), scale(K, t0, inv)


def resultant(K, a, b):
    """Res(a, b) = lc(a)^deg(b) * prod_{a(x)=0} b(x), by Euclidean remainders."""
    if not a or not b:
        return K.zero
    res = K.one
    while True:
        da, db = len(a) - 1, len(b) - 1
        if db == 0:
            return K.mul(res, K.pow(b[0], da))
        if da == 0:
            return K.mul(res, K.pow(a[0], db))
        r = rem(K, a, b)
        if not r:
            return K.zero
        dr = len(r) - 1
        factor = K.pow(b[-1], da - dr)
        if (da * db) % 2:
            factor = K.neg(factor)
        res = K.mul(res, factor)
        a, b = b, r


def sqrt(K, p):
    """Square root of p in K[x] when p is a perfect square, else None.

    Requires ``K.sqrt`` for the leading coefficient.
    """
    if not p:
        return ()
    if (len(p) - 1) % 2:
        return None
    lc_root = K.sqrt(p[-1])
    if lc_root is None:
        return None
    n = (len(p) - 1) // 2
    two_lc_inv = K.inv(K.add(lc_root, lc_root))
    root = [K.zero] * (n + 1)
    root[n] = lc_root
    # match coefficients of x^(n+k) from the top down
    for k in range(n - 1, -1, -1):
        acc = p[n + k]
        for i in range(k + 1, n + 1):
            j = n + k - i
            if k < j <= n:
                acc = K.sub(acc, K.mul(root[i], root[j]))
        root[k] = K.mul(acc, two_lc_inv)
    root = trim(K, root)
    return root if mul(K, root, root) == trim(K, p) else None
