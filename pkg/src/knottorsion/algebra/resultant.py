"""Products over roots of unity via resultants with t^m - 1."""

from . import upoly


def fold_mod_cyclotomic(K, p, m):
    """Reduce a dense polynomial modulo t^m - 1 by folding exponents."""
    out = [K.zero] * m
    for k, c in enumerate(p):
        out[k % m] = K.add(out[k % m], c)
    return upoly.trim(K, out)


def root_of_unity_product(K, p, m):
    """prod over zeta^m = 1 of p(zeta), for a dense polynomial p.

    Since t^m - 1 is monic this is Res(t^m - 1, p); p is first folded modulo
    t^m - 1, which does not change any value at an m-th root of unity.
    """
    if m < 1:
        raise ValueError("m must be positive")
    folded = fold_mod_cyclotomic(K, p, m)
    if not folded:
        return K.zero
    cyclo = (K.neg(K.one),) + (K.zero,) * (m - 1) + (K.one,)
    return upoly.resultant(K, cyclo, folded)


def resultant_with_cyclotomic(p, m):
    """prod over zeta^m = 1 of p(zeta) for a Laurent polynomial p.

    With p = t^e * P for an ordinary polynomial P, the product of t^e over
    the m-th roots of unity is ((-1)^(m+1))^e, so the result is
    (-1)^((m+1)e) * Res(t^m - 1, P).  The classical r_m(P) = Res(P, t^m - 1)
    differs from Res(t^m - 1, P) by (-1)^(m deg P); see :func:`r_m`.
    """
    K = p.field
    if p.is_zero():
        raise ValueError("resultant of the zero polynomial")
    low, dense = p.to_dense()
    value = root_of_unity_product(K, dense, m)
    if ((m + 1) * low) % 2:
        value = K.neg(value)
    return value


def r_m(K, p, m):
    """Res(p, t^m - 1) for a dense polynomial p (the Fried sequence)."""
    value = root_of_unity_product(K, p, m)
    if (m * (len(p) - 1)) % 2:
        value = K.neg(value)
    return value
