"""Readouts of a torsion polynomial: genus bound, monicity, chirality,
values at +-1, cyclic-cover torsions and Fried-Hillar reconstruction."""

import logging
import random
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .algebra import BigComplexField, LaurentPolynomial, QuotientExtension, RationalFunctionField
from .algebra.resultant import resultant_with_cyclotomic
from .torsion import AdjointTorsionPolynomial, TorsionPolynomial

log = logging.getLogger(__name__)

DEFAULT_M_MAX = 24


class ReconstructionError(ArithmeticError):
    pass


@dataclass
class DiagnosticsReport:
    span: int
    genus_bound: Fraction
    odd_rounded_bound: int
    monic: bool
    monic_margin: object
    real_coefficients: object  # True/False, or None when undecidable
    real_margin: object
    eval_at_1: object
    eval_at_minus_1: object
    nonvanishing: bool
    first_vanishing_m: object
    nonvanishing_checked_up_to: int
    adjoint: bool = False


def _poly_of(T):
    if isinstance(T, (TorsionPolynomial, AdjointTorsionPolynomial)):
        return T.poly
    return T


def _least_odd_at_least(q):
    n = -((-q.numerator) // q.denominator)
    return n if n % 2 else n + 1


def _complex_ctx(K):
    if isinstance(K, BigComplexField):
        return K.ctx
    ctx = mpmath.MPContext()
    ctx.dps = 60
    return ctx


def coefficient_to_complex(K, c, ctx):
    """Numeric value of a coefficient, or None without an embedding."""
    try:
        return K.to_complex(c, ctx)
    except (AttributeError, TypeError, ValueError, NotImplementedError):
        return None


def is_real(K, p):
    """(decision, margin) for realness of all coefficients."""
    if isinstance(K, RationalFunctionField):
        return None, None
    if K.exact and K.is_rationals:
        return True, 0
    if isinstance(K, QuotientExtension):
        root = K.root
        out = True
        for c in p.terms.values():
            try:
                x = c
                F = K
                while F is not root:
                    x = F.descend(x)
                    F = F.base
            except Exception:
                out = None
                break
        if out:
            return True, 0
    ctx = _complex_ctx(K)
    worst = ctx.mpf(0)
    for c in p.terms.values():
        z = coefficient_to_complex(K, c, ctx)
        if z is None:
            return None, None
        worst = max(worst, abs(ctx.im(z)))
    tol = K.tolerance if not K.exact else ctx.mpf(10) ** (-(ctx.dps // 2))
    return bool(worst <= tol), worst


def diagnose(T, m_max=DEFAULT_M_MAX):
    p = _poly_of(T)
    if p.is_zero():
        raise ValueError("cannot diagnose the zero polynomial")
    K = p.field
    adjoint = isinstance(T, AdjointTorsionPolynomial)
    span = p.span
    bound = Fraction(span, 3) if adjoint else Fraction(span, 2)
    lead = p.lead
    monic = K.eq(lead, K.one)
    margin = abs(lead - K.one) if not K.exact else 0
    real, real_margin = is_real(K, p)
    ok, first = (True, None)
    if not adjoint:
        ok, first = nonvanishing_at_roots_of_unity(p, m_max)
    return DiagnosticsReport(
        span=span, genus_bound=bound, odd_rounded_bound=_least_odd_at_least(bound),
        monic=monic, monic_margin=margin, real_coefficients=real, real_margin=real_margin,
        eval_at_1=p.evaluate(K.one), eval_at_minus_1=p.evaluate(K.neg(K.one)),
        nonvanishing=ok, first_vanishing_m=first,
        nonvanishing_checked_up_to=0 if adjoint else m_max, adjoint=adjoint)


# -- cyclic covers ---------------------------------------------------------------

def direct_root_of_unity_product(p, m, ctx):
    """prod over zeta^m = 1 of p(zeta), numerically; None without an embedding."""
    K = p.field
    coeffs = {}
    for k, c in p.terms.items():
        z = coefficient_to_complex(K, c, ctx)
        if z is None:
            return None
        coeffs[k] = z
    total = ctx.mpc(1)
    for j in range(m):
        zeta = ctx.expjpi(ctx.mpf(2 * j) / m)
        total *= ctx.fsum(c * zeta ** k for k, c in coeffs.items())
    return total


def cyclic_cover_torsion(T, m, *, cross_check=True):
    """prod over the m-th roots of unity of T(zeta), exactly on exact fields."""
    if m < 1:
        raise ValueError("m must be positive")
    p = _poly_of(T)
    value = resultant_with_cyclotomic(p, m)
    if cross_check and m <= 12:
        K = p.field
        ctx = _complex_ctx(K)
        direct = direct_root_of_unity_product(p, m, ctx)
        exact_value = coefficient_to_complex(K, value, ctx)
        if direct is not None and exact_value is not None:
            scale = max(ctx.mpf(1), abs(direct))
            tol = ctx.mpf(10) ** (-(ctx.dps // 3))
            if abs(direct - exact_value) > tol * scale:
                raise ArithmeticError(f"cyclic cover torsion cross-check failed for m = {m}")
    return value


def nonvanishing_at_roots_of_unity(T, m_max=DEFAULT_M_MAX):
    """(True, None) or (False, first m with a vanishing product)."""
    p = _poly_of(T)
    K = p.field
    for m in range(1, m_max + 1):
        if K.is_zero(cyclic_cover_torsion(p, m, cross_check=False)):
            return False, m
    return True, None


def fried_distinguish(p, q, m_max=50):
    """Smallest m <= m_max where the cyclic cover torsions differ, else None."""
    p, q = _poly_of(p), _poly_of(q)
    K = p.field
    for m in range(1, m_max + 1):
        a = cyclic_cover_torsion(p, m, cross_check=False)
        b = cyclic_cover_torsion(q, m, cross_check=False)
        if not K.eq(a, b):
            return m
    return None


# -- reconstruction ------------------------------------------------------------------

def _symmetric_from_coeffs(K, cs):
    terms = {0: cs[0]}
    for k in range(1, len(cs)):
        terms[k] = cs[k]
        terms[-k] = cs[k]
    return LaurentPolynomial(K, terms)


def _forward(ctx, cs, m):
    """Value and gradient of prod_zeta T(zeta) in the free coefficients."""
    n = len(cs)
    vals, basis = [], []
    for j in range(m):
        zeta = ctx.expjpi(ctx.mpf(2 * j) / m)
        b = [ctx.mpc(1)] + [zeta ** k + zeta ** (-k) for k in range(1, n)]
        basis.append(b)
        vals.append(ctx.fsum(c * x for c, x in zip(cs, b)))
    total = ctx.mpc(1)
    for v in vals:
        total *= v
    grad = []
    for k in range(n):
        g = ctx.mpc(0)
        for j in range(m):
            others = ctx.mpc(1)
            for i, v in enumerate(vals):
                if i != j:
                    others *= v
            g += basis[j][k] * others
        grad.append(g)
    return total, grad


def fried_reconstruct(d, resultants, field=None, *, seed=0, starts=40, max_iter=200):
    """Recover a symmetric polynomial of span d from prod_zeta T(zeta), m = 1..M.

    Damped Newton on the d/2 + 1 free coefficients using the first d/2 + 1
    products, from random starts; the remaining products are used as a check.
    """
    if d < 0 or d % 2:
        raise ValueError("span must be a nonnegative even integer")
    K = field or BigComplexField()
    if K.exact:
        raise ValueError("reconstruction needs a numeric field")
    ctx = K.ctx
    n = d // 2 + 1
    r = [ctx.mpc(ctx.mpf(x.numerator) / x.denominator) if isinstance(x, Fraction) else ctx.mpc(x)
         for x in resultants]
    if len(r) < n:
        raise ValueError(f"need at least {n} cyclic cover torsions, got {len(r)}")
    vanishing = [m for m, x in enumerate(r, 1) if abs(x) <= ctx.mpf(10) ** (-(ctx.dps * 2 // 3))]
    if vanishing:
        # uniqueness needs r_m != 0; a zero product loses the polynomial
        raise ValueError(f"cyclic cover torsion vanishes at m = {vanishing[0]}; reconstruction is not unique")
    if n == 1:
        return TorsionPolynomial(_symmetric_from_coeffs(K, [r[0]]))
    tol = ctx.mpf(10) ** (-(ctx.dps * 2 // 3))
    scales = [max(ctx.mpf(1), abs(x)) for x in r]
    rng = random.Random(seed)
    size = max(ctx.mpf(1), abs(r[0]) / (2 * n - 1))

    def residual(cs, eqs):
        out = []
        for m in eqs:
            val, _ = _forward(ctx, cs, m)
            out.append((val - r[m - 1]) / scales[m - 1])
        return out

    def norm(v):
        return max(abs(x) for x in v)

    for attempt in range(starts):
        cs = [ctx.mpc(rng.gauss(0, 1), rng.gauss(0, 1)) * size for _ in range(n)]
        # T(1) = r_1 fixes c_0 once the others are chosen
        cs[0] = r[0] - 2 * ctx.fsum(cs[1:])
        res = residual(cs, range(1, n + 1))
        for _ in range(max_iter):
            if norm(res) < tol:
                break
            J, F = [], []
            for m in range(1, n + 1):
                val, grad = _forward(ctx, cs, m)
                J.append([g / scales[m - 1] for g in grad])
                F.append(-(val - r[m - 1]) / scales[m - 1])
            try:
                step = ctx.lu_solve(ctx.matrix(J), ctx.matrix(F))
            except ZeroDivisionError:
                break
            lam = ctx.mpf(1)
            current = norm(res)
            while lam > ctx.mpf(2) ** -30:
                trial = [c + lam * step[k] for k, c in enumerate(cs)]
                tres = residual(trial, range(1, n + 1))
                if norm(tres) < current:
                    cs, res = trial, tres
                    break
                lam /= 2
            else:
                break
        if norm(res) >= tol:
            continue
        check = residual(cs, range(1, len(r) + 1))
        if norm(check) < ctx.mpf(10) ** (-(ctx.dps // 3)):
            log.debug("fried_reconstruct converged after %d starts", attempt + 1)
            return TorsionPolynomial(_symmetric_from_coeffs(K, [K.from_complex(c) for c in cs]))
    raise ReconstructionError(f"no convergent start among {starts}")
