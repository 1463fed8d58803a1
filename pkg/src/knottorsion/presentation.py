"""Group presentations, free group words, Fox calculus and abelianization."""

import re
from dataclasses import dataclass
from math import gcd


class PresentationError(ValueError):
    """Malformed or unsupported presentation."""


class Word(tuple):
    """Freely reduced word stored as ((generator index, exponent), ...)."""

    __slots__ = ()

    def __new__(cls, letters=()):
        return super().__new__(cls, _reduce(letters))

    @classmethod
    def _raw(cls, reduced):
        return super().__new__(cls, reduced)

    @classmethod
    def gen(cls, i, e=1):
        return cls._raw(((i, e),)) if e else cls._raw(())

    def __mul__(self, other):
        if not self:
            return other
        if not other:
            return self
        # only the junction can cancel
        left, right = list(self), list(other)
        while left and right and left[-1][0] == right[0][0]:
            g = left[-1][0]
            e = left.pop()[1] + right[0][1]
            right.pop(0)
            if e:
                left.append((g, e))
                break
        return Word._raw(tuple(left + right))

    def inverse(self):
        return Word._raw(tuple((g, -e) for g, e in reversed(self)))

    @property
    def length(self):
        return sum(abs(e) for _, e in self.runs())

    def runs(self):
        return tuple.__iter__(self)

    @property
    def nruns(self):
        return tuple.__len__(self)

    def letters(self):
        """Expanded sequence of (index, +-1)."""
        out = []
        for g, e in self.runs():
            s = 1 if e > 0 else -1
            out.extend([(g, s)] * abs(e))
        return out

    def exponent_sums(self, n):
        sums = [0] * n
        for g, e in self.runs():
            sums[g] += e
        return sums

    def format(self, names):
        if not self.nruns:
            return "1"
        parts = []
        for g, e in self.runs():
            name = names[g]
            if e < 0:
                name, e = name.upper(), -e
            parts.append(name if e == 1 else f"{name}^{e}")
        return "".join(parts)

    def __repr__(self):
        return f"Word({list(self.runs())})"


def _reduce(letters):
    stack = []
    for g, e in letters:
        if not e:
            continue
        if stack and stack[-1][0] == g:
            e += stack.pop()[1]
            if e:
                stack.append((g, e))
        else:
            stack.append((g, e))
    return tuple(stack)


def free_reduce(letters):
    return Word(letters)


class GroupRingElement:
    """Integer combination of free group words (an element of Z[F])."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {w: c for w, c in (terms or {}).items() if c}

    @classmethod
    def from_word(cls, w, c=1):
        return cls({w: c})

    @classmethod
    def one(cls):
        return cls({Word(): 1})

    @classmethod
    def zero(cls):
        return cls()

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return GroupRingElement(out)

    def __neg__(self):
        return GroupRingElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupRingElement({w: c * other for w, c in self.terms.items()})
        out = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                w = u * v
                out[w] = out.get(w, 0) + a * b
        return GroupRingElement(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, GroupRingElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def format(self, names):
        if not self.terms:
            return "0"
        items = sorted(self.terms.items(), key=lambda kv: (kv[0].length, kv[0]))
        parts = []
        for w, c in items:
            body = w.format(names)
            if body == "1":
                text = str(abs(c))
            else:
                text = body if abs(c) == 1 else f"{abs(c)}*{body}"
            parts.append(("-" if c < 0 else "+", text))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, text in parts[1:]:
            out += f" {sign} {text}"
        return out


def involute(e):
    """Z-linear involution g -> g^-1 of Z[F]."""
    return GroupRingElement({w.inverse(): c for w, c in e.terms.items()})


def fox_derivative(w, i):
    """Fox derivative d w / d x_i as an element of Z[F]."""
    out = {}
    prefix = Word()
    for g, e in w.runs():
        if g == i:
            if e > 0:
                for k in range(e):
                    term = prefix * Word.gen(i, k)
                    out[term] = out.get(term, 0) + 1
            else:
                for k in range(1, -e + 1):
                    term = prefix * Word.gen(i, -k)
                    out[term] = out.get(term, 0) - 1
        prefix = prefix * Word.gen(g, e)
    return GroupRingElement(out)


@dataclass(frozen=True)
class Presentation:
    generators: tuple
    relators: tuple
    meridian: int = 0

    def __post_init__(self):
        n = len(self.generators)
        if len(set(self.generators)) != n:
            raise PresentationError("duplicate generator names")
        if len(self.relators) != n - 1:
            raise PresentationError(
                f"presentation has deficiency {n - len(self.relators)}, expected 1 "
                f"({n} generators, {len(self.relators)} relators)")
        for r in self.relators:
            for g, _ in r.runs():
                if not 0 <= g < n:
                    raise PresentationError(f"relator uses undeclared generator index {g}")
        if not 0 <= self.meridian < n:
            raise PresentationError("meridian index out of range")

    @property
    def ngens(self):
        return len(self.generators)

    def index(self, name):
        return self.generators.index(name)

    def word(self, text):
        return parse_word(text, self.generators)

    def format(self):
        rels = ", ".join(r.format(self.generators) for r in self.relators)
        text = f"<{','.join(self.generators)} | {rels}>"
        if self.meridian:
            text += f" meridian={self.generators[self.meridian]}"
        return text

    def fox_matrix(self):
        """n x (n-1) matrix of d r_j / d x_i."""
        return [[fox_derivative(r, i) for r in self.relators] for i in range(self.ngens)]


_WORD_TOKEN = re.compile(r"\s*([A-Za-z])(?:\s*\^\s*([+-]?\d+))?")


def parse_word(text, generators, offset=0):
    """Parse lowercase/uppercase letters with optional ^k exponents."""
    letters = []
    pos = 0
    text_s = text.rstrip()
    if text_s.strip() == "1":
        return Word()
    while pos < len(text_s):
        m = _WORD_TOKEN.match(text_s, pos)
        if not m:
            raise PresentationError(f"syntax error at position {offset + pos}: {text_s[pos:].strip()[:10]!r}")
        ch, exp = m.group(1), m.group(2)
        name = ch.lower()
        if name not in generators:
            raise PresentationError(f"undeclared generator {ch!r} at position {offset + m.start(1)}")
        e = int(exp) if exp is not None else 1
        if ch.isupper():
            e = -e
        letters.append((generators.index(name), e))
        pos = m.end()
    return Word(letters)


_PRESENTATION = re.compile(r"^\s*<(?P<gens>[^|>]*)\|(?P<rels>[^>]*)>\s*(?P<tail>.*)$", re.S)


def parse_presentation(text):
    """Parse ``<a,b | r1, r2> meridian=a``."""
    m = _PRESENTATION.match(text)
    if not m:
        if "<" not in text:
            raise PresentationError("syntax error at position 0: expected '<'")
        if "|" not in text:
            raise PresentationError(f"syntax error at position {len(text)}: expected '|'")
        raise PresentationError(f"syntax error at position {len(text)}: expected '>'")
    gens = [g.strip() for g in m.group("gens").split(",")]
    if not gens or any(not re.fullmatch(r"[a-z]", g) for g in gens):
        bad = next((g for g in gens if not re.fullmatch(r"[a-z]", g)), "")
        raise PresentationError(
            f"syntax error at position {m.start('gens')}: generators must be single lowercase letters, got {bad!r}")
    gens = tuple(gens)
    rel_text = m.group("rels")
    relators = []
    if rel_text.strip():
        start = m.start("rels")
        for chunk in rel_text.split(","):
            if not chunk.strip():
                raise PresentationError(f"syntax error at position {start}: empty relator")
            relators.append(parse_word(chunk, gens, offset=start))
            start += len(chunk) + 1
    meridian = 0
    tail = m.group("tail").strip()
    if tail:
        mt = re.fullmatch(r"meridian\s*=\s*([a-z])", tail)
        if not mt:
            raise PresentationError(f"syntax error at position {m.start('tail')}: unexpected {tail!r}")
        if mt.group(1) not in gens:
            raise PresentationError(f"undeclared meridian generator {mt.group(1)!r}")
        meridian = gens.index(mt.group(1))
    return Presentation(gens, tuple(relators), meridian)


# -- abelianization ----------------------------------------------------------

def smith_normal_form(matrix):
    """Return (D, U, V) with U * M * V = D diagonal, U and V unimodular."""
    A = [list(r) for r in matrix]
    m = len(A)
    n = len(A[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(M, a, b):
        M[a], M[b] = M[b], M[a]

    def swap_cols(M, a, b):
        for row in M:
            row[a], row[b] = row[b], row[a]

    for t in range(min(m, n)):
        while True:
            nonzero = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
            if not nonzero:
                return A, U, V
            _, pi, pj = min(nonzero)
            swap_rows(A, t, pi)
            swap_rows(U, t, pi)
            swap_cols(A, t, pj)
            swap_cols(V, t, pj)
            piv = A[t][t]
            clean = True
            for i in range(t + 1, m):
                q = A[i][t] // piv
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[t])]
                clean = clean and A[i][t] == 0
            for j in range(t + 1, n):
                q = A[t][j] // piv
                if q:
                    for row in A:
                        row[j] -= q * row[t]
                    for row in V:
                        row[j] -= q * row[t]
                clean = clean and A[t][j] == 0
            if not clean:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % piv), None)
            if bad is None:
                break
            i = bad[0]
            A[t] = [a + b for a, b in zip(A[t], A[i])]
            U[t] = [a + b for a, b in zip(U[t], U[i])]
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
    return A, U, V


@dataclass(frozen=True)
class AbelianizationData:
    phi: tuple
    torsion: tuple

    def weight(self, w):
        return sum(self.phi[g] * e for g, e in w.runs())


def abelianize(p):
    """phi: pi -> Z (positive on the meridian) and the torsion of H_1."""
    n = p.ngens
    rows = [r.exponent_sums(n) for r in p.relators]
    if rows:
        D, _, V = smith_normal_form(rows)
        diag = [D[i][i] for i in range(min(len(D), n))]
    else:
        V = [[int(i == j) for j in range(n)] for i in range(n)]
        diag = []
    rank = sum(1 for d in diag if d)
    if n - rank != 1:
        raise PresentationError(f"H_1 has free rank {n - rank}, expected 1")
    phi = [V[i][rank] for i in range(n)]
    g = 0
    for x in phi:
        g = gcd(g, x)
    phi = [x // g for x in phi]
    if phi[p.meridian] == 0:
        raise PresentationError(
            f"meridian {p.generators[p.meridian]!r} has zero abelianization weight; choose another meridian")
    if phi[p.meridian] < 0:
        phi = [-x for x in phi]
    for r in p.relators:
        assert sum(phi[gi] * e for gi, e in r.runs()) == 0
    torsion = tuple(d for d in diag if d > 1)
    return AbelianizationData(tuple(phi), torsion)
