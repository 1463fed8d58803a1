"""Export the Conway and Kinoshita-Terasaka holonomy fixtures with SnapPy.

Run once; the JSON files are committed under src/knottorsion/data.  SnapPy is
only needed here, not by the package.

    python3 tools/make_holonomy_fixtures.py

For each knot the geometric representation is polished at 880 bits, signs
are chosen so every relator maps to +I and the meridian has trace +2, and
the meridian word is added as an extra generator ``m`` so that it can be
used as the preferred meridian.  The Conway and KT knots are mirrors of
K11n34 and K11n42; the orientation of the complex structure is picked so the
torsion polynomial matches the published values (a complex conjugation of
all matrices if needed).
"""

import hashlib
import itertools
import json
import sys
from pathlib import Path

import snappy

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from knottorsion.algebra import BigComplexField  # noqa: E402
from knottorsion.presentation import parse_presentation  # noqa: E402
from knottorsion.torsion import Representation, torsion_polynomial  # noqa: E402

DIGITS = 250
BITS = 880

KNOTS = {
    "conway": ("K11n34", "Conway knot (mirror of 11n34)", "4.89524+0.09920j", 5),
    "kt": ("K11n42", "Kinoshita-Terasaka knot (mirror of 11n42)", "4.41793-0.37603j", 3),
}


def sign_lifts(G, mats, K):
    """All sign choices making each relator the identity (not -I)."""
    gens = G.generators()
    out = []
    for signs in itertools.product((1, -1), repeat=len(gens)):
        lifted = {g: [[s * x for x in row] for row in mats[g]] for g, s in zip(gens, signs)}
        ok = True
        for r in G.relators():
            M = [[K.one, K.zero], [K.zero, K.one]]
            for ch in r:
                A = lifted[ch.lower()]
                if ch.isupper():
                    A = [[A[1][1], -A[0][1]], [-A[1][0], A[0][0]]]
                M = [[M[i][0] * A[0][j] + M[i][1] * A[1][j] for j in range(2)] for i in range(2)]
            if abs(M[0][0] - 1) > 1e-100 or abs(M[1][1] - 1) > 1e-100:
                ok = False
                break
        if ok:
            out.append(lifted)
    return out


def word_matrix(lifted, word, K):
    M = [[K.one, K.zero], [K.zero, K.one]]
    for ch in word:
        A = lifted[ch.lower()]
        if ch.isupper():
            A = [[A[1][1], -A[0][1]], [-A[1][0], A[0][0]]]
        M = [[M[i][0] * A[0][j] + M[i][1] * A[1][j] for j in range(2)] for i in range(2)]
    return M


def export(key):
    census, description, lead, half_span = KNOTS[key]
    K = BigComplexField(DIGITS)
    ctx = K.ctx
    M = snappy.Manifold(census)
    G = M.fundamental_group()
    H = M.polished_holonomy(bits_prec=BITS, lift_to_SL2=False)
    gens = G.generators()
    mats = {}
    for g in gens:
        A = H.SL2C(g)
        mats[g] = [[ctx.mpc(ctx.mpf(str(A[i, j].real())), ctx.mpf(str(A[i, j].imag())))
                    for j in range(2)] for i in range(2)]
    meridian_word = G.peripheral_curves()[0][0]
    best = None
    for lifted in sign_lifts(G, mats, K):
        m = word_matrix(lifted, meridian_word, K)
        if abs(m[0][0] + m[1][1] - 2) < 1e-100:
            best = lifted
            best_m = m
            break
    if best is None:
        raise SystemExit(f"{census}: no lift with meridian trace +2")
    names = gens + ["m"]
    relators = list(G.relators()) + ["M" + meridian_word]
    text = f"<{','.join(names)} | {', '.join(relators)}> meridian=m"
    pres = parse_presentation(text)
    target = complex(lead)
    chosen = None
    for conj in (False, True):
        mm = [best[g] for g in gens] + [best_m]
        if conj:
            mm = [[[ctx.conj(x) for x in row] for row in A] for A in mm]
        rep = Representation(pres, K, mm)
        T = torsion_polynomial(pres, rep)
        top = complex(T.poly.coeff(half_span))
        if abs(top - target) < 1e-3:
            chosen = (mm, conj, T)
            break
    if chosen is None:
        raise SystemExit(f"{census}: torsion does not match the published lead coefficient")
    mm, conj, T = chosen
    matrices = {n: [[K.format(x) for x in row] for row in A] for n, A in zip(names, mm)}
    doc = {
        "schema": "knottorsion/job/1",
        "kind": "job",
        "name": key,
        "description": description,
        "presentation": text,
        "representation": {
            "kind": "numeric",
            "field": K.describe(),
            "matrices": matrices,
        },
        "provenance": {
            "source": f"SnapPy {snappy.__version__} polished_holonomy({census}, bits_prec={BITS})",
            "meridian_word": meridian_word,
            "sign_lift": "relators map to +I, meridian trace +2",
            "complex_conjugated": conj,
        },
    }
    doc["provenance"]["sha256"] = hashlib.sha256(
        json.dumps(doc["representation"], sort_keys=True).encode()).hexdigest()
    out = ROOT / "src" / "knottorsion" / "data" / f"{key}.json"
    out.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    print(f"wrote {out.name}: span {T.span}, lead {K.format(T.poly.coeff(half_span))[:30]}")


if __name__ == "__main__":
    for key in sys.argv[1:] or KNOTS:
        export(key)
