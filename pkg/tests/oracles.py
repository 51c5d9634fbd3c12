"""Independent reference implementations used to cross-check the engine.

Everything here is deliberately naive: dictionaries keyed by exponent
tuples, Fractions, itertools.  None of it shares code with the package
beyond the public constructors needed to hand classes back for comparison.
"""

from fractions import Fraction
from itertools import combinations, combinations_with_replacement


def poly_mul(a: dict, b: dict, degrees, cut: int) -> dict:
    """Multiply exponent-tuple dicts, dropping terms above the cut."""
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            if sum(x * d for x, d in zip(e, degrees)) > cut:
                continue
            c = out.get(e, Fraction(0)) + ca * cb
            if c:
                out[e] = c
            else:
                out.pop(e, None)
    return out


def poly_from_class(cls) -> dict:
    ring = cls.ring
    out = {}
    for exps, c in cls.items_sorted():
        assert c.den.is_const(), "oracle comparison needs polynomial coefficients"
        assert c.num.is_const(), "oracle comparison needs constant coefficients"
        out[tuple(exps)] = c.num.const_value() / c.den.const_value()
    return out


def class_from_poly(ring, poly: dict):
    out = ring.zero()
    for exps, c in poly.items():
        mono = {ring.names[i]: e for i, e in enumerate(exps) if e}
        out = out + ring.monomial(mono, c)
    return out


def segre_coeffs(chern: list, top: int) -> list:
    """Segre classes as the power-series inverse of the Chern polynomial.

    chern[i] holds c_i as whatever ring element the caller uses; index 0
    must be the ring's one.
    """
    segre = [chern[0]]
    for d in range(1, top + 1):
        acc = None
        for i in range(1, min(d, len(chern) - 1) + 1):
            term = chern[i] * segre[d - i]
            acc = term if acc is None else acc + term
        segre.append(-acc)
    return segre


def sym_chern_roots(roots: list, k: int, one):
    """Total Chern class of Sym^k from line factors (splitting principle)."""
    total = one
    for combo in combinations_with_replacement(roots, k):
        s = combo[0]
        for x in combo[1:]:
            s = s + x
        total = total * (one + s)
    return total


def wedge_chern_roots(roots: list, k: int, one):
    total = one
    for combo in combinations(roots, k):
        s = combo[0]
        for x in combo[1:]:
            s = s + x
        total = total * (one + s)
    return total


def power_sums_from_roots(roots: list, top: int, zero):
    """p_1..p_top of the given root classes, the graded pieces of ch - rank."""
    out = []
    for k in range(1, top + 1):
        acc = zero
        for r in roots:
            acc = acc + r**k
        out.append(acc)
    return out


# Quotient dimensions of Q[x, y] / (x^2, x*y) by total degree, frozen by
# hand: degree d monomials are x^a y^(d-a); x^2 kills a >= 2 and x*y kills
# a = 1, b >= 1, leaving y^d plus (in degree 1 only) x itself.
TOY_QUOTIENT_DIMS = {0: 1, 1: 2, 2: 1, 3: 1, 4: 1, 5: 1}

# Classical Grassmannian degrees used as integration anchors.
PIERI_NUMBERS = {
    ("G24", "s1^4"): 2,
    ("G24", "s2^2"): 1,
    ("G25", "s1^6"): 5,
}
