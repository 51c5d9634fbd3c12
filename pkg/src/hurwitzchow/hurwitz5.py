"""Pentagonal covers of P^1: relation ideals, the four-variable presentation,
and the ramification-class table.

A degree-5 cover sits inside a Grassmannian bundle of 2-planes as the zero
locus of a section of a rank-6 bundle.  Failure of the fibers to be smooth
curves is tracked by a rank-15 restricted jet over a four-step tower; its top
Chern class times tautological monomials pushes down to the relation ideal.
A second, rank-10 bundle detects maps that drop rank, giving eight more
relations that land inside the first ideal.  A separate three-step tower
carries the rank-18 mixed jet whose top Chern class produces the triple- and
quadruple-ramification classes.
"""

from __future__ import annotations

import multiprocessing

from .bundles import (
    VBundle,
    _cap_bundle,
    _CapSpace,
    bundle_functor,
    bundle_tensor,
    line_bundle,
)
from .coeffs import GenusPoly, GenusRational, poly_integer_roots
from .gring import (
    GradedClass,
    RingCtx,
    class_capped,
    class_inverse,
    class_substitute,
    ring_capped,
    ring_new,
)
from .ideals import (
    GradedIdeal,
    coeff_matrix_det,
    eliminate_generators,
    express_in_spanning,
    graded_dim,
    graded_dim_detail,
    homogeneous_degree,
    ideal_contains,
    lift_to_ring,
    quotient_basis,
    restrict_to_subring,
)
from .jets import jet_mixed
from .spaces import (
    Space,
    base_new,
    genus_poly,
    grass2_bundle,
    p1_bundle,
    proj_bundle,
    rel_cotangent,
    rel_tangent,
)

BASE_GENS = (
    ("a1", 1),
    ("a2", 2),
    ("a3", 3),
    ("a4", 4),
    ("a2p", 1),
    ("a3p", 2),
    ("a4p", 3),
    ("b2", 2),
    ("b3", 3),
    ("b4", 4),
    ("b5", 5),
    ("b2p", 1),
    ("b3p", 2),
    ("b4p", 3),
    ("b5p", 4),
    ("c2", 2),
)
RETAINED = ("a1", "a2p", "a2", "c2")


def _gp(*down) -> GenusPoly:
    """Polynomial in g from coefficients listed highest degree first."""
    return GenusPoly(reversed(down))


def _pencil(genus: int | None, cut: int) -> tuple[Space, Space, VBundle, VBundle, VBundle]:
    """Base stack, its P^1 fibration, and the two structure bundles.

    The rank-4 bundle has fiber degree g+4; the rank-5 one is pinned by the
    determinant-square identification, so its first Chern class is twice
    that of the rank-4 bundle (fiber degree 2g+8) and the two b1 generators
    are substituted away.
    """
    base = base_new(list(BASE_GENS), cut, genus=genus, aux_cut=cut)
    P = p1_bundle(base)
    ring = P.ring
    g = genus_poly(genus)
    z = P.hyperplane()
    a1 = ring.gen("a1")
    ce = ring.one() + a1 + (g + 4) * z
    for plain, primed in (("a2", "a2p"), ("a3", "a3p"), ("a4", "a4p")):
        ce = ce + ring.gen(plain) + ring.gen(primed) * z
    E = VBundle(P, 4, ce)
    cf = ring.one() + 2 * a1 + (2 * g + 8) * z
    for plain, primed in (("b2", "b2p"), ("b3", "b3p"), ("b4", "b4p"), ("b5", "b5p")):
        cf = cf + ring.gen(plain) + ring.gen(primed) * z
    F = VBundle(P, 5, cf)
    Eprime = bundle_tensor(bundle_functor("dual", E), bundle_functor("det", E))
    return base, P, E, F, Eprime


class Deg5Tower:
    """Base stack, P^1 fibration, plane-quadruple fibration, the 2-plane
    bundle of the rank-5 factor, and the 2-plane bundle of relative tangent
    directions used by the restricted jet."""

    def __init__(self, genus: int | None = None, cut: int = 6):
        if cut < 6:
            raise ValueError("degree-5 tower needs cut >= 6")
        if genus is not None and genus < 2:
            raise ValueError("genus must be at least 2")
        self.genus = genus
        self.base, self.P, self.E, self.F, self.Eprime = _pencil(genus, cut)
        self.W2F = self.F.wedge(2)
        self.PE = proj_bundle(self.P, self.Eprime)
        self.W = bundle_tensor(self.PE.O(1), self.PE.pull_bundle(self.W2F))
        self.GF = grass2_bundle(self.PE, self.PE.pull_bundle(self.F))
        self.GT = grass2_bundle(
            self.GF,
            self.GF.pull_bundle(rel_tangent(self.PE, self.base)),
            names=("t1", "t2"),
        )


def deg5_tower(genus: int | None = None, cut: int = 6) -> Deg5Tower:
    return Deg5Tower(genus=genus, cut=cut)


def deg5_ni_ideal(T: Deg5Tower) -> list[GradedClass]:
    """Eight relations from maps dropping rank: pushforwards of the top
    Chern class of the rank-10 evaluation bundle times zeta^j z^i for
    j <= 3, i <= 1.  Entries of degree above the truncation are zero."""
    if T.W.rank != 10:
        raise AssertionError(f"evaluation bundle has rank {T.W.rank}, expected 10")
    c10 = T.W.chern.graded_part(10)
    zeta = T.PE.hyperplane()
    z = T.P.hyperplane()
    out = []
    for j in range(4):
        on_p = T.PE.push_to(c10 * zeta**j, T.P)
        for i in range(2):
            out.append(T.P.push_to(on_p * z**i, T.base))
    return out


def _sing_factors(T: Deg5Tower) -> tuple[GradedClass, GradedClass]:
    """Top Chern classes of the two summands of the rank-15 restricted jet:
    the rank-9 graph factor (a class on the 2-plane level) and the rank-6
    directional factor (a class on the direction level).

    The graph factor is the tautological rank-9 quotient of the plane
    pencil's wedge square, twisted by the hyperplane of the dual-plane
    fibration.  The directional factor tensors the chosen cotangent 2-plane
    with the wedge square of the rank-3 quotient and the same twist; the
    cotangent plane splits into lines of class t1, t2 in the flag model, so
    its rank-6 top Chern class factors into two rank-3 line twists.  Both
    factors run in degree-capped views of their tower rings, keeping only
    what the top Chern class needs.
    """
    GF, GT = T.GF, T.GT
    zeta_gf = GF.pull(T.PE.hyperplane())

    nine = _CapSpace(ring_capped(GF.ring, 9))
    w2t = bundle_functor("det", GF.sub_bundle())
    cu9 = class_capped(GF.pull(T.W2F.chern), nine.ring) * class_inverse(
        class_capped(w2t.chern, nine.ring)
    )
    zc = class_capped(zeta_gf, nine.ring)
    x9 = nine.ring.zero()
    zpow = nine.ring.one()
    for j in range(9, -1, -1):
        cj = cu9.graded_part(j)
        if cj:
            x9 = x9 + cj * zpow
        zpow = zpow * zc

    six_gf = _CapSpace(ring_capped(GF.ring, 6))
    w2r = _cap_bundle(GF.quot_bundle(), six_gf).wedge(2)
    if w2r.rank != 3:
        raise AssertionError(f"wedge factor has rank {w2r.rank}, expected 3")
    six = _CapSpace(ring_capped(GT.ring, 6))
    b3 = class_capped(GT.pull(class_capped(w2r.chern, GF.ring)), six.ring)
    zg = class_capped(GT.pull(zeta_gf), six.ring)
    c6 = six.ring.one()
    for tname in ("t1", "t2"):
        ell = class_capped(GT.ring.gen(tname), six.ring) + zg
        fac = six.ring.zero()
        epow = six.ring.one()
        for j in range(3, -1, -1):
            cj = b3.graded_part(j)
            if cj:
                fac = fac + cj * epow
            epow = epow * ell
        c6 = c6 * fac
    if 9 + 2 * w2r.rank != 15:
        raise AssertionError("restricted jet rank is not 15")
    return class_capped(x9, GF.ring), class_capped(c6, GT.ring)


def _sing_top_class(T: Deg5Tower) -> GradedClass:
    """c15 of the restricted jet, as a single class on the direction level."""
    x9, c6 = _sing_factors(T)
    return T.GT.pull(x9) * c6


_SING_STATE: dict = {}


def _sing_branch(pair: tuple[int, int]) -> list[tuple[tuple, dict]]:
    """All generators for one (l1, l2) branch, in canonical nested order.

    The branch pushes c15 times the monomial s1^l1 s2^l2.  The rank-9
    factor of c15 is pulled up from the 2-plane level, so by the projection
    formula only the rank-6 factor rides the top-level pushforward and the
    degree-9 class multiplies below.
    """
    l1, l2 = pair
    T = _SING_STATE["tower"]
    x9 = _SING_STATE["x9"]
    c6 = _SING_STATE["c6"]
    cut = T.base.ring.cut
    wl = l1 + 2 * l2
    if 1 + wl > cut:
        return []
    cls = c6
    if l1:
        cls = cls * T.GT.sigma(1) ** l1
    if l2:
        cls = cls * T.GT.sigma(2) ** l2
    on_gf = x9 * T.GT.push(cls)
    sig = [T.GF.sigma(n) for n in (1, 2, 3)]
    zeta = T.PE.hyperplane()
    z = T.P.hyperplane()
    out = []
    for k1 in range(3):
        for k2 in range(3 - k1):
            for k3 in range(3 - k1 - k2):
                wk = wl + k1 + 2 * k2 + 3 * k3
                if 1 + wk > cut:
                    continue
                mono = on_gf
                for s, e in zip(sig, (k1, k2, k3)):
                    if e:
                        mono = mono * s**e
                on_pe = T.GF.push(mono)
                for j in range(4):
                    if 1 + wk + j > cut:
                        break
                    on_p = T.PE.push(on_pe * zeta**j if j else on_pe)
                    for i in range(2):
                        if 1 + wk + j + i > cut:
                            break
                        gen = T.P.push(on_p * z**i if i else on_p)
                        out.append(((l1, l2, k1, k2, k3, j, i), dict(gen.terms)))
    return out


def deg5_sing_ideal(T: Deg5Tower, threads: int = 1) -> list[GradedClass]:
    """Relations from singular fibers: pushforwards of c15 of the restricted
    jet times s1^l1 s2^l2 sigma1^k1 sigma2^k2 sigma3^k3 zeta^j z^i over the
    box l1+l2 <= 2, k1+k2+k3 <= 2, j <= 3, i <= 1.

    Monomial factors are pushed down level by level.  Index combinations
    whose generator degree exceeds the base truncation carry no information
    below the cut and are skipped.  The (l1, l2) branches are independent
    and run on a fork pool when threads > 1; assembly order is fixed by the
    index box, never by completion order.
    """
    pairs = [(l1, l2) for l1 in range(3) for l2 in range(3 - l1)]
    x9, c6 = _sing_factors(T)
    _SING_STATE["tower"] = T
    _SING_STATE["x9"] = x9
    _SING_STATE["c6"] = c6
    try:
        if threads > 1:
            ctx = multiprocessing.get_context("fork")
            with ctx.Pool(min(threads, len(pairs))) as pool:
                chunks = pool.map(_sing_branch, pairs)
        else:
            chunks = [_sing_branch(p) for p in pairs]
    finally:
        _SING_STATE.clear()
    ring = T.base.ring
    return [ring.from_terms(terms) for chunk in chunks for _, terms in chunk]


def deg5_triple_class_suite(T: Deg5Tower) -> dict[str, GradedClass]:
    """Triple-point, quadruple-point, and companion classes from the rank-18
    mixed jet over the 2-plane fibration of the rank-5 bundle.

    All three outputs live in degree at most 2, so the suite rebuilds its
    tower branch at the minimal truncation and lifts the results into the
    caller's base ring.
    """
    base, P, _, F, Eprime = _pencil(T.genus, 4)
    w2f = F.wedge(2)
    G = grass2_bundle(P, F)
    cok = VBundle(G, 6, G.pull(w2f.chern) * class_inverse(G.pull(Eprime.chern)))
    # the single sign-sensitive convention here: the wedge square of the
    # tautological 2-plane is the restricted Pluecker O(-1), so the Pluecker
    # hyperplane is sigma1 - c1 of the rank-5 bundle
    W = bundle_tensor(cok, G.plucker_line())
    X1 = proj_bundle(G, rel_tangent(G, P), name="t")
    X = proj_bundle(X1, X1.pull_bundle(bundle_functor("dual", W)), name="u")
    ring = X.ring
    t, u = ring.gen("t"), ring.gen("u")
    ox = line_bundle(X, t)
    omega = rel_cotangent(G, P)
    oy = VBundle(X, 5, X.pull(omega.chern) * class_inverse(ring.one() + t))
    wp = line_bundle(X, u)
    jet = jet_mixed(
        [(0, 0), (1, 0)],
        [(0, 0), (1, 0), (0, 1), (2, 0)],
        X.pull_bundle(W),
        wp,
        ox,
        oy,
        cap=18,
    )
    if jet.rank != 18:
        raise AssertionError(f"mixed jet has rank {jet.rank}, expected 18")
    c18 = jet.chern.graded_part(18)
    trip = X.push_to(c18, base)
    quad = X.push_to(c18 * (u + 3 * t), base)
    extra = P.push_to(X.push_to(c18, P) * P.hyperplane(), base)
    big = T.base.ring
    return {
        "T": lift_to_ring(trip, big),
        "U": lift_to_ring(quad, big),
        "extra": lift_to_ring(extra, big),
    }


def deg5_presentation_relations(ring: RingCtx) -> list[GradedClass]:
    """The five relations of the simplified presentation on a1, a2', a2, c2."""
    a1, a2p = ring.gen("a1"), ring.gen("a2p")
    a2, c2 = ring.gen("a2"), ring.gen("c2")
    r1 = (
        _gp(1064, 3610) * a1**3
        - 1074 * (a1**2 * a2p)
        - _gp(2148, 7272) * (a1 * a2)
        + 2160 * (a2 * a2p)
        - _gp(1064, 10830, 36680, 41360) * (a1 * c2)
        + _gp(1074, 7272, 12288) * (a2p * c2)
    )
    r2 = (
        -_gp(6412, 21255) * a1**3
        + 6207 * (a1**2 * a2p)
        + _gp(12414, 40896) * (a1 * a2)
        - 11880 * (a2 * a2p)
        + _gp(6412, 63765, 211540, 234480) * (a1 * c2)
        - _gp(6207, 40896, 68184) * (a2p * c2)
    )
    r3 = (
        -_gp(22845, 67763) * a1**4
        + 18141 * (a1**3 * a2p)
        + _gp(54423, 146550) * (a1**2 * a2)
        - 35640 * (a1 * a2 * a2p)
        + _gp(45690, 406578, 1184220, 1123060) * (a1**2 * c2)
        - _gp(54423, 293100, 372648) * (a1 * a2p * c2)
        + _gp(17820, 24840) * (a2p**2 * c2)
        - _gp(17820, 24840) * a2**2
        - _gp(18141, 146550, 372648, 283824) * (a2 * c2)
        - _gp(4569, 67763, 394740, 1123060, 1546176, 810432) * c2**2
    )
    r4 = (
        133 * a1**4
        - 537 * (a1**2 * a2)
        - _gp(798, 5415, 9170) * (a1**2 * c2)
        + _gp(1074, 3636) * (a1 * a2p * c2)
        - 540 * (a2p**2 * c2)
        + 540 * a2**2
        + _gp(537, 3636, 6144) * (a2 * c2)
        + _gp(133, 1805, 9170, 20680, 17472) * c2**2
    )
    r5 = (
        -_gp(18545, 68407) * a1**4
        + 15261 * (a1**3 * a2p)
        + _gp(45783, 175866) * (a1**2 * a2)
        - 31320 * (a1 * a2 * a2p)
        + _gp(37090, 410442, 1499460, 1811300) * (a1**2 * c2)
        - _gp(45783, 351732, 662976) * (a1 * a2p * c2)
        + _gp(15660, 72360) * (a2p**2 * c2)
        - _gp(15660, 72360) * a2**2
        - _gp(15261, 175866, 662976, 822096) * (a2 * c2)
        - _gp(3709, 68407, 499820, 1811300, 3260256, 2334528) * c2**2
    )
    return [r1, r2, r3, r4, r5]


def _named_degree1(ring: RingCtx) -> dict[str, GradedClass]:
    """kappa_1 and the triple/hyperelliptic-type ramification divisors."""
    a1, a2p = ring.gen("a1"), ring.gen("a2p")
    return {
        "kappa1": _gp(12, 36) * a1 - 12 * a2p,
        "T": _gp(24, 84) * a1 - 24 * a2p,
        "D": _gp(-32, -112) * a1 + 36 * a2p,
    }


def _kappa2_raw(ring: RingCtx) -> GradedClass:
    a1, a2, a2p = ring.gen("a1"), ring.gen("a2"), ring.gen("a2p")
    a3p, b2 = ring.gen("a3p"), ring.gen("b2")
    b2p, b3p, c2 = ring.gen("b2p"), ring.gen("b3p"), ring.gen("c2")
    return (
        _gp(6, 24, 40) * c2
        - 6 * a1**2
        + _gp(-7, 2) * a2
        - 7 * (a1 * a2p)
        + _gp(2, 2) * b2
        + 2 * (a1 * b2p)
        + 5 * a3p
        - b3p
    )


def _extra_raw(ring: RingCtx) -> GradedClass:
    a1, a2 = ring.gen("a1"), ring.gen("a2")
    b2, c2 = ring.gen("b2"), ring.gen("c2")
    return _gp(3, 24, 48) * c2 - 3 * a1**2 - 3 * a2 + 3 * b2


def _stable_pair_clear(rels: list[GradedClass]) -> bool:
    """True when every monomial of every relation is divisible by a2, c2,
    or a1^2.

    Then no combination of the relations (times anything) has a component
    on a1*a2p^(d-1) or a2p^d, so those two monomials stay independent in
    the quotient in every degree: each relation term keeps its divisor
    under multiplication, while the two pure monomials have none of them.
    """
    ring = rels[0].ring
    ia1 = ring.index["a1"]
    ia2 = ring.index["a2"]
    ic2 = ring.index["c2"]
    for r in rels:
        for key in r.terms:
            exps = ring.unpack(key)
            if exps[ia2] == 0 and exps[ic2] == 0 and exps[ia1] < 2:
                return False
    return True


_CONTAIN_STATE: dict = {}


def _contain_task(n: int) -> tuple[int, bool]:
    image = _CONTAIN_STATE["images"][n]
    return n, ideal_contains(image, _CONTAIN_STATE["ideal"])


def _map_indexed(task, count: int, threads: int) -> list:
    if threads > 1 and count > 1:
        ctx = multiprocessing.get_context("fork")
        with ctx.Pool(min(threads, count)) as pool:
            return pool.map(task, range(count))
    return [task(n) for n in range(count)]


SPANNING_SETS = {
    1: ("T", "D"),
    2: ("T.k1", "D.k1", "T.D", "U", "k2"),
    3: ("T.k1^2", "D.k1^2", "T.D.k1", "U.k1", "T.k2", "D.k2"),
    4: ("T.k1^3", "k1^4", "T.k1.k2", "T.D.k2", "k2^2", "k1^2.k2", "U.k2"),
    5: ("T.k1^4", "T.k2^2", "k1^5", "k1.k2^2"),
    6: ("T.k1^5", "k1^6", "k1^4.k2"),
}


def _spanning_classes(
    d: int, T_s: GradedClass, D_s: GradedClass, U_s: GradedClass,
    k1: GradedClass, k2: GradedClass,
) -> list[GradedClass]:
    table = {
        1: [T_s, D_s],
        2: [T_s * k1, D_s * k1, T_s * D_s, U_s, k2],
        3: [T_s * k1**2, D_s * k1**2, T_s * D_s * k1, U_s * k1, T_s * k2, D_s * k2],
        4: [
            T_s * k1**3,
            k1**4,
            T_s * k1 * k2,
            T_s * D_s * k2,
            k2**2,
            k1**2 * k2,
            U_s * k2,
        ],
        5: [T_s * k1**4, T_s * k2**2, k1**5, k1 * k2**2],
        6: [T_s * k1**5, k1**6, k1**4 * k2],
    }
    return table[d]


def deg5_report(T: Deg5Tower, threads: int = 1, deep: bool = False) -> dict:
    """Certify the four-variable presentation and compute the class table.

    Returns a JSON-ready dict; "failures" lists every check that did not
    come out exactly as expected (empty means all green).  With deep=True
    the stable-range table extends from degree 10 to degree 14.
    """
    failures: list[str] = []
    base_ring = T.base.ring
    cut = base_ring.cut
    ring = base_ring
    a1, a2p, b2p = ring.gen("a1"), ring.gen("a2p"), ring.gen("b2p")
    a2, c2 = ring.gen("a2"), ring.gen("c2")

    ni = deg5_ni_ideal(T)
    sing = deg5_sing_ideal(T, threads=threads)
    if sing[0] != _gp(10, 36) * a1 - 7 * a2p - b2p:
        failures.append("class:sing-linear")
    gens = sing + [cls for cls in ni if cls]
    ideal = GradedIdeal(base_ring, gens)

    sing_ideal = GradedIdeal(base_ring, sing)
    ni_in_sing = {}
    for n, cls in enumerate(ni):
        if cls and homogeneous_degree(cls) <= 6:
            ok = ideal_contains(cls, sing_ideal, threads=threads)
            ni_in_sing[f"gen{n}"] = ok
            if not ok:
                failures.append(f"ni-in-sing:gen{n}")

    stable_top = 14 if deep else 10
    small = ring_new([("a1", 1), ("a2p", 1), ("a2", 2), ("c2", 2)], stable_top)
    rels = deg5_presentation_relations(small)
    pres_ideal = GradedIdeal(small, rels)

    memberships = {}
    for n, r in enumerate(rels, start=1):
        ok = ideal_contains(lift_to_ring(r, base_ring), ideal, threads=threads)
        memberships[f"r{n}"] = ok
        if not ok:
            failures.append(f"membership:r{n}")

    elim = eliminate_generators(ideal, list(RETAINED), threads=threads)
    mapping = {name: restrict_to_subring(expr, small) for name, expr in elim.items()}
    images = [class_substitute(cls, mapping) for cls in gens]
    checked = [n for n, image in enumerate(images) if image]
    _CONTAIN_STATE["images"] = images
    _CONTAIN_STATE["ideal"] = pres_ideal
    try:
        if threads > 1 and checked:
            ctx = multiprocessing.get_context("fork")
            with ctx.Pool(min(threads, len(checked))) as pool:
                verdicts = pool.map(_contain_task, checked)
        else:
            verdicts = [_contain_task(n) for n in checked]
    finally:
        _CONTAIN_STATE.clear()
    for n, ok in verdicts:
        if not ok:
            failures.append(f"containment:gen{n}")

    dim_rows = []
    for d in range(1, min(cut, 7) + 1):
        dim_small = graded_dim(pres_ideal, d, method="symbolic")
        dim_big, rank_big, flag = graded_dim_detail(ideal, d, method="auto")
        if dim_big != dim_small:
            failures.append(f"dims:degree{d}")
        dim_rows.append(
            {"degree": d, "dim": dim_small, "rank": rank_big, "big_method": flag}
        )

    # Stable range: every relation monomial is divisible by a2, c2, or a1^2,
    # which pins the two pure monomials a1*a2p^(d-1), a2p^d as independent in
    # the quotient (exact lower bound 2); the modular rank of the relation
    # rows is a sound lower bound on the symbolic rank, so a modular
    # quotient dimension of 2 closes the sandwich exactly.
    stable_rows = []
    pair_clear = _stable_pair_clear(rels)
    if not pair_clear:
        failures.append("dims:stable-support")
    for d in range(7, stable_top + 1):
        dim_d = graded_dim(pres_ideal, d)
        if dim_d != 2 or not pair_clear:
            failures.append(f"dims:stable-degree{d}")
        stable_rows.append({"degree": d, "dim": dim_d})

    span2 = [a1 * a1, a1 * a2p, a2p * a2p, a2, c2]
    suite = deg5_triple_class_suite(T)
    named = _named_degree1(ring)
    if suite["T"] != named["T"]:
        failures.append("class:T-push")
    if suite["extra"] != _extra_raw(ring):
        failures.append("class:extra-raw")

    quad_red = express_in_spanning(suite["U"], span2, ideal, threads=threads)
    quad_expected = [
        GenusRational.of(_gp(156, 468), 5),
        GenusRational.of(-108, 5),
        GenusRational.const(0),
        GenusRational.of(_gp(-108, -216), 5),
        GenusRational.of(_gp(-52, -468, -1352, -1248), 5),
    ]
    if quad_red != quad_expected:
        failures.append("class:U-reduced")

    extra_red = express_in_spanning(suite["extra"], span2, ideal, threads=threads)
    extra_expected = [
        GenusRational.const(12),
        GenusRational.const(0),
        GenusRational.const(0),
        GenusRational.const(-24),
        GenusRational.of(_gp(-12, -84, 144), 1),
    ]
    if extra_red != extra_expected:
        failures.append("class:extra-reduced")

    k2 = _kappa2_raw(ring)
    k2_red = express_in_spanning(k2, span2, ideal, threads=threads)
    k2_expected = [
        GenusRational.of(_gp(30, 66), 1),
        GenusRational.const(-21),
        GenusRational.const(0),
        GenusRational.of(_gp(-21, 2), 1),
        GenusRational.of(_gp(-10, -66, -104, 0), 1),
    ]
    if k2_red != k2_expected:
        failures.append("class:kappa2-reduced")

    # rank-2 check: the quadruple class and the companion class stay
    # independent after killing products of degree-1 classes, whose span in
    # the degree-2 quotient is the first three basis vectors
    indep_det = None
    indep_roots = None
    if quad_red and extra_red:
        det2 = quad_red[3] * extra_red[4] - quad_red[4] * extra_red[3]
        if det2:
            prim2, _ = det2.num.primitive()
            indep_det = str(det2)
            indep_roots = poly_integer_roots(prim2, 2)
            if indep_roots:
                failures.append("class:U-extra-rank2")
        else:
            failures.append("class:U-extra-rank2")
    else:
        failures.append("class:U-extra-rank2")

    det_td, det_td_scalar = coeff_matrix_det(
        [named["T"], named["D"]], [a1, a2p], ideal, threads=threads
    )
    det_td_poly = det_td * det_td_scalar.const_value()
    if det_td_poly != _gp(96, 336):
        failures.append("det:TD")

    # spanning determinants run in the presentation ring: modulo the ideal a
    # product of classes equals the product of their reductions, and the
    # reduced forms above only use the four retained generators
    small1 = _named_degree1(small)
    T_s, D_s, k1_s = small1["T"], small1["D"], small1["kappa1"]
    span2_s = [
        small.gen("a1") ** 2,
        small.gen("a1") * small.gen("a2p"),
        small.gen("a2p") ** 2,
        small.gen("a2"),
        small.gen("c2"),
    ]

    def _from_red(coeffs):
        out = small.zero()
        for c, mono in zip(coeffs, span2_s):
            if c:
                out = out + mono * c
        return out

    spanning = {}
    if quad_red and k2_red:
        U_s = _from_red(quad_red)
        k2_s = _from_red(k2_red)
        for d, labels in SPANNING_SETS.items():
            sset = _spanning_classes(d, T_s, D_s, U_s, k1_s, k2_s)
            basis = quotient_basis(pres_ideal, d)
            if len(basis) != len(sset):
                failures.append(f"det:spanning-degree{d}")
                continue
            prim, scalar = coeff_matrix_det(sset, basis, pres_ideal)
            roots = poly_integer_roots(prim, 2) if prim else None
            if not prim or roots:
                failures.append(f"det:spanning-degree{d}")
            spanning[str(d)] = {
                "set": list(labels),
                "det_primitive": str(prim),
                "scalar": str(scalar),
                "integer_roots_ge2": roots if roots is not None else "zero",
            }
    else:
        failures.append("det:spanning-inputs")

    spot = deg5_sing_ideal(deg5_tower(genus=100, cut=cut), threads=threads)
    if len(spot) != len(sing):
        failures.append("genus100:count")
    else:
        for n, (sym, num) in enumerate(zip(sing, spot)):
            if sym.eval_genus(100) != num:
                failures.append(f"genus100:gen{n}")
                break

    return {
        "ni": [cls.to_json() for cls in ni],
        "sing_count": len(sing),
        "sing_linear": sing[0].to_json(),
        "ni_in_sing": ni_in_sing,
        "dims": dim_rows,
        "stable": stable_rows,
        "presentation": {
            "retained": list(RETAINED),
            "relations": [r.to_json() for r in rels],
            "eliminations": {k: v.to_json() for k, v in mapping.items()},
            "memberships": memberships,
            "ideal_equal_through": min(cut, 7),
        },
        "classes": {
            "kappa1": named["kappa1"].to_json(),
            "T": named["T"].to_json(),
            "D": named["D"].to_json(),
            "T_push": suite["T"].to_json(),
            "U": suite["U"].to_json(),
            "U_reduced": [str(c) for c in quad_red] if quad_red else None,
            "extra": suite["extra"].to_json(),
            "extra_reduced": [str(c) for c in extra_red] if extra_red else None,
            "kappa2": k2.to_json(),
            "kappa2_reduced": [str(c) for c in k2_red] if k2_red else None,
            "U_extra_rank2_det": indep_det,
            "U_extra_rank2_roots_ge2": indep_roots,
        },
        "determinants": {
            "TD": {
                "det": str(det_td_poly),
                "primitive": str(det_td),
                "scalar": str(det_td_scalar),
                "integer_roots_ge2": poly_integer_roots(det_td_poly, 2),
            },
            "spanning": spanning,
        },
        "genus100_spot_check": not any(f.startswith("genus100") for f in failures),
        "failures": failures,
    }
