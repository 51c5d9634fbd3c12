"""Towers of fibrations: base stacks, P1-bundles, projective bundles, and
rank-2 Grassmann bundles, each carrying a Chow-ring model and a pushforward.

Every node's ring extends its parent's by appending generators, so packed
monomial keys are prefix-compatible: pullback is a re-keying, pushforward is
extraction of the fiber-top coefficient after normal-form reduction.  A
Grassmann node is realized internally by a two-step flag tower; pushing a
class down from it multiplies by the first flag class beforehand, because
the flag over the Grassmannian is the projectivized tautological sub-bundle
whose relative hyperplane class that is.
"""

from __future__ import annotations

from .bundles import VBundle, bundle_from_chern, bundle_tensor, line_bundle
from .coeffs import GenusPoly
from .gring import GradedClass, RingCtx, class_inverse

_EXP_BITS = 6


def _rekey(src: RingCtx, dst: RingCtx, key: int) -> int:
    exp = key & ((1 << (_EXP_BITS * min(src.nvars, dst.nvars))) - 1)
    aux = (key >> src.shift_aux) & 0xFF
    deg = key >> src.shift_deg
    return exp | (aux << dst.shift_aux) | (deg << dst.shift_deg)


def dual_chern(c: GradedClass) -> GradedClass:
    """Total Chern class of the dual: negate odd-degree parts."""
    sd = c.ring.shift_deg
    return c.ring.from_terms(
        {k: (-v if (k >> sd) & 1 else v) for k, v in c.terms.items()}
    )


class Space:
    """One node of a fibration tower."""

    __slots__ = (
        "parent",
        "kind",
        "ring",
        "reldim",
        "genus",
        "taut",
        "taut_bundles",
        "_hyper",
        "_bundle",
        "_fiber_mask",
        "_extract_bits",
        "_extract_full",
        "_premul",
    )

    def __init__(self):
        raise TypeError("use base_new / p1_bundle / proj_bundle / grass2_bundle")

    def __repr__(self):
        return f"<Space {self.kind} reldim {self.reldim} cut {self.ring.cut}>"

    # -- vertical structure ----------------------------------------------------

    def ancestors(self) -> list["Space"]:
        out, node = [], self
        while node is not None:
            out.append(node)
            node = node.parent
        return out

    def chain_to(self, lower: "Space") -> list["Space"]:
        """Nodes from self down to (but excluding) lower."""
        out, node = [], self
        while node is not lower:
            if node is None:
                raise ValueError("not an ancestor")
            out.append(node)
            node = node.parent
        return out

    def reldim_over(self, lower: "Space") -> int:
        return sum(n.reldim for n in self.chain_to(lower))

    # -- pull / push -------------------------------------------------------------

    def pull(self, cls: GradedClass) -> GradedClass:
        src = cls.ring
        if src is self.ring:
            return cls
        if src.names != self.ring.names[: src.nvars]:
            raise ValueError("class does not come from an ancestor ring")
        return self.ring.from_terms(
            {_rekey(src, self.ring, k): c for k, c in cls.terms.items()}
        )

    def pull_bundle(self, V: VBundle) -> VBundle:
        if V.space is self:
            return V
        return VBundle(self, V.rank, self.pull(V.chern), virtual=V.virtual, is_zero=V.is_zero)

    def push(self, cls: GradedClass) -> GradedClass:
        """One-step pushforward to the parent."""
        if self.parent is None:
            raise ValueError("base node has no pushforward")
        if cls.ring is not self.ring:
            raise ValueError("class lives on a different node")
        if self._premul is not None:
            cls = cls * self._premul
        pr = self.parent.ring
        out = {}
        mask, bits, full = self._fiber_mask, self._extract_bits, self._extract_full
        for k, c in cls.terms.items():
            if (k & mask) == bits:
                out[_rekey(self.ring, pr, k - full)] = c
        return pr.from_terms(out)

    def push_to(self, cls: GradedClass, lower: "Space") -> GradedClass:
        for node in self.chain_to(lower):
            cls = node.push(cls)
        return cls

    # -- tautological line bundles ---------------------------------------------

    def hyperplane(self) -> GradedClass:
        if self._hyper is None:
            raise ValueError(f"{self.kind} node has no hyperplane class")
        return self.taut[self._hyper]

    def O(self, k: int = 1) -> VBundle:
        return line_bundle(self, self.hyperplane() * k)

    # -- grass2 extras -----------------------------------------------------------

    def sub_bundle(self) -> VBundle:
        return self.taut_bundles["sub"]

    def quot_bundle(self) -> VBundle:
        return self.taut_bundles["quot"]

    def sigma(self, i: int) -> GradedClass:
        return self.taut_bundles["quot"].c(i)

    def plucker_line(self) -> VBundle:
        """O(1) of the ambient Pluecker projectivization, restricted here."""
        q = self.taut_bundles["quot"]
        return line_bundle(self, q.c1() - self.pull(self._bundle.c1()))


def _new_node(parent, kind, new_gens, reldim, extra_cut=0) -> Space:
    pring = parent.ring
    gens = list(zip(pring.names, pring.degrees)) + list(new_gens)
    flags = pring.aux_flags + (False,) * len(new_gens)
    ring = RingCtx(gens, pring.cut + reldim + extra_cut, aux_flags=flags, aux_cut=pring.aux_cut)
    for v, (power, terms) in sorted(pring.rules.items()):
        rhs = ring.from_terms({_rekey(pring, ring, k): c for k, c in terms.items()})
        ring.install_rule(pring.names[v], power, rhs)
    node = Space.__new__(Space)
    node.parent = parent
    node.kind = kind
    node.ring = ring
    node.reldim = reldim
    node.genus = parent.genus
    node.taut = {}
    node.taut_bundles = {}
    node._hyper = None
    node._bundle = None
    node._premul = None
    node._fiber_mask = 0
    node._extract_bits = 0
    node._extract_full = 0
    return node


def _set_extraction(node: Space, top: dict[str, int]) -> None:
    ring = node.ring
    mask = bits = full = 0
    for name in ring.names[node.parent.ring.nvars :]:
        i = ring.index[name]
        mask |= 0x3F << (_EXP_BITS * i)
        e = top.get(name, 0)
        bits |= e << (_EXP_BITS * i)
        full += e * ring.unit_keys[i]
    node._fiber_mask = mask
    node._extract_bits = bits
    node._extract_full = full


def base_new(gens, cut: int, genus: int | None = None, aux_cut: int = -1) -> Space:
    """Base stack with a free ring on the given (name, degree) generators."""
    if cut < 1:
        raise ValueError("cut must be at least 1")
    ring = RingCtx(gens, cut, aux_flags=(True,) * len(gens), aux_cut=aux_cut)
    node = Space.__new__(Space)
    node.parent = None
    node.kind = "base"
    node.ring = ring
    node.reldim = 0
    node.genus = genus
    node.taut = {}
    node.taut_bundles = {}
    node._hyper = None
    node._bundle = None
    node._premul = None
    node._fiber_mask = 0
    node._extract_bits = 0
    node._extract_full = 0
    return node


def genus_poly(genus: int | None) -> GenusPoly:
    """The genus as a coefficient: the variable itself, or a fixed integer."""
    return GenusPoly.gen() if genus is None else GenusPoly.const(genus)


def p1_bundle(S: Space, name: str = "z") -> Space:
    """P1-bundle with hyperplane class z and relation z^2 = -c2."""
    if "c2" not in S.ring.index:
        if S.kind != "base":
            raise ValueError("cannot introduce c2 below the base")
        S = base_new(
            list(zip(S.ring.names, S.ring.degrees)) + [("c2", 2)],
            S.ring.cut,
            genus=S.genus,
            aux_cut=S.ring.aux_cut,
        )
    node = _new_node(S, "p1", [(name, 1)], 1)
    z = node.ring.gen(name)
    node.ring.install_rule(name, 2, -node.ring.gen("c2"))
    node.taut[name] = z
    node.taut["z"] = z
    node._hyper = name
    _set_extraction(node, {name: 1})
    return node


def proj_bundle(S: Space, V: VBundle, name: str = "zeta") -> Space:
    """Projectivization of V (subspace convention: O(-1) sits inside the
    pullback of V, and the hyperplane class is c1 of its dual)."""
    r = V.rank_int()
    if r < 2:
        raise ValueError("projectivize a bundle of rank at least 2")
    if V.space is not S:
        raise ValueError("bundle does not live on the given space")
    if name in S.ring.index:
        raise ValueError(f"generator name {name} already taken")
    node = _new_node(S, "proj", [(name, 1)], r - 1)
    node._bundle = V
    zeta = node.ring.gen(name)
    rhs = node.ring.zero()
    for i in range(1, r + 1):
        ci = V.c(i)
        if ci:
            rhs = rhs - node.pull(ci) * zeta ** (r - i)
    node.ring.install_rule(name, r, rhs)
    node.taut[name] = zeta
    node._hyper = name
    _set_extraction(node, {name: r - 1})
    return node


def grass2_bundle(S: Space, V: VBundle, names: tuple[str, str] = ("h1", "h2")) -> Space:
    """Bundle of 2-planes in V, modeled on the two-step flag tower whose
    classes are the dual sub-line hyperplanes h1, h2."""
    r = V.rank_int()
    if r < 3:
        raise ValueError("need rank at least 3 for 2-planes")
    if V.space is not S:
        raise ValueError("bundle does not live on the given space")
    n1, n2 = names
    # the node's ring is the flag ring; one extra degree of headroom feeds
    # the h1-premultiplication in push()
    node = _new_node(S, "grass2", [(n1, 1), (n2, 1)], 2 * (r - 2), extra_cut=1)
    node._bundle = V
    h1 = node.ring.gen(n1)
    h2 = node.ring.gen(n2)
    cV = node.pull(V.chern)

    rhs1 = node.ring.zero()
    for i in range(1, r + 1):
        part = cV.graded_part(i)
        if part:
            rhs1 = rhs1 - part * h1 ** (r - i)
    node.ring.install_rule(n1, r, rhs1)

    # second step projectivizes V / (first flag line); its Chern classes are
    # series parts of c(V)/(1 - h1)
    cQ1 = cV * class_inverse(node.ring.one() - h1)
    rhs2 = node.ring.zero()
    for i in range(1, r):
        part = cQ1.graded_part(i)
        if part:
            rhs2 = rhs2 - part * h2 ** (r - 1 - i)
    node.ring.install_rule(n2, r - 1, rhs2)

    node.taut[n1] = h1
    node.taut[n2] = h2
    sub = VBundle(node, 2, (node.ring.one() - h1) * (node.ring.one() - h2))
    quot = VBundle(node, r - 2, node.pull(V.chern) * class_inverse(sub.chern))
    node.taut_bundles["sub"] = sub
    node.taut_bundles["quot"] = quot
    node._premul = h1
    _set_extraction(node, {n1: r - 1, n2: r - 2})
    return node


def pushforward(upper: Space, lower: Space, cls: GradedClass) -> GradedClass:
    return upper.push_to(cls, lower)


def _step_cotangent_chern(node: Space) -> GradedClass:
    ring = node.ring
    if node.kind == "p1":
        return ring.one() - 2 * node.taut["z"]
    if node.kind == "proj":
        V = node._bundle
        dual = bundle_from_chern(node, V.rank_int(), dual_chern(node.pull(V.chern)))
        return dual.twist(-node.hyperplane()).chern
    if node.kind == "grass2":
        quot_dual = bundle_from_chern(
            node, node.quot_bundle().rank_int(), dual_chern(node.quot_bundle().chern)
        )
        return bundle_tensor(node.sub_bundle(), quot_dual).chern
    raise ValueError(f"no relative cotangent at a {node.kind} node")


def rel_cotangent(upper: Space, lower: Space) -> VBundle:
    """Cotangent bundle of the tower segment, by multiplicativity."""
    total = upper.ring.one()
    rank = 0
    for node in upper.chain_to(lower):
        total = total * upper.pull(_step_cotangent_chern(node))
        rank += node.reldim
    return VBundle(upper, rank, total)


def rel_tangent(upper: Space, lower: Space) -> VBundle:
    cot = rel_cotangent(upper, lower)
    return VBundle(upper, cot.rank, dual_chern(cot.chern))
