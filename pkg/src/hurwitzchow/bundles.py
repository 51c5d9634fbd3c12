"""Formal vector bundles: Chern classes, characters, functors, and GRR.

A :class:`VBundle` is a rank together with a total Chern class on the ring of
some space node.  Ranks live in the coefficient field because derived
pushforwards have genus-dependent fiber Euler characteristics; honest bundles
additionally promise an integer rank and Chern vanishing above it.

Sym, wedge, dual and tensor all run through the Chern character, where Adams
operations make plethysm linear algebra.  Tensoring with a line bundle keeps
a direct binomial fast path since it dominates the pipeline workloads.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
from fractions import Fraction

from .coeffs import GenusRational
from .gring import GradedClass, RingCtx, _as_coeff, class_inverse


def class_exp(n: GradedClass) -> GradedClass:
    """exp of a class with zero constant term (terminates at the cut)."""
    if n.constant_term():
        raise ValueError("exp needs a positive-degree argument")
    out = n.ring.one()
    power = n.ring.one()
    k = 1
    while True:
        power = power * n * Fraction(1, k)
        if not power:
            return out
        out = out + power
        k += 1


def class_log1(c: GradedClass) -> GradedClass:
    """log of a class with constant term 1."""
    if c.constant_term() != GenusRational.const(1):
        raise ValueError("log needs constant term 1")
    n = c - 1
    out = n.ring.zero()
    power = n.ring.one()
    k = 1
    while True:
        power = power * n
        if not power:
            return out
        out = out + power * Fraction(1 if k % 2 else -1, k)
        k += 1


def adams_character(ch: GradedClass, k: int) -> GradedClass:
    """Adams operation on a Chern character: degree-i part scales by k^i."""
    ring = ch.ring
    sd = ring.shift_deg
    out = {}
    for key, c in ch.terms.items():
        c2 = c * (k ** (key >> sd))
        if c2:
            out[key] = c2
    return ring.from_terms(out)


class VBundle:
    """Rank plus total Chern class; ``virtual`` marks K-classes."""

    __slots__ = ("space", "rank", "chern", "virtual", "is_zero")

    def __init__(self, space, rank, chern: GradedClass, virtual: bool = False, is_zero: bool = False):
        if chern.ring is not space.ring:
            raise ValueError("chern class lives off the bundle's space")
        if chern.constant_term() != GenusRational.const(1):
            raise ValueError("total Chern class must start with 1")
        rank = _as_coeff(rank)
        if not virtual:
            r = _int_rank(rank)
            if r is None or r < 0:
                raise ValueError(f"honest bundle needs integer rank >= 0, got {rank}")
            for d in chern.degrees_present():
                if d > r:
                    raise ValueError(f"honest rank-{r} bundle has a nonzero c_{d}")
        self.space = space
        self.rank = rank
        self.chern = chern
        self.virtual = virtual
        self.is_zero = is_zero

    @property
    def ring(self) -> RingCtx:
        return self.space.ring

    def rank_int(self) -> int:
        r = _int_rank(self.rank)
        if r is None:
            raise ValueError(f"rank {self.rank} is not an integer")
        return r

    def c(self, i: int) -> GradedClass:
        return self.chern.graded_part(i)

    def c1(self) -> GradedClass:
        return self.chern.graded_part(1)

    def top_chern(self) -> GradedClass:
        return self.chern.graded_part(self.rank_int())

    def character(self) -> GradedClass:
        return chern_character(self)

    def __repr__(self):
        tag = "virtual " if self.virtual else ""
        return f"<{tag}VBundle rank {self.rank}>"

    # conveniences that forward to the module-level operations
    def dual(self) -> "VBundle":
        return bundle_functor("dual", self)

    def det(self) -> "VBundle":
        return bundle_functor("det", self)

    def sym(self, k: int) -> "VBundle":
        return bundle_functor(("sym", k), self)

    def wedge(self, k: int) -> "VBundle":
        return bundle_functor(("wedge", k), self)

    def tensor(self, other: "VBundle") -> "VBundle":
        return bundle_tensor(self, other)

    def plus(self, other: "VBundle") -> "VBundle":
        return bundle_sum(self, other)

    def minus(self, other: "VBundle") -> "VBundle":
        return bundle_diff(self, other)

    def twist(self, line_c1: GradedClass) -> "VBundle":
        """Tensor with the line bundle of the given first Chern class."""
        return bundle_tensor(self, line_bundle(self.space, line_c1))


def _int_rank(rank: GenusRational):
    if not rank.is_const():
        return None
    v = rank.const_value()
    if v.denominator != 1:
        return None
    return int(v)


def trivial_bundle(space, r: int) -> VBundle:
    return VBundle(space, r, space.ring.one())


def line_bundle(space, c1: GradedClass) -> VBundle:
    if c1.degrees_present() not in ([], [1]):
        raise ValueError("line bundle wants a degree-1 class")
    return VBundle(space, 1, space.ring.one() + c1)


def bundle_from_chern(space, rank, chern: GradedClass, virtual: bool = False) -> VBundle:
    return VBundle(space, rank, chern, virtual=virtual)


def chern_character(B: VBundle) -> GradedClass:
    """rank + ch1 + ch2 + ... with ch_k = (-1)^(k-1) * (log c)_k / (k-1)!."""
    ring = B.ring
    s = class_log1(B.chern)
    ch = ring.scalar(B.rank)
    for d in s.degrees_present():
        ch = ch + s.graded_part(d) * Fraction(1 if d % 2 else -1, math.factorial(d - 1))
    return ch


def chern_from_character(ch: GradedClass, rank, space, virtual: bool = True) -> VBundle:
    rank = _as_coeff(rank)
    if ch.constant_term() != rank:
        raise ValueError("character's degree-0 part disagrees with the rank")
    s = ch.ring.zero()
    for d in ch.degrees_present():
        if d:
            s = s + ch.graded_part(d) * (
                Fraction(1 if d % 2 else -1) * math.factorial(d - 1)
            )
    return VBundle(space, rank, class_exp(s), virtual=virtual)


def adams(k: int, B: VBundle) -> VBundle:
    return chern_from_character(adams_character(chern_character(B), k), B.rank, B.space, virtual=B.virtual)


# -- Sym / wedge via Adams recursion ------------------------------------------


def _schur_characters(kind: str, kmax: int, ch: GradedClass) -> list[GradedClass]:
    """Characters of Sym^0..Sym^kmax or wedge^0..wedge^kmax of a class with
    character ch, via  k*S_k = sum_i (+-1)^(i-1) psi^i(ch) * S_(k-i)."""
    ring = ch.ring
    cached = _memo_load(kind, kmax, ch)
    if cached is not None:
        return cached
    psi = [None] + [adams_character(ch, i) for i in range(1, kmax + 1)]
    out = [ring.one()]
    for k in range(1, kmax + 1):
        acc = ring.zero()
        for i in range(1, k + 1):
            term = psi[i] * out[k - i]
            if kind == "wedge" and i % 2 == 0:
                term = -term
            acc = acc + term
        out.append(acc * Fraction(1, k))
    _memo_store(kind, kmax, ch, out)
    return out


def bundle_functor(kind, B: VBundle) -> VBundle:
    """dual, det, ("sym", k) or ("wedge", k) of a bundle."""
    if kind == "dual":
        ch = adams_character(chern_character(B), -1)
        return chern_from_character(ch, B.rank, B.space, virtual=B.virtual)
    if kind == "det":
        if B.virtual:
            raise ValueError("det of a virtual class")
        return line_bundle(B.space, B.c1())
    if not (isinstance(kind, tuple) and len(kind) == 2 and kind[0] in ("sym", "wedge")):
        raise ValueError(f"unknown functor {kind!r}")
    op, k = kind
    if k < 0:
        raise ValueError("negative Schur index")
    r = B.rank_int()
    if B.virtual or r < 0:
        raise ValueError(f"{op} needs an honest bundle")
    if op == "wedge" and k > r:
        return VBundle(B.space, 0, B.ring.one(), virtual=True, is_zero=True)
    chars = _schur_characters(op, k, chern_character(B))
    rank = math.comb(r + k - 1, k) if op == "sym" else math.comb(r, k)
    return chern_from_character(chars[k], rank, B.space, virtual=False)


def bundle_tensor(B1: VBundle, B2: VBundle) -> VBundle:
    if B1.space is not B2.space:
        raise ValueError("tensor factors live on different spaces")
    for a, b in ((B1, B2), (B2, B1)):
        if not b.virtual and _int_rank(b.rank) == 1 and not a.virtual:
            ell = b.c1()
            r = a.rank_int()
            one_ell = a.ring.one() + ell
            total = a.ring.zero()
            power = a.ring.one()
            for j in range(r, -1, -1):
                cj = a.c(j)
                if cj:
                    total = total + cj * power
                power = power * one_ell
            return VBundle(a.space, r, total)
    ch = chern_character(B1) * chern_character(B2)
    rank = B1.rank * B2.rank
    return chern_from_character(ch, rank, B1.space, virtual=B1.virtual or B2.virtual)


def bundle_sum(B1: VBundle, B2: VBundle) -> VBundle:
    if B1.space is not B2.space:
        raise ValueError("summands live on different spaces")
    return VBundle(
        B1.space,
        B1.rank + B2.rank,
        B1.chern * B2.chern,
        virtual=B1.virtual or B2.virtual,
    )


def bundle_diff(B1: VBundle, B2: VBundle) -> VBundle:
    if B1.space is not B2.space:
        raise ValueError("operands live on different spaces")
    return VBundle(
        B1.space,
        B1.rank - B2.rank,
        B1.chern * class_inverse(B2.chern),
        virtual=True,
    )


# -- truncated-cut shims ----------------------------------------------------------


class _CapSpace:
    """Stand-in space node carrying a truncated view of a tower ring.

    Chern data of low rank lives in low degrees while tower rings carry the
    cut needed for later pushforwards; running bundle arithmetic against this
    shim avoids dragging plethysm through the unused high degrees.
    """

    __slots__ = ("ring",)

    def __init__(self, ring):
        self.ring = ring


def _cap_bundle(V: VBundle, shim: _CapSpace) -> VBundle:
    ring = shim.ring
    kept = {k: c for k, c in V.chern.terms.items() if ring.key_degree(k) <= ring.cut}
    return VBundle(shim, V.rank, ring.from_terms(kept), virtual=V.virtual)


def _uncap(V: VBundle, space) -> VBundle:
    return VBundle(space, V.rank, space.ring.from_terms(dict(V.chern.terms)), virtual=V.virtual)


# -- Todd and GRR ---------------------------------------------------------------


def todd_from_c1(x: GradedClass) -> GradedClass:
    """Todd class of a line bundle with first Chern class x: x/(1-e^-x)."""
    ring = x.ring
    h = ring.one()
    power = ring.one()
    for k in range(1, ring.cut + 1):
        power = power * x * Fraction(-1, k + 1)
        if not power:
            break
        h = h + power
    return class_inverse(h)


def grr_pushforward(P, B: VBundle) -> VBundle:
    """Derived pushforward along a P1-bundle node: rank is the fiberwise
    Euler characteristic, Chern data from pushing ch(B) * td down one step."""
    if getattr(P, "kind", None) != "p1":
        raise ValueError("grr_pushforward needs a P1-bundle node")
    if B.space is not P:
        raise ValueError("bundle does not live on the given node")
    z = P.taut["z"]
    pushed = P.push(chern_character(B) * todd_from_c1(2 * z))
    return chern_from_character(pushed, pushed.constant_term(), P.parent)


# -- optional on-disk memo for the Schur recursion -----------------------------


def _memo_path(kind: str, kmax: int, ch: GradedClass):
    root = os.environ.get("HURWITZ_CHOW_CACHE")
    if not root:
        return None
    payload = repr((kind, kmax, ch.ring.signature(), sorted(
        (str(k), str(c)) for k, c in ch.terms.items()
    )))
    name = hashlib.sha256(payload.encode()).hexdigest()[:32]
    return os.path.join(root, f"schur-{name}.json")


def _memo_load(kind, kmax, ch):
    path = _memo_path(kind, kmax, ch)
    if not path or not os.path.exists(path):
        return None
    try:
        with open(path) as fh:
            data = json.load(fh)
        return [
            ch.ring.from_terms(
                {int(k): GenusRational.from_json(c) for k, c in entry}
            )
            for entry in data
        ]
    except (OSError, ValueError, KeyError):
        return None


def _memo_store(kind, kmax, ch, chars):
    path = _memo_path(kind, kmax, ch)
    if not path:
        return
    data = [[[str(k), c.to_json()] for k, c in cls.terms.items()] for cls in chars]
    try:
        os.makedirs(os.path.dirname(path), exist_ok=True)
        tmp = f"{path}.tmp.{os.getpid()}"
        with open(tmp, "w") as fh:
            json.dump(data, fh)
        os.replace(tmp, path)
    except OSError:
        pass
