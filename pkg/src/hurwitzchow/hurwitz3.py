"""Trigonal covers of P^1: the universal relation ideal and the Chow ring.

A degree-3 cover embeds in a P^1-fibered surface scroll; vanishing of the
first-order jets of the defining cubic form along the cover forces four
pushforward relations among the tautological classes.  At low genus the
scroll degenerates on splitting loci whose classes enter as extra relations;
genus 4 additionally needs a correction from covers lying on a directrix.
"""

from __future__ import annotations

from fractions import Fraction

from .bundles import (
    VBundle,
    bundle_functor,
    bundle_tensor,
    grr_pushforward,
    line_bundle,
)
from .gring import GradedClass, class_inverse
from .ideals import GradedIdeal, graded_dim
from .jets import jet_full
from .spaces import Space, base_new, genus_poly, p1_bundle, proj_bundle, rel_cotangent

BASE_GENS = (("a1", 1), ("a2", 2), ("a2p", 1), ("c2", 2))

PRESENTATIONS = {
    (1, 0, 0, 0, 0): "Q",
    (1, 1, 0, 0, 0): "Q[a1]/(a1^2)",
    (1, 1, 1, 0, 0): "Q[a1]/(a1^3)",
}


class Deg3Tower:
    """Base stack, its P^1 fibration, and the projectivized dual of the
    rank-2 tautological bundle carrying the cubic form."""

    def __init__(self, genus: int | None = None, cut: int = 6):
        if cut < 5:
            raise ValueError("degree-3 tower needs cut >= 5")
        if genus is not None and genus < 2:
            raise ValueError("genus must be at least 2")
        self.genus = genus
        self.base = base_new(list(BASE_GENS), cut, genus=genus)
        self.P = p1_bundle(self.base)
        g = genus_poly(genus)
        ring = self.P.ring
        a1, a2, a2p = ring.gen("a1"), ring.gen("a2"), ring.gen("a2p")
        z = self.P.hyperplane()
        chern = ring.one() + (a1 + (g + 2) * z) + (a2 + a2p * z)
        self.E = VBundle(self.P, 2, chern)
        self.PE = proj_bundle(self.P, bundle_functor("dual", self.E))
        det_pull = line_bundle(self.PE, -self.PE.pull(self.E.c1()))
        self.W = bundle_tensor(self.PE.O(3), det_pull)


def deg3_tower(genus: int | None = None, cut: int = 6) -> Deg3Tower:
    return Deg3Tower(genus=genus, cut=cut)


def deg3_ideal(T: Deg3Tower) -> list[GradedClass]:
    """The four tautological relations: pushforwards of the top Chern class
    of first-order jets of the cubic, times z^i zeta^j for i, j <= 1."""
    jet = jet_full(1, T.W, rel_cotangent(T.PE, T.base))
    c3 = jet.chern.graded_part(3)
    ring = T.PE.ring
    z, zeta = ring.gen("z"), T.PE.hyperplane()
    out = []
    for i in (0, 1):
        for j in (0, 1):
            cls = c3
            if i:
                cls = cls * z
            if j:
                cls = cls * zeta
            out.append(T.PE.push_to(cls, T.base))
    return out


def splitting_class(e1: int, e2: int, g: int, T: Deg3Tower) -> GradedClass:
    """Class of the locus where the rank-2 bundle splits at least as badly
    as O(e1) + O(e2), read off a ratio of dual total Chern classes of
    derived pushforwards."""
    if not isinstance(g, int):
        raise ValueError("splitting loci need an integer genus")
    if T.genus != g:
        raise ValueError(f"tower genus {T.genus} does not match {g}")
    if e1 + e2 != g + 2:
        raise ValueError(f"splitting type must sum to {g + 2}")
    P = T.P
    z = P.hyperplane()

    def twist(B: VBundle, m: int) -> VBundle:
        return bundle_tensor(B, line_bundle(P, m * z)) if m else B

    upper = bundle_tensor(
        grr_pushforward(P, twist(T.E, -(e1 + 1))),
        grr_pushforward(P, line_bundle(P, z)),
    )
    lower = grr_pushforward(P, twist(T.E, -e1))
    ratio = bundle_functor("dual", upper).chern * class_inverse(
        bundle_functor("dual", lower).chern
    )
    return ratio.graded_part(e2 - e1 - 1)


def deg3_g4_correction(T: Deg3Tower) -> GradedClass:
    """Genus-4 correction: covers on a quadric scroll meeting its directrix,
    pushed down from an explicit cycle against second jets along the fibers."""
    if T.genus != 4:
        raise ValueError("the directrix correction exists at genus 4 only")
    PE = T.PE
    ring = PE.ring
    a1, a2p = ring.gen("a1"), ring.gen("a2p")
    z, zeta = ring.gen("z"), PE.hyperplane()
    cycle = (zeta + a1 - Fraction(1, 2) * a2p - 4 * z) * (a2p - 3 * a1)
    jet = jet_full(1, T.W, rel_cotangent(PE, T.P))
    return PE.push_to(cycle * jet.chern.graded_part(2), T.base)


def deg3_chow(genus: int | None = None, cut: int = 6) -> dict:
    """Chow presentation report: relation ideal, genus-specific extra
    classes, graded dimensions, and the matched presentation tag."""
    if genus is not None and genus < 2:
        raise ValueError("genus must be at least 2")
    T = deg3_tower(genus=genus, cut=cut)
    relations = deg3_ideal(T)
    extra: list[tuple[str, GradedClass]] = []
    if genus == 2:
        extra.append(("splitting_1_3", splitting_class(1, 3, 2, T)))
    elif genus == 3:
        extra.append(("splitting_1_4", splitting_class(1, 4, 3, T)))
    elif genus == 4:
        extra.append(("directrix_correction", deg3_g4_correction(T)))
    elif genus == 5:
        extra.append(("splitting_2_5", splitting_class(2, 5, 5, T)))
    ideal = GradedIdeal(T.base.ring, relations + [cls for _, cls in extra])
    dims = [graded_dim(ideal, d, method="symbolic") for d in range(5)]
    presentation = PRESENTATIONS.get(tuple(dims), "unrecognized")
    return {
        "genus": "symbolic" if genus is None else genus,
        "extra_classes": [
            {"label": label, "class": cls.to_json()} for label, cls in extra
        ],
        "dims": dims,
        "presentation": presentation,
    }
