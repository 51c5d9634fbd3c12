"""Principal-parts (jet) bundles via their filtrations.

Only Chern-class data is modeled.  Every constructor multiplies the total
Chern classes of the filtration quotients W (x) Sym^i(Omega_x) (x) Sym^j(Omega_y)
over the dots of a diagram; vanishing-locus arguments that make the top Chern
class of the result meaningful are inputs to the pipelines, not code here.

Diagrams are sets of lattice dots (i, j) recording which mixed partials are
tracked; admissibility is the pair of closure moves that make the filtration
exist: every dot pulls in its left neighbor, and two steps left trades for
one step up.
"""

from __future__ import annotations

from math import comb

from .bundles import (
    VBundle,
    _cap_bundle,
    _CapSpace,
    _uncap,
    bundle_functor,
    bundle_sum,
    bundle_tensor,
    trivial_bundle,
)
from .gring import ring_capped

Dot = tuple[int, int]


def diagram_admissible(S) -> bool:
    dots = set(map(tuple, S))
    for i, j in dots:
        if i < 0 or j < 0:
            return False
        if i >= 1 and (i - 1, j) not in dots:
            return False
        if i >= 2 and (i - 2, j + 1) not in dots:
            return False
    return True


def _sym_tower(V: VBundle, kmax: int) -> list[VBundle]:
    return [trivial_bundle(V.space, 1)] + [
        bundle_functor(("sym", k), V) for k in range(1, kmax + 1)
    ]


def _assemble(pieces: list[VBundle]) -> VBundle:
    out = pieces[0]
    for p in pieces[1:]:
        out = bundle_sum(out, p)
    return out


def jet_full(m: int, W: VBundle, Omega: VBundle, cap: int | None = None) -> VBundle:
    """m-th order principal parts: quotients W (x) Sym^i(Omega), 0 <= i <= m.

    ``cap`` truncates the computed Chern class at that degree; parts above
    it are silently dropped.
    """
    if m < 0:
        raise ValueError("jet order must be nonnegative")
    if cap is not None and cap < W.ring.cut:
        shim = _CapSpace(ring_capped(W.ring, cap))
        jet = jet_full(m, _cap_bundle(W, shim), _cap_bundle(Omega, shim))
        return _uncap(jet, W.space)
    syms = _sym_tower(Omega, m)
    pieces = [W] + [bundle_tensor(W, s) for s in syms[1:]]
    jet = _assemble(pieces)
    r = Omega.rank_int()
    assert jet.rank_int() == W.rank_int() * sum(comb(r + i - 1, i) for i in range(m + 1))
    return jet


def _directional_pieces(dots, W: VBundle, Ox: VBundle, Oy: VBundle) -> list[VBundle]:
    imax = max((i for i, _ in dots), default=0)
    jmax = max((j for _, j in dots), default=0)
    sx = _sym_tower(Ox, imax)
    sy = _sym_tower(Oy, jmax)
    pieces = []
    for i, j in sorted(dots):
        p = W
        if i:
            p = bundle_tensor(p, sx[i])
        if j:
            p = bundle_tensor(p, sy[j])
        pieces.append(p)
    return pieces


def jet_directional(S, W: VBundle, Ox: VBundle, Oy: VBundle, cap: int | None = None) -> VBundle:
    """Principal parts restricted to the partials named by an admissible S."""
    dots = set(map(tuple, S))
    if not diagram_admissible(dots):
        raise ValueError("diagram is not admissible")
    if not dots:
        raise ValueError("empty diagram")
    if cap is not None and cap < W.ring.cut:
        shim = _CapSpace(ring_capped(W.ring, cap))
        jet = jet_directional(
            S, _cap_bundle(W, shim), _cap_bundle(Ox, shim), _cap_bundle(Oy, shim)
        )
        return _uncap(jet, W.space)
    jet = _assemble(_directional_pieces(dots, W, Ox, Oy))
    rx, ry = Ox.rank_int(), Oy.rank_int()
    assert jet.rank_int() == W.rank_int() * sum(
        comb(rx + i - 1, i) * comb(ry + j - 1, j) for i, j in dots
    )
    return jet


def jet_mixed(
    inner, outer, W: VBundle, Wp: VBundle, Ox: VBundle, Oy: VBundle, cap: int | None = None
) -> VBundle:
    """Partials in ``inner`` keep full values in W; the remaining dots of
    ``outer`` only track values in the quotient Wp."""
    inner = set(map(tuple, inner))
    outer = set(map(tuple, outer))
    if not inner <= outer:
        raise ValueError("inner diagram must sit inside the outer one")
    if not (diagram_admissible(inner) and diagram_admissible(outer)):
        raise ValueError("diagram is not admissible")
    if cap is not None and cap < W.ring.cut:
        shim = _CapSpace(ring_capped(W.ring, cap))
        jet = jet_mixed(
            inner,
            outer,
            _cap_bundle(W, shim),
            _cap_bundle(Wp, shim),
            _cap_bundle(Ox, shim),
            _cap_bundle(Oy, shim),
        )
        return _uncap(jet, W.space)
    pieces = []
    if inner:
        pieces += _directional_pieces(inner, W, Ox, Oy)
    rest = outer - inner
    if rest:
        pieces += _directional_pieces(rest, Wp, Ox, Oy)
    if not pieces:
        raise ValueError("empty diagram")
    return _assemble(pieces)
