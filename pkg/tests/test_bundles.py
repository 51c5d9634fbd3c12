"""Chern calculus for honest and virtual bundles."""

import pytest

from hurwitzchow.bundles import (
    VBundle,
    adams,
    bundle_diff,
    bundle_from_chern,
    bundle_functor,
    bundle_sum,
    bundle_tensor,
    chern_character,
    chern_from_character,
    grr_pushforward,
    line_bundle,
    trivial_bundle,
)
from hurwitzchow.spaces import base_new, p1_bundle

from oracles import power_sums_from_roots, sym_chern_roots, wedge_chern_roots


@pytest.fixture()
def pt():
    return base_new([("r1", 1), ("r2", 1), ("r3", 1)], 6)


def split_bundle(space, names):
    ring = space.ring
    total = ring.one()
    for n in names:
        total = total * (ring.one() + ring.gen(n))
    return bundle_from_chern(space, len(names), total)


def test_whitney_sum(pt):
    a = split_bundle(pt, ["r1"])
    b = split_bundle(pt, ["r2", "r3"])
    assert bundle_sum(a, b).chern == a.chern * b.chern


def test_dual_of_dual_is_identity(pt):
    v = split_bundle(pt, ["r1", "r2"])
    again = bundle_functor("dual", bundle_functor("dual", v))
    assert again.chern == v.chern
    assert again.rank == v.rank


def test_det_c1_is_sum_of_roots(pt):
    v = split_bundle(pt, ["r1", "r2", "r3"])
    ring = pt.ring
    want = ring.gen("r1") + ring.gen("r2") + ring.gen("r3")
    assert bundle_functor("det", v).chern == ring.one() + want


def test_character_round_trip(pt):
    v = split_bundle(pt, ["r1", "r2"])
    back = chern_from_character(chern_character(v), v.rank, pt)
    assert back.chern == v.chern


def test_character_graded_parts_are_power_sums(pt):
    ring = pt.ring
    roots = [ring.gen("r1"), ring.gen("r2"), ring.gen("r3")]
    v = split_bundle(pt, ["r1", "r2", "r3"])
    ch = chern_character(v)
    from math import factorial

    sums = power_sums_from_roots(roots, 4, ring.zero())
    for k in range(1, 5):
        assert ch.graded_part(k) * factorial(k) == sums[k - 1]


def test_adams_on_line_scales_c1(pt):
    ring = pt.ring
    line = line_bundle(pt, ring.gen("r1"))
    for k in (-1, 2, 3):
        tw = adams(k, line)
        assert tw.chern == ring.one() + k * ring.gen("r1")


@pytest.mark.parametrize("k", [2, 3])
def test_sym_matches_root_oracle(pt, k):
    ring = pt.ring
    roots = [ring.gen("r1"), ring.gen("r2")]
    v = split_bundle(pt, ["r1", "r2"])
    assert v.sym(k).chern == sym_chern_roots(roots, k, ring.one())


@pytest.mark.parametrize("k", [2, 3])
def test_wedge_matches_root_oracle(pt, k):
    ring = pt.ring
    roots = [ring.gen("r1"), ring.gen("r2"), ring.gen("r3")]
    v = split_bundle(pt, ["r1", "r2", "r3"])
    assert v.wedge(k).chern == wedge_chern_roots(roots, k, ring.one())


def test_tensor_line_twist_shortcut_agrees_with_character_route(pt):
    ring = pt.ring
    v = split_bundle(pt, ["r1", "r2"])
    ell = line_bundle(pt, ring.gen("r3"))
    fast = bundle_tensor(v, ell)
    slow = chern_from_character(
        chern_character(v) * chern_character(ell), v.rank, pt
    )
    assert fast.chern == slow.chern


def test_tensor_of_split_pair_matches_roots(pt):
    ring = pt.ring
    a = split_bundle(pt, ["r1"])
    b = split_bundle(pt, ["r2", "r3"])
    got = bundle_tensor(a, b)
    want = (
        (ring.one() + ring.gen("r1") + ring.gen("r2"))
        * (ring.one() + ring.gen("r1") + ring.gen("r3"))
    )
    assert got.chern == want
    assert got.rank_int() == 2


def test_virtual_difference_cancels(pt):
    v = split_bundle(pt, ["r1", "r2"])
    w = split_bundle(pt, ["r1"])
    d = bundle_diff(v, w)
    assert d.rank_int() == 1
    assert bundle_sum(d, w).chern == v.chern


def test_honest_bundle_rejects_overflow_chern(pt):
    ring = pt.ring
    with pytest.raises(ValueError):
        VBundle(pt, 1, ring.one() + ring.gen("r1") * ring.gen("r2"))


def test_det_of_virtual_rejected(pt):
    v = bundle_diff(split_bundle(pt, ["r1", "r2"]), split_bundle(pt, ["r3"]))
    with pytest.raises(ValueError):
        bundle_functor("det", v)


def test_grr_euler_characteristic_rank():
    base = base_new([("u", 1), ("c2", 2)], 4)
    P = p1_bundle(base)
    for k in range(5):
        pushed = grr_pushforward(P, P.O(k))
        assert pushed.rank.is_const()
        assert pushed.rank.const_value() == k + 1


def test_grr_relative_canonical_drops_sections():
    # fiberwise H^0(O(-1)) = 0 on a rational fiber
    base = base_new([("u", 1), ("c2", 2)], 4)
    P = p1_bundle(base)
    pushed = grr_pushforward(P, P.O(-1))
    assert pushed.rank.is_const()
    assert pushed.rank.const_value() == 0
    assert pushed.chern == P.parent.ring.one()
