import pytest

from oracles import is_ideal
from tightseries.enumeration import ElementSet, closure_of, enumerate_inverse_semigroup
from tightseries.errors import InvalidSeriesError, NotHomomorphismError
from tightseries.ideals import IdealSeries, inverse_rank_series, tightness_report, verify_ideal_series
from tightseries.pinj import compose, identity_on, parse, zero
from tightseries.products import (Homomorphism, ProductElement, fiber_sizes, identity_homomorphism, product_series,
                                  product_set, pullback_series)
from tightseries.pt import BlockStructure, enumerate_pt, index_homomorphism


def test_product_multiplication_coordinatewise():
    S, T = enumerate_inverse_semigroup(2, 1), enumerate_inverse_semigroup(2, 2)
    P = product_set(S, T)
    assert len(P) == len(S) * len(T)
    for x in list(P)[::3]:
        for y in list(P)[::5]:
            assert P.mul(x, y) == ProductElement(compose(x.left, y.left), compose(x.right, y.right))


def test_product_i21_squared():
    s = inverse_rank_series(2, 1)
    k = product_series(s, s)
    assert len(k.ambient) == 25 and len(k.chain) == 3
    assert verify_ideal_series(k).passed
    z = zero(2)
    assert k.chain[0] == {ProductElement(z, z)}
    assert k.chain[1] == {ProductElement(x, z) for x in s.ambient}
    elems = list(k.ambient)
    assert all(is_ideal(level, elems, k.ambient.mul) for level in k.chain)


def test_product_with_single_level():
    sA = inverse_rank_series(2, 1)
    sB = inverse_rank_series(2, 0)
    k = product_series(sA, sB)
    assert len(k.chain) == 2
    assert verify_ideal_series(k).passed


def test_product_i31_i22():
    k = product_series(inverse_rank_series(3, 1), inverse_rank_series(2, 2))
    assert len(k.chain) == 4
    assert verify_ideal_series(k).passed
    assert all(c > 0 for c in tightness_report(k).maxima)


def test_product_rejects_invalid():
    amb = enumerate_inverse_semigroup(2, 1)
    bad = IdealSeries(amb, ({identity_on([0], 2)}, set(amb)))
    with pytest.raises(InvalidSeriesError):
        product_series(bad, inverse_rank_series(2, 1))


class TestHomomorphism:
    def test_identity(self):
        s = enumerate_inverse_semigroup(2, 1)
        h = identity_homomorphism(s)
        assert set(fiber_sizes(h).values()) == {1}
        series = inverse_rank_series(2, 1)
        assert pullback_series(identity_homomorphism(series.ambient), series).chain == series.chain

    def test_not_multiplicative(self):
        s = enumerate_inverse_semigroup(2, 1)
        swap = {x: x for x in s}
        swap[identity_on([0], 2)] = parse("[1->2]", 2)
        swap[parse("[1->2]", 2)] = identity_on([0], 2)
        with pytest.raises(NotHomomorphismError):
            Homomorphism(s, s, swap.__getitem__)

    def test_not_surjective(self):
        s = enumerate_inverse_semigroup(2, 1)
        with pytest.raises(NotHomomorphismError):
            Homomorphism(s, s, lambda x: zero(2))

    def test_trivial_target(self):
        src = closure_of([parse("[1->2]", 2), parse("[2->1]", 2)], compose)
        assert len(src) == 5
        tgt = ElementSet([zero(1)], compose, label="{0}")
        h = Homomorphism(src, tgt, lambda x: zero(1))
        assert fiber_sizes(h) == {zero(1): 5}
        pb = pullback_series(h, IdealSeries(tgt, ({zero(1)},)))
        assert verify_ideal_series(pb).passed
        assert pb.chain == (frozenset(src),)


def test_pullback_from_pt():
    st = BlockStructure((2, 2))
    h = index_homomorphism(st, 1)
    pb = pullback_series(h, inverse_rank_series(2, 1))
    assert len(pb.chain) == 2 and verify_ideal_series(pb).passed
    assert all(is_ideal(level, list(h.source), h.source.mul) for level in pb.chain)
    rep = tightness_report(pb)
    assert rep.finitely_tight  # within the count x fiber^2 heuristic
    assert sum(fiber_sizes(h).values()) == len(h.source)


@pytest.mark.parametrize("blocks, n", [((1, 1), 2), ((2, 1), 1), ((2, 2), 1), ((2, 2), 2)])
def test_fiber_partition(blocks, n):
    h = index_homomorphism(BlockStructure(blocks), n)
    fs = fiber_sizes(h)
    assert sum(fs.values()) == len(h.source)
    assert all(h.preimage([t]) and len(h.preimage([t])) == c for t, c in fs.items())
