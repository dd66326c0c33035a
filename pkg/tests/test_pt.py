from itertools import product

import pytest

from oracles import is_ideal
from tightseries.enumeration import ElementSet, enumerate_inverse_semigroup
from tightseries.errors import BudgetExceededError, DomainMismatchError, InvalidRankError
from tightseries.ideals import rank_series, tightness_report, verify_ideal_series
from tightseries.pinj import PartialInjection, zero
from tightseries.products import fiber_sizes
from tightseries.pt import (BlockMap, BlockStructure, block_identity, blockmaps_over, check_regular, compose_blockmaps,
                            enumerate_pt, fiber_formula, index_homomorphism, pt_size)

SMALL_STRUCTURES = [(1,), (2,), (1, 1), (1, 2), (2, 1), (2, 2)]


def bm(st, pairs, funcs):
    return BlockMap(st, PartialInjection(st.index_count, pairs), funcs)


class TestCompose:
    st = BlockStructure((2, 1))

    def test_alpha_composes(self):
        b = bm(self.st, [(0, 1)], [(0, 0), None])
        a = bm(self.st, [(1, 0)], [None, (1,)])
        c = compose_blockmaps(a, b)
        assert c.alpha == PartialInjection(2, [(0, 0)])
        assert c.funcs[0] == (1, 1)
        for x in [(0, 0), (0, 1)]:
            assert c(x) == a(b(x))

    def test_disjoint_is_empty(self):
        a = bm(self.st, [(0, 0)], [(0, 1), None])
        b = bm(self.st, [(1, 1)], [None, (0,)])
        assert compose_blockmaps(a, b).rank == 0

    def test_identity_left(self):
        e = block_identity(self.st)
        for b in enumerate_pt(self.st, 2):
            assert e * b == b == b * e

    def test_mismatch(self):
        with pytest.raises(DomainMismatchError):
            block_identity(BlockStructure((1, 1))) * block_identity(BlockStructure((2, 1)))

    def test_block_condition_enforced(self):
        with pytest.raises(ValueError):
            bm(self.st, [(0, 1)], [(0, 1), None])  # X_1 has one point
        with pytest.raises(ValueError):
            bm(self.st, [(0, 1)], [None, (0,)])


@pytest.mark.parametrize("blocks, n, size", [((1, 1), 2, 7), ((2, 2), 1, 17), ((2, 2), 0, 1), ((2, 1), 1, 9)])
def test_enumerate_sizes(blocks, n, size):
    st = BlockStructure(blocks)
    assert len(enumerate_pt(st, n)) == size == pt_size(st, n)


def test_enumerate_errors():
    with pytest.raises(InvalidRankError):
        enumerate_pt(BlockStructure((1,)), 2)
    with pytest.raises(BudgetExceededError):
        enumerate_pt(BlockStructure((2, 2)), 2, budget=10)


def test_singleton_blocks_isomorphic():
    h = index_homomorphism(BlockStructure((1, 1)), 2)
    assert set(fiber_sizes(h).values()) == {1}
    assert len(h.source) == len(h.target) == 7


def test_fiber_over_swap_is_four():
    st = BlockStructure((2, 2))
    alpha = PartialInjection(2, [(0, 1)])
    # every function X_0 -> X_1, counted directly
    direct = sum(1 for _ in product(range(2), repeat=2))
    assert direct == 4 == fiber_formula(st, alpha) == len(list(blockmaps_over(st, alpha)))
    h = index_homomorphism(st, 1)
    assert fiber_sizes(h)[alpha] == 4
    assert fiber_sizes(h)[zero(2)] == 1


@pytest.mark.parametrize("blocks", SMALL_STRUCTURES)
def test_h_and_fibers_small(blocks):
    st = BlockStructure(blocks)
    for n in range(st.index_count + 1):
        h = index_homomorphism(st, n)  # multiplicativity and surjectivity checked here
        for x in list(h.source)[::3]:
            for y in list(h.source)[::2]:
                assert h(x * y) == h(x) * h(y)
        for alpha, count in fiber_sizes(h).items():
            assert count == fiber_formula(st, alpha)


@pytest.mark.parametrize("blocks", SMALL_STRUCTURES)
def test_rank_series_and_regularity_small(blocks):
    st = BlockStructure(blocks)
    for n in range(st.index_count + 1):
        amb = enumerate_pt(st, n)
        s = rank_series(amb)
        assert verify_ideal_series(s).passed
        assert all(is_ideal(level, list(amb), amb.mul) for level in s.chain)
        assert all(c >= 1 for c in tightness_report(s).maxima)
        assert check_regular(amb).regular


def test_not_inverse():
    # (1,1)-collapse has two distinct inverses
    amb = enumerate_pt(BlockStructure((2,)), 1)
    const = bm(BlockStructure((2,)), [(0, 0)], [(0, 0)])
    inverses = [y for y in amb if const * y * const == const and y * const * y == y]
    assert len(inverses) > 1


def test_regular_examples():
    assert check_regular(enumerate_inverse_semigroup(3, 2)).regular
    rep = check_regular(enumerate_pt(BlockStructure((2, 1)), 1))
    assert rep.regular and rep.non_regular == []


def test_null_semigroup_not_regular():
    null = ElementSet(["0", "a"], lambda x, y: "0", label="null")
    rep = check_regular(null)
    assert rep.non_regular == ["a"]
    assert rep.witnesses == {"0": "0"}
