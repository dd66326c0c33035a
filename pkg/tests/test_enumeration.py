from math import comb, factorial

import numpy as np
import pytest

from oracles import all_partial_injections, closure_fixpoint
from tightseries.enumeration import (ElementSet, NotClosedError, closure_of, enumerate_inverse_semigroup,
                                     inverse_semigroup_size, stratify_by_rank)
from tightseries.errors import BudgetExceededError, InvalidRankError
from tightseries.pinj import PartialInjection, compose, identity_on, parse, zero

# frozen from the brute-force generator in oracles.all_partial_injections
BRUTE_COUNTS = {0: 1, 1: 2, 2: 7, 3: 34, 4: 209, 5: 1546}


def test_frozen_counts_match_oracle():
    for m in range(5):
        assert len(all_partial_injections(m)) == BRUTE_COUNTS[m]


@pytest.mark.parametrize("m, n, size", [(2, 2, 7), (4, 2, 89), (3, 0, 1)])
def test_enumerate_examples(m, n, size):
    s = enumerate_inverse_semigroup(m, n)
    assert len(s) == size


def test_rank_zero_is_only_zero():
    assert list(enumerate_inverse_semigroup(3, 0)) == [zero(3)]


def test_cardinality_formula_exhaustive():
    for m in range(7):
        for n in range(m + 1):
            expected = sum(comb(m, k) ** 2 * factorial(k) for k in range(n + 1))
            if m <= 4:
                brute = sum(1 for d in all_partial_injections(m) if len(d) <= n)
                assert brute == expected
            assert inverse_semigroup_size(m, n) == expected
            if expected <= 20000:
                assert len(enumerate_inverse_semigroup(m, n)) == expected


def test_enumeration_is_exactly_the_brute_force_set():
    s = enumerate_inverse_semigroup(3, 2)
    brute = {PartialInjection(3, d.items()) for d in all_partial_injections(3) if len(d) <= 2}
    assert set(s) == brute and len(s) == len(brute)


def test_enumeration_order_and_determinism():
    a = enumerate_inverse_semigroup(3, 3)
    b = enumerate_inverse_semigroup(3, 3)
    assert a.elements == b.elements
    assert list(a.elements) == sorted(a.elements, key=lambda x: x.sort_key())


def test_invalid_rank():
    with pytest.raises(InvalidRankError):
        enumerate_inverse_semigroup(2, 3)


def test_budget():
    with pytest.raises(BudgetExceededError, match="100"):
        enumerate_inverse_semigroup(4, 4, budget=100)


@pytest.mark.parametrize("m, n, sizes", [(2, 2, [1, 4, 2]), (4, 1, [1, 16]), (3, 0, [1])])
def test_stratify(m, n, sizes):
    strata = stratify_by_rank(enumerate_inverse_semigroup(m, n))
    assert [len(s) for s in strata] == sizes
    assert all(x.rank == s.rank for s in strata for x in s.members)


def test_strata_sizes_general():
    for m in range(5):
        s = enumerate_inverse_semigroup(m, m)
        assert [len(st) for st in stratify_by_rank(s)] == [comb(m, k) ** 2 * factorial(k) for k in range(m + 1)]


def test_ideal_property_inside_full():
    full = enumerate_inverse_semigroup(3, 3)
    for n in range(4):
        ideal = set(enumerate_inverse_semigroup(3, n))
        assert all(compose(s, x) in ideal and compose(x, s) in ideal for s in full for x in ideal)


class TestClosure:
    def test_zero(self):
        assert list(closure_of([zero(2)], compose)) == [zero(2)]

    def test_idempotent(self):
        e = identity_on([0], 2)
        assert list(closure_of([e], compose)) == [e]

    def test_swap_pair(self):
        gens = [parse("[1->2]", 2), parse("[2->1]", 2)]
        c = closure_of(gens, compose)
        assert set(c) == closure_fixpoint(gens, compose)
        assert set(c) == {gens[0], gens[1], identity_on([0], 2), identity_on([1], 2), zero(2)}
        # breadth-first layers, each sorted
        assert list(c) == [gens[0], gens[1], zero(2), identity_on([0], 2), identity_on([1], 2)]

    def test_budget(self):
        gens = [parse("[1->2, 2->3, 3->1]", 3), parse("[1->2, 2->1]", 3)]
        with pytest.raises(BudgetExceededError, match="4"):
            closure_of(gens, compose, budget=4)

    def test_deterministic(self):
        gens = [parse("[1->2, 2->3]", 3), parse("[3->1]", 3)]
        assert closure_of(gens, compose).elements == closure_of(list(reversed(gens)), compose).elements


def test_element_set_rejects_non_closed():
    with pytest.raises(NotClosedError):
        ElementSet([parse("[1->2]", 2)], compose)


def test_fast_table_matches_generic_loop():
    for m, n in [(3, 3), (4, 2)]:
        s = enumerate_inverse_semigroup(m, n)
        fast = s.table()
        slow = s._generic_table()
        assert np.array_equal(fast, slow)


def test_table_associative_i4():
    t = enumerate_inverse_semigroup(4, 4).table()
    n = len(t)
    a = np.arange(n)
    for x in range(n):
        assert np.array_equal(t[t[x][:, None], a[None, :]], t[x][t])
