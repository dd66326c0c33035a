import pytest
from hypothesis import given, strategies as st

from oracles import all_partial_injections, as_dict, dict_compose
from tightseries.errors import DomainMismatchError, ParseError
from tightseries.pinj import (PartialInjection, compose, from_json, identity_on, invert, is_idempotent,
                              natural_leq, parse, rank, render, zero)


def P(text, m):
    return parse(text, m)


@st.composite
def pinj(draw, m=None):
    m = draw(st.integers(1, 6)) if m is None else m
    k = draw(st.integers(0, m))
    dom = draw(st.permutations(range(m)))[:k]
    ran = draw(st.permutations(range(m)))[:k]
    return PartialInjection(m, zip(dom, ran))


@st.composite
def pinj_triples(draw):
    m = draw(st.integers(1, 6))
    return draw(pinj(m)), draw(pinj(m)), draw(pinj(m))


class TestCompose:
    def test_pointwise(self):
        a, b = P("[2->5]", 5), P("[1->2]", 5)
        assert compose(a, b) == P("[1->5]", 5)
        assert as_dict(compose(a, b)) == dict_compose(as_dict(a), as_dict(b))

    def test_disjoint_gives_zero(self):
        assert compose(P("[1->2]", 4), P("[3->4]", 4)) == zero(4)

    def test_identity_absorbs(self):
        b = P("[1->2, 2->1]", 2)
        assert compose(identity_on([0, 1], 2), b) == b

    def test_mismatch(self):
        with pytest.raises(DomainMismatchError):
            compose(zero(2), zero(3))

    def test_operator(self):
        a, b = P("[1->2]", 3), P("[2->3]", 3)
        assert a * b == compose(a, b)

    def test_exhaustive_against_dicts(self):
        elems = all_partial_injections(3)
        objs = [PartialInjection(3, d.items()) for d in elems]
        for a, da in zip(objs, elems):
            for b, db in zip(objs, elems):
                assert as_dict(compose(a, b)) == dict_compose(da, db)


def test_invert_examples():
    assert invert(P("[1->3, 2->4]", 4)) == P("[3->1, 4->2]", 4)
    assert invert(zero(3)) == zero(3)
    e = identity_on([4], 5)
    assert invert(e) == e


def test_identity_on():
    assert identity_on([0, 1], 2) == P("[1->1, 2->2]", 2)
    assert identity_on([], 3) == zero(3)
    full = identity_on(range(4), 4)
    for d in all_partial_injections(4)[::7]:
        a = PartialInjection(4, d.items())
        assert compose(full, a) == a == compose(a, full)


@pytest.mark.parametrize("text, r", [("0", 0), ("[1->2]", 1), ("[1->3, 2->4]", 2)])
def test_rank(text, r):
    assert rank(P(text, 4)) == r


def test_is_idempotent_examples():
    assert is_idempotent(identity_on([0, 1], 3))
    a = P("[1->2]", 2)
    assert compose(a, a) == zero(2) and not is_idempotent(a)
    assert is_idempotent(zero(2))


def test_natural_leq_examples():
    assert natural_leq(identity_on([0], 2), identity_on([0, 1], 2))
    assert natural_leq(P("[1->2]", 4), P("[1->2, 3->4]", 4))
    assert not natural_leq(identity_on([0, 1], 2), identity_on([0], 2))


def test_natural_leq_on_idempotents_matches_products():
    idems = [identity_on(s, 3) for s in ([], [0], [1], [0, 1], [0, 2], [0, 1, 2])]
    for e in idems:
        for f in idems:
            assert natural_leq(e, f) == (compose(e, f) == e == compose(f, e))


class TestParse:
    def test_examples(self):
        assert parse("[1->3, 2->4]") == PartialInjection(4, [(0, 2), (1, 3)])
        assert parse("0", 3) == zero(3)
        assert parse("[]", 2) == zero(2)

    @pytest.mark.parametrize("text, token", [
        ("[1->3, 1->4]", "1->4"),
        ("[1->3, 2->3]", "2->3"),
        ("[1=>3]", "1=>3"),
        ("[1->9]", "1->9"),
        ("[0->1]", "0->1"),
    ])
    def test_errors_name_token(self, text, token):
        with pytest.raises(ParseError, match=token):
            parse(text, 4)

    def test_not_bracketed(self):
        with pytest.raises(ParseError):
            parse("1->2", 3)

    def test_render_sorted(self):
        a = PartialInjection(4, [(3, 0), (0, 2)])
        assert render(a) == "[1->3, 4->1]"
        assert render(zero(2)) == "0"

    @given(pinj())
    def test_roundtrip(self, a):
        assert parse(render(a), a.ground_size) == a
        assert from_json(a.to_json()) == a


def test_constructor_rejects_non_injective():
    with pytest.raises(ValueError):
        PartialInjection(3, [(0, 1), (1, 1)])
    with pytest.raises(ValueError):
        PartialInjection(3, [(0, 1), (0, 2)])
    with pytest.raises(ValueError):
        PartialInjection(3, [(0, 3)])


@given(pinj_triples())
def test_associative(abc):
    a, b, c = abc
    assert compose(compose(a, b), c) == compose(a, compose(b, c))


@given(pinj())
def test_inverse_axioms(a):
    ai = invert(a)
    assert compose(a, compose(ai, a)) == a
    assert compose(ai, compose(a, ai)) == ai


@given(pinj())
def test_idempotent_characterisation(a):
    assert is_idempotent(a) == (a == identity_on(a.domain(), a.ground_size))
    assert is_idempotent(a) == (compose(a, a) == a)


@given(pinj_triples())
def test_rank_monotone(abc):
    a, b, _ = abc
    assert rank(compose(a, b)) <= min(rank(a), rank(b))


@given(pinj(), pinj())
def test_structural_equality_is_extensional(a, b):
    if a.ground_size != b.ground_size:
        return
    same_fn = all(a(x) == b(x) for x in range(a.ground_size))
    assert (a == b) == same_fn
    if a == b:
        assert hash(a) == hash(b)


@given(pinj())
def test_rank_equals_domain_and_range(a):
    assert rank(a) == len(a.domain()) == len(a.range()) == len(a.pairs)
    assert list(a.pairs) == sorted(a.pairs)
