from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from weakapprox.abelian import (
    FiniteAbelianGroup,
    annihilator,
    quotient,
    subgroup_intersection,
    subgroup_sum,
)
from weakapprox.errors import StructuralError

from oracles import annihilator_bruteforce, span_bruteforce

V = FiniteAbelianGroup((2, 2))


@st.composite
def small_groups(draw):
    """Groups of order <= 64 in invariant-factor form."""
    chains = [(), (2,), (3,), (4,), (6,), (8,), (12,), (2, 2), (2, 4), (2, 6), (3, 3), (2, 8),
              (4, 4), (2, 2, 2), (2, 2, 4), (2, 2, 2, 2), (2, 12), (4, 8), (2, 2, 2, 4), (3, 6)]
    return FiniteAbelianGroup(draw(st.sampled_from(chains)))


@st.composite
def group_and_handles(draw, count=2):
    G = draw(small_groups())
    elem = st.tuples(*[st.integers(0, d - 1) for d in G.invariant_factors])
    handles = [G.subgroup(draw(st.lists(elem, max_size=3))) for _ in range(count)]
    return G, handles


def test_examples():
    a, b = V.subgroup([(1, 0)]), V.subgroup([(0, 1)])
    assert subgroup_sum(a, b) == V.whole()
    assert subgroup_intersection(a, b).is_trivial()
    assert annihilator(V.subgroup([(1, 1)])).elements() == {(0, 0), (1, 1)}
    assert quotient(V, a).invariant_factors == (2,)


def test_annihilator_example_by_enumeration():
    assert annihilator_bruteforce((2, 2), [(1, 1)]) == {(0, 0), (1, 1)}


def test_from_orders_and_str():
    assert FiniteAbelianGroup.from_orders([2, 3]).invariant_factors == (6,)
    assert FiniteAbelianGroup.from_orders([4, 6]).invariant_factors == (2, 12)
    assert str(FiniteAbelianGroup((2, 4))) == "Z/2 ⊕ Z/4"
    assert str(FiniteAbelianGroup()) == "0"


def test_rejects_bad_chains():
    with pytest.raises(ValueError):
        FiniteAbelianGroup((2, 3))
    with pytest.raises(ValueError):
        FiniteAbelianGroup((1,))


def test_ambient_mismatch():
    with pytest.raises(StructuralError):
        subgroup_sum(V.whole(), FiniteAbelianGroup((4,)).whole())
    with pytest.raises(StructuralError):
        V.reduce((1, 2, 3))


def test_pairing_values():
    G = FiniteAbelianGroup((2, 4))
    assert G.pairing((1, 1), (1, 1)) == Fraction(3, 4)
    assert G.pairing((1, 2), (1, 2)) == Fraction(1, 2)
    assert G.pairing((0, 2), (1, 2)) == 0


@given(group_and_handles())
def test_handle_elements_match_span(data):
    G, (a, _) = data
    assert a.elements() == span_bruteforce(G.invariant_factors, a.generators)
    assert a.order == len(a.elements())


@given(group_and_handles())
def test_structure_independent_of_generators(data):
    G, (a, _) = data
    alt = G.subgroup(sorted(a.elements()))
    assert alt == a
    assert alt.invariant_factors == a.invariant_factors
    # element-order statistics determine a finite abelian group
    orders = Counter(G.element_order(x) for x in a.elements())
    S = a.structure
    assert orders == Counter(S.element_order(x) for x in S.elements())


@given(group_and_handles())
def test_sum_intersection_orders(data):
    G, (a, b) = data
    s, i = subgroup_sum(a, b), subgroup_intersection(a, b)
    assert a.order * b.order == s.order * i.order
    assert i.elements() == a.elements() & b.elements()
    assert s.elements() == span_bruteforce(G.invariant_factors, list(a.elements() | b.elements()))


@given(group_and_handles())
def test_annihilator(data):
    G, (a, _) = data
    ann = annihilator(a)
    assert ann.elements() == annihilator_bruteforce(G.invariant_factors, a.elements())
    assert ann.order * a.order == G.order
    assert annihilator(ann) == a


@given(group_and_handles())
def test_quotient_order(data):
    G, (a, b) = data
    s = subgroup_sum(a, b)
    q = quotient(s, a)
    assert q.order * a.order == s.order
    assert quotient(G, a).order == G.order // a.order
    if not s.is_subgroup_of(a):
        with pytest.raises(StructuralError):
            quotient(a, s)
