import pytest

from weakapprox.catalog import GROUPS, named_group
from weakapprox.errors import InputError, SizeError
from weakapprox.groups import (
    all_subgroups,
    cycles_to_perm,
    cyclic_group,
    cyclic_subgroups,
    cyclic_subgroups_up_to_conjugacy,
    group_from_generators,
    is_cyclic,
    is_metacyclic,
    prime_divisors,
    sylow_subgroup,
)

S3 = group_from_generators(3, [cycles_to_perm([[0, 1]], 3), cycles_to_perm([[0, 1, 2]], 3)])
V = group_from_generators(4, [cycles_to_perm([[0, 1]], 4), cycles_to_perm([[2, 3]], 4)])
TRIVIAL = group_from_generators(1, [])


def test_construction_examples():
    assert S3.order == 6
    assert V.order == 4 and V.exponent == 2
    assert TRIVIAL.order == 1


def test_identity_and_inverses():
    for name in GROUPS:
        g = named_group(name)
        assert all(g.mul(0, a) == a == g.mul(a, 0) for a in range(g.order))
        assert all(g.mul(a, g.inv(a)) == 0 for a in range(g.order))


def test_invalid_input():
    with pytest.raises(InputError):
        group_from_generators(3, [(0, 0, 1)])
    with pytest.raises(SizeError):
        group_from_generators(6, [(1, 2, 3, 4, 5, 0), (1, 0, 2, 3, 4, 5)], max_order=64)  # S6 has order 720
    with pytest.raises(InputError):
        from weakapprox.groups import FiniteGroup
        FiniteGroup([[0, 1], [1, 1]], [1])


def test_deterministic_ordering():
    a = group_from_generators(4, [(1, 2, 3, 0), (0, 3, 2, 1)])
    b = group_from_generators(4, [(1, 2, 3, 0), (0, 3, 2, 1)])
    assert a.table == b.table and a.labels == b.labels


def test_cyclic_classes_examples():
    assert [h.order for h in cyclic_subgroups_up_to_conjugacy(V)] == [1, 2, 2, 2]
    assert [h.order for h in cyclic_subgroups_up_to_conjugacy(S3)] == [1, 2, 3]
    assert len(cyclic_subgroups_up_to_conjugacy(TRIVIAL)) == 1


def test_sylow_examples():
    assert sylow_subgroup(S3, 2).order == 2
    assert sylow_subgroup(S3, 3).order == 3
    assert sylow_subgroup(V, 2) == V.whole()
    assert sylow_subgroup(V, 3) == V.trivial()
    with pytest.raises(InputError):
        sylow_subgroup(V, 4)


def test_metacyclic_examples():
    assert is_metacyclic(S3)
    assert not is_metacyclic(V)
    assert is_metacyclic(cyclic_group(6))
    assert is_metacyclic(named_group("F20")) and is_metacyclic(named_group("D5"))
    assert not is_metacyclic(named_group("Q8")) and not is_metacyclic(named_group("A4"))


def test_is_cyclic_examples():
    assert is_cyclic(V.trivial())
    assert is_cyclic(V.cyclic(1))
    assert not is_cyclic(V.whole())


def test_catalog_group_orders():
    expected = {"V4": 4, "C2xC4": 8, "C2^3": 8, "D4": 8, "Q8": 8, "S3": 6, "D5": 10, "A4": 12,
                "D6": 12, "C4xC4": 16, "C2^4": 16, "D8": 16, "F20": 20}
    for name, n in expected.items():
        assert named_group(name).order == n
    q8 = named_group("Q8")
    assert sum(1 for a in range(8) if q8.element_order(a) == 2) == 1


@pytest.mark.parametrize("name", sorted(GROUPS))
def test_sylow_and_metacyclic_roundtrip(name):
    g = named_group(name)
    for p in prime_divisors(g.order):
        P = sylow_subgroup(g, p)
        assert g.order % P.order == 0 and (g.order // P.order) % p != 0
        if is_metacyclic(g):
            assert P.is_cyclic()
    assert is_metacyclic(g) == all(sylow_subgroup(g, p).is_cyclic() for p in prime_divisors(g.order))


@pytest.mark.parametrize("name", [n for n in GROUPS if named_group(n).order <= 16])
def test_subgroup_enumerations(name):
    g = named_group(name)
    subs = all_subgroups(g)
    cyc = cyclic_subgroups(g)
    # brute-force cyclic subgroups among all subgroups
    assert {h.elements for h in subs if h.is_cyclic()} == {h.elements for h in cyc}
    classes = cyclic_subgroups_up_to_conjugacy(g)
    if g.is_abelian:
        assert [h.elements for h in classes] == [h.elements for h in cyc]
    # each cyclic subgroup is conjugate to exactly one representative
    for h in cyc:
        hits = [c for c in classes if any(h.conjugate(a) == c for a in range(g.order))]
        assert len(hits) == 1
    assert classes == sorted(classes, key=lambda h: (h.order, h.elements))


def test_parse_element_words():
    g = named_group("S3")
    s, r = g.generator_indices
    assert g.parse_element("s*r") == g.mul(s, r)
    assert g.parse_element("r^-1") == g.inv(r)
    assert g.parse_element("1") == 0
    with pytest.raises(InputError):
        g.parse_element("x")
    with pytest.raises(InputError):
        g.parse_element(6)


def test_subgroup_closure_is_checked():
    from weakapprox.groups import Subgroup
    with pytest.raises(InputError):
        Subgroup(S3, (0, 1, 2))
