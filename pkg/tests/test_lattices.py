import pytest

from weakapprox.catalog import named_group
from weakapprox.errors import InputError
from weakapprox.groups import all_subgroups, cyclic_group, group_from_generators
from weakapprox.lattices import (
    GLattice,
    augmentation_kernel,
    direct_sum,
    dual,
    lattice_from_action,
    norm_one_quotient,
    permutation_lattice,
    regular_lattice,
    restrict,
    tensor,
    trivial_lattice,
)
from weakapprox.linalg import IntegerMatrix, kernel_basis

TRIVIAL = group_from_generators(1, [])
C2 = cyclic_group(2)
V = named_group("V4")
S3 = named_group("S3")
SMALL = ["C2", "C3", "C4", "V4", "S3", "C6", "D4", "Q8", "C2^3"]


def test_lattice_from_action_examples():
    m = lattice_from_action(TRIVIAL, [], rank=2)
    assert m.action == (IntegerMatrix.identity(2),)
    assert lattice_from_action(C2, [[[0, 1], [1, 0]]]) == regular_lattice(C2)
    with pytest.raises(InputError):
        lattice_from_action(C2, [[[2]]])


def test_relation_violation_is_rejected():
    with pytest.raises(InputError):
        lattice_from_action(cyclic_group(3), [[[-1]]])
    with pytest.raises(InputError):
        lattice_from_action(V, [[[0, 1], [1, 0]], [[0, -1], [1, 0]]])


def test_permutation_examples():
    assert permutation_lattice(V, V.trivial()).rank == 4
    whole = permutation_lattice(V, V.whole())
    assert whole.rank == 1 and whole == trivial_lattice(V, 1)
    h = S3.cyclic(S3.generator_indices[0])
    assert h.order == 2 and permutation_lattice(S3, h).rank == 3


def test_augmentation_and_norm_one_examples():
    assert augmentation_kernel(TRIVIAL).rank == 0
    assert norm_one_quotient(TRIVIAL).rank == 0
    s = C2.generator_indices[0]
    assert augmentation_kernel(C2).action[s] == IntegerMatrix([[-1]])
    assert norm_one_quotient(C2).action[s] == IntegerMatrix([[-1]])
    assert augmentation_kernel(V).rank == 3 and norm_one_quotient(V).rank == 3


def test_restrict_examples():
    reg = regular_lattice(V)
    r = restrict(reg, V.trivial())
    assert r.rank == 4 and r.action == (IntegerMatrix.identity(4),)
    assert restrict(reg, V.whole()).action == reg.action
    h = V.cyclic(1)
    assert restrict(augmentation_kernel(V), h).group.order == 2


def test_direct_sum_and_dual_examples():
    assert direct_sum(trivial_lattice(V, 1), trivial_lattice(V, 1)) == trivial_lattice(V, 2)
    for h in all_subgroups(S3):
        p = permutation_lattice(S3, h)
        assert dual(p) == p
    with pytest.raises(InputError):
        direct_sum(trivial_lattice(V), trivial_lattice(S3))


@pytest.mark.parametrize("name", SMALL)
def test_constructed_lattices_are_valid(name):
    g = named_group(name)
    for h in all_subgroups(g):
        for m in (permutation_lattice(g, h), augmentation_kernel(g, h), norm_one_quotient(g, h)):
            m.check()
            d = dual(m)
            d.check()
            assert dual(d) == m
        p = permutation_lattice(g, h)
        for M in p.action:
            assert all(sorted(row) == [0] * (p.rank - 1) + [1] for row in M.rows)
            assert all(sorted(col) == [0] * (p.rank - 1) + [1] for col in M.columns())
    tensor(augmentation_kernel(g), norm_one_quotient(g)).check()


@pytest.mark.parametrize("name", SMALL)
def test_no_fixed_vectors(name):
    g = named_group(name)
    for m in (augmentation_kernel(g), norm_one_quotient(g)):
        rows = []
        for M in m.action:
            rows += [[M[i][j] - (i == j) for j in range(m.rank)] for i in range(m.rank)]
        assert kernel_basis(IntegerMatrix(rows, m.rank)).ncols == 0


@pytest.mark.parametrize("name", ["D4", "Q8", "C2^3", "A4"])
def test_restriction_chains(name):
    g = named_group(name)
    m = norm_one_quotient(g)
    for h in all_subgroups(g):
        for k in all_subgroups(g):
            if not k.is_subgroup_of(h):
                continue
            # k as a subgroup of the standalone group of h
            pos = {a: i for i, a in enumerate(h.elements)}
            k_in_h = h.as_group.generated([pos[a] for a in k.elements])
            twice = restrict(restrict(m, h), k_in_h)
            once = restrict(m, k)
            assert twice.action == once.action


def test_unchecked_corruption_is_detected():
    m = augmentation_kernel(V)
    action = list(m.action)
    action[1] = IntegerMatrix([[x + (i == j == 0) for j, x in enumerate(r)] for i, r in enumerate(action[1].rows)])
    bad = GLattice(V, action, 3, check=False)
    with pytest.raises(InputError):
        bad.check()
