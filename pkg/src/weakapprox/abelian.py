"""Finite abelian groups in invariant-factor form and their subgroups.

A group ``Z/d1 + ... + Z/dk`` (``d1 | ... | dk``, each ``>= 2``) has elements
``(x1, ..., xk)`` with ``xi`` reduced mod ``di``. Its dual is represented by
the same invariant factors with the pairing ``<x, y> = sum xi*yi/di mod 1``.

A subgroup is stored through its preimage lattice in ``Z^k``, which always
contains ``d1*e1, ..., dk*ek``; sums, intersections and quotients then reduce
to lattice computations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm, prod
from typing import Iterable, Sequence

from .errors import StructuralError
from .linalg import IntegerMatrix, hnf, kernel_lattice, snf


@dataclass(frozen=True)
class FiniteAbelianGroup:
    invariant_factors: tuple[int, ...] = ()
    free_rank: int = 0
    # optional map from abstract generators to vectors in some ambient Z^N
    generator_lift: tuple[tuple[int, ...], ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        d = tuple(int(x) for x in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", d)
        for x in d:
            if x < 2:
                raise ValueError(f"invariant factor {x} < 2")
        for a, b in zip(d, d[1:]):
            if b % a:
                raise ValueError(f"invariant factors {d} do not form a divisibility chain")
        if self.free_rank < 0:
            raise ValueError("negative free rank")

    @classmethod
    def from_orders(cls, orders: Iterable[int]) -> FiniteAbelianGroup:
        """Normalize an arbitrary direct sum of cyclic groups ``Z/n``."""
        orders = list(orders)
        n = len(orders)
        sd = snf(IntegerMatrix(([orders[i] if i == j else 0 for j in range(n)] for i in range(n)), n))
        return cls(sd.invariant_factors, sd.free_rank)

    @property
    def ngens(self) -> int:
        return len(self.invariant_factors)

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> int:
        if self.free_rank:
            raise ValueError("order of an infinite group")
        return prod(self.invariant_factors)

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def is_trivial(self) -> bool:
        return not self.invariant_factors and not self.free_rank

    def reduce(self, x: Sequence[int]) -> tuple[int, ...]:
        if len(x) != self.ngens:
            raise StructuralError(f"element of length {len(x)} in a group with {self.ngens} generators")
        return tuple(a % d for a, d in zip(x, self.invariant_factors))

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.ngens

    def add(self, x, y) -> tuple[int, ...]:
        return self.reduce([a + b for a, b in zip(x, y)])

    def scale(self, k: int, x) -> tuple[int, ...]:
        return self.reduce([k * a for a in x])

    def element_order(self, x) -> int:
        return lcm(*[d // gcd(a, d) for a, d in zip(self.reduce(x), self.invariant_factors)], 1)

    def elements(self):
        """All elements, in lexicographic order."""
        if self.free_rank:
            raise ValueError("cannot enumerate an infinite group")
        return itertools.product(*[range(d) for d in self.invariant_factors])

    def dual(self) -> FiniteAbelianGroup:
        return FiniteAbelianGroup(self.invariant_factors, self.free_rank)

    def pairing(self, x, y) -> Fraction:
        """Value in Q/Z (as a fraction in [0, 1)) of the diagonal pairing."""
        v = sum(Fraction(a * b, d) for a, b, d in zip(x, y, self.invariant_factors))
        return v - (v.numerator // v.denominator)

    def whole(self) -> SubgroupHandle:
        return SubgroupHandle(self, tuple(tuple(int(i == j) for j in range(self.ngens))
                                          for i in range(self.ngens)))

    def trivial_subgroup(self) -> SubgroupHandle:
        return SubgroupHandle(self, ())

    def subgroup(self, generators: Iterable[Sequence[int]]) -> SubgroupHandle:
        return SubgroupHandle(self, tuple(tuple(g) for g in generators))

    def __str__(self) -> str:
        parts = [f"Z/{d}" for d in self.invariant_factors] + ["Z"] * self.free_rank
        return " ⊕ ".join(parts) if parts else "0"


def _triangular_solve(H: tuple[tuple[int, ...], ...], x: Sequence[int]) -> list[int] | None:
    """Solve ``H c = x`` for lower-triangular nonsingular ``H``; ``None`` if not integral."""
    c: list[int] = []
    for j, row in enumerate(H):
        r = x[j] - sum(row[l] * c[l] for l in range(j))
        q, rem = divmod(r, row[j])
        if rem:
            return None
        c.append(q)
    return c


class SubgroupHandle:
    """The subgroup of ``ambient`` generated by ``generators``."""

    def __init__(self, ambient: FiniteAbelianGroup, generators: Iterable[Sequence[int]] = ()):
        if not ambient.is_finite:
            raise StructuralError("subgroups are only supported in finite groups")
        self.ambient = ambient
        self.generators = tuple(ambient.reduce(g) for g in generators)

    @cached_property
    def lattice(self) -> tuple[tuple[int, ...], ...]:
        """Square lower-triangular HNF basis of the preimage lattice in ``Z^k``."""
        k = self.ambient.ngens
        d = self.ambient.invariant_factors
        cols = [list(g) for g in self.generators]
        cols += [[d[i] if j == i else 0 for j in range(k)] for i in range(k)]
        H = hnf(IntegerMatrix.from_columns(cols, k))
        return tuple(tuple(r[:k]) for r in H.rows)

    @property
    def order(self) -> int:
        index = prod(self.lattice[i][i] for i in range(self.ambient.ngens))
        return self.ambient.order // index

    def is_trivial(self) -> bool:
        return self.order == 1

    def contains(self, x: Sequence[int]) -> bool:
        return _triangular_solve(self.lattice, list(self.ambient.reduce(x))) is not None

    def is_subgroup_of(self, other: SubgroupHandle) -> bool:
        _check_same(self, other)
        return all(other.contains(g) for g in self.generators)

    @cached_property
    def structure(self) -> FiniteAbelianGroup:
        """The subgroup as an abstract group (invariant factors)."""
        k = self.ambient.ngens
        d = self.ambient.invariant_factors
        # express d_i e_i in the lattice basis
        cols = [_triangular_solve(self.lattice, [d[i] if j == i else 0 for j in range(k)])
                for i in range(k)]
        if not cols:
            return FiniteAbelianGroup()
        sd = snf(IntegerMatrix.from_columns(cols, k))
        return FiniteAbelianGroup(sd.invariant_factors)

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return self.structure.invariant_factors

    def basis(self) -> list[tuple[int, ...]]:
        """Canonical generating set: reduced columns of the lattice HNF."""
        k = self.ambient.ngens
        gens = [self.ambient.reduce([self.lattice[i][j] for i in range(k)]) for j in range(k)]
        return [g for g in gens if any(g)]

    def elements(self) -> set[tuple[int, ...]]:
        return {x for x in self.ambient.elements() if self.contains(x)}

    def __eq__(self, other) -> bool:
        if not isinstance(other, SubgroupHandle):
            return NotImplemented
        return self.ambient == other.ambient and self.lattice == other.lattice

    def __hash__(self) -> int:
        return hash((self.ambient, self.lattice))

    def __repr__(self) -> str:
        return f"SubgroupHandle({self.ambient}, generators={list(self.basis())})"


def _check_same(a: SubgroupHandle, b: SubgroupHandle) -> None:
    if a.ambient != b.ambient:
        raise StructuralError(f"subgroups of different groups: {a.ambient} vs {b.ambient}")


def subgroup_sum(a: SubgroupHandle, b: SubgroupHandle) -> SubgroupHandle:
    _check_same(a, b)
    return SubgroupHandle(a.ambient, a.generators + b.generators)


def subgroup_intersection(a: SubgroupHandle, b: SubgroupHandle) -> SubgroupHandle:
    _check_same(a, b)
    k = a.ambient.ngens
    if k == 0:
        return a.ambient.trivial_subgroup()
    Ha, Hb = a.lattice, b.lattice
    # H_a x - H_b y = 0
    rows = [list(Ha[i]) + [-v for v in Hb[i]] for i in range(k)]
    K = kernel_lattice(rows, 2 * k)
    gens = []
    for vec in K.basis:
        x = vec[:k]
        gens.append([sum(Ha[i][j] * x[j] for j in range(k)) for i in range(k)])
    return SubgroupHandle(a.ambient, gens)


def quotient(ambient, sub: SubgroupHandle) -> FiniteAbelianGroup:
    """``ambient / sub`` where ``ambient`` is a group or a subgroup handle containing ``sub``."""
    if isinstance(ambient, FiniteAbelianGroup):
        ambient = ambient.whole()
    _check_same(ambient, sub)
    if not sub.is_subgroup_of(ambient):
        raise StructuralError("quotient by a subgroup that is not contained in the ambient")
    k = ambient.ambient.ngens
    if k == 0:
        return FiniteAbelianGroup()
    cols = [_triangular_solve(ambient.lattice, [sub.lattice[i][j] for i in range(k)])
            for j in range(k)]
    sd = snf(IntegerMatrix.from_columns(cols, k))
    return FiniteAbelianGroup(sd.invariant_factors, sd.free_rank)


def annihilator(sub: SubgroupHandle) -> SubgroupHandle:
    """Annihilator in the dual group under the diagonal pairing."""
    G = sub.ambient
    d = G.invariant_factors
    k = len(d)
    gens = sub.basis()
    dual = G.dual()
    if not gens:
        return dual.whole()
    e = G.exponent
    m = len(gens)
    # sum_i g_ji * y_i * (e/d_i) + e * z_j = 0
    rows = [[g[i] * (e // d[i]) for i in range(k)] + [e if jj == j else 0 for jj in range(m)]
            for j, g in enumerate(gens)]
    K = kernel_lattice(rows, k + m)
    return SubgroupHandle(dual, [v[:k] for v in K.basis])


@dataclass(frozen=True)
class Cokernel:
    """``Z^n / column-span(A)`` with a projection and generator lifts."""

    group: FiniteAbelianGroup
    _U: IntegerMatrix
    _U_inv: IntegerMatrix
    _torsion_slots: tuple[int, ...]
    _free_slots: tuple[int, ...]

    def project(self, v: Sequence[int]) -> tuple[int, ...]:
        y = self._U @ v
        tors = tuple(y[i] % d for i, d in zip(self._torsion_slots, self.group.invariant_factors))
        return tors + tuple(y[i] for i in self._free_slots)

    def lift(self, j: int) -> tuple[int, ...]:
        """A vector of ``Z^n`` mapping to the j-th abstract generator."""
        slot = (self._torsion_slots + self._free_slots)[j]
        return self._U_inv.column(slot)

    def lifts(self) -> list[tuple[int, ...]]:
        return [self.lift(j) for j in range(len(self._torsion_slots) + len(self._free_slots))]


def cokernel(A, ambient_rank: int) -> Cokernel:
    """Present ``Z^ambient_rank`` modulo the column span of ``A``."""
    if not isinstance(A, IntegerMatrix):
        A = IntegerMatrix(A) if len(A) else IntegerMatrix.zeros(ambient_rank, 0)
    if A.nrows != ambient_rank:
        raise StructuralError(f"matrix has {A.nrows} rows, ambient rank is {ambient_rank}")
    sd = snf(A)
    diag = sd.diagonal
    tors = tuple(i for i, x in enumerate(diag) if x > 1)
    free = tuple(i for i, x in enumerate(diag) if x == 0)
    group = FiniteAbelianGroup(tuple(diag[i] for i in tors), len(free))
    cok = Cokernel(group, sd.U, sd.U_inv, tors, free)
    object.__setattr__(cok, "group", FiniteAbelianGroup(
        group.invariant_factors, group.free_rank, tuple(cok.lifts())))
    return cok
