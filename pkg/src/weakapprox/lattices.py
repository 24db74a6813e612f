"""Free abelian groups of finite rank with an action of a finite group."""

from __future__ import annotations

from typing import Sequence

from .errors import InputError
from .groups import FiniteGroup, Subgroup
from .linalg import IntegerMatrix, det


class GLattice:
    """``Z^rank`` with the element ``a`` of ``group`` acting by ``action[a]``.

    The action is a left action on column vectors: ``action[a*b] ==
    action[a] @ action[b]``.
    """

    def __init__(self, group: FiniteGroup, action: Sequence[IntegerMatrix], rank: int | None = None,
                 check: bool = True):
        self.group = group
        self.action = tuple(a if isinstance(a, IntegerMatrix) else IntegerMatrix(a) for a in action)
        if len(self.action) != group.order:
            raise InputError(f"expected {group.order} action matrices, got {len(self.action)}")
        self.rank = self.action[0].nrows if rank is None else rank
        if check:
            self.check()

    def check(self) -> None:
        """Verify identity, unimodularity and the homomorphism property on all pairs."""
        n, r = self.group.order, self.rank
        for a, M in enumerate(self.action):
            if M.shape != (r, r):
                raise InputError(f"action matrix of element {self.group.label(a)} is not {r}x{r}")
        if self.action[0] != IntegerMatrix.identity(r):
            raise InputError("the identity does not act trivially")
        for a, M in enumerate(self.action):
            if det(M) not in (1, -1):
                raise InputError(f"action matrix of element {self.group.label(a)} is not unimodular")
        T = self.group.table
        for a in range(n):
            for b in range(n):
                if self.action[a] @ self.action[b] != self.action[T[a][b]]:
                    raise InputError(
                        f"action is not a homomorphism at ({self.group.label(a)}, {self.group.label(b)})"
                    )

    def matrix(self, a: int) -> IntegerMatrix:
        return self.action[a]

    def act(self, a: int, v: Sequence[int]) -> tuple[int, ...]:
        return self.action[a] @ v

    def generator_matrices(self) -> list[IntegerMatrix]:
        return [self.action[s] for s in self.group.generator_indices]

    def __eq__(self, other) -> bool:
        if not isinstance(other, GLattice):
            return NotImplemented
        return self.group == other.group and self.rank == other.rank and self.action == other.action

    def __hash__(self) -> int:
        return hash((self.group, self.rank, self.action))

    def __repr__(self) -> str:
        return f"GLattice(rank={self.rank}, group_order={self.group.order})"


def lattice_from_action(g: FiniteGroup, matrices_on_generators: Sequence, rank: int | None = None) -> GLattice:
    """Extend matrices given on the generators of ``g`` to the whole group.

    Raises ``InputError`` when the matrices are not unimodular or do not
    satisfy the relations of ``g``.
    """
    mats = [m if isinstance(m, IntegerMatrix) else IntegerMatrix(m) for m in matrices_on_generators]
    if len(mats) != len(g.generator_indices):
        raise InputError(f"expected {len(g.generator_indices)} generator matrices, got {len(mats)}")
    if rank is None:
        if not mats:
            raise InputError("rank must be given when the group has no generators")
        rank = mats[0].nrows
    for k, M in enumerate(mats):
        if M.shape != (rank, rank):
            raise InputError(f"matrix for generator {g.generator_names[k]} is not {rank}x{rank}")
        if det(M) not in (1, -1):
            raise InputError(f"matrix for generator {g.generator_names[k]} is not unimodular")
    action: list[IntegerMatrix | None] = [None] * g.order
    action[0] = IntegerMatrix.identity(rank)
    for x in sorted(range(g.order), key=lambda x: len(g.words[x])):
        w = g.words[x]
        if w:
            action[x] = action[g.element_from_word(w[:-1])] @ mats[w[-1]]
    return GLattice(g, action, rank)


def trivial_lattice(g: FiniteGroup, rank: int = 1) -> GLattice:
    one = IntegerMatrix.identity(rank)
    return GLattice(g, [one] * g.order, rank, check=False)


def _coset_action(g: FiniteGroup, h: Subgroup) -> tuple[list[tuple[int, ...]], list[list[int]]]:
    """Left cosets of ``h`` and, for each element ``b``, the permutation ``c -> b c``."""
    cosets = h.left_cosets()
    where = {}
    for i, c in enumerate(cosets):
        for a in c:
            where[a] = i
    T = g.table
    perm = [[where[T[b][c[0]]] for c in cosets] for b in range(g.order)]
    return cosets, perm


def permutation_lattice(g: FiniteGroup, h: Subgroup) -> GLattice:
    """``Z[g/h]`` with basis the left cosets of ``h``."""
    cosets, perm = _coset_action(g, h)
    k = len(cosets)
    action = []
    for b in range(g.order):
        rows = [[0] * k for _ in range(k)]
        for j, i in enumerate(perm[b]):
            rows[i][j] = 1
        action.append(IntegerMatrix(rows, k))
    return GLattice(g, action, k, check=False)


def regular_lattice(g: FiniteGroup) -> GLattice:
    return permutation_lattice(g, g.trivial())


def augmentation_kernel(g: FiniteGroup, h: Subgroup | None = None) -> GLattice:
    """Kernel of ``Z[g/h] -> Z`` in the basis ``e_c - e_h`` for cosets ``c != h``.

    With ``h`` trivial this is the augmentation ideal; ``b`` sends
    ``e_c - e_h`` to ``(e_bc - e_h) - (e_bh - e_h)``.
    """
    h = h or g.trivial()
    cosets, perm = _coset_action(g, h)
    k = len(cosets) - 1
    action = []
    for b in range(g.order):
        rows = [[0] * k for _ in range(k)]
        for c in range(1, k + 1):
            bc, bh = perm[b][c], perm[b][0]
            if bc:
                rows[bc - 1][c - 1] += 1
            if bh:
                rows[bh - 1][c - 1] -= 1
        action.append(IntegerMatrix(rows, k))
    return GLattice(g, action, k, check=False)


def norm_one_quotient(g: FiniteGroup, h: Subgroup | None = None) -> GLattice:
    """``Z[g/h]`` modulo the sum of all cosets, in the basis of images of ``e_c``, ``c != h``.

    The image of ``e_h`` is minus the sum of the basis vectors.
    """
    h = h or g.trivial()
    cosets, perm = _coset_action(g, h)
    k = len(cosets) - 1
    action = []
    for b in range(g.order):
        rows = [[0] * k for _ in range(k)]
        for c in range(1, k + 1):
            bc = perm[b][c]
            if bc:
                rows[bc - 1][c - 1] = 1
            else:
                for i in range(k):
                    rows[i][c - 1] = -1
        action.append(IntegerMatrix(rows, k))
    return GLattice(g, action, k, check=False)


def restrict(m: GLattice, h: Subgroup) -> GLattice:
    """The lattice viewed as a module over ``h`` (as a standalone group)."""
    if h.parent != m.group:
        raise InputError("subgroup of a different group")
    return GLattice(h.as_group, [m.action[a] for a in h.elements], m.rank, check=False)


def direct_sum(a: GLattice, b: GLattice) -> GLattice:
    if a.group != b.group:
        raise InputError("direct sum of lattices over different groups")
    r, s = a.rank, b.rank
    action = []
    for A, B in zip(a.action, b.action):
        rows = [list(row) + [0] * s for row in A.rows] + [[0] * r + list(row) for row in B.rows]
        action.append(IntegerMatrix(rows, r + s))
    return GLattice(a.group, action, r + s, check=False)


def dual(m: GLattice) -> GLattice:
    """``Hom(M, Z)``: the element ``a`` acts by the transpose of ``action[a^-1]``."""
    g = m.group
    return GLattice(g, [m.action[g.inv(a)].transpose() for a in range(g.order)], m.rank, check=False)


def tensor(a: GLattice, b: GLattice) -> GLattice:
    """``A (x) B`` with diagonal action, basis ``e_i (x) f_j`` in lexicographic order."""
    if a.group != b.group:
        raise InputError("tensor product of lattices over different groups")
    r, s = a.rank, b.rank
    action = []
    for A, B in zip(a.action, b.action):
        rows = [[A[i][k] * B[j][l] for k in range(r) for l in range(s)]
                for i in range(r) for j in range(s)]
        action.append(IntegerMatrix(rows, r * s))
    return GLattice(a.group, action, r * s, check=False)


def change_basis(m: GLattice, P: IntegerMatrix, P_inv: IntegerMatrix) -> GLattice:
    """The isomorphic lattice with action ``P A P^-1``."""
    if P @ P_inv != IntegerMatrix.identity(m.rank):
        raise InputError("P_inv is not the inverse of P")
    return GLattice(m.group, [P @ A @ P_inv for A in m.action], m.rank, check=False)
