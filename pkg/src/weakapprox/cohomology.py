"""Tate cohomology of finite groups with coefficients in lattices.

Cochain models (``n = |g|``, ``r = rank M``, element 0 is the identity):

* degrees -1 and 0: vectors of ``M``;
* degree 1: all maps ``g -> M``, coordinate ``a*r + k``;
* degree 2: normalized maps ``(g-1) x (g-1) -> M``, coordinate
  ``((a-1)*(n-1) + (b-1))*r + k``.

Every group here is presented as ``Z/B`` with ``Z`` a saturated lattice of
cocycles and ``B`` a full-rank sublattice of coboundaries. In degree 2 the
cocycles are obtained as the saturation of the coboundaries (the quotient is
finite, so the two lattices have the same rational span); the explicit
2-cocycle identity is available as ``method="cocycles"`` for small groups.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterator, Sequence

from .abelian import FiniteAbelianGroup, SubgroupHandle, cokernel, subgroup_intersection
from .errors import ConsistencyError, InputError
from .groups import FiniteGroup, Subgroup, cyclic_subgroups_up_to_conjugacy, prime_divisors, sylow_subgroup
from .lattices import GLattice, augmentation_kernel, restrict, tensor
from .linalg import IntegerMatrix, KernelLattice, RowEchelon, _row_hnf, kernel_lattice, snf

SUPPORTED_DEGREES = (-1, 0, 1, 2)

Vector = Sequence[int]


def _check_degree(i: int) -> None:
    if i not in SUPPORTED_DEGREES:
        raise InputError(
            f"degree {i} is not computed directly (supported: -1, 0, 1, 2); "
            "use shift_degree to move other degrees into range"
        )


# --- presentations of Z/B -----------------------------------------------------


class _KernelPresentation:
    """``Z/B`` with ``Z`` given as an explicit kernel lattice."""

    def __init__(self, Z: KernelLattice, boundaries: list[Vector]):
        self.dim = Z.dim
        self._Z = Z
        coords = [Z.coordinates(b) for b in boundaries]
        self._cok = cokernel(IntegerMatrix.from_columns(coords, Z.rank), Z.rank)
        if self._cok.group.free_rank:
            raise ConsistencyError("coboundaries have infinite index in the cocycles")
        self.group = FiniteAbelianGroup(self._cok.group.invariant_factors)

    def project(self, z: Vector) -> tuple[int, ...]:
        return self._cok.project(self._Z.coordinates(z))

    def lift(self, j: int) -> tuple[int, ...]:
        c = self._cok.lift(j)
        basis = self._Z.basis
        return tuple(sum(c[i] * basis[i][k] for i in range(len(c))) for k in range(self.dim))


class _SaturationPresentation:
    """``sat(B)/B`` for ``B`` the image of an integer matrix ``D``.

    ``rows`` yields the rows of ``D`` (length ``m``) and ``apply`` computes
    ``D x`` for a rational vector ``x``. Let ``D_P`` be a maximal set of
    independent rows and ``D_P W = [L | 0]`` a unimodular column reduction
    with ``L`` lower triangular. Then ``H = D W[:, :rho]`` is a basis of
    ``B`` with ``H_P = L``, and ``sat(B)/B`` is isomorphic to
    ``Z^rho / E' Z^rho`` through ``z = H t  ->  E' t``, where ``E' = E W[:, :rho]``
    and ``E`` is an echelon basis of the row lattice of ``D``.
    """

    def __init__(self, rows: Iterator[list[int]], m: int, dim: int,
                 apply: Callable[[Sequence], list]):
        self.dim = dim
        self._apply = apply
        E = RowEchelon(m)
        kept: list[list[int]] = []
        positions: list[int] = []
        for pos, row in enumerate(rows):
            if E.insert(row):
                kept.append(row)
                positions.append(pos)
        rho = E.rank
        self._rho, self._m = rho, m
        self._positions = positions
        DPt = [list(c) for c in zip(*kept)] if rho else [[] for _ in range(m)]
        tr, _ = _row_hnf(DPt, rho)
        self._W1_rows = [tr.U[i] for i in range(rho)]  # W[:, :rho] transposed
        self._L = [[tr.A[j][i] for j in range(rho)] for i in range(rho)]
        Eprime = [[sum(x * y for x, y in zip(erow, w)) for w in self._W1_rows] for erow in E.rows()]
        sd = snf(IntegerMatrix(Eprime, rho))
        diag = sd.diagonal
        self._slots = tuple(i for i, x in enumerate(diag) if x > 1)
        self.group = FiniteAbelianGroup(tuple(diag[i] for i in self._slots))
        self._UE = [list(r) for r in (sd.U @ IntegerMatrix(Eprime, rho)).rows] if rho else []
        self._lift_t = []
        for i in self._slots:
            u = sd.U_inv.column(i)
            # t = E'^-1 u = V S^-1 U u
            w = [Fraction(x, diag[k]) for k, x in enumerate(sd.U @ u)]
            self._lift_t.append([sum(sd.V[a][b] * w[b] for b in range(rho)) for a in range(rho)])

    def _x_from_t(self, t: Sequence) -> list:
        W1 = self._W1_rows
        return [sum(W1[a][k] * t[a] for a in range(self._rho)) for k in range(self._m)]

    def project(self, z: Vector) -> tuple[int, ...]:
        L = self._L
        t: list[Fraction] = []
        for i, p in enumerate(self._positions):
            s = z[p] - sum(L[i][j] * t[j] for j in range(i))
            t.append(Fraction(s, L[i][i]))
        # z must lie in the rational span of B
        if list(self._apply(self._x_from_t(t))) != list(z):
            raise InputError("vector is not a cocycle")
        out = []
        for slot, d in zip(self._slots, self.group.invariant_factors):
            y = sum(a * b for a, b in zip(self._UE[slot], t))
            if y.denominator != 1:
                raise ConsistencyError("projection is not integral")
            out.append(int(y) % d)
        return tuple(out)

    def lift(self, j: int) -> tuple[int, ...]:
        z = self._apply(self._x_from_t(self._lift_t[j]))
        if any(Fraction(v).denominator != 1 for v in z):
            raise ConsistencyError("lifted cocycle is not integral")
        return tuple(int(v) for v in z)


# --- cochain complexes --------------------------------------------------------


class _Complex:
    """Coboundary formulas for one (group, lattice) pair."""

    def __init__(self, g: FiniteGroup, m: GLattice):
        if m.group != g:
            raise InputError("lattice is defined over a different group")
        self.g, self.m = g, m
        self.n, self.r = g.order, m.rank
        self.A = [M.rows for M in m.action]

    def act(self, a: int, v: Sequence) -> list:
        return [sum(x * y for x, y in zip(row, v)) for row in self.A[a]]

    # degree -1 / 0 ingredients
    def norm(self) -> list[list[int]]:
        r = self.r
        return [[sum(self.A[a][i][j] for a in range(self.n)) for j in range(r)] for i in range(r)]

    def augmentation_images(self, elements: Sequence[int]) -> list[list[int]]:
        """Columns ``(a - 1) e_l`` for ``a`` in ``elements``."""
        r = self.r
        cols = []
        for a in elements:
            for l in range(r):
                cols.append([self.A[a][k][l] - (k == l) for k in range(r)])
        return cols

    # degree 1
    def d0(self, v: Sequence) -> list:
        """``a -> a v - v`` as a full 1-cochain."""
        out = []
        for a in range(self.n):
            av = self.act(a, v)
            out.extend(x - y for x, y in zip(av, v))
        return out

    def cocycle1_rows(self, pairs: str) -> Iterator[list[int]]:
        """Rows of ``c(ab) - c(a) - a c(b) = 0``.

        ``pairs="all"`` uses every pair; ``"generators"`` uses ``(a, s)`` for
        generators ``s`` plus ``(1, 1)``, which already forces the rest.
        """
        n, r, T = self.n, self.r, self.g.table
        if pairs == "all":
            todo = ((a, b) for a in range(n) for b in range(n))
        elif pairs == "generators":
            todo = [(0, 0)] + [(a, s) for a in range(n) for s in self.g.generator_indices]
        else:
            raise InputError(f"unknown pair system {pairs!r}")
        for a, b in todo:
            ab = T[a][b]
            Aa = self.A[a]
            for k in range(r):
                row = [0] * (n * r)
                row[ab * r + k] += 1
                row[a * r + k] -= 1
                for l in range(r):
                    row[b * r + l] -= Aa[k][l]
                yield row

    # degree 2 (normalized)
    def d1(self, c: Sequence) -> list:
        """Coboundary of a normalized 1-cochain (length ``(n-1) r``)."""
        n, r, T = self.n, self.r, self.g.table
        vals = [[0] * r] + [list(c[(a - 1) * r:a * r]) for a in range(1, n)]
        out = []
        for x in range(1, n):
            cx = vals[x]
            Ax = self.A[x]
            for y in range(1, n):
                cxy = vals[T[x][y]]
                xcy = [sum(u * v for u, v in zip(row, vals[y])) for row in Ax]
                out.extend(p - q + s for p, q, s in zip(xcy, cxy, cx))
        return out

    def d1_rows(self) -> Iterator[list[int]]:
        n, r, T = self.n, self.r, self.g.table
        m = (n - 1) * r
        for x in range(1, n):
            Ax = self.A[x]
            for y in range(1, n):
                xy = T[x][y]
                for k in range(r):
                    row = [0] * m
                    for l in range(r):
                        row[(y - 1) * r + l] += Ax[k][l]
                    if xy:
                        row[(xy - 1) * r + k] -= 1
                    row[(x - 1) * r + k] += 1
                    yield row

    def cocycle2_rows(self) -> Iterator[list[int]]:
        """Rows of ``a z(b,c) - z(ab,c) + z(a,bc) - z(a,b) = 0`` on normalized cochains."""
        n, r, T = self.n, self.r, self.g.table
        N = (n - 1) ** 2 * r

        def idx(a, b, k):
            return ((a - 1) * (n - 1) + (b - 1)) * r + k

        for a in range(1, n):
            Aa = self.A[a]
            for b in range(1, n):
                ab = T[a][b]
                for c in range(1, n):
                    bc = T[b][c]
                    for k in range(r):
                        row = [0] * N
                        for l in range(r):
                            row[idx(b, c, l)] += Aa[k][l]
                        if ab:
                            row[idx(ab, c, k)] -= 1
                        if bc:
                            row[idx(a, bc, k)] += 1
                        row[idx(a, b, k)] -= 1
                        yield row

    def is_2_cocycle(self, z: Sequence[int]) -> bool:
        n, r, T = self.n, self.r, self.g.table

        def val(a, b):
            if a == 0 or b == 0:
                return [0] * r
            i = ((a - 1) * (n - 1) + (b - 1)) * r
            return list(z[i:i + r])

        for a in range(1, n):
            for b in range(1, n):
                for c in range(1, n):
                    lhs = [p - q + s - t for p, q, s, t in zip(
                        self.act(a, val(b, c)), val(T[a][b], c), val(a, T[b][c]), val(a, b))]
                    if any(lhs):
                        return False
        return True

    def is_1_cocycle(self, z: Sequence[int]) -> bool:
        n, r, T = self.n, self.r, self.g.table
        c = [list(z[a * r:(a + 1) * r]) for a in range(n)]
        return all(
            c[T[a][b]] == [x + y for x, y in zip(c[a], self.act(a, c[b]))]
            for a in range(n) for b in range(n)
        )


def _present(g: FiniteGroup, m: GLattice, i: int, pairs: str, method: str):
    cx = _Complex(g, m)
    n, r = cx.n, cx.r
    if i == 0:
        gens = [cx.augmentation_images([s]) for s in g.generator_indices]
        rows = [[col[k] for col in cols] for cols in gens for k in range(r)]
        Z = kernel_lattice(rows, r)
        N = cx.norm()
        return _KernelPresentation(Z, [[N[k][l] for k in range(r)] for l in range(r)]), cx
    if i == -1:
        Z = kernel_lattice(cx.norm(), r)
        return _KernelPresentation(Z, cx.augmentation_images(range(n))), cx
    if i == 1:
        Z = kernel_lattice(cx.cocycle1_rows(pairs), n * r)
        B = [cx.d0([int(k == l) for k in range(r)]) for l in range(r)]
        return _KernelPresentation(Z, B), cx
    if method == "cocycles":
        Z = kernel_lattice(cx.cocycle2_rows(), (n - 1) ** 2 * r)
        m1 = (n - 1) * r
        B = [cx.d1([int(k == l) for k in range(m1)]) for l in range(m1)]
        return _KernelPresentation(Z, B), cx
    if method != "saturation":
        raise InputError(f"unknown degree-2 method {method!r}")
    return _SaturationPresentation(cx.d1_rows(), (n - 1) * r, (n - 1) ** 2 * r, cx.d1), cx


class CohomologyGroup:
    """``Ĥ^degree(group, module)`` with explicit cocycle representatives."""

    def __init__(self, degree: int, group: FiniteGroup, module: GLattice, presentation, complex_: _Complex):
        self.degree = degree
        self.group = group
        self.module = module
        self._p = presentation
        self._cx = complex_
        reps = tuple(presentation.lift(j) for j in range(presentation.group.ngens))
        self.value = FiniteAbelianGroup(presentation.group.invariant_factors, 0, reps)

    @property
    def representatives(self) -> tuple[tuple[int, ...], ...]:
        return self.value.generator_lift or ()

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return self.value.invariant_factors

    @property
    def cochain_dim(self) -> int:
        return self._p.dim

    def project(self, cocycle: Vector) -> tuple[int, ...]:
        """Class of a cocycle in invariant-factor coordinates."""
        return self._p.project(cocycle)

    def lift(self, x: Sequence[int]) -> tuple[int, ...]:
        """A cocycle representing the element ``x``."""
        reps = self.representatives
        return tuple(sum(c * rep[k] for c, rep in zip(x, reps)) for k in range(self.cochain_dim))

    def is_cocycle(self, z: Vector) -> bool:
        if self.degree == 1:
            return self._cx.is_1_cocycle(z)
        if self.degree == 2:
            return self._cx.is_2_cocycle(z)
        try:
            self.project(z)
        except (ValueError, ConsistencyError):
            return False
        return True

    def is_coboundary(self, z: Vector) -> bool:
        return not any(self.project(z))

    def __repr__(self) -> str:
        return f"CohomologyGroup(degree={self.degree}, value={self.value})"


@lru_cache(maxsize=1024)
def _tate_cached(g: FiniteGroup, m: GLattice, i: int, pairs: str, method: str) -> CohomologyGroup:
    p, cx = _present(g, m, i, pairs, method)
    return CohomologyGroup(i, g, m, p, cx)


def tate(g: FiniteGroup, m: GLattice, i: int, pairs: str = "all", method: str = "saturation") -> CohomologyGroup:
    """Tate cohomology ``Ĥ^i(g, m)`` for ``i`` in -1, 0, 1, 2.

    ``Ĥ^0 = M^g / N M``, ``Ĥ^-1 = ker N / I_g M``, ``H^1`` from crossed
    homomorphisms (``pairs`` picks the constraint system) and ``H^2`` from
    normalized 2-cochains.
    """
    _check_degree(i)
    if m.group != g:
        raise InputError("lattice is defined over a different group")
    return _tate_cached(g, m, i, pairs, method)


def cyclic_generator(c: FiniteGroup) -> int:
    """First element (in enumeration order) whose order is ``|c|``."""
    for a in range(c.order):
        if c.element_order(a) == c.order:
            return a
    raise InputError("group is not cyclic")


def tate_cyclic(c: FiniteGroup, m: GLattice, i: int, generator: int | None = None) -> CohomologyGroup:
    """Closed form for cyclic groups: ``ker(s-1)/im N`` in even degrees, ``ker N/im(s-1)`` in odd."""
    if m.group != c:
        raise InputError("lattice is defined over a different group")
    s = cyclic_generator(c) if generator is None else generator
    if c.element_order(s) != c.order:
        raise InputError("designated element does not generate the group")
    cx = _Complex(c, m)
    r = cx.r
    N = cx.norm()
    S1 = cx.augmentation_images([s])  # columns (s-1) e_l
    S1_rows = [[col[k] for col in S1] for k in range(r)]
    if i % 2 == 0:
        p = _KernelPresentation(kernel_lattice(S1_rows, r), [[N[k][l] for k in range(r)] for l in range(r)])
    else:
        p = _KernelPresentation(kernel_lattice(N, r), S1)
    return CohomologyGroup(i, c, m, p, cx)


# --- restriction --------------------------------------------------------------


@dataclass(frozen=True)
class CohomologyMap:
    """A homomorphism between cohomology groups in invariant-factor coordinates.

    Column ``j`` of ``matrix`` is the image of the j-th generator of the source.
    """

    source: CohomologyGroup
    target: CohomologyGroup
    matrix: IntegerMatrix

    def __post_init__(self):
        e = self.target.invariant_factors
        for j, d in enumerate(self.source.invariant_factors):
            col = self.matrix.column(j)
            if any((d * x) % ei for x, ei in zip(col, e)):
                raise ConsistencyError("map does not respect the invariant factors")

    def __call__(self, x: Sequence[int]) -> tuple[int, ...]:
        return self.target.value.reduce(self.matrix @ x)

    def kernel(self) -> SubgroupHandle:
        src = self.source.value
        ks, e = src.ngens, self.target.invariant_factors
        kt = len(e)
        rows = [list(self.matrix[i]) + [e[i] if jj == i else 0 for jj in range(kt)] for i in range(kt)]
        K = kernel_lattice(rows, ks + kt)
        if not kt:
            return src.whole()
        return SubgroupHandle(src, [v[:ks] for v in K.basis])

    def is_injective(self) -> bool:
        return self.kernel().is_trivial()


def restrict_cochain(g: FiniteGroup, h: Subgroup, m: GLattice, i: int, z: Vector) -> list[int]:
    """Restriction of a degree-i cochain on ``g`` to the standalone group of ``h``.

    In degree -1 this is the transfer ``m -> sum over right cosets h s of s m``.
    """
    r = m.rank
    if i == 0:
        return list(z)
    if i == -1:
        out = [0] * r
        for s in h.right_coset_representatives():
            out = [x + y for x, y in zip(out, m.act(s, z))]
        return out
    if i == 1:
        return [z[a * r + k] for a in h.elements for k in range(r)]
    n = g.order
    out = []
    for a in h.elements[1:]:
        for b in h.elements[1:]:
            base = ((a - 1) * (n - 1) + (b - 1)) * r
            out.extend(z[base:base + r])
    return out


def restriction(source_group: FiniteGroup, h: Subgroup, m: GLattice, i: int, **kw) -> CohomologyMap:
    """``Res: Ĥ^i(g, M) -> Ĥ^i(h, M|h)``."""
    _check_degree(i)
    if h.parent != source_group:
        raise InputError("subgroup of a different group")
    src = tate(source_group, m, i, **kw)
    mh = restrict(m, h)
    tgt = tate(h.as_group, mh, i, **kw)
    cols = [tgt.project(restrict_cochain(source_group, h, m, i, z)) for z in src.representatives]
    return CohomologyMap(src, tgt, IntegerMatrix.from_columns(cols, tgt.value.ngens))


def joint_kernel(g: FiniteGroup, m: GLattice, i: int, subgroups: Sequence[Subgroup], **kw) -> SubgroupHandle:
    """Intersection of the kernels of restriction to each subgroup, in subgroup order."""
    K = tate(g, m, i, **kw).value.whole()
    for h in subgroups:
        K = subgroup_intersection(K, restriction(g, h, m, i, **kw).kernel())
        if K.is_trivial():
            break
    return K


def sha_omega(g: FiniteGroup, m: GLattice, i: int, **kw) -> tuple[FiniteAbelianGroup, SubgroupHandle]:
    """Classes of ``Ĥ^i(g, M)`` that restrict to zero on every cyclic subgroup."""
    _check_degree(i)
    K = joint_kernel(g, m, i, cyclic_subgroups_up_to_conjugacy(g), **kw)
    return K.structure, K


def sylow_kernel(g: FiniteGroup, m: GLattice, i: int, **kw) -> SubgroupHandle:
    """Joint kernel of restrictions to one Sylow subgroup per prime divisor of ``|g|``."""
    return joint_kernel(g, m, i, [sylow_subgroup(g, p) for p in prime_divisors(g.order)], **kw)


def shift_degree(m: GLattice) -> GLattice:
    """``I_g (x) M``, so that ``Ĥ^i(g, M) ≅ Ĥ^(i+1)(g, I_g (x) M)``."""
    return tensor(augmentation_kernel(m.group), m)
