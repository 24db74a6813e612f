"""Exact integer matrices: Hermite and Smith normal forms, kernels.

Everything here works over Python ints; no floating point is involved.
Matrices are immutable ``IntegerMatrix`` values; the heavy routines convert
to lists of lists internally and never mutate their inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b) >= 0``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


@dataclass(frozen=True)
class IntegerMatrix:
    """A dense matrix of exact integers; 0 rows or 0 columns are allowed."""

    rows: tuple[tuple[int, ...], ...]
    ncols: int

    def __init__(self, rows: Iterable[Iterable[int]], ncols: int | None = None):
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise ValueError(f"row of length {len(r)} in a matrix with {ncols} columns")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "ncols", ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), self.ncols

    @classmethod
    def identity(cls, n: int) -> IntegerMatrix:
        return cls(([int(i == j) for j in range(n)] for i in range(n)), n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> IntegerMatrix:
        return cls(([0] * ncols for _ in range(nrows)), ncols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], nrows: int) -> IntegerMatrix:
        for c in columns:
            if len(c) != nrows:
                raise ValueError("column length does not match nrows")
        return cls(([c[i] for c in columns] for i in range(nrows)), len(columns))

    def __getitem__(self, i: int) -> tuple[int, ...]:
        return self.rows[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> IntegerMatrix:
        return IntegerMatrix(self.columns(), self.nrows)

    @property
    def T(self) -> IntegerMatrix:
        return self.transpose()

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def __matmul__(self, other):
        if isinstance(other, IntegerMatrix):
            if self.ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            cols = other.columns()
            return IntegerMatrix(
                ([sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.rows),
                other.ncols,
            )
        vec = tuple(other)
        if len(vec) != self.ncols:
            raise ValueError("vector length does not match ncols")
        return tuple(sum(a * b for a, b in zip(r, vec)) for r in self.rows)

    def __add__(self, other: IntegerMatrix) -> IntegerMatrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntegerMatrix(
            ([a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)), self.ncols
        )

    def __sub__(self, other: IntegerMatrix) -> IntegerMatrix:
        return self + other.scale(-1)

    def scale(self, k: int) -> IntegerMatrix:
        return IntegerMatrix(([k * a for a in r] for r in self.rows), self.ncols)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def det(self) -> int:
        return det(self)

    def __repr__(self) -> str:
        return f"IntegerMatrix({[list(r) for r in self.rows]!r}, ncols={self.ncols})"


def as_matrix(A) -> IntegerMatrix:
    if isinstance(A, IntegerMatrix):
        return A
    return IntegerMatrix(A)


def det(A) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    A = as_matrix(A)
    n = A.nrows
    if n != A.ncols:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    M = A.tolist()
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * pk - M[i][k] * M[k][j]) // prev
        prev = pk
    return sign * M[n - 1][n - 1]


# --- dense elimination with transforms -------------------------------------


class _Tracked:
    """Row operations on a list-of-lists matrix, mirrored on U and U^-1.

    Invariant: ``U @ A_original == A`` and ``U @ Uinv == I``.
    """

    def __init__(self, A: list[list[int]], track: bool = True):
        self.A = A
        m = len(A)
        self.track = track
        if track:
            self.U = [[int(i == j) for j in range(m)] for i in range(m)]
            self.Uinv = [[int(i == j) for j in range(m)] for i in range(m)]

    def addmul(self, i: int, r: int, q: int) -> None:
        """row_i -= q * row_r"""
        A = self.A
        ri, rr = A[i], A[r]
        A[i] = [x - q * y for x, y in zip(ri, rr)]
        if self.track:
            U = self.U
            U[i] = [x - q * y for x, y in zip(U[i], U[r])]
            for row in self.Uinv:
                row[r] += q * row[i]

    def swap(self, i: int, r: int) -> None:
        if i == r:
            return
        A = self.A
        A[i], A[r] = A[r], A[i]
        if self.track:
            self.U[i], self.U[r] = self.U[r], self.U[i]
            for row in self.Uinv:
                row[i], row[r] = row[r], row[i]

    def negate(self, i: int) -> None:
        self.A[i] = [-x for x in self.A[i]]
        if self.track:
            self.U[i] = [-x for x in self.U[i]]
            for row in self.Uinv:
                row[i] = -row[i]


def _row_hnf(A: list[list[int]], ncols: int, track: bool = True) -> tuple[_Tracked, list[int]]:
    """Row-style Hermite form in place; returns the tracker and pivot columns."""
    T = _Tracked(A, track)
    m = len(A)
    r = 0
    pivots: list[int] = []
    for j in range(ncols):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if T.A[i][j]]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(T.A[i][j]))
            T.swap(r, i0)
            p = T.A[r][j]
            clean = True
            for i in range(r + 1, m):
                a = T.A[i][j]
                if a:
                    q = a // p
                    if q:
                        T.addmul(i, r, q)
                    if T.A[i][j]:
                        clean = False
            if clean:
                break
        if not T.A[r][j]:
            continue
        if T.A[r][j] < 0:
            T.negate(r)
        p = T.A[r][j]
        for i in range(r):
            q = T.A[i][j] // p
            if q:
                T.addmul(i, r, q)
        pivots.append(j)
        r += 1
    return T, pivots


def row_hnf(A) -> IntegerMatrix:
    """Row-style Hermite normal form (same shape, zero rows last)."""
    A = as_matrix(A)
    T, _ = _row_hnf(A.tolist(), A.ncols, track=False)
    return IntegerMatrix(T.A, A.ncols)


def hnf(A) -> IntegerMatrix:
    """Column-style Hermite normal form.

    The result has the same shape as ``A`` and the same integer column span.
    Pivot entries are positive, entries to the left of a pivot in its row lie
    in ``[0, pivot)``, entries above a pivot vanish, zero columns come last.
    """
    A = as_matrix(A)
    return row_hnf(A.transpose()).transpose()


def hnf_with_transform(A) -> tuple[IntegerMatrix, IntegerMatrix]:
    """Return ``(H, V)`` with ``H == A @ V`` column HNF and ``V`` unimodular."""
    A = as_matrix(A)
    T, _ = _row_hnf(A.transpose().tolist(), A.nrows)
    H = IntegerMatrix(T.A, A.nrows).transpose()
    V = IntegerMatrix(T.U, A.ncols).transpose()
    return H, V


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ A @ V == S`` with ``S`` diagonal and ``d1 | d2 | ...``."""

    S: IntegerMatrix
    U: IntegerMatrix
    V: IntegerMatrix
    U_inv: IntegerMatrix
    V_inv: IntegerMatrix
    diagonal: tuple[int, ...]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        """Diagonal entries greater than one."""
        return tuple(d for d in self.diagonal if d > 1)

    @property
    def free_rank(self) -> int:
        """Number of zero diagonal slots, i.e. the free rank of the cokernel."""
        return self.S.nrows - self.rank


def snf(A) -> SmithDecomposition:
    A = as_matrix(A)
    m, n = A.shape
    rows = _Tracked(A.tolist())
    # column operations are recorded as row operations on a dummy n-row matrix
    cols = _Tracked([[0] for _ in range(n)])
    S = rows.A

    def col_addmul(j, k, q):  # col_j -= q * col_k
        for r in S:
            r[j] -= q * r[k]
        cols.addmul(j, k, q)

    def col_swap(j, k):
        if j == k:
            return
        for r in S:
            r[j], r[k] = r[k], r[j]
        cols.swap(j, k)

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            Si = S[i]
            for j in range(t, n):
                a = Si[j]
                if a and (best is None or abs(a) < best[0]):
                    best = (abs(a), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i0, j0 = best
        rows.swap(t, i0)
        col_swap(t, j0)
        while True:
            p = S[t][t]
            for i in range(t + 1, m):
                if S[i][t]:
                    q = S[i][t] // p
                    if q:
                        rows.addmul(i, t, q)
            for j in range(t + 1, n):
                if S[t][j]:
                    q = S[t][j] // p
                    if q:
                        col_addmul(j, t, q)
            rest = [(abs(S[i][t]), i, t) for i in range(t + 1, m) if S[i][t]]
            rest += [(abs(S[t][j]), t, j) for j in range(t + 1, n) if S[t][j]]
            if rest:
                _, i1, j1 = min(rest)
                rows.swap(t, i1)
                col_swap(t, j1)
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if S[i][j] % p),
                None,
            )
            if bad is None:
                break
            rows.addmul(t, bad, -1)
        if S[t][t] < 0:
            rows.negate(t)
        t += 1
    diag = tuple(S[i][i] if i < n else 0 for i in range(m))
    return SmithDecomposition(
        S=IntegerMatrix(S, n),
        U=IntegerMatrix(rows.U, m),
        V=IntegerMatrix(cols.U, n).transpose(),
        U_inv=IntegerMatrix(rows.Uinv, m),
        V_inv=IntegerMatrix(cols.Uinv, n).transpose(),
        diagonal=diag,
    )


# --- incremental echelon for tall systems ------------------------------------


class RowEchelon:
    """Integer row echelon basis grown one row at a time.

    Suited to tall, sparse constraint systems: memory stays at one row per
    pivot no matter how many rows are inserted. ``independent`` records the
    positions (in insertion order) of rows that raised the rank; those rows
    are linearly independent over the rationals.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self._pivot_rows: dict[int, list[int]] = {}
        self.independent: list[int] = []
        self._count = 0

    @property
    def rank(self) -> int:
        return len(self._pivot_rows)

    def insert(self, row: Sequence[int]) -> bool:
        position = self._count
        self._count += 1
        v = list(row)
        n = self.ncols
        pivots = self._pivot_rows
        j = 0
        while True:
            while j < n and not v[j]:
                j += 1
            if j == n:
                return False
            p = pivots.get(j)
            if p is None:
                if v[j] < 0:
                    v = [-x for x in v]
                pivots[j] = v
                self.independent.append(position)
                return True
            a, b = p[j], v[j]
            if b % a == 0:
                q = b // a
                for k in range(j, n):
                    if p[k]:
                        v[k] -= q * p[k]
            else:
                g, s, t = xgcd(a, b)
                ag, bg = a // g, b // g
                new = [s * x + t * y for x, y in zip(p, v)]
                v = [ag * y - bg * x for x, y in zip(p, v)]
                if new[j] < 0:
                    new = [-x for x in new]
                pivots[j] = new
            j += 1

    def rows(self) -> list[list[int]]:
        """Echelon rows ordered by pivot column."""
        return [self._pivot_rows[j] for j in sorted(self._pivot_rows)]

    def pivot_columns(self) -> list[int]:
        return sorted(self._pivot_rows)


def echelon(rows: Iterable[Sequence[int]], ncols: int) -> RowEchelon:
    E = RowEchelon(ncols)
    for r in rows:
        E.insert(r)
    return E


class KernelLattice:
    """A Z-basis of ``{x : A x = 0}`` together with exact coordinates."""

    def __init__(self, basis: list[list[int]], coord_rows: list[list[int]], dim: int):
        self.basis = basis
        self._coord_rows = coord_rows
        self.dim = dim

    @property
    def rank(self) -> int:
        return len(self.basis)

    def matrix(self) -> IntegerMatrix:
        return IntegerMatrix.from_columns(self.basis, self.dim)

    def coordinates(self, z: Sequence[int]) -> tuple[int, ...]:
        """Coordinates of a kernel vector in ``basis``; raises if not in the kernel."""
        c = tuple(sum(a * b for a, b in zip(row, z)) for row in self._coord_rows)
        back = [sum(c[i] * self.basis[i][k] for i in range(len(c))) for k in range(self.dim)]
        if back != list(z):
            raise ValueError("vector does not lie in the kernel lattice")
        return c

    def contains(self, z: Sequence[int]) -> bool:
        try:
            self.coordinates(z)
        except ValueError:
            return False
        return True


def kernel_lattice(rows: Iterable[Sequence[int]], ncols: int) -> KernelLattice:
    """Kernel of the matrix whose rows are ``rows`` (which may be a generator)."""
    E = echelon(rows, ncols)
    Et = [list(col) for col in zip(*E.rows())] if E.rank else [[] for _ in range(ncols)]
    T, _ = _row_hnf(Et, E.rank)
    rho = E.rank
    basis = [T.U[i] for i in range(rho, ncols)]
    # z = sum_i c_i * U[rho+i]  =>  c_i = (z^T Uinv)[rho+i]
    coord_rows = [[T.Uinv[k][i] for k in range(ncols)] for i in range(rho, ncols)]
    return KernelLattice(basis, coord_rows, ncols)


def kernel_basis(A) -> IntegerMatrix:
    """Columns form a Z-basis of the integer kernel of ``A``."""
    A = as_matrix(A)
    basis = kernel_lattice(A.rows, A.ncols).basis
    # sign convention: first nonzero entry of each basis vector is positive
    cols = [v if next(x for x in v if x) > 0 else [-x for x in v] for v in basis]
    return IntegerMatrix.from_columns(cols, A.ncols)
