"""Finite groups as explicit Cayley tables.

Element 0 is always the identity. Groups built from permutations enumerate
their elements breadth-first over generator words (generators tried in the
order given), so every element carries a shortest word and the ordering is
reproducible.

Multiplication of permutations is composition ``(a*b)(i) = a(b(i))``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from sympy import isprime, primefactors

from .errors import InputError, SizeError

DEFAULT_MAX_ORDER = 64

Permutation = tuple[int, ...]


def _default_names(k: int) -> tuple[str, ...]:
    letters = "abcdefghijklmnopqrstuvwxyz"
    return tuple(letters[i] if i < len(letters) else f"g{i}" for i in range(k))


def _words_by_bfs(table, generators: Sequence[int]) -> list[tuple[int, ...] | None]:
    n = len(table)
    words: list[tuple[int, ...] | None] = [None] * n
    words[0] = ()
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for k, s in enumerate(generators):
            y = table[x][s]
            if words[y] is None:
                words[y] = words[x] + (k,)
                queue.append(y)
    return words


class FiniteGroup:
    """A finite group given by its multiplication table.

    ``table[i][j]`` is the index of the product of elements ``i`` and ``j``.
    The group law is verified on construction (associativity is checked on
    all triples, which is affordable at the supported orders).
    """

    def __init__(
        self,
        table: Sequence[Sequence[int]],
        generator_indices: Sequence[int],
        generator_names: Sequence[str] | None = None,
        perms: Sequence[Permutation] | None = None,
        degree: int | None = None,
        max_order: int = DEFAULT_MAX_ORDER,
        check: bool = True,
    ):
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        n = len(self.table)
        if n == 0:
            raise InputError("a group has at least one element")
        if n > max_order:
            raise SizeError(f"group of order {n} exceeds the bound {max_order}")
        self.order = n
        self.generator_indices = tuple(int(s) for s in generator_indices)
        names = generator_names or _default_names(len(self.generator_indices))
        if len(names) != len(self.generator_indices):
            raise InputError("one name per generator is required")
        self.generator_names = tuple(names)
        self.perms = tuple(tuple(p) for p in perms) if perms is not None else None
        self.degree = degree
        if check:
            self._check_group_law()
        words = _words_by_bfs(self.table, self.generator_indices)
        if any(w is None for w in words):
            raise InputError("the generators do not generate the whole table")
        self.words: tuple[tuple[int, ...], ...] = tuple(words)  # type: ignore[arg-type]

    def _check_group_law(self) -> None:
        T, n = self.table, self.order
        for row in T:
            if len(row) != n or any(not 0 <= x < n for x in row):
                raise InputError("table is not an n x n table of element indices")
        if T[0] != tuple(range(n)) or any(T[i][0] != i for i in range(n)):
            raise InputError("element 0 is not the identity")
        for row in T:
            if 0 not in row:
                raise InputError("an element has no inverse")
        for a in range(n):
            Ta = T[a]
            for b in range(n):
                ab = Ta[b]
                Tab, Tb = T[ab], T[b]
                for c in range(n):
                    if Tab[c] != Ta[Tb[c]]:
                        raise InputError(f"table is not associative at ({a}, {b}, {c})")

    # --- element arithmetic -------------------------------------------------

    @cached_property
    def inverses(self) -> tuple[int, ...]:
        return tuple(row.index(0) for row in self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        x = 0
        for _ in range(k):
            x = self.table[x][a]
        return x

    def element_order(self, a: int) -> int:
        x, k = a, 1
        while x != 0:
            x = self.table[x][a]
            k += 1
        return k

    def conjugate(self, x: int, a: int) -> int:
        """``a x a^-1``"""
        return self.table[self.table[a][x]][self.inv(a)]

    @cached_property
    def is_abelian(self) -> bool:
        T = self.table
        return all(T[a][b] == T[b][a] for a in range(self.order) for b in range(a))

    @property
    def exponent(self) -> int:
        from math import lcm
        return lcm(*(self.element_order(a) for a in range(self.order)))

    def label(self, a: int) -> str:
        w = self.words[a]
        if not w:
            return "1"
        return "*".join(self.generator_names[k] for k in w)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(self.label(a) for a in range(self.order))

    def element_from_word(self, word: Iterable[int]) -> int:
        x = 0
        for k in word:
            x = self.table[x][self.generator_indices[k]]
        return x

    def parse_element(self, text: str | int) -> int:
        """Element from an integer index or a word such as ``"a*b^-1"`` (``"1"`` is the identity)."""
        if isinstance(text, int):
            if not 0 <= text < self.order:
                raise InputError(f"element index {text} out of range 0..{self.order - 1}")
            return text
        s = str(text).strip()
        if s in ("1", "e", ""):
            return 0
        x = 0
        for part in s.split("*"):
            part = part.strip()
            name, _, exp = part.partition("^")
            if name not in self.generator_names:
                raise InputError(f"unknown generator {name!r} in word {s!r}")
            try:
                e = int(exp) if exp else 1
            except ValueError:
                raise InputError(f"bad exponent in word {s!r}") from None
            g = self.generator_indices[self.generator_names.index(name)]
            x = self.table[x][self.power(g, e)]
        return x

    # --- subgroups ----------------------------------------------------------

    def whole(self) -> Subgroup:
        return Subgroup(self, tuple(range(self.order)))

    def trivial(self) -> Subgroup:
        return Subgroup(self, (0,))

    def generated(self, elements: Iterable[int]) -> Subgroup:
        elements = list(elements)
        seen = {0}
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for s in elements:
                y = self.table[x][s]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return Subgroup(self, tuple(sorted(seen)))

    def cyclic(self, a: int) -> Subgroup:
        return self.generated([a])

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self is other or (
            self.table == other.table and self.generator_indices == other.generator_indices
        )

    def __hash__(self) -> int:
        return hash((self.table, self.generator_indices))

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order}, generators={self.generator_names})"


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of ``parent`` given by the sorted indices of its elements."""

    parent: FiniteGroup
    elements: tuple[int, ...]

    def __post_init__(self):
        els = tuple(sorted(set(int(x) for x in self.elements)))
        object.__setattr__(self, "elements", els)
        members = set(els)
        if 0 not in members:
            raise InputError("a subgroup must contain the identity")
        T = self.parent.table
        for a in els:
            if self.parent.inv(a) not in members:
                raise InputError("subset is not closed under inverses")
            for b in els:
                if T[a][b] not in members:
                    raise InputError("subset is not closed under multiplication")

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, a: int) -> bool:
        return a in self._members

    @cached_property
    def _members(self) -> frozenset[int]:
        return frozenset(self.elements)

    def is_cyclic(self) -> bool:
        return any(self.parent.element_order(a) == self.order for a in self.elements)

    def conjugate(self, a: int) -> Subgroup:
        """``a H a^-1``"""
        return Subgroup(self.parent, tuple(self.parent.conjugate(x, a) for x in self.elements))

    def is_subgroup_of(self, other: Subgroup) -> bool:
        return self._members <= other._members

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """A small generating set, picked greedily in element order."""
        gens: list[int] = []
        span = {0}
        for a in self.elements:
            if a not in span:
                gens.append(a)
                span = set(self.parent.generated(gens).elements)
        return tuple(gens)

    @cached_property
    def as_group(self) -> FiniteGroup:
        """The subgroup as a standalone group; element i is ``elements[i]``."""
        pos = {a: i for i, a in enumerate(self.elements)}
        T = self.parent.table
        table = [[pos[T[a][b]] for b in self.elements] for a in self.elements]
        names = [self.parent.label(a) for a in self.generators]
        names = [n if len(n) == 1 else f"({n})" for n in names]
        perms = None
        if self.parent.perms is not None:
            perms = [self.parent.perms[a] for a in self.elements]
        return FiniteGroup(
            table,
            [pos[a] for a in self.generators],
            generator_names=names,
            perms=perms,
            degree=self.parent.degree,
            max_order=max(self.parent.order, DEFAULT_MAX_ORDER),
            check=False,
        )

    def right_coset_representatives(self) -> tuple[int, ...]:
        """One element from each right coset ``H s`` (the least index in it)."""
        T = self.parent.table
        seen: set[int] = set()
        reps = []
        for s in range(self.parent.order):
            if s not in seen:
                reps.append(s)
                seen.update(T[h][s] for h in self.elements)
        return tuple(reps)

    def left_cosets(self) -> list[tuple[int, ...]]:
        """Left cosets ``a H`` as sorted tuples, ordered by least element."""
        T = self.parent.table
        seen: set[int] = set()
        cosets = []
        for a in range(self.parent.order):
            if a not in seen:
                c = tuple(sorted(T[a][h] for h in self.elements))
                cosets.append(c)
                seen.update(c)
        return cosets

    def normalizer(self) -> Subgroup:
        g = self.parent
        return Subgroup(g, tuple(a for a in range(g.order) if self.conjugate(a) == self))

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order}, elements={list(self.elements)})"


# --- constructors -----------------------------------------------------------


def _check_perm(p: Sequence[int], degree: int) -> Permutation:
    p = tuple(int(x) for x in p)
    if len(p) != degree or sorted(p) != list(range(degree)):
        raise InputError(f"{list(p)} is not a permutation of 0..{degree - 1}")
    return p


def compose(a: Permutation, b: Permutation) -> Permutation:
    """``a*b``: apply ``b`` first."""
    return tuple(a[i] for i in b)


def group_from_generators(
    degree: int,
    perms: Sequence[Sequence[int]],
    names: Sequence[str] | None = None,
    max_order: int = DEFAULT_MAX_ORDER,
) -> FiniteGroup:
    """Closure of permutations of ``{0..degree-1}`` under composition."""
    if degree < 0:
        raise InputError("negative degree")
    gens = [_check_perm(p, degree) for p in perms]
    identity = tuple(range(degree))
    elements = [identity]
    index = {identity: 0}
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = compose(x, s)
            if y not in index:
                if len(elements) == max_order:
                    raise SizeError(f"generated group exceeds the order bound {max_order}")
                index[y] = len(elements)
                elements.append(y)
                queue.append(y)
    table = [[index[compose(x, y)] for y in elements] for x in elements]
    return FiniteGroup(
        table,
        [index[s] for s in gens],
        generator_names=names,
        perms=elements,
        degree=degree,
        max_order=max_order,
        check=True,
    )


def cycles_to_perm(cycles: Sequence[Sequence[int]], degree: int) -> Permutation:
    p = list(range(degree))
    seen: set[int] = set()
    for cyc in cycles:
        for x in cyc:
            if not 0 <= x < degree or x in seen:
                raise InputError(f"bad cycle {list(cyc)} for degree {degree}")
            seen.add(x)
        for i, x in enumerate(cyc):
            p[x] = cyc[(i + 1) % len(cyc)]
    return tuple(p)


def cyclic_group(n: int) -> FiniteGroup:
    return group_from_generators(n, [cycles_to_perm([list(range(n))], n)])


# --- enumeration and predicates ---------------------------------------------


def cyclic_subgroups(g: FiniteGroup) -> list[Subgroup]:
    """Every cyclic subgroup, ordered by (order, element set)."""
    subs = {g.cyclic(a).elements for a in range(g.order)}
    return [Subgroup(g, s) for s in sorted(subs, key=lambda s: (len(s), s))]


def cyclic_subgroups_up_to_conjugacy(g: FiniteGroup) -> list[Subgroup]:
    """One representative (the least element set) per conjugacy class of cyclic subgroups."""
    reps = []
    done: set[tuple[int, ...]] = set()
    for h in cyclic_subgroups(g):
        if h.elements in done:
            continue
        orbit = {h.conjugate(a).elements for a in range(g.order)}
        done |= orbit
        reps.append(Subgroup(g, min(orbit)))
    return sorted(reps, key=lambda h: (h.order, h.elements))


def all_subgroups(g: FiniteGroup) -> list[Subgroup]:
    """Brute-force subgroup lattice by joining cyclic subgroups."""
    found = {h.elements for h in cyclic_subgroups(g)}
    frontier = set(found)
    cyclic = list(found)
    while frontier:
        new = set()
        for h in frontier:
            for c in cyclic:
                if not set(c) <= set(h):
                    j = g.generated(set(h) | set(c)).elements
                    if j not in found:
                        new.add(j)
        found |= new
        frontier = new
    return [Subgroup(g, s) for s in sorted(found, key=lambda s: (len(s), s))]


def is_cyclic(h: Subgroup | FiniteGroup) -> bool:
    if isinstance(h, FiniteGroup):
        h = h.whole()
    return h.is_cyclic()


def sylow_subgroup(g: FiniteGroup, p: int) -> Subgroup:
    """A Sylow p-subgroup, grown one factor of p at a time inside normalizers."""
    if not isprime(p):
        raise InputError(f"{p} is not prime")
    target = 1
    while g.order % (target * p) == 0:
        target *= p
    P = g.trivial()
    while P.order < target:
        N = P.normalizer()
        for x in N.elements:
            if x not in P and g.power(x, p) in P:
                P = g.generated(P.elements + (x,))
                break
        else:  # pragma: no cover - excluded by Sylow theory
            raise RuntimeError("failed to extend a p-subgroup")
    return P


def is_metacyclic(g: FiniteGroup) -> bool:
    """True iff every Sylow subgroup is cyclic."""
    return all(sylow_subgroup(g, p).is_cyclic() for p in primefactors(g.order))


def prime_divisors(n: int) -> list[int]:
    return list(primefactors(n))
