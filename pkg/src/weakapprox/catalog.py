"""Built-in example contexts and a seeded generator of random test instances."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .defect import ArithmeticContext, Place
from .documents import context_from_mapping, parse_group
from .errors import InputError
from .groups import FiniteGroup, Subgroup, all_subgroups
from .lattices import (
    GLattice,
    augmentation_kernel,
    change_basis,
    direct_sum,
    dual,
    norm_one_quotient,
    permutation_lattice,
    trivial_lattice,
)
from .linalg import IntegerMatrix

# name -> (degree, generators in cycle notation, generator names)
GROUPS: dict[str, tuple[int, list[str], list[str] | None]] = {
    **{f"C{n}": (n, ["(" + " ".join(map(str, range(n))) + ")"], None) for n in range(1, 13)},
    "V4": (4, ["(0 1)", "(2 3)"], None),
    "C2xC4": (6, ["(0 1)", "(2 3 4 5)"], None),
    "C2^3": (6, ["(0 1)", "(2 3)", "(4 5)"], None),
    "D4": (4, ["(0 1 2 3)", "(1 3)"], ["r", "s"]),
    "Q8": (8, ["(0 1 3 6)(2 5 7 4)", "(0 2 3 7)(1 4 6 5)"], ["i", "j"]),
    "S3": (3, ["(0 1)", "(0 1 2)"], ["s", "r"]),
    "D5": (5, ["(0 1 2 3 4)", "(1 4)(2 3)"], ["r", "s"]),
    "A4": (4, ["(0 1 2)", "(0 1)(2 3)"], None),
    "D6": (6, ["(0 1 2 3 4 5)", "(1 5)(2 4)"], ["r", "s"]),
    "C4xC4": (8, ["(0 1 2 3)", "(4 5 6 7)"], None),
    "C2^4": (8, ["(0 1)", "(2 3)", "(4 5)", "(6 7)"], None),
    "D8": (8, ["(0 1 2 3 4 5 6 7)", "(1 7)(2 6)(3 5)"], ["r", "s"]),
    "F20": (5, ["(0 1 2 3 4)", "(1 2 4 3)"], ["a", "b"]),
}

# groups whose Sylow subgroups are all cyclic
METACYCLIC_GROUPS = tuple(f"C{n}" for n in range(2, 13)) + ("S3", "D5", "F20")
# groups of order <= 16 used for random contexts
SMALL_GROUPS = ("C2", "C3", "C4", "C6", "V4", "S3", "C2xC4", "C2^3", "D4", "Q8", "D5", "A4", "D6",
                "C4xC4", "C2^4", "D8")


def group_document(name: str) -> dict:
    degree, gens, names = GROUPS[name]
    doc: dict = {"degree": degree, "generators": list(gens)}
    if names:
        doc["names"] = list(names)
    return doc


_group_cache: dict[str, FiniteGroup] = {}


def named_group(name: str) -> FiniteGroup:
    if name not in GROUPS:
        raise InputError(f"unknown group {name!r}")
    if name not in _group_cache:
        _group_cache[name] = parse_group(group_document(name))
    return _group_cache[name]


def _cyclic_example(n: int) -> dict:
    places = [{"name": "p", "decomposition": ["a"]}]
    places.append({"name": "inf", "decomposition": ["a"] if n == 2 else [], "archimedean": True})
    return {
        "description": f"cyclic group of order {n}, norm-one torus of a cyclic extension",
        "group": group_document(f"C{n}"),
        "lattice": {"construct": "norm_one_quotient"},
        "places": places,
    }


EXAMPLES: dict[str, dict] = {
    **{f"cyclic-{n}": _cyclic_example(n) for n in range(2, 7)},
    "klein-augmentation": {
        "description": "Klein four-group, augmentation ideal; one place with full decomposition group",
        "group": group_document("V4"),
        "lattice": {"construct": "augmentation_kernel"},
        "places": [{"name": "v0", "decomposition": ["a", "b"]}],
    },
    "klein-norm-one": {
        "description": "Klein four-group, norm-one torus; a bicyclic place and a real place",
        "group": group_document("V4"),
        "lattice": {"construct": "norm_one_quotient"},
        "places": [
            {"name": "v0", "decomposition": ["a", "b"]},
            {"name": "inf", "decomposition": ["a"], "archimedean": True},
        ],
    },
    "klein-regular": {
        "description": "Klein four-group, regular permutation lattice (quasi-trivial torus)",
        "group": group_document("V4"),
        "lattice": {"construct": "regular"},
        "places": [{"name": "v0", "decomposition": ["a", "b"]}],
    },
    "s3-norm-one": {
        "description": "symmetric group on 3 letters, norm-one torus of the Galois closure",
        "group": group_document("S3"),
        "lattice": {"construct": "norm_one_quotient"},
        "places": [
            {"name": "v0", "decomposition": ["s", "r"]},
            {"name": "inf", "decomposition": ["s"], "archimedean": True},
        ],
    },
    "d5-augmentation": {
        "description": "dihedral group of order 10, augmentation ideal",
        "group": group_document("D5"),
        "lattice": {"construct": "augmentation_kernel"},
        "places": [
            {"name": "v0", "decomposition": ["r", "s"]},
            {"name": "inf", "decomposition": ["s"], "archimedean": True},
        ],
    },
    "f20-norm-one": {
        "description": "Frobenius group of order 20, norm-one torus of a quintic field",
        "group": group_document("F20"),
        "lattice": {"construct": "norm_one_quotient", "arguments": {"subgroup": ["b"]}},
        "places": [
            {"name": "v0", "decomposition": ["a", "b"]},
            {"name": "v1", "decomposition": ["b"]},
            {"name": "inf", "decomposition": ["b^2"], "archimedean": True},
        ],
    },
}


def example(name: str) -> ArithmeticContext:
    if name not in EXAMPLES:
        raise InputError(f"unknown example {name!r} (see the catalog command)")
    return context_from_mapping(EXAMPLES[name])


# --- random instances ---------------------------------------------------------


def _random_unimodular(rng: random.Random, r: int, steps: int) -> tuple[IntegerMatrix, IntegerMatrix]:
    """A product of elementary matrices and its inverse."""
    P = [[int(i == j) for j in range(r)] for i in range(r)]
    Q = [row[:] for row in P]
    for _ in range(steps):
        i, j = rng.sample(range(r), 2)
        c = rng.choice((-1, 1))
        # P <- E P with E = I + c e_ij ; Q <- Q E^-1
        P[i] = [x + c * y for x, y in zip(P[i], P[j])]
        for row in Q:
            row[j] -= c * row[i]
    return IntegerMatrix(P, r), IntegerMatrix(Q, r)


def _block(rng: random.Random, g: FiniteGroup, subs: list[Subgroup], budget: int) -> GLattice | None:
    kind = rng.choice(("trivial", "permutation", "augmentation", "norm_one"))
    if kind == "trivial":
        return trivial_lattice(g, 1)
    h = rng.choice(subs)
    index = g.order // h.order
    if kind == "permutation":
        if index > budget:
            return None
        m = permutation_lattice(g, h)
    else:
        if index - 1 > budget or index == 1:
            return None
        m = augmentation_kernel(g, h) if kind == "augmentation" else norm_one_quotient(g, h)
    return dual(m) if rng.random() < 0.3 else m


def random_lattice(rng: random.Random, g: FiniteGroup, max_rank: int = 5, bound: int = 2) -> GLattice:
    """A direct sum of standard blocks of total rank <= ``max_rank`` in a random basis.

    The basis change is kept only when the generator matrices stay within
    ``[-bound, bound]``.
    """
    subs = all_subgroups(g)
    target = rng.randint(1, max_rank)
    m: GLattice | None = None
    tries = 0
    while (m is None or m.rank < target) and tries < 50:
        tries += 1
        budget = target - (m.rank if m else 0)
        b = _block(rng, g, subs, budget)
        if b is None or b.rank > budget:
            continue
        m = b if m is None else direct_sum(m, b)
    if m is None:
        m = trivial_lattice(g, 1)
    if m.rank >= 2:
        for _ in range(5):
            P, Pinv = _random_unimodular(rng, m.rank, rng.randint(1, 3))
            cand = change_basis(m, P, Pinv)
            if all(abs(x) <= bound for M in cand.generator_matrices() for row in M.rows for x in row):
                return cand
    return m


@dataclass(frozen=True)
class RandomInstance:
    context: ArithmeticContext
    S: frozenset[str]


def random_context(rng: random.Random, group_names=SMALL_GROUPS, max_rank: int = 4,
                   max_places: int = 3) -> RandomInstance:
    """Random group, lattice and up to ``max_places`` places, plus a random ``S``."""
    g = named_group(rng.choice(list(group_names)))
    m = random_lattice(rng, g, max_rank)
    subs = all_subgroups(g)
    noncyclic = [h for h in subs if not h.is_cyclic()]
    places = []
    for k in range(rng.randint(0, max_places)):
        if rng.random() < 0.25:
            small = [h for h in subs if h.order <= 2]
            places.append(Place(f"inf{k}", rng.choice(small), archimedean=True))
        elif noncyclic and rng.random() < 0.5:
            places.append(Place(f"v{k}", rng.choice(noncyclic)))
        else:
            places.append(Place(f"v{k}", rng.choice(subs)))
    S = frozenset(p.name for p in places if rng.random() < 0.5)
    return RandomInstance(ArithmeticContext(g, m, places), S)
