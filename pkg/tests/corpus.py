"""Shared test corpus: catalog groups with standard and seeded random lattices."""

import random
from functools import lru_cache

from weakapprox.catalog import named_group, random_lattice
from weakapprox.groups import all_subgroups
from weakapprox.lattices import (
    augmentation_kernel,
    dual,
    norm_one_quotient,
    permutation_lattice,
    trivial_lattice,
)


def standard_lattices(g, max_rank=6):
    out = [("Z", trivial_lattice(g, 1))]
    for h in all_subgroups(g):
        index = g.order // h.order
        tag = f"h{h.order}:{h.elements[:4]}"
        if index <= max_rank:
            out.append((f"perm[{tag}]", permutation_lattice(g, h)))
        if 1 < index <= max_rank + 1:
            out.append((f"aug[{tag}]", augmentation_kernel(g, h)))
            out.append((f"J[{tag}]", norm_one_quotient(g, h)))
            out.append((f"aug*[{tag}]", dual(augmentation_kernel(g, h))))
    return out


@lru_cache(maxsize=None)
def corpus(name, n_random=4, max_rank=4, seed=0):
    g = named_group(name)
    rng = random.Random(f"{name}-{seed}")
    lats = standard_lattices(g)
    lats += [(f"random{k}", random_lattice(rng, g, max_rank)) for k in range(n_random)]
    return g, tuple(lats)


def abelianization_bruteforce(g):
    """Invariant factors of ``g / [g, g]`` by coset enumeration."""
    from oracles import divisors, structure_from_torsion_counts

    comms = [g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b))) for a in range(g.order) for b in range(g.order)]
    D = set(g.generated(comms).elements)
    cosets = []
    seen = set()
    for a in range(g.order):
        if a not in seen:
            c = frozenset(g.mul(a, d) for d in D)
            cosets.append(a)
            seen |= c
    q = len(cosets)
    counts = {k: sum(1 for a in cosets if g.power(a, k) in D) for k in divisors(q) if k > 1}
    return structure_from_torsion_counts(counts)
