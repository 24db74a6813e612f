"""Invariant checks over the built-in catalog, used by ``weakapprox selftest``."""

from __future__ import annotations

import itertools
from typing import Callable, Iterator

from .catalog import EXAMPLES, example
from .cohomology import sha_omega, tate, tate_cyclic
from .defect import ArithmeticContext, compute_S0, s0_reduction_check, verdict
from .documents import context_from_yaml, context_to_yaml
from .groups import all_subgroups, is_metacyclic
from .lattices import GLattice, permutation_lattice
from .linalg import IntegerMatrix

Check = tuple[str, Callable[[], bool]]


def corrupt(ctx: ArithmeticContext) -> ArithmeticContext:
    """Copy of ``ctx`` whose first generator matrix has one entry changed (unchecked)."""
    m = ctx.lattice
    action = list(m.action)
    s = ctx.group.generator_indices[0]
    rows = [list(r) for r in action[s].rows]
    rows[0][0] += 1
    action[s] = IntegerMatrix(rows, m.rank)
    bad = GLattice(ctx.group, action, m.rank, check=False)
    out = ArithmeticContext.__new__(ArithmeticContext)
    out.__dict__.update(ctx.__dict__)
    out.lattice = bad
    out._kernels = {}
    out._h1 = None
    return out


def _subsets(names):
    return itertools.chain.from_iterable(itertools.combinations(names, k) for k in range(len(names) + 1))


def _context_checks(name: str, ctx: ArithmeticContext) -> Iterator[Check]:
    g, m = ctx.group, ctx.lattice

    def valid():
        m.check()
        return True

    yield f"{name}: lattice action is a valid representation", valid
    yield f"{name}: document round-trip", lambda: context_from_yaml(context_to_yaml(ctx)) == ctx

    def defects():
        S0 = compute_S0(ctx)
        for S in _subsets(ctx.place_names):
            r = verdict(ctx, S)
            if r.C_S.invariant_factors != r.C_S_dual_path.invariant_factors:
                return False
            if not s0_reduction_check(ctx, S):
                return False
            if not set(S) & S0 and not r.wa_verdict:
                return False
        return True

    yield f"{name}: path agreement, S0 reduction and S-cap-S0 vanishing", defects

    if g.whole().is_cyclic():
        def cyclic():
            return all(tate(g, m, i).invariant_factors == tate_cyclic(g, m, i).invariant_factors
                       for i in (-1, 0, 1, 2))
        yield f"{name}: bar resolution agrees with the cyclic closed form", cyclic

    if is_metacyclic(g):
        yield f"{name}: Sha_Omega vanishes in degrees -1..2", \
            lambda: all(sha_omega(g, m, i)[0].is_trivial() for i in (-1, 0, 1, 2))

    def shapiro():
        return all(tate(g, permutation_lattice(g, h), 1).value.is_trivial() for h in all_subgroups(g))

    yield f"{name}: H^1 of permutation lattices vanishes", shapiro


def _worked_example_checks() -> Iterator[Check]:
    ctx = example("klein-augmentation")
    yield "klein-augmentation: H^1 = Z/4", lambda: tate(ctx.group, ctx.lattice, 1).invariant_factors == (4,)
    yield "klein-augmentation: Sha^1_Omega = Z/2", \
        lambda: sha_omega(ctx.group, ctx.lattice, 1)[0].invariant_factors == (2,)
    yield "klein-augmentation: C_S = Z/2 for S = {v0}", \
        lambda: verdict(ctx, ["v0"]).C_S.invariant_factors == (2,)
    yield "klein-augmentation: C_S = 0 for S = {}", lambda: verdict(ctx, []).wa_verdict


def checks(corrupt_action: bool = False) -> list[Check]:
    out: list[Check] = []
    for name in EXAMPLES:
        ctx = example(name)
        if corrupt_action and name == "klein-augmentation":
            ctx = corrupt(ctx)
        out.extend(_context_checks(name, ctx))
    out.extend(_worked_example_checks())
    return out


def run(corrupt_action: bool = False, report: Callable[[str], None] = print) -> tuple[int, int]:
    """Run every check and return ``(passed, failed)``."""
    passed = failed = 0
    for label, fn in checks(corrupt_action):
        try:
            ok = bool(fn())
            err = ""
        except Exception as e:  # a crash counts as a failure
            ok, err = False, f" ({type(e).__name__}: {e})"
        report(f"{'PASS' if ok else 'FAIL'}  {label}{err}")
        passed += ok
        failed += not ok
    return passed, failed
