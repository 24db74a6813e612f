"""Context documents: a YAML description of (group, lattice, places).

Schema::

    group:
      degree: 4                      # permutations act on 0..degree-1
      generators: ["(0 1)", [1, 0, 3, 2]]   # cycle or one-line notation
      names: [a, b]                  # optional, default a, b, c, ...
    lattice:                         # explicit ...
      rank: 3
      action_on_generators: [[[...]], ...]
    lattice:                         # ... or constructed
      construct: augmentation_kernel
      arguments: {subgroup: [a]}     # optional for permutation-type constructs
    places:
      - name: v0
        decomposition: [a, b]        # generating words or element indices
        archimedean: false

Constructs: ``trivial`` (``rank``), ``regular``, ``permutation``,
``augmentation_kernel`` and ``norm_one_quotient`` (``subgroup``, default
trivial, required for ``permutation``), ``dual`` (``of``: a lattice) and
``direct_sum`` (``summands``: list of lattices).
"""

from __future__ import annotations

import re
from typing import Any

import yaml

from .defect import ArithmeticContext, Place
from .errors import InputError
from .groups import FiniteGroup, Subgroup, cycles_to_perm, group_from_generators
from .lattices import (
    GLattice,
    augmentation_kernel,
    direct_sum,
    dual,
    lattice_from_action,
    norm_one_quotient,
    permutation_lattice,
    regular_lattice,
    trivial_lattice,
)

CONSTRUCTS = ("trivial", "regular", "permutation", "augmentation_kernel", "norm_one_quotient", "dual", "direct_sum")

_CYCLE = re.compile(r"\(([^()]*)\)")


def _fail(where: str, msg: str):
    raise InputError(f"{where}: {msg}")


def parse_permutation(spec: Any, degree: int, where: str = "permutation") -> tuple[int, ...]:
    """A permutation from cycle notation ``"(0 1 2)(3 4)"`` or a one-line list."""
    if isinstance(spec, str):
        text = spec.strip()
        if _CYCLE.sub("", text).strip():
            _fail(where, f"cannot parse {spec!r} as cycle notation")
        cycles = []
        for body in _CYCLE.findall(text):
            try:
                cycles.append([int(x) for x in body.replace(",", " ").split()])
            except ValueError:
                _fail(where, f"non-integer point in {spec!r}")
        try:
            return cycles_to_perm([c for c in cycles if c], degree)
        except InputError as e:
            _fail(where, str(e))
    if isinstance(spec, (list, tuple)):
        p = list(spec)
        if not all(isinstance(x, int) for x in p) or sorted(p) != list(range(degree)):
            _fail(where, f"{p} is not a permutation of 0..{degree - 1}")
        return tuple(p)
    _fail(where, f"expected a cycle string or a list, got {type(spec).__name__}")


def _require(doc: Any, key: str, where: str) -> Any:
    if not isinstance(doc, dict):
        _fail(where, "expected a mapping")
    if key not in doc:
        _fail(where, f"missing field {key!r}")
    return doc[key]


def parse_group(doc: Any, where: str = "group") -> FiniteGroup:
    degree = _require(doc, "degree", where)
    if not isinstance(degree, int) or degree < 1:
        _fail(f"{where}.degree", "must be a positive integer")
    gens = doc.get("generators", [])
    if not isinstance(gens, list):
        _fail(f"{where}.generators", "expected a list")
    perms = [parse_permutation(p, degree, f"{where}.generators[{i}]") for i, p in enumerate(gens)]
    names = doc.get("names")
    if names is not None:
        if not isinstance(names, list) or len(names) != len(perms) or len(set(map(str, names))) != len(names):
            _fail(f"{where}.names", "need one distinct name per generator")
        for nm in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", str(nm)):
                _fail(f"{where}.names", f"invalid generator name {nm!r}")
        names = [str(x) for x in names]
    try:
        return group_from_generators(degree, perms, names)
    except InputError as e:
        _fail(where, str(e))


def parse_subgroup(g: FiniteGroup, spec: Any, where: str) -> Subgroup:
    """Subgroup generated by a list of words or element indices."""
    if spec is None:
        return g.trivial()
    if not isinstance(spec, list):
        _fail(where, "expected a list of generator words or element indices")
    elements = []
    for i, item in enumerate(spec):
        if isinstance(item, bool) or not isinstance(item, (int, str)):
            _fail(f"{where}[{i}]", f"expected a word or an index, got {item!r}")
        try:
            elements.append(g.parse_element(item))
        except InputError as e:
            _fail(f"{where}[{i}]", str(e))
    return g.generated(elements)


def parse_lattice(g: FiniteGroup, doc: Any, where: str = "lattice") -> GLattice:
    if not isinstance(doc, dict):
        _fail(where, "expected a mapping")
    if "construct" in doc:
        kind = doc["construct"]
        args = doc.get("arguments") or {}
        if not isinstance(args, dict):
            _fail(f"{where}.arguments", "expected a mapping")
        if kind == "trivial":
            rank = args.get("rank", 1)
            if not isinstance(rank, int) or rank < 0:
                _fail(f"{where}.arguments.rank", "must be a nonnegative integer")
            return trivial_lattice(g, rank)
        if kind == "regular":
            return regular_lattice(g)
        if kind in ("permutation", "augmentation_kernel", "norm_one_quotient"):
            if kind == "permutation" and "subgroup" not in args:
                _fail(f"{where}.arguments", "permutation lattices need a 'subgroup'")
            h = parse_subgroup(g, args.get("subgroup"), f"{where}.arguments.subgroup")
            return {"permutation": permutation_lattice, "augmentation_kernel": augmentation_kernel,
                    "norm_one_quotient": norm_one_quotient}[kind](g, h)
        if kind == "dual":
            return dual(parse_lattice(g, _require(args, "of", f"{where}.arguments"), f"{where}.arguments.of"))
        if kind == "direct_sum":
            parts = _require(args, "summands", f"{where}.arguments")
            if not isinstance(parts, list) or not parts:
                _fail(f"{where}.arguments.summands", "expected a nonempty list")
            out = parse_lattice(g, parts[0], f"{where}.arguments.summands[0]")
            for i, p in enumerate(parts[1:], 1):
                out = direct_sum(out, parse_lattice(g, p, f"{where}.arguments.summands[{i}]"))
            return out
        _fail(f"{where}.construct", f"unknown construct {kind!r} (expected one of {', '.join(CONSTRUCTS)})")
    rank = _require(doc, "rank", where)
    if not isinstance(rank, int) or rank < 0:
        _fail(f"{where}.rank", "must be a nonnegative integer")
    mats = doc.get("action_on_generators", [])
    if not isinstance(mats, list) or len(mats) != len(g.generator_indices):
        _fail(f"{where}.action_on_generators", f"expected {len(g.generator_indices)} matrices")
    for i, M in enumerate(mats):
        ok = (isinstance(M, list) and len(M) == rank
              and all(isinstance(r, list) and len(r) == rank and all(type(x) is int for x in r) for r in M))
        if not ok:
            _fail(f"{where}.action_on_generators[{i}]", f"expected a {rank}x{rank} integer matrix")
    try:
        return lattice_from_action(g, mats, rank)
    except InputError as e:
        _fail(where, str(e))


def parse_places(g: FiniteGroup, doc: Any, where: str = "places") -> list[Place]:
    if doc is None:
        return []
    if not isinstance(doc, list):
        _fail(where, "expected a list")
    out = []
    for i, p in enumerate(doc):
        w = f"{where}[{i}]"
        name = _require(p, "name", w)
        if not isinstance(name, (str, int)) or isinstance(name, bool) or "," in str(name):
            _fail(f"{w}.name", "expected a name without commas")
        d = parse_subgroup(g, _require(p, "decomposition", w), f"{w}.decomposition")
        arch = p.get("archimedean", False)
        if not isinstance(arch, bool):
            _fail(f"{w}.archimedean", "expected true or false")
        try:
            out.append(Place(str(name), d, arch))
        except InputError as e:
            _fail(w, str(e))
    return out


def context_from_mapping(doc: Any) -> ArithmeticContext:
    if not isinstance(doc, dict):
        raise InputError("document: expected a mapping with group, lattice and places")
    unknown = set(doc) - {"group", "lattice", "places", "description"}
    if unknown:
        raise InputError(f"document: unknown fields {', '.join(sorted(unknown))}")
    g = parse_group(_require(doc, "group", "document"))
    m = parse_lattice(g, _require(doc, "lattice", "document"))
    places = parse_places(g, doc.get("places"))
    try:
        return ArithmeticContext(g, m, places)
    except InputError as e:
        _fail("places", str(e))


def context_from_yaml(text: str) -> ArithmeticContext:
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise InputError(f"YAML syntax error: {e}") from None
    return context_from_mapping(doc)


def load_context(path: str) -> ArithmeticContext:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None
    return context_from_yaml(text)


def _cycle_string(p: tuple[int, ...]) -> str:
    seen, parts = set(), []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(j)
            j = p[j]
        parts.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(parts) or "()"


def context_to_mapping(ctx: ArithmeticContext) -> dict:
    """Explicit form: cycle notation, action on generators, element indices."""
    g = ctx.group
    if g.perms is None:
        raise InputError("only permutation groups can be serialized")
    return {
        "group": {
            "degree": g.degree,
            "generators": [_cycle_string(g.perms[s]) for s in g.generator_indices],
            "names": list(g.generator_names),
        },
        "lattice": {
            "rank": ctx.lattice.rank,
            "action_on_generators": [M.tolist() for M in ctx.lattice.generator_matrices()],
        },
        "places": [
            {"name": p.name, "decomposition": list(p.decomposition.elements), "archimedean": p.archimedean}
            for p in ctx.special_places
        ],
    }


def context_to_yaml(ctx: ArithmeticContext) -> str:
    return yaml.safe_dump(context_to_mapping(ctx), sort_keys=False, default_flow_style=None)
