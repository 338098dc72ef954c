"""Built-in groups, posets and scenarios, and the scenario loader."""

from __future__ import annotations

import copy
from dataclasses import dataclass, field

import numpy as np

from .gposet import GPoset, build_sp_poset, chain_poset, coset_poset, discrete_poset, gposet_from_json, point_poset
from .groups import FiniteGroup, cyclic_group, direct_product, group_from_json
from .linfield import is_prime
from .rep import (
    FunctorModule,
    atomic_truncation,
    constant_module,
    group_representation,
    module_from_json,
    regular_representation,
    trivial_module,
)
from .transporter import TransporterCategory, build_transporter, poset_category

__all__ = [
    "SchemaError",
    "GROUPS",
    "catalog_group",
    "catalog_poset",
    "cone",
    "CATALOG",
    "Scenario",
    "load_scenario",
    "catalog_scenario",
    "ANALYSES",
    "MAX_OBJECTS",
    "MAX_DEGREE",
]

MAX_OBJECTS = 16
MAX_DEGREE = 12

ANALYSES = ("build", "blocks", "ext", "complexity", "quillen", "stratify", "kunneth", "hochschild-dims")


class SchemaError(ValueError):
    """Scenario does not match the expected layout or fails validation."""


def _s3():
    return FiniteGroup.from_permutations([(1, 0, 2), (1, 2, 0)], name="S3")


def _d8():
    return FiniteGroup.from_permutations([(1, 2, 3, 0), (0, 3, 2, 1)], name="D8")


GROUPS = {
    "C1": lambda: cyclic_group(1, name="1"),
    "C2": lambda: cyclic_group(2, name="C2"),
    "C3": lambda: cyclic_group(3, name="C3"),
    "C2xC2": lambda: direct_product(cyclic_group(2, name="C2"), cyclic_group(2, name="C2"), name="C2xC2"),
    "S3": _s3,
    "D8": _d8,
}


def catalog_group(name: str) -> FiniteGroup:
    try:
        return GROUPS[name]()
    except KeyError:
        raise SchemaError(f"unknown catalog group {name!r}; known: {sorted(GROUPS)}") from None


def catalog_poset(spec: dict, G: FiniteGroup, p: int) -> GPoset:
    """Builder directives: point, chain, discrete, sp, ep, swap, cosets; or an
    explicit ``{"objects", "covers"|"leq", "action"}`` table.  With
    ``"cone": true`` a G-fixed top object is added."""
    P = _base_poset(spec, G, p)
    if spec.get("cone"):
        P = cone(P, G)
    return P


def cone(P: GPoset, G: FiniteGroup | None) -> GPoset:
    """``P`` with a new maximum, fixed by the group."""
    m = P.m
    leq = np.zeros((m + 1, m + 1), dtype=bool)
    leq[:m, :m] = P.leq
    leq[:, m] = True
    act = np.concatenate([P.act, np.full((P.act.shape[0], 1), m, dtype=np.int64)], axis=1)
    return GPoset(leq, group=G, act=act if G is not None else None, labels=tuple(P.labels) + ("top",))


def _base_poset(spec: dict, G: FiniteGroup, p: int) -> GPoset:
    b = spec.get("builder")
    if b is None:
        return gposet_from_json(spec, G)
    if b == "point":
        return point_poset(G)
    if b == "chain":
        return chain_poset(int(spec.get("length", 2)), G)
    if b == "discrete":
        return discrete_poset(int(spec.get("m", 1)), G)
    if b in ("sp", "ep"):
        return build_sp_poset(G, p, "all-p" if b == "sp" else "elementary")
    if b == "swap":
        if G.n != 2:
            raise SchemaError("the swap poset needs a group of order 2")
        return coset_poset(G, G.trivial)
    if b == "cosets":
        return coset_poset(G, G.subgroup(spec.get("subgroup", [])))
    raise SchemaError(f"unknown poset builder {b!r}")


def _module(spec: dict, C: TransporterCategory, p: int, done: dict) -> FunctorModule:
    kind = spec.get("kind", "trivial")
    G = C.group
    if kind == "trivial":
        return trivial_module(C, p)
    if kind == "regular":
        return constant_module(C, regular_representation(G), p, name="regular")
    if kind == "constant":
        gens = {int(g): np.asarray(m, dtype=np.int64) for g, m in spec["generators"].items()}
        return constant_module(C, group_representation(G, gens, p), p, name=spec.get("name", "constant"))
    if kind == "atomic":
        base = spec.get("of", "trivial")
        M = done[base] if base in done else _module({"kind": base}, C, p, done)
        x = int(spec.get("object", 0))
        if not 0 <= x < C.n_obj:
            raise SchemaError(f"atomic truncation at missing object {x}")
        return atomic_truncation(M, x)
    if kind == "functor":
        return module_from_json(spec, C, p)
    raise SchemaError(f"unknown module kind {kind!r}")


@dataclass
class Scenario:
    name: str
    group: FiniteGroup
    poset: GPoset
    p: int
    category: TransporterCategory
    modules: dict
    D: int
    analyses: tuple
    components: str = "reject"
    kunneth_with: list = field(default_factory=list)
    raw: dict = field(default_factory=dict)


_KEYS = {"schema", "name", "group", "poset", "prime", "field", "modules", "max_degree", "analyses",
         "components", "kunneth", "notes"}


def load_scenario(spec: dict, prime: int | None = None, max_degree: int | None = None,
                  components: str | None = None) -> Scenario:
    """Validate and build a scenario; command-line overrides win."""
    if not isinstance(spec, dict):
        raise SchemaError("scenario must be a JSON object")
    extra = set(spec) - _KEYS
    if extra:
        raise SchemaError(f"unknown scenario keys {sorted(extra)}")
    if spec.get("schema", 1) != 1:
        raise SchemaError(f"unsupported schema version {spec.get('schema')!r}")
    for key in ("group", "poset", "prime"):
        if key not in spec and not (key == "prime" and prime is not None):
            raise SchemaError(f"scenario is missing {key!r}")
    p = int(prime if prime is not None else spec["prime"])
    if not is_prime(p):
        raise SchemaError(f"{p} is not prime")
    fld = spec.get("field")
    if fld is not None and fld not in (f"F{p}", f"F_{p}", f"GF({p})"):
        raise SchemaError(f"field {fld!r} does not match p = {p}")
    try:
        g = spec["group"]
        G = catalog_group(g["catalog"]) if "catalog" in g else group_from_json(g)
        if G.n % p:
            raise SchemaError(f"p = {p} does not divide |G| = {G.n}")
        P = catalog_poset(spec["poset"], G, p)
        if P.m > MAX_OBJECTS:
            raise SchemaError(f"poset has {P.m} objects, above the ceiling {MAX_OBJECTS}")
        C = build_transporter(G, P)
    except SchemaError:
        raise
    except (ValueError, KeyError, TypeError, IndexError) as exc:
        raise SchemaError(str(exc)) from exc
    D = int(max_degree if max_degree is not None else spec.get("max_degree", 10))
    if not 0 <= D <= MAX_DEGREE:
        raise SchemaError(f"max_degree {D} outside [0, {MAX_DEGREE}]")
    analyses = tuple(spec.get("analyses", ("build", "ext", "complexity")))
    bad = [a for a in analyses if a not in ANALYSES]
    if bad:
        raise SchemaError(f"unknown analyses {bad}")
    comp = components or spec.get("components", "reject")
    if comp not in ("reject", "split"):
        raise SchemaError(f"components policy must be reject or split, not {comp!r}")
    mods = {}
    try:
        for i, ms in enumerate(spec.get("modules", [{"kind": "trivial", "name": "k"}])):
            name = ms.get("name", ms.get("kind", f"M{i}"))
            if name in mods:
                raise SchemaError(f"duplicate module name {name!r}")
            mods[name] = _module(ms, C, p, mods)
    except SchemaError:
        raise
    except (ValueError, KeyError, TypeError, IndexError) as exc:
        raise SchemaError(f"module spec: {exc}") from exc
    partners = []
    if "kunneth" in analyses:
        w = spec.get("kunneth", {}).get("with")
        if w is None:
            raise SchemaError("kunneth analysis needs {'kunneth': {'with': [...]}}")
        for item in [w] if isinstance(w, (str, dict)) else w:
            partners.append(_partner(item, p))
    return Scenario(spec.get("name", "scenario"), G, P, p, C, mods, D, analyses, comp, partners, copy.deepcopy(spec))


def _partner(item, p: int):
    """A second factor for product computations: a catalog scenario name or a
    ``{"group", "poset"}`` pair.  The prime need not divide its order."""
    if isinstance(item, str):
        if item not in CATALOG:
            raise SchemaError(f"unknown catalog scenario {item!r}")
        label, spec = item, CATALOG[item]
    else:
        spec = item
        label = item.get("name", "partner")
    try:
        g = spec["group"]
        G = catalog_group(g["catalog"]) if "catalog" in g else group_from_json(g)
        if G.n == 1:
            P = catalog_poset(spec["poset"], None, p) if spec["poset"].get("builder") not in ("sp", "ep") else None
            if P is None:
                raise SchemaError("subgroup posets need a nontrivial group")
            return label, poset_category(P)
        return label, build_transporter(G, catalog_poset(spec["poset"], G, p))
    except SchemaError:
        raise
    except (ValueError, KeyError, TypeError, IndexError) as exc:
        raise SchemaError(f"kunneth partner: {exc}") from exc


_STD_MODULES = [
    {"name": "k", "kind": "trivial"},
    {"name": "regular", "kind": "regular"},
    {"name": "atomic0", "kind": "atomic", "of": "trivial", "object": 0},
]
_STD = ["build", "blocks", "ext", "complexity", "quillen", "stratify"]

CATALOG = {
    "c2-point": {"group": {"catalog": "C2"}, "poset": {"builder": "point"}, "prime": 2,
                 "analyses": _STD + ["kunneth", "hochschild-dims"],
                 "kunneth": {"with": ["c2-point", {"name": "chain-2", "group": {"catalog": "C1"},
                                                   "poset": {"builder": "chain", "length": 2}}]}},
    "c3-point": {"group": {"catalog": "C3"}, "poset": {"builder": "point"}, "prime": 3,
                 "analyses": _STD + ["hochschild-dims"]},
    "c2xc2-point": {"group": {"catalog": "C2xC2"}, "poset": {"builder": "point"}, "prime": 2, "analyses": _STD},
    "s3-s2-p2": {"group": {"catalog": "S3"}, "poset": {"builder": "sp"}, "prime": 2, "analyses": _STD},
    "s3-s3-p3": {"group": {"catalog": "S3"}, "poset": {"builder": "sp"}, "prime": 3, "analyses": _STD},
    "c2-chain": {"group": {"catalog": "C2"}, "poset": {"builder": "chain", "length": 2}, "prime": 2,
                 "analyses": _STD + ["hochschild-dims"]},
    "c2-swap": {"group": {"catalog": "C2"}, "poset": {"builder": "swap"}, "prime": 2, "analyses": _STD,
                "components": "split"},
    "c2-discrete2": {"group": {"catalog": "C2"}, "poset": {"builder": "discrete", "m": 2}, "prime": 2,
                     "analyses": _STD, "components": "split"},
    "c2-wedge-swap": {"group": {"catalog": "C2"}, "prime": 2, "analyses": _STD,
                      "poset": {"objects": 3, "covers": [[0, 2], [1, 2]], "action": [[0, 1, 2], [1, 0, 2]]}},
    "s3-s2-cone-p2": {"group": {"catalog": "S3"}, "poset": {"builder": "sp", "cone": True}, "prime": 2,
                      "analyses": _STD},
    "d8-point": {"group": {"catalog": "D8"}, "poset": {"builder": "point"}, "prime": 2, "analyses": _STD},
    "d8-ep": {"group": {"catalog": "D8"}, "poset": {"builder": "ep"}, "prime": 2, "analyses": _STD},
}
for _name, _spec in CATALOG.items():
    _spec.setdefault("name", _name)
    _spec.setdefault("modules", _STD_MODULES)
    _spec.setdefault("max_degree", 10)


def catalog_scenario(name: str, **overrides) -> Scenario:
    if name not in CATALOG:
        raise SchemaError(f"unknown catalog scenario {name!r}; known: {sorted(CATALOG)}")
    return load_scenario(copy.deepcopy(CATALOG[name]), **overrides)
