"""Quillen pairs ``(E, C)`` of a G-poset, the subpair order, Weyl groups and
the bookkeeping that compares complexity over ``G∝P`` with complexities over
elementary abelian subgroups."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

from .gposet import GPoset, components, fixed_subposet
from .groups import FiniteGroup, Subgroup, elementary_abelian_subgroups, pair_stabilizers
from .homology import (
    DEFAULT_DEGREE,
    ComplexityEstimate,
    VerificationError,
    complexity,
    group_restriction,
)
from .rep import FunctorModule, restriction
from .transporter import TransporterCategory, subgroup_inclusion

__all__ = [
    "QuillenPair",
    "PairClass",
    "enumerate_quillen_pairs",
    "quillen_subpair",
    "VarietyDimension",
    "variety_dimension",
    "subgroup_complexity",
    "StratificationReport",
    "stratification_report",
    "CSV_COLUMNS",
]

CSV_COLUMNS = (
    "class",
    "rank",
    "weyl_order",
    "class_size",
    "component_size",
    "subgroup",
    "objects",
    "module",
    "pair_complexity",
    "variety_dimension",
    "certificate",
)


@dataclass(frozen=True)
class QuillenPair:
    E: Subgroup
    objects: tuple
    rank: int

    def key(self):
        return (self.rank, self.E.elements, self.objects)

    def __repr__(self):
        return f"QuillenPair(E={list(self.E.elements)}, C={list(self.objects)}, rank={self.rank})"


@dataclass
class PairClass:
    members: list  # indices into the pair list
    rank: int
    weyl_order: int
    representative: int


def _act_set(P: GPoset, g: int, objs) -> tuple:
    return tuple(sorted(int(P.act[g, x]) for x in objs))


def enumerate_quillen_pairs(G: FiniteGroup, P: GPoset, p: int):
    """All pairs (E, component of P^E) with E elementary abelian, rank 0
    included, sorted by (rank, E, objects), and their isomorphism classes
    under ``g.(E, C) = (gEg^-1, gC)``."""
    if G.n % p:
        raise ValueError(f"p = {p} does not divide |G| = {G.n}")
    if P.act.shape[0] != G.n:
        raise ValueError("poset is not acted on by this group")
    pairs = []
    for E in elementary_abelian_subgroups(G, p):
        fixed = fixed_subposet(P, E)
        if fixed.m == 0:
            continue
        for comp in components(fixed):
            pairs.append(QuillenPair(E, tuple(comp), E.p_rank(p)))
    pairs.sort(key=QuillenPair.key)
    index = {(q.E.elements, q.objects): i for i, q in enumerate(pairs)}
    seen, classes = set(), []
    for i, q in enumerate(pairs):
        if i in seen:
            continue
        members = sorted({index[(q.E.conjugate(g).elements, _act_set(P, g, q.objects))] for g in range(G.n)})
        seen.update(members)
        st = pair_stabilizers(G, q.E, q.objects, P.act)
        if G.n and (len(st.normalizer) % len(st.centralizer) or len(members) * len(st.normalizer) != G.n):
            raise VerificationError("pair orbit does not match its stabilizer")
        classes.append(PairClass(members, q.rank, st.weyl_order, i))
    return pairs, classes


def quillen_subpair(P: GPoset, pair: QuillenPair, sub: Subgroup, p: int | None = None) -> QuillenPair:
    """``(E', C|E')``: the component of ``P^{E'}`` containing C."""
    if not sub.issubset(pair.E):
        raise ValueError("subgroup is not contained in E")
    fixed = fixed_subposet(P, sub)
    start = pair.objects[0]
    for comp in components(fixed):
        if start in comp:
            if not set(pair.objects) <= set(comp):
                raise VerificationError("component is not contained in the subpair component")
            rank = sub.p_rank(p) if p is not None else _elementary_rank(sub)
            return QuillenPair(sub, tuple(comp), rank)
    raise VerificationError("component objects are not fixed by the subgroup")


def _elementary_rank(sub: Subgroup) -> int:
    """Rank of an elementary abelian group from its order."""
    n, r = len(sub), 0
    q = next((d for d in range(2, n + 1) if n % d == 0), n)
    while n > 1:
        n //= q
        r += 1
    return r


# -- variety dimension ------------------------------------------------------------------
@dataclass
class VarietyDimension:
    s: int
    stable: bool
    certificate: int
    per_pair: dict = field(default_factory=dict)  # pair index -> max kE-complexity over C
    estimate: ComplexityEstimate | None = None

    @property
    def ok(self) -> bool:
        return self.s == self.certificate


class _ComplexityCache:
    def __init__(self, M: FunctorModule, D: int):
        self.M, self.D, self.vals = M, D, {}

    def __call__(self, E: Subgroup, x: int) -> ComplexityEstimate:
        k = (E.elements, x)
        if k not in self.vals:
            self.vals[k] = complexity(group_restriction(self.M, E, x), self.D)
        return self.vals[k]


def _pair_complexity(cache, pair: QuillenPair) -> tuple[int, bool]:
    s, stable = 0, True
    for x in pair.objects:
        if cache.M.dims[x] == 0:
            continue
        est = cache(pair.E, x)
        s = max(s, est.s)
        stable &= est.stable
    return s, stable


def variety_dimension(M: FunctorModule, D: int = DEFAULT_DEGREE, pairs=None, strict: bool = True) -> VarietyDimension:
    """Complexity of M, certified against the maximum over Quillen pairs
    (E, C) and x in C of the kE-complexity of M(x)."""
    C = M.category
    if not isinstance(C, TransporterCategory):
        raise TypeError("variety dimension needs a transporter category")
    G, P = C.group, C.poset
    if pairs is None:
        pairs, _ = enumerate_quillen_pairs(G, P, M.p)
    est = complexity(M, D)
    cache = _ComplexityCache(M, D)
    per_pair, stable = {}, est.stable
    for i, q in enumerate(pairs):
        per_pair[i], st = _pair_complexity(cache, q)
        stable &= st
    cert = max(per_pair.values(), default=0)
    out = VarietyDimension(est.s, stable, cert, per_pair, est)
    if strict and not out.ok:
        raise VerificationError(f"complexity {est.s} differs from the Quillen pair bound {cert}")
    return out


def subgroup_complexity(M: FunctorModule, H: Subgroup, D: int = DEFAULT_DEGREE) -> ComplexityEstimate:
    """Complexity of M restricted along ``H∝P -> G∝P``."""
    _, F = subgroup_inclusion(M.category, H)
    return complexity(restriction(M, F), D)


# -- report --------------------------------------------------------------------------------
@dataclass
class StratificationReport:
    pairs: list
    classes: list
    max_rank: int
    modules: dict  # name -> VarietyDimension
    subpair_ok: bool
    rows: list

    def to_dict(self) -> dict:
        return {
            "classes": [
                {
                    "rank": c.rank,
                    "weyl_order": c.weyl_order,
                    "size": len(c.members),
                    "subgroup": list(self.pairs[c.representative].E.elements),
                    "objects": list(self.pairs[c.representative].objects),
                    "rank0": c.rank == 0,
                }
                for c in self.classes
            ],
            "max_rank": self.max_rank,
            "modules": {
                name: {"dimension": v.s, "certificate": v.certificate, "stable": bool(v.stable), "ok": bool(v.ok)}
                for name, v in self.modules.items()
            },
            "subpair_consistent": bool(self.subpair_ok),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in self.rows:
            w.writerow([r[c] for c in CSV_COLUMNS])
        return buf.getvalue()


def stratification_report(G: FiniteGroup, P: GPoset, p: int, modules: dict, D: int = DEFAULT_DEGREE) -> StratificationReport:
    """Pair classes with rank and Weyl order, a certified dimension per module,
    and the subpair check: for every pair, proper subgroup E' of E and x in
    C, the kE'-complexity of M(x) is at most its kE-complexity, and the bound
    over ``C|E'`` never exceeds the module's dimension."""
    pairs, classes = enumerate_quillen_pairs(G, P, p)
    max_rank = max((q.rank for q in pairs), default=0)
    dims, rows, sub_ok = {}, [], True
    for name, M in modules.items():
        vd = variety_dimension(M, D, pairs, strict=False)
        dims[name] = vd
        cache = _ComplexityCache(M, D)
        for q in pairs:
            for Es in q.E.subgroups():
                if len(Es) == len(q.E):
                    continue
                sp = quillen_subpair(P, q, Es, p)
                for x in q.objects:
                    if M.dims[x] and cache(Es, x).s > cache(q.E, x).s:
                        sub_ok = False
                if _pair_complexity(cache, sp)[0] > vd.s:
                    sub_ok = False
        for ci, c in enumerate(classes):
            q = pairs[c.representative]
            rows.append({
                "class": ci,
                "rank": c.rank,
                "weyl_order": c.weyl_order,
                "class_size": len(c.members),
                "component_size": len(q.objects),
                "subgroup": " ".join(map(str, q.E.elements)),
                "objects": " ".join(map(str, q.objects)),
                "module": name,
                "pair_complexity": vd.per_pair[c.representative],
                "variety_dimension": vd.s,
                "certificate": "ok" if vd.ok and vd.stable else ("unstable" if vd.ok else "fail"),
            })
    return StratificationReport(pairs, classes, max_rank, dims, sub_ok, rows)
