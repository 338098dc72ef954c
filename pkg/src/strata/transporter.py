"""Finite categories given by composition tables, the transporter construction
G∝P, and the derived categories used downstream (opposite, products, full
subcategories, factorization category F(C), enveloping category C^e)."""

from __future__ import annotations

import json
from functools import cached_property

import numpy as np

from .groups import FiniteGroup, Subgroup
from .gposet import GPoset, point_poset

__all__ = [
    "FiniteCategory",
    "TransporterCategory",
    "Functor",
    "CategoryError",
    "build_transporter",
    "group_category",
    "poset_category",
    "product_category",
    "opposite_category",
    "factorization_category",
    "enveloping_category",
    "full_subcategory",
    "projection_to_group",
    "subgroup_inclusion",
]


class CategoryError(ValueError):
    pass


class FiniteCategory:
    """Objects ``0..n_obj-1``; morphisms ``0..n_mor-1`` with ``src``/``dst``.

    ``comp[b, a]`` is the id of ``b∘a`` (``a`` first) when ``dst[a] ==
    src[b]`` and ``-1`` otherwise.  Morphism ids are the basis of the
    category algebra, so their order is the basis order everywhere.
    """

    def __init__(self, n_obj, src, dst, comp, identities, payload=None, obj_labels=None, name="", check=True):
        self.n_obj = int(n_obj)
        self.src = np.asarray(src, dtype=np.int64)
        self.dst = np.asarray(dst, dtype=np.int64)
        self.n_mor = len(self.src)
        self.comp = np.asarray(comp, dtype=np.int64).reshape(self.n_mor, self.n_mor)
        self.identities = tuple(int(i) for i in identities)
        self.payload = tuple(payload) if payload is not None else tuple(range(self.n_mor))
        self.obj_labels = tuple(obj_labels) if obj_labels is not None else tuple(range(self.n_obj))
        self.name = name
        for arr in (self.src, self.dst, self.comp):
            arr.setflags(write=False)
        if check:
            self._validate()

    def __repr__(self):
        return f"FiniteCategory({self.name or ''} objects={self.n_obj}, morphisms={self.n_mor})"

    # -- construction ---------------------------------------------------------
    @classmethod
    def from_rule(cls, n_obj, morphisms, compose, identity_of, obj_labels=None, name="", check=True):
        """Tabulate a category from a list of ``(src, dst, payload)`` and a rule
        ``compose(b_payload, a_payload) -> payload`` for composable pairs."""
        src = [m[0] for m in morphisms]
        dst = [m[1] for m in morphisms]
        pay = [m[2] for m in morphisms]
        index = {}
        for i, (s, d, q) in enumerate(morphisms):
            key = (s, d, q)
            if key in index:
                raise CategoryError(f"duplicate morphism {key!r}")
            index[key] = i
        n = len(morphisms)
        comp = np.full((n, n), -1, dtype=np.int64)
        out_of: dict[int, list[int]] = {}
        for i, s in enumerate(src):
            out_of.setdefault(s, []).append(i)
        for a in range(n):
            for b in out_of.get(dst[a], []):
                q = compose(pay[b], pay[a])
                key = (src[a], dst[b], q)
                if key not in index:
                    raise CategoryError(f"composite {key!r} is not a morphism")
                comp[b, a] = index[key]
        ids = [index[(x, x, identity_of(x))] for x in range(n_obj)]
        return cls(n_obj, src, dst, comp, ids, payload=pay, obj_labels=obj_labels, name=name, check=check)

    def _validate(self):
        n, comp, src, dst = self.n_mor, self.comp, self.src, self.dst
        if len(self.identities) != self.n_obj:
            raise CategoryError("one identity per object required")
        composable = dst[:, None] == src[None, :]  # [a, b]: b∘a defined
        defined = comp.T >= 0
        if not np.array_equal(composable, defined):
            a, b = np.argwhere(composable != defined)[0]
            raise CategoryError(f"composition of {b}∘{a} defined incorrectly")
        bs, as_ = np.nonzero(comp >= 0)
        ba = comp[bs, as_]
        if not (np.array_equal(src[ba], src[as_]) and np.array_equal(dst[ba], dst[bs])):
            raise CategoryError("composite has the wrong source or target")
        for x, i in enumerate(self.identities):
            if src[i] != x or dst[i] != x:
                raise CategoryError(f"identity of {x} is not an endomorphism of {x}")
            into = np.flatnonzero(dst == x)
            outof = np.flatnonzero(src == x)
            if not np.array_equal(comp[i, into], into) or not np.array_equal(comp[outof, i], outof):
                raise CategoryError(f"identity of object {x} is not neutral")
        ext = np.where(comp < 0, n, comp)
        ext = np.pad(ext, ((0, 1), (0, 1)), constant_values=n)
        inner = ext[:n, :n]
        for c in range(n):
            left = ext[c][inner]  # c∘(b∘a)
            right = ext[ext[c, :n]][:, :n]  # (c∘b)∘a
            if not np.array_equal(left, right):
                b, a = np.argwhere(left != right)[0]
                raise CategoryError(f"associativity fails on ({c}, {b}, {a})")

    # -- structure -------------------------------------------------------------
    @cached_property
    def hom(self) -> tuple[tuple[tuple[int, ...], ...], ...]:
        """``hom[x][y]``: ids of morphisms ``x -> y`` in increasing order."""
        h = [[[] for _ in range(self.n_obj)] for _ in range(self.n_obj)]
        for i in range(self.n_mor):
            h[self.src[i]][self.dst[i]].append(i)
        return tuple(tuple(tuple(c) for c in row) for row in h)

    def aut(self, x: int) -> tuple[int, ...]:
        return self.automorphisms[x]

    def is_iso(self, f: int) -> bool:
        return self._inverse_of[f] >= 0

    @cached_property
    def _inverse_of(self) -> np.ndarray:
        inv = np.full(self.n_mor, -1, dtype=np.int64)
        for f in range(self.n_mor):
            x, y = int(self.src[f]), int(self.dst[f])
            for g in self.hom[y][x]:
                if self.comp[g, f] == self.identities[x] and self.comp[f, g] == self.identities[y]:
                    inv[f] = g
                    break
        return inv

    def inverse(self, f: int) -> int:
        g = int(self._inverse_of[f])
        if g < 0:
            raise CategoryError(f"morphism {f} is not invertible")
        return g

    @cached_property
    def automorphisms(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(f for f in self.hom[x][x] if self.is_iso(f)) for x in range(self.n_obj))

    @cached_property
    def is_ei(self) -> bool:
        return all(self.is_iso(f) for x in range(self.n_obj) for f in self.hom[x][x])

    @cached_property
    def iso_classes(self) -> tuple[tuple[int, ...], ...]:
        """Isomorphism classes of objects, each sorted, ordered by least member."""
        cls_of = [-1] * self.n_obj
        classes = []
        for x in range(self.n_obj):
            if cls_of[x] >= 0:
                continue
            members = [y for y in range(self.n_obj) if any(self.is_iso(f) for f in self.hom[x][y])]
            for y in members:
                cls_of[y] = len(classes)
            classes.append(tuple(members))
        return tuple(classes)

    def iso_class_of(self, x: int) -> tuple[int, ...]:
        for c in self.iso_classes:
            if x in c:
                return c
        raise IndexError(x)

    @cached_property
    def connected_components(self) -> tuple[tuple[int, ...], ...]:
        parent = list(range(self.n_obj))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for s, d in zip(self.src.tolist(), self.dst.tolist()):
            ra, rb = find(s), find(d)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        comps: dict[int, list[int]] = {}
        for x in range(self.n_obj):
            comps.setdefault(find(x), []).append(x)
        return tuple(sorted((tuple(v) for v in comps.values()), key=lambda c: c[0]))

    @property
    def is_connected(self) -> bool:
        return len(self.connected_components) == 1

    def composable_pairs(self):
        """Iterate ``(b, a, b∘a)`` over all composable pairs."""
        bs, as_ = np.nonzero(self.comp >= 0)
        for b, a in zip(bs.tolist(), as_.tolist()):
            yield b, a, int(self.comp[b, a])

    @cached_property
    def poset_dimension(self) -> int:
        """Longest chain of non-isomorphisms between iso classes (EI categories)."""
        classes = self.iso_classes
        idx = {x: i for i, c in enumerate(classes) for x in c}
        k = len(classes)
        below = [set() for _ in range(k)]
        for f in range(self.n_mor):
            a, b = idx[int(self.src[f])], idx[int(self.dst[f])]
            if a != b:
                below[b].add(a)
        memo: dict[int, int] = {}

        def height(c):
            if c not in memo:
                memo[c] = max((height(d) + 1 for d in below[c]), default=0)
            return memo[c]

        return max((height(c) for c in range(k)), default=-1)

    def to_json(self) -> str:
        """Debug serialization: objects, morphism list and composition table."""
        doc = {
            "objects": [str(o) for o in self.obj_labels],
            "morphisms": [
                {"id": i, "src": int(self.src[i]), "dst": int(self.dst[i]), "payload": str(self.payload[i])}
                for i in range(self.n_mor)
            ],
            "composition": [[b, a, c] for b, a, c in self.composable_pairs()],
        }
        return json.dumps(doc, sort_keys=True)


class TransporterCategory(FiniteCategory):
    """``G∝P``: morphisms ``(g, x, y)`` with ``g.x <= y``; ``(h,y,z)∘(g,x,y) =
    (hg, x, z)``."""

    group: FiniteGroup
    poset: GPoset

    @cached_property
    def element_of(self) -> np.ndarray:
        return np.array([q[0] for q in self.payload], dtype=np.int64)

    def morphism(self, g: int, x: int, y: int) -> int:
        return self._index[(int(g), int(x), int(y))]

    @cached_property
    def _index(self):
        return {q: i for i, q in enumerate(self.payload)}

    def isotropy(self, x: int) -> Subgroup:
        return Subgroup(self.group, tuple(int(self.element_of[f]) for f in self.aut(x)))

    def check_invariants(self):
        """EI property, ``Aut(x) = G_x`` and free Aut-actions on Hom sets."""
        if not self.is_ei:
            raise CategoryError("transporter category is not EI")
        P, G = self.poset, self.group
        for x in range(self.n_obj):
            stab = {g for g in range(G.n) if P.act[g, x] == x}
            if set(self.isotropy(x).elements) != stab:
                raise CategoryError(f"Aut({x}) differs from the isotropy group")
        for x in range(self.n_obj):
            for y in range(self.n_obj):
                H = self.hom[x][y]
                if not H:
                    continue
                for a in H:
                    post = {int(self.comp[u, a]) for u in self.aut(y)}
                    pre = {int(self.comp[a, u]) for u in self.aut(x)}
                    if len(post) != len(self.aut(y)) or len(pre) != len(self.aut(x)):
                        raise CategoryError(f"automorphisms do not act freely on Hom({x}, {y})")
        return True


def build_transporter(G: FiniteGroup, P: GPoset, check: bool = True) -> TransporterCategory:
    if P.group is not None and P.group is not G and P.group.n != G.n:
        raise CategoryError("poset is acted on by a different group")
    act = np.asarray(P.act)
    if act.shape[0] != G.n:
        if act.shape[0] == 1:
            act = np.tile(act, (G.n, 1))
        else:
            raise CategoryError("action table does not match the group")
    mors = []
    for x in range(P.m):
        for y in range(P.m):
            for g in range(G.n):
                if P.leq[act[g, x], y]:
                    mors.append((x, y, (g, x, y)))

    def compose(b, a):
        h, y, z = b
        g, x, _ = a
        return (int(G.mul[h, g]), x, z)

    C = TransporterCategory.from_rule(
        P.m, mors, compose, lambda x: (G.e, x, x), obj_labels=P.labels, name=f"{G.name}∝P", check=check
    )
    C.group = G
    C.poset = P if act is P.act else GPoset(P.leq, group=G, act=act, labels=P.labels, check=False)
    if check:
        C.check_invariants()
    return C


def group_category(G: FiniteGroup) -> TransporterCategory:
    """The one-object category of ``G`` (= ``G∝•``)."""
    return build_transporter(G, point_poset(G))


def poset_category(P: GPoset) -> TransporterCategory:
    """The poset itself as a category (trivial group)."""
    from .groups import cyclic_group

    triv = cyclic_group(1, name="1")
    return build_transporter(triv, GPoset(P.leq, group=triv, labels=P.labels, check=False))


def product_category(C1: FiniteCategory, C2: FiniteCategory) -> FiniteCategory:
    """Objects ``(x1, x2)`` at index ``x1 * n2 + x2``; morphisms likewise."""
    n2, m2 = C2.n_obj, C2.n_mor
    a1 = np.repeat(np.arange(C1.n_mor), m2)
    a2 = np.tile(np.arange(m2), C1.n_mor)
    src = C1.src[a1] * n2 + C2.src[a2]
    dst = C1.dst[a1] * n2 + C2.dst[a2]
    c1 = C1.comp[np.ix_(a1, a1)]
    c2 = C2.comp[np.ix_(a2, a2)]
    comp = np.where((c1 >= 0) & (c2 >= 0), c1 * m2 + c2, -1)
    ids = [C1.identities[x] * m2 + C2.identities[y] for x in range(C1.n_obj) for y in range(n2)]
    payload = [(C1.payload[i], C2.payload[j]) for i in range(C1.n_mor) for j in range(m2)]
    labels = [(u, v) for u in C1.obj_labels for v in C2.obj_labels]
    return FiniteCategory(C1.n_obj * n2, src, dst, comp, ids, payload=payload, obj_labels=labels,
                          name=f"({C1.name})x({C2.name})", check=False)


def opposite_category(C: FiniteCategory) -> FiniteCategory:
    """Same morphism ids with source and target exchanged."""
    return FiniteCategory(C.n_obj, C.dst, C.src, C.comp.T.copy(), C.identities, payload=C.payload,
                          obj_labels=C.obj_labels, name=f"({C.name})^op", check=False)


def enveloping_category(C: FiniteCategory) -> FiniteCategory:
    """``C^e = C x C^op``."""
    E = product_category(C, opposite_category(C))
    E.name = f"({C.name})^e"
    return E


def factorization_category(C: FiniteCategory) -> FiniteCategory:
    """``F(C)``: objects are morphisms of C; a morphism ``[α] -> [β]`` is a pair
    ``(μ, γ)`` with ``β = μαγ``.  Stored with payload ``(μ, α, γ)``."""
    comp = C.comp
    mors = []
    for alpha in range(C.n_mor):
        x, y = int(C.src[alpha]), int(C.dst[alpha])
        for gamma in np.flatnonzero(C.dst == x).tolist():
            ag = int(comp[alpha, gamma])
            for mu in np.flatnonzero(C.src == y).tolist():
                beta = int(comp[mu, ag])
                mors.append((alpha, beta, (mu, alpha, gamma)))

    def compose(b, a):
        mu2, _, gamma2 = b
        mu, alpha, gamma = a
        return (int(comp[mu2, mu]), alpha, int(comp[gamma, gamma2]))

    def identity_of(alpha):
        return (C.identities[int(C.dst[alpha])], alpha, C.identities[int(C.src[alpha])])

    return FiniteCategory.from_rule(C.n_mor, mors, compose, identity_of, obj_labels=list(range(C.n_mor)),
                                    name=f"F({C.name})", check=False)


def full_subcategory(C: FiniteCategory, objects) -> tuple[FiniteCategory, "Functor"]:
    """Full subcategory on ``objects`` (kept in the given order) and its inclusion."""
    objects = [int(x) for x in objects]
    pos = {x: i for i, x in enumerate(objects)}
    mors = [f for f in range(C.n_mor) if int(C.src[f]) in pos and int(C.dst[f]) in pos]
    mpos = {f: i for i, f in enumerate(mors)}
    sub = C.comp[np.ix_(mors, mors)]
    comp = np.where(sub >= 0, np.vectorize(lambda v: mpos.get(int(v), -1))(sub), -1) if mors else sub
    src = [pos[int(C.src[f])] for f in mors]
    dst = [pos[int(C.dst[f])] for f in mors]
    ids = [mpos[C.identities[x]] for x in objects]
    D = FiniteCategory(len(objects), src, dst, comp, ids, payload=[C.payload[f] for f in mors],
                       obj_labels=[C.obj_labels[x] for x in objects], name=f"{C.name}|{objects}", check=False)
    return D, Functor(D, C, objects, mors)


class Functor:
    """A functor given by object and morphism maps (validated on request)."""

    def __init__(self, source: FiniteCategory, target: FiniteCategory, obj_map, mor_map, check: bool = False):
        self.source = source
        self.target = target
        self.obj_map = np.asarray(obj_map, dtype=np.int64)
        self.mor_map = np.asarray(mor_map, dtype=np.int64)
        if check:
            self.validate()

    def validate(self):
        S, T = self.source, self.target
        om, mm = self.obj_map, self.mor_map
        if not (np.array_equal(T.src[mm], om[S.src]) and np.array_equal(T.dst[mm], om[S.dst])):
            raise CategoryError("functor does not respect sources/targets")
        for x in range(S.n_obj):
            if mm[S.identities[x]] != T.identities[om[x]]:
                raise CategoryError("functor does not preserve identities")
        for b, a, ba in S.composable_pairs():
            if T.comp[mm[b], mm[a]] != mm[ba]:
                raise CategoryError(f"functor does not preserve the composite {b}∘{a}")
        return True


def projection_to_group(C: TransporterCategory) -> tuple[TransporterCategory, Functor]:
    """``π : G∝P -> G``, ``(g, x, y) |-> g``."""
    Gc = group_category(C.group)
    mor_map = [Gc.morphism(int(C.element_of[f]), 0, 0) for f in range(C.n_mor)]
    return Gc, Functor(C, Gc, [0] * C.n_obj, mor_map)


def subgroup_inclusion(C: TransporterCategory, H: Subgroup) -> tuple[TransporterCategory, Functor]:
    """``H∝P -> G∝P`` for a subgroup ``H`` of the acting group."""
    Hg = H.as_group()
    P = C.poset
    act = np.array([P.act[g] for g in H.elements], dtype=np.int64)
    D = build_transporter(Hg, GPoset(P.leq, group=Hg, act=act, labels=P.labels, check=False))
    mor_map = [C.morphism(H.elements[q[0]], q[1], q[2]) for q in D.payload]
    return D, Functor(D, C, list(range(C.n_obj)), mor_map)
