"""Finite groups as multiplication tables, plus the subgroup machinery used for
Quillen pairs (elementary abelian p-subgroups, normalizers, centralizers,
Weyl groups)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product as iproduct

import numpy as np

from .linfield import is_prime

__all__ = [
    "FiniteGroup",
    "Subgroup",
    "PairStabilizers",
    "elementary_abelian_subgroups",
    "p_subgroups",
    "pair_stabilizers",
    "group_from_json",
    "cyclic_group",
    "direct_product",
]

MAX_ORDER = 64


class FiniteGroup:
    """A group given by its multiplication table ``mul[a, b] = a*b``.

    ``labels`` is an optional tuple naming the elements (for permutation
    groups: the permutations themselves).
    """

    def __init__(self, mul, labels=None, name: str = "", check: bool = True):
        mul = np.asarray(mul, dtype=np.int64)
        n = mul.shape[0]
        if mul.shape != (n, n) or n == 0:
            raise ValueError("multiplication table must be a nonempty square array")
        if n > MAX_ORDER:
            raise ValueError(f"group order {n} exceeds the supported ceiling {MAX_ORDER}")
        if mul.min() < 0 or mul.max() >= n:
            raise ValueError("table entries must be element indices")
        self.mul = mul
        self.mul.setflags(write=False)
        self.n = n
        self.name = name
        self.labels = tuple(labels) if labels is not None else tuple(range(n))
        ids = [e for e in range(n) if np.array_equal(mul[e], np.arange(n)) and np.array_equal(mul[:, e], np.arange(n))]
        if not ids:
            raise ValueError("table has no two-sided identity")
        self.e = ids[0]
        inv = np.full(n, -1, dtype=np.int64)
        for a in range(n):
            hit = np.flatnonzero(mul[a] == self.e)
            if hit.size != 1 or mul[hit[0], a] != self.e:
                raise ValueError(f"element {a} has no two-sided inverse")
            inv[a] = hit[0]
        self.inv = inv
        self.inv.setflags(write=False)
        if check:
            for row in mul:
                if len(set(row.tolist())) != n:
                    raise ValueError("table is not a Latin square")
            left = mul[mul]  # left[a, b, c] = (ab)c
            right = mul[np.arange(n)[:, None, None], mul[None, :, :]]  # a(bc)
            bad = np.argwhere(left != right)
            if bad.size:
                a, b, c = bad[0]
                raise ValueError(f"associativity fails on ({a}, {b}, {c})")

    def __len__(self):
        return self.n

    def __repr__(self):
        return f"FiniteGroup({self.name or self.n})"

    @classmethod
    def from_permutations(cls, gens, name: str = "") -> "FiniteGroup":
        """Close permutation generators into a table.

        Elements are sorted lexicographically, so the identity is index 0.
        """
        gens = [tuple(int(i) for i in g) for g in gens]
        if not gens:
            raise ValueError("need at least one generator")
        deg = len(gens[0])
        if any(len(g) != deg or sorted(g) != list(range(deg)) for g in gens):
            raise ValueError("generators must be permutations of a common degree")
        ident = tuple(range(deg))
        seen = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    c = tuple(g[i] for i in a)  # g after a
                    if c not in seen:
                        seen.add(c)
                        nxt.append(c)
                        if len(seen) > MAX_ORDER:
                            raise ValueError(f"generated group exceeds order {MAX_ORDER}")
            frontier = nxt
        elems = sorted(seen)
        index = {g: i for i, g in enumerate(elems)}
        n = len(elems)
        mul = np.empty((n, n), dtype=np.int64)
        for i, a in enumerate(elems):
            for j, b in enumerate(elems):
                # (a*b)(k) = a(b(k)): apply b first
                mul[i, j] = index[tuple(a[b[k]] for k in range(deg))]
        return cls(mul, labels=elems, name=name, check=False)

    # -- element operations -------------------------------------------------
    def op(self, a: int, b: int) -> int:
        return int(self.mul[a, b])

    def conj(self, g: int, h: int) -> int:
        """``g h g^-1``."""
        return int(self.mul[self.mul[g, h], self.inv[g]])

    def order_of(self, g: int) -> int:
        k, x = 1, g
        while x != self.e:
            x = int(self.mul[x, g])
            k += 1
        return k

    def closure(self, gens) -> frozenset:
        elems = {self.e}
        frontier = [self.e]
        gens = list(gens)
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    c = int(self.mul[a, g])
                    if c not in elems:
                        elems.add(c)
                        nxt.append(c)
            frontier = nxt
        return frozenset(elems)

    def subgroup(self, gens) -> "Subgroup":
        return Subgroup(self, tuple(sorted(self.closure(gens))))

    @cached_property
    def trivial(self) -> "Subgroup":
        return Subgroup(self, (self.e,))

    @cached_property
    def whole(self) -> "Subgroup":
        return Subgroup(self, tuple(range(self.n)))

    @cached_property
    def subgroups(self) -> tuple["Subgroup", ...]:
        """All subgroups, by breadth-first closure ``<H, g>`` from the trivial group."""
        found = {frozenset([self.e])}
        frontier = [frozenset([self.e])]
        while frontier:
            nxt = []
            for H in frontier:
                for g in range(self.n):
                    if g in H:
                        continue
                    K = self.closure(list(H) + [g])
                    if K not in found:
                        found.add(K)
                        nxt.append(K)
            frontier = nxt
        subs = [Subgroup(self, tuple(sorted(H))) for H in found]
        subs.sort(key=lambda S: (len(S), S.elements))
        return tuple(subs)

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup
    elements: tuple

    def __post_init__(self):
        els = tuple(sorted(int(x) for x in self.elements))
        object.__setattr__(self, "elements", els)
        G = self.parent
        s = set(els)
        if G.e not in s:
            raise ValueError("subgroup must contain the identity")
        for a in els:
            if int(G.inv[a]) not in s:
                raise ValueError("subset not closed under inverses")
            for b in els:
                if int(G.mul[a, b]) not in s:
                    raise ValueError("subset not closed under multiplication")

    def __len__(self):
        return len(self.elements)

    def __contains__(self, g):
        return int(g) in self._set

    def __iter__(self):
        return iter(self.elements)

    def __hash__(self):
        return hash(self.elements)

    def __eq__(self, other):
        return isinstance(other, Subgroup) and self.elements == other.elements and self.parent is other.parent

    def __repr__(self):
        return f"Subgroup(order={len(self)}, elements={self.elements})"

    @cached_property
    def _set(self) -> frozenset:
        return frozenset(self.elements)

    def issubset(self, other: "Subgroup") -> bool:
        return self._set <= other._set

    def conjugate(self, g: int) -> "Subgroup":
        return Subgroup(self.parent, tuple(self.parent.conj(g, h) for h in self.elements))

    def is_abelian(self) -> bool:
        G = self.parent
        return all(G.mul[a, b] == G.mul[b, a] for a in self.elements for b in self.elements)

    def is_p_group(self, p: int) -> bool:
        n = len(self)
        while n % p == 0:
            n //= p
        return n == 1

    def is_elementary_abelian(self, p: int) -> bool:
        G = self.parent
        if not self.is_p_group(p) or not self.is_abelian():
            return False
        return all(G.order_of(g) in (1, p) for g in self.elements)

    def p_rank(self, p: int) -> int:
        """``r`` with ``|E| = p**r``; only meaningful for p-groups."""
        n, r = len(self), 0
        while n % p == 0:
            n //= p
            r += 1
        if n != 1:
            raise ValueError("not a p-group")
        return r

    def as_group(self) -> FiniteGroup:
        """The subgroup as a standalone table group (element i = elements[i])."""
        idx = {g: i for i, g in enumerate(self.elements)}
        G = self.parent
        mul = np.array([[idx[int(G.mul[a, b])] for b in self.elements] for a in self.elements], dtype=np.int64)
        labels = tuple(G.labels[g] for g in self.elements)
        return FiniteGroup(mul, labels=labels, check=False)

    def normalizer(self) -> "Subgroup":
        G = self.parent
        return Subgroup(G, tuple(g for g in range(G.n) if self.conjugate(g) == self))

    def centralizer(self) -> "Subgroup":
        G = self.parent
        return Subgroup(G, tuple(g for g in range(G.n) if all(G.conj(g, h) == h for h in self.elements)))

    def subgroups(self) -> list["Subgroup"]:
        return [H for H in self.parent.subgroups if H.issubset(self)]


def elementary_abelian_subgroups(G: FiniteGroup, p: int) -> list[Subgroup]:
    """All elementary abelian p-subgroups of ``G``, the trivial one included.

    Sorted by order, then by element tuple; ``E.p_rank(p)`` gives the rank.
    The list is closed under conjugation because it is the full list.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return [S for S in G.subgroups if S.is_elementary_abelian(p)]


def p_subgroups(G: FiniteGroup, p: int) -> list[Subgroup]:
    return [S for S in G.subgroups if S.is_p_group(p)]


@dataclass(frozen=True)
class PairStabilizers:
    normalizer: Subgroup
    centralizer: Subgroup
    weyl_reps: tuple

    @property
    def weyl_order(self) -> int:
        return len(self.weyl_reps)


def pair_stabilizers(G: FiniteGroup, E: Subgroup, C, action) -> PairStabilizers:
    """Normalizer, centralizer and Weyl group of a pair ``(E, C)``.

    ``action[g][x]`` is the image of object ``x`` under ``g``; ``C`` is a set
    of objects.  ``N = {g : gEg^-1 = E, gC = C}``, ``Z = {g in N : g
    centralizes E}`` and the Weyl group ``N/Z`` is returned as the minimal
    element of each left coset ``gZ``.
    """
    act = np.asarray(action, dtype=np.int64)
    if act.ndim != 2 or act.shape[0] != G.n:
        raise ValueError("action table must have one row per group element")
    m = act.shape[1]
    C = frozenset(int(x) for x in C)
    if not C or any(not (0 <= x < m) for x in C):
        raise ValueError("object set is empty or outside the action domain")
    N = tuple(
        g
        for g in range(G.n)
        if E.conjugate(g) == E and frozenset(int(act[g, x]) for x in C) == C
    )
    Z = tuple(g for g in N if all(G.conj(g, h) == h for h in E.elements))
    Nsub, Zsub = Subgroup(G, N), Subgroup(G, Z)
    reps, covered = [], set()
    for g in Nsub.elements:
        if g in covered:
            continue
        coset = {int(G.mul[g, z]) for z in Zsub.elements}
        covered |= coset
        reps.append(min(coset))
    return PairStabilizers(Nsub, Zsub, tuple(reps))


def cyclic_group(n: int, name: str = "") -> FiniteGroup:
    mul = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
    return FiniteGroup(mul, name=name or f"C{n}", check=False)


def direct_product(G: FiniteGroup, H: FiniteGroup, name: str = "") -> FiniteGroup:
    """``G x H`` with element ``(g, h)`` at index ``g * |H| + h``."""
    n, m = G.n, H.n
    mul = np.empty((n * m, n * m), dtype=np.int64)
    for (a, b), (c, d) in iproduct(iproduct(range(n), range(m)), repeat=2):
        mul[a * m + b, c * m + d] = G.mul[a, c] * m + H.mul[b, d]
    labels = tuple((x, y) for x in G.labels for y in H.labels)
    return FiniteGroup(mul, labels=labels, name=name or f"{G.name}x{H.name}", check=False)


def group_from_json(spec: dict) -> FiniteGroup:
    """``{"order": n, "mul": [[...]]}`` or ``{"permgens": [[...]]}``."""
    if "mul" in spec:
        mul = np.asarray(spec["mul"], dtype=np.int64)
        if "order" in spec and int(spec["order"]) != mul.shape[0]:
            raise ValueError("declared order does not match the table")
        return FiniteGroup(mul, name=spec.get("name", ""))
    if "permgens" in spec:
        return FiniteGroup.from_permutations(spec["permgens"], name=spec.get("name", ""))
    raise ValueError("group spec needs 'mul' or 'permgens'")
