"""Finite G-posets: validated order + action, fixed points, components, chain
counts (Euler characteristic, dimension) and the subgroup posets S_p / E_p."""

from __future__ import annotations

from functools import cached_property

import numpy as np

from .groups import FiniteGroup, Subgroup, elementary_abelian_subgroups, p_subgroups

__all__ = [
    "GPoset",
    "PosetError",
    "fixed_subposet",
    "components",
    "euler_characteristic",
    "build_sp_poset",
    "point_poset",
    "chain_poset",
    "discrete_poset",
    "coset_poset",
    "gposet_from_json",
]


class PosetError(ValueError):
    """Invalid order relation or action; the message names the witness."""


class GPoset:
    """A finite poset with an order-preserving action of ``group``.

    ``leq[x, y]`` is True iff ``x <= y``; ``act[g, x]`` is ``g.x``.  If
    ``group`` is None the acting group is trivial and ``act`` has one row.
    """

    def __init__(self, leq, group: FiniteGroup | None = None, act=None, labels=None, check: bool = True):
        leq = np.asarray(leq, dtype=bool)
        m = leq.shape[0]
        if leq.shape != (m, m):
            raise PosetError("order relation must be a square matrix")
        self.m = m
        self.leq = leq
        self.group = group
        n = 1 if group is None else group.n
        if act is None:
            act = np.tile(np.arange(m, dtype=np.int64), (n, 1))
        act = np.asarray(act, dtype=np.int64).reshape(n, m)
        self.act = act
        self.labels = tuple(labels) if labels is not None else tuple(range(m))
        self.leq.setflags(write=False)
        self.act.setflags(write=False)
        if check:
            self._validate()

    def _validate(self):
        m, leq = self.m, self.leq
        for x in range(m):
            if not leq[x, x]:
                raise PosetError(f"relation is not reflexive at object {x}")
        for x in range(m):
            for y in range(x + 1, m):
                if leq[x, y] and leq[y, x]:
                    raise PosetError(f"relation is not antisymmetric: {x} <= {y} <= {x}")
        for x in range(m):
            for y in np.flatnonzero(leq[x]):
                for z in np.flatnonzero(leq[y]):
                    if not leq[x, z]:
                        raise PosetError(f"relation is not transitive on the triple ({x}, {int(y)}, {int(z)})")
        G = self.group
        if G is None:
            if not np.array_equal(self.act[0], np.arange(m)):
                raise PosetError("trivial group must act trivially")
            return
        for g in range(G.n):
            if sorted(self.act[g].tolist()) != list(range(m)):
                raise PosetError(f"group element {g} does not act by a permutation")
        if not np.array_equal(self.act[G.e], np.arange(m)):
            raise PosetError("identity does not act trivially")
        for g in range(G.n):
            for h in range(G.n):
                if not np.array_equal(self.act[G.mul[g, h]], self.act[g][self.act[h]]):
                    raise PosetError(f"action is not a homomorphism at ({g}, {h})")
        for g in range(G.n):
            a = self.act[g]
            if not np.array_equal(leq[np.ix_(a, a)], leq):
                raise PosetError(f"group element {g} does not preserve the order")

    @classmethod
    def from_covers(cls, m: int, covers, group=None, act=None, labels=None) -> "GPoset":
        """Build from cover pairs ``(i, j)`` meaning ``i < j``; closure is computed."""
        leq = np.eye(m, dtype=bool)
        for i, j in covers:
            if not (0 <= i < m and 0 <= j < m):
                raise PosetError(f"cover ({i}, {j}) refers to a missing object")
            leq[i, j] = True
        # Warshall closure
        for k in range(m):
            leq |= leq[:, k : k + 1] & leq[k : k + 1, :]
        return cls(leq, group=group, act=act, labels=labels)

    def __repr__(self):
        return f"GPoset(m={self.m}, group={self.group!r})"

    def lt(self, x, y) -> bool:
        return x != y and bool(self.leq[x, y])

    @cached_property
    def chain_counts(self) -> tuple[int, ...]:
        """``c[d]`` = number of strict chains ``x_0 < ... < x_d``."""
        m = self.m
        if m == 0:
            return ()
        order = sorted(range(m), key=lambda x: int(self.leq[:, x].sum()))
        ends = {x: [1] for x in range(m)}  # ends[x][d]: chains of length d ending at x
        for x in order:
            acc = [1]
            for y in order:
                if self.lt(y, x):
                    for d, c in enumerate(ends[y]):
                        while len(acc) <= d + 1:
                            acc.append(0)
                        acc[d + 1] += c
            ends[x] = acc
        top = max(len(v) for v in ends.values())
        return tuple(sum(v[d] if d < len(v) else 0 for v in ends.values()) for d in range(top))

    @property
    def dim(self) -> int:
        """Length of the longest strict chain (``-1`` for the empty poset)."""
        return len(self.chain_counts) - 1

    def orbit(self, x: int) -> tuple[int, ...]:
        return tuple(sorted(set(int(v) for v in self.act[:, x])))

    def stabilizer(self, x: int) -> Subgroup:
        if self.group is None:
            raise ValueError("trivial acting group")
        return Subgroup(self.group, tuple(int(g) for g in np.flatnonzero(self.act[:, x] == x)))


def fixed_subposet(P: GPoset, E: Subgroup) -> GPoset:
    """The subposet ``P^E`` of objects fixed by every element of ``E``.

    The result carries the trivial action and ``labels`` = the original
    object indices; restricting the action to ``N_G(E)`` is left to callers.
    """
    objs = [x for x in range(P.m) if all(P.act[g, x] == x for g in E.elements)]
    leq = P.leq[np.ix_(objs, objs)]
    return GPoset(leq, labels=objs, check=False)


def components(P: GPoset) -> list[list[int]]:
    """Connected components of the comparability graph, as sorted label lists."""
    parent = list(range(P.m))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for x, y in zip(*np.nonzero(P.leq)):
        ra, rb = find(int(x)), find(int(y))
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, list[int]] = {}
    for x in range(P.m):
        groups.setdefault(find(x), []).append(P.labels[x])
    return sorted((sorted(v) for v in groups.values()), key=lambda c: c[0])


def euler_characteristic(P: GPoset) -> int:
    """Alternating sum of strict chain counts of the order complex."""
    return sum((-1) ** d * c for d, c in enumerate(P.chain_counts))


def build_sp_poset(G: FiniteGroup, p: int, variant: str = "all-p") -> GPoset:
    """Non-identity p-subgroups (``all-p``) or elementary abelian ones
    (``elementary``), ordered by inclusion, with conjugation action."""
    if G.n % p:
        raise ValueError(f"p = {p} does not divide |G| = {G.n}")
    if variant == "all-p":
        subs = p_subgroups(G, p)
    elif variant == "elementary":
        subs = elementary_abelian_subgroups(G, p)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    subs = [S for S in subs if len(S) > 1]
    index = {S: i for i, S in enumerate(subs)}
    m = len(subs)
    leq = np.array([[a.issubset(b) for b in subs] for a in subs], dtype=bool)
    act = np.array([[index[S.conjugate(g)] for S in subs] for g in range(G.n)], dtype=np.int64)
    return GPoset(leq, group=G, act=act, labels=tuple(S.elements for S in subs))


def point_poset(G: FiniteGroup | None = None) -> GPoset:
    return GPoset(np.ones((1, 1), dtype=bool), group=G)


def chain_poset(length: int = 2, G: FiniteGroup | None = None) -> GPoset:
    """Totally ordered ``0 < 1 < ... < length-1`` with trivial action."""
    idx = np.arange(length)
    return GPoset(idx[:, None] <= idx[None, :], group=G)


def discrete_poset(m: int, G: FiniteGroup | None = None, act=None) -> GPoset:
    return GPoset(np.eye(m, dtype=bool), group=G, act=act)


def coset_poset(G: FiniteGroup, H: Subgroup) -> GPoset:
    """The G-set ``G/H`` (left cosets, left multiplication) as a discrete G-poset."""
    cosets, seen = [], {}
    for g in range(G.n):
        c = frozenset(int(G.mul[g, h]) for h in H.elements)
        if c not in seen:
            seen[c] = len(cosets)
            cosets.append(c)
    act = np.array(
        [[seen[frozenset(int(G.mul[g, x]) for x in c)] for c in cosets] for g in range(G.n)], dtype=np.int64
    )
    return discrete_poset(len(cosets), G=G, act=act)


def gposet_from_json(spec: dict, G: FiniteGroup | None) -> GPoset:
    """``{"objects": m, "covers": [[i, j], ...], "action": [[...]]}``.

    A full relation may be given as ``"leq"`` instead of covers; it is then
    validated as is (no closure), so a non-transitive relation is rejected.
    """
    m = int(spec["objects"])
    act = spec.get("action")
    if "leq" in spec:
        return GPoset(np.asarray(spec["leq"], dtype=bool), group=G, act=act)
    return GPoset.from_covers(m, spec.get("covers", []), group=G, act=act)
