"""Modules over category algebras, stored as functors: a vector space
dimension per object and a matrix per morphism."""

from __future__ import annotations

import json
from functools import cached_property

import numpy as np

from . import linfield as lf
from .algebra import (
    SEED,
    CategoryAlgebra,
    aut_algebra,
    equivalent_idempotents,
    primitive_idempotents,
)
from .groups import FiniteGroup
from .transporter import (
    CategoryError,
    FiniteCategory,
    Functor,
    TransporterCategory,
    opposite_category,
)

__all__ = [
    "FunctorModule",
    "ModuleError",
    "trivial_module",
    "zero_module",
    "constant_module",
    "group_representation",
    "regular_representation",
    "trivial_representation",
    "atomic_truncation",
    "tensor_hat",
    "internal_hom",
    "k_dual",
    "restriction",
    "direct_sum",
    "submodule",
    "quotient",
    "generated_submodule",
    "radical_subspaces",
    "hom_space",
    "hom_dim",
    "is_isomorphic",
    "ProjectiveType",
    "projective_types",
    "indecomposable_projectives",
    "simple_modules",
    "module_from_json",
    "module_to_json",
]


class ModuleError(ValueError):
    pass


class FunctorModule:
    """``dims[x]`` and ``mats[f]`` of shape ``(dims[dst f], dims[src f])``."""

    def __init__(self, C: FiniteCategory, dims, mats, p: int, check: bool = True, name: str = ""):
        self.category = C
        self.p = int(p)
        self.dims = tuple(int(d) for d in dims)
        if len(self.dims) != C.n_obj:
            raise ModuleError("one dimension per object required")
        self.mats = tuple(np.asarray(m, dtype=np.int64).reshape(self.dims[C.dst[f]], self.dims[C.src[f]]) % self.p
                          for f, m in enumerate(mats))
        if len(self.mats) != C.n_mor:
            raise ModuleError("one matrix per morphism required")
        for m in self.mats:
            m.setflags(write=False)
        self.name = name
        if check:
            self.check()

    def __repr__(self):
        return f"FunctorModule({self.name} dims={self.dims})"

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def check(self):
        C, p = self.category, self.p
        for x, i in enumerate(C.identities):
            if not np.array_equal(self.mats[i], np.eye(self.dims[x], dtype=np.int64)):
                raise ModuleError(f"identity of object {x} does not act as the identity")
        for b, a, ba in C.composable_pairs():
            if not np.array_equal(lf.matmul(self.mats[b], self.mats[a], p), self.mats[ba]):
                raise ModuleError(f"functoriality fails on the composite {b}∘{a}")
        return True

    def act(self, algebra_element, x: int) -> np.ndarray:
        """Matrix of ``Σ c_f f`` restricted to ``M(x) -> ⊕``; only endomorphisms of x used."""
        C = self.category
        d = self.dims[x]
        out = np.zeros((d, d), dtype=np.int64)
        for f in C.hom[x][x]:
            c = int(algebra_element[f]) % self.p
            if c:
                out = (out + c * self.mats[f]) % self.p
        return out

    def aut_action(self, x: int, vec_over_aut) -> np.ndarray:
        """Matrix of an element of kAut(x) given by coefficients on ``C.aut(x)``."""
        d = self.dims[x]
        out = np.zeros((d, d), dtype=np.int64)
        for c, u in zip(vec_over_aut, self.category.aut(x)):
            if c:
                out = (out + int(c) * self.mats[u]) % self.p
        return out

    def support(self) -> tuple[int, ...]:
        return tuple(x for x, d in enumerate(self.dims) if d)


def zero_module(C: FiniteCategory, p: int) -> FunctorModule:
    return FunctorModule(C, [0] * C.n_obj, [np.zeros((0, 0))] * C.n_mor, p, check=False)


def trivial_module(C: FiniteCategory, p: int) -> FunctorModule:
    return FunctorModule(C, [1] * C.n_obj, [np.ones((1, 1))] * C.n_mor, p, check=False, name="k")


# -- group representations and constant modules --------------------------------
def group_representation(G: FiniteGroup, gen_matrices: dict, p: int) -> dict:
    """Close matrices on generators into a representation ``{g: M(g)}``.

    Raises :class:`ModuleError` if the matrices do not satisfy the group's
    relations (two words for the same element give different matrices, or a
    product ``M(g)M(h) != M(gh)``).
    """
    gens = {int(g): np.asarray(m, dtype=np.int64) % p for g, m in gen_matrices.items()}
    if not gens:
        raise ModuleError("need at least one generator matrix")
    d = next(iter(gens.values())).shape[0]
    rep = {G.e: np.eye(d, dtype=np.int64)}
    frontier = [G.e]
    while frontier:
        nxt = []
        for a in frontier:
            for g, m in gens.items():
                ga = int(G.mul[g, a])
                val = lf.matmul(m, rep[a], p)
                if ga in rep:
                    if not np.array_equal(rep[ga], val):
                        raise ModuleError(f"generator matrices violate a relation at element {ga}")
                else:
                    rep[ga] = val
                    nxt.append(ga)
        frontier = nxt
    if len(rep) != G.n:
        raise ModuleError("generator matrices do not generate the whole group")
    check_representation(G, rep, p)
    return rep


def check_representation(G: FiniteGroup, rep: dict, p: int):
    for g in range(G.n):
        for h in range(G.n):
            if not np.array_equal(lf.matmul(rep[g], rep[h], p), rep[int(G.mul[g, h])]):
                raise ModuleError(f"M({g})M({h}) != M({g}{h}): not a representation")
    if not np.array_equal(rep[G.e], np.eye(rep[G.e].shape[0], dtype=np.int64)):
        raise ModuleError("identity does not act as the identity")


def regular_representation(G: FiniteGroup) -> dict:
    out = {}
    for g in range(G.n):
        m = np.zeros((G.n, G.n), dtype=np.int64)
        m[G.mul[g], np.arange(G.n)] = 1
        out[g] = m
    return out


def trivial_representation(G: FiniteGroup) -> dict:
    return {g: np.ones((1, 1), dtype=np.int64) for g in range(G.n)}


def constant_module(C: TransporterCategory, rep: dict, p: int, check: bool = True, name: str = "") -> FunctorModule:
    """``κ_M``: ``M`` at every object, ``(g, x, y)`` acting by ``M(g)``."""
    if check:
        check_representation(C.group, rep, p)
    d = rep[C.group.e].shape[0]
    mats = [rep[int(g)] for g in C.element_of]
    return FunctorModule(C, [d] * C.n_obj, mats, p, check=False, name=name or "kappa")


# -- truncations, sums, tensors, duals -------------------------------------------
def atomic_truncation(M: FunctorModule, x: int) -> FunctorModule:
    """``M_x``: values of M on the iso class of x; zero elsewhere, and every
    morphism leaving or entering the class acts by 0."""
    C = M.category
    cls = set(C.iso_class_of(x))
    dims = [M.dims[y] if y in cls else 0 for y in range(C.n_obj)]
    mats = []
    for f in range(C.n_mor):
        s, d = int(C.src[f]), int(C.dst[f])
        if s in cls and d in cls:
            mats.append(M.mats[f])
        else:
            mats.append(np.zeros((dims[d], dims[s]), dtype=np.int64))
    return FunctorModule(C, dims, mats, M.p, check=False, name=f"{M.name}_{x}")


def direct_sum(*mods: FunctorModule) -> FunctorModule:
    C, p = mods[0].category, mods[0].p
    dims = [sum(M.dims[x] for M in mods) for x in range(C.n_obj)]
    mats = []
    for f in range(C.n_mor):
        blocks = [M.mats[f] for M in mods]
        out = np.zeros((dims[C.dst[f]], dims[C.src[f]]), dtype=np.int64)
        r = c = 0
        for b in blocks:
            out[r:r + b.shape[0], c:c + b.shape[1]] = b
            r += b.shape[0]
            c += b.shape[1]
        mats.append(out)
    return FunctorModule(C, dims, mats, p, check=False, name="+".join(M.name for M in mods))


def _same_category(M, N):
    if M.category is not N.category or M.p != N.p:
        raise CategoryError("modules live over different categories or fields")


def tensor_hat(M: FunctorModule, N: FunctorModule) -> FunctorModule:
    """Objectwise tensor with Kronecker products of the morphism matrices."""
    _same_category(M, N)
    dims = [a * b for a, b in zip(M.dims, N.dims)]
    mats = [np.kron(a, b) % M.p for a, b in zip(M.mats, N.mats)]
    return FunctorModule(M.category, dims, mats, M.p, check=False, name=f"({M.name}⊗{N.name})")


def k_dual(M: FunctorModule, Cop: FiniteCategory | None = None) -> FunctorModule:
    """Dual module over the opposite category (transposed matrices)."""
    Cop = opposite_category(M.category) if Cop is None else Cop
    return FunctorModule(Cop, M.dims, [m.T for m in M.mats], M.p, check=False, name=f"{M.name}^")


def restriction(M: FunctorModule, F: Functor) -> FunctorModule:
    if F.target is not M.category:
        raise CategoryError("functor does not land in the module's category")
    dims = [M.dims[int(y)] for y in F.obj_map]
    mats = [M.mats[int(f)] for f in F.mor_map]
    return FunctorModule(F.source, dims, mats, M.p, check=False, name=f"res {M.name}")


# -- subspaces, submodules, quotients ------------------------------------------
def _rows(a, d):
    a = np.asarray(a, dtype=np.int64)
    if a.size == 0:
        return np.zeros((0, d), dtype=np.int64)
    return a.reshape(-1, d)


def submodule(M: FunctorModule, spaces) -> tuple[FunctorModule, list[np.ndarray]]:
    """Submodule given by subspaces ``spaces[x]`` (row generators). Returns the
    module on RREF bases and those bases (rows)."""
    C, p = M.category, M.p
    bases, pivs = [], []
    for x in range(C.n_obj):
        S = _rows(spaces[x], M.dims[x])
        if S.shape[0]:
            R, piv = lf.rref(S, p)
        else:
            R, piv = S, []
        bases.append(R)
        pivs.append(piv)
    mats = []
    for f in range(C.n_mor):
        s, d = int(C.src[f]), int(C.dst[f])
        img = lf.matmul(bases[s], M.mats[f].T, p)  # rows: images of basis vectors
        coords = img[:, pivs[d]]
        if __debug__ and img.size:
            back = lf.matmul(coords, bases[d], p)
            if not np.array_equal(back, img % p):
                raise ModuleError("subspaces are not closed under the action")
        mats.append(coords.T)
    sub = FunctorModule(C, [b.shape[0] for b in bases], mats, p, check=False, name=f"sub {M.name}")
    return sub, bases


def quotient(M: FunctorModule, spaces) -> tuple[FunctorModule, list[np.ndarray]]:
    """``M / U``; the basis of the quotient at x is the free coordinates of U's
    RREF.  Returns the module and per-object projection matrices."""
    C, p = M.category, M.p
    proj, frees = [], []
    for x in range(C.n_obj):
        d = M.dims[x]
        S = _rows(spaces[x], d)
        R, piv = lf.rref(S, p) if S.shape[0] else (S, [])
        free = [j for j in range(d) if j not in set(piv)]
        # reduce v modulo U, then read the free coordinates
        red = np.eye(d, dtype=np.int64)
        if len(piv):
            red = (red - lf.matmul(R.T, red[piv], p)) % p
        proj.append(red[free])
        frees.append(free)
    mats = []
    for f in range(C.n_mor):
        s, d = int(C.src[f]), int(C.dst[f])
        mats.append(lf.matmul(proj[d], M.mats[f][:, frees[s]], p))
    Q = FunctorModule(C, [q.shape[0] for q in proj], mats, p, check=False, name=f"{M.name}/U")
    return Q, proj


def generated_submodule(M: FunctorModule, gens) -> list[np.ndarray]:
    """Row bases of the submodule generated by vectors ``(x, v)`` with v in M(x)."""
    C, p = M.category, M.p
    rows = [[] for _ in range(C.n_obj)]
    for x, v in gens:
        v = np.asarray(v, dtype=np.int64)
        for y in range(C.n_obj):
            for f in C.hom[x][y]:
                rows[y].append(lf.matmul(M.mats[f], v.reshape(-1, 1), p)[:, 0])
    out = []
    for y in range(C.n_obj):
        if rows[y]:
            R, _ = lf.rref(np.array(rows[y]), p)
        else:
            R = np.zeros((0, M.dims[y]), dtype=np.int64)
        out.append(_rows(R, M.dims[y]))
    return out


def radical_subspaces(M: FunctorModule, aut_radicals) -> list[np.ndarray]:
    """Row bases of rad M: images of non-isomorphisms plus J(kAut(y)) M(y).

    ``aut_radicals[y]`` is a row basis of J(kAut(y)) in the ``C.aut(y)`` basis.
    """
    C, p = M.category, M.p
    out = []
    for y in range(C.n_obj):
        d = M.dims[y]
        cols = []
        if d:
            for f in np.flatnonzero(C.dst == y).tolist():
                if not C.is_iso(f) and M.dims[C.src[f]]:
                    cols.append(M.mats[f])
            for j in aut_radicals[y]:
                cols.append(M.aut_action(y, j))
        if cols:
            B = lf.image_basis(np.concatenate(cols, axis=1), p).T
        else:
            B = np.zeros((0, d), dtype=np.int64)
        out.append(_rows(B, d))
    return out


# -- homomorphisms -------------------------------------------------------------
def _hom_equations(M: FunctorModule, N: FunctorModule):
    C, p = M.category, M.p
    offs = np.cumsum([0] + [N.dims[x] * M.dims[x] for x in range(C.n_obj)])
    rows = []
    for f in range(C.n_mor):
        s, d = int(C.src[f]), int(C.dst[f])
        if f in C.identities:
            continue
        ms, md, ns, nd = M.dims[s], M.dims[d], N.dims[s], N.dims[d]
        if nd * ms == 0:
            continue
        # N_f φ_s - φ_d M_f = 0   (row-major vec of an nd x ms matrix)
        E = np.zeros((nd * ms, offs[-1]), dtype=np.int64)
        if ns * ms:
            E[:, offs[s]:offs[s + 1]] += np.kron(N.mats[f], np.eye(ms, dtype=np.int64))
        if nd * md:
            E[:, offs[d]:offs[d + 1]] -= np.kron(np.eye(nd, dtype=np.int64), M.mats[f].T)
        rows.append(E % p)
    return rows, offs


def hom_space(M: FunctorModule, N: FunctorModule) -> list[list[np.ndarray]]:
    """Basis of Hom(M, N); each element is a list of per-object matrices."""
    _same_category(M, N)
    C, p = M.category, M.p
    rows, offs = _hom_equations(M, N)
    n = int(offs[-1])
    if n == 0:
        return []
    K = lf.nullspace(np.concatenate(rows), p, n) if rows else np.eye(n, dtype=np.int64)
    out = []
    for j in range(K.shape[1]):
        v = K[:, j]
        out.append([v[offs[x]:offs[x + 1]].reshape(N.dims[x], M.dims[x]) for x in range(C.n_obj)])
    return out


def hom_dim(M: FunctorModule, N: FunctorModule) -> int:
    _same_category(M, N)
    rows, offs = _hom_equations(M, N)
    n = int(offs[-1])
    if not rows:
        return n
    return n - lf.rank(np.concatenate(rows), M.p)


def is_isomorphic(M: FunctorModule, N: FunctorModule, tries: int = 64) -> bool:
    """Dimension vectors, then a search for an invertible intertwiner.

    The search tries the basis homomorphisms and seeded random combinations;
    a False answer after ``tries`` attempts is reported as non-isomorphic.
    """
    _same_category(M, N)
    if M.dims != N.dims:
        return False
    if hom_dim(M, M) != hom_dim(M, N) or hom_dim(N, N) != hom_dim(M, N):
        return False
    H = hom_space(M, N)
    if not H:
        return M.total_dim == 0
    p = M.p
    rng = np.random.default_rng(SEED)
    cands = list(H)
    for _ in range(tries):
        c = rng.integers(0, p, size=len(H))
        cands.append([sum(int(ci) * h[x] for ci, h in zip(c, H)) % p for x in range(len(M.dims))])
    for phi in cands:
        if all(lf.rank(phi[x], p) == M.dims[x] for x in range(len(M.dims))):
            return True
    return False


# -- internal hom ------------------------------------------------------------------
def representable(A: CategoryAlgebra, x: int) -> FunctorModule:
    """``kHom(x, -)``; basis at y is ``C.hom[x][y]``."""
    C = A.category
    dims = [len(C.hom[x][y]) for y in range(C.n_obj)]
    idx = [{f: i for i, f in enumerate(C.hom[x][y])} for y in range(C.n_obj)]
    mats = []
    for b in range(C.n_mor):
        s, d = int(C.src[b]), int(C.dst[b])
        m = np.zeros((dims[d], dims[s]), dtype=np.int64)
        for i, a in enumerate(C.hom[x][s]):
            m[idx[d][int(C.comp[b, a])], i] = 1
        mats.append(m)
    return FunctorModule(C, dims, mats, A.p, check=False, name=f"kHom({x},-)")


def internal_hom(M: FunctorModule, N: FunctorModule) -> FunctorModule:
    """``Hom(M, N)(x) = Nat(kHom(x,-) ⊗ M, N)``, functorial by precomposition.

    This is the right adjoint of ``- ⊗ M`` on any finite category; on
    transporter categories it agrees with the groupoid-style description.
    """
    _same_category(M, N)
    C, p = M.category, M.p
    A = CategoryAlgebra(C, p)
    reps = [tensor_hat(representable(A, x), M) for x in range(C.n_obj)]
    bases, offsets, frees = [], [], []
    for x in range(C.n_obj):
        rows, offs = _hom_equations(reps[x], N)
        n = int(offs[-1])
        K = lf.nullspace(np.concatenate(rows), p, n) if rows and n else np.eye(n, dtype=np.int64)
        bases.append(K)
        offsets.append(offs)
        frees.append(_identity_rows(K))
    dims = [K.shape[1] for K in bases]
    mats = []
    for a in range(C.n_mor):
        x, x2 = int(C.src[a]), int(C.dst[a])
        K, K2 = bases[x], bases[x2]
        T = np.zeros((dims[x2], dims[x]), dtype=np.int64)
        for j in range(dims[x]):
            v = K[:, j]
            w = np.zeros(int(offsets[x2][-1]), dtype=np.int64)
            for y in range(C.n_obj):
                fy = v[offsets[x][y]:offsets[x][y + 1]].reshape(N.dims[y], len(C.hom[x][y]) * M.dims[y])
                # precompose with β -> β∘a : kHom(x2, y) -> kHom(x, y), tensored with id_M
                Ay = np.zeros((len(C.hom[x][y]), len(C.hom[x2][y])), dtype=np.int64)
                pos = {f: i for i, f in enumerate(C.hom[x][y])}
                for i, b in enumerate(C.hom[x2][y]):
                    Ay[pos[int(C.comp[b, a])], i] = 1
                g = lf.matmul(fy, np.kron(Ay, np.eye(M.dims[y], dtype=np.int64)), p)
                w[offsets[x2][y]:offsets[x2][y + 1]] = g.reshape(-1)
            T[:, j] = w[frees[x2]]
        mats.append(T)
    return FunctorModule(C, dims, mats, p, check=__debug__, name=f"Hom({M.name},{N.name})")


def _identity_rows(K: np.ndarray) -> list[int]:
    """Rows of a nullspace basis holding the identity on free coordinates."""
    rows = []
    for j in range(K.shape[1]):
        col = K[:, j]
        for i in np.flatnonzero(col == 1):
            if np.count_nonzero(K[i]) == 1:
                rows.append(int(i))
                break
    return rows


# -- projectives and simples ----------------------------------------------------------
class ProjectiveType:
    """``P = kC e`` for a primitive idempotent e of kAut(x).

    ``basis[y]`` is an RREF row basis of ``span{α e : α in Hom(x, y)}`` in
    the coordinates of ``C.hom[x][y]``; ``generator`` is e in P(x).
    """

    def __init__(self, A: CategoryAlgebra, x: int, e_aut: np.ndarray, index: int):
        C, p = A.category, A.p
        self.x, self.index, self.p = x, index, p
        self.e_aut = np.asarray(e_aut, dtype=np.int64) % p
        aut = C.aut(x)
        self.basis, self.pivots = [], []
        for y in range(C.n_obj):
            H = C.hom[x][y]
            pos = {f: i for i, f in enumerate(H)}
            rows = []
            for a in H:
                v = np.zeros(len(H), dtype=np.int64)
                for c, u in zip(self.e_aut, aut):
                    if c:
                        v[pos[int(C.comp[a, u])]] += c
                rows.append(v % p)
            if rows:
                R, piv = lf.rref(np.array(rows), p)
            else:
                R, piv = np.zeros((0, len(H)), dtype=np.int64), []
            self.basis.append(_rows(R, len(H)))
            self.pivots.append(piv)
        mats = []
        for b in range(C.n_mor):
            s, d = int(C.src[b]), int(C.dst[b])
            Hs, Hd = C.hom[x][s], C.hom[x][d]
            pos = {f: i for i, f in enumerate(Hd)}
            perm = np.zeros((len(Hd), len(Hs)), dtype=np.int64)
            for i, a in enumerate(Hs):
                perm[pos[int(C.comp[b, a])], i] = 1
            img = lf.matmul(perm, self.basis[s].T, p)  # columns in kHom(x, d)
            mats.append(img[self.pivots[d], :])
        self.module = FunctorModule(C, [B.shape[0] for B in self.basis], mats, p, check=__debug__,
                                    name=f"P({x},{index})")
        e_full = np.zeros(len(C.hom[x][x]), dtype=np.int64)
        posx = {f: i for i, f in enumerate(C.hom[x][x])}
        for c, u in zip(self.e_aut, aut):
            e_full[posx[u]] = c
        self.generator = e_full[self.pivots[x]]

    @property
    def dims(self):
        return self.module.dims

    def hom_coeffs(self, y: int, coords) -> np.ndarray:
        """Expand P(y)-coordinates into coefficients over ``C.hom[x][y]``."""
        return lf.matmul(np.asarray(coords).reshape(1, -1), self.basis[y], self.p)[0]


def projective_types(A: CategoryAlgebra, objects=None) -> list[ProjectiveType]:
    """One projective per (object, primitive idempotent of kAut(x)).

    ``objects`` defaults to the least representative of each iso class.
    Duplicate idempotents (equivalent ones) are kept; callers dedupe with
    :func:`distinct_projective_types`.
    """
    C = A.category
    if not C.is_ei:
        raise CategoryError("projectives via automorphism idempotents need an EI category")
    objs = [c[0] for c in C.iso_classes] if objects is None else list(objects)
    out = []
    for x in objs:
        B = aut_algebra(A, x)
        for i, e in enumerate(primitive_idempotents(B)):
            out.append(ProjectiveType(A, x, e, i))
    return out


def distinct_projective_types(A: CategoryAlgebra, types=None) -> list[ProjectiveType]:
    types = projective_types(A) if types is None else types
    keep = []
    cache = {}
    for t in types:
        if t.x not in cache:
            cache[t.x] = aut_algebra(A, t.x)
        B = cache[t.x]
        if not any(k.x == t.x and equivalent_idempotents(B, k.e_aut, t.e_aut) for k in keep):
            keep.append(t)
    return keep


def indecomposable_projectives(A: CategoryAlgebra) -> list[FunctorModule]:
    """Indecomposable projectives up to isomorphism, one per simple."""
    return [t.module for t in distinct_projective_types(A)]


def aut_radicals(A: CategoryAlgebra) -> list[np.ndarray]:
    return [aut_algebra(A, y).radical for y in range(A.category.n_obj)]


def simple_modules(A: CategoryAlgebra) -> list[FunctorModule]:
    """Tops of the indecomposable projectives: a simple kAut(x)-module
    spread over the iso class of x, zero elsewhere."""
    rads = aut_radicals(A)
    out = []
    for t in distinct_projective_types(A):
        P = t.module
        S, _ = quotient(P, radical_subspaces(P, rads))
        S.name = f"S({t.x},{t.index})"
        out.append(S)
    return out


# -- JSON ------------------------------------------------------------------------
def module_from_json(spec: dict, C: FiniteCategory, p: int) -> FunctorModule:
    """``{"dims": {obj: d}, "action": {morphism-id: matrix}}``; morphisms not
    listed must be identities (or act between zero spaces)."""
    dims = [0] * C.n_obj
    for k, v in spec["dims"].items():
        dims[int(k)] = int(v)
    action = {int(k): v for k, v in spec.get("action", {}).items()}
    mats = []
    for f in range(C.n_mor):
        s, d = int(C.src[f]), int(C.dst[f])
        if f in action:
            mats.append(np.asarray(action[f], dtype=np.int64).reshape(dims[d], dims[s]))
        elif f in C.identities:
            mats.append(np.eye(dims[s], dtype=np.int64))
        elif dims[s] * dims[d] == 0:
            mats.append(np.zeros((dims[d], dims[s]), dtype=np.int64))
        else:
            raise ModuleError(f"no matrix given for morphism {f}")
    return FunctorModule(C, dims, mats, p)


def module_to_json(M: FunctorModule) -> str:
    C = M.category
    doc = {
        "dims": {str(x): d for x, d in enumerate(M.dims)},
        "action": {str(f): M.mats[f].tolist() for f in range(C.n_mor) if f not in C.identities},
    }
    return json.dumps(doc, sort_keys=True)
