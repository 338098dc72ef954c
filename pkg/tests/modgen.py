"""Module generators shared by the property tests."""

from __future__ import annotations

import numpy as np

from strata import linfield as lf
from strata.rep import FunctorModule, generated_submodule, submodule
from strata.transporter import FiniteCategory


def random_invertible(n, p, rng):
    while True:
        a = rng.integers(0, p, size=(n, n))
        if lf.rank(a, p) == n:
            return a


def rebase(M: FunctorModule, rng) -> FunctorModule:
    """Same module after an independent change of basis at every object."""
    C, p = M.category, M.p
    T = [random_invertible(d, p, rng) if d else np.zeros((0, 0), dtype=np.int64) for d in M.dims]
    Ti = [lf.inverse(t, p) if t.size else t for t in T]
    mats = [lf.matmul(lf.matmul(T[C.dst[f]], M.mats[f], p), Ti[C.src[f]], p) for f in range(C.n_mor)]
    return FunctorModule(C, M.dims, mats, p)


def relabel(C: FiniteCategory, rng, modules=()):
    """Copy of C with shuffled object and morphism ids, and the modules carried along."""
    op = rng.permutation(C.n_obj)  # new object x is old op[x]
    mp = rng.permutation(C.n_mor)  # new morphism i is old mp[i]
    oinv = np.argsort(op)
    minv = np.argsort(mp)
    src = oinv[C.src[mp]]
    dst = oinv[C.dst[mp]]
    old = C.comp[np.ix_(mp, mp)]
    comp = np.where(old >= 0, minv[np.where(old >= 0, old, 0)], -1)
    ids = [int(minv[C.identities[int(op[x])]]) for x in range(C.n_obj)]
    D = FiniteCategory(C.n_obj, src, dst, comp, ids, check=True)
    out = [FunctorModule(D, [M.dims[int(op[x])] for x in range(C.n_obj)], [M.mats[int(f)] for f in mp], M.p)
           for M in modules]
    return D, out


def random_cyclic(M: FunctorModule, rng, gens: int = 1) -> FunctorModule:
    """Submodule of M generated by a few random vectors."""
    C = M.category
    support = [x for x in range(C.n_obj) if M.dims[x]]
    picks = []
    for _ in range(gens):
        x = int(rng.choice(support))
        picks.append((x, rng.integers(0, M.p, size=M.dims[x])))
    spaces = generated_submodule(M, picks)
    S, _ = submodule(M, spaces)
    return S
