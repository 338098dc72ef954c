"""Brute-force reference computations, independent of the package internals.

They only read the raw tables (composition, matrices) and never call the
resolution, radical or idempotent code they are used to check.
"""

from __future__ import annotations

import itertools

import numpy as np


def _rank_mod_p(a, p):
    a = np.array(a, dtype=np.int64) % p
    if a.size == 0:
        return 0
    a = a.copy()
    r = 0
    rows, cols = a.shape
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if a[i, c]:
                piv = i
                break
        if piv is None:
            continue
        a[[r, piv]] = a[[piv, r]]
        a[r] = (a[r] * pow(int(a[r, c]), p - 2, p)) % p
        for i in range(rows):
            if i != r and a[i, c]:
                a[i] = (a[i] - a[i, c] * a[r]) % p
        r += 1
        if r == rows:
            break
    return r


def nerve_chains(C, n):
    """Strings (x0, (α1, ..., αn)) of composable non-identity morphisms."""
    ids = set(int(i) for i in C.identities)
    nonid = [f for f in range(C.n_mor) if f not in ids]
    if n == 0:
        return [(x, ()) for x in range(C.n_obj)]
    out = []
    for x0, prev in nerve_chains(C, n - 1):
        end = x0 if not prev else int(C.dst[prev[-1]])
        for f in nonid:
            if int(C.src[f]) == end:
                out.append((x0, prev + (f,)))
    return out


def nerve_cohomology_dims(C, dims, mats, p, n_max):
    """dim H^n of the normalized cochains ``Π M(x_n)`` over nerve strings,
    for a covariant module given by ``dims`` and ``mats``; equals
    Ext^n(k, M) over the category algebra."""
    ids = set(int(i) for i in C.identities)
    chains = [nerve_chains(C, n) for n in range(n_max + 2)]

    def end(ch):
        x0, fs = ch
        return x0 if not fs else int(C.dst[fs[-1]])

    def offsets(cs):
        off, o = {}, 0
        for ch in cs:
            off[ch] = o
            o += dims[end(ch)]
        return off, o

    deltas = []
    for n in range(n_max + 1):
        src_off, ns = offsets(chains[n])
        dst_off, nd = offsets(chains[n + 1])
        d = np.zeros((nd, ns), dtype=np.int64)
        for ch in chains[n + 1]:
            x0, fs = ch
            r0 = dst_off[ch]
            dy = dims[end(ch)]
            if dy == 0:
                continue
            # i = 0: drop the first arrow
            face = (int(C.dst[fs[0]]), fs[1:])
            c0 = src_off[face]
            d[r0:r0 + dy, c0:c0 + dy] += np.eye(dy, dtype=np.int64)
            # inner faces compose neighbours
            for i in range(1, len(fs)):
                g = int(C.comp[fs[i], fs[i - 1]])
                if g in ids:
                    continue
                face = (x0, fs[:i - 1] + (g,) + fs[i + 1:])
                c0 = src_off[face]
                d[r0:r0 + dy, c0:c0 + dy] += (-1) ** i * np.eye(dy, dtype=np.int64)
            # last face pushes forward along the last arrow
            face = (x0, fs[:-1])
            xe = end(face)
            c0 = src_off[face]
            d[r0:r0 + dy, c0:c0 + dims[xe]] += (-1) ** len(fs) * np.asarray(mats[fs[-1]], dtype=np.int64)
        deltas.append(d % p)
    out = []
    for n in range(n_max + 1):
        size = deltas[n].shape[1]
        r_out = _rank_mod_p(deltas[n], p)
        r_in = _rank_mod_p(deltas[n - 1], p) if n else 0
        out.append(size - r_out - r_in)
    return out


def brute_hom_dim(M, N):
    """Count natural transformations by enumeration (small F_p only)."""
    p = M.p
    C = M.category
    shapes = [(N.dims[x], M.dims[x]) for x in range(C.n_obj)]
    total = sum(a * b for a, b in shapes)
    count = 0
    for vals in itertools.product(range(p), repeat=total):
        comps, o = [], 0
        for a, b in shapes:
            comps.append(np.array(vals[o:o + a * b], dtype=np.int64).reshape(a, b))
            o += a * b
        ok = True
        for f in range(C.n_mor):
            s, d = int(C.src[f]), int(C.dst[f])
            if not np.array_equal((N.mats[f] @ comps[s]) % p, (comps[d] @ M.mats[f]) % p):
                ok = False
                break
        count += ok
    dim = 0
    while p**dim < count:
        dim += 1
    assert p**dim == count
    return dim


def _structure(prod, n):
    """T[i, j, k] = coefficient of b_k in b_i b_j."""
    T = np.zeros((n, n, n), dtype=np.int64)
    I, J = np.nonzero(np.asarray(prod) >= 0)
    T[I, J, np.asarray(prod)[I, J]] = 1
    return T


def _all_elements(n, p):
    return np.array(list(itertools.product(range(p), repeat=n)), dtype=np.int64).reshape(-1, n)


def _count_to_dim(count, p):
    dim = 0
    while p**dim < count:
        dim += 1
    assert p**dim == count
    return dim


def brute_radical_dim(prod, unit, p):
    """dim of ``{a : x a nilpotent for every x}`` by enumerating the algebra."""
    n = len(unit)
    T = _structure(prod, n)
    X = _all_elements(n, p)
    count = 0
    for a in X:
        xa = np.einsum("ui,ijk,j->uk", X, T, a) % p
        M = np.einsum("ui,ijk->ujk", xa, T) % p  # left multiplication by xa (row-vector convention)
        P = M.copy()
        for _ in range(int(np.ceil(np.log2(max(n, 2)))) + 1):
            P = np.einsum("uij,ujk->uik", P, P) % p
        count += not P.any()
    return _count_to_dim(count, p)


def brute_central_idempotents(prod, unit, p):
    """Number of central idempotents (= 2^#blocks) by enumeration."""
    n = len(unit)
    T = _structure(prod, n)
    Z = _all_elements(n, p)
    sq = np.einsum("ui,uj,ijk->uk", Z, Z, T) % p
    idem = Z[(sq == Z).all(axis=1)]
    left = np.einsum("ui,ijk->ujk", idem, T) % p  # z b_j
    right = np.einsum("ui,jik->ujk", idem, T) % p  # b_j z
    return int((left == right).all(axis=(1, 2)).sum())


def brute_chain_counts(leq):
    """Strict chain counts by enumerating increasing index sequences."""
    m = len(leq)
    counts = []
    for length in range(1, m + 1):
        c = 0
        for seq in itertools.permutations(range(m), length):
            if all(leq[seq[i]][seq[i + 1]] and seq[i] != seq[i + 1] for i in range(length - 1)):
                c += 1
        if c == 0:
            break
        counts.append(c)
    return counts


def brute_subgroups(G):
    """All subgroups of a small group, as sorted tuples (subset enumeration)."""
    out = set()
    others = [g for g in range(G.n) if g != G.e]
    for r in range(len(others) + 1):
        for sub in itertools.combinations(others, r):
            S = set(sub) | {G.e}
            if all(int(G.mul[a, b]) in S for a in S for b in S):
                out.add(tuple(sorted(S)))
    return sorted(out)


def brute_quillen_pairs(G, leq, act, p):
    """Pairs (E, component of P^E) and their conjugation classes, with the
    Weyl order |N_G(E, C)| / |C_G(E)| of each class, from scratch."""
    m = len(leq)
    pairs = []
    for H in brute_subgroups(G):
        if not all(G.order_of(g) in (1, p) for g in H):
            continue
        if not all(G.mul[a, b] == G.mul[b, a] for a in H for b in H):
            continue
        fixed = [x for x in range(m) if all(act[g][x] == x for g in H)]
        seen = set()
        for x in fixed:
            if x in seen:
                continue
            comp, stack = {x}, [x]
            while stack:
                u = stack.pop()
                for v in fixed:
                    if v not in comp and (leq[u][v] or leq[v][u]):
                        comp.add(v)
                        stack.append(v)
            seen |= comp
            pairs.append((H, tuple(sorted(comp))))

    def move(g, pair):
        H, comp = pair
        Hg = tuple(sorted(int(G.mul[G.mul[g, h], G.inv[g]]) for h in H))
        return Hg, tuple(sorted(int(act[g][x]) for x in comp))

    classes, done = [], set()
    for q in pairs:
        if q in done:
            continue
        orbit = {move(g, q) for g in range(G.n)}
        done |= orbit
        H, comp = q
        N = [g for g in range(G.n) if move(g, q) == q]
        Cg = [g for g in N if all(G.mul[g, h] == G.mul[h, g] for h in H)]
        rank = 0
        while p**rank < len(H):
            rank += 1
        classes.append((rank, len(orbit), len(N) // len(Cg)))
    return pairs, sorted(classes)
