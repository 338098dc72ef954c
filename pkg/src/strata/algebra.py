"""Algebras with a monomial basis (category algebras, group algebras, skew
group algebras): products, Jacobson radical, center, blocks, primitive
idempotents, and the identification k(G∝P) = kP[G]."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_factor, gf_gcdex, gf_mul, gf_pow, gf_quo, gf_rem

from . import linfield as lf
from .groups import FiniteGroup
from .gposet import GPoset
from .transporter import CategoryError, FiniteCategory, TransporterCategory, build_transporter

__all__ = [
    "BasisAlgebra",
    "CategoryAlgebra",
    "BlockDecomposition",
    "build_algebra",
    "group_algebra",
    "aut_algebra",
    "matrix_algebra_radical",
    "radical",
    "category_radical",
    "semisimple_quotient_radical_dim",
    "minimal_polynomial",
    "equivalent_idempotents",
    "SkewIso",
    "center",
    "blocks",
    "primitive_idempotents",
    "is_primitive_idempotent",
    "skew_group_algebra",
    "skew_iso",
    "algebra_report",
    "SEED",
]

SEED = 20240917  # fixed seed for sampled checks and idempotent search


class BasisAlgebra:
    """Algebra over F_p with basis ``b_0..b_{n-1}`` and ``b_i * b_j`` either a
    basis element ``prod[i, j]`` or 0 (``-1``)."""

    def __init__(self, prod, unit, p: int, labels=None, name: str = ""):
        self.prod = np.asarray(prod, dtype=np.int64)
        self.n = self.prod.shape[0]
        self.p = lf.PrimeField(p).p
        self.unit = np.asarray(unit, dtype=np.int64) % self.p
        self.labels = tuple(labels) if labels is not None else tuple(range(self.n))
        self.name = name
        I, J = np.nonzero(self.prod >= 0)
        self._I, self._J, self._K = I, J, self.prod[I, J]

    @property
    def dim(self) -> int:
        return self.n

    def __repr__(self):
        return f"{type(self).__name__}({self.name} dim={self.n}, p={self.p})"

    def basis_vector(self, i: int) -> np.ndarray:
        v = np.zeros(self.n, dtype=np.int64)
        v[i] = 1
        return v

    def mul(self, u, v) -> np.ndarray:
        u = np.asarray(u, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        w = u[self._I] * v[self._J]
        nz = w != 0
        out = np.zeros(self.n, dtype=np.int64)
        np.add.at(out, self._K[nz], w[nz])
        return out % self.p

    def left_matrix(self, u) -> np.ndarray:
        """``L`` with ``L @ v = u * v``."""
        u = np.asarray(u, dtype=np.int64)
        L = np.zeros((self.n, self.n), dtype=np.int64)
        np.add.at(L, (self._K, self._J), u[self._I])
        return L % self.p

    def right_matrix(self, v) -> np.ndarray:
        """``R`` with ``R @ u = u * v``."""
        v = np.asarray(v, dtype=np.int64)
        R = np.zeros((self.n, self.n), dtype=np.int64)
        np.add.at(R, (self._K, self._I), v[self._J])
        return R % self.p

    def power(self, u, k: int, unit=None) -> np.ndarray:
        result = self.unit.copy() if unit is None else np.asarray(unit) % self.p
        base = np.asarray(u, dtype=np.int64) % self.p
        while k:
            if k & 1:
                result = self.mul(result, base)
            k >>= 1
            if k:
                base = self.mul(base, base)
        return result

    def is_nilpotent(self, u) -> bool:
        x = np.asarray(u, dtype=np.int64) % self.p
        for _ in range(self.n + 1):
            if not x.any():
                return True
            x = self.mul(x, u)
        return not x.any()

    def check_axioms(self, exhaustive_limit: int = 64, samples: int = 4000) -> bool:
        """Associativity on all basis triples (dim <= limit) or a seeded sample,
        and the two-sided unit law on every basis element."""
        n, prod = self.n, self.prod
        ext = np.pad(np.where(prod < 0, n, prod), ((0, 1), (0, 1)), constant_values=n)
        if n <= exhaustive_limit:
            a = np.arange(n)
            left = ext[ext[a[:, None, None], a[None, :, None]], a[None, None, :]]
            right = ext[a[:, None, None], ext[a[None, :, None], a[None, None, :]]]
            if not np.array_equal(left, right):
                raise ArithmeticError("basis product is not associative")
        else:
            rng = np.random.default_rng(SEED)
            t = rng.integers(0, n, size=(samples, 3))
            left = ext[ext[t[:, 0], t[:, 1]], t[:, 2]]
            right = ext[t[:, 0], ext[t[:, 1], t[:, 2]]]
            if not np.array_equal(left, right):
                raise ArithmeticError("basis product is not associative (sampled)")
        for i in range(n):
            b = self.basis_vector(i)
            if not (np.array_equal(self.mul(self.unit, b), b) and np.array_equal(self.mul(b, self.unit), b)):
                raise ArithmeticError(f"unit law fails on basis element {i}")
        return True

    def restrict(self, ids, name: str = "") -> "BasisAlgebra":
        """Subalgebra spanned by basis elements ``ids`` (closed under products)."""
        ids = list(ids)
        pos = {b: i for i, b in enumerate(ids)}
        sub = self.prod[np.ix_(ids, ids)]
        prod = np.vectorize(lambda v: pos.get(int(v), -2) if v >= 0 else -1, otypes=[np.int64])(sub) if ids else sub
        if (prod == -2).any():
            raise ValueError("basis subset is not closed under multiplication")
        unit = self.unit[ids]
        return BasisAlgebra(prod, unit, self.p, labels=[self.labels[i] for i in ids], name=name)

    @cached_property
    def radical(self) -> np.ndarray:
        """Row basis (RREF) of J(A), by the trace-of-p-powers method."""
        return matrix_algebra_radical(self.n, self.p, self.mul, self.left_matrix)


class CategoryAlgebra(BasisAlgebra):
    """``kC`` with basis ``Mor C`` and ``α * β = α∘β`` when composable, else 0."""

    def __init__(self, C: FiniteCategory, p: int):
        unit = np.zeros(C.n_mor, dtype=np.int64)
        unit[list(C.identities)] = 1
        super().__init__(C.comp, unit, p, labels=C.payload, name=C.name)
        self.category = C

    def idempotent_of(self, x: int) -> np.ndarray:
        return self.basis_vector(self.category.identities[x])

    @cached_property
    def radical(self) -> np.ndarray:
        return category_radical(self)


def build_algebra(C: FiniteCategory, F, check: bool = True) -> CategoryAlgebra:
    p = F.p if isinstance(F, lf.PrimeField) else int(F)
    A = CategoryAlgebra(C, p)
    if check:
        A.check_axioms()
    return A


def group_algebra(G: FiniteGroup, p: int) -> BasisAlgebra:
    unit = np.zeros(G.n, dtype=np.int64)
    unit[G.e] = 1
    return BasisAlgebra(G.mul, unit, p, labels=G.labels, name=f"k{G.name}")


def aut_algebra(A: CategoryAlgebra, x: int) -> BasisAlgebra:
    """``kAut(x)`` as a subalgebra, basis in the order of ``C.aut(x)``."""
    C = A.category
    sub = A.restrict(C.aut(x), name=f"kAut({x})")
    sub.unit = np.zeros(sub.n, dtype=np.int64)
    sub.unit[C.aut(x).index(C.identities[x])] = 1
    return sub


# -- radical ---------------------------------------------------------------
def _coordinate_blocks(mats: np.ndarray) -> list[list[int]]:
    """Finest partition of the coordinates into subsets preserved by every matrix."""
    m = mats.shape[1]
    pattern = np.any(mats != 0, axis=0)
    pattern = pattern | pattern.T
    parent = list(range(m))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i, j in zip(*np.nonzero(pattern)):
        ri, rj = find(int(i)), find(int(j))
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)
    out: dict[int, list[int]] = {}
    for i in range(m):
        out.setdefault(find(i), []).append(i)
    return list(out.values())


def _batched_traces(stack: np.ndarray, e: int, q: int) -> np.ndarray:
    """``Tr(X^e) mod q`` for every matrix X of an integer stack."""
    n = stack.shape[1]
    dtype = np.float64 if n * (q - 1) ** 2 < 2**53 else np.int64
    B = (stack % q).astype(dtype)
    R = None
    while e:
        if e & 1:
            R = B.copy() if R is None else (R @ B) % q
        e >>= 1
        if e:
            B = (B @ B) % q
    return np.einsum("kii->k", R).astype(np.int64) % q


def matrix_algebra_radical(n: int, p: int, mul, rep) -> np.ndarray:
    """Jacobson radical of an ``n``-dimensional algebra over F_p.

    ``rep(u)`` is a faithful matrix representation; only its values on basis
    vectors are used, since ``rep(ab) = rep(a) rep(b)`` (``mul`` is kept for
    callers that check this).  Traces are summed over the coordinate blocks
    that every ``rep(b)`` preserves.  Starting from ``I = A``, step ``i`` keeps the
    ``a`` in ``I`` with ``g_i(ab) = 0`` for all basis ``b``, where ``g_i(c)``
    is ``Tr(c~^(p^i)) / p^i mod p`` for any integer lift ``c~`` of
    ``rep(c)``; after ``floor(log_p m)`` steps (``m`` = representation
    degree) ``I`` is the radical.
    """
    if n == 0:
        return np.zeros((0, 0), dtype=np.int64)
    basis = np.eye(n, dtype=np.int64)
    reps = np.array([rep(basis[j]) % p for j in range(n)])  # rep(ab) = rep(a) rep(b)
    m = reps.shape[1]
    blocks_ = _coordinate_blocks(reps)
    subs = [reps[np.ix_(range(n), b, b)] for b in blocks_]
    top = int(math.floor(math.log(m, p) + 1e-9)) if m > 1 else 0
    I = np.eye(n, dtype=np.int64)
    for i in range(top + 1):
        if I.shape[0] == 0:
            break
        q, pe = p ** (i + 1), p**i
        G = np.zeros((I.shape[0], n), dtype=np.int64)
        for k in range(I.shape[0]):
            a = np.tensordot(I[k], reps, axes=1) % p
            t = sum(_batched_traces(a[np.ix_(b, b)][None, :, :] @ sub, pe, q) for b, sub in zip(blocks_, subs)) % q
            if (t % pe).any():
                raise ArithmeticError("trace of p-power not divisible; radical step invalid")
            G[k] = (t // pe) % p
        lam = lf.nullspace(G.T, p, I.shape[0])  # columns: combinations killing every g_i(. b)
        if lam.shape[1] == 0:
            return np.zeros((0, n), dtype=np.int64)
        I, _ = lf.rref(lf.matmul(lam.T, I, p), p)
    return I


def category_radical(A: CategoryAlgebra) -> np.ndarray:
    """J(kC) for an EI category.

    Spanned by the non-isomorphisms together with, for each pair of
    isomorphic objects ``x, y``, the subspace ``φ J(kAut(x0)) ψ`` where
    ``x0`` represents the class and ``ψ: x -> x0``, ``φ: x0 -> y`` are isos.
    """
    C = A.category
    if not C.is_ei:
        raise CategoryError("radical via EI structure needs an EI category")
    rows = []
    for f in range(C.n_mor):
        if not C.is_iso(f):
            rows.append(A.basis_vector(f))
    for cls in C.iso_classes:
        x0 = cls[0]
        aut = C.aut(x0)
        Jx = aut_algebra(A, x0).radical
        if Jx.shape[0] == 0:
            continue
        to_rep = {x: next(f for f in C.hom[x][x0] if C.is_iso(f)) for x in cls}
        from_rep = {y: next(f for f in C.hom[x0][y] if C.is_iso(f)) for y in cls}
        for x in cls:
            for y in cls:
                psi, phi = to_rep[x], from_rep[y]
                for j in Jx:
                    v = np.zeros(C.n_mor, dtype=np.int64)
                    for coeff, u in zip(j, aut):
                        if coeff:
                            v[C.comp[phi, C.comp[u, psi]]] += coeff
                    rows.append(v % A.p)
    if not rows:
        return np.zeros((0, C.n_mor), dtype=np.int64)
    R, _ = lf.rref(np.array(rows), A.p)
    return R


def radical(A: BasisAlgebra) -> np.ndarray:
    return A.radical


def semisimple_quotient_radical_dim(A: BasisAlgebra, J: np.ndarray | None = None) -> int:
    """dim J(A/J); zero exactly when ``J`` is the radical (or contains it)."""
    J = A.radical if J is None else J
    p, n = A.p, A.n
    Q = lf.complement_basis(J, np.eye(n, dtype=np.int64), p)
    d = Q.shape[0]
    if d == 0:
        return 0
    frame = np.concatenate([J, Q]) if J.shape[0] else Q

    def coords(v):
        c = lf.solve(frame.T, v % p, p)
        return c[J.shape[0]:]

    def lift(c):
        return lf.matmul(np.asarray(c).reshape(1, -1), Q, p)[0]

    def mul(u, v):
        return coords(A.mul(lift(u), lift(v)))

    def rep(u):
        L = np.zeros((d, d), dtype=np.int64)
        for j in range(d):
            L[:, j] = mul(u, np.eye(d, dtype=np.int64)[j])
        return L

    return matrix_algebra_radical(d, p, mul, rep).shape[0]


# -- center and blocks -------------------------------------------------------
def center(A: CategoryAlgebra) -> np.ndarray:
    """Row basis of Z(kC); central elements live on endomorphisms."""
    C = A.category
    endo = [f for f in range(C.n_mor) if C.src[f] == C.dst[f]]
    n, m = C.n_mor, len(endo)
    # columns: unknown coefficient of each endomorphism u; rows: (α, result basis)
    eqs = np.zeros((n * n, m), dtype=np.int64)
    comp = C.comp
    for k, u in enumerate(endo):
        for a in range(n):
            au, ua = comp[a, u], comp[u, a]
            if au >= 0:
                eqs[a * n + au, k] += 1
            if ua >= 0:
                eqs[a * n + ua, k] -= 1
    eqs %= A.p
    eqs = eqs[eqs.any(axis=1)]
    K = lf.nullspace(eqs, A.p, m) if eqs.size else np.eye(m, dtype=np.int64)
    Z = np.zeros((K.shape[1], n), dtype=np.int64)
    Z[:, endo] = K.T
    return Z


def _span_coords(B: np.ndarray, v: np.ndarray, p: int) -> np.ndarray:
    return lf.solve(B.T, v % p, p)


def _frobenius_fixed(A: BasisAlgebra, Z: np.ndarray) -> np.ndarray:
    """Row basis of ``{z in span Z : z^p = z}`` for commutative ``span Z``."""
    p = A.p
    r = Z.shape[0]
    F = np.zeros((r, r), dtype=np.int64)
    for j in range(r):
        F[:, j] = _span_coords(Z, A.power(Z[j], p), p)
    K = lf.nullspace((F - np.eye(r, dtype=np.int64)) % p, p, r)
    return lf.matmul(K.T, Z, p)


def _roots_of_split(A: BasisAlgebra, v: np.ndarray, unit: np.ndarray):
    """Eigen-idempotents of ``v`` in the unital algebra ``unit A unit`` when
    every root of the minimal polynomial lies in F_p."""
    mp = minimal_polynomial(A, v, unit)
    _, facs = gf_factor(mp, A.p, ZZ)
    return _crt_idempotents(A, v, unit, mp, facs)


def _reduce_split(A, v, e):
    """Split idempotent ``e`` by the eigenvalues of ``e v`` (``v^p = v``)."""
    pieces = _roots_of_split(A, A.mul(e, v), e)
    return pieces if len(pieces) > 1 else [e]


@dataclass(frozen=True)
class BlockDecomposition:
    idempotents: tuple  # central primitive idempotents over F_p
    dims: tuple
    principal: int

    @property
    def count(self) -> int:
        return len(self.idempotents)


def blocks(A: CategoryAlgebra) -> BlockDecomposition:
    """Primitive central idempotents over F_p.

    The fixed space of ``z -> z^p`` on the center is a split semisimple
    algebra ``F_p^r`` whose primitive idempotents are the block idempotents;
    they are separated by the eigenvalues of its basis elements.
    """
    p = A.p
    Z = center(A)
    V = _frobenius_fixed(A, Z)
    idem = [A.unit.copy()]
    for v in V:
        nxt = []
        for e in idem:
            nxt.extend(_reduce_split(A, v, e))
        idem = nxt
    if len(idem) != V.shape[0]:
        raise ArithmeticError("block splitting did not separate the Frobenius-fixed center")
    C = A.category
    dims, principal = [], []
    for e in idem:
        dims.append(lf.rank(A.left_matrix(e), p))
        act = np.zeros((C.n_obj, C.n_obj), dtype=np.int64)
        np.add.at(act, (C.dst, C.src), e)
        principal.append(bool((act % p).any()))
    if sum(principal) != 1:
        raise ArithmeticError("trivial module is not in exactly one block")
    _check_blocks(A, idem)
    return BlockDecomposition(tuple(idem), tuple(dims), principal.index(True))


def _check_blocks(A: BasisAlgebra, idem):
    p = A.p
    total = np.sum(idem, axis=0) % p
    if not np.array_equal(total, A.unit):
        raise ArithmeticError("block idempotents do not sum to 1")
    for i, e in enumerate(idem):
        if not np.array_equal(A.mul(e, e), e):
            raise ArithmeticError("block element is not idempotent")
        for j, f in enumerate(idem):
            if i != j and A.mul(e, f).any():
                raise ArithmeticError("block idempotents are not orthogonal")
        if not np.array_equal(A.left_matrix(e), A.right_matrix(e)):
            raise ArithmeticError("block idempotent is not central")


# -- idempotents ---------------------------------------------------------------
def _horner(A: BasisAlgebra, poly, a, unit) -> np.ndarray:
    """Evaluate ``poly`` (high degree first) at ``a`` with ``unit`` as 1."""
    acc = np.zeros(A.n, dtype=np.int64)
    for c in poly:
        acc = (A.mul(acc, a) + int(c) * unit) % A.p
    return acc


def minimal_polynomial(A: BasisAlgebra, a, unit) -> list[int]:
    """Monic minimal polynomial of ``a`` in ``unit A unit`` (high degree first)."""
    p = A.p
    a = A.mul(A.mul(unit, a), unit)
    powers = [np.asarray(unit) % p]
    while True:
        nxt = A.mul(powers[-1], a)
        M = np.array(powers)
        try:
            c = lf.solve(M.T, nxt, p)
        except lf.InconsistentSystemError:
            powers.append(nxt)
            continue
        k = len(powers)
        poly = [1] + [(-int(c[i])) % p for i in range(k - 1, -1, -1)]
        return poly


def _crt_idempotents(A, a, unit, mp, facs):
    if len(facs) < 2:
        return [unit]
    p = A.p
    out = []
    for f, k in facs:
        q = gf_pow(f, k, p, ZZ)
        Q = gf_quo(mp, q, p, ZZ)
        s, _, h = gf_gcdex(Q, q, p, ZZ)  # s Q + t q = h (a unit)
        if len(h) != 1:
            raise ArithmeticError("factors are not coprime")
        hinv = pow(int(h[0]), p - 2, p)
        u = gf_rem(gf_mul(gf_mul(s, Q, p, ZZ), [hinv], p, ZZ), mp, p, ZZ)
        out.append(_horner(A, u, A.mul(A.mul(unit, a), unit), unit))
    return out


def _local_quotient(A: BasisAlgebra, e, J):
    """Bases of ``eAe`` and ``eJe`` and a complement ``Q`` (row matrices)."""
    p, n = A.p, A.n
    L, R = A.left_matrix(e), A.right_matrix(e)
    W, _ = lf.rref(lf.matmul(L, R, p).T, p)  # rows e b e
    S = np.zeros((0, n), dtype=np.int64)
    if J.shape[0]:
        S, _ = lf.rref(lf.matmul(lf.matmul(L, R, p), J.T, p).T, p)
        if S.ndim == 1:
            S = S.reshape(1, -1)
    Q = lf.complement_basis(S.reshape(-1, n), W, p)
    return W, S.reshape(-1, n), Q


def is_primitive_idempotent(A: BasisAlgebra, e, J=None) -> bool:
    """``e`` is primitive iff ``eAe/eJe`` is a field: commutative with a
    one-dimensional space of Frobenius-fixed elements."""
    p = A.p
    J = A.radical if J is None else J
    W, S, Q = _local_quotient(A, e, J)
    d = Q.shape[0]
    if d == 0:
        return False
    if d == 1:
        return True
    frame = np.concatenate([S, Q])

    def qcoords(v):
        return lf.solve(frame.T, v % p, p)[S.shape[0]:]

    for i in range(d):
        for j in range(i + 1, d):
            if qcoords(A.mul(Q[i], Q[j]) - A.mul(Q[j], Q[i])).any():
                return False
    F = np.zeros((d, d), dtype=np.int64)
    for j in range(d):
        F[:, j] = qcoords(A.power(Q[j], p, unit=e))
    fixed = d - lf.rank((F - np.eye(d, dtype=np.int64)) % p, p)
    return fixed == 1


def primitive_idempotents(A: BasisAlgebra, max_tries: int = 400) -> list[np.ndarray]:
    """Complete set of primitive orthogonal idempotents summing to 1.

    Idempotents are split with the CRT idempotents of minimal polynomials of
    elements of ``eAe``: first ``e b e`` over the basis, then seeded random
    combinations.  The result is deterministic.
    """
    p = A.p
    J = A.radical
    pending = [A.unit.copy()]
    done = []
    rng = np.random.default_rng(SEED)
    while pending:
        e = pending.pop(0)
        if is_primitive_idempotent(A, e, J):
            done.append(e)
            continue
        pieces = None
        cands = (A.basis_vector(i) for i in range(A.n))
        tries = 0
        while pieces is None:
            try:
                b = next(cands)
            except StopIteration:
                if tries >= max_tries:
                    raise ArithmeticError("could not split a non-primitive idempotent")
                b = rng.integers(0, p, size=A.n)
                tries += 1
            a = A.mul(A.mul(e, b), e)
            mp = minimal_polynomial(A, a, e)
            _, facs = gf_factor(mp, p, ZZ)
            if len(facs) > 1:
                pieces = _crt_idempotents(A, a, e, mp, facs)
        pending = pieces + pending
    total = np.sum(done, axis=0) % p
    if not np.array_equal(total, A.unit):
        raise ArithmeticError("primitive idempotents do not sum to 1")
    for i, e in enumerate(done):
        if not np.array_equal(A.mul(e, e), e):
            raise ArithmeticError("split element is not idempotent")
        for j in range(i + 1, len(done)):
            if A.mul(e, done[j]).any() or A.mul(done[j], e).any():
                raise ArithmeticError("split idempotents are not orthogonal")
    return done


def equivalent_idempotents(A: BasisAlgebra, e, f, J=None) -> bool:
    """``Ae ≅ Af`` for primitive ``e, f``: ``eAf`` is not inside ``J``."""
    p = A.p
    J = A.radical if J is None else J
    M = lf.matmul(A.left_matrix(e), A.right_matrix(f), p)  # b -> e b f
    full = lf.rank(M, p)
    if J.shape[0] == 0:
        return full > 0
    return lf.rank(lf.matmul(M, J.T, p), p) < full


# -- skew group algebra ----------------------------------------------------------
def skew_group_algebra(G: FiniteGroup, P: GPoset, p: int) -> BasisAlgebra:
    """``kP[G]``: basis ``(u<=v) ⊗ g``, product
    ``(a1 ⊗ g1)(a2 ⊗ g2) = a1 (g1.a2) ⊗ g1g2`` (zero when not composable)."""
    act = P.act if P.act.shape[0] == G.n else np.tile(P.act, (G.n, 1))
    arrows = [(u, v) for u in range(P.m) for v in range(P.m) if P.leq[u, v]]
    labels = [(a, g) for a in arrows for g in range(G.n)]
    index = {lab: i for i, lab in enumerate(labels)}
    n = len(labels)
    prod = np.full((n, n), -1, dtype=np.int64)
    for i, ((u, v), g1) in enumerate(labels):
        for j, ((u2, v2), g2) in enumerate(labels):
            gu2, gv2 = int(act[g1, u2]), int(act[g1, v2])
            if gv2 == u:  # (u<=v) ∘ (g1u2 <= g1v2)
                prod[i, j] = index[((gu2, v), int(G.mul[g1, g2]))]
    unit = np.zeros(n, dtype=np.int64)
    for x in range(P.m):
        unit[index[((x, x), G.e)]] = 1
    return BasisAlgebra(prod, unit, p, labels=labels, name=f"kP[{G.name}]")


@dataclass(frozen=True)
class SkewIso:
    forward: np.ndarray  # morphism id -> skew basis index
    inverse: np.ndarray
    pairs_checked: int

    def apply(self, v):
        out = np.zeros_like(v)
        out[self.forward] = v
        return out


def skew_iso(G: FiniteGroup, P: GPoset, p: int, C: TransporterCategory | None = None,
             S: BasisAlgebra | None = None) -> SkewIso:
    """Basis bijection ``(g, gx<=y) -> (gx<=y) ⊗ g`` with its inverse
    ``(x<=y) ⊗ h -> (h, h^-1 x <= y)``, checked multiplicative on every basis pair."""
    C = build_transporter(G, P) if C is None else C
    S = skew_group_algebra(G, P, p) if S is None else S
    act = C.poset.act
    index = {lab: i for i, lab in enumerate(S.labels)}
    fwd = np.array([index[((int(act[g, x]), y), g)] for (g, x, y) in C.payload], dtype=np.int64)
    inv = np.empty(S.n, dtype=np.int64)
    for i, ((u, v), h) in enumerate(S.labels):
        inv[i] = C.morphism(h, int(act[G.inv[h], u]), v)
    if not np.array_equal(inv[fwd], np.arange(C.n_mor)) or not np.array_equal(fwd[inv], np.arange(S.n)):
        raise ArithmeticError("skew maps are not mutually inverse")
    # forward(α*β) == forward(α)*forward(β) for all basis pairs
    lhs = np.where(C.comp >= 0, fwd[np.where(C.comp >= 0, C.comp, 0)], -1)
    rhs = S.prod[np.ix_(fwd, fwd)]
    if not np.array_equal(lhs, rhs):
        a, b = np.argwhere(lhs != rhs)[0]
        raise ArithmeticError(f"skew map is not multiplicative on basis pair ({a}, {b})")
    return SkewIso(fwd, inv, C.n_mor * C.n_mor)


def algebra_report(A: CategoryAlgebra, B: BlockDecomposition | None = None) -> dict:
    B = blocks(A) if B is None else B
    return {
        "dim": A.dim,
        "field": f"F_{A.p}",
        "blocks_over": f"F_{A.p}",
        "blocks": [{"dim": int(d), "principal": i == B.principal} for i, d in enumerate(B.dims)],
        "radical_dim": int(A.radical.shape[0]),
    }


def report_json(A: CategoryAlgebra) -> str:
    return json.dumps(algebra_report(A), sort_keys=True)
