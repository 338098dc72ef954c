"""Exact linear algebra over prime fields F_p.

Matrices are stored densely as ``int64`` numpy arrays with entries in
``[0, p)``.  :class:`SparseMatrix` is the interchange format for callers that
prefer coordinate lists; every routine here accepts either form.

Pivoting is deterministic: columns are scanned left to right and the first
row (lowest index) with a nonzero entry is chosen.  Every basis produced
downstream therefore depends only on the input ordering.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "PrimeField",
    "SparseMatrix",
    "InconsistentSystemError",
    "is_prime",
    "echelon",
    "rref",
    "rank",
    "kernel_basis",
    "nullspace",
    "image_basis",
    "solve",
    "inverse",
    "matmul",
    "in_span",
    "span_coordinates",
    "complement_basis",
    "intersect_spans",
]


class InconsistentSystemError(ValueError):
    """Raised by :func:`solve` when ``Ax = b`` has no solution."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    """The field F_p for a prime ``2 <= p < 2**16``."""

    p: int

    def __post_init__(self):
        if not isinstance(self.p, (int, np.integer)) or not (2 <= self.p < 2**16) or not is_prime(int(self.p)):
            raise ValueError(f"not a supported prime modulus: {self.p!r}")

    def __call__(self, x):
        return np.asarray(x, dtype=np.int64) % self.p

    def inv(self, a: int) -> int:
        a = int(a) % self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(a, self.p - 2, self.p)

    def zeros(self, *shape) -> np.ndarray:
        return np.zeros(shape, dtype=np.int64)

    def eye(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64)


@dataclass(frozen=True)
class SparseMatrix:
    """Coordinate-list matrix over F_p.

    ``entries`` maps ``(row, col)`` to a nonzero residue.  Zero entries are
    dropped on construction, so the invariant "no stored zeros" always holds.
    """

    rows: int
    cols: int
    p: int
    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (r, c), v in dict(self.entries).items():
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise IndexError(f"entry ({r}, {c}) outside {self.rows}x{self.cols}")
            v = int(v) % self.p
            if v:
                clean[(int(r), int(c))] = v
        object.__setattr__(self, "entries", clean)

    @classmethod
    def from_dense(cls, a, p: int) -> "SparseMatrix":
        a = np.asarray(a, dtype=np.int64) % p
        if a.ndim != 2:
            raise ValueError("expected a 2-d array")
        rs, cs = np.nonzero(a)
        return cls(a.shape[0], a.shape[1], p, {(int(r), int(c)): int(a[r, c]) for r, c in zip(rs, cs)})

    def to_dense(self) -> np.ndarray:
        a = np.zeros((self.rows, self.cols), dtype=np.int64)
        for (r, c), v in self.entries.items():
            a[r, c] = v
        return a

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def __matmul__(self, other):
        if isinstance(other, SparseMatrix):
            return SparseMatrix.from_dense(matmul(self.to_dense(), other.to_dense(), self.p), self.p)
        return matmul(self.to_dense(), other, self.p)


def _dense(a, p: int) -> np.ndarray:
    if isinstance(a, SparseMatrix):
        return a.to_dense()
    a = np.asarray(a, dtype=np.int64)
    if a.ndim == 1:
        a = a.reshape(1, -1)
    return a % p


def matmul(a, b, p: int) -> np.ndarray:
    """Product mod p.  Entries stay below ``p**2 * n`` so int64 is exact."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if a.size == 0 or b.size == 0:
        shape = a.shape[:-1] + b.shape[1:]
        return np.zeros(shape, dtype=np.int64)
    return (a @ b) % p


def rref(a, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form; returns the nonzero rows and pivot columns."""
    a = _dense(a, p).copy()
    m, n = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        piv = int(a[r, c])
        if piv != 1:
            a[r] = (a[r] * pow(piv, p - 2, p)) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[hit] = (a[hit] - np.outer(col[hit], a[r])) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def echelon(A, p: int | None = None):
    """Reduced row echelon form of ``A``.

    Returns ``(R, rank, pivots)``.  ``R`` has the same number of rows as
    ``A`` (zero rows at the bottom) and the same type: a :class:`SparseMatrix`
    in, a :class:`SparseMatrix` out.
    """
    if isinstance(A, SparseMatrix):
        p = A.p
    if p is None:
        raise ValueError("p is required for dense input")
    dense = _dense(A, p)
    R, piv = rref(dense, p)
    full = np.zeros_like(dense)
    full[: R.shape[0]] = R
    if isinstance(A, SparseMatrix):
        return SparseMatrix.from_dense(full, p), len(piv), piv
    return full, len(piv), piv


def rank(a, p: int) -> int:
    a = _dense(a, p)
    if a.size == 0:
        return 0
    return len(rref(a, p)[1])


def nullspace(a, p: int, ncols: int | None = None) -> np.ndarray:
    """Kernel of ``a`` as the columns of an ``n x k`` matrix.

    The basis is the standard one read off the RREF: column ``j`` has a 1 in
    the ``j``-th free coordinate and 0 in every other free coordinate.
    """
    a = _dense(a, p)
    n = a.shape[1] if ncols is None else ncols
    if a.size == 0:
        return np.eye(n, dtype=np.int64)
    R, piv = rref(a, p)
    free = [j for j in range(n) if j not in set(piv)]
    K = np.zeros((n, len(free)), dtype=np.int64)
    for k, f in enumerate(free):
        K[f, k] = 1
        for i, c in enumerate(piv):
            K[c, k] = (-R[i, f]) % p
    return K


def free_columns(a, p: int) -> list[int]:
    R, piv = rref(a, p)
    s = set(piv)
    return [j for j in range(_dense(a, p).shape[1]) if j not in s]


def kernel_basis(A, p: int | None = None) -> list[np.ndarray]:
    """Basis of ``{v : Av = 0}`` as a list of vectors."""
    if isinstance(A, SparseMatrix):
        p = A.p
        K = nullspace(A.to_dense(), p, A.cols)
    else:
        K = nullspace(A, p)
    return [K[:, j].copy() for j in range(K.shape[1])]


def image_basis(a, p: int) -> np.ndarray:
    """Column-space basis of ``a`` (returned as columns, RREF of the transpose)."""
    a = _dense(a, p)
    if a.size == 0:
        return np.zeros((a.shape[0], 0), dtype=np.int64)
    R, _ = rref(a.T, p)
    return R.T.copy()


def solve(A, b, p: int | None = None) -> np.ndarray:
    """One solution ``x`` of ``Ax = b`` (``b`` a vector or a matrix of columns).

    Free variables are set to zero.  Raises :class:`InconsistentSystemError`
    if no solution exists.
    """
    if isinstance(A, SparseMatrix):
        p = A.p
    A = _dense(A, p)
    b = np.asarray(b, dtype=np.int64) % p
    vec = b.ndim == 1
    B = b.reshape(-1, 1) if vec else b
    m, n = A.shape
    if B.shape[0] != m:
        raise ValueError("dimension mismatch in solve")
    aug = np.concatenate([A, B], axis=1)
    R, piv = rref(aug, p)
    if any(c >= n for c in piv):
        raise InconsistentSystemError("system has no solution")
    X = np.zeros((n, B.shape[1]), dtype=np.int64)
    for i, c in enumerate(piv):
        X[c] = R[i, n:]
    if __debug__:
        assert np.array_equal(matmul(A, X, p), B % p), "substitution check failed"
    return X[:, 0] if vec else X


def inverse(a, p: int) -> np.ndarray:
    a = _dense(a, p)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    R, piv = rref(np.concatenate([a, np.eye(n, dtype=np.int64)], axis=1), p)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return R[:, n:].copy()


def in_span(rows: np.ndarray, v, p: int) -> bool:
    """Whether ``v`` lies in the row space of ``rows``."""
    v = np.asarray(v, dtype=np.int64).reshape(1, -1) % p
    if rows.shape[0] == 0:
        return not v.any()
    return rank(np.concatenate([rows, v]), p) == rank(rows, p)


def span_coordinates(basis_rows: np.ndarray, pivots: list[int], v, p: int) -> np.ndarray:
    """Coordinates of ``v`` in an RREF row basis (assumes ``v`` is in the span)."""
    v = np.asarray(v, dtype=np.int64) % p
    return v[..., pivots].copy()


def complement_basis(sub_rows: np.ndarray, total_rows: np.ndarray, p: int) -> np.ndarray:
    """Rows of ``total_rows`` (in order) extending a basis of ``sub_rows``.

    Used to pick class representatives: scan ``total_rows`` and keep each row
    that is independent of the subspace plus what was kept so far.
    """
    n = total_rows.shape[1] if total_rows.ndim == 2 else sub_rows.shape[1]
    cur = np.asarray(sub_rows, dtype=np.int64).reshape(-1, n) % p
    r = rank(cur, p) if cur.shape[0] else 0
    kept = []
    for row in np.asarray(total_rows, dtype=np.int64).reshape(-1, n):
        trial = np.concatenate([cur, row.reshape(1, -1)])
        rr = rank(trial, p)
        if rr > r:
            kept.append(row % p)
            cur, r = trial, rr
    return np.array(kept, dtype=np.int64).reshape(-1, n)


def intersect_spans(a_rows: np.ndarray, b_rows: np.ndarray, p: int) -> np.ndarray:
    """Row basis of ``rowspace(a) ∩ rowspace(b)``."""
    n = a_rows.shape[1]
    if a_rows.shape[0] == 0 or b_rows.shape[0] == 0:
        return np.zeros((0, n), dtype=np.int64)
    # x a = y b  <=>  [a; -b]^T [x; y] = 0
    K = nullspace(np.concatenate([a_rows, (-b_rows) % p]).T, p)
    if K.shape[1] == 0:
        return np.zeros((0, n), dtype=np.int64)
    vecs = matmul(K[: a_rows.shape[0]].T, a_rows, p)
    R, _ = rref(vecs, p)
    return R
