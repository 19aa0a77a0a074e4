"""Linear maps T_p attached to partitions, and exact ranks of their spans.

``T_p`` sends ``e_{i_1} ⊗ ... ⊗ e_{i_n}`` (upper indices) to the sum of
``e_{j_1} ⊗ ... ⊗ e_{j_m}`` (lower indices) over all index choices that are
constant on every block. As a matrix its rows are indexed by lower index
tuples and its columns by upper index tuples, both in lexicographic order.

Ranks are exact. Small or rank-deficient spans go through fraction-free
elimination over the integers; large spans are certified full-rank by a
rank computation modulo a prime of the (exact, integer) Gram matrix.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import InputError, ResourceError
from .partition import ColouredPartition, compose

DEFAULT_ENTRY_CAP = 10**7
CERT_PRIMES = (2_147_483_629, 2_147_483_587)


class ExactMatrix:
    """Dense integer matrix (entries are exact; no floating point)."""

    __slots__ = ("a",)

    def __init__(self, a):
        a = np.asarray(a)
        if a.ndim != 2:
            raise InputError("ExactMatrix needs a 2-d array")
        if a.dtype != object and not np.issubdtype(a.dtype, np.integer):
            raise InputError("ExactMatrix entries must be integers")
        self.a = a

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    @property
    def shape(self):
        return self.a.shape

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise InputError(f"shape mismatch {self.shape} @ {other.shape}")
        return ExactMatrix(self.a @ other.a)

    def __mul__(self, k: int) -> "ExactMatrix":
        return ExactMatrix(self.a * k)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, ExactMatrix) and self.shape == other.shape and bool(np.array_equal(self.a, other.a))

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols})"

    def kron(self, other: "ExactMatrix") -> "ExactMatrix":
        return ExactMatrix(np.kron(self.a, other.a))

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.a.T.copy())

    def tolist(self) -> list[list[int]]:
        return [[int(x) for x in row] for row in self.a]

    def rank(self) -> int:
        return bareiss_rank(self.tolist())

    def grid(self) -> str:
        return "\n".join(" ".join(str(int(x)) for x in row) for row in self.a)


def _check_size(N: int, k: int, cap: int) -> None:
    if N < 1:
        raise InputError("N must be at least 1")
    if N ** k > cap:
        raise ResourceError(f"N^{k} = {N ** k} exceeds the entry cap {cap}")


def delta(p: ColouredPartition, upper: Sequence[int], lower: Sequence[int]) -> int:
    """1 iff the index assignment (1-based) is constant on every block of ``p``."""
    if len(upper) != p.n_upper or len(lower) != p.n_lower:
        raise InputError("index tuple lengths do not match the partition rows")
    idx = tuple(upper) + tuple(lower)
    return int(all(len({idx[x] for x in b}) == 1 for b in p.blocks))


def _block_assignments(p: ColouredPartition, N: int):
    """Row and column indices of all nonzero entries of ``T_p``."""
    nb = len(p.blocks)
    n, m = p.n_upper, p.n_lower
    which = [0] * p.size
    for i, b in enumerate(p.blocks):
        for x in b:
            which[x] = i
    vals = np.indices((N,) * nb, dtype=np.int64).reshape(nb, -1) if nb else np.zeros((0, 1), dtype=np.int64)
    col = np.zeros(vals.shape[1], dtype=np.int64)
    for x in range(n):
        col = col * N + vals[which[x]]
    row = np.zeros(vals.shape[1], dtype=np.int64)
    for x in range(n, n + m):
        row = row * N + vals[which[x]]
    return row, col


def tp_matrix(p: ColouredPartition, N: int, cap: int = DEFAULT_ENTRY_CAP) -> ExactMatrix:
    _check_size(N, p.size, cap)
    row, col = _block_assignments(p, N)
    a = np.zeros((N ** p.n_lower, N ** p.n_upper), dtype=np.int64)
    a[row, col] = 1
    return ExactMatrix(a)


def verify_composition(p: ColouredPartition, q: ColouredPartition, N: int,
                       cap: int = DEFAULT_ENTRY_CAP) -> bool:
    """Check ``T_p T_q = N^loops T_{pq}`` exactly."""
    res = compose(p, q)
    lhs = tp_matrix(p, N, cap) @ tp_matrix(q, N, cap)
    rhs = tp_matrix(res.partition, N, cap) * (N ** res.removed_loops)
    return lhs == rhs


# ---------------------------------------------------------------------------
# exact rank
# ---------------------------------------------------------------------------

def bareiss_rank(rows: list[list[int]]) -> int:
    """Rank over the rationals by fraction-free Gaussian elimination."""
    A = [list(map(int, r)) for r in rows]
    if not A:
        return 0
    m, n = len(A), len(A[0])
    rank, prev = 0, 1
    for c in range(n):
        piv = next((i for i in range(rank, m) if A[i][c]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        pr = A[rank]
        for i in range(rank + 1, m):
            ai = A[i]
            f = ai[c]
            A[i] = [(pr[c] * ai[j] - f * pr[j]) // prev for j in range(n)]
        prev = pr[c]
        rank += 1
        if rank == m:
            break
    return rank


def _modular_rank(G: np.ndarray, prime: int) -> int:
    import flint
    r = G.shape[0]
    M = flint.nmod_mat(r, G.shape[1], [int(x) % prime for x in G.ravel()], prime)
    return M.rank()


def gram_of_partitions(parts: Sequence[ColouredPartition], N: int, cap: int = DEFAULT_ENTRY_CAP,
                       chunk: int = 256) -> np.ndarray:
    """Exact integer Gram matrix ``<T_p, T_q>`` (Frobenius pairing).

    The entries are counts below ``N^k``; float32 products are exact while
    every partial sum stays below ``2^24``, otherwise float64 is used.
    """
    if not parts:
        return np.zeros((0, 0), dtype=np.int64)
    k = parts[0].size
    _check_size(N, k, cap)
    dtype = np.float32 if N ** k < 2**24 else np.float64
    if N ** k >= 2**53:
        raise ResourceError("Gram entries too large for exact accumulation")
    width = N ** k
    V = np.zeros((len(parts), width), dtype=dtype)
    for i, p in enumerate(parts):
        row, col = _block_assignments(p, N)
        V[i, row * (N ** p.n_upper) + col] = 1
    G = np.zeros((len(parts), len(parts)), dtype=np.float64)
    for s in range(0, len(parts), chunk):
        G[s:s + chunk] = (V[s:s + chunk] @ V.T).astype(np.float64)
    out = np.rint(G).astype(np.int64)
    return out


def hom_dimension(parts: Sequence[ColouredPartition], N: int, cap: int = DEFAULT_ENTRY_CAP) -> int:
    """Exact rank of ``span{T_p}`` over the rationals."""
    parts = list(parts)
    if not parts:
        return 0
    shape = (parts[0].upper, parts[0].lower)
    if any((p.upper, p.lower) != shape for p in parts):
        raise InputError("all partitions must share the same rows")
    if len(parts) <= 40:
        vecs = []
        for p in parts:
            row, col = _block_assignments(p, N)
            v = np.zeros(N ** p.size, dtype=np.int64)
            v[row * (N ** p.n_upper) + col] = 1
            vecs.append(v)
        _check_size(N, parts[0].size, cap)
        return bareiss_rank(gram_columns(np.array(vecs)))
    G = gram_of_partitions(parts, N, cap)
    r = len(parts)
    for prime in CERT_PRIMES:
        if _modular_rank(G, prime) == r:
            return r
    return bareiss_rank(G.tolist())


def gram_columns(V: np.ndarray) -> list[list[int]]:
    """Rows of ``V`` restricted to the columns where some row is nonzero."""
    keep = np.nonzero(V.any(axis=0))[0]
    return V[:, keep].tolist()
