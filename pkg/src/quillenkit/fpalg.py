"""Linear algebra over the prime field F_p.

Matrices act on row vectors from the right (``v -> v @ M``), so the image of
the i-th basis vector is the i-th row.  Basis order for symplectic spaces is
``x_1..x_m, y_1..y_m`` everywhere in the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

MAX_PRIME = 1 << 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


def check_odd_prime(p: int) -> None:
    if not isinstance(p, (int, np.integer)) or not is_prime(int(p)) or p == 2:
        raise ValueError(f"p must be an odd prime, got {p!r}")
    if p >= MAX_PRIME:
        raise ValueError(f"p must be below {MAX_PRIME}, got {p}")


class FpMatrix:
    """Immutable matrix with entries reduced mod ``p``."""

    __slots__ = ("p", "data")

    def __init__(self, data, p: int):
        if not is_prime(int(p)):
            raise ValueError(f"modulus must be prime, got {p}")
        arr = np.array(data, dtype=np.int64) % p
        if arr.ndim != 2:
            raise ValueError("FpMatrix needs a 2-d array")
        arr.setflags(write=False)
        self.p = int(p)
        self.data = arr

    @classmethod
    def identity(cls, n: int, p: int) -> FpMatrix:
        return cls(np.eye(n, dtype=np.int64), p)

    @classmethod
    def zeros(cls, rows: int, cols: int, p: int) -> FpMatrix:
        return cls(np.zeros((rows, cols), dtype=np.int64), p)

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    def _coerce(self, other) -> np.ndarray:
        if isinstance(other, FpMatrix):
            if other.p != self.p:
                raise ValueError("moduli differ")
            return other.data
        return np.asarray(other, dtype=np.int64)

    def __matmul__(self, other) -> FpMatrix:
        # entries < 2**16, so a row of products stays far below 2**63
        return FpMatrix(self.data @ self._coerce(other), self.p)

    def __add__(self, other) -> FpMatrix:
        return FpMatrix(self.data + self._coerce(other), self.p)

    def __sub__(self, other) -> FpMatrix:
        return FpMatrix(self.data - self._coerce(other), self.p)

    def __pow__(self, k: int) -> FpMatrix:
        if k < 0:
            raise ValueError("negative powers are not supported")
        n = self.shape[0]
        result = np.eye(n, dtype=np.int64)
        base = self.data
        while k:
            if k & 1:
                result = result @ base % self.p
            base = base @ base % self.p
            k >>= 1
        return FpMatrix(result, self.p)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FpMatrix):
            return NotImplemented
        return self.p == other.p and np.array_equal(self.data, other.data)

    def __hash__(self) -> int:
        return hash((self.p, self.data.shape, self.data.tobytes()))

    def __repr__(self) -> str:
        return f"FpMatrix({self.data.tolist()}, p={self.p})"

    def is_zero(self) -> bool:
        return not self.data.any()

    def apply(self, vectors) -> np.ndarray:
        """Right action on a vector or a stack of row vectors."""
        return np.asarray(vectors, dtype=np.int64) @ self.data % self.p

    def tolist(self) -> list[list[int]]:
        return self.data.tolist()


@dataclass(frozen=True)
class SymplecticSpace:
    """F_p^{2m} with the standard alternating form, basis x_1..x_m, y_1..y_m."""

    p: int
    m: int

    @property
    def dim(self) -> int:
        return 2 * self.m

    @cached_property
    def gram(self) -> FpMatrix:
        m = self.m
        g = np.zeros((2 * m, 2 * m), dtype=np.int64)
        g[:m, m:] = np.eye(m, dtype=np.int64)
        g[m:, :m] = -np.eye(m, dtype=np.int64)
        return FpMatrix(g, self.p)

    def form(self, v, w) -> int:
        v = np.asarray(v, dtype=np.int64)
        w = np.asarray(w, dtype=np.int64)
        return int(v @ self.gram.data @ w % self.p)

    def x(self, i: int) -> np.ndarray:
        """Basis vector x_i (1-based, as in the usual notation)."""
        e = np.zeros(self.dim, dtype=np.int64)
        e[i - 1] = 1
        return e

    def y(self, i: int) -> np.ndarray:
        e = np.zeros(self.dim, dtype=np.int64)
        e[self.m + i - 1] = 1
        return e


def standard_symplectic_form(p: int, m: int) -> SymplecticSpace:
    check_odd_prime(p)
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    return SymplecticSpace(int(p), int(m))


def phi_matrix(p: int, m: int) -> FpMatrix:
    """Unipotent symplectic map with one-dimensional fixed space <y_1>.

    Rows give the images::

        x_i -> (-1)^(m+1-i) y_m + sum_{j=i..m} (-1)^(j-i) x_j
        y_i -> y_i + y_{i-1}     (i >= 2)
        y_1 -> y_1
    """
    check_odd_prime(p)
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    M = np.zeros((2 * m, 2 * m), dtype=np.int64)
    for i in range(1, m + 1):
        M[i - 1, m + m - 1] += (-1) ** (m + 1 - i)
        for j in range(i, m + 1):
            M[i - 1, j - 1] += (-1) ** (j - i)
    for i in range(1, m + 1):
        M[m + i - 1, m + i - 1] = 1
        if i >= 2:
            M[m + i - 1, m + i - 2] = 1
    return FpMatrix(M, p)


def is_symplectic(M: FpMatrix, space: SymplecticSpace) -> bool:
    if M.shape != (space.dim, space.dim):
        raise ValueError(f"expected a {space.dim}x{space.dim} matrix, got {M.shape}")
    if M.p != space.p:
        raise ValueError("moduli differ")
    G = space.gram.data
    return bool(np.array_equal(M.data @ G @ M.data.T % space.p, G))


def row_reduce(M: FpMatrix) -> tuple[FpMatrix, int, list[int]]:
    """Reduced row-echelon form; returns ``(rref, rank, pivot_columns)``."""
    p = M.p
    A = M.data.copy()
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            A[[r, k]] = A[[k, r]]
        A[r] = A[r] * pow(int(A[r, c]), -1, p) % p
        others = np.nonzero(A[:, c])[0]
        others = others[others != r]
        if others.size:
            A[others] = (A[others] - np.outer(A[others, c], A[r])) % p
        pivots.append(c)
        r += 1
    return FpMatrix(A, p), r, pivots


def rank(M: FpMatrix) -> int:
    return row_reduce(M)[1]


def nullspace(M: FpMatrix) -> list[np.ndarray]:
    """Row vectors ``v`` with ``v @ M == 0``, as a reduced basis."""
    p = M.p
    # v M = 0  <=>  M^T v^T = 0
    R, r, piv = row_reduce(FpMatrix(M.data.T, p))
    n = M.shape[0]
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        v = np.zeros(n, dtype=np.int64)
        v[f] = 1
        for row, pc in enumerate(piv):
            v[pc] = -R.data[row, f] % p
        basis.append(v)
    if not basis:
        return []
    B, _, _ = row_reduce(FpMatrix(np.array(basis), p))
    return [B.data[i].copy() for i in range(len(basis))]


def fixed_space(M: FpMatrix) -> list[np.ndarray]:
    """Basis of ``{v : v M = v}``."""
    n = M.shape[0]
    if M.shape != (n, n):
        raise ValueError("fixed_space needs a square matrix")
    return nullspace(M - FpMatrix.identity(n, M.p))


def matrix_order(M: FpMatrix, cap: int) -> int | None:
    """Least ``k <= cap`` with ``M^k = I``; ``None`` if the cap is exceeded."""
    n = M.shape[0]
    if M.shape != (n, n) or rank(M) < n:
        raise ValueError("matrix_order needs an invertible square matrix")
    I = FpMatrix.identity(n, M.p)
    P = M
    for k in range(1, cap + 1):
        if P == I:
            return k
        P = P @ M
    return None
