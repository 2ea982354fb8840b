"""Order complexes, augmented boundary maps, Smith normal form over Z and
reduced homology.

The empty face is an honest simplex of dimension -1, so the empty complex
has reduced homology Z in degree -1 without any special casing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sps

from .posets import SubgroupPoset

DEFAULT_MAX_SIMPLICES = 10 ** 6


class TooLarge(RuntimeError):
    """Raised when a feasibility gate refuses a computation."""


@dataclass
class OrderComplex:
    """``simplices[k]`` holds the chains with ``k+1`` vertices; ``simplices[-1] == [()]``."""

    n_vertices: int
    simplices: dict[int, list[tuple[int, ...]]]

    @property
    def dim(self) -> int:
        return max(self.simplices)

    def count(self, k: int) -> int:
        return len(self.simplices.get(k, ()))

    def f_vector(self) -> dict[int, int]:
        return {k: len(v) for k, v in sorted(self.simplices.items())}

    def euler_reduced(self) -> int:
        return sum((-1) ** k * len(v) for k, v in self.simplices.items())


def order_complex(P: SubgroupPoset, max_simplices: int = DEFAULT_MAX_SIMPLICES) -> OrderComplex:
    """All chains of ``P``; vertices follow the canonical carrier order."""
    n = len(P)
    above: list[list[int]] = [[] for _ in range(n)]
    for k, lows in enumerate(P.below):
        for i in lows:
            above[i].append(k)
    simplices: dict[int, list[tuple[int, ...]]] = {-1: [()]}
    total = 1
    level = [(v,) for v in range(n)]
    k = 0
    while level:
        total += len(level)
        if total > max_simplices:
            raise TooLarge(f"order complex exceeds {max_simplices} simplices")
        simplices[k] = level
        # ``above`` lists are sorted, so the extension is canonically sorted too
        level = [ch + (w,) for ch in level for w in above[ch[-1]]]
        k += 1
    return OrderComplex(n, simplices)


@dataclass
class BoundaryMatrix:
    """Sparse integer map from k-chains (columns) to (k-1)-chains (rows)."""

    k: int
    shape: tuple[int, int]
    rows: np.ndarray
    cols: np.ndarray
    vals: np.ndarray

    def to_scipy(self) -> sps.csr_matrix:
        return sps.csr_matrix((self.vals, (self.rows, self.cols)), shape=self.shape, dtype=np.int64)

    def to_dense(self) -> np.ndarray:
        return self.to_scipy().toarray()


def boundary_matrices(C: OrderComplex, check: bool = True) -> list[BoundaryMatrix]:
    """``[d_0, d_1, ..., d_dim]`` with ``d_0`` the augmentation onto the empty face."""
    out = []
    for k in range(0, C.dim + 1):
        faces = {s: i for i, s in enumerate(C.simplices[k - 1])}
        rows, cols, vals = [], [], []
        for j, s in enumerate(C.simplices[k]):
            for i in range(k + 1):
                rows.append(faces[s[:i] + s[i + 1:]])
                cols.append(j)
                vals.append(-1 if i % 2 else 1)
        shape = (len(C.simplices[k - 1]), len(C.simplices[k]))
        out.append(BoundaryMatrix(k, shape, np.asarray(rows, dtype=np.int64), np.asarray(cols, dtype=np.int64),
                                  np.asarray(vals, dtype=np.int64)))
    if check:
        for lo, hi in zip(out, out[1:]):
            if (lo.to_scipy() @ hi.to_scipy()).count_nonzero():
                raise AssertionError(f"boundary composite d_{lo.k} d_{hi.k} is nonzero")
    return out


def _as_rows(M) -> tuple[dict[int, dict[int, int]], int, int]:
    if isinstance(M, BoundaryMatrix):
        M = M.to_scipy()
    if sps.issparse(M):
        coo = sps.coo_matrix(M)
        rows: dict[int, dict[int, int]] = {}
        for r, c, v in zip(coo.row.tolist(), coo.col.tolist(), coo.data.tolist()):
            if v:
                rows.setdefault(r, {})[c] = rows.get(r, {}).get(c, 0) + int(v)
        return rows, coo.shape[0], coo.shape[1]
    arr = [list(map(int, r)) for r in M]
    n_rows = len(arr)
    n_cols = len(arr[0]) if arr else 0
    rows = {}
    for r, row in enumerate(arr):
        d = {c: v for c, v in enumerate(row) if v}
        if d:
            rows[r] = d
    return rows, n_rows, n_cols


def _invariant_factors(diag: list[int]) -> list[int]:
    """Turn a diagonal into the divisibility chain d_1 | d_2 | ..."""
    d = sorted(abs(x) for x in diag if x)
    n = len(d)
    for i in range(n):
        for j in range(i + 1, n):
            g = math.gcd(d[i], d[j])
            if g != d[i]:
                d[i], d[j] = g, d[i] * d[j] // g
    return sorted(d)


class _SparseElim:
    """Row/column elimination on a dict-of-dicts integer matrix."""

    def __init__(self, rows: dict[int, dict[int, int]]):
        self.rows = rows
        self.cols: dict[int, set[int]] = {}
        for r, d in rows.items():
            for c in d:
                self.cols.setdefault(c, set()).add(r)

    def add_row(self, dst: int, src: int, factor: int) -> None:
        """row[dst] -= factor * row[src]"""
        drow = self.rows[dst]
        for c, v in self.rows[src].items():
            nv = drow.get(c, 0) - factor * v
            if nv:
                if c not in drow:
                    self.cols[c].add(dst)
                drow[c] = nv
            elif c in drow:
                del drow[c]
                self.cols[c].discard(dst)

    def add_col(self, dst: int, src: int, factor: int) -> None:
        """col[dst] -= factor * col[src]"""
        for r in list(self.cols.get(src, ())):
            row = self.rows[r]
            nv = row.get(dst, 0) - factor * row[src]
            if nv:
                if dst not in row:
                    self.cols.setdefault(dst, set()).add(r)
                row[dst] = nv
            elif dst in row:
                del row[dst]
                self.cols[dst].discard(r)

    def drop(self, r: int, c: int) -> None:
        for c2 in self.rows.pop(r):
            self.cols[c2].discard(r)
        self.cols.pop(c, None)

    def unit_pass(self, diag: list[int]) -> bool:
        """Eliminate every column that has a +-1 entry; fewest-entry row first."""
        progress = False
        order = sorted(self.cols, key=lambda c: (len(self.cols[c]), c))
        for c in order:
            rs = self.cols.get(c)
            if not rs:
                continue
            units = [r for r in rs if abs(self.rows[r][c]) == 1]
            if not units:
                continue
            r = min(units, key=lambda r: (len(self.rows[r]), r))
            d = self.rows[r][c]
            for r2 in sorted(rs - {r}):
                self.add_row(r2, r, self.rows[r2][c] * d)
            self.drop(r, c)
            diag.append(1)
            progress = True
        return progress

    def general_step(self, diag: list[int]) -> None:
        """One pivot with least |entry| (Markowitz tie-break), Euclid-style."""
        best = None
        for r, d in self.rows.items():
            for c, v in d.items():
                key = (abs(v), (len(d) - 1) * (len(self.cols[c]) - 1), r, c)
                if best is None or key < best:
                    best = key
        _, _, r, c = best
        d = self.rows[r][c]
        clean = True
        for r2 in sorted(self.cols[c] - {r}):
            q = self.rows[r2][c] // d
            self.add_row(r2, r, q)
            if self.rows[r2].get(c):
                clean = False
        for c2 in sorted(set(self.rows[r]) - {c}):
            q = self.rows[r][c2] // d
            self.add_col(c2, c, q)
            if self.rows[r].get(c2):
                clean = False
        if clean:
            self.drop(r, c)
            diag.append(d)
        # empty rows linger otherwise
        for rr in [rr for rr, dd in self.rows.items() if not dd]:
            del self.rows[rr]

    def nonzero(self) -> bool:
        return any(self.rows.values())


def smith_normal_form(M) -> tuple[list[int], int]:
    """Invariant factors (ascending, each dividing the next) and the rank.

    Accepts nested lists, numpy arrays, scipy sparse matrices or a
    ``BoundaryMatrix``.  Arithmetic is in Python integers throughout.
    """
    rows, _, _ = _as_rows(M)
    E = _SparseElim(rows)
    diag: list[int] = []
    while E.unit_pass(diag):
        pass
    for r in [r for r, d in E.rows.items() if not d]:
        del E.rows[r]
    while E.nonzero():
        E.general_step(diag)
        if E.nonzero():
            while E.unit_pass(diag):
                pass
            for r in [r for r, d in E.rows.items() if not d]:
                del E.rows[r]
    factors = _invariant_factors(diag)
    return factors, len(factors)


@dataclass
class HomologyProfile:
    """Reduced integral homology by degree: free rank and torsion factors."""

    betti: dict[int, int]
    torsion: dict[int, list[int]] = field(default_factory=dict)

    def rank(self, k: int) -> int:
        return self.betti.get(k, 0)

    def nonzero_degrees(self) -> list[int]:
        return sorted(k for k in set(self.betti) | set(self.torsion) if self.betti.get(k, 0) or self.torsion.get(k))

    def is_torsion_free(self) -> bool:
        return not any(self.torsion.values())

    def is_zero(self) -> bool:
        return not self.nonzero_degrees()

    def euler(self) -> int:
        return sum((-1) ** k * b for k, b in self.betti.items())

    def same_as(self, other: HomologyProfile) -> bool:
        degrees = set(self.betti) | set(other.betti) | set(self.torsion) | set(other.torsion)
        return all(self.rank(k) == other.rank(k) and sorted(self.torsion.get(k, [])) == sorted(other.torsion.get(k, []))
                   for k in degrees)

    def as_json(self) -> dict:
        return {
            "betti": {str(k): v for k, v in sorted(self.betti.items())},
            "torsion": {str(k): v for k, v in sorted(self.torsion.items()) if v},
        }


def reduced_homology(C: OrderComplex, check_torsion: bool = False) -> HomologyProfile:
    """Reduced homology over Z in degrees ``-1..dim``.

    Raises ``AssertionError`` on a broken Euler identity and, with
    ``check_torsion``, on any torsion at all.
    """
    mats = boundary_matrices(C, check=True)
    snf = [smith_normal_form(d) for d in mats]
    rk = {d.k: r for d, (_, r) in zip(mats, snf)}
    tors = {d.k - 1: [f for f in fs if f > 1] for d, (fs, _) in zip(mats, snf)}
    betti, torsion = {}, {}
    for k in range(-1, C.dim + 1):
        betti[k] = C.count(k) - rk.get(k, 0) - rk.get(k + 1, 0)
        torsion[k] = tors.get(k, [])
    prof = HomologyProfile(betti, torsion)
    if prof.euler() != C.euler_reduced():
        raise AssertionError("Euler characteristic identity failed")
    if check_torsion and not prof.is_torsion_free():
        raise AssertionError(f"torsion in a truncated Quillen complex: {prof.torsion}")
    return prof


def poset_homology(P: SubgroupPoset, max_simplices: int = DEFAULT_MAX_SIMPLICES) -> HomologyProfile:
    """Homology of a subgroup poset; torsion is a hard failure (wedge of spheres)."""
    return reduced_homology(order_complex(P, max_simplices), check_torsion=True)
