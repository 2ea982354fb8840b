"""Finite groups on an index universe, subgroups, and the generic queries.

Elements of a group of order ``n`` are the integers ``0..n-1`` and the
identity is always index 0.  Multiplication is vectorized: ``G.mul(a, b)``
accepts integer arrays (broadcast like numpy) and returns an int64 array.
Everything else in the package is written against that oracle.
"""

from __future__ import annotations

from functools import cached_property

import numpy as np

TABLE_LIMIT = 4096
EXHAUSTIVE_ASSOC_LIMIT = 512


def prime_power(n: int) -> tuple[int, int] | None:
    """``(p, k)`` with ``n == p**k`` and ``k >= 1``, else ``None``."""
    if n < 2:
        return None
    p = 2
    while p * p <= n and n % p:
        p += 1
    if n % p:
        p = n
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return (p, k) if n == 1 else None


class FiniteGroup:
    """Base class; subclasses implement ``_mul`` and ``_inv`` on int64 arrays.

    ``generators`` must generate the whole group.  A Cayley table is cached
    for groups of order at most ``TABLE_LIMIT``.
    """

    identity = 0

    def __init__(self, order: int, label: dict, generators=(), check: bool = True):
        self.order = int(order)
        self.label = dict(label)
        pp = prime_power(self.order)
        self.p = pp[0] if pp else None
        self._table = None
        self._inverse = None
        if self.order <= TABLE_LIMIT:
            a = np.arange(self.order, dtype=np.int64)
            table = np.empty((self.order, self.order), dtype=np.int32)
            step = max(1, 250_000 // self.order)
            for r in range(0, self.order, step):
                rows = a[r:r + step, None]
                table[r:r + step] = self._mul(*np.broadcast_arrays(rows, a[None, :]))
            self._table = table
            self._inverse = self._inv(a)
        self.generators = tuple(int(g) for g in generators) if generators else self._find_generators()
        if check:
            check_group_axioms(self)

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.label} order={self.order}>"

    # -- oracle -----------------------------------------------------------
    def _mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _inv(self, a: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def decode(self, a):
        """Construction-specific coordinates of element ``a``."""
        return (int(a),)

    def mul(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self._table is not None:
            return self._table[a, b].astype(np.int64)
        a, b = np.broadcast_arrays(a, b)
        return self._mul(a, b)

    def inv(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self._inverse is not None:
            return self._inverse[a]
        return self._inv(a)

    def power(self, a, k: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if k < 0:
            a, k = self.inv(a), -k
        result = np.zeros_like(a)
        base = a
        while k:
            if k & 1:
                result = self.mul(result, base)
            k >>= 1
            if k:
                base = self.mul(base, base)
        return result

    def comm(self, a, b) -> np.ndarray:
        """Commutator ``a^-1 b^-1 a b``."""
        return self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))

    def conj(self, a, b) -> np.ndarray:
        """``a^b = b^-1 a b``."""
        return self.mul(self.mul(self.inv(b), a), b)

    def elements(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    @cached_property
    def whole(self) -> Subgroup:
        return Subgroup(self, self.elements(), self.generators)

    @cached_property
    def trivial(self) -> Subgroup:
        return Subgroup(self, np.zeros(1, dtype=np.int64), ())

    def _find_generators(self) -> tuple[int, ...]:
        return greedy_generators(self, self.elements())


class CayleyTableGroup(FiniteGroup):
    """Group given by an explicit multiplication table with identity 0."""

    def __init__(self, table, label=None, check: bool = True):
        t = np.asarray(table, dtype=np.int64)
        n = t.shape[0]
        if t.ndim != 2 or t.shape != (n, n):
            raise ValueError("Cayley table must be square")
        if t.min() < 0 or t.max() >= n:
            raise ValueError("Cayley table entries out of range")
        if not (np.array_equal(t[0], np.arange(n)) and np.array_equal(t[:, 0], np.arange(n))):
            raise ValueError("index 0 must be the identity")
        srt = np.sort(t, axis=1)
        if not (srt == np.arange(n)).all() or not (np.sort(t, axis=0) == np.arange(n)[:, None]).all():
            raise ValueError("Cayley table is not a Latin square")
        self._full = t
        self._invs = np.argmin(t, axis=1)  # unique column holding 0 in each row
        super().__init__(n, label or {"construct": "cayley_table"}, check=check)

    def _mul(self, a, b):
        return self._full[a, b]

    def _inv(self, a):
        return self._invs[a]


def check_group_axioms(G: FiniteGroup, samples: int = 1000, seed: int = 0) -> None:
    """Identity and inverse checks, plus associativity (exhaustive when small)."""
    n = G.order
    a = G.elements()
    if not (np.array_equal(G.mul(a, 0), a) and np.array_equal(G.mul(0, a), a)):
        raise ValueError(f"{G!r}: index 0 is not the identity")
    if (G.mul(a, G.inv(a)) != 0).any():
        raise ValueError(f"{G!r}: inverse oracle is wrong")
    if n <= EXHAUSTIVE_ASSOC_LIMIT and G._table is not None:
        t = G._table
        for x in range(n):
            if not np.array_equal(t[t[x], :], t[x][t]):
                raise ValueError(f"{G!r}: multiplication is not associative")
        return
    rng = np.random.default_rng(seed)
    x, y, z = rng.integers(0, n, size=(3, samples))
    if not np.array_equal(G.mul(G.mul(x, y), z), G.mul(x, G.mul(y, z))):
        raise ValueError(f"{G!r}: multiplication is not associative")


class Subgroup:
    """A subgroup, stored as the sorted array of its member indices.

    Equality and hashing go through the member set; generator lists are not
    canonical and are computed lazily when not supplied.
    """

    def __init__(self, parent: FiniteGroup, members, generators=None):
        m = np.asarray(members, dtype=np.int64)
        m.setflags(write=False)
        self.parent = parent
        self.members = m
        self._generators = None if generators is None else tuple(int(g) for g in generators)
        self._key = None
        if parent.order % len(m):
            raise AssertionError(f"subgroup of order {len(m)} violates Lagrange in order {parent.order}")

    @property
    def order(self) -> int:
        return len(self.members)

    @property
    def generators(self) -> tuple[int, ...]:
        if self._generators is None:
            self._generators = greedy_generators(self.parent, self.members)
        return self._generators

    @property
    def key(self) -> bytes:
        if self._key is None:
            self._key = self.members.tobytes()
        return self._key

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent is other.parent and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"<Subgroup order={self.order} gens={list(self.generators)}>"

    def sort_key(self) -> tuple:
        return (self.order, tuple(self.members.tolist()))

    def contains(self, elements) -> np.ndarray:
        e = np.asarray(elements, dtype=np.int64)
        pos = np.searchsorted(self.members, e)
        pos = np.minimum(pos, len(self.members) - 1)
        return self.members[pos] == e

    def __contains__(self, g) -> bool:
        return bool(self.contains(g))

    def issubset(self, other: Subgroup) -> bool:
        return self.order <= other.order and bool(other.contains(self.members).all())

    def mask(self) -> np.ndarray:
        out = np.zeros(self.parent.order, dtype=bool)
        out[self.members] = True
        return out

    def is_closed(self) -> bool:
        """Exhaustive closure test under product and inverse."""
        G = self.parent
        m = self.members
        if not self.contains(G.inv(m)).all() or 0 not in self:
            return False
        for start in range(0, len(m), max(1, 2_000_000 // len(m))):
            chunk = m[start:start + max(1, 2_000_000 // len(m))]
            if not self.contains(G.mul(chunk[:, None], m[None, :])).all():
                return False
        return True


def _bfs(G: FiniteGroup, visited: np.ndarray, frontier: np.ndarray, first_gens, all_gens) -> None:
    gens = np.asarray(first_gens, dtype=np.int64)
    all_gens = np.asarray(all_gens, dtype=np.int64)
    while frontier.size:
        cand = G.mul(frontier[:, None], gens[None, :]).ravel()
        cand = cand[~visited[cand]]
        if not cand.size:
            break
        cand = np.unique(cand)
        visited[cand] = True
        frontier = cand
        gens = all_gens


def subgroup_closure(G: FiniteGroup, gens, start: Subgroup | None = None) -> Subgroup:
    """Smallest subgroup containing ``gens`` (and ``start`` if given).

    Breadth-first saturation under right multiplication by generators; in a
    finite group this already yields inverses.
    """
    gens = [int(g) for g in np.atleast_1d(np.asarray(gens, dtype=np.int64))]
    visited = np.zeros(G.order, dtype=bool)
    if start is None:
        new = sorted(set(g for g in gens if g != 0))
        visited[0] = True
        frontier = np.zeros(1, dtype=np.int64)
        old: tuple[int, ...] = ()
    else:
        new = sorted(set(g for g in gens if g not in start))
        if not new:
            return start
        visited[start.members] = True
        frontier = start.members
        old = start.generators
    if not new:
        return G.trivial
    all_gens = list(old) + new
    _bfs(G, visited, frontier, new, all_gens)
    return Subgroup(G, np.flatnonzero(visited), all_gens)


def greedy_generators(G: FiniteGroup, members) -> tuple[int, ...]:
    """A generating list for the subgroup with the given member set."""
    members = np.asarray(members, dtype=np.int64)
    target = len(members)
    visited = np.zeros(G.order, dtype=bool)
    visited[0] = True
    gens: list[int] = []
    current = np.zeros(1, dtype=np.int64)
    while len(current) < target:
        missing = members[~visited[members]]
        # the largest missing index tends to give bigger jumps for coordinate encodings
        g = int(missing[-1])
        gens.append(g)
        _bfs(G, visited, current, [g], gens)
        current = np.flatnonzero(visited)
    return tuple(gens)


def element_order(G: FiniteGroup, g: int) -> int:
    x, k = int(g), 1
    while x != 0:
        x = int(G.mul(x, g))
        k += 1
    return k


def element_orders(G: FiniteGroup, elems) -> np.ndarray:
    """Vectorized element orders."""
    elems = np.asarray(elems, dtype=np.int64)
    orders = np.ones(elems.shape, dtype=np.int64)
    cur = elems.copy()
    alive = cur != 0
    k = 1
    while alive.any():
        k += 1
        cur[alive] = G.mul(cur[alive], elems[alive])
        done = alive & (cur == 0)
        orders[done] = k
        alive &= ~done
    return orders


def _commute_mask(G: FiniteGroup, elems: np.ndarray, gens) -> np.ndarray:
    mask = np.ones(elems.shape, dtype=bool)
    for g in gens:
        idx = np.flatnonzero(mask)
        if not idx.size:
            break
        e = elems[idx]
        ok = G.mul(e, g) == G.mul(g, e)
        mask[idx[~ok]] = False
    return mask


def centralizer(G: FiniteGroup, S: Subgroup, within: Subgroup | None = None) -> Subgroup:
    """``C_W(S)`` for ``W = within`` (default ``G``), tested against generators of ``S``."""
    W = within if within is not None else G.whole
    keep = _commute_mask(G, W.members, S.generators)
    return Subgroup(G, W.members[keep])


def center(G: FiniteGroup, S: Subgroup | None = None) -> Subgroup:
    S = S if S is not None else G.whole
    return centralizer(G, S, within=S)


def is_abelian(G: FiniteGroup, S: Subgroup | None = None) -> bool:
    gens = (S if S is not None else G.whole).generators
    g = np.asarray(gens, dtype=np.int64)
    return bool((G.mul(g[:, None], g[None, :]) == G.mul(g[None, :], g[:, None])).all())


def _require_p_group(G: FiniteGroup) -> int:
    if G.p is None:
        raise ValueError(f"{G!r} is not of prime-power order")
    return G.p


def omega1(G: FiniteGroup, S: Subgroup | None = None) -> Subgroup:
    """Subgroup generated by the elements of ``S`` of order dividing ``p``."""
    p = _require_p_group(G)
    S = S if S is not None else G.whole
    cand = S.members[G.power(S.members, p) == 0]
    if len(cand) == S.order:
        return S
    H = G.trivial
    visited = np.zeros(G.order, dtype=bool)
    while True:
        visited[H.members] = True
        rest = cand[~visited[cand]]
        if not rest.size:
            return H
        H = subgroup_closure(G, [int(rest[-1])], start=H)


def commutator_subgroup(G: FiniteGroup, A: Subgroup, B: Subgroup) -> Subgroup:
    """``[A, B]`` as the normal closure in ``<A, B>`` of generator commutators."""
    ga = np.asarray(A.generators, dtype=np.int64)
    gb = np.asarray(B.generators, dtype=np.int64)
    if not ga.size or not gb.size:
        return G.trivial
    K = subgroup_closure(G, G.comm(ga[:, None], gb[None, :]).ravel())
    conj_by = np.unique(np.concatenate([ga, gb]))
    while True:
        if not K.generators:
            return K
        kg = np.asarray(K.generators, dtype=np.int64)
        images = G.conj(kg[:, None], conj_by[None, :]).ravel()
        outside = images[~K.contains(images)]
        if not outside.size:
            return K
        K = subgroup_closure(G, np.unique(outside), start=K)


def commutator_subgroup_allpairs(G: FiniteGroup, A: Subgroup, B: Subgroup) -> Subgroup:
    """Definition-level ``[A, B]`` from all member pairs (small inputs only)."""
    c = G.comm(A.members[:, None], B.members[None, :]).ravel()
    return subgroup_closure(G, np.unique(c))


def lower_central_series(G: FiniteGroup, S: Subgroup | None = None) -> list[Subgroup]:
    S = S if S is not None else G.whole
    series = [S]
    while series[-1].order > 1:
        nxt = commutator_subgroup(G, S, series[-1])
        if nxt.order == series[-1].order:
            raise ValueError("lower central series stalls: input is not nilpotent")
        series.append(nxt)
    return series


def nilpotence_class(G: FiniteGroup, S: Subgroup | None = None) -> int:
    return len(lower_central_series(G, S)) - 1


def exponent_is_p(G: FiniteGroup, S: Subgroup | None = None) -> bool:
    p = _require_p_group(G)
    S = S if S is not None else G.whole
    return bool((G.power(S.members, p) == 0).all())


def hall_check(G: FiniteGroup, S: Subgroup | None = None) -> bool:
    """Class below p and generated by order-p elements forces exponent p.

    Returns whether the hypothesis applied; raises if the conclusion fails.
    """
    p = _require_p_group(G)
    S = S if S is not None else G.whole
    if nilpotence_class(G, S) >= p or omega1(G, S) != S:
        return False
    if not exponent_is_p(G, S):
        raise AssertionError(f"class < p and Omega_1(S) = S but exponent is not p for {S!r}")
    return True


ELEMENTARY_ABELIAN = "elementary_abelian"
EXTRASPECIAL = "extraspecial"
ABELIAN_OTHER = "abelian_other"
OTHER = "other"


def classify(G: FiniteGroup, S: Subgroup | None = None) -> str:
    p = _require_p_group(G)
    S = S if S is not None else G.whole
    if S.order == 1:
        raise ValueError("the trivial subgroup is not classified")
    if is_abelian(G, S):
        return ELEMENTARY_ABELIAN if exponent_is_p(G, S) else ABELIAN_OTHER
    Z = center(G, S)
    if Z.order != p:
        return OTHER
    g = np.asarray(S.generators, dtype=np.int64)
    comms = G.comm(g[:, None], g[None, :]).ravel()
    if Z.contains(comms).all() and Z.contains(G.power(g, p)).all():
        return EXTRASPECIAL
    return OTHER


def is_extraspecial(G: FiniteGroup, S: Subgroup) -> bool:
    return S.order > 1 and classify(G, S) == EXTRASPECIAL


def is_cyclic(G: FiniteGroup, S: Subgroup | None = None) -> bool:
    S = S if S is not None else G.whole
    if S.order == 1:
        return True
    return int(element_orders(G, S.members).max()) == S.order


def load_cayley_table(path) -> CayleyTableGroup:
    """Read ``order p`` then ``order`` rows of 0-based product indices."""
    with open(path) as fh:
        lines = [ln.split() for ln in fh if ln.strip()]
    if not lines or len(lines[0]) != 2:
        raise ValueError(f"{path}: first line must be 'order p'")
    n, p = int(lines[0][0]), int(lines[0][1])
    rows = lines[1:]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ValueError(f"{path}: expected {n} rows of {n} entries")
    G = CayleyTableGroup([[int(x) for x in r] for r in rows], label={"construct": "cayley_table", "path": str(path)})
    if G.p != p:
        raise ValueError(f"{path}: order {n} is not a power of {p}")
    return G


def write_cayley_table(G: FiniteGroup, path) -> None:
    a = G.elements()
    table = G.mul(a[:, None], a[None, :])
    with open(path, "w") as fh:
        fh.write(f"{G.order} {G.p}\n")
        for row in table:
            fh.write(" ".join(map(str, row.tolist())) + "\n")

