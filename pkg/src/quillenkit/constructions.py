"""Concrete p-groups: cyclic, elementary abelian, extraspecial of exponent p,
central and direct products, and the split extensions ``<g> X`` of an
extraspecial group by a unipotent symplectic automorphism.

Constructors are cached; the groups they return are never mutated.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product

import numpy as np

from . import groups as gr
from .fpalg import FpMatrix, check_odd_prime, is_prime, is_symplectic, matrix_order, phi_matrix, standard_symplectic_form
from .groups import FiniteGroup, Subgroup


def _check_prime(p: int) -> None:
    if not isinstance(p, (int, np.integer)) or not is_prime(int(p)):
        raise ValueError(f"p must be prime, got {p!r}")


def _check_positive(name: str, n: int) -> None:
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ValueError(f"{name} must be a positive integer, got {n!r}")


def _digits(a: np.ndarray, p: int, k: int) -> np.ndarray:
    pw = p ** np.arange(k, dtype=np.int64)
    return (a[..., None] // pw) % p


def _undigits(d: np.ndarray, p: int) -> np.ndarray:
    pw = p ** np.arange(d.shape[-1], dtype=np.int64)
    return (d % p) @ pw


class CyclicGroup(FiniteGroup):
    def __init__(self, p: int, n: int):
        self.modulus = p ** n
        super().__init__(self.modulus, {"construct": "cyclic", "p": p, "n": n}, generators=(1,) if self.modulus > 1 else ())

    def _mul(self, a, b):
        return (a + b) % self.modulus

    def _inv(self, a):
        return (-a) % self.modulus


class ElementaryAbelianGroup(FiniteGroup):
    """``F_p^n`` under addition; index is the base-p number of the vector."""

    def __init__(self, p: int, n: int):
        self.n = n
        self.q = p
        super().__init__(p ** n, {"construct": "elementary_abelian", "p": p, "n": n},
                         generators=tuple(p ** i for i in range(n)))

    def _mul(self, a, b):
        p = self.q
        return _undigits(_digits(a, p, self.n) + _digits(b, p, self.n), p)

    def _inv(self, a):
        return _undigits(-_digits(a, self.q, self.n), self.q)

    def decode(self, a):
        return tuple(_digits(np.asarray(a), self.q, self.n).tolist())


class ExtraspecialGroup(FiniteGroup):
    """Extraspecial group of exponent p on coordinates ``(a, b, c)``.

    ``(a, b, c)(a', b', c') = (a + a', b + b', c + c' + a.b')`` so that
    ``[x_i, y_j] = z`` exactly when ``i == j``.  The index of ``(a, b, c)`` is
    ``c + p * (a_1 + a_2 p + ... + b_m p^(2m-1))``; hence ``z`` has index 1,
    ``x_i`` index ``p^i`` and ``y_i`` index ``p^(m+i)``.
    """

    def __init__(self, p: int, m: int):
        self.q, self.m = p, m
        self._vdig = _digits(np.arange(p ** (2 * m), dtype=np.int64), p, 2 * m)
        self._pw = p ** np.arange(1, 2 * m + 1, dtype=np.int64)
        gens = [p ** i for i in range(1, 2 * m + 1)]
        super().__init__(p ** (2 * m + 1), {"construct": "extraspecial", "p": p, "m": m}, generators=gens)

    # coordinates ----------------------------------------------------------
    def split(self, a):
        """``(v, c)`` with ``v`` of shape ``(..., 2m)``."""
        a = np.asarray(a, dtype=np.int64)
        return self._vdig[a // self.q], a % self.q

    def join(self, v, c):
        return (np.asarray(c) % self.q) + (np.asarray(v) % self.q) @ self._pw

    def _dot(self, v, w):
        m = self.m
        return (v[..., :m] * w[..., m:]).sum(-1)

    def _mul(self, a, b):
        va, ca = self.split(a)
        vb, cb = self.split(b)
        return self.join(va + vb, ca + cb + self._dot(va, vb))

    def _inv(self, a):
        v, c = self.split(a)
        return self.join(-v, self._dot(v, v) - c)

    def decode(self, a):
        v, c = self.split(a)
        v = v.tolist()
        return (tuple(v[:self.m]), tuple(v[self.m:]), int(c))

    def element(self, a=None, b=None, c: int = 0) -> int:
        v = np.zeros(2 * self.m, dtype=np.int64)
        if a is not None:
            v[:self.m] = a
        if b is not None:
            v[self.m:] = b
        return int(self.join(v, c))

    @property
    def z(self) -> int:
        return 1

    def x(self, i: int) -> int:
        return self.q ** i

    def y(self, i: int) -> int:
        return self.q ** (self.m + i)


@dataclass(frozen=True)
class LiftedAutomorphism:
    """Automorphism ``(v, c) -> (vM, c + q(v) + <u, vM>)`` of an extraspecial group.

    ``q(v) = (B(vM, vM) - B(v, v)) / 2`` with ``B((a, b), (a', b')) = a.b'``
    and ``u = corr``.  It fixes ``z`` and induces ``M`` on ``X / Z``.
    """

    p: int
    m: int
    M: FpMatrix
    corr: tuple[int, ...]

    def apply(self, X: ExtraspecialGroup, a) -> np.ndarray:
        p, m = self.p, self.m
        v, c = X.split(a)
        w = v @ self.M.data % p
        half = pow(2, -1, p)
        q = half * ((w[..., :m] * w[..., m:]).sum(-1) - (v[..., :m] * v[..., m:]).sum(-1))
        u = np.asarray(self.corr, dtype=np.int64)
        gram = standard_symplectic_form(p, m).gram.data
        lin = w @ (gram.T @ u)  # <u, w> = u G w^T
        return X.join(w, c + q + lin)

    def power_table(self, X: ExtraspecialGroup) -> np.ndarray:
        """``table[k, x] = alpha^k(x)`` for ``0 <= k < p``."""
        table = np.empty((self.p, X.order), dtype=np.int64)
        table[0] = X.elements()
        for k in range(1, self.p):
            table[k] = self.apply(X, table[k - 1])
        return table


def _automorphism_order_divides_p(alpha: LiftedAutomorphism, X: ExtraspecialGroup) -> bool:
    cur = X.elements()
    for _ in range(alpha.p):
        cur = alpha.apply(X, cur)
    return bool(np.array_equal(cur, X.elements()))


def is_homomorphism(alpha: LiftedAutomorphism, X: ExtraspecialGroup, samples: int = 2000, seed: int = 0) -> bool:
    """Generator pairs exhaustively, random pairs otherwise."""
    g = np.asarray(X.generators + (X.z,), dtype=np.int64)
    a, b = g[:, None], g[None, :]
    ok = np.array_equal(alpha.apply(X, X.mul(a, b)), X.mul(alpha.apply(X, a), alpha.apply(X, b)))
    rng = np.random.default_rng(seed)
    a, b = rng.integers(0, X.order, size=(2, samples))
    return ok and bool(np.array_equal(alpha.apply(X, X.mul(a, b)), X.mul(alpha.apply(X, a), alpha.apply(X, b))))


def lift_symplectic(p: int, m: int, M: FpMatrix, X: ExtraspecialGroup | None = None) -> LiftedAutomorphism:
    """Lift a symplectic ``M`` with ``M^p = I`` to an automorphism of order dividing p.

    Tries ``corr = 0`` first, then searches the inner corrections in
    lexicographic order.
    """
    space = standard_symplectic_form(p, m)
    if not is_symplectic(M, space):
        raise ValueError("matrix is not symplectic")
    order = matrix_order(M, p)
    if order not in (1, p):
        raise ValueError(f"matrix order must divide {p}, got {order}")
    X = X if X is not None else extraspecial_exponent_p(p, m)
    for corr in product(range(p), repeat=2 * m):
        alpha = LiftedAutomorphism(p, m, M, corr)
        if _automorphism_order_divides_p(alpha, X):
            return alpha
    raise ValueError("no inner correction gives an automorphism of order p")


class SemidirectGroup(FiniteGroup):
    """``<g> X`` with ``x^g = alpha(x)``; element ``(j, x)`` means ``g^j x``.

    Index of ``(j, x)`` is ``x + |X| j`` so ``X`` sits at indices ``0..|X|-1``.
    """

    def __init__(self, X: ExtraspecialGroup, alpha: LiftedAutomorphism, label: dict):
        self.X = X
        self.alpha = alpha
        self.q = alpha.p
        self.nx = X.order
        self._apow = alpha.power_table(X)
        super().__init__(self.q * X.order, label, generators=(X.order,) + X.generators)

    def _split(self, a):
        return a // self.nx, a % self.nx

    def _mul(self, a, b):
        ja, xa = self._split(a)
        jb, xb = self._split(b)
        x = self.X.mul(self._apow[jb, xa], xb)
        return x + self.nx * ((ja + jb) % self.q)

    def _inv(self, a):
        j, x = self._split(a)
        jn = (-j) % self.q
        return self.X.inv(self._apow[jn, x]) + self.nx * jn

    def decode(self, a):
        j, x = self._split(np.asarray(a))
        return (int(j), self.X.decode(x))

    @property
    def g(self) -> int:
        return self.nx

    @property
    def z(self) -> int:
        return self.X.z

    @cached_property
    def X_subgroup(self) -> Subgroup:
        return Subgroup(self, np.arange(self.nx, dtype=np.int64), self.X.generators)

    @cached_property
    def j(self) -> int:
        """Exponent with ``[g, y_1] = z^j``."""
        c = int(self.comm(self.g, self.X.y(1)))
        for k in range(self.q):
            if int(self.power(self.z, k)) == c:
                return k
        raise AssertionError("[g, y_1] is not central")

    @cached_property
    def order_p3_subgroup(self) -> Subgroup:
        """``S = <g x_1^(1-j), y_1>``."""
        h = int(self.mul(self.g, self.power(self.X.x(1), (1 - self.j) % self.q)))
        return gr.subgroup_closure(self, [h, self.X.y(1)])


class CentralProductGroup(FiniteGroup):
    """``(G1 x G2) / {(s^-1, phi(s))}`` identifying ``Omega_1(Z(G_i))`` of order p.

    ``phi`` sends the least-index generator of one center to that of the
    other.  Each coset is stored as ``(g1, r)`` with ``r`` the least index in
    ``g2 T``; index is ``rep_id(r) + (#reps) * g1``.
    """

    def __init__(self, G1: FiniteGroup, G2: FiniteGroup, label: dict | None = None):
        if G1.p is None or G1.p != G2.p:
            raise ValueError("central product needs p-groups for the same prime")
        p = G1.p
        S = gr.omega1(G1, gr.center(G1))
        T = gr.omega1(G2, gr.center(G2))
        if S.order != p or T.order != p:
            raise ValueError("Omega_1 of the center must have order p on both sides")
        self.G1, self.G2, self.q = G1, G2, p
        s0, t0 = int(S.members[1]), int(T.members[1])
        self.s0, self.t0 = s0, t0
        self._spow = np.array([int(G1.power(s0, k)) for k in range(p)], dtype=np.int64)
        tpow = np.array([int(G2.power(t0, k)) for k in range(p)], dtype=np.int64)
        cos = G2.mul(G2.elements()[:, None], tpow[None, :])
        self._rep = cos.min(axis=1)
        self._kappa = cos.argmin(axis=1)
        self._reps = np.unique(self._rep)
        self.nreps = len(self._reps)
        self._rep_id = np.searchsorted(self._reps, self._rep)
        gens = [self.embed_left(g) for g in G1.generators] + [self.embed_right(g) for g in G2.generators]
        label = label or {"construct": "central_product", "left": G1.label, "right": G2.label}
        super().__init__(G1.order * G2.order // p, label, generators=sorted(set(gens) - {0}))

    def _canon(self, g1, g2):
        k = self._kappa[g2]
        g1 = self.G1.mul(g1, self._spow[(-k) % self.q])
        return self._rep_id[g2] + self.nreps * g1

    def _split(self, a):
        return a // self.nreps, self._reps[a % self.nreps]

    def _mul(self, a, b):
        g1a, g2a = self._split(a)
        g1b, g2b = self._split(b)
        return self._canon(self.G1.mul(g1a, g1b), self.G2.mul(g2a, g2b))

    def _inv(self, a):
        g1, g2 = self._split(a)
        return self._canon(self.G1.inv(g1), self.G2.inv(g2))

    def decode(self, a):
        g1, g2 = self._split(np.asarray(a))
        return (int(g1), int(g2))

    def embed_left(self, g1):
        """Image of ``g1`` (scalar or array) under ``G1 -> P``."""
        g1 = np.asarray(g1, dtype=np.int64)
        out = self._canon(g1, np.zeros_like(g1))
        return int(out) if out.ndim == 0 else out

    def embed_right(self, g2):
        g2 = np.asarray(g2, dtype=np.int64)
        out = self._canon(np.zeros_like(g2), g2)
        return int(out) if out.ndim == 0 else out

    def image_left(self, H: Subgroup | None = None) -> Subgroup:
        H = H if H is not None else self.G1.whole
        idx = np.unique(self._canon(H.members, np.zeros_like(H.members)))
        return Subgroup(self, idx, [self.embed_left(g) for g in H.generators])

    def image_right(self, H: Subgroup | None = None) -> Subgroup:
        H = H if H is not None else self.G2.whole
        idx = np.unique(self._canon(np.zeros_like(H.members), H.members))
        return Subgroup(self, idx, [self.embed_right(g) for g in H.generators])

    def product_subgroup(self, H1: Subgroup, H2: Subgroup) -> Subgroup:
        """``H1 H2`` for subgroups of the factors (both containing the identified center)."""
        a = np.repeat(H1.members, H2.order)
        b = np.tile(H2.members, H1.order)
        idx = np.unique(self._canon(a, b))
        gens = [self.embed_left(g) for g in H1.generators] + [self.embed_right(g) for g in H2.generators]
        return Subgroup(self, idx, gens)


class DirectProductGroup(FiniteGroup):
    def __init__(self, G1: FiniteGroup, G2: FiniteGroup):
        self.G1, self.G2 = G1, G2
        n2 = G2.order
        gens = [g * n2 for g in G1.generators] + list(G2.generators)
        super().__init__(G1.order * n2, {"construct": "direct_product", "left": G1.label, "right": G2.label},
                         generators=gens)

    def _mul(self, a, b):
        n2 = self.G2.order
        return self.G1.mul(a // n2, b // n2) * n2 + self.G2.mul(a % n2, b % n2)

    def _inv(self, a):
        n2 = self.G2.order
        return self.G1.inv(a // n2) * n2 + self.G2.inv(a % n2)

    def decode(self, a):
        n2 = self.G2.order
        return (int(a) // n2, int(a) % n2)


@lru_cache(maxsize=None)
def cyclic(p: int, n: int) -> CyclicGroup:
    _check_prime(p)
    _check_positive("n", n)
    return CyclicGroup(p, n)


@lru_cache(maxsize=None)
def elementary_abelian(p: int, n: int) -> ElementaryAbelianGroup:
    _check_prime(p)
    _check_positive("n", n)
    return ElementaryAbelianGroup(p, n)


@lru_cache(maxsize=None)
def extraspecial_exponent_p(p: int, m: int) -> ExtraspecialGroup:
    check_odd_prime(p)
    _check_positive("m", m)
    return ExtraspecialGroup(p, m)


@lru_cache(maxsize=None)
def central_product(G1: FiniteGroup, G2: FiniteGroup) -> CentralProductGroup:
    return CentralProductGroup(G1, G2)


@lru_cache(maxsize=None)
def direct_product(G1: FiniteGroup, G2: FiniteGroup) -> DirectProductGroup:
    if G1.p is None or G1.p != G2.p:
        raise ValueError("direct product needs p-groups for the same prime")
    return DirectProductGroup(G1, G2)


@lru_cache(maxsize=None)
def semidirect_example(p: int, m: int) -> SemidirectGroup:
    """Order ``p^(2m+2)``, exponent p, cyclic center; needs ``p > 2m + 1``."""
    check_odd_prime(p)
    _check_positive("m", m)
    if p <= 2 * m + 1:
        raise ValueError(f"semidirect_example needs p > 2m+1, got p={p}, m={m}")
    X = extraspecial_exponent_p(p, m)
    alpha = lift_symplectic(p, m, phi_matrix(p, m), X)
    return SemidirectGroup(X, alpha, {"construct": "semidirect_example", "p": p, "m": m})


@lru_cache(maxsize=None)
def corollary3_group(p: int, t: int, k: int) -> FiniteGroup:
    """Order ``p^(2(t+k+2))`` with homology in degrees ``t`` and ``t+k``.

    For ``t == 0`` the extraspecial factor would have order p, so the
    split extension is returned on its own.
    """
    check_odd_prime(p)
    if not isinstance(t, (int, np.integer)) or t < 0:
        raise ValueError(f"t must be a nonnegative integer, got {t!r}")
    _check_positive("k", k)
    if p <= 2 * k + 3:
        raise ValueError(f"corollary3_group needs p > 2k+3, got p={p}, k={k}")
    P1 = semidirect_example(p, k + 1)
    if t == 0:
        return P1
    label = {"construct": "corollary3", "p": p, "t": t, "k": k}
    return CentralProductGroup(P1, extraspecial_exponent_p(p, t), label=label)
