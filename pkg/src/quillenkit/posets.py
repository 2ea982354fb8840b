"""Subgroup posets: A>=2(P), A>Z(P), the extraspecial family E(P), and the
brute-force M_Z(P) / M*_Z(P) used to cross-check them on small groups.

Enumeration works over *atoms*: either the subgroups of order p (for A>=2)
or the subgroups <Z, x> of order p^2 (for A>Z and E(P)).  Commutation is
well defined on atoms, so a commutator index over atom representatives
replaces per-element centralizer scans.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import groups as gr
from .groups import FiniteGroup, Subgroup

DENSE_INDEX_LIMIT = 4000
BRUTEFORCE_LIMIT = 3 ** 5


def canonical_order(subgroups) -> list[Subgroup]:
    return sorted(subgroups, key=Subgroup.sort_key)


@dataclass
class SubgroupPoset:
    """Subgroups ordered by inclusion, carrier in canonical order."""

    carrier: list[Subgroup]
    label: str = ""

    def __post_init__(self):
        self.carrier = canonical_order({H.key: H for H in self.carrier}.values())
        self._below: list[list[int]] | None = None

    def __len__(self) -> int:
        return len(self.carrier)

    def __iter__(self):
        return iter(self.carrier)

    def keys(self) -> set[bytes]:
        return {H.key for H in self.carrier}

    @property
    def below(self) -> list[list[int]]:
        """``below[k]`` lists indices ``i`` with ``carrier[i] < carrier[k]``."""
        if self._below is None:
            self._below = _strict_inclusions(self.carrier)
        return self._below

    def less(self, i: int, k: int) -> bool:
        return i in self.below[k]

    def orders(self) -> list[int]:
        return [H.order for H in self.carrier]


def _strict_inclusions(carrier: list[Subgroup]) -> list[list[int]]:
    # anchor each subgroup at its largest member; H <= K forces anchor(H) in K
    by_anchor: dict[int, list[int]] = {}
    for i, H in enumerate(carrier):
        by_anchor.setdefault(int(H.members[-1]), []).append(i)
    below = []
    for k, K in enumerate(carrier):
        found = []
        for e in K.members.tolist():
            for i in by_anchor.get(e, ()):
                H = carrier[i]
                if i != k and H.order < K.order and H.issubset(K):
                    found.append(i)
        below.append(sorted(found))
    return below


def _order_p_elements(G: FiniteGroup) -> np.ndarray:
    if G.p is None:
        raise ValueError(f"{G!r} is not a p-group")
    a = G.elements()[1:]
    return a[G.power(a, G.p) == 0]


def rank1_subgroups(G: FiniteGroup) -> list[Subgroup]:
    """All subgroups of order p, each once."""
    p = G.p
    x = _order_p_elements(G)
    if not x.size:
        return []
    pw = np.stack([G.power(x, k) for k in range(p)], axis=1)
    reps = np.unique(pw[:, 1:].min(axis=1))
    pw_reps = np.stack([G.power(reps, k) for k in range(p)], axis=1)
    return canonical_order(Subgroup(G, np.sort(row), [int(r)]) for row, r in zip(pw_reps, reps))


class AtomIndex:
    """Atoms with representatives and a commutator table between them.

    With ``Z`` given, atoms are the subgroups ``<Z, x>`` for order-p
    ``x`` outside ``Z``; otherwise they are the subgroups of order p.
    ``atom_of[g]`` is the atom containing ``g`` (-1 for ``Z`` or elements
    of larger order).
    """

    def __init__(self, G: FiniteGroup, Z: Subgroup | None = None):
        self.G, self.Z = G, Z
        p = G.p
        x = _order_p_elements(G)
        if Z is not None:
            x = x[~Z.contains(x)]
        self.atom_of = np.full(G.order, -1, dtype=np.int64)
        if not x.size:
            self.reps = np.zeros(0, dtype=np.int64)
            self._comm = np.zeros((0, 0), dtype=np.int64)
            return
        zs = Z.members if Z is not None else np.zeros(1, dtype=np.int64)
        pw = np.stack([G.power(x, k) for k in range(1, p)], axis=1)
        orbit = G.mul(pw[:, :, None], zs[None, None, :]).reshape(len(x), -1)
        canon = orbit.min(axis=1)
        self.reps = np.unique(canon)
        self.atom_of[x] = np.searchsorted(self.reps, canon)
        self._comm = None
        self._rows: dict[int, np.ndarray] = {}
        if len(self.reps) <= DENSE_INDEX_LIMIT:
            n = len(self.reps)
            table = np.empty((n, n), dtype=np.int64)
            step = max(1, 1_000_000 // n)
            for s in range(0, n, step):
                table[s:s + step] = G.comm(self.reps[s:s + step, None], self.reps[None, :])
            self._comm = table

    def __len__(self) -> int:
        return len(self.reps)

    def comm_row(self, i: int) -> np.ndarray:
        if self._comm is not None:
            return self._comm[i]
        row = self._rows.get(i)
        if row is None:
            row = self.G.comm(self.reps[i], self.reps)
            self._rows[i] = row
        return row

    @property
    def rep_powers(self) -> np.ndarray:
        """``rep_powers[a, k] = reps[a]^k`` for ``k < p``."""
        if getattr(self, "_rep_pow", None) is None:
            cols = [np.zeros_like(self.reps), self.reps]
            for _ in range(2, self.G.p):
                cols.append(self.G.mul(cols[-1], self.reps))
            self._rep_pow = np.stack(cols, axis=1)
        return self._rep_pow

    def commuting(self, i: int) -> np.ndarray:
        return self.comm_row(i) == 0

    def atoms_in(self, members: np.ndarray) -> np.ndarray:
        a = self.atom_of[members]
        return np.unique(a[a >= 0])


def _extend_elementary(G: FiniteGroup, index: AtomIndex, seeds: list[Subgroup]) -> list[Subgroup]:
    """Close a family of elementary abelian subgroups under adjoining commuting atoms."""
    p = G.p
    found = {S.key: S for S in seeds}
    level = list(found.values())
    gen_atoms = {S.key: index.atoms_in(np.asarray(S.generators, dtype=np.int64)) for S in level}
    while level:
        nxt: dict[bytes, Subgroup] = {}
        nxt_gen_atoms = {}
        for E in level:
            ga = gen_atoms[E.key]
            cand = np.ones(len(index), dtype=bool)
            for a in ga:
                cand &= index.commuting(int(a))
            cand[index.atoms_in(E.members)] = False
            for a in np.flatnonzero(cand):
                if not cand[a]:
                    continue
                x = int(index.reps[a])
                xp = np.array([int(G.power(x, k)) for k in range(p)], dtype=np.int64)
                members = np.unique(G.mul(E.members[:, None], xp[None, :]))
                K = Subgroup(G, members, E.generators + (x,))
                cand[index.atoms_in(members)] = False
                if K.key not in found and K.key not in nxt:
                    nxt[K.key] = K
                    nxt_gen_atoms[K.key] = np.append(ga, a)
        found.update(nxt)
        level = list(nxt.values())
        gen_atoms = nxt_gen_atoms
    return list(found.values())


def omega1_center(G: FiniteGroup) -> Subgroup:
    return gr.omega1(G, gr.center(G))


def elem_abelian_poset(G: FiniteGroup) -> SubgroupPoset:
    """A>=2(G): elementary abelian subgroups of order at least p^2."""
    p = G.p
    if p is None:
        raise ValueError(f"{G!r} is not a p-group")
    index = AtomIndex(G)
    seeds: dict[bytes, Subgroup] = {}
    for i in range(len(index)):
        row = index.commuting(i)
        x = int(index.reps[i])
        xp = np.array([int(G.power(x, k)) for k in range(p)], dtype=np.int64)
        done = np.zeros(len(index), dtype=bool)
        for j in np.flatnonzero(row[i + 1:]) + i + 1:
            if done[j]:
                continue
            y = int(index.reps[j])
            yp = np.array([int(G.power(y, k)) for k in range(p)], dtype=np.int64)
            members = np.unique(G.mul(xp[:, None], yp[None, :]))
            done[index.atoms_in(members)] = True
            S = Subgroup(G, members, (x, y))
            seeds.setdefault(S.key, S)
    return SubgroupPoset(_extend_elementary(G, index, list(seeds.values())), label="A>=2")


def above_z_poset(G: FiniteGroup, Z: Subgroup | None = None) -> SubgroupPoset:
    """A>Z(G) for ``Z = Omega_1(Z(G))``, which must have order p."""
    Z = Z if Z is not None else omega1_center(G)
    if Z.order != G.p:
        raise ValueError("Omega_1(Z(G)) is not cyclic; A>Z is undefined")
    index = AtomIndex(G, Z)
    z = int(Z.generators[0])
    seeds = []
    for i, x in enumerate(index.reps.tolist()):
        members = _atom_members(G, Z, x)
        seeds.append(Subgroup(G, members, (z, x)))
    return SubgroupPoset(_extend_elementary(G, index, seeds), label="A>Z")


def _atom_members(G: FiniteGroup, Z: Subgroup, x: int) -> np.ndarray:
    xp = np.array([int(G.power(x, k)) for k in range(G.p)], dtype=np.int64)
    return np.unique(G.mul(xp[:, None], Z.members[None, :]))


@dataclass
class EspecReport:
    """The family E(P) with counts ``a[n]`` of members of order p^(2n+1)."""

    members: list[Subgroup]
    z: Subgroup
    counts: dict[int, int] = field(default_factory=dict)

    @property
    def p(self) -> int:
        return self.z.parent.p

    def a(self, n: int) -> int:
        return self.counts.get(n, 0)

    def __len__(self) -> int:
        return len(self.members)


def _counts(members: list[Subgroup], p: int) -> dict[int, int]:
    counts: dict[int, int] = {}
    for X in members:
        k = round(np.log(X.order) / np.log(p))
        n = (k - 1) // 2
        counts[n] = counts.get(n, 0) + 1
    return dict(sorted(counts.items()))


def _nondegenerate_planes(index: AtomIndex, atoms: np.ndarray, zset: set[int]) -> list[tuple[int, int]]:
    """Pairs ``(I, J)`` of atoms with ``[x_I, x_J]`` in ``Z - 1``, one per plane.

    A plane ``<Z, x_I, x_J>`` contains ``p + 1`` atoms; it is reported from
    its two smallest atom ids only.
    """
    G = index.G
    p = G.p
    out = []
    atoms = np.asarray(atoms, dtype=np.int64)
    zarr = np.array(sorted(zset), dtype=np.int64)
    for pos, i in enumerate(atoms.tolist()):
        js = atoms[pos + 1:]
        if not js.size:
            break
        c = index.comm_row(i)[js]
        js = js[np.isin(c, zarr)]
        if not js.size:
            continue
        others = index.atom_of[G.mul(index.reps[i], index.rep_powers[js, 1:])]
        keep = (others > js[:, None]).all(axis=1)
        out.extend((i, int(j)) for j in js[keep])
    return out


def espec(G: FiniteGroup) -> EspecReport:
    """E(G): extraspecial exponent-p subgroups X with Omega_1(C_G(X)) = Z(X)."""
    p = G.p
    if p is None or p == 2:
        raise ValueError("espec needs a p-group for an odd prime p")
    Z = omega1_center(G)
    if Z.order != p:
        return EspecReport([], Z, {})
    index = AtomIndex(G, Z)
    zset = set(Z.members.tolist()) - {0}
    z = int(Z.generators[0])
    n_atoms = len(index)

    def cmask_of(atoms) -> np.ndarray:
        m = np.ones(n_atoms, dtype=bool)
        for a in atoms:
            m &= index.commuting(int(a))
        return m

    planes_seen: dict[tuple[int, int], np.ndarray] = {}

    def plane_members(i: int, j: int) -> np.ndarray:
        # x^a y^b z^c covers <x, y> since [x, y] lies in Z
        S = planes_seen.get((i, j))
        if S is None:
            xy = G.mul(index.rep_powers[i][:, None], index.rep_powers[j][None, :]).ravel()
            S = np.unique(G.mul(xy[:, None], Z.members[None, :]))
            if len(S) != p ** 3:
                raise AssertionError("nondegenerate pair did not generate a group of order p^3")
            planes_seen[(i, j)] = S
        return S

    # level 1: planes of the whole atom set, carried as (gen atoms, members-or-None)
    level = [((i, j), None) for i, j in _nondegenerate_planes(index, np.arange(n_atoms), zset)]
    result: list[Subgroup] = []
    n = 1
    while level:
        nxt: dict[bytes, tuple] = {}
        for gen_atoms, members in level:
            cm = cmask_of(gen_atoms)
            if not cm.any():
                if members is None:
                    members = plane_members(*gen_atoms)
                gens = (z,) + tuple(int(index.reps[a]) for a in gen_atoms)
                result.append(Subgroup(G, members, gens))
                continue
            planes = _nondegenerate_planes(index, np.flatnonzero(cm), zset)
            if not planes:
                continue
            if members is None:
                members = plane_members(*gen_atoms)
            for k, l in planes:
                # Z lies in X, so a transversal of Z in the plane suffices
                ty = G.mul(index.rep_powers[k][:, None], index.rep_powers[l][None, :]).ravel()
                new = np.unique(G.mul(members[:, None], ty[None, :]))
                if len(new) != p ** (2 * n + 3):
                    continue
                key = new.tobytes()
                if key not in nxt:
                    nxt[key] = (tuple(gen_atoms) + (k, l), new)
        level = list(nxt.values())
        n += 1
    members = canonical_order(result)
    return EspecReport(members, Z, _counts(members, p))


def verify_espec_members(G: FiniteGroup, report: EspecReport) -> None:
    """Re-check every member of E(G) from the definitions."""
    for X in report.members:
        if not gr.is_extraspecial(G, X):
            raise AssertionError(f"{X!r} is not extraspecial")
        if not gr.exponent_is_p(G, X):
            raise AssertionError(f"{X!r} does not have exponent p")
        if gr.center(G, X) != report.z:
            raise AssertionError(f"Z({X!r}) differs from Omega_1(Z(G))")
        if gr.omega1(G, gr.centralizer(G, X)) != report.z:
            raise AssertionError(f"Omega_1(C_G({X!r})) is larger than Z")


# -- brute force (tiny groups only) -------------------------------------------

def omega_generated_subgroups(G: FiniteGroup, limit: int = BRUTEFORCE_LIMIT) -> list[Subgroup]:
    """Every subgroup generated by elements of order p, by iterated joins."""
    if G.order > limit:
        raise ValueError(f"brute force is limited to order {limit}, got {G.order}")
    lines = rank1_subgroups(G)
    found = {G.trivial.key: G.trivial}
    frontier = [G.trivial]
    while frontier:
        nxt = []
        for H in frontier:
            for L in lines:
                g = L.generators[0]
                if g in H:
                    continue
                K = gr.subgroup_closure(G, [g], start=H)
                if K.key not in found:
                    found[K.key] = K
                    nxt.append(K)
        frontier = nxt
    return canonical_order(found.values())


def mz_bruteforce(G: FiniteGroup, Z: Subgroup | None = None, limit: int = BRUTEFORCE_LIMIT) -> list[Subgroup]:
    """M_Z(G) = {X : Z < X = Omega_1(X), [X, X] <= Z}."""
    Z = Z if Z is not None else omega1_center(G)
    if Z.order != G.p:
        raise ValueError("Z must have order p")
    out = []
    for X in omega_generated_subgroups(G, limit):
        if X.order <= Z.order or not Z.issubset(X):
            continue
        if gr.omega1(G, X) != X:
            continue
        if gr.commutator_subgroup(G, X, X).issubset(Z):
            out.append(X)
    return out


def maximal_members(family: list[Subgroup]) -> list[Subgroup]:
    fam = canonical_order(family)
    return [X for X in fam if not any(X.order < Y.order and X.issubset(Y) for Y in fam)]


def mz_star_bruteforce(G: FiniteGroup, Z: Subgroup | None = None, limit: int = BRUTEFORCE_LIMIT) -> list[Subgroup]:
    """Inclusion-maximal members of M_Z(G)."""
    return maximal_members(mz_bruteforce(G, Z, limit))


def normal_elementary_abelian_p2(G: FiniteGroup) -> list[Subgroup]:
    """Normal elementary abelian subgroups of order p^2 (small groups)."""
    out = []
    for S in elem_abelian_poset(G):
        if S.order != G.p ** 2:
            continue
        conj = G.conj(S.members[:, None], np.asarray(G.generators)[None, :]).ravel()
        if S.contains(conj).all():
            out.append(S)
    return out


def intersection(subgroups) -> Subgroup:
    subgroups = list(subgroups)
    members = subgroups[0].members
    for S in subgroups[1:]:
        members = np.intersect1d(members, S.members)
    return Subgroup(subgroups[0].parent, members)


def families_of_size(members: list[Subgroup], lo: int = 2):
    for r in range(lo, len(members) + 1):
        yield from combinations(members, r)
