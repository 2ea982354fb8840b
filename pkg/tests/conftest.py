from fractions import Fraction
from itertools import permutations
from pathlib import Path

import numpy as np
import pytest

from quillenkit import constructions as cs

ROOT = Path(__file__).resolve().parents[1]
CORPUS = ROOT / "corpus"


def det_mod(a, p):
    """Leibniz determinant mod p; only for tiny matrices."""
    n = len(a)
    total = 0
    for perm in permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):
            for j in range(i + 1, n):
                if seen[i] > seen[j]:
                    sign = -sign
        prod = 1
        for i in range(n):
            prod *= int(a[i][perm[i]])
        total += sign * prod
    return total % p


def minor_rank_mod(a, p):
    """Largest k with a nonzero k x k minor."""
    from itertools import combinations
    a = np.asarray(a)
    r, c = a.shape
    for k in range(min(r, c), 0, -1):
        for rows in combinations(range(r), k):
            for cols in combinations(range(c), k):
                if det_mod(a[np.ix_(rows, cols)].tolist(), p):
                    return k
    return 0


def rational_rank(a):
    rows = [[Fraction(int(x)) for x in row] for row in np.asarray(a)]
    if not rows:
        return 0
    n_cols = len(rows[0])
    rk = 0
    for c in range(n_cols):
        piv = next((r for r in range(rk, len(rows)) if rows[r][c] != 0), None)
        if piv is None:
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        for r in range(len(rows)):
            if r != rk and rows[r][c] != 0:
                f = rows[r][c] / rows[rk][c]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rk])]
        rk += 1
    return rk


@pytest.fixture(scope="session")
def e31():
    return cs.extraspecial_exponent_p(3, 1)


@pytest.fixture(scope="session")
def e32():
    return cs.extraspecial_exponent_p(3, 2)


@pytest.fixture(scope="session")
def c9():
    return cs.cyclic(3, 2)


@pytest.fixture(scope="session")
def e31_c9(e31, c9):
    return cs.central_product(e31, c9)


@pytest.fixture(scope="session")
def s72():
    return cs.semidirect_example(7, 2)


def small_groups():
    """Constructed groups of modest order used in sweeping checks."""
    e31 = cs.extraspecial_exponent_p(3, 1)
    return [
        cs.cyclic(3, 1), cs.cyclic(3, 2), cs.cyclic(5, 1),
        cs.elementary_abelian(3, 2), cs.elementary_abelian(3, 3),
        e31, cs.extraspecial_exponent_p(3, 2), cs.extraspecial_exponent_p(5, 1),
        cs.central_product(e31, cs.cyclic(3, 2)), cs.central_product(e31, e31),
        cs.direct_product(e31, cs.cyclic(3, 1)),
        cs.semidirect_example(5, 1),
    ]
