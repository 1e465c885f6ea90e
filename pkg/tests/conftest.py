from itertools import product

import pytest

from symcurve import oracle


def simplex(k: int, n: int = 3):
    """Lattice points of k times the standard n-simplex."""
    return [p for p in product(range(k + 1), repeat=n) if sum(p) <= k]


def cube(n: int = 3):
    return list(product(range(2), repeat=n))


def not_type_d(A):
    return len({a[0] - a[1] for a in A}) > 1


@pytest.fixture(scope="session")
def quadric():
    return simplex(2)


@pytest.fixture(scope="session")
def random_corpus():
    """Seeded random supports in [-3, 3]^3 of size 3..8, type D excluded."""
    return oracle.random_supports(200, seed=2024, accept=not_type_d)


@pytest.fixture(scope="session")
def small_corpus():
    """Seeded random supports in [0, 2]^3, where box scans are cheap."""
    return oracle.random_supports(80, coords=(0, 2), sizes=range(3, 7), seed=99, accept=not_type_d)


def random_unimodular(rng, n: int):
    """Product of random elementary integer matrices and a sign flip."""
    W = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(6):
        i, j = rng.sample(range(n), 2)
        k = rng.randint(-2, 2)
        W[i] = [a + k * b for a, b in zip(W[i], W[j])]
    W[0] = [-a for a in W[0]] if rng.random() < 0.5 else W[0]
    return W
