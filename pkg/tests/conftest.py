"""Shared fixtures and plain-Python oracles.

The oracles deliberately use nested loops over lists, independent of the
numpy kernels in the package, so a bug in one cannot hide in the other.
"""

import itertools

import pytest

from trusslab.algebra import GroupTable, MagmaTable, cyclic, klein4, s3
from trusslab.enumerate import enumerate_naive, enumerate_structured
from trusslab.truss import LEFT, TWO_SIDED, build_truss


def add_mod(n):
    return [[(a + b) % n for b in range(n)] for a in range(n)]


def mul_mod(n):
    return [[(a * b) % n for b in range(n)] for a in range(n)]


def perm_inverse(G, one):
    n = len(G)
    return [next(b for b in range(n) if G[a][b] == one) for a in range(n)]


def identity_of(G):
    n = len(G)
    return next(e for e in range(n) if all(G[e][a] == a == G[a][e] for a in range(n)))


def oracle_is_left_truss(G, C):
    """Associativity of C and a o (b <> c) = (a o b) <> (a o 1)^-1 <> (a o c), by loops."""
    n = len(G)
    one = identity_of(G)
    inv = perm_inverse(G, one)
    for a, b, c in itertools.product(range(n), repeat=3):
        if C[C[a][b]][c] != C[a][C[b][c]]:
            return False
        s = C[a][one]
        if C[a][G[b][c]] != G[G[C[a][b]][inv[s]]][C[a][c]]:
            return False
    return True


def oracle_braid(first, second):
    n = len(first)

    def r(a, b):
        return first[a][b], second[a][b]

    for a, b, c in itertools.product(range(n), repeat=3):
        x, y = r(a, b)
        y2, z = r(y, c)
        x3, y3 = r(x, y2)
        lhs = (x3, y3, z)
        y4, z4 = r(b, c)
        x5, y5 = r(a, y4)
        y6, z6 = r(y5, z4)
        if lhs != (x5, y6, z6):
            return False
    return True


def truss_of(group, circ, side=LEFT):
    return build_truss(group, MagmaTable(circ), side)


@pytest.fixture(scope="session")
def z2():
    return cyclic(2)


@pytest.fixture(scope="session")
def z3():
    return cyclic(3)


@pytest.fixture(scope="session")
def z4():
    return cyclic(4)


@pytest.fixture(scope="session")
def trivial_brace():
    """Trivial brace (A, <>, <>) on Z/n."""

    def make(n, side=TWO_SIDED):
        g = cyclic(n)
        return build_truss(g, MagmaTable(add_mod(n)), side)

    return make


@pytest.fixture(scope="session")
def ring_truss():
    """(Z/n, +, .) viewed as a two-sided truss with sigma identically 0."""

    def make(n):
        return build_truss(cyclic(n), MagmaTable(mul_mod(n)), TWO_SIDED)

    return make


@pytest.fixture(scope="session")
def s3_trivial_brace():
    g = s3()
    return build_truss(g, MagmaTable(g.table), LEFT)


@pytest.fixture(scope="session")
def naive_z2():
    return enumerate_naive(cyclic(2))


@pytest.fixture(scope="session")
def naive_z3():
    return enumerate_naive(cyclic(3))


@pytest.fixture(scope="session")
def structured_z4():
    return enumerate_structured(cyclic(4))


@pytest.fixture(scope="session")
def structured_klein4():
    return enumerate_structured(klein4())


@pytest.fixture(scope="session")
def small_corpus(naive_z2, naive_z3, structured_z4):
    return naive_z2.trusses + naive_z3.trusses + structured_z4.trusses
