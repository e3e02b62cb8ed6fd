import itertools

import pytest

from trusslab.algebra import MagmaTable
from trusslab.errors import TrussError
from trusslab.morphism import build_morphism
from trusslab.ring import (
    RingTable,
    ring_as_truss,
    ring_from_truss,
    ring_report,
    shifted_ring,
    verify_two_sided,
)
from trusslab.truss import LEFT, TWO_SIDED, build_truss

from conftest import mul_mod


def test_integer_ring_is_two_sided(ring_truss):
    assert verify_two_sided(ring_truss(4))


def test_trivial_brace_is_two_sided(trivial_brace):
    for n in (2, 3, 4, 5):
        assert verify_two_sided(trivial_brace(n, LEFT))


def test_left_only_truss_fails(z3):
    t = build_truss(z3, MagmaTable([[a] * 3 for a in range(3)]), LEFT)
    v = verify_two_sided(t)
    assert not v and v.law == "cocycle-two-sided"


def test_nonabelian_rejected(s3_trivial_brace):
    with pytest.raises(TrussError) as exc:
        verify_two_sided(s3_trivial_brace)
    assert exc.value.kind == "nonabelian"


def test_ring_type_round_trip(ring_truss):
    for n in (2, 3, 4, 6):
        r = ring_from_truss(ring_truss(n))
        assert r.mul.rows() == mul_mod(n)
        assert ring_as_truss(r) == ring_truss(n)


def test_trivial_brace_gives_zero_ring(trivial_brace):
    r = ring_from_truss(trivial_brace(2))
    assert r.mul.rows() == [[0, 0], [0, 0]]


def test_brace_type_formula(structured_z4):
    seen = 0
    for t in structured_z4.trusses:
        if not t.sigma_is_identity or not verify_two_sided(t):
            continue
        t2 = build_truss(t.group, t.circ, TWO_SIDED)
        r = ring_from_truss(t2)
        for a, b in itertools.product(range(4), repeat=2):
            assert r.mul.array[a, b] == (t.C[a, b] - a - b) % 4
        seen += 1
    assert seen > 1


def test_ring_axioms_by_loops(structured_z4):
    for t in structured_z4.trusses:
        if not verify_two_sided(t):
            continue
        r = ring_from_truss(t)
        A, M = r.add.table.tolist(), r.mul.rows()
        for a, b, c in itertools.product(range(4), repeat=3):
            assert M[M[a][b]][c] == M[a][M[b][c]]
            assert M[a][A[b][c]] == A[M[a][b]][M[a][c]]
            assert M[A[a][b]][c] == A[M[a][c]][M[b][c]]


def test_shift_at_zero_is_plain_ring(ring_truss, trivial_brace):
    for t in (ring_truss(4), trivial_brace(4)):
        assert shifted_ring(t, 0) == ring_from_truss(t)


def test_shift_trivial_brace_z4(trivial_brace):
    r = shifted_ring(trivial_brace(4), 2)
    for a, b in itertools.product(range(4), repeat=2):
        assert r.add.table[a, b] == (a + b - 2) % 4
        # (a + b) - (a + 2) - (b + 2) + 4 + 2 = 2, the zero of +_2
        assert r.mul.array[a, b] == 2
    assert r.zero == 2


def test_shift_needs_central():
    # the noncommutative ring (a, b)(c, d) = (ac, ad) on Z/2 x Z/2, element i = 2a + b
    xor = [[i ^ j for j in range(4)] for i in range(4)]

    def mul(i, j):
        a, b, c, d = i >> 1, i & 1, j >> 1, j & 1
        return 2 * (a * c) + (a * d)

    t = build_truss(MagmaTable(xor), MagmaTable([[mul(i, j) for j in range(4)] for i in range(4)]), TWO_SIDED)
    assert shifted_ring(t, 0) == ring_from_truss(t)
    with pytest.raises(TrussError) as exc:
        shifted_ring(t, 1)  # (0, 1) o (1, 0) = 0 but (1, 0) o (0, 1) = (0, 1)
    assert exc.value.kind == "not-central"


def test_functoriality(trivial_brace):
    f = build_morphism(trivial_brace(4), trivial_brace(2), [0, 1, 0, 1])
    ring_from_truss(trivial_brace(4), morphisms=[f])


def test_ring_report_detects_nonring(z2):
    bad = RingTable(z2, MagmaTable([[0, 1], [1, 1]]))
    rep = ring_report(bad)
    assert not rep.ok and not rep["left-distributive"]
