import itertools

import pytest

from trusslab.algebra import (
    MagmaTable,
    automorphisms,
    cyclic,
    dihedral,
    direct_product,
    endomorphisms,
    find_isomorphisms,
    group_by_name,
    heap_op,
    klein4,
    s3,
    validate_group,
    validate_semigroup,
)
from trusslab.errors import AxiomError, TableError

from conftest import add_mod


def test_group_addition_is_semigroup():
    assert validate_semigroup(MagmaTable([[0, 1], [1, 0]]))


def test_left_projection_is_semigroup():
    assert validate_semigroup(MagmaTable([[0, 0], [1, 1]]))


def test_nonassociative_table_has_witness():
    v = validate_semigroup(MagmaTable([[0, 1], [0, 0]]))
    assert not v
    # (1 o 0) o 1 = 0 o 1 = 1 but 1 o (0 o 1) = 1 o 1 = 0
    assert v.witness == (1, 0, 1)


def test_validate_group_z3():
    g = validate_group(MagmaTable(add_mod(3)))
    assert g.identity == 0
    assert g.inverse.tolist() == [0, 2, 1]


def test_s3_from_permutation_composition():
    perms = list(itertools.permutations(range(3)))
    table = [[perms.index(tuple(p[q[i]] for i in range(3))) for q in perms] for p in perms]
    g = validate_group(MagmaTable(table))
    assert g.size == 6 and not g.is_abelian
    assert g == s3()


def test_left_projection_is_not_a_group():
    with pytest.raises(AxiomError) as exc:
        validate_group(MagmaTable([[0, 0], [1, 1]]))
    assert exc.value.kind == "identity"


@pytest.mark.parametrize(
    "table, kind",
    [([[0, 1], [1]], "shape"), ([[0, 2], [1, 0]], "entry"), ([[0.5, 1], [1, 0]], "entry"), ([], "shape")],
)
def test_malformed_tables(table, kind):
    with pytest.raises(TableError) as exc:
        MagmaTable(table)
    assert exc.value.kind == kind


def test_heap_op_z4():
    assert heap_op(cyclic(4), 1, 2, 3) == 2


def test_heap_op_cancels():
    g = s3()
    for a, c in itertools.product(range(6), repeat=2):
        assert heap_op(g, a, a, c) == c


def test_heap_op_s3_matches_permutations():
    perms = list(itertools.permutations(range(3)))
    g = s3()
    r, s = perms.index((1, 2, 0)), perms.index((1, 0, 2))

    def comp(p, q):
        return tuple(p[q[i]] for i in range(3))

    inv_s = tuple(sorted(range(3), key=lambda i: perms[s][i]))
    expected = comp(comp(perms[r], inv_s), perms[r])
    assert perms[heap_op(g, r, s, r)] == expected


@pytest.mark.parametrize("g", [cyclic(4), klein4(), s3()], ids=["z4", "klein4", "s3"])
def test_heap_axioms(g):
    assert all(g.heap().check_axioms())


def test_isomorphisms():
    assert find_isomorphisms(cyclic(2), cyclic(2)) == [(0, 1)]
    assert find_isomorphisms(cyclic(4), klein4()) == []
    assert len(find_isomorphisms(cyclic(3), cyclic(3))) == 2


@pytest.mark.parametrize(
    "g, aut, end",
    [(cyclic(4), 2, 4), (klein4(), 6, 16), (s3(), 6, 10), (cyclic(6), 2, 6)],
    ids=["z4", "klein4", "s3", "z6"],
)
def test_automorphism_and_endomorphism_counts(g, aut, end):
    # brute force over all maps as the oracle
    n = g.size
    T = g.table.tolist()
    homs = [f for f in itertools.product(range(n), repeat=n) if all(f[T[a][b]] == T[f[a]][f[b]] for a in range(n) for b in range(n))]
    assert len(homs) == end == len(endomorphisms(g))
    assert len([f for f in homs if len(set(f)) == n]) == aut == len(automorphisms(g))


def test_group_names():
    assert group_by_name("z5").size == 5
    assert group_by_name("C3") == cyclic(3)
    assert group_by_name("v4") == klein4()
    assert group_by_name("d3").size == 6 and not group_by_name("d3").is_abelian
    assert group_by_name("z2xz2").size == 4
    assert len(find_isomorphisms(group_by_name("z2xz2"), klein4())) == 6
    with pytest.raises(ValueError):
        group_by_name("q8")


def test_dihedral_and_products():
    assert len(find_isomorphisms(dihedral(3), s3())) == 6
    assert direct_product(cyclic(2), cyclic(3)).is_abelian
    assert len(find_isomorphisms(direct_product(cyclic(2), cyclic(3)), cyclic(6))) == 2
