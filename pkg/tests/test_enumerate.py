import json

import pytest

from trusslab.algebra import cyclic, klein4, s3
from trusslab.enumerate import (
    FIXTURE_ENV,
    classify,
    compare_with_fixture,
    enumerate_naive,
    enumerate_structured,
    enumerate_trusses,
    pinned_counts,
    relabelings,
    write_fixture,
)
from trusslab.errors import BoundExceeded
from trusslab.morphism import GROUP_NOTION, HEAP_NOTION, bijection_search
from trusslab.truss import build_truss

from conftest import oracle_is_left_truss


def test_trivial_group():
    res = enumerate_naive(cyclic(1))
    assert res.total == 1
    assert enumerate_structured(cyclic(1)).keys() == res.keys()


@pytest.mark.parametrize("n", [2, 3])
def test_structured_equals_naive(n):
    assert enumerate_structured(cyclic(n)).keys() == enumerate_naive(cyclic(n)).keys()


def test_naive_matches_loop_oracle(naive_z2):
    # every one of the 16 tables on {0, 1}, tested by plain loops
    import itertools

    add = [[0, 1], [1, 0]]
    found = set()
    for flat in itertools.product(range(2), repeat=4):
        C = [list(flat[:2]), list(flat[2:])]
        if oracle_is_left_truss(add, C):
            found.add(flat)
    assert found == naive_z2.keys()


def test_pinned_counts(naive_z2, naive_z3, structured_z4, structured_klein4):
    assert (naive_z2.total, naive_z3.total, structured_z4.total, structured_klein4.total) == (8, 32, 172, 618)


def test_every_output_is_a_truss(structured_klein4):
    for t in structured_klein4.trusses:
        assert build_truss(t.group, t.circ) == t


def test_bounds():
    with pytest.raises(BoundExceeded):
        enumerate_naive(cyclic(4))
    with pytest.raises(BoundExceeded):
        enumerate_structured(cyclic(9))
    with pytest.raises(ValueError):
        enumerate_trusses(cyclic(2), mode="fast")


def test_parallel_matches_serial():
    a = enumerate_structured(cyclic(4))
    b = enumerate_structured(cyclic(4), jobs=2)
    assert [t.key() for t in a.trusses] == [t.key() for t in b.trusses]


def test_classify_z2(naive_z2):
    classify(naive_z2, GROUP_NOTION)
    classify(naive_z2, HEAP_NOTION)
    assert naive_z2.counts() == {"total": 8, "classes_group": 8, "classes_heap": 5}
    assert sum(naive_z2.class_sizes[HEAP_NOTION]) == 8


@pytest.mark.parametrize("notion", [GROUP_NOTION, HEAP_NOTION])
def test_classes_by_brute_force(naive_z3, notion):
    """Union-find over exhaustive bijection search reproduces the class count."""
    ts = naive_z3.trusses
    parent = list(range(len(ts)))

    def find(i):
        while parent[i] != i:
            i = parent[i]
        return i

    for i in range(len(ts)):
        for j in range(i + 1, len(ts)):
            if bijection_search(ts[i], ts[j], notion):
                parent[find(j)] = find(i)
    classes = len({find(i) for i in range(len(ts))})
    classify(naive_z3, notion)
    assert classes == len(naive_z3.representatives[notion])
    # representatives are pairwise non-isomorphic
    reps = naive_z3.representatives[notion]
    assert all(not bijection_search(x, y, notion) for k, x in enumerate(reps) for y in reps[k + 1 :])


def test_heap_classes_coarser(structured_z4):
    classify(structured_z4, GROUP_NOTION)
    classify(structured_z4, HEAP_NOTION)
    assert structured_z4.counts() == {"total": 172, "classes_group": 101, "classes_heap": 34}


def test_relabelings():
    assert len(relabelings(s3(), GROUP_NOTION)) == 6
    assert len(relabelings(klein4(), HEAP_NOTION)) == 24
    with pytest.raises(ValueError):
        relabelings(s3(), "ring")


def test_fixture_comparison(naive_z2, tmp_path, monkeypatch):
    assert pinned_counts()["z3"] == {"classes_group": 19, "classes_heap": 9, "total": 32}
    monkeypatch.setenv(FIXTURE_ENV, str(tmp_path))
    write_fixture({"z2": {"total": 9}})
    assert json.loads((tmp_path / "counts.json").read_text()) == {"z2": {"total": 9}}
    res = enumerate_naive(cyclic(2))
    cmp = compare_with_fixture("z2", res)
    assert not cmp["ok"] and cmp["counts"]["total"] == {"found": 8, "pinned": 9, "ok": False}
    assert compare_with_fixture("z7", res)["counts"]["total"]["pinned"] is None


def test_result_json(naive_z2):
    data = naive_z2.to_json(tables=False)
    assert data["mode"] == "naive" and "seconds" not in data
    assert naive_z2.to_json(timings=True)["seconds"] >= 0
