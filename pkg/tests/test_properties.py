"""Algebraic invariants checked on generated inputs."""

import itertools
import random

import numpy as np
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from trusslab.algebra import MagmaTable, automorphisms, cyclic, klein4, random_group, relabel, s3
from trusslab.enumerate import classify, enumerate_naive, enumerate_structured
from trusslab.hopf import linearize, vadd
from trusslab.morphism import GROUP_NOTION, HEAP_NOTION, build_morphism, compute_pith
from trusslab.truss import (
    build_truss,
    derived_structure_report,
    idempotent_truss,
    port_structure,
    sigma_power_report,
    translate_family,
)
from trusslab.ybe import solution_from_truss

from conftest import oracle_braid, oracle_is_left_truss

CORPUS = (
    enumerate_naive(cyclic(2)).trusses
    + enumerate_naive(cyclic(3)).trusses
    + enumerate_structured(cyclic(4)).trusses
    + enumerate_structured(klein4()).trusses
)
S3_TRUSSES = enumerate_structured(s3()).trusses

trusses = st.sampled_from(CORPUS + S3_TRUSSES[::7])
fast = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@fast
@given(trusses)
def test_corpus_passes_loop_oracle(t):
    assert oracle_is_left_truss(t.G.tolist(), t.C.tolist())


@fast
@given(trusses, st.data())
def test_translation_composes(t, data):
    e = data.draw(st.integers(0, t.size - 1))
    f = data.draw(st.integers(0, t.size - 1))
    # translating at e and then at f is the same as translating at f
    assert translate_family(translate_family(t, e), f) == translate_family(t, f)


@fast
@given(trusses, st.data())
def test_translated_cocycle(t, data):
    e = data.draw(st.integers(0, t.size - 1))
    assert (translate_family(t, e).sigma == t.C[:, e]).all()


@fast
@given(trusses, st.data())
def test_port_round_trip(t, data):
    f = data.draw(st.sampled_from(automorphisms(t.group)))
    ported = port_structure(t, t.group, f)
    finv = np.argsort(f)
    assert port_structure(ported, t.group, finv) == t
    # f is a truss isomorphism from the ported structure onto t
    build_morphism(ported, t, f)
    assert derived_structure_report(ported).ok == derived_structure_report(t).ok


@fast
@given(trusses)
def test_sigma_powers(t):
    assert sigma_power_report(t).ok


@fast
@given(st.integers(0, 10_000))
def test_idempotent_maps_give_trusses(seed):
    rng = random.Random(seed)
    g = random_group(rng, max_size=8)
    n = g.size
    image = rng.sample(range(n), rng.randint(1, n))
    sigma = [x if x in image else rng.choice(image) for x in range(n)]
    t = idempotent_truss(g, sigma)
    assert oracle_is_left_truss(g.table.tolist(), t.C.tolist())


@fast
@given(trusses, trusses)
def test_direct_product_of_trusses(t1, t2):
    n1, n2 = t1.size, t2.size
    if n1 * n2 > 9:
        return
    code = lambda a, b: a * n2 + b
    pairs = list(itertools.product(range(n1), range(n2)))
    G = [[code(t1.G[a, c], t2.G[b, d]) for c, d in pairs] for a, b in pairs]
    C = [[code(t1.C[a, c], t2.C[b, d]) for c, d in pairs] for a, b in pairs]
    t = build_truss(MagmaTable(G), MagmaTable(C))
    assert t.sigma.tolist() == [code(t1.sigma[a], t2.sigma[b]) for a, b in pairs]


@fast
@given(st.sampled_from([t for t in CORPUS + S3_TRUSSES if t.circ_group is not None]), st.data())
def test_ybe_solutions_are_braided(t, data):
    e = data.draw(st.integers(0, t.size - 1))
    r = solution_from_truss(t, e)
    assert oracle_braid(r.first.tolist(), r.second.tolist())
    assert len({r(a, b) for a in range(t.size) for b in range(t.size)}) == t.size**2


@fast
@given(trusses, st.data())
def test_pith_invariants(t, data):
    f = build_morphism(t, t, range(t.size))
    pith = compute_pith(f)
    assert pith.kernel == {t.one}
    assert pith.report().ok


rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(CORPUS[::3]), st.data())
def test_linearized_products_are_bilinear(t, data):
    h = linearize(t)
    n = h.dim
    vec = st.dictionaries(st.integers(0, n - 1), rationals.filter(lambda q: q != 0), max_size=n)
    x, y, z = data.draw(vec), data.draw(vec), data.draw(vec)
    assert h.o(vadd(x, y), z) == vadd(h.o(x, z), h.o(y, z))
    assert h.dia(x, vadd(y, z)) == vadd(h.dia(x, y), h.dia(x, z))
    assert h.eps(h.dia(x, y)) == h.eps(x) * h.eps(y)


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10_000))
def test_classification_invariant_under_relabelling(seed):
    """Enumerating over a relabelled copy of Z/3 gives the same class counts."""
    rng = random.Random(seed)
    perm = list(range(3))
    rng.shuffle(perm)
    g = relabel(cyclic(3), perm)
    res = enumerate_naive(g)
    for notion in (GROUP_NOTION, HEAP_NOTION):
        classify(res, notion)
    assert res.counts() == {"total": 32, "classes_group": 19, "classes_heap": 9}
