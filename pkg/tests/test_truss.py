import itertools

import numpy as np
import pytest

from trusslab.algebra import MagmaTable, s3
from trusslab.errors import TrussError
from trusslab.truss import (
    LEFT,
    RIGHT,
    TWO_SIDED,
    build_truss,
    check_equivalent_forms,
    derive_actions,
    derived_structure_report,
    hierarchy_truss,
    idempotent_truss,
    is_truss,
    port_structure,
    sigma_power_report,
    tau_cocycle,
    translate_family,
    translated_group,
)

from conftest import add_mod, oracle_is_left_truss, truss_of

MAX3 = [[max(a, b) for b in range(3)] for a in range(3)]
LEFT_PROJ3 = [[a] * 3 for a in range(3)]


def test_trivial_brace_z2(trivial_brace):
    t = trivial_brace(2)
    assert t.sigma.tolist() == [0, 1]
    assert t.sigma_is_identity


def test_constant_zero_on_z2(z2):
    t = truss_of(z2, [[0, 0], [0, 0]])
    assert t.sigma.tolist() == [0, 0]


def test_nonassociative_circ_rejected(z2):
    with pytest.raises(TrussError) as exc:
        truss_of(z2, [[0, 1], [0, 0]])
    assert exc.value.kind == "associativity"


def test_law_failure_has_witness(z3):
    assert not oracle_is_left_truss(add_mod(3), MAX3)
    with pytest.raises(TrussError) as exc:
        truss_of(z3, MAX3)
    assert exc.value.kind == "left-law"
    a, b, c = exc.value.witness
    # 1 o (1 + 1) = 2, while (1 o 1) - sigma(1) + (1 o 1) = 1
    assert MAX3[a][(b + c) % 3] != ((MAX3[a][b] - MAX3[a][0] + MAX3[a][c]) % 3)


def test_right_and_two_sided(z3):
    assert truss_of(z3, LEFT_PROJ3, RIGHT).sigma.tolist() == [0, 0, 0]
    assert truss_of(z3, LEFT_PROJ3, LEFT).sigma.tolist() == [0, 1, 2]
    with pytest.raises(TrussError) as exc:
        truss_of(z3, LEFT_PROJ3, TWO_SIDED)
    assert exc.value.kind == "cocycle-mismatch"
    assert not is_truss(z3, MAX3)


def test_supplied_sigma_is_checked(z2):
    with pytest.raises(TrussError) as exc:
        build_truss(z2, MagmaTable(add_mod(2)), LEFT, sigma=[1, 0])
    assert exc.value.kind == "sigma-mismatch"


def test_idempotent_constant_two_on_z4(z4):
    t = idempotent_truss(z4, [2, 2, 2, 2])
    assert (t.C == 2).all()
    assert oracle_is_left_truss(add_mod(4), t.circ.rows())


def test_idempotent_constant_identity():
    t = idempotent_truss(s3(), [0] * 6)
    assert (t.C == 0).all()


def test_idempotent_identity_gives_left_projection(z2):
    t = idempotent_truss(z2, [0, 1])
    assert t.circ.rows() == [[0, 0], [1, 1]]


def test_non_idempotent_rejected(z3):
    with pytest.raises(TrussError) as exc:
        idempotent_truss(z3, [1, 2, 0])
    assert exc.value.kind == "not-idempotent"


def test_actions_ring_type(ring_truss):
    t = ring_truss(4)
    acts = derive_actions(t)
    assert (acts.lam == t.C).all() and (acts.mu == t.C).all()


def test_actions_brace_type(s3_trivial_brace):
    t = s3_trivial_brace
    acts = derive_actions(t)
    G, inv = t.G, t.inv
    for a, b in itertools.product(range(6), repeat=2):
        assert acts.lam[a, b] == G[inv[a], t.C[a, b]]
    # for the trivial brace the left action is trivial
    assert (acts.lam == np.arange(6)[None, :]).all()


def test_actions_trivial_z2(trivial_brace):
    acts = derive_actions(trivial_brace(2))
    assert acts.lam.tolist() == [[0, 1], [0, 1]]


def test_equivalent_forms_trivial_brace(trivial_brace):
    report = check_equivalent_forms(trivial_brace(3, LEFT))
    assert report.ok
    assert report["sigma-form"].checked == 27
    assert report["heap-form"].checked == 81


def test_equivalent_forms_constant_truss(z4):
    assert check_equivalent_forms(idempotent_truss(z4, [2] * 4)).ok


def test_translate_identity_is_unchanged(structured_z4):
    for t in structured_z4.trusses[::17]:
        assert translate_family(t, t.one) == t


def test_translate_at_sigma_one_squares_sigma(structured_z4, structured_klein4):
    for t in structured_z4.trusses + structured_klein4.trusses[::5]:
        tt = translate_family(t, int(t.sigma[t.one]))
        assert (tt.sigma == t.sigma[t.sigma]).all()


def test_translate_trivial_brace_z4(trivial_brace):
    t = trivial_brace(4, LEFT)
    tt = translate_family(t, 2)
    for a, b in itertools.product(range(4), repeat=2):
        assert tt.G[a, b] == (a + b - 2) % 4
    assert tt.one == 2
    assert oracle_is_left_truss(tt.G.tolist(), tt.circ.rows())


def test_translated_group_inverse(z4):
    g = translated_group(z4, 1)
    assert g.identity == 1
    assert [(1 + 1 - a) % 4 for a in range(4)] == g.inverse.tolist()


def test_port_identity(structured_z4):
    t = structured_z4.trusses[40]
    assert port_structure(t, t.group, list(range(4))) == t


def test_port_along_doubling_z3(trivial_brace):
    t = trivial_brace(3, LEFT)
    f = [0, 2, 1]  # x -> 2x
    ported = port_structure(t, t.group, f)
    for a, b in itertools.product(range(3), repeat=2):
        # f^-1(f(a) + f(b)) = a + b since f is additive
        assert ported.C[a, b] == (a + b) % 3
    assert ported.sigma_is_identity


def test_port_rejects_non_bijection(trivial_brace):
    t = trivial_brace(3, LEFT)
    with pytest.raises(Exception):
        port_structure(t, t.group, [0, 0, 1])


def test_hierarchy_cocycle_is_tau(structured_z4, structured_klein4):
    for t in structured_z4.trusses + structured_klein4.trusses[::7]:
        for e in range(t.size):
            h = hierarchy_truss(t, e)
            assert h.group == t.group
            G, C, inv = t.G, t.C, t.inv
            tau = [int(G[C[G[a, e], e], inv[e]]) for a in range(t.size)]
            assert h.sigma.tolist() == tau == tau_cocycle(t, e).tolist()


def test_sigma_powers_two_sided_central(ring_truss, trivial_brace):
    for t in (ring_truss(4), trivial_brace(4)):
        report = sigma_power_report(t)
        assert report.notes["identity_central"] and report.ok


def test_sigma_powers_constant_z2(z2):
    for c in (0, 1):
        t = idempotent_truss(z2, [c, c])
        report = sigma_power_report(t)
        assert report.notes["identity_central"] and report.ok


def test_derived_structure_s3_sample():
    from trusslab.enumerate import enumerate_structured

    for t in enumerate_structured(s3()).trusses[::97]:
        assert derived_structure_report(t).ok


def test_to_json_roundtrip(structured_klein4):
    from trusslab.io import truss_from_json

    for t in structured_klein4.trusses[::50]:
        assert truss_from_json(t.to_json()) == t
