"""Two-sided trusses over abelian groups and their rings.

A two-sided truss (A, +, o) yields the ring (A, +, .) with
a . b = a o b - sigma(a + b), where sigma(a) = a o 0 = 0 o a.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import GroupTable, MagmaTable, as_group, as_magma, validate_group, validate_semigroup
from .checks import Report, Verdict, compare
from .errors import MorphismError, TrussError
from .truss import TWO_SIDED, SkewTruss, build_truss, left_law, right_law, translate_family


@dataclass(frozen=True, eq=False)
class RingTable:
    add: GroupTable
    mul: MagmaTable

    @property
    def size(self) -> int:
        return self.add.size

    @property
    def zero(self) -> int:
        return self.add.identity

    def __eq__(self, other):
        if not isinstance(other, RingTable):
            return NotImplemented
        return self.add == other.add and self.mul == other.mul

    def __hash__(self):
        return hash((self.add, self.mul))

    def to_json(self) -> dict:
        return {"size": self.size, "add": self.add.op.rows(), "mul": self.mul.rows()}


def ring_report(r: RingTable) -> Report:
    A, M, neg = r.add.table, r.mul.array, r.add.inverse
    n = r.size
    idx = np.arange(n)
    a, b, c = np.ix_(idx, idx, idx)
    a2, b2 = np.ix_(idx, idx)
    report = Report("ring-axioms")
    report.add(compare("additive-abelian", A, A.T))
    report.add(validate_semigroup(r.mul))
    report.add(compare("left-distributive", M[a, A[b, c]], A[M[a, b], M[a, c]]))
    report.add(compare("right-distributive", M[A[a, b], c], A[M[a, c], M[b, c]]))
    report.add(compare("negation-left", M[neg[a2], b2], neg[M]))
    report.add(compare("negation-right", M[a2, neg[b2]], neg[M]))
    return report


def verify_two_sided(t: SkewTruss) -> Verdict:
    """Both distributive laws with one cocycle sigma(a) = a o 0 = 0 o a."""
    if not t.group.is_abelian:
        raise TrussError("two-sided trusses need an abelian group", kind="nonabelian")
    G, inv, C, zero = t.G, t.inv, t.C, t.one
    sigma = C[:, zero]
    v = compare("cocycle-two-sided", sigma, C[zero, :])
    if not v:
        return v
    v = left_law(G, inv, C, sigma)
    if not v:
        return v
    return right_law(G, inv, C, sigma)


def _require_two_sided(t: SkewTruss) -> None:
    v = verify_two_sided(t)
    if not v:
        raise TrussError(f"not a two-sided truss: {v.law} fails at {v.witness}", kind=v.law, witness=v.witness)


def ring_product(t: SkewTruss) -> np.ndarray:
    G, C, inv, s = t.G, t.C, t.inv, t.sigma
    return G[C, inv[s[G]]]


def ring_from_truss(t: SkewTruss, morphisms=()) -> RingTable:
    """The ring of a two-sided truss; any morphisms given are checked to
    stay multiplicative for the new products."""
    _require_two_sided(t)
    ring = RingTable(t.group, MagmaTable(ring_product(t)))
    ring_report(ring).raise_on_failure()
    for f in morphisms:
        v = ring_morphism_verdict(f)
        if not v:
            raise MorphismError(f"morphism is not multiplicative at {v.witness}", kind=v.law, witness=v.witness)
    return ring


def ring_morphism_verdict(f) -> Verdict:
    """f(a . b) == f(a) . f(b) for a truss morphism between two-sided trusses."""
    dom, cod = f.domain, f.codomain
    _require_two_sided(dom)
    _require_two_sided(cod)
    m = np.asarray(f.map, dtype=np.intp)
    return compare("ring-functoriality", m[ring_product(dom)], ring_product(cod)[m[:, None], m[None, :]])


def ring_as_truss(r: RingTable) -> SkewTruss:
    """A ring is a two-sided truss with cocycle constantly 0."""
    return build_truss(as_group(r.add), as_magma(r.mul), TWO_SIDED)


def central_witness(t: SkewTruss, e: int) -> int | None:
    C = t.C
    bad = np.flatnonzero(C[:, e] != C[e, :])
    return int(bad[0]) if len(bad) else None


def shifted_ring(t: SkewTruss, e: int) -> RingTable:
    """(A, +_e, ._e) with a +_e b = a + b - e and
    a ._e b = a o b - a o e - b o e + e o e + e."""
    _require_two_sided(t)
    if not 0 <= e < t.size:
        raise TrussError(f"element {e} is outside the carrier", kind="element")
    w = central_witness(t, e)
    if w is not None:
        raise TrussError(f"{e} is not central in (A, o): fails against {w}", kind="not-central", witness=(w,))
    G, C, inv = t.G, t.C, t.inv
    add_e = G[G, inv[e]]
    ce = C[:, e]
    a, b = np.ix_(np.arange(t.size), np.arange(t.size))
    mul_e = G[G[G[G[C, inv[ce[a]]], inv[ce[b]]], C[e, e]], e]
    ring = RingTable(validate_group(add_e), MagmaTable(mul_e))
    ring_report(ring).raise_on_failure()
    via_family = ring_from_truss(translate_family(t, e, TWO_SIDED))
    report = Report("shifted-ring")
    report.add(compare("shifted-addition-matches-family", ring.add.table, via_family.add.table))
    report.add(compare("shifted-product-matches-family", ring.mul.array, via_family.mul.array))
    report.raise_on_failure()
    return ring
