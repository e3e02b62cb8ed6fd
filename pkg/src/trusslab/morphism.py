"""Truss morphisms and their piths.

A morphism is a map preserving both the group and the semigroup operation.
The pith of f: A -> B collects the chambers f^-1(sigma_B^n(1)); on a finite
carrier the orbit n -> sigma_B^n(1) is eventually periodic, so chambers are
indexed by orbit position with indices >= preperiod folded into the cycle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .algebra import GroupTable, find_isomorphisms, group_homomorphisms, is_homomorphism
from .checks import Report, Verdict, compare, holds
from .errors import BoundExceeded, MorphismError
from .truss import SkewTruss, action_tables

DEFAULT_MORPHISM_BOUND = 6


@dataclass(frozen=True, eq=False)
class TrussMorphism:
    domain: SkewTruss
    codomain: SkewTruss
    map: tuple[int, ...]

    @cached_property
    def array(self) -> np.ndarray:
        return np.asarray(self.map, dtype=np.intp)

    def __call__(self, a: int) -> int:
        return self.map[a]

    def to_json(self) -> dict:
        return {"map": list(self.map)}


def morphism_verdicts(dom: SkewTruss, cod: SkewTruss, f) -> list[Verdict]:
    f = np.asarray(f, dtype=np.intp)
    return [
        is_homomorphism(f, dom.group, cod.group, "preserves-diamond"),
        is_homomorphism(f, dom.circ, cod.circ, "preserves-circ"),
    ]


def diagram_verdicts(dom: SkewTruss, cod: SkewTruss, f) -> list[Verdict]:
    """f intertwines the cocycles and both actions."""
    f = np.asarray(f, dtype=np.intp)
    da, ca = action_tables(dom), action_tables(cod)
    fa, fb = f[:, None], f[None, :]
    return [
        compare("intertwines-sigma", f[dom.sigma], cod.sigma[f]),
        compare("intertwines-lambda", f[da.lam], ca.lam[fa, fb]),
        compare("intertwines-mu", f[da.mu], ca.mu[fa, fb]),
    ]


def build_morphism(dom: SkewTruss, cod: SkewTruss, f) -> TrussMorphism:
    f = tuple(int(x) for x in f)
    if len(f) != dom.size or any(not 0 <= x < cod.size for x in f):
        raise MorphismError("map must send every domain element into the codomain", kind="shape")
    for v in morphism_verdicts(dom, cod, f):
        if not v:
            raise MorphismError(f"map fails {v.law} at {v.witness}", kind=v.law, witness=v.witness)
    report = Report("morphism-diagrams")
    report.extend(diagram_verdicts(dom, cod, f))
    report.raise_on_failure()
    return TrussMorphism(dom, cod, f)


def is_heap_morphism(f, g1: GroupTable, g2: GroupTable) -> Verdict:
    """f([a, b, c]) == [f a, f b, f c] for all triples."""
    f = np.asarray(f, dtype=np.intp)
    H1, H2 = g1.heap().table, g2.heap().table
    idx = np.arange(g1.size)
    a, b, c = np.ix_(idx, idx, idx)
    return compare("heap-morphism", f[H1], H2[f[a], f[b], f[c]])


def enumerate_morphisms(dom: SkewTruss, cod: SkewTruss, bound: int = DEFAULT_MORPHISM_BOUND) -> list[TrussMorphism]:
    """Every truss morphism dom -> cod: group homomorphisms filtered by o-preservation."""
    if dom.size > bound:
        raise BoundExceeded(
            f"domain has {dom.size} elements, above the bound {bound}; pass a larger bound to search anyway",
            kind="bound",
        )
    out = []
    for f in group_homomorphisms(dom.group, cod.group):
        if is_homomorphism(f, dom.circ, cod.circ):
            out.append(build_morphism(dom, cod, f))
    return out


# --- isomorphism of trusses --------------------------------------------------

GROUP_NOTION = "group"
HEAP_NOTION = "heap"


def heap_isomorphisms(g1: GroupTable, g2: GroupTable) -> list[tuple[int, ...]]:
    """Bijective heap morphisms g1 -> g2.

    A heap morphism f satisfies f(x) = phi(x) <> f(1) with phi = f(-) <> f(1)^-1
    a group homomorphism, so these are exactly x -> phi(x) <> t.
    """
    out = set()
    T2 = g2.table
    for phi in find_isomorphisms(g1, g2):
        p = np.asarray(phi, dtype=np.intp)
        for t in range(g2.size):
            out.add(tuple(T2[p, t].tolist()))
    return sorted(out)


def structure_isomorphisms(t1: SkewTruss, t2: SkewTruss, notion: str = GROUP_NOTION) -> list[tuple[int, ...]]:
    """All truss isomorphisms t1 -> t2 under the chosen notion of morphism.

    Candidate bijections are all group (resp. heap) isomorphisms, which every
    truss isomorphism must be, filtered by o-preservation.
    """
    if t1.size != t2.size:
        return []
    if notion == GROUP_NOTION:
        cands = find_isomorphisms(t1.group, t2.group)
    elif notion == HEAP_NOTION:
        cands = heap_isomorphisms(t1.group, t2.group)
    else:
        raise ValueError(f"unknown notion {notion!r}")
    return [f for f in cands if is_homomorphism(f, t1.circ, t2.circ)]


def bijection_search(t1: SkewTruss, t2: SkewTruss, notion: str = GROUP_NOTION) -> list[tuple[int, ...]]:
    """Brute force over all n! bijections. Oracle for small carriers only."""
    if t1.size != t2.size:
        return []
    n = t1.size
    P = np.array(list(itertools.permutations(range(n))), dtype=np.intp)
    pa, pb = P[:, :, None], P[:, None, :]
    if notion == GROUP_NOTION:
        ok = (P[:, t1.G] == t2.G[pa, pb]).all(axis=(1, 2))
    elif notion == HEAP_NOTION:
        H1, H2 = t1.group.heap().table, t2.group.heap().table
        ok = (P[:, H1] == H2[P[:, :, None, None], P[:, None, :, None], P[:, None, None, :]]).all(axis=(1, 2, 3))
    else:
        raise ValueError(f"unknown notion {notion!r}")
    P = P[ok]
    keep = (P[np.arange(len(P))[:, None, None], t1.C[None]] == t2.C[P[:, :, None], P[:, None, :]]).all(axis=(1, 2))
    return [tuple(int(x) for x in f) for f in P[keep]]


# --- piths -------------------------------------------------------------------

def identity_orbit(t: SkewTruss) -> tuple[tuple[int, ...], int, int]:
    """Orbit 1, sigma(1), sigma^2(1), ... up to the first repeat; returns (orbit, p, q)."""
    orbit = [t.one]
    pos = {t.one: 0}
    while True:
        nxt = int(t.sigma[orbit[-1]])
        if nxt in pos:
            p = pos[nxt]
            return tuple(orbit), p, len(orbit) - p
        pos[nxt] = len(orbit)
        orbit.append(nxt)


def fold_index(k: int, p: int, q: int) -> int:
    """Reduce an orbit index into [0, p + q): exact below p, modulo q above."""
    return k if k < p else p + (k - p) % q


@dataclass(frozen=True, eq=False)
class Pith:
    owner: TrussMorphism
    orbit: tuple[int, ...]
    preperiod: int
    period: int
    chambers: tuple[frozenset, ...]

    def fold(self, k: int) -> int:
        return fold_index(k, self.preperiod, self.period)

    def chamber(self, k: int) -> frozenset:
        """The k-th chamber for any natural number k."""
        return self.chambers[self.fold(k)]

    @cached_property
    def members(self) -> frozenset:
        return frozenset().union(*self.chambers)

    @cached_property
    def index_of(self) -> dict[int, int]:
        return {a: k for k, ch in enumerate(self.chambers) for a in ch}

    @cached_property
    def kernel(self) -> frozenset:
        f = self.owner.map
        one = self.owner.codomain.one
        return frozenset(a for a in range(len(f)) if f[a] == one)

    def report(self) -> Report:
        return pith_report(self)

    def to_json(self) -> dict:
        return {
            "orbit": list(self.orbit),
            "preperiod": self.preperiod,
            "period": self.period,
            "chambers": [sorted(ch) for ch in self.chambers],
            "pith": sorted(self.members),
        }


def compute_pith(f: TrussMorphism) -> Pith:
    orbit, p, q = identity_orbit(f.codomain)
    chambers = tuple(frozenset(a for a, y in enumerate(f.map) if y == v) for v in orbit)
    return Pith(f, orbit, p, q, chambers)


def pith_report(pith: Pith, extra_indices: int = 0) -> Report:
    f = pith.owner
    A = f.domain
    C, G, inv = A.C, A.G, A.inv
    report = Report("pith")
    report.note("orbit", list(pith.orbit))
    report.note("preperiod", pith.preperiod)
    report.note("period", pith.period)
    report.add(holds("chamber0-is-kernel", pith.chambers[0] == pith.kernel))
    ker = np.zeros(A.size, dtype=bool)
    ker[list(pith.kernel)] = True
    report.add(holds("kernel-closed", ker[G[np.ix_(ker.nonzero()[0], ker.nonzero()[0])]].all()))
    report.add(holds("kernel-inverses", ker[inv[ker]].all()))
    idx = np.arange(A.size)
    conj = G[G[idx[:, None], np.flatnonzero(ker)[None, :]], inv[idx][:, None]]
    report.add(holds("kernel-normal", ker[conj].all()))
    report.add(holds("chambers-disjoint", sum(len(c) for c in pith.chambers) == len(pith.members)))
    # Raw definition f^-1(sigma_B^k(1)) against the folded chamber, beyond one full cycle.
    span = len(pith.orbit) + pith.period + extra_indices
    sigma_b = f.codomain.sigma
    value = f.codomain.one
    raw_ok = True
    for k in range(span):
        raw = frozenset(a for a, y in enumerate(f.map) if y == value)
        raw_ok &= raw == pith.chamber(k)
        value = int(sigma_b[value])
    report.add(holds("folded-chambers-match-definition", raw_ok))
    # sigma_A^k(1) lies in chamber k, so no chamber is empty.
    x = A.one
    witness_ok = True
    for k in range(span):
        witness_ok &= x in pith.chamber(k)
        x = int(A.sigma[x])
    report.add(holds("chambers-nonempty", witness_ok and all(pith.chambers)))
    members = sorted(pith.members)
    idx_of = pith.index_of
    closure_ok, additive_ok = True, True
    bad = None
    for a in members:
        for b in members:
            ab = int(C[a, b])
            if ab not in idx_of:
                closure_ok = False
                bad = bad or (a, b)
                continue
            if idx_of[ab] != pith.fold(idx_of[a] + idx_of[b] + 1):
                additive_ok = False
                bad = bad or (a, b)
    report.add(Verdict("pith-subsemigroup", closure_ok, None if closure_ok else bad, len(members) ** 2))
    report.add(Verdict("chamber-additivity", additive_ok, None if additive_ok else bad, len(members) ** 2))
    shift_ok = all(idx_of.get(int(A.sigma[a])) == pith.fold(idx_of[a] + 1) for a in members)
    report.add(holds("sigma-shifts-chambers", shift_ok))
    return report


@dataclass(frozen=True)
class GradedPith:
    """Disjoint union of chambers: pairs (a, k) with degree k + 1."""

    pith: Pith
    elements: tuple[tuple[int, int], ...] = field(default_factory=tuple)

    def degree(self, x: tuple[int, int]) -> int:
        return x[1] + 1

    def product(self, x: tuple[int, int], y: tuple[int, int]) -> tuple[int, int]:
        A = self.pith.owner.domain
        return int(A.C[x[0], y[0]]), self.pith.fold(x[1] + y[1] + 1)

    def report(self) -> Report:
        report = Report("graded-pith")
        members = set(self.elements)
        closed = all(self.product(x, y) in members for x in self.elements for y in self.elements)
        report.add(holds("graded-closed", closed))
        # degree additivity read through the fold: deg(xy) - 1 == fold(deg x + deg y - 1)
        additive = all(
            self.degree(self.product(x, y)) - 1 == self.pith.fold(self.degree(x) + self.degree(y) - 1)
            for x in self.elements
            for y in self.elements
        )
        report.add(holds("degree-additive", additive))
        assoc = all(
            self.product(self.product(x, y), z) == self.product(x, self.product(y, z))
            for x in self.elements
            for y in self.elements
            for z in self.elements
        )
        report.add(holds("graded-associative", assoc))
        return report


def graded_pith(f: TrussMorphism) -> GradedPith:
    pith = compute_pith(f)
    elements = tuple((a, k) for k, ch in enumerate(pith.chambers) for a in sorted(ch))
    return GradedPith(pith, elements)


def bulk_morphisms(doms: list[SkewTruss], cods: list[SkewTruss]) -> list[tuple[int, int, tuple[int, ...]]]:
    """All morphisms between two lists of trusses over fixed groups.

    Returns (domain index, codomain index, map). For each group homomorphism
    f, t -> f[C_t] and u -> C_u[f, f] are bucketed by bytes, so matching is
    linear in the number of trusses rather than quadratic.
    """
    if not doms or not cods:
        return []
    g1, g2 = doms[0].group, cods[0].group
    if any(t.group != g1 for t in doms) or any(u.group != g2 for u in cods):
        raise ValueError("bulk_morphisms needs a common group on each side")
    dom_stack = np.stack([t.C for t in doms])
    cod_stack = np.stack([u.C for u in cods])
    found = []
    for f in group_homomorphisms(g1, g2):
        fa = np.asarray(f, dtype=np.intp)
        left = fa[dom_stack]
        right = cod_stack[:, fa[:, None], fa[None, :]]
        buckets: dict[bytes, list[int]] = {}
        for j in range(len(cods)):
            buckets.setdefault(right[j].tobytes(), []).append(j)
        for i in range(len(doms)):
            for j in buckets.get(left[i].tobytes(), ()):
                found.append((i, j, f))
    found.sort()
    return found
