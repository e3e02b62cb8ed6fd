"""Invertible cocycles, braces extracted from trusses, and Yang-Baxter maps."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .algebra import GroupTable, MagmaTable, invert, is_bijection, validate_group
from .checks import Report, Verdict, compare, holds
from .errors import AxiomError, TableError, TheoremViolation, TrussError
from .truss import LEFT, SkewTruss, _require_left, build_truss


def right_identities(C: np.ndarray) -> list[int]:
    n = C.shape[0]
    idx = np.arange(n)
    return [int(e) for e in range(n) if (C[:, e] == idx).all()]


def check_sigma_invertible(t: SkewTruss) -> Report:
    """Compare bijectivity of sigma with the existence of a right identity
    for o relative to which 1 has a two-sided inverse."""
    _require_left(t)
    C, s, one = t.C, t.sigma, t.one
    report = Report("sigma-invertible")
    bijective = is_bijection(s.tolist(), t.size)
    criterion = None
    for e in right_identities(C):
        for u in range(t.size):
            if C[one, u] == e and C[u, one] == e:
                criterion = (e, u)
                break
        if criterion:
            break
    report.note("bijective", bijective)
    report.note("right_identity_criterion", criterion is not None)
    report.add(holds("criteria-agree", bijective == (criterion is not None)))
    if bijective:
        sinv = np.asarray(invert(s.tolist()), dtype=np.intp)
        e = int(sinv[one])
        u = int(sinv[e])
        report.note("e", e)
        report.note("u", u)
        idx = np.arange(t.size)
        report.add(compare("e-is-right-identity", C[:, e], idx))
        report.add(holds("u-inverts-identity", C[one, u] == e and C[u, one] == e))
        report.add(compare("inverse-is-right-multiplication", sinv, C[:, u]))
    return report


# --- braces ------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class BraceData:
    truss: SkewTruss
    bullet: MagmaTable

    @cached_property
    def bullet_group(self) -> GroupTable:
        return validate_group(self.bullet)

    def to_json(self) -> dict:
        return {"size": self.truss.size, "diamond": self.truss.group.op.rows(), "bullet": self.bullet.rows()}


def circ_group_or_raise(t: SkewTruss) -> GroupTable:
    try:
        return validate_group(t.circ)
    except AxiomError as exc:
        raise TrussError(f"(A, o) is not a group: {exc}", kind=f"circ-not-group:{exc.kind}", witness=exc.witness)


def extract_brace(t: SkewTruss) -> BraceData:
    """a . b = sigma^-1(a) o b = a o 1^-o o b, a brace over the same group."""
    _require_left(t)
    cg = circ_group_or_raise(t)
    C, s, one = t.C, t.sigma, t.one
    n = t.size
    idx = np.arange(n)
    if not is_bijection(s.tolist(), n):
        raise TheoremViolation("sigma is not bijective although (A, o) is a group", kind="sigma-bijective")
    sinv = np.asarray(invert(s.tolist()), dtype=np.intp)
    via_inverse = C[sinv[:, None], idx[None, :]]
    via_unit = C[C[:, cg.inverse[one]][:, None], idx[None, :]]
    report = Report("extract-brace")
    report.add(compare("bullet-formulas-agree", via_inverse, via_unit))
    report.add(compare("bullet-is-conjugated-circ", s[C[sinv[:, None], sinv[None, :]]], via_inverse))
    report.raise_on_failure()
    bullet = MagmaTable(via_inverse)
    try:
        validate_group(bullet)
        brace = build_truss(t.group, bullet, LEFT)
    except (AxiomError, TrussError) as exc:
        raise TheoremViolation(f"extracted operation is not a brace: {exc}", kind="brace")
    if not brace.sigma_is_identity:
        raise TheoremViolation("extracted brace has a nontrivial cocycle", kind="brace-cocycle")
    return BraceData(brace, bullet)


def brace_truss(b: BraceData) -> SkewTruss:
    """A brace viewed as a truss with identity cocycle."""
    return b.truss


# --- Yang-Baxter maps ----------------------------------------------------------

class YBMap:
    """A map r: A x A -> A x A stored as two n x n component tables."""

    __slots__ = ("first", "second")

    def __init__(self, first, second):
        first = np.array(first, dtype=np.intp)
        second = np.array(second, dtype=np.intp)
        if first.ndim != 2 or first.shape[0] != first.shape[1] or first.shape != second.shape:
            raise TableError("YB map components must be equal square tables", kind="shape")
        n = first.shape[0]
        for comp in (first, second):
            if ((comp < 0) | (comp >= n)).any():
                raise TableError("YB map entry out of range", kind="entry")
            comp.setflags(write=False)
        self.first = first
        self.second = second

    @property
    def size(self) -> int:
        return self.first.shape[0]

    def __call__(self, a: int, b: int) -> tuple[int, int]:
        return int(self.first[a, b]), int(self.second[a, b])

    @classmethod
    def from_pairs(cls, n: int, pairs) -> "YBMap":
        arr = np.asarray(pairs, dtype=np.intp)
        if arr.shape != (n * n, 2):
            raise TableError(f"expected {n * n} pairs", kind="shape")
        return cls(arr[:, 0].reshape(n, n), arr[:, 1].reshape(n, n))

    @classmethod
    def flip(cls, n: int) -> "YBMap":
        idx = np.arange(n)
        return cls(np.broadcast_to(idx[None, :], (n, n)), np.broadcast_to(idx[:, None], (n, n)))

    @classmethod
    def identity(cls, n: int) -> "YBMap":
        idx = np.arange(n)
        return cls(np.broadcast_to(idx[:, None], (n, n)), np.broadcast_to(idx[None, :], (n, n)))

    def __eq__(self, other):
        if not isinstance(other, YBMap):
            return NotImplemented
        return np.array_equal(self.first, other.first) and np.array_equal(self.second, other.second)

    def __hash__(self):
        return hash((self.first.tobytes(), self.second.tobytes()))

    def to_json(self) -> dict:
        pairs = np.stack([self.first.ravel(), self.second.ravel()], axis=1)
        return {"size": self.size, "r": pairs.tolist()}


def verify_ybe(r: YBMap) -> Verdict:
    """Bijectivity on A x A, then the braid equation on all triples.

    On failure the witness is either a pair (a, b) whose image repeats an
    earlier one, or a triple (a, b, c) where the braid equation breaks.
    """
    n = r.size
    R1, R2 = r.first, r.second
    codes = (R1 * n + R2).ravel()
    _, first_seen = np.unique(codes, return_index=True)
    if len(first_seen) != n * n:
        dup = np.ones(n * n, dtype=bool)
        dup[first_seen] = False
        k = int(np.flatnonzero(dup)[0])
        return Verdict("bijective", False, (k // n, k % n), n * n)
    a, b, c = np.ix_(np.arange(n), np.arange(n), np.arange(n))
    # (r x id)(id x r)(r x id)
    x1, y1, z1 = R1[a, b], R2[a, b], np.broadcast_to(c, (n, n, n))
    y2, z2 = R1[y1, z1], R2[y1, z1]
    x3, y3 = R1[x1, y2], R2[x1, y2]
    left = np.stack([x3, y3, z2])
    # (id x r)(r x id)(id x r)
    b1, c1 = R1[b, c], R2[b, c]
    a2, b2 = R1[a, b1], R2[a, b1]
    b3, c3 = R1[b2, c1], R2[b2, c1]
    right = np.stack([a2, b3, c3])
    bad = (left != right).any(axis=0)
    if bad.any():
        w = np.unravel_index(int(np.flatnonzero(bad)[0]), bad.shape)
        return Verdict("braid-equation", False, tuple(int(i) for i in w), n**3)
    return Verdict("yang-baxter", True, None, n**3)


def solution_tables(t: SkewTruss, e: int):
    """The solution computed three ways: direct, with the heap of the group,
    and with both heaps."""
    cg = circ_group_or_raise(t)
    G, C, inv, cinv = t.G, t.C, t.inv, cg.inverse
    n = t.size
    a, b = np.ix_(np.arange(n), np.arange(n))
    idx = np.arange(n)
    x = C[C[a, cinv[e]], b]  # a o e^-o o b
    f_direct = G[G[e, inv[a]], x]
    s_direct = C[C[C[e, cinv[f_direct]], a], C[cinv[e], b]]

    H = t.group.heap().table
    f_heap = H[e, a, x]
    s_heap = C[C[C[e, cinv[f_heap]], a], C[cinv[e], b]]

    K = C[C[idx[:, None, None], cinv[idx][None, :, None]], idx[None, None, :]]  # <a, b, c> = a o b^-o o c
    inner = K[a, e, b]
    f_hh = H[e, a, inner]
    s_hh = K[K[e, f_hh, a], e, b]
    return (f_direct, s_direct), (f_heap, s_heap), (f_hh, s_hh)


def solution_from_truss(t: SkewTruss, e: int) -> YBMap:
    _require_left(t)
    if not 0 <= e < t.size:
        raise TrussError(f"element {e} is outside the carrier", kind="element")
    direct, heap, double_heap = solution_tables(t, e)
    report = Report("yang-baxter-solution")
    report.add(compare("heap-form-first", heap[0], direct[0]))
    report.add(compare("heap-form-second", heap[1], direct[1]))
    report.add(compare("double-heap-form-first", double_heap[0], direct[0]))
    report.add(compare("double-heap-form-second", double_heap[1], direct[1]))
    r = YBMap(*direct)
    report.add(verify_ybe(r))
    report.raise_on_failure()
    return r
