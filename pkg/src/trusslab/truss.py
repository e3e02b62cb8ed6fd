"""Skew trusses: a group (A, <>) and a semigroup (A, o) bound by

    a o (b <> c) = (a o b) <> sigma(a)^-1 <> (a o c).

The cocycle sigma is never supplied by the user; it is derived as
sigma(a) = a o 1 and the law is then verified on every triple.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .algebra import (
    GroupTable,
    MagmaTable,
    as_group,
    as_magma,
    invert,
    is_bijection,
    is_homomorphism,
    validate_group,
    validate_semigroup,
)
from .checks import Report, Verdict, compare, holds
from .errors import AxiomError, MorphismError, TheoremViolation, TrussError

LEFT = "left"
RIGHT = "right"
TWO_SIDED = "two-sided"
SIDES = (LEFT, RIGHT, TWO_SIDED)


class SkewTruss:
    """A verified truss. Build instances with :func:`build_truss`."""

    __slots__ = ("group", "circ", "sigma", "side", "__dict__")

    def __init__(self, group: GroupTable, circ: MagmaTable, sigma: np.ndarray, side: str):
        sigma = np.array(sigma, dtype=np.intp)
        sigma.setflags(write=False)
        self.group = group
        self.circ = circ
        self.sigma = sigma
        self.side = side

    @property
    def size(self) -> int:
        return self.group.size

    @property
    def G(self) -> np.ndarray:
        return self.group.table

    @property
    def C(self) -> np.ndarray:
        return self.circ.array

    @property
    def inv(self) -> np.ndarray:
        return self.group.inverse

    @property
    def one(self) -> int:
        return self.group.identity

    @property
    def is_left(self) -> bool:
        return self.side in (LEFT, TWO_SIDED)

    def key(self) -> tuple[int, ...]:
        return self.circ.key()

    @cached_property
    def sigma_is_identity(self) -> bool:
        return bool((self.sigma == np.arange(self.size)).all())

    @cached_property
    def circ_identity(self) -> int | None:
        """Two-sided identity of (A, o), if any."""
        from .algebra import find_identity

        return find_identity(self.C)

    @cached_property
    def circ_group(self) -> GroupTable | None:
        try:
            return validate_group(self.circ)
        except AxiomError:
            return None

    def is_circ_central(self, e: int) -> bool:
        C = self.C
        return bool((C[:, e] == C[e, :]).all())

    def __eq__(self, other):
        if not isinstance(other, SkewTruss):
            return NotImplemented
        return self.group == other.group and self.circ == other.circ and self.side == other.side

    def __hash__(self):
        return hash((self.group, self.circ, self.side))

    def __repr__(self):
        return f"SkewTruss(size={self.size}, side={self.side!r}, sigma={self.sigma.tolist()})"

    def to_json(self) -> dict:
        return {
            "size": self.size,
            "diamond": self.group.op.rows(),
            "circ": self.circ.rows(),
            "side": self.side,
            "sigma": self.sigma.tolist(),
        }


def left_law_arrays(G: np.ndarray, inv: np.ndarray, C: np.ndarray, sigma: np.ndarray):
    """Both sides of the left truss law, indexed [a, b, c]."""
    n = G.shape[0]
    a = np.arange(n)[:, None, None]
    b = np.arange(n)[None, :, None]
    c = np.arange(n)[None, None, :]
    lhs = C[a, G[b, c]]
    rhs = G[G[C[a, b], inv[sigma[a]]], C[a, c]]
    return lhs, rhs


def left_law(G, inv, C, sigma, law: str = "left-truss-law") -> Verdict:
    return compare(law, *left_law_arrays(G, inv, C, sigma))


def right_law(G, inv, C, sigma, law: str = "right-truss-law") -> Verdict:
    """(a <> b) o c = (a o c) <> sigma(c)^-1 <> (b o c), checked by mirroring both tables."""
    return compare(law, *left_law_arrays(G.T, inv, C.T, sigma), index_map=lambda w: (w[2], w[1], w[0]))


def build_truss(group, circ, side: str = LEFT, sigma=None) -> SkewTruss:
    """Verify a (group, semigroup) pair as a truss and derive its cocycle.

    Raises TrussError with kind ``size``, ``associativity``, ``left-law``,
    ``right-law``, ``cocycle-mismatch`` or ``sigma-mismatch``.
    """
    if side not in SIDES:
        raise ValueError(f"side must be one of {SIDES}, got {side!r}")
    group = as_group(group)
    circ = as_magma(circ)
    n = group.size
    if circ.size != n:
        raise TrussError(f"group has size {n} but circ has size {circ.size}", kind="size")
    assoc = validate_semigroup(circ)
    if not assoc:
        raise TrussError(f"circ is not associative at {assoc.witness}", kind="associativity", witness=assoc.witness)
    G, C, inv, e = group.table, circ.array, group.inverse, group.identity
    left_sigma = C[:, e]
    right_sigma = C[e, :]
    if side in (LEFT, TWO_SIDED):
        v = left_law(G, inv, C, left_sigma)
        if not v:
            raise TrussError(f"left truss law fails at (a, b, c) = {v.witness}", kind="left-law", witness=v.witness)
    if side in (RIGHT, TWO_SIDED):
        v = right_law(G, inv, C, right_sigma)
        if not v:
            raise TrussError(f"right truss law fails at (a, b, c) = {v.witness}", kind="right-law", witness=v.witness)
    if side == TWO_SIDED:
        v = compare("same-cocycle", left_sigma, right_sigma)
        if not v:
            raise TrussError(
                f"left and right cocycles differ at {v.witness}: a o 1 != 1 o a",
                kind="cocycle-mismatch",
                witness=v.witness,
            )
    derived = right_sigma if side == RIGHT else left_sigma
    if sigma is not None:
        v = compare("sigma-matches-derived", np.asarray(sigma), derived)
        if not v:
            raise TrussError(
                f"supplied sigma disagrees with the derived cocycle at {v.witness}",
                kind="sigma-mismatch",
                witness=v.witness,
            )
    return SkewTruss(group, circ, derived, side)


def is_truss(group, circ, side: str = LEFT) -> bool:
    try:
        build_truss(group, circ, side)
    except TrussError:
        return False
    return True


def idempotent_truss(group, sigma) -> SkewTruss:
    """The truss with a o b = sigma(a) for an idempotent map sigma."""
    group = as_group(group)
    sigma = np.asarray(sigma, dtype=np.intp)
    n = group.size
    if sigma.shape != (n,) or (sigma < 0).any() or (sigma >= n).any():
        raise TrussError("sigma must be a map of the carrier to itself", kind="shape")
    v = compare("idempotent", sigma[sigma], sigma)
    if not v:
        raise TrussError(f"sigma is not idempotent at {v.witness}", kind="not-idempotent", witness=v.witness)
    circ = MagmaTable(np.repeat(sigma[:, None], n, axis=1))
    t = build_truss(group, circ, LEFT)
    if not (t.sigma == sigma).all():
        raise TheoremViolation("derived cocycle of an idempotent truss differs from sigma")
    return t


def _require_left(t: SkewTruss) -> None:
    if not t.is_left:
        raise TrussError("operation needs a left (or two-sided) truss", kind="side")


# --- actions -----------------------------------------------------------------

@dataclass(frozen=True)
class ActionPair:
    """lam[a, b] = sigma(a)^-1 <> (a o b) and mu[a, b] = (a o b) <> sigma(a)^-1."""

    lam: np.ndarray
    mu: np.ndarray


def action_tables(t: SkewTruss) -> ActionPair:
    G, C, inv, s = t.G, t.C, t.inv, t.sigma
    lam = G[inv[s][:, None], C]
    mu = G[C, inv[s][:, None]]
    lam.setflags(write=False)
    mu.setflags(write=False)
    return ActionPair(lam, mu)


def action_verdicts(t: SkewTruss, acts: ActionPair) -> list[Verdict]:
    G, C = t.G, t.C
    n = t.size
    a = np.arange(n)[:, None, None]
    b = np.arange(n)[None, :, None]
    c = np.arange(n)[None, None, :]
    out = []
    for name, X in (("lambda", acts.lam), ("mu", acts.mu)):
        out.append(compare(f"{name}-endomorphism", X[a, G[b, c]], G[X[a, b], X[a, c]]))
        out.append(compare(f"{name}-action", X[C[a, b], c], X[a, X[b, c]]))
    return out


def derive_actions(t: SkewTruss) -> ActionPair:
    """The two semigroup actions of (A, o) on (A, <>) by group endomorphisms."""
    _require_left(t)
    acts = action_tables(t)
    report = Report("actions")
    report.extend(action_verdicts(t, acts))
    report.raise_on_failure()
    return acts


# --- equivalent forms of the law ---------------------------------------------

def equivalent_forms_verdicts(G, inv, C, one: int) -> list[Verdict]:
    """Every formulation of the distributive law, evaluated on raw tables.

    lambda, mu, kappa and kappa-hat are derived from sigma(a) = a o 1, as in
    the constructive direction of the equivalence; the heap form is independent.
    """
    n = G.shape[0]
    idx = np.arange(n)
    a = idx[:, None, None]
    b = idx[None, :, None]
    c = idx[None, None, :]
    sigma = C[:, one]
    lam = G[inv[sigma][:, None], C]
    mu = G[C, inv[sigma][:, None]]
    kappa = C
    kappa_hat = G[inv[sigma][:, None], C]
    lhs = C[a, G[b, c]]
    out = [
        compare("sigma-form", lhs, G[G[C[a, b], inv[sigma[a]]], C[a, c]]),
        compare("lambda-form", lhs, G[C[a, b], lam[a, c]]),
        compare("mu-form", lhs, G[mu[a, b], C[a, c]]),
        compare("kappa-form", lhs, G[kappa[a, b], kappa_hat[a, c]]),
    ]
    # Recovering the data of each alternative form by setting one argument to 1.
    out.append(compare("lambda-recovers-circ", C, G[sigma[:, None], lam]))
    out.append(compare("mu-recovers-circ", C, G[mu, sigma[:, None]]))
    tau = kappa_hat[:, one]
    out.append(compare("kappa-recovers-lambda", lam, G[inv[tau][:, None], kappa_hat]))
    # heap form over all quadruples: a o [b, c, d] = [a o b, a o c, a o d]
    H = G[G[:, inv][:, :, None], idx[None, None, :]]
    a4, b4, c4, d4 = np.ix_(idx, idx, idx, idx)
    out.append(compare("heap-form", C[a4, H[b4, c4, d4]], H[C[a4, b4], C[a4, c4], C[a4, d4]]))
    return out


def check_equivalent_forms(t: SkewTruss) -> Report:
    _require_left(t)
    report = Report("equivalent-forms")
    report.extend(equivalent_forms_verdicts(t.G, t.inv, t.C, t.one))
    return report.raise_on_failure()


# --- families, porting -------------------------------------------------------

def translated_group(group: GroupTable, e: int) -> GroupTable:
    """a <>_e b = a <> e^-1 <> b, with identity e and inverse a -> e <> a^-1 <> e."""
    G, inv = group.table, group.inverse
    ge = validate_group(G[G[:, inv[e]][:, None], np.arange(group.size)[None, :]])
    expected_inv = G[G[e, inv], e]
    if ge.identity != e or not (ge.inverse == expected_inv).all():
        raise TheoremViolation("translated group has unexpected identity or inverses", kind="translated-group")
    return ge


def translate_family(t: SkewTruss, e: int, side: str = LEFT) -> SkewTruss:
    """The truss (A, <>_e, o) with cocycle a -> a o e."""
    _require_left(t)
    ge = translated_group(t.group, e)
    out = build_truss(ge, t.circ, side)
    if not (out.sigma == t.C[:, e]).all():
        raise TheoremViolation("translated cocycle differs from a o e", kind="family-cocycle")
    return out


def port_structure(t: SkewTruss, target, f) -> SkewTruss:
    """Transport a truss along a bijection f: B -> A.

    If ``target`` is a GroupTable, f must be a group isomorphism onto
    (A, <>) and the semigroup is ported; if it is a MagmaTable, f must be a
    semigroup isomorphism onto (A, o) and the group is ported.
    """
    f = np.asarray(f, dtype=np.intp)
    n = t.size
    if not is_bijection(f.tolist(), n):
        raise MorphismError("porting map must be a bijection of the carrier", kind="not-bijective")
    finv = np.asarray(invert(f.tolist()), dtype=np.intp)
    C, G = t.C, t.G
    if isinstance(target, GroupTable):
        if target.size != n:
            raise MorphismError("size mismatch", kind="size")
        v = is_homomorphism(f, target, t.group, "group-isomorphism")
        if not v:
            raise MorphismError(f"f is not a group morphism at {v.witness}", kind="group-morphism", witness=v.witness)
        circ_f = finv[C[f[:, None], f[None, :]]]
        out = build_truss(target, circ_f, t.side)
    elif isinstance(target, MagmaTable):
        if target.size != n:
            raise MorphismError("size mismatch", kind="size")
        v = is_homomorphism(f, target, t.circ, "semigroup-isomorphism")
        if not v:
            raise MorphismError(
                f"f is not a semigroup morphism at {v.witness}", kind="semigroup-morphism", witness=v.witness
            )
        diamond_g = validate_group(finv[G[f[:, None], f[None, :]]])
        out = build_truss(diamond_g, target, t.side)
    else:
        raise TypeError("target must be a GroupTable or a MagmaTable")
    if not (out.sigma == finv[t.sigma[f]]).all():
        raise TheoremViolation("ported cocycle differs from f^-1 sigma f", kind="port-cocycle")
    return out


def hierarchy_truss(t: SkewTruss, e: int) -> SkewTruss:
    """The truss (A, <>, o_e) isomorphic to the e-translate via a -> a <> e."""
    tt = translate_family(t, e)
    shift = t.G[:, e]
    return port_structure(tt, t.group, shift)


def tau_cocycle(t: SkewTruss, e: int) -> np.ndarray:
    """a -> sigma_e(a <> e) <> e^-1, where sigma_e(x) = x o e."""
    G, C, inv = t.G, t.C, t.inv
    return G[C[G[:, e], e], inv[e]]


def deformed_circ(t: SkewTruss, e: int) -> np.ndarray:
    """((a <> e) o (b <> e)) <> e^-1."""
    G, C, inv = t.G, t.C, t.inv
    ae = G[:, e]
    return G[C[ae[:, None], ae[None, :]], inv[e]]


# --- powers of sigma ---------------------------------------------------------

def sigma_powers(sigma: np.ndarray) -> tuple[list[np.ndarray], int]:
    """Distinct powers sigma^1..sigma^k and the index j with sigma^(k+1) == sigma^j."""
    powers = [np.asarray(sigma)]
    seen = {powers[0].tobytes(): 1}
    while True:
        nxt = sigma[powers[-1]]
        key = nxt.tobytes()
        if key in seen:
            return powers, seen[key]
        powers.append(nxt)
        seen[key] = len(powers)


def sigma_power_report(t: SkewTruss) -> Report:
    _require_left(t)
    G, C, inv, one = t.G, t.C, t.inv, t.one
    n = t.size
    idx = np.arange(n)
    a2, b2 = idx[:, None], idx[None, :]
    report = Report("sigma-powers")
    central = t.is_circ_central(one)
    report.note("identity_central", central)
    if not central:
        report.note("skipped", "1 is not central in (A, o); additivity checks do not apply")
        return report
    powers, back = sigma_powers(t.sigma)
    report.note("n_max", len(powers))
    report.note("orbit_reentry", back)
    s1 = t.sigma
    report.add(compare("sigma-of-inverse", s1[inv], G[G[s1[one], inv[s1]], s1[one]]))
    acts = action_tables(t)
    circ_power = one
    prev = idx
    for k, sn in enumerate(powers, start=1):
        e = int(sn[one])
        report.add(compare(f"additivity[n={k}]", sn[G], G[G[sn[a2], inv[e]], sn[b2]]))
        gn = translated_group(t.group, e)
        report.add(is_homomorphism(sn, t.group, gn, f"sigma^{k}-group-hom"))
        circ_power = one if k == 1 else int(C[circ_power, one])
        report.add(holds(f"circ-power-is-sigma[n={k}]", circ_power == int(prev[one])))
        if t.is_circ_central(circ_power):
            p = int(prev[one])
            report.add(compare(f"additivity-lambda[n={k}]", sn[G], G[sn[a2], acts.lam[p][b2]]))
            report.add(compare(f"additivity-mu[n={k}]", sn[G], G[acts.mu[p][a2], sn[b2]]))
        prev = sn
    H = t.group.heap().table
    a3, b3, c3 = np.ix_(idx, idx, idx)
    report.add(compare("sigma-heap-endomorphism", s1[H], H[s1[a3], s1[b3], s1[c3]]))
    return report


# --- derived-structure invariants ----------------------------------------------

def derived_structure_report(t: SkewTruss) -> Report:
    """Cocycle identities, inverse identities, action and cocycle conditions."""
    _require_left(t)
    G, C, inv, s, one = t.G, t.C, t.inv, t.sigma, t.one
    n = t.size
    idx = np.arange(n)
    a, b, c = idx[:, None, None], idx[None, :, None], idx[None, None, :]
    a2, b2 = idx[:, None], idx[None, :]
    report = Report("derived-structure")
    report.add(compare("sigma-is-circ-one", s, C[:, one]))
    report.add(compare("sigma-equivariant", s[C], C[a2, s[b2]]))
    report.add(compare("inverse-left", C[a, G[inv[b], c]], G[G[s[a], inv[C[a, b]]], C[a, c]]))
    report.add(compare("inverse-right", C[a, G[b, inv[c]]], G[G[C[a, b], inv[C[a, c]]], s[a]]))
    acts = action_tables(t)
    report.extend(action_verdicts(t, acts))
    lam, mu = acts.lam, acts.mu
    report.add(compare("cocycle-lambda", s[C], G[s[a2], lam[a2, s[b2]]]))
    report.add(compare("cocycle-mu", s[C], G[mu[a2, s[b2]], s[a2]]))
    report.add(compare("actions-intertwined", G[s[a2], lam], G[mu, s[a2]]))
    if t.group.is_abelian:
        report.add(compare("abelian-actions-equal", lam, mu))
    unit = t.circ_identity
    report.note("circ_identity", unit)
    if unit is not None:
        report.add(holds("sigma-of-circ-identity", int(s[unit]) == one))
    return report
