"""Linearized trusses over the rationals.

A finite truss on a set A becomes a Hopf truss on the vector space Q[A]:
basis elements are group-like (Delta e_i = e_i (x) e_i, eps e_i = 1), both
products and the maps S, sigma are extended linearly from the basis tables.
Every identity below is checked with exact rational arithmetic, first on all
basis tuples and then on seeded random rational vectors. Sweedler sums are
evaluated from the stored coproduct terms, not from the group-like shortcut,
so the random trials exercise the tensor plumbing.
"""

from __future__ import annotations

import itertools
import random
from collections import defaultdict
from functools import cached_property

import numpy as np
from gmpy2 import mpq

from .algebra import GroupTable, MagmaTable, invert, is_bijection, is_homomorphism, validate_group
from .checks import Report, Verdict
from .errors import AxiomError, MorphismError, TrussError
from .truss import SkewTruss, _require_left

Vector = dict  # basis index -> int or mpq, zero coefficients omitted
ONE = 1  # ints are exact and cheaper than mpq on basis inputs


# --- sparse vector arithmetic -------------------------------------------------

def basis(i: int) -> Vector:
    return {int(i): ONE}


def _clean(v: dict) -> Vector:
    return {k: c for k, c in v.items() if c != 0}


def vadd(*vs: Vector) -> Vector:
    out: dict = defaultdict(int)
    for v in vs:
        for k, c in v.items():
            out[k] += c
    return _clean(out)


def vscale(c, v: Vector) -> Vector:
    return _clean({k: c * x for k, x in v.items()})


def vsub(x: Vector, y: Vector) -> Vector:
    return vadd(x, vscale(-1, y))


def apply_map(m, v: Vector) -> Vector:
    """Linear extension of a basis map."""
    out: dict = defaultdict(int)
    for i, c in v.items():
        out[int(m[i])] += c
    return _clean(out)


def apply_product(T, x: Vector, y: Vector) -> Vector:
    """Bilinear extension of a basis table."""
    out: dict = defaultdict(int)
    for i, a in x.items():
        row = T[i]
        for j, b in y.items():
            out[int(row[j])] += a * b
    return _clean(out)


def random_vector(rng: random.Random, n: int) -> Vector:
    return _clean({i: mpq(rng.randint(-6, 6), rng.randint(1, 5)) for i in range(n)})


# --- linearized trusses -------------------------------------------------------

class LinearizedTruss:
    """Q[A] with products <> and o, unit 1, antipode S and cocycle sigma.

    Products and linear maps are stored densely as basis tables; the
    coproduct as a dense array ``coproduct[i, j, k]`` (coefficient of
    e_j (x) e_k in Delta e_i) with a sparse term list used for evaluation.
    """

    def __init__(self, diamond, circ, unit: int, antipode, sigma, coproduct=None, counit=None):
        self.diamond = np.array(diamond, dtype=np.intp)
        self.circ = np.array(circ, dtype=np.intp)
        self.unit = int(unit)
        self.antipode = np.array(antipode, dtype=np.intp)
        self.sigma = np.array(sigma, dtype=np.intp)
        n = self.diamond.shape[0]
        if coproduct is None:
            coproduct = np.zeros((n, n, n), dtype=object)
            for i in range(n):
                coproduct[i, i, i] = ONE
        self.coproduct = np.array(coproduct, dtype=object)
        self.counit = tuple(mpq(c) for c in (counit if counit is not None else [1] * n))
        for arr in (self.diamond, self.circ, self.antipode, self.sigma, self.coproduct):
            arr.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.diamond.shape[0]

    @cached_property
    def delta_terms(self) -> tuple:
        n = self.dim
        return tuple(
            tuple(((j, k), self.coproduct[i, j, k]) for j in range(n) for k in range(n) if self.coproduct[i, j, k] != 0)
            for i in range(n)
        )

    @cached_property
    def _lists(self) -> tuple:
        # plain lists index much faster than numpy arrays in the scalar loops below
        return self.diamond.tolist(), self.circ.tolist(), self.antipode.tolist(), self.sigma.tolist()

    # products and maps on vectors
    def dia(self, *xs: Vector) -> Vector:
        out = xs[0]
        for x in xs[1:]:
            out = apply_product(self._lists[0], out, x)
        return out

    def o(self, *xs: Vector) -> Vector:
        out = xs[0]
        for x in xs[1:]:
            out = apply_product(self._lists[1], out, x)
        return out

    def S(self, x: Vector) -> Vector:
        return apply_map(self._lists[2], x)

    def sig(self, x: Vector) -> Vector:
        return apply_map(self._lists[3], x)

    def eps(self, x: Vector):
        return sum((self.counit[i] * c for i, c in x.items()), mpq(0))

    def one(self) -> Vector:
        return basis(self.unit)

    def delta(self, x: Vector) -> dict:
        out: dict = defaultdict(int)
        for i, c in x.items():
            for pair, d in self.delta_terms[i]:
                out[pair] += c * d
        return _clean(out)

    def sweedler(self, x: Vector, k: int) -> list[tuple[tuple[int, ...], object]]:
        """Terms of the (k-1)-fold iterated coproduct of x, as sorted (basis tuple, coefficient) pairs."""
        cur = {(i,): c for i, c in x.items()}
        for _ in range(k - 1):
            nxt: dict = defaultdict(int)
            for tup, c in cur.items():
                for (j, l), d in self.delta_terms[tup[0]]:
                    nxt[(j, l) + tup[1:]] += c * d
            cur = _clean(nxt)
        return sorted(cur.items())

    def sum_over(self, x: Vector, k: int, fn) -> Vector:
        """Sweedler sum: sum of c * fn(x_(1), ..., x_(k)) over the coproduct terms."""
        acc = {}
        for tup, c in self.sweedler(x, k):
            acc = vadd(acc, vscale(c, fn(*(basis(i) for i in tup))))
        return acc

    # derived operations
    def lam(self, a: Vector, b: Vector) -> Vector:
        return self.sum_over(a, 2, lambda a1, a2: self.dia(self.S(self.sig(a1)), self.o(a2, b)))

    def mu(self, a: Vector, b: Vector) -> Vector:
        return self.sum_over(a, 2, lambda a1, a2: self.dia(self.o(a1, b), self.S(self.sig(a2))))

    def heap(self, a: Vector, b: Vector, c: Vector) -> Vector:
        return self.dia(a, self.S(b), c)

    def tables(self) -> tuple:
        return (self.diamond.tobytes(), self.circ.tobytes(), self.unit, self.antipode.tobytes(), self.sigma.tobytes())

    def same_tables(self, other: "LinearizedTruss") -> bool:
        return (
            self.tables() == other.tables()
            and self.counit == other.counit
            and bool((self.coproduct == other.coproduct).all())
        )

    def to_json(self) -> dict:
        n = self.dim
        return {
            "field": "Q",
            "dim": n,
            "diamond": self.diamond.tolist(),
            "circ": self.circ.tolist(),
            "unit": self.unit,
            "antipode": self.antipode.tolist(),
            "sigma": self.sigma.tolist(),
            "counit": [str(c) for c in self.counit],
            "coproduct": [[[j, k, str(c)] for (j, k), c in self.delta_terms[i]] for i in range(n)],
        }


# --- identity checking --------------------------------------------------------

class IdentityChecker:
    """Evaluates both sides of a multilinear identity on basis tuples and on
    seeded random vectors, recording the first failing input."""

    def __init__(self, h: LinearizedTruss, random_trials: int = 10, seed: int = 0):
        self.h = h
        self.random_trials = random_trials
        self.seed = seed

    def check(self, law: str, arity: int, lhs, rhs) -> Verdict:
        n = self.h.dim
        checked = 0
        for tup in itertools.product(range(n), repeat=arity):
            xs = [basis(i) for i in tup]
            checked += 1
            if lhs(*xs) != rhs(*xs):
                return Verdict(law, False, tup, checked)
        rng = random.Random(f"{self.seed}:{law}")
        for trial in range(self.random_trials):
            xs = [random_vector(rng, n) for _ in range(arity)]
            checked += 1
            if lhs(*xs) != rhs(*xs):
                return Verdict(law + "[random]", False, (trial,), checked)
        return Verdict(law, True, None, checked)


def structure_report(h: LinearizedTruss) -> Report:
    """Coalgebra, Hopf algebra, bialgebra and cocycle axioms."""
    report = Report("hopf-structure")
    chk = IdentityChecker(h, random_trials=0)
    n = h.dim

    def tensor_map(t: dict, f, g) -> dict:
        out: dict = defaultdict(int)
        for (i, j), c in t.items():
            for k, x in f(basis(i)).items():
                for l, y in g(basis(j)).items():
                    out[(k, l)] += c * x * y
        return _clean(out)

    def tensor_product(s: dict, t: dict, T: np.ndarray) -> dict:
        out: dict = defaultdict(int)
        for (i, j), c in s.items():
            for (k, l), d in t.items():
                out[(int(T[i, k]), int(T[j, l]))] += c * d
        return _clean(out)

    def coassoc(x):
        left = defaultdict(int)
        right = defaultdict(int)
        for (i, j), c in h.delta(x).items():
            for (k, l), d in h.delta(basis(i)).items():
                left[(k, l, j)] += c * d
            for (k, l), d in h.delta(basis(j)).items():
                right[(i, k, l)] += c * d
        return _clean(left) == _clean(right)

    report.add(chk.check("coassociative", 1, lambda a: coassoc(a), lambda a: True))
    left_counit = lambda a: vadd(*[vscale(c * h.counit[i], basis(j)) for (i, j), c in h.delta(a).items()])
    right_counit = lambda a: vadd(*[vscale(c * h.counit[j], basis(i)) for (i, j), c in h.delta(a).items()])
    report.add(chk.check("counit-left", 1, left_counit, lambda a: a))
    report.add(chk.check("counit-right", 1, right_counit, lambda a: a))
    for name, op, T in (("diamond", h.dia, h.diamond), ("circ", h.o, h.circ)):
        report.add(chk.check(f"{name}-associative", 3, lambda a, b, c: op(op(a, b), c), lambda a, b, c: op(a, op(b, c))))
        report.add(
            chk.check(
                f"{name}-comultiplicative",
                2,
                lambda a, b: h.delta(op(a, b)),
                lambda a, b, T=T: tensor_product(h.delta(a), h.delta(b), T),
            )
        )
        report.add(chk.check(f"{name}-counit-multiplicative", 2, lambda a, b: h.eps(op(a, b)), lambda a, b: h.eps(a) * h.eps(b)))
    one = h.one()
    report.add(chk.check("diamond-unit", 1, lambda a: (h.dia(one, a), h.dia(a, one)), lambda a: (a, a)))
    report.add(Verdict("unit-grouplike", h.delta(one) == {(h.unit, h.unit): ONE} and h.eps(one) == 1, None, 1))
    report.add(chk.check("antipode-right", 1, lambda a: h.sum_over(a, 2, lambda x, y: h.dia(x, h.S(y))), lambda a: vscale(h.eps(a), one)))
    report.add(chk.check("antipode-left", 1, lambda a: h.sum_over(a, 2, lambda x, y: h.dia(h.S(x), y)), lambda a: vscale(h.eps(a), one)))
    report.add(chk.check("sigma-comultiplicative", 1, lambda a: h.delta(h.sig(a)), lambda a: tensor_map(h.delta(a), h.sig, h.sig)))
    report.add(chk.check("sigma-counital", 1, lambda a: h.eps(h.sig(a)), lambda a: h.eps(a)))
    report.add(chk.check("brace-law", 3, lambda a, b, c: h.o(a, h.dia(b, c)), lambda a, b, c: _truss_rhs(h, a, b, c)))
    report.note("dim", n)
    return report


def _truss_rhs(h: LinearizedTruss, a, b, c) -> Vector:
    return h.sum_over(a, 3, lambda a1, a2, a3: h.dia(h.o(a1, b), h.S(h.sig(a2)), h.o(a3, c)))


def linearize(t: SkewTruss) -> LinearizedTruss:
    _require_left(t)
    h = LinearizedTruss(t.G, t.C, t.one, t.inv, t.sigma)
    structure_report(h).raise_on_failure()
    return h


def verify_hopf_truss_axioms(h: LinearizedTruss, random_trials: int = 10, seed: int = 0) -> Report:
    chk = IdentityChecker(h, random_trials, seed)
    one = h.one()
    report = Report("hopf-truss-axioms")
    report.add(chk.check("brace-law", 3, lambda a, b, c: h.o(a, h.dia(b, c)), lambda a, b, c: _truss_rhs(h, a, b, c)))
    report.add(chk.check("sigma-is-circ-unit", 1, h.sig, lambda a: h.o(a, one)))
    report.add(chk.check("sigma-left-linear", 2, lambda a, b: h.sig(h.o(a, b)), lambda a, b: h.o(a, h.sig(b))))
    report.add(
        chk.check(
            "antipode-middle",
            3,
            lambda a, b, c: h.o(a, h.dia(h.S(b), c)),
            lambda a, b, c: h.sum_over(a, 3, lambda a1, a2, a3: h.dia(h.sig(a1), h.S(h.o(a2, b)), h.o(a3, c))),
        )
    )
    report.add(
        chk.check(
            "antipode-right",
            3,
            lambda a, b, c: h.o(a, h.dia(b, h.S(c))),
            lambda a, b, c: h.sum_over(a, 3, lambda a1, a2, a3: h.dia(h.o(a1, b), h.S(h.o(a2, c)), h.sig(a3))),
        )
    )
    return report.raise_on_failure()


def check_equivalent_hopf_forms(h: LinearizedTruss, random_trials: int = 10, seed: int = 0) -> Report:
    chk = IdentityChecker(h, random_trials, seed)
    report = Report("hopf-equivalent-forms")
    lhs = lambda a, b, c: h.o(a, h.dia(b, c))
    report.add(chk.check("lambda-form", 3, lhs, lambda a, b, c: h.sum_over(a, 2, lambda a1, a2: h.dia(h.o(a1, b), h.lam(a2, c)))))
    report.add(chk.check("mu-form", 3, lhs, lambda a, b, c: h.sum_over(a, 2, lambda a1, a2: h.dia(h.mu(a1, b), h.o(a2, c)))))
    # kappa is o itself; kappa-hat coincides with lambda.
    report.add(chk.check("kappa-form", 3, lhs, lambda a, b, c: h.sum_over(a, 2, lambda a1, a2: h.dia(h.o(a1, b), h.lam(a2, c)))))
    report.add(
        chk.check(
            "lambda-recovers-circ",
            2,
            lambda a, c: h.o(a, c),
            lambda a, c: h.sum_over(a, 2, lambda a1, a2: h.dia(h.sig(a1), h.lam(a2, c))),
        )
    )
    report.add(
        chk.check(
            "heap-form",
            4,
            lambda a, b, c, d: h.o(a, h.heap(b, c, d)),
            lambda a, b, c, d: h.sum_over(a, 3, lambda a1, a2, a3: h.heap(h.o(a1, b), h.o(a2, c), h.o(a3, d))),
        )
    )
    return report.raise_on_failure()


def hopf_actions_and_cocycle(h: LinearizedTruss, random_trials: int = 10, seed: int = 0) -> Report:
    chk = IdentityChecker(h, random_trials, seed)
    one = h.one()
    report = Report("hopf-actions")
    for name, act in (("lambda", h.lam), ("mu", h.mu)):
        report.add(
            chk.check(
                f"{name}-multiplicative",
                3,
                lambda a, b, c, act=act: act(a, h.dia(b, c)),
                lambda a, b, c, act=act: h.sum_over(a, 2, lambda a1, a2: h.dia(act(a1, b), act(a2, c))),
            )
        )
        report.add(chk.check(f"{name}-unit", 1, lambda a, act=act: act(a, one), lambda a: vscale(h.eps(a), one)))
        report.add(
            chk.check(
                f"{name}-action",
                3,
                lambda a, b, c, act=act: act(h.o(a, b), c),
                lambda a, b, c, act=act: act(a, act(b, c)),
            )
        )
    report.add(
        chk.check(
            "cocycle-lambda",
            2,
            lambda a, b: h.sig(h.o(a, b)),
            lambda a, b: h.sum_over(a, 2, lambda a1, a2: h.dia(h.sig(a1), h.lam(a2, h.sig(b)))),
        )
    )
    report.add(
        chk.check(
            "cocycle-mu",
            2,
            lambda a, b: h.sig(h.o(a, b)),
            lambda a, b: h.sum_over(a, 2, lambda a1, a2: h.dia(h.mu(a1, h.sig(b)), h.sig(a2))),
        )
    )
    unit = _two_sided_identity(h.circ)
    report.note("circ_unit", unit)
    if unit is not None:
        u = basis(unit)
        report.add(Verdict("sigma-of-circ-unit", h.sig(u) == one, None, 1))
        report.add(chk.check("lambda-unital", 1, lambda b: h.lam(u, b), lambda b: b))
        report.add(chk.check("mu-unital", 1, lambda b: h.mu(u, b), lambda b: b))
    return report.raise_on_failure()


def _two_sided_identity(T: np.ndarray) -> int | None:
    idx = np.arange(T.shape[0])
    for e in range(T.shape[0]):
        if (T[e] == idx).all() and (T[:, e] == idx).all():
            return e
    return None


def full_hopf_report(h: LinearizedTruss, random_trials: int = 10, seed: int = 0) -> list[Report]:
    return [
        structure_report(h),
        verify_hopf_truss_axioms(h, random_trials, seed),
        check_equivalent_hopf_forms(h, random_trials, seed),
        hopf_actions_and_cocycle(h, random_trials, seed),
    ]


# --- constructions ---------------------------------------------------------------

def _require_basis_element(h: LinearizedTruss, e) -> int:
    if isinstance(e, bool) or not isinstance(e, (int, np.integer)) or not 0 <= int(e) < h.dim:
        raise TrussError(
            "only basis elements are recognised as group-like; pass a basis index", kind="non-basis-element"
        )
    return int(e)


def hopf_hierarchy(h: LinearizedTruss, e: int, random_trials: int = 10, seed: int = 0) -> LinearizedTruss:
    """(Q[A], <>_e, o) with a <>_e b = a <> S(e) <> b, unit e,
    antipode S_e(a) = e <> S(a) <> e and cocycle a -> a o e."""
    e = _require_basis_element(h, e)
    G, S = h.diamond, h.antipode
    n = h.dim
    idx = np.arange(n)
    diamond_e = G[G[idx[:, None], S[e]], idx[None, :]]
    antipode_e = G[G[e, S], e]
    sigma_e = h.circ[:, e]
    out = LinearizedTruss(diamond_e, h.circ, e, antipode_e, sigma_e, h.coproduct, h.counit)
    structure_report(out).raise_on_failure()
    verify_hopf_truss_axioms(out, random_trials, seed)
    return out


def extract_hopf_brace(h: LinearizedTruss, random_trials: int = 10, seed: int = 0) -> LinearizedTruss:
    """a . b = sigma^-1(a) o b = a o 1^-o o b; needs (A, o) to be a Hopf algebra,
    which for a group-like basis means a group on the basis."""
    try:
        cg = validate_group(MagmaTable(h.circ))
    except AxiomError as exc:
        raise TrussError(f"(A, o) is not a Hopf algebra on the basis: {exc}", kind=f"circ-not-group:{exc.kind}")
    if not is_bijection(h.sigma.tolist(), h.dim):
        raise TrussError("sigma is not invertible", kind="sigma-not-invertible")
    sinv = np.asarray(invert(h.sigma.tolist()), dtype=np.intp)
    report = Report("hopf-brace")
    chk = IdentityChecker(h, random_trials, seed)
    report.add(chk.check("sigma-inverse", 1, lambda a: h.sig(apply_map(sinv, a)), lambda a: a))
    inv_one = basis(int(cg.inverse[h.unit]))
    report.add(
        chk.check("bullet-formulas-agree", 2, lambda a, b: h.o(apply_map(sinv, a), b), lambda a, b: h.o(a, inv_one, b))
    )
    report.raise_on_failure()
    idx = np.arange(h.dim)
    bullet = h.circ[sinv[:, None], idx[None, :]]
    out = LinearizedTruss(h.diamond, bullet, h.unit, h.antipode, idx, h.coproduct, h.counit)
    structure_report(out).raise_on_failure()
    verify_hopf_truss_axioms(out, random_trials, seed)
    validate_group(MagmaTable(bullet))
    return out


HOPF_ISO = "hopf"
BIALGEBRA_ISO = "bialgebra"


def hopf_morphism_report(f, src: LinearizedTruss, dst: LinearizedTruss, random_trials: int = 10, seed: int = 0) -> Report:
    """Intertwining of sigma and both actions by a basis map f: src -> dst."""
    f = np.asarray(f, dtype=np.intp)
    chk = IdentityChecker(src, random_trials, seed)
    F = lambda x: apply_map(f, x)
    report = Report("hopf-morphism")
    report.add(chk.check("preserves-diamond", 2, lambda a, b: F(src.dia(a, b)), lambda a, b: dst.dia(F(a), F(b))))
    report.add(chk.check("preserves-circ", 2, lambda a, b: F(src.o(a, b)), lambda a, b: dst.o(F(a), F(b))))
    report.add(chk.check("intertwines-sigma", 1, lambda a: F(src.sig(a)), lambda a: dst.sig(F(a))))
    report.add(chk.check("intertwines-lambda", 2, lambda a, b: F(src.lam(a, b)), lambda a, b: dst.lam(F(a), F(b))))
    report.add(chk.check("intertwines-mu", 2, lambda a, b: F(src.mu(a, b)), lambda a, b: dst.mu(F(a), F(b))))
    return report


def port_hopf(h: LinearizedTruss, f, kind: str, target, random_trials: int = 10, seed: int = 0) -> LinearizedTruss:
    """Transport along a basis bijection f: B -> A.

    ``kind="hopf"``: target is the group table of (B, *), f a Hopf algebra
    isomorphism onto (A, <>); the product o is ported.
    ``kind="bialgebra"``: target is the table of (B, .), f a bialgebra
    isomorphism onto (A, o); the product <> is ported, with S_B = f^-1 S f.
    """
    f = np.asarray(f, dtype=np.intp)
    n = h.dim
    if not is_bijection(f.tolist(), n):
        raise MorphismError("porting map must be a bijection of the basis", kind="not-bijective")
    finv = np.asarray(invert(f.tolist()), dtype=np.intp)
    fa, fb = f[:, None], f[None, :]
    if kind == HOPF_ISO:
        target = target if isinstance(target, GroupTable) else validate_group(target)
        v = is_homomorphism(f, target, GroupTable(MagmaTable(h.diamond)), "hopf-isomorphism")
        if not v:
            raise MorphismError(f"f is not a Hopf algebra morphism at {v.witness}", kind=v.law, witness=v.witness)
        out = LinearizedTruss(target.table, finv[h.circ[fa, fb]], target.identity, target.inverse, finv[h.sigma[f]])
    elif kind == BIALGEBRA_ISO:
        target = target if isinstance(target, MagmaTable) else MagmaTable(target)
        v = is_homomorphism(f, target, MagmaTable(h.circ), "bialgebra-isomorphism")
        if not v:
            raise MorphismError(f"f is not a bialgebra morphism at {v.witness}", kind=v.law, witness=v.witness)
        out = LinearizedTruss(finv[h.diamond[fa, fb]], target.array, finv[h.unit], finv[h.antipode[f]], finv[h.sigma[f]])
    else:
        raise ValueError(f"unknown porting kind {kind!r}")
    structure_report(out).raise_on_failure()
    verify_hopf_truss_axioms(out, random_trials, seed)
    # the cocycle obtained by the general formula agrees with f^-1 sigma f
    report = hopf_morphism_report(f, out, h, random_trials, seed)
    report.add(Verdict("cocycle-is-circ-unit", bool((out.sigma == out.circ[:, out.unit]).all()), None, n))
    report.raise_on_failure()
    return out
