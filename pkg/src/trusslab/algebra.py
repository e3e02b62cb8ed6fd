"""Finite magmas, groups and heaps stored as Cayley tables.

Elements are the dense indices ``0..n-1``. Law checks are vectorised over
all tuples with numpy; every failed check carries a concrete counterexample.
"""

from __future__ import annotations

import itertools
import random
import re
import warnings
from collections import deque
from functools import cached_property

import numpy as np

from .checks import Verdict, compare
from .errors import AxiomError, TableError

EXHAUSTIVE_LIMIT = 16
SAMPLE_SIZE = 20000
HEAP_EXHAUSTIVE_LIMIT = 8


class MagmaTable:
    """An n x n table of element indices. Immutable."""

    __slots__ = ("_array", "__dict__")

    def __init__(self, table):
        if isinstance(table, MagmaTable):
            arr = table.array
        else:
            try:
                arr = np.array(table)
            except ValueError as exc:
                raise TableError(f"table is not rectangular: {exc}", kind="shape") from exc
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise TableError(f"table must be a non-empty square array, got shape {arr.shape}", kind="shape")
        if arr.dtype.kind not in "iu":
            raise TableError(f"table entries must be integers, got dtype {arr.dtype}", kind="entry")
        n = arr.shape[0]
        bad = (arr < 0) | (arr >= n)
        if bad.any():
            i, j = (int(x) for x in np.argwhere(bad)[0])
            raise TableError(f"entry {int(arr[i, j])} at ({i}, {j}) is not in [0, {n})", kind="entry", witness=(i, j))
        arr = np.array(arr, dtype=np.intp)
        arr.setflags(write=False)
        self._array = arr

    @classmethod
    def from_function(cls, n: int, fn) -> "MagmaTable":
        return cls([[fn(a, b) for b in range(n)] for a in range(n)])

    @property
    def array(self) -> np.ndarray:
        return self._array

    @property
    def size(self) -> int:
        return self._array.shape[0]

    def __call__(self, a: int, b: int) -> int:
        return int(self._array[a, b])

    def rows(self) -> list[list[int]]:
        return self._array.tolist()

    def key(self) -> tuple[int, ...]:
        """Row-major flattening; orders tables lexicographically."""
        return tuple(self._array.ravel().tolist())

    def transpose(self) -> "MagmaTable":
        return MagmaTable(self._array.T)

    def __eq__(self, other):
        if not isinstance(other, MagmaTable):
            return NotImplemented
        return self.size == other.size and bool((self._array == other._array).all())

    def __hash__(self):
        return hash((self.size, self._array.tobytes()))

    def __repr__(self):
        return f"MagmaTable({self.rows()})"

    def to_json(self) -> dict:
        return {"size": self.size, "table": self.rows()}


def as_magma(table) -> MagmaTable:
    return table if isinstance(table, MagmaTable) else MagmaTable(table)


def _associativity_arrays(T: np.ndarray):
    n = T.shape[0]
    idx = np.arange(n)
    lhs = T[T[:, :, None], idx[None, None, :]]
    rhs = T[idx[:, None, None], T[None, :, :]]
    return lhs, rhs


def validate_semigroup(m, seed: int = 0) -> Verdict:
    """Associativity check; the witness is a triple (a, b, c) with (ab)c != a(bc).

    Exhaustive for n <= EXHAUSTIVE_LIMIT, otherwise a seeded random sample.
    """
    m = as_magma(m)
    T = m.array
    n = m.size
    if n <= EXHAUSTIVE_LIMIT:
        return compare("associativity", *_associativity_arrays(T))
    warnings.warn(
        f"associativity of a size-{n} table checked on {SAMPLE_SIZE} random triples only",
        stacklevel=2,
    )
    rng = np.random.default_rng(seed)
    a, b, c = rng.integers(0, n, size=(3, SAMPLE_SIZE))
    v = compare("associativity", T[T[a, b], c], T[a, T[b, c]])
    if v.ok:
        return v
    k = v.witness[0]
    return Verdict("associativity", False, (int(a[k]), int(b[k]), int(c[k])), v.checked)


def find_identity(T: np.ndarray) -> int | None:
    n = T.shape[0]
    idx = np.arange(n)
    for e in range(n):
        if (T[e] == idx).all() and (T[:, e] == idx).all():
            return e
    return None


class GroupTable:
    """A finite group: Cayley table, identity and inverse array.

    Construction validates the group axioms and raises :class:`AxiomError`
    naming the first violated one (identity, inverse, associativity).
    """

    __slots__ = ("op", "identity", "_inverse", "__dict__")

    def __init__(self, op, seed: int = 0):
        op = as_magma(op)
        T = op.array
        n = op.size
        e = find_identity(T)
        if e is None:
            raise AxiomError("no two-sided identity element", kind="identity")
        inverse = np.full(n, -1, dtype=np.intp)
        for a in range(n):
            hits = np.flatnonzero((T[a] == e) & (T[:, a] == e))
            if hits.size == 0:
                raise AxiomError(f"element {a} has no two-sided inverse", kind="inverse", witness=(a,))
            inverse[a] = hits[0]
        assoc = validate_semigroup(op, seed)
        if not assoc:
            raise AxiomError(f"operation is not associative at {assoc.witness}", kind="associativity", witness=assoc.witness)
        inverse.setflags(write=False)
        self.op = op
        self.identity = int(e)
        self._inverse = inverse

    @property
    def size(self) -> int:
        return self.op.size

    @property
    def table(self) -> np.ndarray:
        return self.op.array

    @property
    def inverse(self) -> np.ndarray:
        return self._inverse

    def mul(self, *xs: int) -> int:
        T = self.op.array
        acc = self.identity
        for x in xs:
            acc = int(T[acc, x])
        return acc

    def inv(self, a: int) -> int:
        return int(self._inverse[a])

    @cached_property
    def is_abelian(self) -> bool:
        T = self.table
        return bool((T == T.T).all())

    @cached_property
    def orders(self) -> tuple[int, ...]:
        out = []
        for a in range(self.size):
            k, x = 1, a
            while x != self.identity:
                x = int(self.table[x, a])
                k += 1
            out.append(k)
        return tuple(out)

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """A greedy generating set, picking elements of largest order first."""
        gens: list[int] = []
        span = {self.identity}
        for a in sorted(range(self.size), key=lambda x: (-self.orders[x], x)):
            if a not in span:
                gens.append(a)
                span = set(_closure(self, gens))
        return tuple(gens)

    def heap(self) -> "HeapView":
        return HeapView(self)

    def __eq__(self, other):
        if not isinstance(other, GroupTable):
            return NotImplemented
        return self.op == other.op

    def __hash__(self):
        return hash(self.op)

    def __repr__(self):
        return f"GroupTable(size={self.size}, identity={self.identity})"

    def to_json(self) -> dict:
        return self.op.to_json()


def validate_group(m, seed: int = 0) -> GroupTable:
    """Return the validated group, or raise AxiomError(kind=identity|inverse|associativity)."""
    if isinstance(m, GroupTable):
        m = m.op
    return GroupTable(m, seed)


def as_group(g) -> GroupTable:
    return g if isinstance(g, GroupTable) else GroupTable(g)


def _closure(g: GroupTable, gens) -> list[int]:
    seen = {g.identity}
    queue = deque([g.identity])
    T = g.table
    while queue:
        x = queue.popleft()
        for s in gens:
            y = int(T[x, s])
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return sorted(seen)


class HeapView:
    """The ternary operation [a, b, c] = a b^-1 c of a group."""

    __slots__ = ("source", "__dict__")

    def __init__(self, source: GroupTable):
        self.source = source

    def __call__(self, a: int, b: int, c: int) -> int:
        T = self.source.table
        return int(T[T[a, self.source.inverse[b]], c])

    @cached_property
    def table(self) -> np.ndarray:
        T = self.source.table
        inv = self.source.inverse
        out = T[T[:, inv][:, :, None], np.arange(self.source.size)[None, None, :]]
        out.setflags(write=False)
        return out

    def check_axioms(self, seed: int = 0, samples: int = 50000) -> list[Verdict]:
        """Both heap identities; all 5-tuples for n <= 8, otherwise a seeded sample."""
        H = self.table
        n = self.source.size
        idx = np.arange(n)
        if n <= HEAP_EXHAUSTIVE_LIMIT:
            a1, a2, a3, a4, a5 = np.ix_(idx, idx, idx, idx, idx)
            para = compare("heap-para-associativity", H[H[a1, a2, a3], a4, a5], H[a1, a2, H[a3, a4, a5]])
        else:
            rng = np.random.default_rng(seed)
            a1, a2, a3, a4, a5 = rng.integers(0, n, size=(5, samples))
            para = compare("heap-para-associativity", H[H[a1, a2, a3], a4, a5], H[a1, a2, H[a3, a4, a5]])
            if not para:
                k = para.witness[0]
                para = Verdict(para.law, False, tuple(int(x[k]) for x in (a1, a2, a3, a4, a5)), para.checked)
        x, y = np.ix_(idx, idx)
        malcev_r = compare("heap-malcev-right", H[x, y, y], np.broadcast_to(x, (n, n)))
        malcev_l = compare("heap-malcev-left", H[y, y, x], np.broadcast_to(x, (n, n)))
        return [para, malcev_r, malcev_l]


def heap_op(h: HeapView | GroupTable, a: int, b: int, c: int) -> int:
    if isinstance(h, GroupTable):
        h = h.heap()
    n = h.source.size
    for x in (a, b, c):
        if not 0 <= x < n:
            raise TableError(f"element {x} is not in [0, {n})", kind="entry", witness=(x,))
    return h(a, b, c)


def is_homomorphism(f, g1: GroupTable | MagmaTable, g2: GroupTable | MagmaTable, law: str = "homomorphism") -> Verdict:
    """f(a*b) == f(a)*f(b) for all pairs; witness is the failing pair."""
    T1 = g1.table if isinstance(g1, GroupTable) else g1.array
    T2 = g2.table if isinstance(g2, GroupTable) else g2.array
    f = np.asarray(f, dtype=np.intp)
    return compare(law, f[T1], T2[f[:, None], f[None, :]])


def _extend_from_generators(g1: GroupTable, g2: GroupTable, gens, images) -> np.ndarray | None:
    f = np.full(g1.size, -1, dtype=np.intp)
    f[g1.identity] = g2.identity
    queue = deque([g1.identity])
    T1, T2 = g1.table, g2.table
    while queue:
        x = queue.popleft()
        for s, t in zip(gens, images):
            y = T1[x, s]
            fy = T2[f[x], t]
            if f[y] < 0:
                f[y] = fy
                queue.append(y)
            elif f[y] != fy:
                return None
    return f


def group_homomorphisms(g1: GroupTable, g2: GroupTable, bijective: bool = False) -> list[tuple[int, ...]]:
    """All homomorphisms g1 -> g2, by backtracking over images of a generating set."""
    if bijective and g1.size != g2.size:
        return []
    gens = g1.generators
    choices = []
    for s in gens:
        k = g1.orders[s]
        if bijective:
            choices.append([t for t in range(g2.size) if g2.orders[t] == k])
        else:
            choices.append([t for t in range(g2.size) if k % g2.orders[t] == 0])
    found = []
    for images in itertools.product(*choices):
        f = _extend_from_generators(g1, g2, gens, images)
        if f is None or not is_homomorphism(f, g1, g2):
            continue
        if bijective and len(set(f.tolist())) != g1.size:
            continue
        found.append(tuple(f.tolist()))
    return sorted(found)


def find_isomorphisms(g1: GroupTable, g2: GroupTable) -> list[tuple[int, ...]]:
    """All group isomorphisms g1 -> g2 as index tuples; [] if none or sizes differ."""
    return group_homomorphisms(g1, g2, bijective=True)


def automorphisms(g: GroupTable) -> list[tuple[int, ...]]:
    return find_isomorphisms(g, g)


def endomorphisms(g: GroupTable) -> list[tuple[int, ...]]:
    return group_homomorphisms(g, g)


def compose(f, g) -> tuple[int, ...]:
    """The map x -> f(g(x))."""
    return tuple(int(f[x]) for x in g)


def invert(f) -> tuple[int, ...]:
    out = [0] * len(f)
    for x, y in enumerate(f):
        out[y] = x
    return tuple(out)


def is_bijection(f, n: int | None = None) -> bool:
    n = len(f) if n is None else n
    return len(f) == n and sorted(int(x) for x in f) == list(range(n))


# --- standard groups -------------------------------------------------------

def cyclic(n: int) -> GroupTable:
    return GroupTable(MagmaTable.from_function(n, lambda a, b: (a + b) % n))


def klein4() -> GroupTable:
    return GroupTable(MagmaTable.from_function(4, lambda a, b: a ^ b))


def from_permutations(perms) -> GroupTable:
    """Group of permutations (tuples) under composition (p*q)(i) = p[q[i]]."""
    perms = [tuple(p) for p in perms]
    index = {p: i for i, p in enumerate(perms)}
    try:
        table = [[index[tuple(p[i] for i in q)] for q in perms] for p in perms]
    except KeyError as exc:
        raise AxiomError("permutations are not closed under composition", kind="closure") from exc
    return GroupTable(table)


def symmetric(k: int) -> GroupTable:
    return from_permutations(itertools.permutations(range(k)))


def s3() -> GroupTable:
    return symmetric(3)


def dihedral(m: int) -> GroupTable:
    """Symmetries of the m-gon, order 2m. Element r^i s^j is index i + m*j."""

    def mul(x, y):
        i, j = x % m, x // m
        k, l = y % m, y // m
        if j == 0:
            return (i + k) % m + m * l
        return (i - k) % m + m * (1 - l)

    return GroupTable(MagmaTable.from_function(2 * m, mul))


def direct_product(g: GroupTable, h: GroupTable) -> GroupTable:
    """Pairs (x, y) encoded as x * |h| + y."""
    m = h.size

    def mul(a, b):
        return int(g.table[a // m, b // m]) * m + int(h.table[a % m, b % m])

    return GroupTable(MagmaTable.from_function(g.size * m, mul))


_GROUP_RE = re.compile(r"^(z|c|d)(\d+)$")


def group_by_name(name: str) -> GroupTable:
    """Parse names such as ``z4``, ``c3``, ``klein4``, ``v4``, ``s3``, ``d4``, ``z2xz2``."""
    name = name.strip().lower()
    if "x" in name and name not in ("klein4",):
        parts = name.split("x")
        out = group_by_name(parts[0])
        for p in parts[1:]:
            out = direct_product(out, group_by_name(p))
        return out
    if name in ("klein4", "v4", "k4"):
        return klein4()
    if name == "s3":
        return s3()
    if name == "s4":
        return symmetric(4)
    match = _GROUP_RE.match(name)
    if match:
        kind, k = match.group(1), int(match.group(2))
        if k < 1:
            raise ValueError(f"bad group name {name!r}")
        return cyclic(k) if kind in "zc" else dihedral(k)
    raise ValueError(f"unknown group {name!r}")


def random_group(rng: random.Random, max_size: int = 12) -> GroupTable:
    """A random small group from the built-in families, with shuffled labels."""
    options = [lambda: cyclic(rng.randint(1, max_size)), klein4, s3]
    if max_size >= 8:
        options.append(lambda: dihedral(4))
    g = rng.choice(options)()
    perm = list(range(g.size))
    rng.shuffle(perm)
    return relabel(g, perm)


def relabel(g: GroupTable, perm) -> GroupTable:
    """Transport the group along the bijection x -> perm[x]."""
    inv = invert(perm)
    T = g.table
    return GroupTable(MagmaTable.from_function(g.size, lambda a, b: perm[int(T[inv[a], inv[b]])]))
