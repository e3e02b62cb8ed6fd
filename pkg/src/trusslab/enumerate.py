"""Exhaustive search for every truss on a fixed finite group.

Two searches are provided: a naive scan of all n^(n^2) binary operations
(the ground-truth oracle, n <= 3) and a structured search over rows
a -> (sigma(a), lambda_a) with lambda_a a group endomorphism. A row choice
determines a o b = sigma(a) <> lambda_a(b); the truss law then holds
automatically and associativity is equivalent to

    sigma(a o b) = sigma(a) <> lambda_a(sigma(b))   and   lambda_(a o b) = lambda_a lambda_b,

which are checked as soon as the rows involved are assigned.
"""

from __future__ import annotations

import itertools
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from .algebra import GroupTable, MagmaTable, as_group, automorphisms, endomorphisms
from .errors import BoundExceeded, TheoremViolation
from .morphism import GROUP_NOTION, HEAP_NOTION, heap_isomorphisms
from .truss import LEFT, SkewTruss, build_truss

NAIVE_LIMIT = 3
STRUCTURED_LIMIT = 8
NOTIONS = (GROUP_NOTION, HEAP_NOTION)
FIXTURE_ENV = "TRUSSLAB_FIXTURES"


@dataclass
class EnumerationResult:
    group: GroupTable
    mode: str
    trusses: list[SkewTruss]
    representatives: dict[str, list[SkewTruss]] = field(default_factory=dict)
    class_sizes: dict[str, list[int]] = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def total(self) -> int:
        return len(self.trusses)

    def keys(self) -> set[tuple[int, ...]]:
        return {t.key() for t in self.trusses}

    def counts(self) -> dict[str, int]:
        out = {"total": self.total}
        for notion, reps in self.representatives.items():
            out[f"classes_{notion}"] = len(reps)
        return out

    def to_json(self, tables: bool = True, timings: bool = False) -> dict:
        out: dict = {"mode": self.mode, "size": self.group.size, "counts": self.counts()}
        if tables:
            out["circ_tables"] = [t.circ.rows() for t in self.trusses]
            for notion, reps in self.representatives.items():
                out[f"representatives_{notion}"] = [t.circ.rows() for t in reps]
                out[f"class_sizes_{notion}"] = self.class_sizes[notion]
        if timings:
            out["seconds"] = self.seconds
        return out


def _finish(group: GroupTable, mode: str, tables: list[tuple[int, ...]], started: float) -> EnumerationResult:
    tables = sorted(set(tables))
    n = group.size
    trusses = [build_truss(group, MagmaTable(np.asarray(k, dtype=np.intp).reshape(n, n)), LEFT) for k in tables]
    return EnumerationResult(group, mode, trusses, seconds=time.perf_counter() - started)


# --- naive oracle -----------------------------------------------------------------

def enumerate_naive(group) -> EnumerationResult:
    """Scan all n^(n^2) tables, keep those associative and satisfying the law."""
    group = as_group(group)
    n = group.size
    if n > NAIVE_LIMIT:
        raise BoundExceeded(f"naive enumeration is limited to order {NAIVE_LIMIT}; use the structured mode", kind="bound")
    started = time.perf_counter()
    G, inv, one = group.table, group.inverse, group.identity
    T = np.array(list(itertools.product(range(n), repeat=n * n)), dtype=np.intp).reshape(-1, n, n)
    K = np.arange(len(T))[:, None, None, None]
    a = np.arange(n)[None, :, None, None]
    b = np.arange(n)[None, None, :, None]
    c = np.arange(n)[None, None, None, :]
    assoc = (T[K, T[K, a, b], c] == T[K, a, T[K, b, c]]).all(axis=(1, 2, 3))
    T = T[assoc]
    K = np.arange(len(T))[:, None, None, None]
    sigma = T[:, :, one]
    lhs = T[K, a, G[b, c]]
    rhs = G[G[T[K, a, b], inv[sigma[K, a]]], T[K, a, c]]
    law = (lhs == rhs).all(axis=(1, 2, 3))
    keys = [tuple(int(x) for x in row.ravel()) for row in T[law]]
    return _finish(group, "naive", keys, started)


# --- structured search ------------------------------------------------------------

class _RowSearch:
    def __init__(self, group: GroupTable):
        self.G = group.table
        self.n = group.size
        self.E = np.asarray(endomorphisms(group), dtype=np.intp)
        index = {tuple(e.tolist()): i for i, e in enumerate(self.E)}
        m = len(self.E)
        # comp[i, j] is the endomorphism E[i] after E[j]
        self.comp = [[index[tuple(self.E[i][self.E[j]].tolist())] for j in range(m)] for i in range(m)]
        self.E_list = self.E.tolist()
        self.G_list = self.G.tolist()
        self.candidates = [(s, f) for s in range(self.n) for f in range(m)]

    def run(self, first: list[tuple[int, int]]) -> list[tuple[int, ...]]:
        n = self.n
        sig = [0] * n
        lam = [0] * n
        rows = [None] * n
        found: list[tuple[int, ...]] = []
        G, E, comp = self.G_list, self.E_list, self.comp

        def consistent(k: int) -> bool:
            for a in range(k + 1):
                ra, sa, la = rows[a], sig[a], lam[a]
                Ea = E[la]
                for b in range(k + 1):
                    x = ra[b]
                    if x > k or (a != k and b != k and x != k):
                        continue
                    if sig[x] != G[sa][Ea[sig[b]]]:
                        return False
                    if lam[x] != comp[la][lam[b]]:
                        return False
            return True

        def rec(k: int) -> None:
            if k == n:
                found.append(tuple(x for r in rows for x in r))
                return
            for s, f in self.candidates:
                sig[k], lam[k] = s, f
                Gs = G[s]
                rows[k] = [Gs[y] for y in E[f]]
                if consistent(k):
                    rec(k + 1)
            rows[k] = None

        for s, f in first:
            sig[0], lam[0] = s, f
            rows[0] = [G[s][y] for y in E[f]]
            if consistent(0):
                rec(1)
        return found


def _structured_chunk(args) -> list[tuple[int, ...]]:
    table, first = args
    search = _RowSearch(GroupTable(MagmaTable(np.asarray(table))))
    return search.run(first)


def enumerate_structured(group, bound: int = STRUCTURED_LIMIT, jobs: int = 1) -> EnumerationResult:
    group = as_group(group)
    n = group.size
    if n > bound:
        raise BoundExceeded(f"structured enumeration is limited to order {bound}", kind="bound")
    started = time.perf_counter()
    search = _RowSearch(group)
    firsts = search.candidates
    if jobs <= 1:
        keys = search.run(firsts)
    else:
        chunks = [[c] for c in firsts]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = pool.map(_structured_chunk, [(group.table.tolist(), c) for c in chunks])
            keys = [k for part in parts for k in part]
    # (sigma, lambda) is recovered from o, so distinct pairs give distinct tables.
    if len(set(keys)) != len(keys):
        raise TheoremViolation("two parameter pairs produced the same o table", kind="parametrization-injective")
    return _finish(group, "structured", keys, started)


def enumerate_trusses(group, mode: str = "structured", jobs: int = 1) -> EnumerationResult:
    if mode == "naive":
        return enumerate_naive(group)
    if mode == "structured":
        return enumerate_structured(group, jobs=jobs)
    raise ValueError(f"unknown mode {mode!r}")


# --- classification -----------------------------------------------------------------

def relabelings(group: GroupTable, notion: str) -> list[tuple[int, ...]]:
    """Bijections of the carrier under which trusses over ``group`` are compared."""
    if notion == GROUP_NOTION:
        return automorphisms(group)
    if notion == HEAP_NOTION:
        return heap_isomorphisms(group, group)
    raise ValueError(f"unknown notion {notion!r}")


def classify(result: EnumerationResult, notion: str) -> EnumerationResult:
    """Partition into isomorphism classes; each class is represented by its
    lexicographically least o table."""
    maps = [np.asarray(f, dtype=np.intp) for f in relabelings(result.group, notion)]
    if not result.trusses:
        result.representatives[notion] = []
        result.class_sizes[notion] = []
        return result
    n = result.group.size
    stack = np.stack([t.C for t in result.trusses])
    # uint8 rows compare bytewise in the same order as the integer tuples
    images = []
    for f in maps:
        fi = np.argsort(f)
        images.append(f[stack[:, fi[:, None], fi[None, :]]].reshape(len(stack), n * n).astype(np.uint8))
    known = {row.tobytes() for row in stack.reshape(len(stack), n * n).astype(np.uint8)}
    canon: dict[bytes, int] = {}
    for i in range(len(stack)):
        orbit = {img[i].tobytes() for img in images}
        if not orbit <= known:
            raise TheoremViolation("isomorphic copy of a truss is missing from the enumeration", kind="closure")
        c = min(orbit)
        canon[c] = canon.get(c, 0) + 1
    by_key = {t.key(): t for t in result.trusses}
    reps = sorted(canon)
    result.representatives[notion] = [by_key[tuple(k)] for k in reps]
    result.class_sizes[notion] = [canon[k] for k in reps]
    return result


# --- pinned counts ------------------------------------------------------------------

def fixture_path() -> Path:
    override = os.environ.get(FIXTURE_ENV)
    if override:
        return Path(override) / "counts.json"
    return Path(str(resources.files("trusslab") / "fixtures" / "counts.json"))


def pinned_counts() -> dict:
    path = fixture_path()
    if not path.exists():
        return {}
    return json.loads(path.read_text())


def compare_with_fixture(name: str, result: EnumerationResult) -> dict:
    """Compare counts with the pinned values; keys absent from the fixture are reported as unpinned."""
    pinned = pinned_counts().get(name, {})
    counts = result.counts()
    checks = {}
    for key, value in counts.items():
        if key in pinned:
            checks[key] = {"found": value, "pinned": pinned[key], "ok": value == pinned[key]}
        else:
            checks[key] = {"found": value, "pinned": None, "ok": True}
    return {"name": name, "ok": all(c["ok"] for c in checks.values()), "counts": checks}


def write_fixture(entries: dict, path: Path | None = None) -> Path:
    path = path or fixture_path()
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(entries, indent=2, sort_keys=True) + "\n")
    return path
