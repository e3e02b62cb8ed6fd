"""The acceptance pipeline: every criterion run over the enumerated corpus.

The corpus is every truss on Z/2 and Z/3 (naive search) and on Z/4, the
Klein four-group and S3 (structured search). Each criterion returns a
JSON-ready dict with a top-level "ok"; timings are kept apart so that the
serialized report depends only on the inputs.
"""

from __future__ import annotations

import time
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache

import numpy as np

from .algebra import MagmaTable, automorphisms, group_by_name, validate_group
from .enumerate import classify, compare_with_fixture, enumerate_naive, enumerate_structured
from .errors import TrussLabError
from .hopf import extract_hopf_brace, full_hopf_report, hopf_hierarchy, linearize, port_hopf
from .morphism import (
    TrussMorphism,
    bijection_search,
    bulk_morphisms,
    compute_pith,
    graded_pith,
    identity_orbit,
    is_heap_morphism,
    pith_report,
)
from .ring import central_witness, ring_as_truss, ring_from_truss, shifted_ring, verify_two_sided
from .truss import (
    LEFT,
    SkewTruss,
    action_tables,
    build_truss,
    derived_structure_report,
    equivalent_forms_verdicts,
    port_structure,
    sigma_power_report,
    translate_family,
)
from .ybe import YBMap, check_sigma_invertible, extract_brace, solution_from_truss, verify_ybe

CORPUS = (("z2", "naive"), ("z3", "naive"), ("z4", "structured"), ("klein4", "structured"), ("s3", "structured"))
CRITERIA = tuple(range(1, 9))
MAX_FAILURES = 5
HOPF_ORDER = 4
PITH_ORDER = 4


@lru_cache(maxsize=None)
def corpus_group(name: str):
    return group_by_name(name)


@lru_cache(maxsize=None)
def corpus_result(name: str, mode: str):
    g = corpus_group(name)
    return enumerate_naive(g) if mode == "naive" else enumerate_structured(g)


def corpus() -> list[tuple[str, list[SkewTruss]]]:
    return [(name, corpus_result(name, mode).trusses) for name, mode in CORPUS]


def _rebuild(item) -> SkewTruss:
    name, key = item
    g = corpus_group(name)
    n = g.size
    return build_truss(g, MagmaTable(np.asarray(key, dtype=np.intp).reshape(n, n)), LEFT)


def _items(max_order: int | None = None) -> list[tuple[str, tuple[int, ...]]]:
    out = []
    for name, trusses in corpus():
        for t in trusses:
            if max_order is None or t.size <= max_order:
                out.append((name, t.key()))
    return out


def pmap(fn, items, jobs: int = 1) -> list:
    """Order-preserving map, optionally over a process pool."""
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    chunk = max(1, len(items) // (jobs * 8))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=chunk))


class Tally:
    """Counts checks and keeps the first few failures."""

    def __init__(self):
        self.counts: dict[str, int] = defaultdict(int)
        self.failures: list[dict] = []
        self.failed = 0

    def record(self, tag: str, ok: bool, detail=None) -> None:
        self.counts[tag] += 1
        if not ok:
            self.failed += 1
            if len(self.failures) < MAX_FAILURES:
                self.failures.append({"check": tag, "detail": detail})

    def merge(self, rows) -> None:
        for row in rows:
            for tag, ok, detail in row:
                self.record(tag, ok, detail)

    def to_json(self, **extra) -> dict:
        out = {"ok": self.failed == 0, "checks": dict(sorted(self.counts.items())), "failed": self.failed}
        out["failures"] = self.failures
        out.update(extra)
        return out


def _where(item) -> str:
    return f"{item[0]}:{list(item[1])}"


def _verdict_rows(item, verdicts) -> list:
    return [(v.law, v.ok, None if v.ok else {"truss": _where(item), "witness": v.witness}) for v in verdicts]


def _run_task(args) -> list:
    """Worker entry point; a library error becomes a failed row instead of aborting the run."""
    name, item = args
    try:
        return TASKS[name](item)
    except TrussLabError as exc:
        return [("error", False, {"truss": _where(item), "error": str(exc)})]


def _run_tasks(name: str, items, jobs: int) -> list:
    return pmap(_run_task, [(name, item) for item in items], jobs)


# --- criterion 1 ----------------------------------------------------------------------

def _law_forms(item) -> list:
    t = _rebuild(item)
    return _verdict_rows(item, equivalent_forms_verdicts(t.G, t.inv, t.C, t.one))


def criterion_law_forms(jobs: int = 1) -> dict:
    tally = Tally()
    tally.merge(_run_tasks("law_forms", _items(), jobs))
    return tally.to_json()


# --- criterion 2 ----------------------------------------------------------------------

def _derived(item) -> list:
    t = _rebuild(item)
    rows = _verdict_rows(item, derived_structure_report(t).verdicts)
    powers = sigma_power_report(t)
    rows += _verdict_rows(item, powers.verdicts)
    rows.append(("identity-central", True, None) if powers.notes["identity_central"] else ("identity-not-central", True, None))
    rows += _verdict_rows(item, check_sigma_invertible(t).verdicts)
    return rows


def criterion_derived(jobs: int = 1) -> dict:
    tally = Tally()
    tally.merge(_run_tasks("derived", _items(), jobs))
    # group the per-power laws so the report stays compact
    merged: dict[str, int] = defaultdict(int)
    for tag, k in tally.counts.items():
        merged[tag.split("[")[0]] += k
    tally.counts = merged
    return tally.to_json()


# --- criterion 3 ----------------------------------------------------------------------

def criterion_oracle() -> dict:
    out: dict = {"equivalence": {}, "fixtures": []}
    ok = True
    for name in ("z2", "z3"):
        g = corpus_group(name)
        naive = corpus_result(name, "naive")
        structured = enumerate_structured(g)
        same = naive.keys() == structured.keys()
        ok &= same
        out["equivalence"][name] = {"naive": naive.total, "structured": structured.total, "same_tables": same}
    for name, mode in CORPUS:
        result = corpus_result(name, mode)
        for notion in ("group", "heap"):
            if notion not in result.representatives:
                classify(result, notion)
        cmp = compare_with_fixture(name, result)
        coarser = result.counts()["classes_heap"] <= result.counts()["classes_group"]
        cmp["heap_classes_coarser"] = coarser
        ok &= cmp["ok"] and coarser
        out["fixtures"].append(cmp)
    out["ok"] = bool(ok)
    return out


# --- criterion 4 ----------------------------------------------------------------------

def _ybe(item) -> list:
    t = _rebuild(item)
    if t.circ_group is None:
        return []
    rows = []
    n = t.size
    idx = np.arange(n)
    trivial = t.circ == t.group.op
    for e in range(n):
        r = solution_from_truss(t, e)
        v = verify_ybe(r)
        rows.append(("solution", v.ok, None if v.ok else {"truss": _where(item), "e": e, "witness": v.witness}))
        if trivial and t.group.is_abelian:
            rows.append(("trivial-brace-flip", r == YBMap.flip(n), None if r == YBMap.flip(n) else {"truss": _where(item), "e": e}))
    if trivial and not t.group.is_abelian:
        r = solution_from_truss(t, t.one)
        G, inv = t.G, t.inv
        a, b = idx[:, None], idx[None, :]
        expected = YBMap(np.broadcast_to(b, (n, n)), G[G[inv[b], a], b])
        rows.append(("trivial-brace-conjugation", r == expected, None))
    return rows


def criterion_ybe(jobs: int = 1) -> dict:
    tally = Tally()
    tally.merge(_run_tasks("ybe", _items(), jobs))
    return tally.to_json()


# --- criterion 5 ----------------------------------------------------------------------

def _rigidity(item) -> list:
    t = _rebuild(item)
    if t.circ_group is None:
        return []
    rows = []
    brace = extract_brace(t)
    again = extract_brace(brace.truss)
    rows.append(("extract-after-embed-is-identity", again.bullet == brace.bullet, None))
    if t.sigma_is_identity:
        rows.append(("brace-is-fixed-point", brace.bullet == t.circ, None))
        return rows
    isos = bijection_search(t, brace.truss)
    rows.append(("no-isomorphism-to-brace", not isos, None if not isos else {"truss": _where(item), "iso": isos[0]}))
    if t.is_circ_central(t.one):
        s = t.sigma
        heap = is_heap_morphism(s, t.group, t.group)
        mult = bool((s[t.C] == brace.bullet.array[s[:, None], s[None, :]]).all())
        rows.append(("sigma-heap-isomorphism-to-brace", heap.ok and mult, None))
    return rows


def criterion_rigidity(jobs: int = 1) -> dict:
    tally = Tally()
    tally.merge(_run_tasks("rigidity", _items(), jobs))
    return tally.to_json()


# --- criterion 6 ----------------------------------------------------------------------

def _rings(item) -> list:
    t = _rebuild(item)
    if not t.group.is_abelian or not verify_two_sided(t):
        return []
    rows = []
    ring = ring_from_truss(t)
    rows.append(("ring", True, None))
    if (t.sigma == t.one).all():
        same = ring.mul == t.circ and ring_as_truss(ring).circ == t.circ
        rows.append(("ring-round-trip", same, None))
    for e in range(t.size):
        if central_witness(t, e) is None:
            shifted_ring(t, e)
            rows.append(("shifted-ring-matches-family", True, None))
    return rows


def criterion_rings(jobs: int = 1) -> dict:
    tally = Tally()
    tally.merge(_run_tasks("rings", _items(), jobs))
    return tally.to_json()


# --- criterion 7 ----------------------------------------------------------------------

def _collapse_rows(pith, cod: SkewTruss) -> list:
    """Set-level descriptions of the pith for the special codomains."""
    rows = []
    sb = cod.sigma
    kernel = pith.kernel
    if (sb == cod.one).all():
        ok = pith.period == 1 and all(pith.chamber(k) == kernel for k in range(4))
        rows.append(("collapse-constant-cocycle", ok, None))
    if cod.sigma_is_identity:
        rows.append(("collapse-identity-cocycle", pith.members == kernel, None))
    if (sb[sb] == sb).all() and (cod.C == sb[:, None]).all():
        f = pith.owner.map
        expected = frozenset(a for a, y in enumerate(f) if y in (cod.one, int(sb[cod.one])))
        ok = all(pith.chamber(k) == pith.chamber(1) for k in range(1, 5)) and pith.members == expected
        rows.append(("idempotent-codomain", ok, None))
    return rows


def _codomain_kind(t: SkewTruss) -> tuple[bool, bool, bool]:
    s = t.sigma
    return bool((s == t.one).all()), t.sigma_is_identity, bool((s[s] == s).all() and (t.C == s[:, None]).all())


def criterion_piths() -> dict:
    """Every morphism between corpus trusses of order <= PITH_ORDER.

    Morphisms are found in bulk per pair of groups. Hom laws and the cocycle
    and action diagrams are checked for every morphism; the chambers of f
    depend only on the domain, the map and the codomain's orbit of 1, so the
    pith properties are checked once per distinct such triple (refined by the
    kind of codomain cocycle, which selects the collapse checks).
    """
    tally = Tally()
    small = [(name, trusses) for name, trusses in corpus() if trusses[0].size <= PITH_ORDER]
    seen: set = set()
    total = 0
    for dname, doms in small:
        dact = [action_tables(t) for t in doms]
        dsig = np.stack([t.sigma for t in doms])
        dlam = np.stack([a.lam for a in dact])
        dmu = np.stack([a.mu for a in dact])
        for cname, cods in small:
            cact = [action_tables(t) for t in cods]
            csig = np.stack([t.sigma for t in cods])
            clam = np.stack([a.lam for a in cact])
            cmu = np.stack([a.mu for a in cact])
            orbits = [identity_orbit(t) for t in cods]
            kinds = [_codomain_kind(t) for t in cods]
            found = bulk_morphisms(doms, cods)
            total += len(found)
            if not found:
                continue
            by_map: dict = defaultdict(list)
            for i, j, f in found:
                by_map[f].append((i, j))
            for f, pairs in by_map.items():
                fa = np.asarray(f, dtype=np.intp)
                I = np.array([p[0] for p in pairs])
                J = np.array([p[1] for p in pairs])
                for law, lhs, rhs in (
                    ("preserves-diamond", fa[doms[0].G], cods[0].G[fa[:, None], fa[None, :]]),
                    ("intertwines-sigma", fa[dsig[I]], csig[J][:, fa]),
                    ("intertwines-lambda", fa[dlam[I]], clam[J][:, fa[:, None], fa[None, :]]),
                    ("intertwines-mu", fa[dmu[I]], cmu[J][:, fa[:, None], fa[None, :]]),
                ):
                    ok = bool((lhs == rhs).all())
                    tally.counts[law] += len(pairs)
                    if not ok:
                        tally.record(law, False, {"domain": dname, "codomain": cname, "map": list(f)})
                for i, j in pairs:
                    key = (dname, i, f, orbits[j][0], kinds[j])
                    if key in seen:
                        continue
                    seen.add(key)
                    m = TrussMorphism(doms[i], cods[j], f)
                    pith = compute_pith(m)
                    rows = _verdict_rows((dname, doms[i].key()), pith_report(pith).verdicts)
                    rows += _verdict_rows((dname, doms[i].key()), graded_pith(m).report().verdicts)
                    rows += _collapse_rows(pith, cods[j])
                    tally.merge([rows])
    return tally.to_json(morphisms=total, distinct_piths=len(seen))


# --- criterion 8 ----------------------------------------------------------------------

def _shift_permutation(n: int) -> np.ndarray:
    return (np.arange(n) + 1) % n


def _hopf(item, random_trials: int = 10, seed: int = 0) -> list:
    t = _rebuild(item)
    rows = []
    h = linearize(t)
    for report in full_hopf_report(h, random_trials, seed):
        rows += _verdict_rows(item, report.verdicts)
    for e in range(t.size):
        same = hopf_hierarchy(h, e, random_trials, seed).same_tables(linearize(translate_family(t, e)))
        rows.append(("square-hierarchy", same, None if same else {"truss": _where(item), "e": e}))
    if t.circ_group is not None:
        same = extract_hopf_brace(h, random_trials, seed).same_tables(linearize(extract_brace(t).truss))
        rows.append(("square-brace", same, None if same else {"truss": _where(item)}))
    # porting along a relabelling of the carrier, in both cases
    g = _shift_permutation(t.size)
    ginv = np.argsort(g)
    target_group = validate_group(ginv[t.G[g[:, None], g[None, :]]])
    target_circ = MagmaTable(ginv[t.C[g[:, None], g[None, :]]])
    for kind, target in (("hopf", target_group), ("bialgebra", target_circ)):
        same = port_hopf(h, g, kind, target, random_trials, seed).same_tables(linearize(port_structure(t, target, g)))
        rows.append((f"square-port-{kind}", same, None if same else {"truss": _where(item)}))
    for f in automorphisms(t.group)[:2]:
        same = port_hopf(h, f, "hopf", t.group, random_trials, seed).same_tables(linearize(port_structure(t, t.group, f)))
        rows.append(("square-port-automorphism", same, None if same else {"truss": _where(item), "map": list(f)}))
    return rows


def criterion_hopf(jobs: int = 1) -> dict:
    tally = Tally()
    tally.merge(_run_tasks("hopf", _items(HOPF_ORDER), jobs))
    return tally.to_json()


# --- driver -----------------------------------------------------------------------------

TASKS = {
    "law_forms": _law_forms,
    "derived": _derived,
    "ybe": _ybe,
    "rigidity": _rigidity,
    "rings": _rings,
    "hopf": _hopf,
}

NAMES = {
    1: "law-equivalence",
    2: "derived-structure",
    3: "oracle-equivalence",
    4: "yang-baxter",
    5: "brace-rigidity",
    6: "rings",
    7: "piths",
    8: "hopf",
}


def run_criterion(k: int, jobs: int = 1) -> dict:
    if k == 1:
        return criterion_law_forms(jobs)
    if k == 2:
        return criterion_derived(jobs)
    if k == 3:
        return criterion_oracle()
    if k == 4:
        return criterion_ybe(jobs)
    if k == 5:
        return criterion_rigidity(jobs)
    if k == 6:
        return criterion_rings(jobs)
    if k == 7:
        return criterion_piths()
    if k == 8:
        return criterion_hopf(jobs)
    raise ValueError(f"unknown criterion {k}")


def run_suite(jobs: int = 1, criteria=CRITERIA) -> tuple[dict, dict]:
    """Returns (report, timings). The report is deterministic."""
    report: dict = {"corpus": {}, "criteria": {}}
    timings: dict = {}
    started = time.perf_counter()
    for name, mode in CORPUS:
        report["corpus"][name] = {"mode": mode, "trusses": corpus_result(name, mode).total}
    timings["corpus"] = time.perf_counter() - started
    for k in criteria:
        t0 = time.perf_counter()
        result = run_criterion(k, jobs)
        timings[NAMES[k]] = time.perf_counter() - t0
        report["criteria"][NAMES[k]] = result
    report["ok"] = all(c["ok"] for c in report["criteria"].values())
    return report, timings
