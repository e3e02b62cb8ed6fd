"""Command-line front end. Every subcommand prints a JSON report with a
top-level "ok"; --out writes the constructed object (solution, ring, tables).

Exit codes: 0 all checks pass, 1 a check failed, 2 unreadable or malformed input.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import enumerate as enum
from . import hopf, io, morphism, ring, suite, truss, ybe
from .algebra import group_by_name, validate_group
from .errors import BoundExceeded, TableError, TrussLabError

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class UsageError(Exception):
    pass


def _reports_ok(reports) -> bool:
    return all(r["ok"] for r in reports)


# --- subcommands ------------------------------------------------------------------
# Each returns (report, artifact); the artifact is written to --out when given.

def cmd_verify(args):
    t = io.load_truss(args.input)
    reports = []
    if t.is_left:
        reports.append(truss.check_equivalent_forms(t).to_json())
        reports.append(truss.derived_structure_report(t).to_json())
        reports.append(truss.sigma_power_report(t).to_json())
        reports.append(ybe.check_sigma_invertible(t).to_json())
    report = {"ok": _reports_ok(reports), "side": t.side, "size": t.size, "sigma": t.sigma.tolist(), "reports": reports}
    return report, t.to_json()


def cmd_enumerate(args):
    try:
        group = group_by_name(args.group)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    result = enum.enumerate_trusses(group, args.mode, jobs=args.jobs)
    notions = {"none": (), "both": enum.NOTIONS}.get(args.classify, (args.classify,))
    for notion in notions:
        enum.classify(result, notion)
    fixture = enum.compare_with_fixture(args.group.lower(), result)
    report = {
        "ok": fixture["ok"],
        "group": args.group.lower(),
        "mode": args.mode,
        "counts": result.counts(),
        "fixture": fixture,
    }
    if args.timings:
        report["seconds"] = result.seconds
    return report, result.to_json(tables=True, timings=args.timings)


def cmd_family(args):
    t = io.load_truss(args.input)
    translated = truss.translate_family(t, args.e)
    hierarchy = truss.hierarchy_truss(t, args.e)
    reports = [truss.derived_structure_report(x).to_json() for x in (translated, hierarchy)]
    report = {
        "ok": _reports_ok(reports),
        "e": args.e,
        "translated": translated.to_json(),
        "hierarchy": hierarchy.to_json(),
        "reports": reports,
    }
    return report, {"translated": translated.to_json(), "hierarchy": hierarchy.to_json()}


def _morphism_ends(args):
    """Domain and codomain from flags, falling back to paths stored in the morphism file."""
    data = io.read_json(args.morphism) if getattr(args, "morphism", None) else {}
    base = Path(args.morphism).parent if data else Path(".")
    paths = []
    for flag in ("domain", "codomain"):
        path = getattr(args, flag) or data.get(flag)
        if path is None:
            raise UsageError(f"--{flag} is required unless the morphism file names it")
        if getattr(args, flag) is None:
            path = base / path
        paths.append(path)
    dom, cod = (io.load_truss(p) for p in paths)
    return dom, cod, data


def cmd_pith(args):
    dom, cod, data = _morphism_ends(args)
    f = morphism.build_morphism(dom, cod, io.morphism_map_from_json(data))
    pith = morphism.compute_pith(f)
    reports = [pith.report().to_json(), morphism.graded_pith(f).report().to_json()]
    report = {"ok": _reports_ok(reports), "map": list(f.map), "pith": pith.to_json(), "reports": reports}
    return report, pith.to_json()


def cmd_morphism(args):
    dom, cod, data = _morphism_ends(args)
    if data:
        f = io.morphism_map_from_json(data)
        verdicts = morphism.morphism_verdicts(dom, cod, f) + morphism.diagram_verdicts(dom, cod, f)
        heap = morphism.is_heap_morphism(f, dom.group, cod.group)
        report = {
            "ok": all(v.ok for v in verdicts),
            "map": list(f),
            "checks": [v.to_json() for v in verdicts],
            "heap_morphism": heap.to_json(),
        }
        return report, {"map": list(f)}
    found = morphism.enumerate_morphisms(dom, cod, bound=args.bound)
    maps = [list(m.map) for m in found]
    return {"ok": True, "count": len(maps), "maps": maps}, {"maps": maps}


def cmd_ybe(args):
    t = io.load_truss(args.input)
    e = t.one if args.e is None else args.e
    r = ybe.solution_from_truss(t, e)
    verdict = ybe.verify_ybe(r)
    report = {"ok": verdict.ok, "e": e, "check": verdict.to_json(), "solution": r.to_json()}
    return report, r.to_json()


def cmd_ring(args):
    t = io.load_truss(args.input)
    r = ring.ring_from_truss(t) if args.e is None else ring.shifted_ring(t, args.e)
    rep = ring.ring_report(r)
    report = {"ok": rep.ok, "e": args.e, "ring": r.to_json(), "reports": [rep.to_json()]}
    return report, r.to_json()


HOPF_CHECKS = {
    "structure": lambda h, n, s: [hopf.structure_report(h)],
    "axioms": lambda h, n, s: [hopf.verify_hopf_truss_axioms(h, n, s)],
    "forms": lambda h, n, s: [hopf.check_equivalent_hopf_forms(h, n, s)],
    "actions": lambda h, n, s: [hopf.hopf_actions_and_cocycle(h, n, s)],
    "all": hopf.full_hopf_report,
}


def cmd_hopf(args):
    h = hopf.linearize(io.load_truss(args.input))
    reports = [r.to_json() for r in HOPF_CHECKS[args.check](h, args.trials, args.seed)]
    report = {"ok": _reports_ok(reports), "seed": args.seed, "random_trials": args.trials, "reports": reports}
    return report, h.to_json()


def cmd_port(args):
    t = io.load_truss(args.input)
    f = io.morphism_map_from_json(io.read_json(args.map))
    table = io.magma_from_json(io.read_json(args.target))
    target = validate_group(table) if args.kind == "group" else table
    ported = truss.port_structure(t, target, f)
    rep = truss.derived_structure_report(ported).to_json() if ported.is_left else None
    report = {"ok": rep is None or rep["ok"], "kind": args.kind, "truss": ported.to_json(), "reports": [rep] if rep else []}
    return report, ported.to_json()


def cmd_suite(args):
    criteria = tuple(args.criteria) if args.criteria else suite.CRITERIA
    report, timings = suite.run_suite(args.jobs, criteria)
    if args.timings:
        report["timings"] = timings
    return report, report


COMMANDS = {
    "verify": cmd_verify,
    "enumerate": cmd_enumerate,
    "family": cmd_family,
    "pith": cmd_pith,
    "morphism": cmd_morphism,
    "ybe": cmd_ybe,
    "ring": cmd_ring,
    "hopf": cmd_hopf,
    "port": cmd_port,
    "suite": cmd_suite,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="trusslab", description="Finite skew trusses: verification, constructions, enumeration.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the constructed object as JSON")
    common.add_argument("--jobs", type=int, default=1, help="worker processes (results do not depend on it)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized trials")
    common.add_argument("--timings", action="store_true", help="include wall-clock timings (breaks byte-identity)")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_):
        return sub.add_parser(name, parents=[common], help=help_)

    add("verify", "check a truss file and report derived structure").add_argument("--input", required=True)

    s = add("enumerate", "list every truss on a named group")
    s.add_argument("--group", required=True, help="z<n>, klein4, s3, d<m>, s4 or products such as z2xz2")
    s.add_argument("--mode", choices=("naive", "structured"), default="structured")
    s.add_argument("--classify", choices=("none", "group", "heap", "both"), default="both")

    s = add("family", "translated truss and hierarchy member for an element e")
    s.add_argument("--input", required=True)
    s.add_argument("--e", type=int, required=True)

    for name, help_ in (("pith", "chambers of a morphism's pith"), ("morphism", "check one map or list all morphisms")):
        s = add(name, help_)
        s.add_argument("--domain")
        s.add_argument("--codomain")
        s.add_argument("--morphism", required=name == "pith", help='JSON {"map": [...], "domain"?: path, "codomain"?: path}')
        if name == "morphism":
            s.add_argument("--bound", type=int, default=morphism.DEFAULT_MORPHISM_BOUND)

    s = add("ybe", "Yang-Baxter solution attached to a truss")
    s.add_argument("--input", required=True)
    s.add_argument("--e", type=int, default=None, help="defaults to the group identity")

    s = add("ring", "ring of a two-sided truss on an abelian group")
    s.add_argument("--input", required=True)
    s.add_argument("--e", type=int, default=None, help="central element for the shifted ring")

    s = add("hopf", "linearize over Q and check the Hopf identities")
    s.add_argument("--input", required=True)
    s.add_argument("--check", choices=tuple(HOPF_CHECKS), default="all")
    s.add_argument("--trials", type=int, default=10, help="random rational trials per identity")

    s = add("port", "transport a truss along a bijection")
    s.add_argument("--input", required=True)
    s.add_argument("--map", required=True, help='JSON {"map": [...]}')
    s.add_argument("--target", required=True, help='JSON {"size": n, "table": [...]}')
    s.add_argument("--kind", choices=("group", "semigroup"), default="group", help="which operation the target table is")

    s = add("suite", "run the full verification suite over the enumerated corpus")
    s.add_argument("--criteria", type=int, nargs="*", choices=suite.CRITERIA)
    return p


def _emit(report: dict) -> None:
    sys.stdout.write(io.dumps(report))


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    started = time.perf_counter()
    try:
        report, artifact = COMMANDS[args.command](args)
    except (TableError, BoundExceeded, UsageError) as exc:
        detail = exc.to_json() if isinstance(exc, TrussLabError) else {"error": "UsageError", "message": str(exc)}
        _emit({"ok": False, "input_error": detail})
        return EXIT_INPUT
    except TrussLabError as exc:
        _emit({"ok": False, "failure": exc.to_json()})
        return EXIT_FAIL
    if args.timings:
        report.setdefault("seconds", time.perf_counter() - started)
    if args.out:
        io.write_json(artifact, args.out)
    _emit(report)
    return EXIT_OK if report["ok"] else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
