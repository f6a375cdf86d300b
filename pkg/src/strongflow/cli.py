"""Command line interface: solve, gen, bench, selftest, verify.

Exit codes: 0 success, 1 failed self-test property, 2 usage or parse error,
3 representing-tree violation, 4 verification failure, 5 unbounded
instance, 6 internal engine failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import formats
from .engine import EngineConfig, EngineFailure, solve
from .flowcore import FlowError, UnboundedError, check_feasible, cut_capacity, flow_value, min_cut_from_flow
from .generators import KINDS, generate
from .itco import BACKENDS
from .oracle import max_flow_value
from .values import INF, format_value

SCHEMA = "v1"
EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_TREE, EXIT_VERIFY, EXIT_UNBOUNDED, EXIT_ENGINE = range(7)


def default_seed() -> int:
    raw = os.environ.get("STRONGFLOW_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise SystemExit("STRONGFLOW_SEED must be an integer, got %r" % raw)


def value_text(x) -> str:
    if x is INF:
        return "*"
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else format_value(x)


def jsonable(obj):
    if isinstance(obj, dict):
        return {k: jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if obj is INF or isinstance(obj, Fraction):
        return value_text(obj)
    return obj


def metrics_record(metrics: dict, **extra) -> dict:
    rec = {"schema": SCHEMA}
    rec.update(extra)
    rec.update(metrics)
    return jsonable(rec)


def _fail(code: int, message: str) -> int:
    print("error: %s" % message, file=sys.stderr)
    return code


# ---------------------------------------------------------------------- solve

def cmd_solve(args) -> int:
    try:
        inst = formats.parse_instance(formats.read_text(args.instance))
        tree = formats.parse_tree(formats.read_text(args.tree), inst.n) if args.tree else None
    except OSError as exc:
        return _fail(EXIT_USAGE, str(exc))
    except formats.ParseError as exc:
        return _fail(EXIT_USAGE, "%s: %s" % (args.instance if not args.tree else "input", exc))
    if args.itco == "treedepth":
        if tree is None:
            return _fail(EXIT_USAGE, "the treedepth backend needs --tree")
        bad = formats.tree_violations(tree, inst)
        if bad:
            return _fail(EXIT_TREE, "arc line %d does not respect the representing tree (%d such arcs)" % (bad[0], len(bad)))
    cfg = EngineConfig(itco=args.itco, tree=tree, check=args.check, oracle_check=args.check,
                       iteration_cap=args.max_iterations, division_free=args.division_free)
    try:
        res = solve(inst, cfg)
    except UnboundedError as exc:
        return _fail(EXIT_UNBOUNDED, "unbounded instance: %s" % exc)
    except EngineFailure as exc:
        return _fail(EXIT_ENGINE, "engine failure: %s" % exc)
    print("value %s" % value_text(res.value))
    flow_text = formats.write_flow(inst, res.flow)
    if args.flow:
        formats.write_text(args.flow, flow_text)
    else:
        sys.stdout.write(flow_text)
    if args.metrics:
        rec = metrics_record(res.metrics, instance=os.path.basename(args.instance))
        formats.write_text(args.metrics, json.dumps(rec, indent=1, sort_keys=True) + "\n")
    if args.verify:
        want = max_flow_value(inst)
        if want != res.value:
            return _fail(EXIT_VERIFY, "value %s differs from the reference %s" % (value_text(res.value), value_text(want)))
        print("verified: matches reference max flow", file=sys.stderr)
    return EXIT_OK


# ---------------------------------------------------------------------- verify

def cmd_verify(args) -> int:
    try:
        inst = formats.parse_instance(formats.read_text(args.instance))
        flow = formats.parse_flow(formats.read_text(args.flow), inst)
    except OSError as exc:
        return _fail(EXIT_USAGE, str(exc))
    except formats.ParseError as exc:
        return _fail(EXIT_USAGE, str(exc))
    try:
        check_feasible(inst, flow)
    except FlowError as exc:
        return _fail(EXIT_VERIFY, "infeasible flow: %s" % exc)
    try:
        want = max_flow_value(inst)
    except UnboundedError:
        return _fail(EXIT_UNBOUNDED, "unbounded instance")
    value = flow_value(inst, flow)
    if value != want:
        return _fail(EXIT_VERIFY, "flow value %s, maximum %s" % (value_text(value), value_text(want)))
    cut = min_cut_from_flow(inst, flow)
    if cut_capacity(inst, cut.source_side) != value:
        return _fail(EXIT_VERIFY, "cut capacity differs from flow value")
    print("ok value %s cut %s" % (value_text(value), value_text(cut.capacity)))
    return EXIT_OK


# ------------------------------------------------------------------------ gen

def _sizes(args) -> dict:
    keys = ("n", "m", "left", "right", "degree", "T", "width", "K", "D")
    return {k: getattr(args, k) for k in keys if getattr(args, k) is not None}


def cmd_gen(args) -> int:
    seed = default_seed() if args.seed is None else args.seed
    try:
        inst, tree = generate(args.kind, seed, **_sizes(args))
    except ValueError as exc:
        return _fail(EXIT_USAGE, str(exc))
    comment = "strongflow gen %s seed=%d %s" % (
        args.kind, seed, " ".join("%s=%s" % kv for kv in sorted(_sizes(args).items())))
    text = formats.write_instance(inst, comment.strip())
    if args.out is None:
        sys.stdout.write(text)
        return EXIT_OK
    formats.write_text(args.out + ".max", text)
    print(args.out + ".max")
    if tree is not None:
        formats.write_text(args.out + ".tree", formats.write_tree(tree))
        print(args.out + ".tree")
    return EXIT_OK


# ---------------------------------------------------------------------- bench

SUITES = {
    "general": [("random", {"n": n, "m": 4 * n}) for n in (20, 40, 80)],
    "treedepth": [("treedepth", {"n": n, "D": 8, "m": 3 * n}) for n in (100, 200, 400)],
    "ordered": [("random", {"n": n, "m": 3 * n}) for n in (20, 40, 80)],
    "layered": [("layered", {"T": T, "width": 4, "K": 2}) for T in (6, 12, 24)],
    "matching": [("bipartite", {"left": k, "right": k, "degree": 3}) for k in (5, 10, 20)],
}


def _bench_one(job):
    index, name, kind, sizes, seed, backend = job
    inst, tree = generate(kind, seed, **sizes)
    try:
        res = solve(inst, EngineConfig(itco=backend, tree=tree))
    except Exception as exc:   # isolate per-run failures
        return index, {"schema": SCHEMA, "instance": name, "backend": backend, "error": str(exc)}
    rec = metrics_record(res.metrics, instance=name, backend=backend, tree_depth=tree.D if tree else None)
    return index, rec


def _bound(rec: dict, backend: str) -> float:
    if backend == "treedepth" and rec.get("tree_depth"):
        return sum(p["R_ess"] for p in rec["per_iteration"] if p["aux_arcs"]) * rec["tree_depth"]
    if backend == "ordered":
        return rec["n"] * rec["m_c"]
    return rec["m_c"] * math.sqrt(max(rec["m"], 1))


def cmd_bench(args) -> int:
    seed = default_seed() if args.seed is None else args.seed
    backends = args.backends.split(",") if args.backends else None
    jobs = []
    for suite in args.suite:
        if suite not in SUITES:
            return _fail(EXIT_USAGE, "unknown suite %r (choose from %s)" % (suite, ", ".join(SUITES)))
        names = backends or (["treedepth"] if suite in ("treedepth", "layered") else
                             ["ordered"] if suite == "ordered" else ["italiano"])
        for b in names:
            if b not in BACKENDS:
                return _fail(EXIT_USAGE, "unknown backend %r" % b)
        for kind, sizes in SUITES[suite]:
            for r in range(args.repeat):
                name = "%s/%s-%s-s%d" % (suite, kind, "-".join("%s%s" % kv for kv in sorted(sizes.items())), seed + r)
                for b in names:
                    jobs.append((len(jobs), name, kind, sizes, seed + r, b))
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_bench_one, jobs))
    else:
        results = [_bench_one(j) for j in jobs]
    results.sort(key=lambda x: x[0])
    sink = open(args.metrics_out, "w", encoding="utf-8") if args.metrics_out else None
    failures = 0
    rows = []
    try:
        for _, rec in results:
            line = json.dumps(rec, sort_keys=True)
            if sink:
                sink.write(line + "\n")
            if "error" in rec:
                failures += 1
                rows.append("%-48s %-10s ERROR %s" % (rec["instance"], rec["backend"], rec["error"]))
                continue
            bound = _bound(rec, rec["backend"])
            rows.append("%-48s %-10s %6d %6d %5d %9d %12.1f %7.3f" % (
                rec["instance"], rec["backend"], rec["n"], rec["m_c"], rec["iterations"],
                rec["cover_arcs_total"], bound, rec["cover_arcs_total"] / bound if bound else 0.0))
    finally:
        if sink:
            sink.close()
    print("%-48s %-10s %6s %6s %5s %9s %12s %7s" % ("instance", "backend", "n", "m_c", "iters", "cover", "bound", "ratio"))
    print("\n".join(rows))
    print("bound: treedepth sum|S|*D, ordered n*m_c, otherwise m_c*sqrt(m); %d runs, %d failed" % (len(results), failures))
    return EXIT_OK if failures == 0 else EXIT_CHECK


# ------------------------------------------------------------------- selftest

def _drop_last_cover_arc(backend):
    if backend.name != "italiano":
        return
    inner = backend._cover

    def cover(S):
        V, E = inner(S)
        return V, list(E)[:-1]

    backend._cover = cover


def cmd_selftest(args) -> int:
    from . import selfcheck

    seed = default_seed() if args.seed is None else args.seed
    k = args.scale
    suites = [
        (selfcheck.engine_suite, dict(trials=max(1, 40 * k), seed=seed, max_n=30, max_m=150)),
        (selfcheck.itco_suite, dict(trials=max(1, 25 * k), seed=seed, max_n=20,
                                    cover_hook=_drop_last_cover_arc if args.mutate_cover else None)),
        (selfcheck.witness_suite, dict(trials=max(1, 50 * k), seed=seed)),
        (selfcheck.approx_suite, dict(trials=max(1, 50 * k), seed=seed)),
        (selfcheck.sparsity_suite, dict(sizes=(60, 120), depths=(4, 8), seed=seed,
                                        seeds_per_size=1, general_trials=max(1, 10 * k))),
    ]
    failed = 0
    for fn, kw in suites:
        for res in fn(**kw):
            print(res.line())
            if not res.ok:
                failed += 1
                print("  reproduce with --seed %d" % seed)
    print("%s: %d failing properties" % ("FAIL" if failed else "OK", failed))
    return EXIT_CHECK if failed else EXIT_OK


# ----------------------------------------------------------------------- main

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="strongflow", description="Exact maximum flow with certifying cuts.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="solve an instance file")
    s.add_argument("instance")
    s.add_argument("--itco", choices=BACKENDS, default="italiano", help="transitive cover backend")
    s.add_argument("--tree", help="representing tree file (required for treedepth)")
    s.add_argument("--verify", action="store_true", help="compare with the reference solver")
    s.add_argument("--metrics", help="write a JSON metrics record here")
    s.add_argument("--flow", help="write flow lines here instead of stdout")
    s.add_argument("--check", action="store_true", help="check iterate invariants every iteration")
    s.add_argument("--division-free", action="store_true", help="round capacities by binary search")
    s.add_argument("--max-iterations", type=int, help="override the iteration safety cap")
    s.set_defaults(func=cmd_solve)

    g = sub.add_parser("gen", help="generate an instance (and tree)")
    g.add_argument("kind", choices=KINDS)
    g.add_argument("--out", help="path prefix; writes PREFIX.max and PREFIX.tree")
    g.add_argument("--seed", type=int, help="default: $STRONGFLOW_SEED or 0")
    for name in ("n", "m", "left", "right", "degree", "T", "width", "K", "D"):
        g.add_argument("--" + name, type=int, dest=name)
    g.set_defaults(func=cmd_gen)

    b = sub.add_parser("bench", help="run backend x instance suites")
    b.add_argument("--suite", action="append", default=None, help="one of %s (repeatable)" % ", ".join(SUITES))
    b.add_argument("--backends", help="comma-separated backends (default depends on suite)")
    b.add_argument("--repeat", type=int, default=1, help="seeds per instance shape")
    b.add_argument("--jobs", type=int, default=1, help="worker processes")
    b.add_argument("--seed", type=int)
    b.add_argument("--metrics-out", help="JSON lines file, one record per run")
    b.set_defaults(func=cmd_bench)

    t = sub.add_parser("selftest", help="run the property suites at reduced size")
    t.add_argument("--scale", type=int, default=1, help="multiplies trial counts")
    t.add_argument("--seed", type=int)
    t.add_argument("--mutate-cover", action="store_true", help="break one backend's cover to test the checker")
    t.set_defaults(func=cmd_selftest)

    v = sub.add_parser("verify", help="check a flow file against an instance")
    v.add_argument("instance")
    v.add_argument("flow")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "bench" and not args.suite:
        args.suite = ["general"]
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
