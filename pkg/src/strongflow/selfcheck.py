"""Property suites shared by ``strongflow selftest`` and the acceptance tests.

Each suite draws seeded random cases, compares against independent oracles
and returns one :class:`CheckResult` per property.  Trial counts are
arguments, so the CLI can run the same code at reduced size.
"""

from __future__ import annotations

import math
import random
import time
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction

from .approx import approx_flow, fast_max_flow, rounded_capacity, rounded_capacity_division_free, max_cap_path
from .engine import CountingFailure, EngineConfig, EngineFailure, solve
from .flowcore import (
    FlowInstance,
    basic_acyclic_violations,
    check_feasible,
    cut_capacity,
    flow_value,
    is_bounded,
    residuals,
)
from .generators import random_instance, treedepth_instance
from .itco import (
    BACKENDS,
    ItalianoItco,
    OracleItco,
    OrderedItco,
    RepresentingTree,
    TreeDepthItco,
    check_cover,
    restricted_closure_oracle,
)
from .oracle import edmonds_karp, max_flow_value
from .values import INF
from .witness import WitnessList, divergence, is_simple_path, wit_route, wit_route_oracle


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str
    stats: dict = field(default_factory=dict)

    def line(self) -> str:
        return "%s %s: %s" % ("PASS" if self.ok else "FAIL", self.name, self.detail)


# ---------------------------------------------------------------- engine runs

def engine_suite(trials: int, seed: int, max_n: int = 60, max_m: int = 400,
                 oracle_limit: int = 60, backends=BACKENDS) -> list[CheckResult]:
    """Exact correctness, counting bounds and iterate invariants on random instances."""
    rng = random.Random(seed)
    wrong, invariant, counting = [], [], []
    ess_ratio_max = 0.0
    ess_total = mc_total = 0
    fe_max = fs_max = 0
    iterations = 0
    t0 = time.perf_counter()
    for k in range(trials):
        n = rng.randint(2, max_n)
        m = rng.randint(0, min(max_m, 3 * n * n))
        inst_seed = rng.randrange(2 ** 31)
        inst, _ = random_instance(n, m, inst_seed)
        backend = backends[k % len(backends)]
        cfg = EngineConfig(itco=backend, check=True, oracle_check=True, oracle_limit=oracle_limit)
        try:
            res = solve(inst, cfg)
        except CountingFailure as exc:
            counting.append((inst_seed, n, m, backend, str(exc)))
            continue
        except EngineFailure as exc:
            invariant.append((inst_seed, n, m, backend, str(exc)))
            continue
        want = max_flow_value(inst)
        ok = res.value == want
        try:
            check_feasible(inst, res.flow)
        except Exception:
            ok = False
        if flow_value(inst, res.flow) != want or cut_capacity(inst, res.cut.source_side) != want:
            ok = False
        if not ok:
            wrong.append((inst_seed, n, m, backend, "value %s, oracle %s" % (res.value, want)))
        mt = res.metrics
        iterations += mt["iterations"]
        ess_total += mt["ess_total"]
        mc_total += mt["m_c"]
        ess_ratio_max = max(ess_ratio_max, mt["ess_per_mc"])
        fe_max = max(fe_max, mt["F_e"] / max(n, 1))
        fs_max = max(fs_max, mt["F_s"] / max(n * math.log2(max(n, 2)), 1))
    secs = time.perf_counter() - t0

    def first(items):
        return "; first: seed=%d n=%d m=%d backend=%s: %s" % items[0] if items else ""

    ratio = ess_total / mc_total if mc_total else 0.0
    return [
        CheckResult("exact correctness", not wrong and not invariant and not counting,
                    "%d instances, %d wrong, %d aborted, %.1fs%s"
                    % (trials, len(wrong), len(invariant) + len(counting), secs, first(wrong)),
                    {"seconds": secs, "iterations": iterations}),
        CheckResult("counting bounds", not counting and ess_ratio_max < 50,
                    "%d violations; max |F_e|/n=%.2f, max |F_s|/(n log n)=%.2f, "
                    "sum|E_ess|/m_c overall=%.3f, per-run max=%.3f (< 50)%s"
                    % (len(counting), fe_max, fs_max, ratio, ess_ratio_max, first(counting)),
                    {"ess_ratio": ratio, "ess_ratio_max": ess_ratio_max}),
        CheckResult("iterate invariants", not invariant,
                    "%d violations over %d iterations (oracle-backed for n <= %d)%s"
                    % (len(invariant), iterations, oracle_limit, first(invariant))),
    ]


# ------------------------------------------------------------- cover backends

def _random_tree(rng, n):
    return RepresentingTree({v: (rng.randrange(v) if v else None) for v in range(n)})


def itco_suite(trials: int, seed: int, max_n: int = 40, steps: int = 30, cover_hook=None) -> list[CheckResult]:
    """Random add/cover/reorder sequences run against all four backends."""
    rng = random.Random(seed)
    fails = defaultdict(list)
    for trial in range(trials):
        n = rng.randint(2, max_n)
        tree = _random_tree(rng, n)
        backs = {
            "oracle": OracleItco(range(n)),
            "italiano": ItalianoItco(range(n)),
            "treedepth": TreeDepthItco(range(n), tree),
            "ordered": OrderedItco(range(n), {v: rng.randint(0, 5) for v in range(n)}),
        }
        if cover_hook:
            for b in backs.values():
                cover_hook(b)
        added = []
        for step in range(steps):
            r = rng.random()
            if r < 0.5:
                F = []
                for _ in range(rng.randint(1, 4)):
                    a, b = rng.randrange(n), rng.randrange(n)
                    if a != b and tree.related(a, b):
                        F.append((a, b))
                added += F
                for B in backs.values():
                    B.tc_add(F)
            elif r < 0.85:
                S = set(rng.sample(range(n), rng.randint(1, n)))
                for name, B in backs.items():
                    cover = B.tc_cover(S)
                    if not check_cover(added, S, cover, range(n)):
                        fails[name].append("check_cover failed (trial %d, step %d)" % (trial, step))
                    L = B.tc_wit_list()
                    for pr in cover[1]:
                        if pr not in L:
                            fails[name].append("cover pair %s missing from witness list" % (pr,))
            else:
                S = rng.sample(range(n), rng.randint(1, n))
                backs["ordered"].tc_reorder(S, {a: rng.randint(0, 9) for a in S})
            for msg in backs["ordered"].check_invariants():
                fails["ordered"].append("%s (trial %d, step %d)" % (msg, trial, step))
            if backs["treedepth"].estar != restricted_closure_oracle(tree, added):
                fails["treedepth"].append("E* differs from restricted closure (trial %d, step %d)" % (trial, step))
            for name, B in backs.items():
                try:
                    B.L.validate()
                except Exception as exc:
                    fails[name].append("witness list invalid: %s" % exc)
                if not B.L.is_rooted():
                    fails[name].append("witness list not rooted (trial %d)" % trial)
    out = []
    for name in ("oracle", "italiano", "treedepth", "ordered"):
        bad = fails[name]
        out.append(CheckResult("cover equivalence [%s]" % name, not bad,
                               "%d sequences, %d failures%s" % (trials, len(bad), "; first: " + bad[0] if bad else "")))
    return out


# ------------------------------------------------------------ witness routing

def random_rooted_list(rng, n: int, adds: int):
    """A rooted witness list produced by a cover backend, with its arc set."""
    if rng.random() < 0.5:
        B = ItalianoItco(range(n))
        arcs = [tuple(rng.sample(range(n), 2)) for _ in range(adds)]
    else:
        tree = _random_tree(rng, n)
        B = TreeDepthItco(range(n), tree)
        arcs = []
        for _ in range(adds):
            a, b = rng.sample(range(n), 2)
            if tree.related(a, b):
                arcs.append((a, b))
    for a in arcs:
        B.tc_add([a])
    return B.tc_wit_list()


def random_reverse_set(rng, L: WitnessList):
    seen = set()
    R = set()
    for a, b, w in L:
        if w == b and (b, a) in seen and rng.random() < 0.5:
            R.add((a, b))
        seen.add((a, b))
    return R


def witness_suite(trials: int, seed: int, max_n: int = 14) -> list[CheckResult]:
    rng = random.Random(seed)
    mismatch = div_bad = walk_bad = 0
    entries = 0
    for _ in range(trials):
        n = rng.randint(2, max_n)
        L = random_rooted_list(rng, n, rng.randint(1, 3 * n))
        entries += len(L)
        pairs = L.pairs()
        f = {}
        for pr in pairs:
            if rng.random() < 0.6:
                f[pr] = Fraction(rng.randint(-20, 20), rng.choice([1, 2, 3]))
        R = random_reverse_set(rng, L)
        g = wit_route(L, f, R)
        h = wit_route_oracle(L, f, R)
        if {k: v for k, v in g.items() if v} != {k: v for k, v in h.items() if v}:
            mismatch += 1
        if {k: v for k, v in divergence(g).items() if v} != {k: v for k, v in divergence(f).items() if v}:
            div_bad += 1
        if L.is_rooted():
            for a, b in pairs:
                if not is_simple_path(L.walk(a, b), a, b):
                    walk_bad += 1
                    break
    ok = not (mismatch or div_bad or walk_bad)
    return [CheckResult("witness routing", ok,
                        "%d lists (%d entries): %d route mismatches, %d divergence errors, %d non-simple walks"
                        % (trials, entries, mismatch, div_bad, walk_bad))]


# ------------------------------------------------------------- approx solver

def approx_suite(trials: int, seed: int, max_n: int = 10) -> list[CheckResult]:
    rng = random.Random(seed)
    chain_bad = basic_bad = rounding_bad = 0
    done = 0
    first = ""
    while done < trials:
        n = rng.randint(2, max_n)
        g = FlowInstance(n, 0, n - 1)
        for _ in range(rng.randint(0, 3 * n)):
            a, b = rng.sample(range(n), 2)
            c = INF if rng.random() < 0.2 else Fraction(rng.randint(0, 10 ** 6), rng.choice([1, 1, 1, 7]))
            g.add_pair(a, b, c, Fraction(rng.randint(0, 5)) if rng.random() < 0.3 else Fraction(0))
        if not is_bounded(g):
            continue
        done += 1
        M = (4 * n * n) ** 5
        nu, _ = edmonds_karp(g)
        res = approx_flow(g, None, M)
        f, m = res.flow, g.m
        check_feasible(g, f)
        resid = residuals(g, f)
        nu_res, _ = edmonds_karp(g.with_caps(resid))
        ue = resid[res.cert_arc] if res.cert_arc is not None else 0
        if not (nu_res <= m * ue <= m * nu_res <= nu / M):
            chain_bad += 1
            first = first or "chain: nu_res=%s m*u=%s nu=%s" % (nu_res, m * ue, nu)
        u_bar, e_bar = max_cap_path(g, g.cap)
        if e_bar is not None:
            w = [rounded_capacity(c, u_bar, m, M) for c in g.cap]
            if w != [rounded_capacity_division_free(c, u_bar, m, M) for c in g.cap]:
                rounding_bad += 1
            delta = Fraction(u_bar) / (m * m * M)
            before = [delta * x for x in fast_max_flow(g, w)]
            if basic_acyclic_violations(g, f, before=before):
                basic_bad += 1
                first = first or "basic: %s" % basic_acyclic_violations(g, f, before=before)
    ok = not (chain_bad or basic_bad or rounding_bad)
    return [CheckResult("approx flow contract", ok,
                        "%d instances: %d chain violations, %d basic-acyclic violations, %d rounding mismatches%s"
                        % (trials, chain_bad, basic_bad, rounding_bad, "; " + first if first else ""))]


# ------------------------------------------------------------ cover sparsity

def sparsity_suite(sizes=(250, 500, 1000, 2000), depths=(4, 8, 16), seed: int = 0,
                   seeds_per_size: int = 3, general_trials: int = 60,
                   tolerance: float = 0.25) -> list[CheckResult]:
    """Cover output against |S| D on tree-depth suites, and the general per-query bound.

    ``D`` is the suite's declared depth bound; the realized depth of small
    random trees can fall below it and is reported alongside.
    """
    rows = []
    stable = True
    for D in depths:
        cs = []
        realized = []
        for n in sizes:
            arcs = bound = 0
            for j in range(seeds_per_size):
                inst, tree = treedepth_instance(n, D, 3 * n, seed=seed + 1000 * j + n + D)
                res = solve(inst, EngineConfig(itco="treedepth", tree=tree))
                arcs += sum(p["cover_arcs"] for p in res.metrics["per_iteration"])
                bound += sum(p["R_ess"] for p in res.metrics["per_iteration"] if p["aux_arcs"]) * D
                realized.append(tree.D)
            cs.append(arcs / bound if bound else 0.0)
        mean = sum(cs) / len(cs)
        spread = max(abs(c - mean) / mean for c in cs) if mean else 0.0
        stable &= spread <= tolerance
        rows.append("D=%d: c=%s (spread %.0f%%, realized depth %d-%d)"
                    % (D, "/".join("%.3f" % c for c in cs), 100 * spread, min(realized), max(realized)))
    rng = random.Random(seed)
    over = 0
    queries = 0
    for k in range(general_trials):
        n = rng.randint(3, 40)
        inst, _ = random_instance(n, rng.randint(n, 6 * n), rng.randrange(2 ** 31))
        res = solve(inst, EngineConfig(itco="italiano"))
        for p in res.metrics["per_iteration"]:
            if p["aux_arcs"]:
                queries += 1
                if p["cover_arcs"] > min(p["R_ess"] ** 2, p["tc_arcs"]):
                    over += 1
    return [
        CheckResult("cover sparsity [treedepth]", stable,
                    "sizes %s; %s; tolerance +-%d%%" % (",".join(map(str, sizes)), "; ".join(rows), 100 * tolerance)),
        CheckResult("cover sparsity [general]", over == 0,
                    "%d cover queries over %d instances, %d above min(|S|^2, |E|)" % (queries, general_trials, over)),
    ]
