"""Strongly polynomial maximum flow by scaling over valid iterates.

The engine keeps a feasible flow ``f``, safe residual capacities ``r``, an
accuracy ``eps`` and a partition of the nodes into free components, each
with a root.  Arcs whose residual capacity reaches ``gamma * eps``
(``gamma = 4 n^2``) are abundant and stay abundant; they are fed to an
incremental transitive cover structure.  Each iteration solves an auxiliary
instance built from the essential arcs and a transitive cover of their
roots, shrinks ``eps`` by at least ``gamma^3``, and merges components.  At
the end, flow on shortcut and extension arcs is moved back onto arcs of the
input.
"""

from __future__ import annotations

import math
import time
from collections import defaultdict, deque
from dataclasses import dataclass, field
from fractions import Fraction

from .approx import approx_flow
from .flowcore import (
    FlowError,
    FlowInstance,
    NormalizedInstance,
    check_feasible,
    flow_value,
    min_cut_from_flow,
    normalize_input,
    residual,
    send_flow,
    strip_source_sink_arcs,
    to_acyclic,
)
from .itco import make_itco
from .itco.treedepth import RepresentingTree
from .oracle import max_flow_value
from .values import INF
from .witness import wit_route

ZERO = Fraction(0)


class EngineFailure(FlowError):
    """An internal invariant failed; carries a short state summary."""


class CountingFailure(EngineFailure):
    """A counting bound on added arcs or gap and regular pairs was exceeded."""


@dataclass
class EngineConfig:
    itco: str = "italiano"
    tree: RepresentingTree | None = None
    check: bool = False          # structural checks of every iterate
    oracle_check: bool = False   # max-flow-backed checks of (A) and (B)
    oracle_limit: int = 60
    iteration_cap: int | None = None
    division_free: bool = False


@dataclass
class SolveResult:
    flow: list
    value: object
    cut: object
    metrics: dict = field(default_factory=dict)


class Engine:
    def __init__(self, norm: NormalizedInstance, config: EngineConfig | None = None):
        self.cfg = config or EngineConfig()
        self.norm = norm
        self.G = norm.inst.copy()
        G = self.G
        self.n, self.s, self.t = G.n, G.s, G.t
        self.m0 = G.m
        self.gamma = 4 * self.n * self.n
        self.M = self.gamma ** 5
        self.kind = ["orig"] * G.m       # orig | ext | short | dead
        self.abundant = [False] * G.m
        self.root = list(range(self.n))
        self.members = {i: [i] for i in range(self.n)}
        self.tree_arcs = {i: [] for i in range(self.n)}
        self.shortcut: dict[int, int] = {}
        self.F_e: list[int] = []
        self.F_s: list[int] = []
        self.owner: dict[tuple[int, int], int] = {}
        self.bpair: dict[int, int] = {}
        for i, e in norm.sp_arc.items():
            self.bpair[e >> 1] = i
        for i, e in norm.it_arc.items():
            self.bpair[e >> 1] = i
        self.m_c = self.n + sum(
            1 for p in range(0, G.m, 2)
            if any(c is not INF and c > 0 for c in (G.cap[p], G.cap[p + 1]))
        )
        self.gap_iterations = defaultdict(int)
        self.regular_run = defaultdict(int)
        self.iter_log: list[dict] = []
        self.times = defaultdict(float)
        self.checks_run = 0
        self.eps = ZERO
        self.f: list = []
        self.r: list = []
        self.itco = None

    # ------------------------------------------------------------------ basics
    def res(self, e):
        return residual(self.G, self.f, e)

    def send(self, e, amount):
        send_flow(self.G, self.f, e, amount)

    def is_boundary(self, e) -> bool:
        i = self.bpair.get(e >> 1)
        return i is not None and self.root[i] == i

    def _new_pair(self, a, b, cap_ab, cap_ba, kind):
        e = self.G.add_pair(a, b, cap_ab, cap_ba)
        self.f += [ZERO, ZERO]
        self.r += [ZERO, ZERO]
        self.kind += [kind, kind]
        self.abundant += [False, False]
        return e

    # -------------------------------------------------------------- initialize
    def initialize(self):
        G, s, t = self.G, self.s, self.t
        f = [ZERO] * G.m
        self.f = f
        for p in range(0, G.m, 2):
            if p >> 1 in self.bpair:
                continue
            if G.cap[p + 1] is INF:
                f[p] = G.cap[p]
            else:
                f[p + 1] = G.cap[p + 1]
        for i, e in self.norm.sp_arc.items():
            f[e] = G.cap[e]
            f[self.norm.it_arc[i]] = G.cap[self.norm.it_arc[i]]
        for i, e in self.norm.sp_arc.items():
            ex = sum((f[a ^ 1] - f[a] for a in G.adj[i]), ZERO)
            if ex > 0:
                f[e ^ 1] += ex
            elif ex < 0:
                f[self.norm.it_arc[i] ^ 1] -= ex
        self.eps = sum((c for c in G.cap if c is not INF), ZERO)
        self.r = [self.res(e) for e in range(G.m)]
        if self.eps == 0:
            return
        threshold = self.gamma * self.eps
        for e in range(G.m):
            self.abundant[e] = self.res(e) >= threshold
        self.itco = make_itco(self.cfg.itco, range(self.n), tree=self._itco_tree(),
                              x=self._order_values() if self.cfg.itco == "ordered" else None)
        self._tc_add([e for e in range(G.m) if self.abundant[e]])
        self._merge_components()

    def _itco_tree(self):
        if self.cfg.itco != "treedepth":
            return None
        tree = self.cfg.tree
        if tree is None:
            G = self.G
            tree = RepresentingTree.from_dfs(range(self.n), zip(G.tail[::2], G.head[::2]))
        return tree.with_top([self.s, self.t])

    # ---------------------------------------------------------------- main loop
    def run(self) -> list:
        start = time.perf_counter()
        self.initialize()
        self.times["initialize"] += time.perf_counter() - start
        cap = self.cfg.iteration_cap or 20 * self.m_c + 100
        if self.cfg.check and self.eps > 0:
            self.check_iterate()
        while self.eps > 0:
            if len(self.iter_log) >= cap:
                raise EngineFailure("iteration cap %d reached (eps=%s)" % (cap, self.eps))
            self.iterate()
        start = time.perf_counter()
        self.reroute_shortcuts()
        self.times["reroute_shortcuts"] += time.perf_counter() - start
        start = time.perf_counter()
        self.reroute_extensions()
        self.times["wit_route"] += time.perf_counter() - start
        return self.finish()

    def iterate(self):
        G, n, s, t = self.G, self.n, self.s, self.t
        eps, gamma = self.eps, self.gamma
        t0 = time.perf_counter()
        lo, hi = eps / gamma ** 5, gamma * eps
        m_start = G.m
        old_f = list(self.f)
        old_r = list(self.r)
        res = [self.res(e) for e in range(G.m)]
        cross = [e for e in range(G.m)
                 if self.kind[e] != "dead" and self.root[G.tail[e]] != self.root[G.head[e]]]
        ess = [e for e in cross if lo <= res[e] < hi]
        ess_set = set(ess)
        R_ess = {self.root[G.tail[e]] for e in ess} | {self.root[G.head[e]] for e in ess}
        tiny = [res[e] for e in cross if res[e] < lo]
        delta1 = n * n * max(tiny) if tiny else ZERO
        if self.cfg.check:
            self._count_gaps(cross, res)
            self._count_regular()
        delta2 = ZERO
        H_arcs: list[int] = []
        cover_arcs = cover_nodes = aux_m = tc_arcs = 0
        self.times["classify"] += time.perf_counter() - t0
        if s in R_ess and t in R_ess:
            t1 = time.perf_counter()
            tc_arcs = len(self.itco.added())
            V_cov, H = self.itco.tc_cover(R_ess)
            cover_arcs, cover_nodes = len(H), len(V_cov)
            self.times["cover"] += time.perf_counter() - t1
            t1 = time.perf_counter()
            aux, back = self._aux_instance(ess_set, V_cov, H)
            self.times["aux_build"] += time.perf_counter() - t1
            t1 = time.perf_counter()
            result = approx_flow(aux, aux.cap, self.M, self.cfg.division_free)
            self.times["approx_flow"] += time.perf_counter() - t1
            y = result.flow
            aux_m = aux.m
            if result.cert_arc is not None:
                delta2 = aux.m * residual(aux, y, result.cert_arc)
            H_arcs = self._apply_aux_flow(back, y)
        delta = delta1 + delta2
        t1 = time.perf_counter()
        pp = set()
        for e in ess:
            if not self.is_boundary(e):
                pp.add(e)
                pp.add(e ^ 1)
        for e in H_arcs:
            pp.add(e)
            pp.add(e ^ 1)
        self.post_process(delta, sorted(pp))
        for e in H_arcs:
            if self.f[e] == 0 and self.f[e ^ 1] == 0:
                self._kill(e)
            else:
                self.F_e.append(e)
        new_eps = 2 * n * n * delta
        self.times["post_process"] += time.perf_counter() - t1
        record = {"eps": eps, "delta1": delta1, "delta2": delta2, "ess": len(ess),
                  "R_ess": len(R_ess), "cover_arcs": cover_arcs, "cover_nodes": cover_nodes,
                  "aux_arcs": aux_m, "tc_arcs": tc_arcs, "new_ext": sum(1 for e in H_arcs if self.kind[e] == "ext")}
        self.iter_log.append(record)
        if self.cfg.check:
            self.check_successor(eps, new_eps, old_f, old_r, m_start)
        self.eps = new_eps
        if new_eps == 0:
            return
        t1 = time.perf_counter()
        threshold = gamma * new_eps
        J = []
        for e in range(G.m):
            if not self.abundant[e] and self.kind[e] != "dead" and self.res(e) >= threshold:
                self.abundant[e] = True
                J.append(e)
        self._tc_add([e for e in J if not (self.kind[e] == "ext" and e % 2 == 0)])
        self.times["tc_add"] += time.perf_counter() - t1
        t1 = time.perf_counter()
        self._merge_components()
        if self.cfg.itco == "ordered":
            self._reorder(R_ess)
        self.times["components"] += time.perf_counter() - t1
        if self.cfg.check:
            self.check_iterate()

    # ------------------------------------------------------------- aux instance
    def _aux_instance(self, ess_set, V_cov, H):
        G = self.G
        nodes = set(V_cov)
        for e in ess_set:
            nodes.add(G.tail[e])
            nodes.add(G.head[e])
        for i in list(nodes):
            nodes.add(self.root[i])
        order = sorted(nodes)
        idx = {v: k for k, v in enumerate(order)}
        aux = FlowInstance(len(order), idx[self.s], idx[self.t])
        back = []
        for p in sorted({e & ~1 for e in ess_set}):
            c0 = self.r[p] if p in ess_set else ZERO
            c1 = self.r[p + 1] if p + 1 in ess_set else ZERO
            aux.add_pair(idx[G.tail[p]], idx[G.head[p]], c0, c1)
            back.append(("ess", p))
        for a, b in H:
            aux.add_pair(idx[a], idx[b], INF, ZERO)
            back.append(("ext", (a, b)))
        for i in order:
            if self.root[i] != i:
                aux.add_pair(idx[i], idx[self.root[i]], INF, INF)
                back.append(("short", i))
        return aux, back

    def _apply_aux_flow(self, back, y):
        H_arcs = []
        for k, (what, key) in enumerate(back):
            y0, y1 = y[2 * k], y[2 * k + 1]
            if what == "ess":
                self.send(key, y0)
                self.send(key + 1, y1)
            elif what == "ext":
                if y1:
                    raise EngineFailure("flow on the zero-capacity side of an extension arc")
                if y0 > 0:
                    a, b = key
                    e = self._new_pair(a, b, INF, ZERO, "ext")
                    self.f[e] = y0
                    H_arcs.append(e)
            else:
                e = self.shortcut[key]
                self.send(e, y0)
                self.send(e ^ 1, y1)
        return H_arcs

    def _kill(self, e):
        G = self.G
        for x in (e, e ^ 1):
            self.kind[x] = "dead"
            self.abundant[x] = False
            G.cap[x] = ZERO
            self.r[x] = ZERO
        G.adj[G.tail[e]].remove(e)
        G.adj[G.head[e]].remove(e ^ 1)

    # ------------------------------------------------------------ flow updates
    def saturate(self, e):
        G, s, t = self.G, self.s, self.t
        d = self.res(e)
        if d is INF:
            raise EngineFailure("cannot saturate infinite arc %d" % e)
        if d == 0:
            return
        self.f[e] = G.cap[e]
        self.f[e ^ 1] = ZERO
        i, j = G.tail[e], G.head[e]
        p, q = self.root[i], self.root[j]
        if p != i:
            self.send(self.shortcut[i] ^ 1, d)
        if q != j:
            self.send(self.shortcut[j], d)
        if p not in (s, t):
            sp = self.norm.sp_arc[p]
            a = min(d, self.res(sp))
            self.send(sp, a)
            self.send(self.norm.it_arc[p] ^ 1, d - a)
        if q not in (s, t):
            qt = self.norm.it_arc[q]
            a = min(d, self.res(qt))
            self.send(qt, a)
            self.send(self.norm.sp_arc[q] ^ 1, d - a)

    def post_process(self, delta, arcs):
        for e in arcs:
            ur = self.res(e ^ 1)
            if 0 < ur < 2 * delta and self.res(e) > 0:
                self.saturate(e ^ 1)
                self.r[e] = min(self.res(e), 3 * delta)
                self.r[e ^ 1] = ZERO
            else:
                self.r[e] = min(self.res(e), delta)

    # -------------------------------------------------------------- components
    def _tc_add(self, arcs):
        G = self.G
        pairs = [(G.tail[e], G.head[e]) for e in arcs]
        first = {}
        for e, pr in zip(arcs, pairs):
            first.setdefault(pr, e)
        for pr in self.itco.tc_add(pairs):
            self.owner[pr] = first[pr]

    def _merge_components(self):
        G, s, t = self.G, self.s, self.t
        old_root = list(self.root)
        changed = True
        while changed:
            changed = False
            for e in range(G.m):
                if not self.abundant[e] or self.kind[e] in ("dead", "short"):
                    continue
                a, b = G.tail[e], G.head[e]
                ra, rb = self.root[a], self.root[b]
                if ra == rb:
                    continue
                free = self.abundant[e ^ 1]
                if (ra == s and rb == t) or (free and ra == t and rb == s):
                    raise EngineFailure("abundant path from source to sink")
                if ra == s:
                    self._merge(s, rb, e)
                elif rb == t:
                    self._merge(t, ra, e)
                elif free and rb == s:
                    self._merge(s, ra, e ^ 1)
                elif free and ra == t:
                    self._merge(t, rb, e ^ 1)
                elif free:
                    big, small = (ra, rb) if (len(self.members[ra]), -ra) >= (len(self.members[rb]), -rb) else (rb, ra)
                    self._merge(big, small, e)
                else:
                    continue
                changed = True
        removed = sorted(k for k in range(self.n) if old_root[k] == k and self.root[k] != k)
        moved = defaultdict(list)
        for i in range(self.n):
            if self.root[i] != old_root[i]:
                moved[old_root[i]].append(i)
        for k in removed:
            self.remove_root(k, moved[k])
        if removed:
            self._refresh_boundary_r()

    def _merge(self, j, k, arc):
        for i in self.members[k]:
            self.root[i] = j
        self.members[j].extend(self.members.pop(k))
        self.tree_arcs[j].extend(self.tree_arcs.pop(k))
        self.tree_arcs[j].append(arc)

    def remove_root(self, k, moved):
        j = self.root[k]
        for i in moved:
            e = self._new_pair(i, j, INF, INF, "short")
            self.abundant[e] = self.abundant[e ^ 1] = True
            self.r[e] = self.r[e ^ 1] = INF
            self.shortcut[i] = e
            self.F_s.append(e)
        sk, kt = self.norm.sp_arc[k], self.norm.it_arc[k]
        two_eps = 2 * self.eps
        if 0 < self.res(sk) < two_eps:
            self.saturate(sk)
        if 0 < self.res(kt) < two_eps:
            self.saturate(kt)
        for e in (sk, sk ^ 1, kt, kt ^ 1):
            self.r[e] = min(self.res(e), self.eps)

    def _refresh_boundary_r(self):
        for i, e in self.norm.sp_arc.items():
            if self.root[i] == i:
                for x in (e, e ^ 1, self.norm.it_arc[i], self.norm.it_arc[i] ^ 1):
                    self.r[x] = self.res(x)

    def _order_values(self) -> dict:
        G = self.G
        threshold = self.gamma * self.eps
        x = {v: ZERO for v in range(self.n)}
        for e in range(G.m):
            if self.kind[e] == "dead":
                continue
            a, b = G.tail[e], G.head[e]
            ra, rb = self.root[a], self.root[b]
            if ra == rb:
                continue
            c = self.res(e)
            if c < threshold:
                for r in (ra, rb):
                    if c > x[r]:
                        x[r] = c
        return x

    def _reorder(self, R_ess):
        x = self._order_values()
        changed = {v for v in range(self.n) if self.itco.x[v] != x[v]}
        S = sorted(changed | set(R_ess))
        if S:
            self.itco.tc_reorder(S, {v: x[v] for v in S})

    # --------------------------------------------------------------- rerouting
    def reroute_shortcuts(self):
        G, s, t = self.G, self.s, self.t
        d = [ZERO] * self.n
        for e in self.F_s:
            x = self.f[e] - self.f[e ^ 1]
            d[G.tail[e]] += x
            d[G.head[e]] -= x
            self.f[e] = self.f[e ^ 1] = ZERO
        for k, arcs in self.tree_arcs.items():
            adj = defaultdict(list)
            for e in arcs:
                adj[G.tail[e]].append(e)
                adj[G.head[e]].append(e)
            parent = {k: None}
            order = [k]
            for v in order:
                for e in adj[v]:
                    w = G.head[e] if G.tail[e] == v else G.tail[e]
                    if w not in parent:
                        parent[w] = e
                        order.append(w)
            for i in reversed(order[1:]):
                e = parent[i]
                p = G.head[e] if G.tail[e] == i else G.tail[e]
                if d[i] > 0:
                    if k == s:
                        self.send(self.norm.sp_arc[i] ^ 1, d[i])
                    else:
                        self.send(self._tree_arc(e, i, p), d[i])
                        d[p] += d[i]
                elif d[i] < 0:
                    if k == t:
                        self.send(self.norm.it_arc[i] ^ 1, -d[i])
                    else:
                        self.send(self._tree_arc(e, p, i), -d[i])
                        d[p] += d[i]
                d[i] = ZERO
            if k not in (s, t) and d[k] != 0:
                raise EngineFailure("shortcut imbalance %s left at root %d" % (d[k], k))

    def _tree_arc(self, e, a, b):
        x = e if self.G.tail[e] == a else e ^ 1
        if not self.abundant[x]:
            raise EngineFailure("tree arc %d used against its abundant direction" % x)
        return x

    def reroute_extensions(self):
        G = self.G
        values = defaultdict(Fraction)
        for e in self.F_e:
            x = self.f[e] - self.f[e ^ 1]
            if x:
                values[(G.tail[e], G.head[e])] += x
            self.f[e] = self.f[e ^ 1] = ZERO
        if not values:
            return
        L = self.itco.tc_wit_list()
        for pr in values:
            if pr not in L:
                raise EngineFailure("extension arc %s missing from the witness list" % (pr,))
        R = {pr for pr, e in self.owner.items() if self.kind[e] == "ext"}
        g = wit_route(L, values, R)
        for pr, x in sorted(g.items()):
            e = self.owner.get(pr)
            if e is None:
                raise EngineFailure("routed value on unowned pair %s" % (pr,))
            if x > 0:
                self.send(e, x)
            else:
                self.send(e ^ 1, -x)

    def finish(self) -> list:
        G = self.G
        for e in range(self.m0, G.m):
            if self.f[e]:
                raise EngineFailure("flow left on added arc %d" % e)
        base = self.norm.inst
        f = self.f[: self.m0]
        check_feasible(base, f)
        return to_acyclic(base, f)

    # ------------------------------------------------------------------ checks
    def _count_gaps(self, cross, res):
        eps, gamma = self.eps, self.gamma
        slack = 2 * eps / gamma ** 2
        for e in cross:
            if e >= self.m0 or e % 2 or self.is_boundary(e):
                continue
            r0, r1 = res[e], res[e ^ 1]
            if r0 >= self.r[e] + slack and r1 >= self.r[e ^ 1] + slack and r0 is not INF and r1 is not INF:
                self.gap_iterations[e >> 1] += 1
                if self.gap_iterations[e >> 1] > 1:
                    raise CountingFailure("pair %d is a gap arc in more than one iteration" % (e >> 1))

    def _count_regular(self):
        G, eps, gamma = self.G, self.eps, self.gamma
        lo, hi = eps / gamma ** 6, gamma * eps
        for p in range(0, self.m0, 2):
            c0, c1 = G.cap[p], G.cap[p + 1]
            if c0 is INF or c1 is INF:
                continue
            if lo <= c0 + c1 < hi:
                self.regular_run[p >> 1] += 1
                if self.regular_run[p >> 1] > 3:
                    raise CountingFailure("pair %d regular for more than 3 iterations" % (p >> 1))
            else:
                self.regular_run[p >> 1] = 0

    def components_from_scratch(self):
        """Partition recomputed from current residuals (for checking)."""
        G, s, t = self.G, self.s, self.t
        thr = self.gamma * self.eps
        abd = [self.kind[e] != "dead" and self.res(e) >= thr for e in range(G.m)]
        Ps = _bfs(G, s, abd, forward=True)
        Pt = _bfs(G, t, abd, forward=False)
        comp = {}
        for v in Ps:
            comp[v] = s
        for v in Pt:
            if v in comp:
                raise EngineFailure("node %d abundant-reachable from s and reaching t" % v)
            comp[v] = t
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in range(0, G.m):
            if abd[e] and abd[e ^ 1]:
                a, b = G.tail[e], G.head[e]
                if a not in comp and b not in comp:
                    parent[find(a)] = find(b)
        for v in range(self.n):
            if v not in comp:
                comp[v] = ("c", find(v))
        return comp, abd

    def check_iterate(self):
        """Structural conditions of a valid iterate; oracle-backed (A)/(B) when enabled."""
        G, s, t, eps = self.G, self.s, self.t, self.eps
        self.checks_run += 1
        try:
            check_feasible(G, self.f)
        except FlowError as exc:
            raise EngineFailure("(A) infeasible flow: %s" % exc) from exc
        res = [self.res(e) for e in range(G.m)]
        for e in range(G.m):
            if not (0 <= self.r[e] <= res[e]):
                raise EngineFailure("(B) r out of range on arc %d: %s vs %s" % (e, self.r[e], res[e]))
        comp, abd = self.components_from_scratch()
        for e in range(G.m):
            if self.abundant[e] and not abd[e]:
                raise EngineFailure("abundant arc %d lost abundance" % e)
            if abd[e] and not self.abundant[e]:
                raise EngineFailure("arc %d abundant but not recorded" % e)
        groups = defaultdict(set)
        for v, c in comp.items():
            groups[c].add(v)
        for members in groups.values():
            roots = {self.root[v] for v in members}
            if len(roots) != 1:
                raise EngineFailure("(E) component %s has roots %s" % (sorted(members)[:6], roots))
            (r,) = roots
            if r not in members or self.root[r] != r:
                raise EngineFailure("(E) root %d outside its component" % r)
            if len(self.members.get(r, ())) != len(members):
                raise EngineFailure("(E) component sizes disagree at root %d" % r)
        if self.root[s] != s or self.root[t] != t:
            raise EngineFailure("(E) s or t is not a root")
        slack = 2 * eps / self.gamma ** 2
        for e in range(G.m):
            if self.kind[e] == "dead" or self.root[G.tail[e]] == self.root[G.head[e]]:
                continue
            if self.is_boundary(e) or res[e] == 0 or res[e ^ 1] == 0:
                continue
            if res[e] >= self.r[e] + slack and res[e ^ 1] >= self.r[e ^ 1] + slack:
                continue
            raise EngineFailure("(C) cross arc %d is neither saturated nor a gap arc" % e)
        for i, e in self.norm.sp_arc.items():
            if self.root[i] == i and res[e] != 0 and res[self.norm.it_arc[i]] != 0:
                raise EngineFailure("(D) root %d has residual on both boundary arcs" % i)
        for e in range(0, self.m0, 2):
            if (e >> 1) in self.bpair or G.tail[e] in (s, t) or G.head[e] in (s, t):
                continue
            for x in (e, e ^ 1):
                if G.cap[x] is INF and res[x ^ 1] != 0:
                    raise EngineFailure("interior infinite arc %d has residual on its reverse" % x)
        if len(self.F_e) > 2 * self.n:
            raise CountingFailure("%d extension arcs exceed 2n" % len(self.F_e))
        if len(self.F_s) > self.n * math.log2(max(self.n, 2)):
            raise CountingFailure("%d shortcut arcs exceed n log n" % len(self.F_s))
        if self.cfg.oracle_check and self.n <= self.cfg.oracle_limit:
            nu_res = max_flow_value(G, res)
            if nu_res > eps:
                raise EngineFailure("(A) residual value %s exceeds eps %s" % (nu_res, eps))
            nu_r = max_flow_value(G, self.r)
            if nu_r != nu_res:
                raise EngineFailure("(B) safe capacities lose value: %s vs %s" % (nu_r, nu_res))

    def check_successor(self, eps, new_eps, old_f, old_r, m_start):
        gamma = self.gamma
        if new_eps > eps / gamma ** 3:
            raise EngineFailure("eps shrank only from %s to %s" % (eps, new_eps))
        slack = eps / gamma ** 3
        for e in range(m_start):
            if self.kind[e] == "dead":
                continue
            change = (self.f[e] - self.f[e ^ 1]) - (old_f[e] - old_f[e ^ 1])
            if change > min(old_r[e], eps) + slack:
                raise EngineFailure("(B') arc %d moved by %s (r=%s, eps=%s)" % (e, change, old_r[e], eps))
        for e in range(m_start, self.G.m):
            if self.kind[e] == "ext" and e % 2 == 0 and self.f[e] > 3 * eps:
                raise EngineFailure("new extension arc %d carries %s > 3 eps" % (e, self.f[e]))

    # ----------------------------------------------------------------- metrics
    def metrics(self) -> dict:
        st = self.itco.stats if self.itco else {}
        log = self.iter_log
        return {
            "iterations": len(log),
            "m_c": self.m_c,
            "ess_total": sum(r["ess"] for r in log),
            "ess_per_mc": (sum(r["ess"] for r in log) / self.m_c) if self.m_c else 0.0,
            "per_iteration": [
                {"ess": r["ess"], "R_ess": r["R_ess"], "cover_arcs": r["cover_arcs"],
                 "cover_nodes": r["cover_nodes"], "aux_arcs": r["aux_arcs"], "tc_arcs": r["tc_arcs"]}
                for r in log
            ],
            "F_e": len(self.F_e),
            "F_s": len(self.F_s),
            "tc_add_total": st.get("adds", 0),
            "tc_add_arcs": st.get("arcs", 0),
            "tc_add_implied": st.get("implied", 0),
            "cover_arcs_total": st.get("cover_arcs", 0),
            "cover_nodes_total": st.get("cover_nodes", 0),
            "cover_query_nodes": st.get("query_nodes", 0),
            "itco_work": st.get("work", 0),
            "witness_entries": len(self.itco.L) if self.itco else 0,
            "max_gap_iterations": max(self.gap_iterations.values(), default=0),
            "checks_run": self.checks_run,
            "phase_seconds": {k: round(v, 6) for k, v in sorted(self.times.items())},
            "backend": self.cfg.itco,
        }


def _bfs(G, src, abd, forward=True):
    seen = {src}
    q = deque([src])
    while q:
        v = q.popleft()
        for e in G.adj[v]:
            x = e if forward else e ^ 1   # e leaves v; e ^ 1 enters v
            if abd[x]:
                w = G.head[e]
                if w not in seen:
                    seen.add(w)
                    q.append(w)
    return seen


def solve(instance: FlowInstance, config: EngineConfig | None = None) -> SolveResult:
    """Maximum flow on ``instance`` with a certifying minimum cut."""
    t0 = time.perf_counter()
    stripped, keep, fixed = strip_source_sink_arcs(instance)
    norm = normalize_input(stripped)
    engine = Engine(norm, config)
    g = engine.run()
    partial = norm.restrict(g)
    flow = [ZERO] * instance.m
    for e, k in keep.items():
        flow[e] = partial[k]
    for e, x in fixed.items():
        flow[e] = x
    check_feasible(instance, flow)
    value = flow_value(instance, flow)
    cut = min_cut_from_flow(instance, flow)
    if cut.capacity != value:
        raise EngineFailure("cut %s differs from value %s" % (cut.capacity, value))
    metrics = engine.metrics()
    metrics.update({"n": instance.n, "m": instance.m // 2, "value": value, "cut_value": cut.capacity,
                    "total_seconds": round(time.perf_counter() - t0, 6)})
    return SolveResult(flow, value, cut, metrics)
