"""Symmetric flow instances, residual arithmetic, decomposition and cuts.

Arcs are created in pairs: arc ``e`` and its reverse ``e ^ 1``.  A flow is a
plain list of :class:`~fractions.Fraction` indexed by arc.  Both members of a
pair may carry flow; the residual capacity of ``e`` is
``u[e] - f[e] + f[e ^ 1]``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from .values import INF, as_value

ZERO = Fraction(0)


class FlowError(Exception):
    """Base class for flow-model errors."""


class InstanceError(FlowError):
    """Malformed instance (self-loop, infinite pair, s-t arc, bad node)."""


class UnboundedError(FlowError):
    """An s-t path of infinite capacity exists."""


class CapacityError(FlowError):
    """A flow update would exceed a residual capacity."""


class NotMaximumError(FlowError):
    """The sink is still reachable in the residual graph."""


def rev(e: int) -> int:
    return e ^ 1


class FlowInstance:
    """Directed multigraph on nodes ``0..n-1`` with paired reverse arcs."""

    def __init__(self, n: int, s: int, t: int):
        if not (0 <= s < n and 0 <= t < n) or s == t:
            raise InstanceError("source and sink must be distinct nodes in range")
        self.n = n
        self.s = s
        self.t = t
        self.tail: list[int] = []
        self.head: list[int] = []
        self.cap: list = []
        self.adj: list[list[int]] = [[] for _ in range(n)]

    @property
    def m(self) -> int:
        return len(self.tail)

    def add_pair(self, a: int, b: int, cap_ab=0, cap_ba=0) -> int:
        """Add arc a->b and its reverse; return the index of a->b."""
        if not (0 <= a < self.n and 0 <= b < self.n):
            raise InstanceError("arc endpoint out of range: (%d, %d)" % (a, b))
        if a == b:
            raise InstanceError("self-loop at node %d" % a)
        cap_ab, cap_ba = as_value(cap_ab), as_value(cap_ba)
        if cap_ab is not INF and cap_ab < 0 or cap_ba is not INF and cap_ba < 0:
            raise InstanceError("negative capacity")
        e = len(self.tail)
        self.tail += [a, b]
        self.head += [b, a]
        self.cap += [cap_ab, cap_ba]
        self.adj[a].append(e)
        self.adj[b].append(e + 1)
        return e

    def copy(self) -> "FlowInstance":
        other = FlowInstance(self.n, self.s, self.t)
        other.tail = list(self.tail)
        other.head = list(self.head)
        other.cap = list(self.cap)
        other.adj = [list(a) for a in self.adj]
        return other

    def with_caps(self, caps) -> "FlowInstance":
        """Same graph, different capacity vector."""
        other = self.copy()
        other.cap = list(caps)
        return other

    def arc(self, e: int) -> tuple[int, int]:
        return self.tail[e], self.head[e]

    def zero_flow(self) -> list:
        return [ZERO] * self.m

    def validate(self, allow_st_arcs: bool = False) -> None:
        for p in range(0, self.m, 2):
            if self.cap[p] is INF and self.cap[p + 1] is INF:
                raise InstanceError("arc pair %d has infinite capacity in both directions" % (p // 2))
            if not allow_st_arcs and {self.tail[p], self.head[p]} == {self.s, self.t}:
                raise InstanceError("arc pair %d joins the source and the sink" % (p // 2))

    def __repr__(self):
        return "FlowInstance(n=%d, m=%d, s=%d, t=%d)" % (self.n, self.m, self.s, self.t)


def residual(inst: FlowInstance, f, e: int):
    c = inst.cap[e]
    if c is INF:
        return INF
    return c - f[e] + f[e ^ 1]


def residuals(inst: FlowInstance, f) -> list:
    return [residual(inst, f, e) for e in range(inst.m)]


def send_flow(inst: FlowInstance, f, e: int, alpha) -> None:
    """Raise the net flow on ``e`` by ``alpha``, cancelling reverse flow first."""
    if alpha == 0:
        return
    if alpha < 0:
        raise CapacityError("negative amount %s on arc %d" % (alpha, e))
    if alpha > residual(inst, f, e):
        raise CapacityError("amount %s exceeds residual %s on arc %d" % (alpha, residual(inst, f, e), e))
    r = e ^ 1
    back = min(f[r], alpha)
    f[r] -= back
    f[e] += alpha - back


def excess(inst: FlowInstance, f, v: int):
    """Inflow minus outflow at ``v``."""
    total = ZERO
    for e in inst.adj[v]:
        total += f[e ^ 1] - f[e]
    return total


def flow_value(inst: FlowInstance, f):
    return -excess(inst, f, inst.s)


def check_feasible(inst: FlowInstance, f) -> None:
    """Raise FlowError unless 0 <= f <= u and interior nodes conserve flow."""
    if len(f) != inst.m:
        raise FlowError("flow has %d entries, instance has %d arcs" % (len(f), inst.m))
    for e in range(inst.m):
        if f[e] < 0 or f[e] > inst.cap[e]:
            raise CapacityError("arc %d carries %s outside [0, %s]" % (e, f[e], inst.cap[e]))
    for v in range(inst.n):
        if v != inst.s and v != inst.t and excess(inst, f, v) != 0:
            raise FlowError("node %d has excess %s" % (v, excess(inst, f, v)))


def is_feasible(inst: FlowInstance, f) -> bool:
    try:
        check_feasible(inst, f)
    except FlowError:
        return False
    return True


def extend_instance(inst: FlowInstance, one_way=(), two_way=()) -> tuple[FlowInstance, list[int], list[int]]:
    """Return a copy with infinite arcs added.

    ``one_way`` arcs get capacity inf with a zero-capacity reverse; ``two_way``
    arcs are infinite in both directions.  Existing arc indices are unchanged.
    """
    out = inst.copy()
    ones = [out.add_pair(a, b, INF, 0) for a, b in one_way]
    twos = [out.add_pair(a, b, INF, INF) for a, b in two_way]
    return out, ones, twos


def canonical(inst: FlowInstance, f) -> list:
    """Cancel opposite flows on each pair so at most one arc per pair is positive."""
    g = list(f)
    for p in range(0, inst.m, 2):
        d = min(g[p], g[p + 1])
        if d:
            g[p] -= d
            g[p + 1] -= d
    return g


@dataclass
class Decomposition:
    paths: list = field(default_factory=list)   # (arc list, amount), source to sink or sink to source
    cycles: list = field(default_factory=list)  # (arc list, amount)

    def resum(self, m: int) -> list:
        g = [ZERO] * m
        for arcs, amount in self.paths + self.cycles:
            for e in arcs:
                g[e] += amount
        return g


def decompose(inst: FlowInstance, f) -> Decomposition:
    """Greedy path/cycle decomposition; every piece zeroes at least one arc."""
    rem = list(f)
    ptr = [0] * inst.n
    out = Decomposition()

    def next_arc(v):
        adj = inst.adj[v]
        while ptr[v] < len(adj) and rem[adj[ptr[v]]] == 0:
            ptr[v] += 1
        return adj[ptr[v]] if ptr[v] < len(adj) else None

    def extract(arcs, is_cycle):
        amount = min(rem[e] for e in arcs)
        for e in arcs:
            rem[e] -= amount
        (out.cycles if is_cycle else out.paths).append((arcs, amount))

    starts = [inst.s, inst.t] + [v for v in range(inst.n) if v not in (inst.s, inst.t)]
    for start in starts:
        while next_arc(start) is not None:
            pos = {start: 0}
            arcs = []
            v = start
            while True:
                e = next_arc(v)
                if e is None:
                    # stuck: only possible at a terminal
                    extract(arcs, False)
                    break
                arcs.append(e)
                v = inst.head[e]
                if v in pos:
                    i = pos[v]
                    extract(arcs[i:], True)
                    break
                if v in (inst.s, inst.t) and v != start:
                    extract(arcs, False)
                    break
                pos[v] = len(arcs)
    return out


def _find_support_cycle(inst: FlowInstance, f):
    """Return the arcs of a directed cycle in supp(f), or None."""
    color = [0] * inst.n
    for root in range(inst.n):
        if color[root]:
            continue
        stack = [(root, iter(inst.adj[root]))]
        via = {root: None}
        color[root] = 1
        path_arcs = []
        while stack:
            v, it = stack[-1]
            advanced = False
            for e in it:
                if f[e] <= 0:
                    continue
                w = inst.head[e]
                if color[w] == 1:
                    # back arc closes a cycle through the current DFS path
                    cyc = [e]
                    k = len(path_arcs) - 1
                    while inst.tail[cyc[-1]] != w:
                        cyc.append(path_arcs[k])
                        k -= 1
                    cyc.reverse()
                    return cyc
                if color[w] == 0:
                    color[w] = 1
                    path_arcs.append(e)
                    stack.append((w, iter(inst.adj[w])))
                    advanced = True
                    break
            if not advanced:
                color[v] = 2
                stack.pop()
                if path_arcs and stack:
                    path_arcs.pop()
    return None


def to_acyclic(inst: FlowInstance, f) -> list:
    """Cancel every directed cycle in the support; divergences are preserved."""
    g = canonical(inst, f)
    while True:
        cyc = _find_support_cycle(inst, g)
        if cyc is None:
            return g
        amount = min(g[e] for e in cyc)
        for e in cyc:
            g[e] -= amount


def _strict(g, caps, e):
    return 0 < g[e] < caps[e]


def _forest_path(inst, tree_adj, src, dst):
    """Undirected path in a forest as (arc, traversed-forward) steps, or None."""
    prev = {src: None}
    q = deque([src])
    while q:
        v = q.popleft()
        if v == dst:
            break
        for e in tree_adj[v]:
            w = inst.head[e] if inst.tail[e] == v else inst.tail[e]
            if w not in prev:
                prev[w] = (e, v)
                q.append(w)
    if dst not in prev:
        return None
    steps = []
    v = dst
    while prev[v] is not None:
        e, u = prev[v]
        steps.append((e, inst.tail[e] == u))
        v = u
    steps.reverse()
    return steps


def _push_steps(g, caps, steps):
    amount = INF
    for e, fwd in steps:
        room = caps[e] - g[e] if fwd else g[e]
        amount = min(amount, room)
    if amount is INF:
        raise UnboundedError("infinite augmenting structure while pivoting")
    for e, fwd in steps:
        g[e] = g[e] + amount if fwd else g[e] - amount
    return amount


class _Forest:
    """Undirected forest over arc indices with a union-find rebuilt after deletions."""

    def __init__(self, inst):
        self.inst = inst
        self.adj = [set() for _ in range(inst.n)]
        self.parent = list(range(inst.n))

    def find(self, x):
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def add(self, e):
        a, b = self.inst.tail[e], self.inst.head[e]
        self.adj[a].add(e)
        self.adj[b].add(e)
        self.parent[self.find(a)] = self.find(b)

    def drop(self, e):
        self.adj[self.inst.tail[e]].discard(e)
        self.adj[self.inst.head[e]].discard(e)

    def rebuild(self):
        self.parent = list(range(self.inst.n))
        for v, arcs in enumerate(self.adj):
            for e in arcs:
                if self.inst.tail[e] == v:
                    self.parent[self.find(v)] = self.find(self.inst.head[e])


def to_acyclic_basic(inst: FlowInstance, f, caps=None) -> list:
    """Convert a feasible flow into an acyclic basic flow of at least the same value.

    After cycle cancellation, interior arcs (strictly between their bounds)
    are inserted one at a time into a forest; an arc closing an undirected
    cycle triggers a push around that cycle, which drives some arc of it to
    a bound.  Any undirected s-t path left in the forest is then augmented.
    The support only shrinks.
    """
    caps = inst.cap if caps is None else caps
    g = to_acyclic(inst, f)
    forest = _Forest(inst)
    for e in range(inst.m):
        if not _strict(g, caps, e):
            continue
        a, b = inst.tail[e], inst.head[e]
        if forest.find(a) != forest.find(b):
            forest.add(e)
            continue
        steps = _forest_path(inst, forest.adj, b, a) + [(e, True)]
        _push_steps(g, caps, steps)
        for x, _ in steps[:-1]:
            if not _strict(g, caps, x):
                forest.drop(x)
        forest.rebuild()
        if _strict(g, caps, e):
            forest.add(e)
    while True:
        steps = _forest_path(inst, forest.adj, inst.s, inst.t)
        if steps is None:
            return g
        _push_steps(g, caps, steps)
        for x, _ in steps:
            if not _strict(g, caps, x):
                forest.drop(x)


def is_acyclic(inst: FlowInstance, f) -> bool:
    return _find_support_cycle(inst, f) is None


def basic_acyclic_violations(inst: FlowInstance, f, caps=None, before=None) -> list[str]:
    """Names of the basic acyclic flow properties that ``f`` fails.

    Checked: acyclic support; no flow into s or out of t; strictly interior
    arcs form a forest separating s from t; and, when ``before`` is given,
    support inside the support of ``before`` with value at least its value.
    """
    caps = inst.cap if caps is None else caps
    bad = []
    if not is_acyclic(inst, f):
        bad.append("acyclic")
    if any(f[e] for e in range(inst.m) if inst.head[e] == inst.s or inst.tail[e] == inst.t):
        bad.append("no flow into s or out of t")
    forest = _Forest(inst)
    ok = True
    for e in range(inst.m):
        if _strict(f, caps, e):
            if forest.find(inst.tail[e]) == forest.find(inst.head[e]):
                ok = False
                break
            forest.add(e)
    if not ok or forest.find(inst.s) == forest.find(inst.t):
        bad.append("interior forest")
    if before is not None:
        if any(f[e] > 0 and before[e] <= 0 for e in range(inst.m)) or flow_value(inst, f) < flow_value(inst, before):
            bad.append("support and value")
    return bad


@dataclass
class Cut:
    source_side: frozenset
    capacity: object

    def recompute(self, inst: FlowInstance):
        return cut_capacity(inst, self.source_side)


def cut_capacity(inst: FlowInstance, side) -> object:
    total = ZERO
    for e in range(inst.m):
        if inst.tail[e] in side and inst.head[e] not in side:
            total = total + inst.cap[e]
    return total


def residual_reachable(inst: FlowInstance, f, src: int) -> set:
    seen = {src}
    q = deque([src])
    while q:
        v = q.popleft()
        for e in inst.adj[v]:
            w = inst.head[e]
            if w not in seen and residual(inst, f, e) > 0:
                seen.add(w)
                q.append(w)
    return seen


def min_cut_from_flow(inst: FlowInstance, f) -> Cut:
    side = residual_reachable(inst, f, inst.s)
    if inst.t in side:
        raise NotMaximumError("sink reachable in the residual graph")
    return Cut(frozenset(side), cut_capacity(inst, side))


def infinite_reachable(inst: FlowInstance, src: int) -> set:
    seen = {src}
    q = deque([src])
    while q:
        v = q.popleft()
        for e in inst.adj[v]:
            w = inst.head[e]
            if w not in seen and inst.cap[e] is INF:
                seen.add(w)
                q.append(w)
    return seen


def is_bounded(inst: FlowInstance) -> bool:
    return inst.t not in infinite_reachable(inst, inst.s)


@dataclass
class NormalizedInstance:
    """Instance with canonical boundary pairs plus the map back to input arcs.

    Every interior node ``i`` gets exactly one pair ``(s,i)/(i,s)`` and one
    pair ``(i,t)/(t,i)``, with ``(i,s)`` and ``(t,i)`` infinite.  Finite input
    capacities on parallel source and sink arcs are summed into these pairs;
    infinite ones become separate pairs.
    """

    inst: FlowInstance
    source: FlowInstance
    origin: list            # per input arc: ("arc", k) | ("sp", i) | ("it", i) | ("zero",)
    sp_arc: dict            # i -> arc index of (s, i)
    it_arc: dict            # i -> arc index of (i, t)
    groups: dict = field(default_factory=dict)  # ("sp"|"it", i) -> input arcs, in order

    def restrict(self, g) -> list:
        """Map a normalized flow to the input arcs.

        Flow on a canonical boundary arc is split greedily over the parallel
        input arcs it summarizes; infinite-side arcs must carry none.
        """
        src = self.source
        out = [ZERO] * src.m
        for e, o in enumerate(self.origin):
            if o[0] == "arc":
                out[e] = g[o[1]]
        for (kind, i), members in self.groups.items():
            arc = self.sp_arc[i] if kind == "sp" else self.it_arc[i]
            left = g[arc]
            for e in members:
                take = min(left, src.cap[e])
                out[e] = take
                left -= take
            if left:
                raise FlowError("boundary flow exceeds the summed input capacity")
        for i in self.sp_arc:
            if g[self.sp_arc[i] ^ 1] or g[self.it_arc[i] ^ 1]:
                raise FlowError("flow on an added infinite arc at node %d; clean the flow first" % i)
        return out


def normalize_input(inst: FlowInstance) -> NormalizedInstance:
    inst.validate()
    if not is_bounded(inst):
        raise UnboundedError("the sink is reachable from the source along infinite arcs")
    s, t = inst.s, inst.t
    out = FlowInstance(inst.n, s, t)
    origin: list = [("zero",)] * inst.m
    sp_sum = {i: ZERO for i in range(inst.n) if i not in (s, t)}
    it_sum = dict(sp_sum)
    groups: dict = {}
    extra = []
    for p in range(0, inst.m, 2):
        a, b = inst.tail[p], inst.head[p]
        if s not in (a, b) and t not in (a, b):
            k = out.add_pair(a, b, inst.cap[p], inst.cap[p + 1])
            origin[p] = ("arc", k)
            origin[p + 1] = ("arc", k + 1)
            continue
        for e in (p, p + 1):
            x, y = inst.tail[e], inst.head[e]
            c = inst.cap[e]
            if x == s or y == t:
                i = y if x == s else x
                kind = "sp" if x == s else "it"
                if c is INF:
                    extra.append((e, x, y))
                elif c > 0:
                    (sp_sum if kind == "sp" else it_sum)[i] += c
                    groups.setdefault((kind, i), []).append(e)
    sp_arc, it_arc = {}, {}
    for i in sorted(sp_sum):
        sp_arc[i] = out.add_pair(s, i, sp_sum[i], INF)
        it_arc[i] = out.add_pair(i, t, it_sum[i], INF)
    for e, x, y in extra:
        origin[e] = ("arc", out.add_pair(x, y, INF, 0))
    for key, members in groups.items():
        for e in members:
            origin[e] = key
    return NormalizedInstance(out, inst, origin, sp_arc, it_arc, groups)


def strip_source_sink_arcs(inst: FlowInstance):
    """Remove arcs joining s and t.

    Returns the reduced instance, the map from kept input arcs to reduced
    arcs, and the saturated s->t flow per removed arc.  Every maximum flow
    saturates s->t arcs and an s->t arc of infinite capacity makes the
    instance unbounded.
    """
    s, t = inst.s, inst.t
    out = FlowInstance(inst.n, s, t)
    keep = {}
    fixed = {}
    for p in range(0, inst.m, 2):
        a, b = inst.tail[p], inst.head[p]
        if {a, b} == {s, t}:
            for e in (p, p + 1):
                if inst.tail[e] == s:
                    if inst.cap[e] is INF:
                        raise UnboundedError("infinite source-sink arc")
                    fixed[e] = inst.cap[e]
                else:
                    fixed[e] = ZERO
            continue
        k = out.add_pair(a, b, inst.cap[p], inst.cap[p + 1])
        keep[p] = k
        keep[p + 1] = k + 1
    return out, keep, fixed
