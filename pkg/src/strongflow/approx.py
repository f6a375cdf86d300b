"""Approximate maximum flow through capacity rounding and an exact integer solver.

Capacities are scaled by ``delta = u_bar / (m^2 M)`` where ``u_bar`` is the
bottleneck of a widest s-t path, rounded down, capped at ``m^3 M``, solved
exactly with Dinic's algorithm, scaled back and made acyclic and basic.  The
returned certificate arc bounds the remaining residual value.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .flowcore import FlowInstance, UnboundedError, to_acyclic_basic
from .values import INF


@dataclass
class ApproxResult:
    flow: list
    cert_arc: int | None   # None when no s-t path has positive residual
    M: object


def max_cap_path(inst: FlowInstance, caps):
    """Widest s-t path: ``(bottleneck, witness arc)``; ``(0, None)`` if disconnected.

    The witness is the lowest-index arc of minimum capacity on the path found.
    """
    s, t = inst.s, inst.t
    best = {s: INF}
    via = {s: None}
    done = set()
    heap = [(_neg_key(INF), 0, s)]
    tick = 0
    while heap:
        _, _, v = heapq.heappop(heap)
        if v in done:
            continue
        done.add(v)
        if v == t:
            break
        for e in inst.adj[v]:
            c = caps[e]
            if c <= 0:
                continue
            w = inst.head[e]
            width = min(best[v], c)
            if w not in done and (w not in best or width > best[w]):
                best[w] = width
                via[w] = e
                tick += 1
                heapq.heappush(heap, (_neg_key(width), tick, w))
    if t not in done:
        return Fraction(0), None
    width = best[t]
    if width is INF:
        raise UnboundedError("infinite-capacity s-t path")
    witness = None
    v = t
    while v != s:
        e = via[v]
        if caps[e] == width and (witness is None or e < witness):
            witness = e
        v = inst.tail[e]
    return width, witness


def _neg_key(x):
    # heap is a min-heap; order infinite widths first
    return (0, 0) if x is INF else (1, -x)


def fast_max_flow(inst: FlowInstance, w: list[int]) -> list[int]:
    """Exact integral maximum flow by Dinic's algorithm on integer capacities."""
    n, s, t = inst.n, inst.s, inst.t
    net = [0] * inst.m

    def res(e):
        return w[e] - net[e]

    while True:
        level = [-1] * n
        level[s] = 0
        q = deque([s])
        while q:
            v = q.popleft()
            for e in inst.adj[v]:
                h = inst.head[e]
                if level[h] < 0 and res(e) > 0:
                    level[h] = level[v] + 1
                    q.append(h)
        if level[t] < 0:
            break
        it = [0] * n
        while True:
            pushed = _blocking_path(inst, s, t, level, it, net, w)
            if not pushed:
                break
    flow = [0] * inst.m
    for e in range(inst.m):
        if net[e] > 0:
            flow[e] = net[e]
    return flow


def _blocking_path(inst, s, t, level, it, net, w):
    """Find one augmenting path in the level graph (iterative DFS) and push it."""
    path = []
    v = s
    while True:
        if v == t:
            amount = min(w[e] - net[e] for e in path)
            for e in path:
                net[e] += amount
                net[e ^ 1] -= amount
            return amount
        adj = inst.adj[v]
        advanced = False
        while it[v] < len(adj):
            e = adj[it[v]]
            h = inst.head[e]
            if w[e] - net[e] > 0 and level[h] == level[v] + 1:
                path.append(e)
                v = h
                advanced = True
                break
            it[v] += 1
        if not advanced:
            if v == s:
                return 0
            level[v] = -1
            e = path.pop()
            v = inst.tail[e]
            it[v] += 1


def rounded_capacity(c, u_bar, m: int, M) -> int:
    """``min(floor(c / delta), m^3 M)`` with ``delta = u_bar / (m^2 M)``."""
    cap = m ** 3 * M
    if c is INF:
        return int(cap)
    delta = Fraction(u_bar) / (m * m * M)
    return int(min(Fraction(c) // delta, cap))


def rounded_capacity_division_free(c, u_bar, m: int, M) -> int:
    """The same rounding found by binary search on k with k*u_bar <= M m^2 c < (k+1)*u_bar."""
    cap = int(m ** 3 * M)
    if c is INF:
        return cap
    target = M * m * m * Fraction(c)
    lo, hi = 0, cap
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid * u_bar <= target:
            lo = mid
        else:
            hi = mid - 1
    return lo


def approx_flow(inst: FlowInstance, caps=None, M=None, division_free: bool = False) -> ApproxResult:
    caps = inst.cap if caps is None else caps
    m = inst.m
    if M is None:
        M = (4 * inst.n * inst.n) ** 5
    u_bar, e_bar = max_cap_path(inst, caps)
    if e_bar is None:
        return ApproxResult([Fraction(0)] * m, None, M)
    rnd = rounded_capacity_division_free if division_free else rounded_capacity
    w = [rnd(c, u_bar, m, M) for c in caps]
    delta = Fraction(u_bar) / (m * m * M)
    g = [delta * x for x in fast_max_flow(inst, w)]
    f = to_acyclic_basic(inst, g, caps)
    res = [residual_with(caps, f, e) for e in range(m)]
    _, e_star = max_cap_path(inst, res)
    return ApproxResult(f, e_star, M)


def residual_with(caps, f, e):
    c = caps[e]
    if c is INF:
        return INF
    return c - f[e] + f[e ^ 1]

