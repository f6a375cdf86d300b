"""Reference maximum flow by shortest augmenting paths (Edmonds-Karp).

Kept deliberately independent of the engine: it shares only the instance
container and exact values.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction

from .flowcore import FlowInstance, UnboundedError
from .values import INF


def edmonds_karp(inst: FlowInstance, caps=None):
    """Return ``(value, flow)`` of a maximum flow with exact arithmetic."""
    caps = inst.cap if caps is None else caps
    m = inst.m
    net = [Fraction(0)] * m  # net flow on e; net[e ^ 1] == -net[e]

    def res(e):
        c = caps[e]
        return INF if c is INF else c - net[e]

    value = Fraction(0)
    while True:
        prev = [-1] * inst.n
        prev[inst.s] = -2
        q = deque([inst.s])
        while q and prev[inst.t] == -1:
            v = q.popleft()
            for e in inst.adj[v]:
                w = inst.head[e]
                if prev[w] == -1 and res(e) > 0:
                    prev[w] = e
                    q.append(w)
        if prev[inst.t] == -1:
            break
        path = []
        v = inst.t
        while v != inst.s:
            e = prev[v]
            path.append(e)
            v = inst.tail[e]
        amount = min(res(e) for e in path)
        if amount is INF:
            raise UnboundedError("infinite augmenting path")
        for e in path:
            net[e] += amount
            net[e ^ 1] -= amount
        value += amount
    flow = [Fraction(0)] * m
    for e in range(m):
        if net[e] > 0:
            flow[e] = net[e]
    return value, flow


def max_flow_value(inst: FlowInstance, caps=None):
    return edmonds_karp(inst, caps)[0]
