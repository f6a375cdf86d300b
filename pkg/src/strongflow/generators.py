"""Seeded instance generators.

Every generator returns ``(instance, tree)`` where ``tree`` is a
representing tree for the instance or None.  Arcs are one-way pairs, so
instances round-trip through the text format.  Output depends only on the
arguments, including ``seed``.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .flowcore import FlowInstance, infinite_reachable
from .itco.treedepth import RepresentingTree
from .values import INF

KINDS = ("random", "bipartite", "node-cap", "layered", "treedepth")


def _bounded_after(inst: FlowInstance, a: int, b: int) -> bool:
    """Would an infinite arc (a, b) keep the sink out of infinite reach?"""
    from_s = infinite_reachable(inst, inst.s)
    if a not in from_s:
        return True
    if b == inst.t:
        return False
    return inst.t not in from_s | infinite_reachable(inst, b)


def random_instance(n: int, m: int, seed: int = 0, inf_frac: float = 0.2, max_cap: int = 10 ** 6):
    """Random digraph on ``n`` nodes, ``s = 1``, ``t = n``, no s-t arcs.

    An infinite arc that would create an infinite s-t path gets a finite
    capacity instead.
    """
    if n < 2 or m < 0:
        raise ValueError("need n >= 2 and m >= 0")
    rng = random.Random(seed)
    inst = FlowInstance(n, 0, n - 1)
    if n == 2:
        return inst, None
    for _ in range(m):
        while True:
            a, b = rng.sample(range(n), 2)
            if {a, b} != {0, n - 1}:
                break
        cap = Fraction(rng.randint(0, max_cap))
        if rng.random() < inf_frac and _bounded_after(inst, a, b):
            cap = INF
        inst.add_pair(a, b, cap, Fraction(0))
    return inst, None


def bipartite_instance(left: int, right: int, seed: int = 0, degree: int = 3, max_b: int = 5):
    """b-matching through node splitting.

    Node ``v`` with bound ``b_v`` becomes ``v' -> v''`` of capacity ``b_v``;
    all other arcs are infinite, so only the split arcs are capacitated.
    """
    if left < 1 or right < 1 or degree < 1:
        raise ValueError("need left, right, degree >= 1")
    rng = random.Random(seed)
    k = left + right
    n = 2 * k + 2
    s, t = 0, n - 1
    inst = FlowInstance(n, s, t)

    def node_in(v):
        return 1 + 2 * v

    def node_out(v):
        return 2 + 2 * v

    for v in range(k):
        b = Fraction(rng.randint(1, max_b)) if max_b > 1 else Fraction(1)
        inst.add_pair(node_in(v), node_out(v), b, Fraction(0))
    for v in range(left):
        inst.add_pair(s, node_in(v), INF, Fraction(0))
    for w in range(left, k):
        inst.add_pair(node_out(w), t, INF, Fraction(0))
    for v in range(left):
        for w in sorted(rng.sample(range(left, k), min(degree, right))):
            inst.add_pair(node_out(v), node_in(w), INF, Fraction(0))
    return inst, None


def node_capacity_instance(n: int, m: int, seed: int = 0, max_cap: int = 100):
    """Node-capacitated flow reduced to arc capacities by node splitting.

    Interior node ``v`` becomes ``v_in -> v_out`` with its capacity; the
    original arcs become infinite arcs ``u_out -> v_in``.
    """
    if n < 3:
        raise ValueError("need n >= 3")
    rng = random.Random(seed)
    inner = n - 2
    N = 2 * inner + 2
    s, t = 0, N - 1
    inst = FlowInstance(N, s, t)

    def node_in(v):      # v in 1..inner; s and t are not split
        return 2 * v - 1

    def node_out(v):
        return 2 * v

    for v in range(1, inner + 1):
        inst.add_pair(node_in(v), node_out(v), Fraction(rng.randint(1, max_cap)), Fraction(0))
    for _ in range(m):
        a, b = rng.sample(range(n), 2)
        if a == n - 1 or b == 0 or (a == 0 and b == n - 1):
            continue
        tail = s if a == 0 else node_out(a)
        head = t if b == n - 1 else node_in(b)
        inst.add_pair(tail, head, INF, Fraction(0))
    return inst, None


def layered_instance(T: int, width: int, K: int = 1, seed: int = 0, max_cap: int = 100, density: float = 0.5):
    """Time-expanded network: ``T`` layers of ``width`` nodes, arcs span 1..K layers.

    Holdover arcs ``(layer, i) -> (layer + 1, i)`` are infinite, transit arcs
    finite.  The tree is built by splitting the layer range at a block of
    ``K`` separator layers, recursively, so its depth is about
    ``K * width * log2(T / K)`` plus the two terminals.
    """
    if T < 1 or width < 1 or K < 1:
        raise ValueError("need T, width, K >= 1")
    rng = random.Random(seed)
    n = T * width + 2
    s, t = 0, n - 1
    inst = FlowInstance(n, s, t)

    def node(layer, i):
        return 1 + layer * width + i

    for i in range(width):
        inst.add_pair(s, node(0, i), Fraction(rng.randint(1, max_cap)), Fraction(0))
        inst.add_pair(node(T - 1, i), t, Fraction(rng.randint(1, max_cap)), Fraction(0))
    for layer in range(T - 1):
        for i in range(width):
            inst.add_pair(node(layer, i), node(layer + 1, i), INF, Fraction(0))
    for layer in range(T):
        for span in range(1, K + 1):
            if layer + span >= T:
                break
            for i in range(width):
                for j in range(width):
                    if i != j and rng.random() < density:
                        inst.add_pair(node(layer, i), node(layer + span, j),
                                      Fraction(rng.randint(1, max_cap)), Fraction(0))
    parent = {s: None, t: s}

    def build(lo, hi, above):
        # layers [lo, hi) hang below node ``above``
        if lo >= hi:
            return
        if hi - lo <= K:
            mid_lo, mid_hi = lo, hi
        else:
            mid_lo = (lo + hi - K) // 2
            mid_hi = mid_lo + K
        prev = above
        for layer in range(mid_lo, mid_hi):
            for i in range(width):
                v = node(layer, i)
                parent[v] = prev
                prev = v
        build(lo, mid_lo, prev)
        build(mid_hi, hi, prev)

    build(0, T, t)
    return inst, RepresentingTree(parent)


def treedepth_instance(n: int, D: int, m: int, seed: int = 0, max_cap: int = 10 ** 6, inf_frac: float = 0.1):
    """Random arcs between ancestor-descendant pairs of a random tree of depth ``D``.

    ``s`` is the root and ``t`` its only child, so every arc involving a
    terminal respects the tree; the other ``n - 2`` nodes form a random tree
    of depth at most ``D - 2`` below ``t``.
    """
    if D < 3 or n < 3:
        raise ValueError("need D >= 3 and n >= 3")
    rng = random.Random(seed)
    s, t = 0, 1
    parent = {s: None, t: s}
    depth = {s: 1, t: 2}
    anc = {s: (s,), t: (t, s)}
    open_nodes = [t]
    for v in range(2, n):
        p = rng.choice(open_nodes)
        parent[v] = p
        depth[v] = depth[p] + 1
        anc[v] = (v,) + anc[p]
        if depth[v] < D:
            open_nodes.append(v)
    inst = FlowInstance(n, s, t)
    inner = list(range(2, n))
    for _ in range(m):
        v = rng.choice(inner)
        u = rng.choice(anc[v][1:])
        a, b = (u, v) if rng.random() < 0.5 else (v, u)
        if {a, b} == {s, t} or a == t or b == s:
            continue
        cap = Fraction(rng.randint(1, max_cap))
        if rng.random() < inf_frac and _bounded_after(inst, a, b):
            cap = INF
        inst.add_pair(a, b, cap, Fraction(0))
    return inst, RepresentingTree(parent)


def generate(kind: str, seed: int = 0, **size):
    if kind == "random":
        return random_instance(size.get("n", 20), size.get("m", 60), seed)
    if kind == "bipartite":
        return bipartite_instance(size.get("left", 5), size.get("right", 5), seed, size.get("degree", 3))
    if kind == "node-cap":
        return node_capacity_instance(size.get("n", 20), size.get("m", 60), seed)
    if kind == "layered":
        return layered_instance(size.get("T", 5), size.get("width", 4), size.get("K", 1), seed)
    if kind == "treedepth":
        return treedepth_instance(size.get("n", 40), size.get("D", 6), size.get("m", 120), seed)
    raise ValueError("unknown generator %r" % kind)
