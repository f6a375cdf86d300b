"""Transitive cover that exploits a node ordering.

Nodes are ordered by descending value ``x`` (ties by ascending id).  Nested
prefix sets ``V_1 <= ... <= V_K = V`` of sizes ``min(2^k, n)`` are rebuilt
lazily; after a rebuild of level ``k`` the closure restricted to ``V_k`` is
reachable through the stored transitive pairs.  A cover of ``S`` is the
smallest prefix set containing ``S`` with all stored pairs inside it.
"""

from __future__ import annotations

import math
from collections import deque

from .base import Itco, ItcoError, oracle_closure


class OrderedItco(Itco):
    name = "ordered"

    def __init__(self, nodes, x=None):
        super().__init__(nodes)
        n = len(self.nodes)
        self.K = max(1, math.ceil(math.log2(n))) if n > 1 else 1
        self.v = [None] + [min(2 ** k, n) for k in range(1, self.K + 1)]
        self.x = {a: 0 for a in self.nodes}
        if x:
            self.x.update(x)
        self.sets: list = [None] + [set() for _ in range(self.K)]
        self.t = [None] + [0] * self.K
        self.out: dict = {a: [] for a in self.nodes}   # E(L) adjacency
        self.new_transitive_pairs: set = set()
        self.updates = 0
        self._reorder()
        self._update(self.K)

    # -- ordering --------------------------------------------------------
    def _reorder(self):
        self.order = sorted(self.nodes, key=lambda a: (-self.x[a], a))
        self.rank = {a: i for i, a in enumerate(self.order)}

    def prefix(self, j: int) -> list:
        return self.order[:j]

    def prefix_of(self, S) -> int:
        """|V_x(S)|: nodes ordered no later than the last member of S."""
        return max((self.rank[a] for a in S), default=-1) + 1

    # -- operations ------------------------------------------------------
    def _insert_arc(self, a, b):
        self.out[a].append(b)

    def _after_add(self, new):
        touched = {x for arc in new for x in arc}
        k_star = None
        for k in range(self.K, 0, -1):
            if not touched <= self.sets[k]:
                k_star = k
                break
        if k_star is not None:
            self._update(k_star)

    def tc_reorder(self, S, y: dict) -> None:
        S = list(S)
        if not S:
            return
        count = self.prefix_of(S)
        for k in range(1, self.K + 1):
            self.t[k] += count
        for a in S:
            self.x[a] = y[a]
        self._reorder()
        k_star = None
        for k in range(self.K, 0, -1):
            if self.t[k] > self.v[k] / 2:
                k_star = k
                break
        if k_star is not None:
            self._update(k_star)

    def _cover(self, S):
        for k in range(1, self.K + 1):
            if S <= self.sets[k]:
                Vk = self.sets[k]
                return set(Vk), [(a, b) for (a, b) in self.estar if a in Vk and b in Vk]
        raise ItcoError("cover query outside the node set")

    # -- rebuilding ------------------------------------------------------
    def _update(self, k_star: int) -> None:
        self.updates += 1
        for k in range(1, k_star + 1):
            self.sets[k] = set(self.prefix(self.v[k]))
            self.t[k] = 0
        level = min(k_star + 1, self.K)
        U = self.sets[level]
        adj: dict = {a: [] for a in U}
        for a, b in self.estar:
            if a in U and b in U:
                adj[a].append(b)
        for a in adj:
            adj[a].sort(key=self.rank.__getitem__)
        forests = []
        for a in sorted(U, key=self.rank.__getitem__):
            seen = {a}
            tree_arcs = []
            q = deque([a])
            while q:
                w = q.popleft()
                for b in adj[w]:
                    if b not in seen:
                        seen.add(b)
                        tree_arcs.append((w, b))
                        q.append(b)
            self.stats["work"] += len(seen)
            forests.append((a, tree_arcs))
        for a, tree_arcs in forests:
            for w, b in tree_arcs:
                if (a, b) not in self.estar:
                    self._new_transitive(a, w, b)

    def _new_transitive(self, a, w, b):
        """List (a, b) given listed (a, w) and (w, b), grounding the witness on an arc."""
        chain = []
        target = b
        while True:
            if (w, target) in self.arcs:
                chain.append((target, w))
                break
            v = self.L.wit(w, target)
            chain.append((target, v))
            if (a, v) in self.estar:
                break
            target = v
        for target, wit in reversed(chain):
            if (a, target) in self.new_transitive_pairs:
                raise ItcoError("pair (%d, %d) materialized twice" % (a, target))
            self.new_transitive_pairs.add((a, target))
            self.L.append(a, target, wit)
            self.estar.add((a, target))

    # -- invariants ------------------------------------------------------
    def check_invariants(self) -> list[str]:
        """Return descriptions of violated invariants (empty when all hold)."""
        bad = []
        for k in range(1, self.K + 1):
            if len(self.sets[k]) != self.v[k]:
                bad.append("graph: |V_%d| = %d != %d" % (k, len(self.sets[k]), self.v[k]))
            if k > 1 and not self.sets[k - 1] <= self.sets[k]:
                bad.append("graph: V_%d not nested in V_%d" % (k - 1, k))
        if self.sets[self.K] != self.node_set:
            bad.append("graph: V_K != V")
        full = oracle_closure(self.nodes, self.arcs)
        if not self.estar <= full:
            bad.append("closure: E* not inside the closure")
        for k in range(1, self.K + 1):
            Vk = self.sets[k]
            want = {(a, b) for a, b in full if a in Vk and b in Vk}
            got = oracle_closure(Vk, [(a, b) for a, b in self.estar if a in Vk and b in Vk])
            if want != got:
                bad.append("closure: level %d closure mismatch" % k)
            if not set(self.prefix(max(0, self.v[k] - self.t[k]))) <= Vk:
                bad.append("closure: prefix of length v_k - t_k escapes V_%d" % k)
            if self.t[k] > self.v[k] / 2:
                bad.append("closure: t_%d = %d exceeds v_k / 2" % (k, self.t[k]))
        if set(self.L.arcs()) != self.arcs or self.arcs & self.implied:
            bad.append("witness: listed arcs differ from added non-implied arcs")
        if set(self.L.pairs()) != self.estar:
            bad.append("witness: E* differs from listed pairs")
        if not self.L.is_out_rooted():
            bad.append("witness: list not out-rooted")
        return bad
