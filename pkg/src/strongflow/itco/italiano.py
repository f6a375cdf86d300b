"""General incremental transitive cover maintaining the full closure.

Each source keeps a reachability tree that grows when an arc is added; the
tree arcs become out-rooted witness entries.  A cover of ``S`` is the
restricted closure when ``|S|^2 <= |E|`` and the whole graph otherwise.
"""

from __future__ import annotations

from .base import Itco


class ItalianoItco(Itco):
    name = "italiano"

    def __init__(self, nodes):
        super().__init__(nodes)
        self.out: dict[int, list[int]] = {v: [] for v in self.nodes}
        self.reach: dict[int, set[int]] = {v: set() for v in self.nodes}
        self.addout_calls = 0

    def _reaches(self, a, u):
        return a == u or u in self.reach[a]

    def _insert_arc(self, u, v):
        self.out[u].append(v)
        self.reach[u].add(v)
        for a in self.nodes:
            self._add_out(a, u, v)

    def _add_out(self, a, u, v):
        # for a == u the arc itself is already listed, so continue from its head
        stack = [(v, z) for z in self.out[v]] if a == u else [(u, v)]
        while stack:
            x, y = stack.pop()
            self.addout_calls += 1
            self.stats["work"] += 1
            if not self._reaches(a, x) or y == a or y in self.reach[a]:
                continue
            self.reach[a].add(y)
            self.estar.add((a, y))
            self.L.append(a, y, x)
            for z in self.out[y]:
                stack.append((y, z))

    def _cover(self, S):
        if len(S) ** 2 <= len(self.arcs):
            return set(S), [(a, b) for a in S for b in self.reach[a] if b in S]
        return set(self.nodes), sorted(self.arcs)
