"""Incremental transitive cover interface, brute-force backend and cover checker."""

from __future__ import annotations

from collections import deque

from ..witness import WitnessList


class ItcoError(Exception):
    pass


class Itco:
    """Common state for incremental transitive cover backends.

    ``tc_add`` accepts any iterable of node pairs.  Pairs already added are
    ignored.  A pair that is already reachable through the maintained
    transitive pairs is recorded as added but not listed as an arc: it cannot
    change any closure the backend maintains, and listing it would duplicate
    a pair in the witness list.
    """

    name = "base"

    def __init__(self, nodes):
        self.nodes = list(nodes)
        self.node_set = set(self.nodes)
        self.L = WitnessList()
        self.estar: set[tuple[int, int]] = set()
        self.arcs: set[tuple[int, int]] = set()      # E(L)
        self.implied: set[tuple[int, int]] = set()   # added while already in E*
        self.stats = {"adds": 0, "arcs": 0, "implied": 0, "covers": 0,
                      "cover_nodes": 0, "cover_arcs": 0, "query_nodes": 0, "work": 0}

    # -- interface -------------------------------------------------------
    def tc_add(self, F) -> list[tuple[int, int]]:
        """Add arcs; return the pairs that became arcs of the witness list."""
        new = []
        for a, b in F:
            self.stats["adds"] += 1
            if a == b:
                raise ItcoError("self-loop (%d, %d)" % (a, b))
            self._check_pair(a, b)
            if (a, b) in self.arcs or (a, b) in self.implied:
                continue
            if (a, b) in self.estar:
                self.implied.add((a, b))
                self.stats["implied"] += 1
                continue
            self.L.append(a, b, b)
            self.arcs.add((a, b))
            self.estar.add((a, b))
            self.stats["arcs"] += 1
            new.append((a, b))
            self._insert_arc(a, b)
        self._after_add(new)
        return new

    def tc_cover(self, S):
        S = set(S)
        V_out, E_out = self._cover(S)
        self.stats["covers"] += 1
        self.stats["query_nodes"] += len(S)
        self.stats["cover_nodes"] += len(V_out)
        self.stats["cover_arcs"] += len(E_out)
        return V_out, E_out

    def tc_wit_list(self) -> WitnessList:
        return self.L

    def added(self) -> set:
        return self.arcs | self.implied

    # -- hooks -----------------------------------------------------------
    def _check_pair(self, a, b):
        if a not in self.node_set or b not in self.node_set:
            raise ItcoError("pair (%d, %d) outside the node set" % (a, b))

    def _insert_arc(self, a, b):
        raise NotImplementedError

    def _after_add(self, new):
        pass

    def _cover(self, S):
        raise NotImplementedError


def oracle_closure(n_or_nodes, arcs) -> set[tuple[int, int]]:
    """All pairs (i, j), i != j, joined by a directed path."""
    nodes = range(n_or_nodes) if isinstance(n_or_nodes, int) else n_or_nodes
    out = {}
    for a, b in arcs:
        out.setdefault(a, []).append(b)
    closure = set()
    for src in nodes:
        seen = {src}
        q = deque([src])
        while q:
            v = q.popleft()
            for w in out.get(v, ()):
                if w not in seen:
                    seen.add(w)
                    q.append(w)
        closure.update((src, w) for w in seen if w != src)
    return closure


def check_cover(arcs, S, cover, nodes=None) -> bool:
    """True iff ``cover = (V_out, E_out)`` is a transitive cover of ``S``."""
    V_out, E_out = set(cover[0]), set(cover[1])
    S = set(S)
    arcs = list(arcs)
    if nodes is None:
        nodes = {x for arc in arcs for x in arc} | S | V_out
    if not S <= V_out or not V_out <= set(nodes):
        return False
    full = oracle_closure(nodes, arcs)
    for a, b in E_out:
        if a not in V_out or b not in V_out or (a, b) not in full:
            return False
    small = oracle_closure(V_out, E_out)
    want = {(a, b) for a, b in full if a in S and b in S}
    got = {(a, b) for a, b in small if a in S and b in S}
    return want == got


class OracleItco(Itco):
    """Dense reference backend: covers are restricted closures.

    Transitive pairs are listed on demand along BFS paths over the arcs, so
    the witness list stays out-rooted.
    """

    name = "oracle"

    def __init__(self, nodes, limit: int = 256):
        super().__init__(nodes)
        if len(self.nodes) > limit:
            raise ItcoError("oracle backend limited to %d nodes" % limit)
        self.out: dict[int, list[int]] = {v: [] for v in self.nodes}
        self.closure: set[tuple[int, int]] = set()

    def _insert_arc(self, a, b):
        self.out[a].append(b)

    def _after_add(self, new):
        if new:
            self.closure = oracle_closure(self.nodes, self.arcs)
        self.stats["work"] += len(self.nodes) * max(1, len(self.arcs))

    def _list_pair(self, a, b):
        if (a, b) in self.estar:
            return
        prev = {a: None}
        q = deque([a])
        while q and b not in prev:
            v = q.popleft()
            for w in self.out[v]:
                if w not in prev:
                    prev[w] = v
                    q.append(w)
        path = [b]
        while prev[path[-1]] is not None:
            path.append(prev[path[-1]])
        path.reverse()
        for j in range(2, len(path)):
            x, y = path[j - 1], path[j]
            if (a, y) not in self.estar:
                self.L.append(a, y, x)
                self.estar.add((a, y))

    def _cover(self, S):
        E_out = sorted((a, b) for a, b in self.closure if a in S and b in S)
        for a, b in E_out:
            self._list_pair(a, b)
        return set(S), E_out
