"""Transitive cover for graphs whose arcs respect a rooted representing tree.

Every arc joins an ancestor-descendant pair of the tree.  For each node
``a`` the structure keeps reachability from and to ``a`` inside the subtree
of ``a``; a cover of ``S`` is the set of ancestors of ``S`` together with
the pairs whose deeper endpoint lies in ``S``.
"""

from __future__ import annotations

from .base import Itco, ItcoError


class TreeRespectError(ItcoError):
    pass


class RepresentingTree:
    def __init__(self, parent: dict):
        """``parent`` maps each node to its parent, or to None for the root."""
        self.parent = dict(parent)
        roots = [v for v, p in self.parent.items() if p is None]
        if len(roots) != 1:
            raise ItcoError("representing tree needs exactly one root, found %d" % len(roots))
        self.root = roots[0]
        self.children: dict = {v: [] for v in self.parent}
        for v, p in self.parent.items():
            if p is not None:
                if p not in self.parent:
                    raise ItcoError("parent %r of %r is not a tree node" % (p, v))
                self.children[p].append(v)
        self.depth = {self.root: 1}
        order = [self.root]
        for v in order:
            for c in self.children[v]:
                self.depth[c] = self.depth[v] + 1
                order.append(c)
        if len(order) != len(self.parent):
            raise ItcoError("parent structure has a cycle or is disconnected")
        self._anc = {}
        for v in order:
            p = self.parent[v]
            self._anc[v] = (v,) + (self._anc[p] if p is not None else ())
        self.D = max(self.depth.values())

    def anc(self, a) -> tuple:
        """Ancestors of ``a`` including ``a``, deepest first."""
        return self._anc[a]

    def is_ancestor(self, a, b) -> bool:
        da, db = self.depth[a], self.depth[b]
        return da <= db and self._anc[b][db - da] == a

    def related(self, a, b) -> bool:
        return self.is_ancestor(a, b) or self.is_ancestor(b, a)

    def upper(self, a, b):
        """The endpoint that is an ancestor of the other."""
        return a if self.is_ancestor(a, b) else b

    def lower(self, a, b):
        return b if self.is_ancestor(a, b) else a

    def common_anc(self, a, b) -> tuple:
        return self._anc[self.upper(a, b)]

    def desc(self, a) -> list:
        out = [a]
        for v in out:
            out.extend(self.children[v])
        return out

    def size_of(self, pairs) -> int:
        return sum(len(self.common_anc(a, b)) for a, b in pairs)

    @classmethod
    def path(cls, nodes):
        parent = {}
        prev = None
        for v in nodes:
            parent[v] = prev
            prev = v
        return cls(parent)

    @classmethod
    def from_dfs(cls, nodes, edges) -> "RepresentingTree":
        """Depth-first search tree; every edge of the graph joins related nodes.

        Separate components hang below the first node visited.
        """
        nodes = list(nodes)
        adj = {v: [] for v in nodes}
        for a, b in edges:
            adj[a].append(b)
            adj[b].append(a)
        parent = {}
        for start in nodes:
            if start in parent:
                continue
            parent[start] = nodes[0] if start != nodes[0] else None
            stack = [(start, iter(adj[start]))]
            while stack:
                v, it = stack[-1]
                for w in it:
                    if w not in parent:
                        parent[w] = v
                        stack.append((w, iter(adj[w])))
                        break
                else:
                    stack.pop()
        return cls(parent)

    def with_top(self, top: list) -> "RepresentingTree":
        """Move ``top`` to a chain above the tree, splicing them out below.

        Splicing keeps every ancestor relation among the remaining nodes.
        """
        top_set = set(top)
        parent = {}
        for v in self.parent:
            if v in top_set:
                continue
            p = self.parent[v]
            while p is not None and p in top_set:
                p = self.parent[p]
            parent[v] = p
        rest_root = [v for v, p in parent.items() if p is None]
        chain_parent = None
        for v in top:
            parent[v] = chain_parent
            chain_parent = v
        for v in rest_root:
            parent[v] = chain_parent
        return RepresentingTree(parent)


class TreeDepthItco(Itco):
    name = "treedepth"

    def __init__(self, nodes, tree: RepresentingTree):
        super().__init__(nodes)
        missing = self.node_set - set(tree.parent)
        if missing:
            raise ItcoError("nodes %s are not in the representing tree" % sorted(missing)[:5])
        self.tree = tree
        self.out_desc: dict = {v: {} for v in self.nodes}  # a -> x -> heads, arcs inside desc(a)
        self.in_desc: dict = {v: {} for v in self.nodes}   # a -> y -> tails
        self.cov: dict = {v: [] for v in self.nodes}       # deeper endpoint -> E* pairs
        self.size_T = 0

    def _check_pair(self, a, b):
        super()._check_pair(a, b)
        if not self.tree.related(a, b):
            raise TreeRespectError("arc (%d, %d) does not respect the representing tree" % (a, b))

    def _has(self, a, b):
        return a == b or (a, b) in self.estar

    def _insert_arc(self, u, v):
        tree = self.tree
        self.cov[tree.lower(u, v)].append((u, v))
        common = tree.common_anc(u, v)
        self.size_T += len(common)
        for a in common:
            self.out_desc[a].setdefault(u, []).append(v)
            self.in_desc[a].setdefault(v, []).append(u)
        for a in common:
            self._add_out(a, u, v)
            self._add_in(a, u, v)

    def _add_out(self, a, u, v):
        out = self.out_desc[a]
        stack = [(v, z) for z in out.get(v, ())] if a == u else [(u, v)]
        while stack:
            x, y = stack.pop()
            self.stats["work"] += 1
            if not self._has(a, x) or self._has(a, y):
                continue
            self.estar.add((a, y))
            self.cov[y].append((a, y))
            self.L.append(a, y, x)
            for z in out.get(y, ()):
                stack.append((y, z))

    def _add_in(self, a, u, v):
        inn = self.in_desc[a]
        stack = [(z, u) for z in inn.get(u, ())] if a == v else [(u, v)]
        while stack:
            x, y = stack.pop()
            self.stats["work"] += 1
            if not self._has(y, a) or self._has(x, a):
                continue
            self.estar.add((x, a))
            self.cov[x].append((x, a))
            self.L.append(x, a, y)
            for z in inn.get(x, ()):
                stack.append((z, x))

    def _cover(self, S):
        V_out = set()
        E_out = []
        for a in S:
            V_out.update(self.tree.anc(a))
            E_out.extend(self.cov[a])
        return V_out, E_out


def restricted_closure_oracle(tree: RepresentingTree, arcs) -> set:
    """Pairs (a, b) reachable inside the subtree of a or inside the subtree of b."""
    from .base import oracle_closure

    arcs = list(arcs)
    out = set()
    for a in tree.parent:
        inside = set(tree.desc(a))
        sub = [(x, y) for x, y in arcs if x in inside and y in inside]
        for x, y in oracle_closure(inside, sub):
            if x == a or y == a:
                out.add((x, y))
    return out
