"""Witness lists: ordered triples ``(a, b, w)`` certifying reachability.

An entry with ``w == b`` is an arc.  Any other entry is a transitive pair
whose witness ``w`` splits it into two pairs listed earlier, so every pair
expands to an ``a``-``b`` walk over arcs.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction


class WitnessError(Exception):
    pass


class WitnessList:
    def __init__(self):
        self.entries: list[tuple[int, int, int]] = []
        self.pos: dict[tuple[int, int], int] = {}

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __contains__(self, pair):
        return pair in self.pos

    def append(self, a: int, b: int, w: int) -> None:
        if a == b:
            raise WitnessError("pair (%d, %d) is a self-pair" % (a, b))
        if (a, b) in self.pos:
            raise WitnessError("pair (%d, %d) already listed" % (a, b))
        if w != b and ((a, w) not in self.pos or (w, b) not in self.pos):
            raise WitnessError("witness %d of (%d, %d) lacks an earlier split" % (w, a, b))
        self.pos[(a, b)] = len(self.entries)
        self.entries.append((a, b, w))

    def wit(self, a: int, b: int) -> int:
        return self.entries[self.pos[(a, b)]][2]

    def is_arc(self, a: int, b: int) -> bool:
        i = self.pos.get((a, b))
        return i is not None and self.entries[i][2] == b

    def arcs(self) -> list[tuple[int, int]]:
        """E(L) in list order."""
        return [(a, b) for a, b, w in self.entries if w == b]

    def pairs(self) -> list[tuple[int, int]]:
        """E*(L) in list order."""
        return [(a, b) for a, b, _ in self.entries]

    def walk(self, a: int, b: int) -> list[tuple[int, int]]:
        if (a, b) not in self.pos:
            raise WitnessError("pair (%d, %d) is not listed" % (a, b))
        out = []
        stack = [(a, b)]
        while stack:
            x, y = stack.pop()
            w = self.wit(x, y)
            if w == y:
                out.append((x, y))
            else:
                stack.append((w, y))
                stack.append((x, w))
        return out

    def rooted_flags(self) -> tuple[list[bool], list[bool]]:
        """Per entry: (a-out rooted, b-in rooted)."""
        out_r, in_r = [], []
        for a, b, w in self.entries:
            if w == b:
                out_r.append(True)
                in_r.append(True)
                continue
            out_r.append(self.is_arc(w, b) and out_r[self.pos[(a, w)]])
            in_r.append(self.is_arc(a, w) and in_r[self.pos[(w, b)]])
        return out_r, in_r

    def is_rooted(self) -> bool:
        out_r, in_r = self.rooted_flags()
        return all(o or i for o, i in zip(out_r, in_r))

    def is_out_rooted(self) -> bool:
        return all(self.rooted_flags()[0])

    def validate(self) -> None:
        seen = set()
        for a, b, w in self.entries:
            if a == b or (a, b) in seen:
                raise WitnessError("bad pair (%d, %d)" % (a, b))
            if w != b and ((a, w) not in seen or (w, b) not in seen):
                raise WitnessError("bad witness for (%d, %d)" % (a, b))
            seen.add((a, b))

    def dump(self) -> str:
        return "".join("%d %d %d %d\n" % (i + 1, a, b, w) for i, (a, b, w) in enumerate(self.entries))

    @classmethod
    def parse(cls, text: str) -> "WitnessList":
        out = cls()
        for line in text.splitlines():
            if line.strip():
                _, a, b, w = (int(x) for x in line.split())
                out.append(a, b, w)
        return out

    def copy(self) -> "WitnessList":
        other = WitnessList()
        other.entries = list(self.entries)
        other.pos = dict(self.pos)
        return other


def check_reverse_set(L: WitnessList, R) -> None:
    for a, b in R:
        i = L.pos.get((a, b))
        if i is None or not L.is_arc(a, b):
            raise WitnessError("reverse arc (%d, %d) is not an arc of the list" % (a, b))
        j = L.pos.get((b, a))
        if j is None or j >= i:
            raise WitnessError("reverse arc (%d, %d) is not preceded by its reverse" % (a, b))


def wit_route(L: WitnessList, f: dict, R=()) -> dict:
    """Move values off transitive and reverse pairs in one backward pass."""
    R = set(R)
    check_reverse_set(L, R)
    g = defaultdict(Fraction)
    g.update(f)
    for a, b, w in reversed(L.entries):
        x = g.get((a, b), 0)
        if (a, b) in R:
            g[(b, a)] -= x
            g[(a, b)] = Fraction(0)
        elif w != b:
            if x:
                g[(a, w)] += x
                g[(w, b)] += x
            g[(a, b)] = Fraction(0)
    return {k: v for k, v in g.items() if v}


def wit_route_oracle(L: WitnessList, f: dict, R=()) -> dict:
    """Quadratic reference: substitute each transitive pair by its full walk."""
    R = set(R)
    check_reverse_set(L, R)
    g = defaultdict(Fraction)
    g.update(f)
    for i in range(len(L.entries) - 1, -1, -1):
        a, b, w = L.entries[i]
        x = g.get((a, b), 0)
        if (a, b) in R:
            g[(a, b)] -= x
            g[(b, a)] += -x
        elif w != b:
            g[(a, b)] -= x
            for arc in L.walk(a, b):
                g[arc] += x
    return {k: v for k, v in g.items() if v}


def divergence(values: dict) -> dict:
    """Net outflow per node of a pair-indexed vector."""
    d = defaultdict(Fraction)
    for (a, b), x in values.items():
        d[a] += x
        d[b] -= x
    return {k: v for k, v in d.items() if v}


def is_simple_path(arcs, a: int, b: int) -> bool:
    if not arcs or arcs[0][0] != a or arcs[-1][1] != b:
        return False
    nodes = [arcs[0][0]]
    for (x, y), nxt in zip(arcs, arcs[1:] + [None]):
        if nxt is not None and nxt[0] != y:
            return False
        nodes.append(y)
    return len(set(nodes)) == len(nodes)
