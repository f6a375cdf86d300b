"""Text formats for instances, representing trees and flows.

Instance files follow the DIMACS max-flow layout::

    c comment
    p max <n> <m>
    n <id> s
    n <id> t
    a <tail> <head> <cap>

with 1-based node ids and ``*`` for infinite capacity.  Capacities may also
be written ``num/den``.  Arc line ``k`` (1-based) becomes the arc pair with
index ``2(k-1)`` whose reverse has capacity 0.

Tree files hold an optional ``d <depth>`` header and lines
``t <node> <parent>`` with parent 0 for the root.  Flow files hold
``f <arc line> <num>/<den>`` lines.
"""

from __future__ import annotations

from fractions import Fraction

from .flowcore import FlowError, FlowInstance
from .itco.base import ItcoError
from .itco.treedepth import RepresentingTree
from .values import INF, as_value, format_value


class ParseError(FlowError):
    def __init__(self, lineno: int, message: str):
        super().__init__("line %d: %s" % (lineno, message))
        self.lineno = lineno


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("c"):
            yield lineno, line.split()


def _int(tok: str, lineno: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(lineno, "%s %r is not an integer" % (what, tok)) from None


def _node(tok: str, n: int, lineno: int) -> int:
    v = _int(tok, lineno, "node id")
    if not 1 <= v <= n:
        raise ParseError(lineno, "node id %d outside [1, %d]" % (v, n))
    return v - 1


def _cap(tok: str, lineno: int):
    try:
        c = as_value(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(lineno, "bad capacity %r" % tok) from None
    if c is not INF and c < 0:
        raise ParseError(lineno, "negative capacity %s" % tok)
    return c


def parse_instance(text: str) -> FlowInstance:
    n = m = None
    s = t = None
    arcs = []
    for lineno, tok in _lines(text):
        kind = tok[0]
        if kind == "p":
            if n is not None:
                raise ParseError(lineno, "second problem line")
            if len(tok) != 4 or tok[1] != "max":
                raise ParseError(lineno, "expected 'p max <n> <m>'")
            n = _int(tok[2], lineno, "node count")
            m = _int(tok[3], lineno, "arc count")
            if n < 2 or m < 0:
                raise ParseError(lineno, "need n >= 2 and m >= 0")
            continue
        if n is None:
            raise ParseError(lineno, "'%s' line before the problem line" % kind)
        if kind == "n":
            if len(tok) != 3 or tok[2] not in ("s", "t"):
                raise ParseError(lineno, "expected 'n <id> s' or 'n <id> t'")
            v = _node(tok[1], n, lineno)
            if tok[2] == "s":
                if s is not None:
                    raise ParseError(lineno, "source given twice")
                s = v
            else:
                if t is not None:
                    raise ParseError(lineno, "sink given twice")
                t = v
        elif kind == "a":
            if len(tok) != 4:
                raise ParseError(lineno, "expected 'a <tail> <head> <cap>'")
            a, b = _node(tok[1], n, lineno), _node(tok[2], n, lineno)
            if a == b:
                raise ParseError(lineno, "self-loop at node %d" % (a + 1))
            arcs.append((a, b, _cap(tok[3], lineno)))
        else:
            raise ParseError(lineno, "unknown line type %r" % kind)
    if n is None:
        raise ParseError(0, "missing problem line")
    if s is None or t is None:
        raise ParseError(0, "source or sink missing")
    if s == t:
        raise ParseError(0, "source and sink coincide")
    if len(arcs) != m:
        raise ParseError(0, "problem line announces %d arcs, found %d" % (m, len(arcs)))
    inst = FlowInstance(n, s, t)
    for a, b, c in arcs:
        inst.add_pair(a, b, c, Fraction(0))
    return inst


def _cap_text(c) -> str:
    if c is INF:
        return "*"
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else format_value(c)


def write_instance(inst: FlowInstance, comment: str | None = None) -> str:
    for p in range(1, inst.m, 2):
        if inst.cap[p] != 0:
            raise FlowError("arc pair %d has a reverse capacity; the file format holds one-way arcs" % (p // 2))
    out = []
    if comment:
        out.extend("c %s" % line for line in comment.splitlines())
    out.append("p max %d %d" % (inst.n, inst.m // 2))
    out.append("n %d s" % (inst.s + 1))
    out.append("n %d t" % (inst.t + 1))
    for p in range(0, inst.m, 2):
        out.append("a %d %d %s" % (inst.tail[p] + 1, inst.head[p] + 1, _cap_text(inst.cap[p])))
    return "\n".join(out) + "\n"


def parse_tree(text: str, n: int | None = None) -> RepresentingTree:
    parent = {}
    depth_bound = None
    for lineno, tok in _lines(text):
        if tok[0] == "d":
            if len(tok) != 2:
                raise ParseError(lineno, "expected 'd <depth>'")
            depth_bound = _int(tok[1], lineno, "depth bound")
        elif tok[0] == "t":
            if len(tok) != 3:
                raise ParseError(lineno, "expected 't <node> <parent>'")
            v = _int(tok[1], lineno, "node id")
            p = _int(tok[2], lineno, "parent id")
            if v < 1 or (n is not None and v > n) or p < 0 or (n is not None and p > n):
                raise ParseError(lineno, "node id out of range")
            if v - 1 in parent:
                raise ParseError(lineno, "node %d listed twice" % v)
            parent[v - 1] = p - 1 if p else None
        else:
            raise ParseError(lineno, "unknown line type %r" % tok[0])
    if n is not None and len(parent) != n:
        raise ParseError(0, "tree covers %d of %d nodes" % (len(parent), n))
    try:
        tree = RepresentingTree(parent)
    except ItcoError as exc:
        raise ParseError(0, str(exc)) from None
    if depth_bound is not None and tree.D > depth_bound:
        raise ParseError(0, "tree depth %d exceeds the declared bound %d" % (tree.D, depth_bound))
    return tree


def write_tree(tree: RepresentingTree) -> str:
    out = ["d %d" % tree.D]
    for v in sorted(tree.parent):
        p = tree.parent[v]
        out.append("t %d %d" % (v + 1, 0 if p is None else p + 1))
    return "\n".join(out) + "\n"


def tree_violations(tree: RepresentingTree, inst: FlowInstance) -> list[int]:
    """Arc lines (1-based) whose endpoints are not ancestor-related."""
    return [p // 2 + 1 for p in range(0, inst.m, 2)
            if not tree.related(inst.tail[p], inst.head[p])]


def write_flow(inst: FlowInstance, flow) -> str:
    return "".join("f %d %s\n" % (p // 2 + 1, format_value(flow[p])) for p in range(0, inst.m, 2))


def parse_flow(text: str, inst: FlowInstance) -> list:
    """Flow on every arc of ``inst``; arc lines not mentioned carry zero."""
    flow = [Fraction(0)] * inst.m
    seen = set()
    k = inst.m // 2
    for lineno, tok in _lines(text):
        if tok[0] in ("value", "v"):
            continue
        if tok[0] != "f" or len(tok) != 3:
            raise ParseError(lineno, "expected 'f <arc line> <num>/<den>'")
        i = _int(tok[1], lineno, "arc line")
        if not 1 <= i <= k:
            raise ParseError(lineno, "arc line %d outside [1, %d]" % (i, k))
        if i in seen:
            raise ParseError(lineno, "arc line %d given twice" % i)
        seen.add(i)
        try:
            x = Fraction(tok[2])
        except (ValueError, ZeroDivisionError):
            raise ParseError(lineno, "bad flow value %r" % tok[2]) from None
        flow[2 * (i - 1)] = x
    return flow


def read_text(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
