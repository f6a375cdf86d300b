from fractions import Fraction as F

import pytest
from hypothesis import given

from strongflow.flowcore import FlowError, FlowInstance
from strongflow.formats import (
    ParseError,
    parse_flow,
    parse_instance,
    parse_tree,
    tree_violations,
    write_flow,
    write_instance,
    write_tree,
)
from strongflow.generators import generate
from strongflow.itco import RepresentingTree
from strongflow.values import INF

SAMPLE = """c two arcs
p max 3 2
n 1 s
n 3 t
a 1 2 3
a 2 3 *
"""


def test_parse_sample():
    g = parse_instance(SAMPLE)
    assert (g.n, g.m, g.s, g.t) == (3, 4, 0, 2)
    assert g.cap == [3, 0, INF, 0]
    assert parse_instance(write_instance(g)).cap == g.cap


def test_rational_capacity():
    g = parse_instance("p max 2 1\nn 1 s\nn 2 t\na 1 2 7/3\n")
    assert g.cap[0] == F(7, 3)
    assert "7/3" in write_instance(g)


@pytest.mark.parametrize("text,lineno", [
    ("p max 2 1\nn 1 s\nn 2 t\na 1 3 4\n", 4),
    ("p max 2 1\nn 1 s\nn 2 t\na 1 2 -4\n", 4),
    ("n 1 s\np max 2 0\n", 1),
    ("p max 2 1\nn 1 s\nn 2 t\na 1 1 4\n", 4),
    ("p max 2 1\nn 1 s\nx 1\n", 3),
    ("p max 2 2\nn 1 s\nn 2 t\na 1 2 4\n", 0),
    ("p max 2 0\nn 1 s\n", 0),
])
def test_errors_carry_line_numbers(text, lineno):
    with pytest.raises(ParseError) as info:
        parse_instance(text)
    assert info.value.lineno == lineno
    assert str(info.value).startswith("line %d:" % lineno)


def test_reverse_capacity_cannot_be_written():
    g = FlowInstance(2, 0, 1)
    g.add_pair(0, 1, 1, 2)
    with pytest.raises(FlowError):
        write_instance(g)


def test_tree_round_trip_and_checks():
    tree = RepresentingTree({0: None, 1: 0, 2: 1})
    text = write_tree(tree)
    assert text.startswith("d 3")
    again = parse_tree(text, n=3)
    assert again.parent == tree.parent
    with pytest.raises(ParseError):
        parse_tree("d 2\n" + text.split("\n", 1)[1], n=3)
    with pytest.raises(ParseError):
        parse_tree("t 1 0\nt 2 0\n", n=2)
    g = parse_instance("p max 3 1\nn 1 s\nn 3 t\na 2 3 1\n")
    star = RepresentingTree({0: None, 1: 0, 2: 0})
    assert tree_violations(star, g) == [1]


def test_flow_round_trip():
    g = parse_instance(SAMPLE)
    f = [F(5, 2), 0, F(5, 2), 0]
    assert parse_flow(write_flow(g, f), g) == f
    with pytest.raises(ParseError) as info:
        parse_flow("f 1 1\nf 1 2\n", g)
    assert info.value.lineno == 2


@pytest.mark.parametrize("kind", ["random", "bipartite", "node-cap", "layered", "treedepth"])
def test_generated_instances_round_trip(kind):
    inst, tree = generate(kind, 9)
    back = parse_instance(write_instance(inst))
    assert (back.n, back.s, back.t, back.tail, back.head, back.cap) == \
        (inst.n, inst.s, inst.t, inst.tail, inst.head, inst.cap)
    if tree is not None:
        assert parse_tree(write_tree(tree), n=inst.n).parent == tree.parent
