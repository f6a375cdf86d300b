import networkx as nx
from hypothesis import given

from strongflow.flowcore import check_feasible, flow_value
from strongflow.oracle import edmonds_karp, max_flow_value
from strongflow.values import INF

from conftest import small_instances

BIG = 10 ** 15


def networkx_value(inst):
    g = nx.DiGraph()
    g.add_nodes_from(range(inst.n))
    for e in range(inst.m):
        c = BIG if inst.cap[e] is INF else inst.cap[e]
        a, b = inst.tail[e], inst.head[e]
        if g.has_edge(a, b):
            g[a][b]["capacity"] += c
        else:
            g.add_edge(a, b, capacity=c)
    return nx.maximum_flow_value(g, inst.s, inst.t)


@given(small_instances())
def test_edmonds_karp_matches_networkx(inst):
    value, f = edmonds_karp(inst)
    check_feasible(inst, f)
    assert flow_value(inst, f) == value
    assert value == networkx_value(inst)
    assert max_flow_value(inst) == value
