from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from strongflow import EngineConfig, FlowInstance, UnboundedError, solve
from strongflow.engine import Engine
from strongflow.flowcore import check_feasible, cut_capacity, flow_value, normalize_input
from strongflow.generators import generate
from strongflow.itco import BACKENDS
from strongflow.oracle import max_flow_value
from strongflow.values import INF

from conftest import small_instances

# Maximum flow values computed once with networkx (infinite capacity as 10**15) and frozen.
FROZEN = [
    ("random", 1, {"n": 40, "m": 200}, 2419343, 40, 200),
    ("bipartite", 7, {"left": 3, "right": 3}, 7, 14, 21),
    ("layered", 0, {"T": 5, "width": 4, "K": 1}, 201, 22, 40),
    ("treedepth", 0, {"n": 60, "D": 6, "m": 150}, 5702743, 60, 115),
    ("node-cap", 2, {"n": 20, "m": 60}, 58, 38, 74),
    ("random", 5, {"n": 12, "m": 30}, 715748, 12, 30),
]


def config_for(name, tree=None, **kw):
    return EngineConfig(itco=name, tree=tree, **kw)


def test_two_arc_path():
    g = FlowInstance(3, 0, 2)
    g.add_pair(0, 1, 3, 0)
    g.add_pair(1, 2, 5, 0)
    out = solve(g)
    assert out.value == 3
    assert out.flow[0] == 3 and out.flow[2] == 3
    assert out.cut.capacity == 3


@pytest.mark.parametrize("kind,seed,size,value,n,pairs", FROZEN)
@pytest.mark.parametrize("backend", ["italiano", "treedepth", "ordered"])
def test_frozen_values(kind, seed, size, value, n, pairs, backend):
    inst, tree = generate(kind, seed, **size)
    assert (inst.n, inst.m // 2) == (n, pairs)
    out = solve(inst, config_for(backend, tree if backend == "treedepth" else None, check=True))
    assert out.value == value
    check_feasible(inst, out.flow)
    assert cut_capacity(inst, out.cut.source_side) == value


def test_treedepth_backend_with_generated_trees():
    for kind, size in (("bipartite", {"left": 4, "right": 5}), ("layered", {"T": 6, "width": 3, "K": 2})):
        inst, tree = generate(kind, 3, **size)
        ref = max_flow_value(inst)
        out = solve(inst, config_for("treedepth", tree, check=True, oracle_check=True))
        assert out.value == ref


@settings(max_examples=40)
@given(small_instances())
def test_engine_matches_oracle(inst):
    ref = max_flow_value(inst)
    for name in BACKENDS:
        out = solve(inst, config_for(name, check=True, oracle_check=True))
        check_feasible(inst, out.flow)
        assert out.value == ref == flow_value(inst, out.flow)
        assert out.cut.capacity == ref


def test_fractional_capacities():
    g = FlowInstance(4, 0, 3)
    g.add_pair(0, 1, F(1, 3), 0)
    g.add_pair(0, 2, F(2, 7), 0)
    g.add_pair(1, 2, F(5, 11), F(1, 2))
    g.add_pair(1, 3, F(1, 5), 0)
    g.add_pair(2, 3, INF, 0)
    out = solve(g, EngineConfig(check=True, oracle_check=True))
    assert out.value == max_flow_value(g)


def test_unbounded_instance_is_rejected():
    g = FlowInstance(3, 0, 2)
    g.add_pair(0, 1, INF, 0)
    g.add_pair(1, 2, INF, 0)
    with pytest.raises(UnboundedError):
        solve(g)


def test_post_process_with_zero_delta_keeps_the_flow():
    inst, _ = generate("random", 4, n=10, m=25)
    engine = Engine(normalize_input(inst))
    engine.initialize()
    f = list(engine.f)
    engine.post_process(0, range(engine.G.m))
    assert engine.f == f
    assert all(x == 0 for x in engine.r)


def test_metrics_keys():
    inst, _ = generate("random", 1, n=15, m=40)
    out = solve(inst)
    for key in ("iterations", "m_c", "ess_total", "ess_per_mc", "per_iteration", "F_e", "F_s",
                "tc_add_total", "cover_arcs_total", "witness_entries", "phase_seconds",
                "backend", "n", "m", "value", "cut_value", "total_seconds"):
        assert key in out.metrics
    assert out.metrics["value"] == out.value
    assert out.metrics["iterations"] == len(out.metrics["per_iteration"])
