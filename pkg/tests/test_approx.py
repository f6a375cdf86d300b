import random
from fractions import Fraction as F

from hypothesis import given, settings, strategies as st

from strongflow.approx import (
    approx_flow,
    fast_max_flow,
    max_cap_path,
    rounded_capacity,
    rounded_capacity_division_free,
)
from strongflow.flowcore import FlowInstance, basic_acyclic_violations, check_feasible, residuals
from strongflow.oracle import edmonds_karp
from strongflow.selfcheck import approx_suite
from strongflow.values import INF

from conftest import small_instances


def test_widest_path_on_a_path():
    g = FlowInstance(3, 0, 2)
    g.add_pair(0, 1, 3, 0)
    g.add_pair(1, 2, 5, 0)
    assert max_cap_path(g, g.cap) == (3, 0)


def test_widest_path_prefers_the_wider_route():
    g = FlowInstance(2, 0, 1)
    g.add_pair(0, 1, 2, 0)
    g.add_pair(0, 1, 7, 0)
    assert max_cap_path(g, g.cap) == (7, 2)
    h = FlowInstance(3, 0, 2)
    h.add_pair(0, 1, 4, 0)
    assert max_cap_path(h, h.cap) == (0, None)


def test_dinic_examples():
    g = FlowInstance(3, 0, 2)
    g.add_pair(0, 1, 1, 0)
    g.add_pair(1, 2, 1, 0)
    assert fast_max_flow(g, [1, 0, 1, 0]) == [1, 0, 1, 0]
    k = FlowInstance(8, 0, 7)
    for i in range(1, 4):
        k.add_pair(0, i, 1, 0)
        k.add_pair(i + 3, 7, 1, 0)
        for j in range(4, 7):
            k.add_pair(i, j, 1, 0)
    f = fast_max_flow(k, [int(c) for c in k.cap])
    assert sum(f[e] for e in k.adj[0]) == 3


@given(small_instances())
def test_dinic_matches_edmonds_karp_on_integers(inst):
    w = [10 ** 9 if c is INF else int(c * 7) for c in inst.cap]
    int_inst = inst.with_caps([F(x) for x in w])
    f = fast_max_flow(int_inst, w)
    value = sum(f[e] - f[e ^ 1] for e in int_inst.adj[int_inst.s])
    assert value == edmonds_karp(int_inst)[0]


@given(small_instances())
def test_rounding_is_division_free(inst):
    u_bar, e_bar = max_cap_path(inst, inst.cap)
    if e_bar is None:
        return
    M = (4 * inst.n ** 2) ** 5
    for c in inst.cap:
        assert rounded_capacity(c, u_bar, inst.m, M) == rounded_capacity_division_free(c, u_bar, inst.m, M)


@given(small_instances(), st.sampled_from([1, 2, 10]))
def test_certificate_chain(inst, small_M):
    """nu(res) <= m u(e*) <= m nu(res) <= nu / M, for the default M and for tiny ones."""
    nu, _ = edmonds_karp(inst)
    for M in ((4 * inst.n ** 2) ** 5, small_M):
        out = approx_flow(inst, None, M)
        check_feasible(inst, out.flow)
        res = residuals(inst, out.flow)
        nu_res, _ = edmonds_karp(inst.with_caps(res))
        ue = res[out.cert_arc] if out.cert_arc is not None else 0
        assert nu_res <= inst.m * ue <= inst.m * nu_res <= F(nu) / M
        assert "acyclic" not in basic_acyclic_violations(inst, out.flow)


def test_approx_suite_passes():
    (result,) = approx_suite(40, seed=3)
    assert result.ok, result.detail
