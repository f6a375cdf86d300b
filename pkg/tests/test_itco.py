import random

import pytest
from hypothesis import given, strategies as st

from strongflow.itco import (
    BACKENDS,
    ItalianoItco,
    ItcoError,
    OrderedItco,
    RepresentingTree,
    TreeDepthItco,
    TreeRespectError,
    check_cover,
    make_itco,
    oracle_closure,
    restricted_closure_oracle,
)
from strongflow.selfcheck import itco_suite


def random_arcs(rng, n, m):
    out = []
    for _ in range(m):
        a, b = rng.sample(range(n), 2)
        out.append((a, b))
    return out


# ----------------------------------------------------------------- italiano

def test_italiano_lists_transitive_pair_with_witness():
    it = ItalianoItco(range(3))
    assert it.tc_add([(0, 1), (1, 2)]) == [(0, 1), (1, 2)]
    assert (0, 2) in it.estar and it.L.wit(0, 2) == 1
    assert it.tc_add([(0, 1)]) == []                  # re-adding is a no-op
    assert it.tc_add([(0, 2)]) == []                  # already implied
    assert it.implied == {(0, 2)} and len(it.L) == 3


def test_italiano_cover_branches():
    it = ItalianoItco(range(5))
    it.tc_add([(0, 1), (1, 2), (2, 3), (3, 4)])
    V, E = it.tc_cover({0, 4})                         # 4 <= |E|: restricted closure
    assert V == {0, 4} and E == [(0, 4)]
    V, E = it.tc_cover({0, 2, 4})                      # 9 > |E|: whole graph
    assert V == set(range(5)) and len(E) == 4
    assert check_cover(it.arcs, {0, 2, 4}, (V, E))


@given(st.integers(0, 10 ** 6))
def test_italiano_work_and_list_size(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 15)
    it = ItalianoItco(range(n))
    for arc in random_arcs(rng, n, rng.randint(0, 3 * n)):
        it.tc_add([arc])
    E = len(it.arcs)
    assert it.addout_calls <= 2 * (n + E) * n
    assert len(it.L) <= n * n
    assert it.estar == oracle_closure(n, it.arcs)
    assert it.L.is_out_rooted()


# ---------------------------------------------------------------- treedepth

def test_treedepth_on_a_path_tree():
    tree = RepresentingTree.path([0, 1, 2])
    it = TreeDepthItco(range(3), tree)
    it.tc_add([(2, 1), (1, 0)])
    assert it.estar == restricted_closure_oracle(tree, it.arcs) == {(2, 1), (1, 0), (2, 0)}
    V, E = it.tc_cover({2})
    assert V == {0, 1, 2} and check_cover(it.arcs, {2}, (V, E))


def test_treedepth_rejects_sibling_arcs():
    tree = RepresentingTree({0: None, 1: 0, 2: 0})
    it = TreeDepthItco(range(3), tree)
    with pytest.raises(TreeRespectError):
        it.tc_add([(1, 2)])
    with pytest.raises(ItcoError):
        make_itco("treedepth", range(3))


def test_treedepth_star_cover_is_linear():
    k = 12
    tree = RepresentingTree({0: None, **{i: 0 for i in range(1, k + 1)}})
    it = TreeDepthItco(range(k + 1), tree)
    for i in range(1, k + 1):
        it.tc_add([(i, 0), (0, i)])
    S = set(range(1, k + 1))
    V, E = it.tc_cover(S)
    assert check_cover(it.arcs, S, (V, E))
    closure_on_S = [(a, b) for a, b in oracle_closure(k + 1, it.arcs) if a in S and b in S]
    assert len(E) <= 2 * len(S)
    assert len(closure_on_S) == k * (k - 1)


def test_tree_helpers():
    t = RepresentingTree({0: None, 1: 0, 2: 1, 3: 0})
    assert t.D == 3 and t.anc(2) == (2, 1, 0)
    assert t.related(2, 0) and not t.related(2, 3)
    top = t.with_top([3, 1])
    assert top.root == 3 and top.parent[1] == 3
    assert top.is_ancestor(0, 2)
    dfs = RepresentingTree.from_dfs(range(5), [(0, 1), (1, 2), (3, 4)])
    for a, b in [(0, 1), (1, 2), (3, 4)]:
        assert dfs.related(a, b)
    with pytest.raises(ItcoError):
        RepresentingTree({0: None, 1: None})


@given(st.integers(0, 10 ** 6))
def test_treedepth_closure_matches_oracle(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 14)
    parent = {0: None}
    for v in range(1, n):
        parent[v] = rng.randrange(v)
    tree = RepresentingTree(parent)
    it = TreeDepthItco(range(n), tree)
    related = [(a, b) for a in range(n) for b in range(n) if a != b and tree.related(a, b)]
    for _ in range(rng.randint(0, 3 * n)):
        if related:
            it.tc_add([rng.choice(related)])
    assert it.estar == restricted_closure_oracle(tree, it.arcs)
    S = set(rng.sample(range(n), rng.randint(1, n)))
    V, E = it.tc_cover(S)
    assert check_cover(it.arcs, S, (V, E))
    it.L.validate()


# ------------------------------------------------------------------ ordered

def test_ordered_reorder_updates_counters():
    it = OrderedItco(range(8))
    assert it.K == 3 and it.v[1:] == [2, 4, 8]
    assert not it.check_invariants()
    it.tc_add([(0, 1), (1, 2), (2, 7)])
    it.tc_reorder([7], {7: 5})
    assert it.order[0] == 7
    assert not it.check_invariants()
    assert all(it.t[k] <= it.v[k] / 2 for k in range(1, it.K + 1))


@given(st.integers(0, 10 ** 6))
def test_ordered_invariants_under_random_steps(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 16)
    it = OrderedItco(range(n), {a: rng.randint(0, 5) for a in range(n)})
    for _ in range(20):
        if rng.random() < 0.6:
            it.tc_add([tuple(rng.sample(range(n), 2))])
        else:
            S = rng.sample(range(n), rng.randint(1, min(3, n)))
            before = it.prefix_of(S)
            t_before = list(it.t)
            updates = it.updates
            it.tc_reorder(S, {a: rng.randint(0, 9) for a in S})
            if it.updates == updates:
                assert it.t[1:] == [x + before for x in t_before[1:]]
        assert not it.check_invariants()
        Q = set(rng.sample(range(n), rng.randint(1, n)))
        V, E = it.tc_cover(Q)
        assert check_cover(it.arcs, Q, (V, E))
        smallest = min(k for k in range(1, it.K + 1) if Q <= it.sets[k])
        assert len(V) == it.v[smallest]
    assert len(it.new_transitive_pairs) <= n * n


# ----------------------------------------------------------- all backends

@pytest.mark.parametrize("name", BACKENDS)
def test_every_backend_covers(name):
    rng = random.Random(11)
    n = 10
    tree = RepresentingTree.path(range(n))
    it = make_itco(name, range(n), tree=tree)
    arcs = random_arcs(rng, n, 25)
    it.tc_add(arcs)
    for _ in range(10):
        S = set(rng.sample(range(n), rng.randint(1, n)))
        assert check_cover(it.arcs, S, it.tc_cover(S))
    it.tc_wit_list().validate()


def test_cover_checker_catches_a_dropped_arc():
    it = ItalianoItco(range(4))
    it.tc_add([(0, 1), (1, 2), (2, 3)])
    V, E = it.tc_cover({0, 1, 2, 3})
    assert check_cover(it.arcs, V, (V, E))
    assert not check_cover(it.arcs, V, (V, E[:-1]))


def test_itco_suite_passes():
    for result in itco_suite(20, seed=2):
        assert result.ok, result.line()
