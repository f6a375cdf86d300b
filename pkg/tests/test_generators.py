import pytest

from strongflow.flowcore import is_bounded
from strongflow.formats import tree_violations, write_instance
from strongflow.generators import KINDS, generate, layered_instance, treedepth_instance
from strongflow.values import INF


@pytest.mark.parametrize("kind", KINDS)
def test_deterministic_and_bounded(kind):
    a, ta = generate(kind, 4)
    b, tb = generate(kind, 4)
    assert write_instance(a) == write_instance(b)
    assert is_bounded(a)
    assert not any({a.tail[p], a.head[p]} == {a.s, a.t} for p in range(0, a.m, 2))
    if ta is not None:
        assert ta.parent == tb.parent
        assert not tree_violations(ta, a)
        assert set(ta.parent) == set(range(a.n))


def test_bipartite_shape():
    inst, _ = generate("bipartite", 1, left=4, right=6, degree=2)
    assert inst.n == 2 * 10 + 2
    finite = [p for p in range(0, inst.m, 2) if inst.cap[p] is not INF]
    assert len(finite) == 10                      # one split arc per node
    assert inst.m // 2 == 10 + 4 + 6 + 4 * 2


def test_layered_tree_depth():
    inst, tree = layered_instance(16, 3, K=2, seed=0)
    assert not tree_violations(tree, inst)
    assert tree.D <= 2 + 2 * 3 * 5


def test_treedepth_respects_depth():
    inst, tree = treedepth_instance(200, 7, 500, seed=2)
    assert tree.D <= 7
    assert not tree_violations(tree, inst)
    assert tree.parent[1] == 0 and tree.parent[0] is None
