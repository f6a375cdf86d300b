"""Evacuation over time on a layered network, solved with the tree-depth cover.

Holding at a location costs nothing, moving between locations is
capacitated.  The generator supplies a representing tree of small depth,
which the tree-depth backend needs; the demo compares its cover sizes with
the general backend on the same instance.
"""

from strongflow import EngineConfig, solve
from strongflow.generators import layered_instance
from strongflow.oracle import max_flow_value


def main():
    inst, tree = layered_instance(T=12, width=4, K=2, seed=5)
    print("instance: %d nodes, %d arcs, representing tree depth %d" % (inst.n, inst.m // 2, tree.D))
    ref = max_flow_value(inst)
    for backend, t in (("treedepth", tree), ("italiano", None)):
        res = solve(inst, EngineConfig(itco=backend, tree=t))
        mt = res.metrics
        print("%-10s value %s (reference %s), %d iterations, %d cover arcs for %d query nodes"
              % (backend, res.value, ref, mt["iterations"], mt["cover_arcs_total"], mt["cover_query_nodes"]))


if __name__ == "__main__":
    main()
