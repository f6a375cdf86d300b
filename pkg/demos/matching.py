"""Assign workers to shifts with per-person limits, as a b-matching flow.

Each worker and shift becomes an in/out node pair joined by an arc holding
its limit; who may work which shift is an uncapacitated arc.  The minimum
cut names the bottleneck people.
"""

from strongflow import EngineConfig, solve
from strongflow.generators import bipartite_instance
from strongflow.values import INF


def main():
    workers, shifts = 6, 5
    inst, _ = bipartite_instance(workers, shifts, seed=3, degree=2, max_b=3)
    result = solve(inst, EngineConfig(check=True))
    print("assigned %s worker-shifts in %d iterations" % (result.value, result.metrics["iterations"]))

    limits = [p for p in range(0, inst.m, 2) if inst.cap[p] is not INF]
    for k, p in enumerate(limits):
        who = ("worker %d" % k) if k < workers else ("shift %d" % (k - workers))
        print("  %-9s limit %s, used %s" % (who, inst.cap[p], result.flow[p]))

    side = result.cut.source_side
    tight = [k for k, p in enumerate(limits) if inst.tail[p] in side and inst.head[p] not in side]
    print("cut of capacity %s through the limits of %s" % (result.cut.capacity, tight))


if __name__ == "__main__":
    main()
