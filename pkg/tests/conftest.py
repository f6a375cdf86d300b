import random
from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

from strongflow.flowcore import FlowInstance, is_bounded
from strongflow.values import INF

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def random_small_instance(rng: random.Random, max_n: int = 8, inf_frac: float = 0.15,
                          two_way: bool = True) -> FlowInstance:
    """Small instance with rational capacities, occasional infinite arcs and reverse capacities."""
    n = rng.randint(2, max_n)
    inst = FlowInstance(n, 0, n - 1)

    def cap():
        r = rng.random()
        if r < inf_frac:
            return INF
        if r < inf_frac + 0.15:
            return Fraction(0)
        return Fraction(rng.randint(1, 20), rng.choice([1, 1, 2, 3]))

    for _ in range(rng.randint(0, 3 * n)):
        a, b = rng.sample(range(n), 2)
        c1 = cap()
        c2 = cap() if two_way else Fraction(0)
        if c1 is INF and c2 is INF:
            c2 = Fraction(1)
        inst.add_pair(a, b, c1, c2)
    return inst


@st.composite
def small_instances(draw, max_n=8, bounded=True):
    seed = draw(st.integers(0, 2 ** 32 - 1))
    rng = random.Random(seed)
    while True:
        inst = random_small_instance(rng, max_n)
        if not bounded or is_bounded(inst):
            return inst
