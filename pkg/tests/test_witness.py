import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from strongflow.selfcheck import random_reverse_set, random_rooted_list, witness_suite
from strongflow.witness import (
    WitnessError,
    WitnessList,
    divergence,
    is_simple_path,
    wit_route,
    wit_route_oracle,
)


def chain():
    L = WitnessList()
    L.append(0, 1, 1)
    L.append(1, 2, 2)
    L.append(0, 2, 1)
    return L


def test_append_and_walk():
    L = chain()
    assert L.arcs() == [(0, 1), (1, 2)]
    assert L.pairs() == [(0, 1), (1, 2), (0, 2)]
    assert L.walk(0, 2) == [(0, 1), (1, 2)]
    assert L.is_rooted()
    with pytest.raises(WitnessError):
        L.append(0, 3, 2)          # (2, 3) was never listed
    with pytest.raises(WitnessError):
        L.append(0, 2, 2)
    with pytest.raises(WitnessError):
        L.walk(2, 0)


def test_unrooted_list_is_detected():
    L = WitnessList()
    for a in range(4):
        L.append(a, a + 1, a + 1)
    L.append(0, 2, 1)
    L.append(2, 4, 3)
    L.append(0, 4, 2)              # neither half is a single arc
    assert not L.is_rooted()


def test_route_examples():
    L = chain()
    assert wit_route(L, {(0, 2): F(5)}) == {(0, 1): 5, (1, 2): 5}
    arcs_only = {(0, 1): F(2), (1, 2): F(-1)}
    assert wit_route(L, arcs_only) == arcs_only


def test_reverse_set_routes_onto_the_reverse():
    L = WitnessList()
    L.append(1, 0, 0)
    L.append(0, 1, 1)
    assert wit_route(L, {(0, 1): F(3)}, R=[(0, 1)]) == {(1, 0): -3}
    with pytest.raises(WitnessError):
        wit_route(L, {}, R=[(1, 0)])   # its reverse comes later


def test_dump_parse_round_trip():
    L = chain()
    assert WitnessList.parse(L.dump()).entries == L.entries


@given(st.integers(0, 10 ** 6))
def test_route_matches_oracle(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 10)
    L = random_rooted_list(rng, n, rng.randint(1, 3 * n))
    f = {pr: F(rng.randint(-9, 9), rng.randint(1, 3)) for pr in L.pairs() if rng.random() < 0.6}
    R = random_reverse_set(rng, L)
    g = wit_route(L, f, R)
    assert g == wit_route_oracle(L, f, R)
    assert divergence(g) == divergence(f)
    assert all(L.is_arc(a, b) for a, b in g)
    if L.is_rooted():
        for a, b in L.pairs():
            assert is_simple_path(L.walk(a, b), a, b)


def test_witness_suite_passes():
    (result,) = witness_suite(60, seed=5)
    assert result.ok, result.detail
