import math
from fractions import Fraction as F
from itertools import product

import pytest

from nwalk.intset import IntSet, sumset
from nwalk.walks import count_by_dp, floor_nonneg
from nwalk.netfeas import (NodeCapability, NetworkPath, path_to_nsteps, feasibility_check,
                           compatible_excursions, load_topology, load_capabilities,
                           path_from_nodes, capability_step_set, theory_reference,
                           random_feasibility_rate)

E, D, B, P = (NodeCapability.ENCAP, NodeCapability.DECAP, NodeCapability.BOTH,
              NodeCapability.PASSIVE)


def test_path_translation():
    assert path_to_nsteps([E, B, D]) == (IntSet({1}), IntSet({-1, 1}), IntSet({-1}))
    assert path_to_nsteps([P]) == (IntSet({0}),)
    assert path_to_nsteps(["encap", "Decap"]) == (IntSet({1}), IntSet({-1}))
    with pytest.raises(ValueError):
        NetworkPath(())
    with pytest.raises(ValueError):
        NodeCapability.parse("tunnel")


def test_feasibility_examples():
    assert feasibility_check([E, D])
    assert not feasibility_check([D])
    assert not feasibility_check([D, E, B, P])
    assert feasibility_check([E, B, B, D])
    assert feasibility_check([P, P])
    assert not feasibility_check([E])


def _brute_compatible(walk):
    total = 0
    for pick in product(*[sorted(s) for s in walk]):
        h = 0
        for e in pick:
            h += e
            if h < 0:
                break
        else:
            total += h == 0
    return total


def test_compatible_count_against_brute_force():
    for n in range(7):
        for caps in product((E, D, B, P), repeat=n):
            walk = path_to_nsteps(caps) if caps else ()
            assert compatible_excursions(walk) == _brute_compatible(walk)


def test_feasibility_equals_compatible_excursions_exhaustive():
    # depth-first over all paths of length <= 10 with incremental floored reach
    checked = 0
    stack = [((), IntSet({0}))]
    while stack:
        caps, reach = stack.pop()
        if caps:
            feasible = bool(reach) and reach.min == 0
            assert feasible == (compatible_excursions(path_to_nsteps(caps)) > 0)
            if len(caps) <= 6:
                assert feasibility_check(caps) == feasible
            checked += 1
        if len(caps) < 10:
            for c in (E, D, B, P) if len(caps) < 7 else (E, D, B):
                stack.append((caps + (c,), floor_nonneg(sumset(reach, c.step))))
    assert checked > 100000


def test_topology_and_caps():
    topo = load_topology("a b\nb c  # link\n\nc d\n")
    assert topo["b"] == {"a", "c"}
    caps = load_capabilities("a Encap\nb Both\nd Decap\n")
    path = path_from_nodes(["a", "b", "c", "d"], caps, topo)
    assert path.capabilities == (E, B, P, D)
    assert path.nodes == ("a", "b", "c", "d")
    # 1 -> {0,2} -> {0,2} -> {1}: the stack is never empty again
    assert not feasibility_check(path)
    caps["c"] = B
    assert feasibility_check(path_from_nodes(["a", "b", "c", "d"], caps, topo))
    with pytest.raises(ValueError):
        path_from_nodes(["a", "c"], caps, topo)
    with pytest.raises(ValueError):
        load_topology("a b c\n")
    with pytest.raises(ValueError):
        load_capabilities("a\n")


def test_distribution_validation():
    with pytest.raises(ValueError):
        capability_step_set({"Encap": "1/2", "Decap": "1/3"})
    S = capability_step_set({"Encap": "1/2", "Decap": "1/2", "Both": "0"})
    assert len(S) == 2


def test_uniform_rate_near_quarter():
    dist = {"Encap": "1/3", "Decap": "1/3", "Both": "1/3"}
    est, se, ref = random_feasibility_rate(dist, 150, 100000, seed=2)
    assert ref["regime"] == 1 and ref["asymptotic"] == pytest.approx(0.25)
    exact = float(count_by_dp(capability_step_set(dist), 150, "excursion", "typed")[150])
    assert abs(est - exact) < 4 * se
    assert abs(est - 0.25) < 0.01


def test_encap_only_never_feasible():
    est, se, ref = random_feasibility_rate({"Encap": 1}, 10, 1000)
    assert est == 0 and se == 0


def test_small_lengths_match_dp():
    dist = {"Encap": "1/4", "Decap": "1/4", "Both": "1/4", "Passive": "1/4"}
    S = capability_step_set(dist)
    for n in (3, 6, 10):
        est, se, ref = random_feasibility_rate(dist, n, 40000, seed=n)
        assert ref is None
        exact = float(count_by_dp(S, n, "excursion")[n])
        assert abs(est - exact) <= 4 * math.sqrt(exact * (1 - exact) / 40000)


def test_skewed_distribution_decay_trend():
    dist = {"Encap": "1/3", "Decap": "1/2", "Both": "1/6"}
    S = capability_step_set(dist)
    rates = []
    for n in (20, 40, 80):
        est, se, ref = random_feasibility_rate(dist, n, 100000, seed=n)
        assert ref["regime"] == 2
        exact = float(count_by_dp(S, n, "excursion")[n])
        assert abs(est - exact) < 4 * se + 1e-9
        rates.append((est, ref["asymptotic"]))
    # 1/sqrt(n) decay: doubling the length divides both by about sqrt(2)
    for (e1, t1), (e2, t2) in zip(rates, rates[1:]):
        assert e2 < e1 and t2 < t1
        assert e1 / e2 == pytest.approx(t1 / t2, rel=0.15)


def test_theory_reference_parity():
    dist = {"Encap": "1/3", "Decap": "1/3", "Both": "1/3"}
    assert theory_reference(dist, 7)["asymptotic"] == 0.0
    assert theory_reference(dist, 0)["asymptotic"] == 1.0
