from itertools import permutations

import numpy as np
import pytest

from gatsp.exact import SizeError, brute_force_optimal, held_karp_optimal
from gatsp.operators import mutate_rsm, mutate_twors
from gatsp.tsp import Instance, tour_cost, tour_space_size, validate_tour

from conftest import random_instance


def all_tours_min(inst):
    return min(tour_cost(inst, (1,) + p) for p in permutations(range(2, inst.n + 1)))


@pytest.mark.parametrize("solver", [brute_force_optimal, held_karp_optimal])
def test_small_fixed_cases(solver, square, collinear):
    assert solver(square).cost == 4
    assert solver(collinear).cost == 4


def test_brute_force_counts_every_tour_once():
    inst = random_instance(np.random.default_rng(0), 7)
    assert brute_force_optimal(inst).nodes_explored == tour_space_size(7)


def test_brute_force_tie_break(square):
    # both orientations of the perimeter cost 4; the canonical one is returned
    assert brute_force_optimal(square).tour == (1, 2, 3, 4)


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7, 8])
def test_against_plain_enumeration(n):
    rng = np.random.default_rng(n)
    for metric in ("real", "rounded"):
        inst = random_instance(rng, n, metric=metric)
        expected = all_tours_min(inst)
        bf = brute_force_optimal(inst)
        hk = held_karp_optimal(inst)
        assert bf.cost == pytest.approx(expected, abs=1e-9)
        assert hk.cost == pytest.approx(expected, abs=1e-9)
        assert tour_cost(inst, bf.tour) == bf.cost
        assert validate_tour(hk.tour, n) is None


def test_oracle_agreement_many_instances():
    rng = np.random.default_rng(2024)
    sizes = [3, 4, 5, 6, 7, 8, 9, 10] * 7 + [11]
    for n in sizes:
        inst = random_instance(rng, n)
        assert brute_force_optimal(inst).cost == held_karp_optimal(inst).cost


def test_held_karp_larger_than_brute_force():
    inst = random_instance(np.random.default_rng(9), 14)
    res = held_karp_optimal(inst)
    assert validate_tour(res.tour, 14) is None
    assert res.cost == tour_cost(inst, res.tour)


def test_local_optimality_witness():
    rng = np.random.default_rng(17)
    for _ in range(10):
        inst = random_instance(rng, 9, metric="real")
        res = held_karp_optimal(inst)
        n = inst.n
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                assert tour_cost(inst, mutate_twors(res.tour, i, j)) >= res.cost - 1e-9
                if i < j:
                    assert tour_cost(inst, mutate_rsm(res.tour, i, j)) >= res.cost - 1e-9


@pytest.mark.parametrize("solver,n", [(brute_force_optimal, 2), (brute_force_optimal, 13),
                                      (held_karp_optimal, 2), (held_karp_optimal, 19)])
def test_size_limits(solver, n):
    inst = Instance.from_coords(np.arange(2 * n, dtype=float).reshape(n, 2))
    with pytest.raises(SizeError):
        solver(inst)
