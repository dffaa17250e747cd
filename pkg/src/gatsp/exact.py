"""Exact optimal tours for small instances: full enumeration and Held-Karp."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

import numpy as np

from .tsp import Instance, Tour, TSPError, tour_cost

BRUTE_FORCE_MAX = 12
HELD_KARP_MAX = 18


class SizeError(TSPError):
    pass


@dataclass(frozen=True)
class ExactResult:
    tour: Tour
    cost: float
    nodes_explored: int


@lru_cache(maxsize=4)
def _perm_table(k: int) -> np.ndarray:
    if k == 0:
        return np.zeros((1, 0), dtype=np.int8)
    return np.array(list(permutations(range(k))), dtype=np.int8)


def brute_force_optimal(inst: Instance) -> ExactResult:
    """Enumerate every undirected tour once and return a cheapest one.

    City 1 is fixed first and the second city is smaller than the last, so
    each of the (n-1)!/2 tours appears exactly once. Ties go to the
    lexicographically smallest tour.
    """
    n = inst.n
    if not 3 <= n <= BRUTE_FORCE_MAX:
        raise SizeError(f"brute force handles 3 <= n <= {BRUTE_FORCE_MAX}, got n={n}")
    d = inst.distance_matrix()
    table = _perm_table(n - 3)
    best_cost, best_tours, explored = np.inf, [], 0
    # outer loop picks (second, last); the table fills the middle
    for second in range(1, n):
        for last in range(second + 1, n):
            others = np.array([c for c in range(1, n) if c not in (second, last)], dtype=np.intp)
            mid = others[table]
            m = len(mid)
            first = np.zeros((m, 1), dtype=np.intp)
            tours = np.hstack([first, np.full((m, 1), second), mid, np.full((m, 1), last)])
            costs = d[tours, np.roll(tours, -1, axis=1)].sum(axis=1)
            explored += m
            lo = costs.min()
            if lo < best_cost:
                best_cost, best_tours = lo, []
            if lo == best_cost:
                best_tours.extend(map(tuple, tours[costs == lo] + 1))
    tour = min(tuple(int(c) for c in t) for t in best_tours)
    return ExactResult(tour, tour_cost(inst, tour), explored)


def held_karp_optimal(inst: Instance) -> ExactResult:
    """Subset dynamic program, O(n^2 2^n), with tour reconstruction."""
    n = inst.n
    if not 3 <= n <= HELD_KARP_MAX:
        raise SizeError(f"Held-Karp handles 3 <= n <= {HELD_KARP_MAX}, got n={n}")
    d = inst.distance_matrix()
    m = n - 1                          # cities 2..n become bits 0..m-1
    dm = d[1:, 1:]
    full = 1 << m
    cost = np.full((full, m), np.inf)
    parent = np.full((full, m), -1, dtype=np.int8)
    for k in range(m):
        cost[1 << k, k] = d[0, k + 1]

    bits = ((np.arange(full)[:, None] >> np.arange(m)) & 1).astype(bool)
    explored = m
    for mask in range(1, full):
        ks = np.flatnonzero(bits[mask])
        if ks.size < 2:
            continue
        # cost[prev, j] stays inf for j outside prev, so no extra masking
        cand = cost[mask ^ (1 << ks)] + dm[:, ks].T
        best = np.argmin(cand, axis=1)
        cost[mask, ks] = cand[np.arange(ks.size), best]
        parent[mask, ks] = best
        explored += ks.size * (ks.size - 1)

    last_mask = full - 1
    closing = cost[last_mask] + d[1:, 0]
    k = int(np.argmin(closing))
    order = []
    mask = last_mask
    while k >= 0:
        order.append(k + 2)
        k, mask = int(parent[mask, k]), mask ^ (1 << k)
    tour = (1,) + tuple(reversed(order))
    return ExactResult(tour, tour_cost(inst, tour), explored)
