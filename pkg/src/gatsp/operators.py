"""Roulette selection, ordered crossover and six permutation mutations.

Every operator comes as a deterministic core that takes explicit 1-based
positions and returns a new tuple, plus a randomized wrapper that draws
those positions from a :class:`numpy.random.Generator`.
"""
from __future__ import annotations

import enum
from bisect import bisect_right
from itertools import accumulate
from typing import Sequence

import numpy as np

from .tsp import Tour, TSPError


class MutationKind(enum.Enum):
    TWORS = "twors"
    CIM = "cim"
    RSM = "rsm"
    THROAS = "throas"
    THRORS = "thrors"
    PSM = "psm"

    @classmethod
    def parse(cls, value: "str | MutationKind") -> "MutationKind":
        if isinstance(value, MutationKind):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            names = ", ".join(m.value for m in cls)
            raise TSPError(f"unknown mutation {value!r} (expected one of {names})") from None



# --- selection -----------------------------------------------------------

def selection_weights(costs: Sequence[float]) -> np.ndarray:
    """Minimization roulette weights ``(1 - f_i / sum f) / (N - 1)``."""
    f = np.asarray(costs, dtype=float)
    if f.ndim != 1 or f.size < 2:
        raise TSPError("selection needs at least two individuals")
    if not np.all(f > 0):
        raise TSPError("selection needs strictly positive costs")
    return (1.0 - f / f.sum()) / (f.size - 1)


def roulette_pick(weights: Sequence[float], r: float) -> int:
    """1-based index of the first slot whose cumulative weight exceeds ``r``."""
    if not 0.0 <= r < 1.0:
        raise TSPError(f"roulette draw must lie in [0, 1), got {r}")
    cum = list(accumulate(float(w) for w in weights))
    # cumulative rounding can leave the total a hair under r
    return min(bisect_right(cum, r), len(cum) - 1) + 1


# --- crossover -----------------------------------------------------------

def _check_positions(n: int, *pos: int) -> None:
    for p in pos:
        if not 1 <= p <= n:
            raise TSPError(f"position {p} out of range 1..{n}")


def _ox_child(donor: Sequence[int], base: Sequence[int], a: int, b: int) -> list[int]:
    n = len(base)
    child = list(donor)
    segment = set(donor[a - 1:b])
    fill = [c for c in base[b:] + base[:b] if c not in segment]
    slots = list(range(b, n)) + list(range(0, a - 1))
    for pos, city in zip(slots, fill):
        child[pos] = city
    return child


def ox_crossover(p1: Sequence[int], p2: Sequence[int], a: int, b: int) -> tuple[Tour, Tour]:
    """Ordered crossover with inclusive cuts ``1 <= a <= b <= n``.

    ``child1`` keeps ``p2[a..b]`` in place and fills the remaining slots,
    starting after ``b`` and wrapping, with ``p1``'s other cities in
    ``p1``'s cyclic order from position ``b + 1``. ``child2`` swaps roles.
    """
    p1, p2 = list(p1), list(p2)
    n = len(p1)
    if len(p2) != n:
        raise TSPError(f"parents differ in length ({n} vs {len(p2)})")
    if not 1 <= a <= b <= n:
        raise TSPError(f"cut points must satisfy 1 <= a <= b <= {n}, got a={a}, b={b}")
    return tuple(_ox_child(p2, p1, a, b)), tuple(_ox_child(p1, p2, a, b))


# --- mutation cores ------------------------------------------------------

def mutate_twors(t: Sequence[int], i: int, j: int) -> Tour:
    """Swap the genes at positions ``i`` and ``j``."""
    _check_positions(len(t), i, j)
    out = list(t)
    out[i - 1], out[j - 1] = out[j - 1], out[i - 1]
    return tuple(out)


def mutate_cim(t: Sequence[int], c: int) -> Tour:
    """Reverse positions ``1..c`` and ``c+1..n`` independently."""
    n = len(t)
    if not 1 <= c <= n - 1:
        raise TSPError(f"CIM cut must satisfy 1 <= c <= {n - 1}, got {c}")
    t = tuple(t)
    return t[c - 1::-1] + t[:c - 1:-1]


def mutate_rsm(t: Sequence[int], i: int, j: int) -> Tour:
    """Reverse the block at positions ``i..j`` (``i < j``)."""
    n = len(t)
    if not 1 <= i < j <= n:
        raise TSPError(f"RSM needs 1 <= i < j <= {n}, got i={i}, j={j}")
    t = tuple(t)
    return t[:i - 1] + t[i - 1:j][::-1] + t[j:]


def mutate_throas(t: Sequence[int], i: int) -> Tour:
    """Rotate the three genes at ``i, i+1, i+2`` one step right."""
    n = len(t)
    if n < 3 or not 1 <= i <= n - 2:
        raise TSPError(f"Throas needs n >= 3 and 1 <= i <= n-2, got n={n}, i={i}")
    out = list(t)
    k = i - 1
    out[k], out[k + 1], out[k + 2] = t[k + 2], t[k], t[k + 1]
    return tuple(out)


def mutate_thrors(t: Sequence[int], i: int, j: int, l: int) -> Tour:
    """Move gene ``i`` to ``j``, gene ``j`` to ``l`` and gene ``l`` to ``i``."""
    n = len(t)
    if not 1 <= i < j < l <= n:
        raise TSPError(f"Thrors needs 1 <= i < j < l <= {n}, got ({i}, {j}, {l})")
    out = list(t)
    out[j - 1], out[l - 1], out[i - 1] = t[i - 1], t[j - 1], t[l - 1]
    return tuple(out)


def mutate_psm(t: Sequence[int], decisions: Sequence[tuple[bool, int]]) -> Tour:
    """Left-to-right swap scan: where ``decisions[i]`` applies, swap ``i`` with its partner."""
    n = len(t)
    if len(decisions) != n:
        raise TSPError(f"PSM needs one decision per gene ({n}), got {len(decisions)}")
    out = list(t)
    for i, (apply, j) in enumerate(decisions):
        if not 1 <= j <= n:
            raise TSPError(f"PSM partner {j} out of range 1..{n}")
        if apply:
            out[i], out[j - 1] = out[j - 1], out[i]
    return tuple(out)


# --- random parameter draws ----------------------------------------------

def random_pair(rng: np.random.Generator, m: int) -> tuple[int, int]:
    """Uniform 2-subset ``x < y`` of ``1..m``."""
    x = int(rng.integers(m))
    y = int(rng.integers(m - 1))
    if y >= x:
        y += 1
    if x > y:
        x, y = y, x
    return x + 1, y + 1


def random_cuts(rng: np.random.Generator, n: int) -> tuple[int, int]:
    """Uniform over ``{(a, b): 1 <= a <= b <= n}``."""
    # (a, b) <-> the 2-subset {a, b + 1} of 1..n+1
    x, y = random_pair(rng, n + 1)
    return x, y - 1


def random_ox(p1, p2, rng: np.random.Generator) -> tuple[Tour, Tour]:
    a, b = random_cuts(rng, len(p1))
    return ox_crossover(p1, p2, a, b)


def _draw_and_mutate(kind: MutationKind, t: Sequence[int], rng: np.random.Generator,
                     gene_prob: float, forced: bool = False) -> Tour:
    n = len(t)
    if kind is MutationKind.TWORS:
        i, j = rng.integers(1, n + 1, size=2)
        return mutate_twors(t, int(i), int(j))
    if kind is MutationKind.CIM:
        return mutate_cim(t, int(rng.integers(1, n)))
    if kind is MutationKind.RSM:
        return mutate_rsm(t, *random_pair(rng, n))
    if kind is MutationKind.THROAS:
        return mutate_throas(t, int(rng.integers(1, n - 1)))
    if kind is MutationKind.THRORS:
        i, j, l = np.sort(rng.choice(n, size=3, replace=False)) + 1
        return mutate_thrors(t, int(i), int(j), int(l))
    apply = rng.random(n) < gene_prob
    if forced and not apply.any():
        apply[rng.integers(n)] = True
    partners = rng.integers(0, n, size=n)
    # same left-to-right swap scan as mutate_psm, skipping idle genes
    out = list(t)
    for i in np.flatnonzero(apply).tolist():
        j = int(partners[i])
        out[i], out[j] = out[j], out[i]
    return tuple(out)


def apply_mutation(kind: "MutationKind | str", t: Sequence[int], p_m: float,
                   rng: np.random.Generator) -> Tour:
    """Randomized mutation.

    PSM scans every gene with per-gene probability ``p_m``. The other kinds
    fire once with probability ``p_m``, drawing their positions uniformly.
    """
    kind = MutationKind.parse(kind)
    if not 0.0 <= p_m <= 1.0:
        raise TSPError(f"mutation probability must lie in [0, 1], got {p_m}")
    n = len(t)
    if n < 3:
        raise TSPError(f"mutation needs n >= 3, got {n}")
    if kind is MutationKind.PSM:
        return _draw_and_mutate(kind, t, rng, p_m)
    if rng.random() >= p_m:
        return tuple(t)
    return _draw_and_mutate(kind, t, rng, p_m)


def force_mutation(kind: "MutationKind | str", t: Sequence[int], rng: np.random.Generator,
                   gene_prob: float) -> Tour:
    """One unconditional application (used to seed populations).

    For PSM at least one gene is guaranteed to fire.
    """
    kind = MutationKind.parse(kind)
    if len(t) < 3:
        raise TSPError(f"mutation needs n >= 3, got {len(t)}")
    return _draw_and_mutate(kind, t, rng, gene_prob, forced=True)
