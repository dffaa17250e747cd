"""scikit-learn style wrappers: fit on an ``(n, 2)`` coordinate array.

``fit`` solves the tour; ``transform`` returns the rows of ``X`` in visiting
order, so the solvers drop into pipelines and ``GridSearchCV``.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .engine import GaConfig, run_ga
from .exact import BRUTE_FORCE_MAX, brute_force_optimal, held_karp_optimal
from .tsp import Instance, batch_cost


def check_coords(X, min_cities: int = 3) -> np.ndarray:
    X = check_array(X, dtype=np.float64, ensure_min_samples=min_cities)
    if X.shape[1] != 2:
        raise ValueError(f"expected planar coordinates with 2 columns, got {X.shape[1]}")
    return X


class _TourMixin(TransformerMixin):
    def _set_tour(self, X, tour, cost):
        self.tour_ = tuple(tour)
        self.order_ = np.asarray(tour, dtype=np.intp) - 1
        self.cost_ = cost
        self.n_features_in_ = X.shape[1]
        self.n_cities_ = X.shape[0]

    def _check_same_cities(self, X):
        check_is_fitted(self, "order_")
        X = check_coords(X)
        if X.shape[0] != self.n_cities_:
            raise ValueError(f"fitted on {self.n_cities_} cities, got {X.shape[0]}")
        return X

    def transform(self, X):
        """Rows of ``X`` reordered along the fitted tour."""
        X = self._check_same_cities(X)
        return X[self.order_]

    def score(self, X, y=None):
        """Negative length of the fitted tour over ``X`` (higher is better)."""
        X = self._check_same_cities(X)
        inst = Instance.from_coords(X, metric=self.metric)
        return -float(batch_cost(inst, np.asarray(self.tour_)[None, :])[0])


class GeneticTSP(_TourMixin, BaseEstimator):
    """Genetic-algorithm tour for a set of planar points.

    Parameters mirror :class:`gatsp.engine.GaConfig`; ``elite=None`` keeps
    half the population by truncation each generation.

    Attributes
    ----------
    tour_ : tuple of int
        1-based visiting order.
    order_ : ndarray
        0-based row indices into ``X``.
    cost_ : float
    history_ : ndarray
        Best cost after each generation, starting with generation 0.
    """

    def __init__(self, pop_size=100, generations=2000, crossover_prob=0.9,
                 mutation_prob=0.1, mutation="rsm", init="random", elite=None,
                 metric="real", random_state=0):
        self.pop_size = pop_size
        self.generations = generations
        self.crossover_prob = crossover_prob
        self.mutation_prob = mutation_prob
        self.mutation = mutation
        self.init = init
        self.elite = elite
        self.metric = metric
        self.random_state = random_state

    def _config(self) -> GaConfig:
        return GaConfig(pop_size=self.pop_size, generations=self.generations,
                        crossover_prob=self.crossover_prob, mutation_prob=self.mutation_prob,
                        mutation=self.mutation, init_method=self.init,
                        elite_count=self.elite, seed=self.random_state)

    def fit(self, X, y=None):
        X = check_coords(X)
        inst = Instance.from_coords(X, metric=self.metric)
        res = run_ga(inst, self._config())
        self._set_tour(X, res.best_tour, res.best_cost)
        self.history_ = np.asarray(res.history)
        self.n_evaluations_ = res.evaluations
        return self


class ExactTSP(_TourMixin, BaseEstimator):
    """Optimal tour by enumeration (n <= 12) or Held-Karp (n <= 18)."""

    def __init__(self, method="auto", metric="real"):
        self.method = method
        self.metric = metric

    def fit(self, X, y=None):
        X = check_coords(X)
        inst = Instance.from_coords(X, metric=self.metric)
        method = self.method
        if method == "auto":
            method = "brute" if inst.n <= BRUTE_FORCE_MAX else "held-karp"
        if method not in ("brute", "held-karp"):
            raise ValueError(f"unknown method {self.method!r}")
        res = (brute_force_optimal if method == "brute" else held_karp_optimal)(inst)
        self._set_tour(X, res.tour, res.cost)
        self.nodes_explored_ = res.nodes_explored
        return self
