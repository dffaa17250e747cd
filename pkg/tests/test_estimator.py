import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.model_selection import ParameterGrid

from gatsp.estimator import ExactTSP, GeneticTSP


@pytest.fixture
def points():
    return np.random.default_rng(4).random((9, 2)) * 100


def test_params_round_trip():
    est = GeneticTSP(pop_size=30, mutation="psm", random_state=3)
    params = est.get_params()
    assert params["pop_size"] == 30 and params["mutation"] == "psm"
    twin = clone(est)
    assert twin.get_params() == params
    twin.set_params(generations=5)
    assert twin.generations == 5 and est.generations == 2000


def test_fit_transform(points):
    est = GeneticTSP(pop_size=30, generations=150, random_state=1)
    ordered = est.fit_transform(points)
    assert sorted(est.tour_) == list(range(1, 10))
    assert np.array_equal(ordered, points[est.order_])
    assert est.history_.shape == (151,)
    assert est.score(points) == pytest.approx(-est.cost_)
    exact = ExactTSP().fit(points)
    assert est.cost_ >= exact.cost_ - 1e-9
    assert est.cost_ == pytest.approx(exact.cost_)


def test_deterministic(points):
    a = GeneticTSP(pop_size=10, generations=20, random_state=5).fit(points)
    b = GeneticTSP(pop_size=10, generations=20, random_state=5).fit(points)
    assert a.tour_ == b.tour_ and np.array_equal(a.history_, b.history_)


def test_parameter_grid_picks_best(points):
    scores = {}
    for params in ParameterGrid({"mutation": ["rsm", "twors"], "generations": [0, 50]}):
        est = GeneticTSP(pop_size=10, **params).fit(points)
        scores[tuple(sorted(params.items()))] = est.score(points)
    assert max(scores.values()) <= 0


def test_validation(points):
    with pytest.raises(NotFittedError):
        GeneticTSP().transform(points)
    with pytest.raises(ValueError):
        GeneticTSP(generations=1).fit(np.zeros((5, 3)))
    with pytest.raises(ValueError):
        GeneticTSP(generations=1).fit(points[:2])
    with pytest.raises(ValueError):
        GeneticTSP(generations=1).fit([[0, 0], [1, np.nan], [2, 2]])
    est = GeneticTSP(pop_size=4, generations=1).fit(points)
    with pytest.raises(ValueError):
        est.transform(points[:5])


def test_exact_methods(points):
    a = ExactTSP(method="brute").fit(points)
    b = ExactTSP(method="held-karp").fit(points)
    assert a.cost_ == pytest.approx(b.cost_)
    with pytest.raises(ValueError):
        ExactTSP(method="magic").fit(points)
