import numpy as np
import pytest
from sklearn.base import clone

from hamming_centroid import HammingCentroid, validate_binary_matrix

INTRO_X = np.array(
    [
        [1, 1, 1, 1, 1, 1, 1],
        [1, 1, 1, 1, 0, 0, 0],
        [0, 0, 0, 0, 1, 0, 0],
        [0, 0, 0, 0, 0, 1, 0],
        [0, 0, 0, 0, 0, 0, 1],
    ]
)


def test_validate_binary_matrix():
    out = validate_binary_matrix([[0, 1], [1, 0]])
    assert out.dtype == np.uint8 and out.shape == (2, 2)
    assert validate_binary_matrix(np.array([[True, False]])).tolist() == [[1, 0]]
    with pytest.raises(ValueError):
        validate_binary_matrix([[0, 2]])
    with pytest.raises(ValueError):
        validate_binary_matrix([0, 1])
    with pytest.raises(ValueError):
        validate_binary_matrix(np.empty((0, 3)))


def test_fit_exposes_solution():
    est = HammingCentroid(p="2", algorithm="bruteforce").fit(INTRO_X)
    assert est.centroid_.tolist() == [0, 0, 1, 1, 0, 0, 0]
    assert est.cost_ == 56.0
    assert est.distance_vector_.tolist() == [5, 2, 3, 3, 3]
    assert est.algorithm_ == "bruteforce"
    assert est.n_features_in_ == 7


@pytest.mark.parametrize("algo", ["auto", "dp", "searchtree", "typed-bb"])
def test_all_backends_agree(algo):
    est = HammingCentroid(p="2", algorithm=algo).fit(INTRO_X)
    assert est.cost_ == 56.0


def test_approx_backend():
    est = HammingCentroid(p="2", algorithm="approx2").fit(INTRO_X)
    assert est.cost_ == 69.0
    assert est.centroid_.tolist() == [0, 0, 0, 0, 1, 0, 0]


def test_unknown_backend():
    with pytest.raises(ValueError):
        HammingCentroid(algorithm="magic").fit(INTRO_X)


def test_predict_and_transform():
    est = HammingCentroid(p="2", algorithm="bruteforce").fit(INTRO_X)
    d = est.predict(INTRO_X)
    assert d.tolist() == [5, 2, 3, 3, 3]
    assert est.transform(INTRO_X).shape == (5, 1)
    with pytest.raises(ValueError):
        est.predict(np.zeros((1, 4), dtype=int))


def test_score_is_negative_cost():
    est = HammingCentroid(p="2", algorithm="bruteforce").fit(INTRO_X)
    assert est.score(INTRO_X) == -56.0


def test_unfitted_raises():
    from sklearn.exceptions import NotFittedError

    with pytest.raises(NotFittedError):
        HammingCentroid().predict(INTRO_X)


def test_p1_uses_majority():
    est = HammingCentroid(p="1").fit(INTRO_X)
    assert est.algorithm_ == "majority"
    assert est.cost_ == 14.0


def test_fractional_p():
    est = HammingCentroid(p="3/2", algorithm="bruteforce").fit(INTRO_X)
    assert est.centroid_.tolist() == [0, 0, 0, 1, 0, 0, 0]


def test_sklearn_clone_round_trip():
    est = HammingCentroid(p="3/2", algorithm="dp", mem_cap_mb=64)
    params = est.get_params()
    assert params == {"p": "3/2", "algorithm": "dp", "mem_cap_mb": 64}
    twin = clone(est)
    assert twin.get_params() == params
    est.set_params(p="2")
    assert est.get_params()["p"] == "2"
