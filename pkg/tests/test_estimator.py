from fractions import Fraction

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from rootstrata.errors import DimensionMismatch
from rootstrata.estimator import StrataClassifier, check_points
from rootstrata.strata import EllipticPoint, TorusPoint


def test_params_roundtrip():
    est = StrataClassifier(cartan_type="B2", case="trigonometric")
    params = est.get_params()
    assert params["cartan_type"] == "B2" and params["case"] == "trigonometric"
    assert clone(est).get_params() == params


def test_predict_and_transform():
    est = StrataClassifier("G2").fit()
    assert len(est.classes_) == 6
    X = [[0, 0], [Fraction(1, 3), 0], ["t1", "t2"], [0.5, 0.0]]
    pred = est.predict(X)
    assert [est.labels_[k] for k in pred] == ["G2", "A2", "∅", "A1+A1"]
    feats = est.fit_transform(X)
    assert feats.shape == (4, 4)
    assert feats[0].tolist() == [5, 12, 12, 1]


def test_elliptic_rows():
    est = StrataClassifier("A1", isogeny="adjoint").fit()
    feats = est.transform([["1/2", 0]])
    assert feats.shape == (1, 4)
    feats = est.transform([["1/2", "0", "0", "0"][:2]])
    assert feats[0, 3] == 2


def test_not_fitted():
    with pytest.raises(NotFittedError):
        StrataClassifier().predict([[0]])


def test_check_points():
    pts = check_points([[0, "1/2", "t1", 0]], 2)
    assert isinstance(pts[0], EllipticPoint)
    pts = check_points(np.array([0.25, 0.5]), 2)
    assert isinstance(pts[0], TorusPoint)
    with pytest.raises(DimensionMismatch):
        check_points([[0, 0, 0]], 2)


def test_rational_family_misses_pseudo_levi():
    est = StrataClassifier("G2", case="rational").fit()
    assert est.predict([[Fraction(1, 3), 0]])[0] == -1
