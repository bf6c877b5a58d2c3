"""scikit-learn style facade: classify torus points by stratum."""
from __future__ import annotations

from fractions import Fraction

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .errors import DimensionMismatch
from .root_datum import RootDatum, build_datum
from .strata import (EllipticPoint, FormalValue, TorusPoint,
                     component_group_order, full_report, point_stabilizer,
                     sigma_of_point)
from .subsystems import CaseTag, enumerate_case
from .weyl import DEFAULT_MAX_ORDER, generate_weyl


def _to_formal(v, max_denominator: int) -> FormalValue:
    if isinstance(v, FormalValue):
        return v
    if isinstance(v, str):
        return FormalValue.parse(v)
    if isinstance(v, (float, np.floating)):
        return FormalValue(Fraction(float(v)).limit_denominator(max_denominator))
    return FormalValue(Fraction(v))


def check_points(X, rank: int, max_denominator: int = 10**6
                 ) -> list[TorusPoint | EllipticPoint]:
    """Validate a 2-d array of point coordinates.

    Rows of length ``rank`` are compact-torus points; rows of length
    ``2 * rank`` are elliptic points (x1 followed by x2).  Entries may be
    ints, Fractions, floats (snapped to the nearest fraction with bounded
    denominator) or coordinate strings such as ``"1/3+t1"``.
    """
    arr = np.asarray(X, dtype=object)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-d array, got {arr.ndim} dimensions")
    if arr.shape[1] not in (rank, 2 * rank):
        raise DimensionMismatch(
            f"rows must have {rank} or {2 * rank} entries, got {arr.shape[1]}")
    out = []
    for row in arr:
        vals = tuple(_to_formal(v, max_denominator) for v in row)
        if len(vals) == rank:
            out.append(TorusPoint(vals))
        else:
            out.append(EllipticPoint(TorusPoint(vals[:rank]),
                                     TorusPoint(vals[rank:])))
    return out


class StrataClassifier(TransformerMixin, BaseEstimator):
    """Assign points to the W-classes of their vanishing root subsystems.

    ``fit`` builds the root datum, its Weyl group and the class list for
    ``case``; ``X`` is ignored there.  ``predict`` returns, per point, the
    index into ``classes_`` of the class of Sigma_p (-1 when that class is not
    in the chosen family).  ``transform`` returns the integer features
    ``[class index, |Sigma_p|, |Stab_W(p)|, component group order]``.
    """

    def __init__(self, cartan_type: str = "A1", isogeny: str = "sc",
                 case: str = "elliptic", max_weyl_order: int = DEFAULT_MAX_ORDER,
                 max_denominator: int = 10**6):
        self.cartan_type = cartan_type
        self.isogeny = isogeny
        self.case = case
        self.max_weyl_order = max_weyl_order
        self.max_denominator = max_denominator

    def fit(self, X=None, y=None):
        datum: RootDatum = build_datum(self.cartan_type, self.isogeny)
        self.datum_ = datum
        self.weyl_ = generate_weyl(datum, self.max_weyl_order)
        self.classes_ = enumerate_case(datum, self.weyl_, CaseTag(self.case))
        self.reports_ = [full_report(datum, self.weyl_, c)
                         for c in self.classes_]
        self.labels_ = [r.cartan_label for r in self.reports_]
        self._lookup = {c.indices: k for k, c in enumerate(self.classes_)}
        self.n_features_in_ = datum.rank
        return self

    def _class_index(self, p) -> int:
        s = sigma_of_point(self.datum_, p)
        return self._lookup.get(self.weyl_.canonical_form(s.indices), -1)

    def predict(self, X) -> np.ndarray:
        check_is_fitted(self, "classes_")
        pts = check_points(X, self.datum_.rank, self.max_denominator)
        return np.array([self._class_index(p) for p in pts], dtype=np.int64)

    def transform(self, X) -> np.ndarray:
        check_is_fitted(self, "classes_")
        d, w = self.datum_, self.weyl_
        pts = check_points(X, d.rank, self.max_denominator)
        rows = []
        for p in pts:
            rows.append([self._class_index(p), len(sigma_of_point(d, p)),
                         len(point_stabilizer(w, p)),
                         component_group_order(d, w, p)])
        return np.array(rows, dtype=np.int64).reshape(len(rows), 4)
