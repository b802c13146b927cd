"""scikit-learn style wrapper around the exact solvers."""

from __future__ import annotations

from typing import Optional

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .approx import approx_factor2
from .core import BinaryString, BinaryStringSet, PExponent, hamming_distance
from .exact import (
    solve_bruteforce,
    solve_dispatch,
    solve_dp,
    solve_searchtree,
)
from .typed_ip import solve_typed

__all__ = ["HammingCentroid", "validate_binary_matrix"]


def validate_binary_matrix(X) -> np.ndarray:
    """Coerce to a 2-D uint8 array of 0/1 values; reject anything else."""
    arr = np.asarray(X)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D array of bits, got ndim={arr.ndim}")
    if arr.size == 0:
        raise ValueError("empty input matrix")
    if not np.isin(arr, (0, 1, False, True)).all():
        raise ValueError("matrix entries must all be 0 or 1")
    return arr.astype(np.uint8)


def _matrix_to_set(arr: np.ndarray) -> BinaryStringSet:
    return BinaryStringSet.from_texts(
        ["".join("1" if b else "0" for b in row) for row in arr]
    )


class HammingCentroid(BaseEstimator, TransformerMixin):
    """Fit the generalized (p-th power) Hamming centroid of binary rows.

    Parameters
    ----------
    p : str, exponent as "a" or "a/b" with a/b >= 1 (e.g. "1", "2", "3/2").
    algorithm : one of "auto", "bruteforce", "dp", "searchtree", "typed-bb",
        "approx2". "auto" routes between the DP and the search tree;
        "approx2" picks the best input row (within factor 2^(1-1/p)).
    mem_cap_mb : optional override of the DP memory cap (else the
        HDC_MEM_CAP_MB environment variable, default 1024).

    Attributes after fit: ``centroid_`` (uint8 row), ``cost_`` (float sum of
    p-th-power distances), ``distance_vector_``, ``algorithm_``,
    ``n_features_in_``.
    """

    def __init__(self, p: str = "2", algorithm: str = "auto",
                 mem_cap_mb: Optional[int] = None):
        self.p = p
        self.algorithm = algorithm
        self.mem_cap_mb = mem_cap_mb

    def fit(self, X, y=None):
        arr = validate_binary_matrix(X)
        S = _matrix_to_set(arr)
        p = PExponent.parse(str(self.p), allow_unit=True)
        algo = self.algorithm
        if algo == "auto":
            result = solve_dispatch(S, p, mem_cap_mb=self.mem_cap_mb)
        elif algo == "bruteforce":
            result = solve_bruteforce(S, p)
        elif algo == "dp":
            result = solve_dp(S, p, mem_cap_mb=self.mem_cap_mb)
        elif algo == "searchtree":
            result = solve_searchtree(S, p)
        elif algo == "typed-bb":
            result = solve_typed(S, p)
        elif algo == "approx2":
            result = approx_factor2(S, p)
        else:
            raise ValueError(f"unknown algorithm {self.algorithm!r}")
        self.n_features_in_ = S.n
        self.centroid_ = np.array(
            [result.centroid.bit(j) for j in range(1, S.n + 1)], dtype=np.uint8
        )
        self.cost_value_ = result.cost
        self.cost_ = (
            float(result.cost.exact)
            if result.cost.exact is not None
            else float(result.cost.approx)
        )
        self.distance_vector_ = np.array(result.distance_vector, dtype=np.int64)
        self.algorithm_ = result.algorithm
        self._center = result.centroid
        return self

    def _distances(self, X) -> np.ndarray:
        check_is_fitted(self, "centroid_")
        arr = validate_binary_matrix(X)
        if arr.shape[1] != self.n_features_in_:
            raise ValueError(
                f"X has {arr.shape[1]} columns, fitted on {self.n_features_in_}"
            )
        center: BinaryString = self._center
        out = np.empty(arr.shape[0], dtype=np.int64)
        for i, row in enumerate(arr):
            s = BinaryString.from_text("".join("1" if b else "0" for b in row))
            out[i] = hamming_distance(center, s)
        return out

    def transform(self, X) -> np.ndarray:
        """Hamming distance of each row to the fitted centroid, shape (m, 1)."""
        return self._distances(X)[:, None]

    def predict(self, X) -> np.ndarray:
        """Hamming distance of each row to the fitted centroid, shape (m,)."""
        return self._distances(X)

    def score(self, X, y=None) -> float:
        """Negative sum of p-th-power distances of X to the fitted centroid
        (higher is better, 0 is perfect)."""
        p = PExponent.parse(str(self.p), allow_unit=True)
        d = self._distances(X).astype(np.float64)
        return -float((d ** float(p)).sum())
