"""Factor-2 approximation: the best input string.

Picking s_i minimizing the sum of p-th-power distances to the whole set is
within 2^p of the optimal p-power cost (equivalently factor 2 on the norm):
for the optimum s* and any s, hd(s_i, s) <= hd(s_i, s*) + hd(s*, s), and
(x+y)^p <= 2^(p-1) (x^p + y^p) turns that into the averaged bound. Note an
approximate cost above a budget certifies nothing, so this solver takes none.
"""

from __future__ import annotations

from .core import (
    BinaryString,
    BinaryStringSet,
    CentroidResult,
    PExponent,
    PowerTable,
    distance_vector,
)

__all__ = ["approx_factor2"]


def approx_factor2(S: BinaryStringSet, p: PExponent) -> CentroidResult:
    """Best input string by total p-power cost; ties go to the earliest input
    (equal strings decode identically, so input order settles lex too)."""
    table = PowerTable(p, S.n)
    tol = table.tie_tol()
    best_raw = None
    best_bits = 0
    for s in S:
        raw = table.sum_raw(distance_vector(s, S))
        if best_raw is None or raw < best_raw - tol:
            best_raw, best_bits = raw, s.bits
    centroid = BinaryString(best_bits, S.n)
    dvec = distance_vector(centroid, S)
    cost = table.to_cost(table.sum_raw(dvec), len(dvec))
    return CentroidResult(centroid, cost, "approx2", dvec)
