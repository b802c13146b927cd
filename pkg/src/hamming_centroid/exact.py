"""Exact centroid solvers.

Four strategies over the same contract (minimize the sum of p-th powers of
Hamming distances, optionally subject to a budget):

* ``solve_bruteforce`` — exhaustive scan of all 2^n candidates (n capped);
* ``solve_dp``         — layer-by-layer reachability of per-string distance
  vectors, one layer per column, vectors packed into machine integers;
* ``solve_searchtree`` — constant-column preprocessing, an infeasibility
  count check, then enumeration of Hamming balls around the input strings
  whose radius is the largest r with r^p <= budget/m;
* ``solve_dispatch``   — picks DP for few strings / search tree for many.

``solve_committee`` restricts centroids to exactly t ones (DP with an extra
ones-count field, brute-force fallback), and ``solve_majority`` is the
column-majority closed form for the p = 1 convenience mode.

All solvers break cost ties by returning the lexicographically smallest
optimal centroid. Budgeted runs return None when infeasible.
"""

from __future__ import annotations

import functools
import logging
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional

from .core import (
    BinaryString,
    BinaryStringSet,
    Comparison,
    CentroidResult,
    CostBudget,
    CostValue,
    IndeterminateComparisonError,
    PExponent,
    PowerTable,
    compare_cost,
    distance_vector,
)

__all__ = [
    "CapacityError",
    "PreprocessReport",
    "BRUTE_FORCE_COLUMN_CAP",
    "solve_bruteforce",
    "enumerate_optima",
    "preprocess_constant_columns",
    "solve_dp",
    "solve_searchtree",
    "dispatch_choice",
    "solve_dispatch",
    "solve_committee",
    "solve_majority",
]

logger = logging.getLogger(__name__)

BRUTE_FORCE_COLUMN_CAP = 24
DEFAULT_MEM_CAP_MB = 1024
_STATE_BYTES = 88  # rough per-state footprint of a Python int in a set


class CapacityError(RuntimeError):
    """A solver refused an instance that exceeds its configured capacity."""


def _mem_cap_mb(override: Optional[int]) -> int:
    if override is not None:
        return override
    try:
        return int(os.environ.get("HDC_MEM_CAP_MB", DEFAULT_MEM_CAP_MB))
    except ValueError:
        return DEFAULT_MEM_CAP_MB


class _BestTracker:
    """Keeps the minimum (cost, packed bits) with error-aware tie handling.

    ``tol`` is 0 on the exact integer path; otherwise costs closer than tol
    are treated as equal and the lexicographically smaller string wins.
    """

    def __init__(self, tol):
        self.tol = tol
        self.raw = None
        self.bits = None

    def update(self, raw, bits: int) -> None:
        if self.raw is None or raw < self.raw - self.tol:
            self.raw, self.bits = raw, bits
        elif raw <= self.raw + self.tol and bits < self.bits:
            self.raw, self.bits = raw, bits


def _finish(
    S: BinaryStringSet,
    p: PExponent,
    table: PowerTable,
    bits: int,
    algorithm: str,
    budget: Optional[CostBudget],
) -> Optional[CentroidResult]:
    centroid = BinaryString(bits, S.n)
    dvec = distance_vector(centroid, S)
    cost = table.to_cost(table.sum_raw(dvec), len(dvec))
    if budget is not None:
        cmp = compare_cost(cost, budget, p)
        if cmp is Comparison.ABOVE:
            return None
        if cmp is Comparison.INDETERMINATE:
            raise IndeterminateComparisonError(
                "optimal cost cannot be separated from the budget at working "
                "precision; supply the budget as an exact p-th power"
            )
    return CentroidResult(centroid, cost, algorithm, dvec)


# ---------- exhaustive ----------


def solve_bruteforce(
    S: BinaryStringSet,
    p: PExponent,
    budget: Optional[CostBudget] = None,
    column_cap: int = BRUTE_FORCE_COLUMN_CAP,
) -> Optional[CentroidResult]:
    """Scan all 2^n candidates; the reference oracle for every other solver."""
    n, m = S.n, S.m
    if n > column_cap:
        raise CapacityError(
            f"exhaustive scan over 2^{n} candidates exceeds the column cap "
            f"{column_cap}; use the DP or search-tree solver"
        )
    table = PowerTable(p, n)
    pw = table.powers
    rows = [s.bits for s in S]
    best_raw = None
    best_bits = 0
    tol = table.tie_tol()
    for cand in range(1 << n):  # ascending packed value == lexicographic order
        raw = 0
        for r in rows:
            raw += pw[(cand ^ r).bit_count()]
        if best_raw is None or raw < best_raw - tol:
            best_raw, best_bits = raw, cand
    return _finish(S, p, table, best_bits, "bruteforce", budget)


def enumerate_optima(
    S: BinaryStringSet,
    p: PExponent,
    column_cap: int = BRUTE_FORCE_COLUMN_CAP,
) -> tuple[CostValue, list[BinaryString]]:
    """Optimal cost plus *all* optimal centroids, ascending lexicographically."""
    n = S.n
    if n > column_cap:
        raise CapacityError(f"exhaustive enumeration refused for n={n} > {column_cap}")
    table = PowerTable(p, n)
    pw = table.powers
    rows = [s.bits for s in S]
    tol = table.tie_tol()
    best_raw = None
    for cand in range(1 << n):
        raw = sum(pw[(cand ^ r).bit_count()] for r in rows)
        if best_raw is None or raw < best_raw:
            best_raw = raw
    optima = []
    for cand in range(1 << n):
        raw = sum(pw[(cand ^ r).bit_count()] for r in rows)
        if raw <= best_raw + tol:
            optima.append(BinaryString(cand, n))
    return table.to_cost(best_raw, S.m), optima


# ---------- constant-column preprocessing ----------


@dataclass(frozen=True)
class PreprocessReport:
    """Constant columns removed from an instance.

    ``fixed_columns`` maps 1-based original columns to their forced bit;
    ``surviving_columns`` lists the remaining original columns in order;
    ``reduced_set`` is the projection onto them, or None when every column
    was constant (forcing a bit elsewhere raises every distance, so optimal
    centroids agree with the constants there).
    """

    fixed_columns: dict[int, int]
    surviving_columns: tuple[int, ...]
    reduced_set: Optional[BinaryStringSet]


def preprocess_constant_columns(S: BinaryStringSet) -> PreprocessReport:
    fixed: dict[int, int] = {}
    surviving: list[int] = []
    for j in range(1, S.n + 1):
        col = S.column(j)
        if all(v == 0 for v in col):
            fixed[j] = 0
        elif all(v == 1 for v in col):
            fixed[j] = 1
        else:
            surviving.append(j)
    if not surviving:
        return PreprocessReport(fixed, (), None)
    reduced = []
    for s in S:
        bits = 0
        for j in surviving:
            bits = (bits << 1) | s.bit(j)
        reduced.append(BinaryString(bits, len(surviving)))
    return PreprocessReport(fixed, tuple(surviving), BinaryStringSet(tuple(reduced)))


def _expand_through_report(report: PreprocessReport, reduced_bits: int, n: int) -> int:
    bits = 0
    for j, v in report.fixed_columns.items():
        bits |= v << (n - j)
    nr = len(report.surviving_columns)
    for q, j in enumerate(report.surviving_columns):
        bits |= ((reduced_bits >> (nr - 1 - q)) & 1) << (n - j)
    return bits


# ---------- packed distance-vector DP ----------


def _field_width(cap: int, ones_cap: Optional[int]) -> int:
    top = max(cap, ones_cap or 0)
    return max(top.bit_length(), 1) + 1  # +1 guard bit per field


def _column_deltas(S: BinaryStringSet, W: int, with_ones: bool) -> list[tuple[int, int]]:
    """Per column j: packed distance increments for centroid bit 0 and bit 1."""
    deltas = []
    m = S.m
    for j in range(1, S.n + 1):
        col = S.column(j)
        d0 = 0
        d1 = 0
        for i, v in enumerate(col):
            if v:
                d0 |= 1 << (W * i)
            else:
                d1 |= 1 << (W * i)
        if with_ones:
            d1 |= 1 << (W * m)
        deltas.append((d0, d1))
    return deltas


def _probe_guard(m: int, W: int, cap: int, ones_cap: Optional[int]) -> tuple[int, int]:
    half = 1 << (W - 1)
    probe = 0
    guard = 0
    for i in range(m):
        probe |= (half - 1 - cap) << (W * i)
        guard |= half << (W * i)
    if ones_cap is not None:
        probe |= (half - 1 - ones_cap) << (W * m)
        guard |= half << (W * m)
    return probe, guard


def _check_dp_memory(n: int, m: int, cap: int, mem_cap_mb: int) -> None:
    states = min(1 << n, (cap + 1) ** m) * (n + 1)
    if states * _STATE_BYTES > mem_cap_mb * (1 << 20):
        raise CapacityError(
            f"estimated DP table of {states} states exceeds the memory cap "
            f"HDC_MEM_CAP_MB={mem_cap_mb}; use the search-tree solver"
        )


def _run_layers(
    S: BinaryStringSet,
    cap: int,
    ones_cap: Optional[int] = None,
    prune_limit: Optional[Fraction] = None,
    int_powers: Optional[list[int]] = None,
) -> tuple[list[frozenset[int]], int, list[tuple[int, int]]]:
    """Forward reachability of packed distance vectors, one layer per column.

    Each per-string distance occupies a W-bit field with a guard bit; adding
    the column increment and a probe constant sets the guard exactly when a
    field would exceed ``cap`` (the increments never carry across fields).
    """
    m = S.m
    W = _field_width(cap, ones_cap)
    deltas = _column_deltas(S, W, ones_cap is not None)
    probe, guard = _probe_guard(m, W, cap, ones_cap)
    fmask = (1 << W) - 1
    prune = prune_limit is not None and int_powers is not None
    if prune:
        lim_num, lim_den = prune_limit.numerator, prune_limit.denominator
    layers = [frozenset((0,))]
    cur = {0}
    for d0, d1 in deltas:
        nxt = set()
        for T in cur:
            for delta in (d0, d1):
                T2 = T + delta
                if (T2 + probe) & guard:
                    continue
                if prune:
                    partial = sum(int_powers[(T2 >> (W * i)) & fmask] for i in range(m))
                    if partial * lim_den > lim_num:
                        continue
                nxt.add(T2)
        layers.append(frozenset(nxt))
        cur = nxt
    return layers, W, deltas


def _lex_min_witness(
    layers: list[frozenset[int]], deltas: list[tuple[int, int]], good_final: set[int], n: int
) -> int:
    """Walk the layers back from the chosen finals, then greedily prefer 0 bits."""
    goods: list[set[int]] = [set()] * (n + 1)
    goods[n] = good_final
    for j in range(n, 0, -1):
        d0, d1 = deltas[j - 1]
        gj = goods[j]
        goods[j - 1] = {T for T in layers[j - 1] if T + d0 in gj or T + d1 in gj}
    T = 0
    bits = 0
    for j in range(1, n + 1):
        d0, d1 = deltas[j - 1]
        if T + d0 in goods[j]:
            T += d0
        else:
            T += d1
            bits |= 1 << (n - j)
    return bits


def _final_costs(finals, W: int, m: int, table: PowerTable):
    fmask = (1 << W) - 1
    pw = table.powers
    for T in finals:
        yield T, sum(pw[(T >> (W * i)) & fmask] for i in range(m))


def solve_dp(
    S: BinaryStringSet,
    p: PExponent,
    budget: Optional[CostBudget] = None,
    mem_cap_mb: Optional[int] = None,
) -> Optional[CentroidResult]:
    """Distance-vector DP.

    With a budget, input strings are tested first; the per-string cap is then
    D−1 when D^p equals the budget exactly (a candidate at distance exactly D
    forces zero distance everywhere else, i.e. an input string), else D, where
    D = max{d : d^p <= budget}. Without a budget it optimizes with cap n.
    """
    n, m = S.n, S.m
    table = PowerTable(p, n)
    tol = table.tie_tol()
    best_input: Optional[_BestTracker] = None
    prune_limit = None
    if budget is None:
        cap = n
    else:
        D = budget.max_distance(p)
        cap = min(D, n)
        best_input = _BestTracker(tol)
        for s in S:
            raw = table.sum_raw(distance_vector(s, S))
            best_input.update(raw, s.bits)
        if m >= 2 and budget.power_equals(D, p):
            cap = min(max(D - 1, 0), n)
        if table.exact and budget.power is not None:
            prune_limit = budget.power
    _check_dp_memory(n, m, cap, _mem_cap_mb(mem_cap_mb))
    layers, W, deltas = _run_layers(
        S, cap, prune_limit=prune_limit, int_powers=table.powers if table.exact else None
    )
    tracker = _BestTracker(tol)
    finals = layers[n]
    best_raw = None
    for _, raw in _final_costs(finals, W, m, table):
        if best_raw is None or raw < best_raw:
            best_raw = raw
    if best_raw is not None:
        good = {T for T, raw in _final_costs(finals, W, m, table) if raw <= best_raw + tol}
        tracker.update(best_raw, _lex_min_witness(layers, deltas, good, n))
    if best_input is not None and best_input.raw is not None:
        tracker.update(best_input.raw, best_input.bits)
    if tracker.raw is None:
        return None  # cap pruned everything and no input string was feasible
    return _finish(S, p, table, tracker.bits, "dp", budget)


# ---------- bounded-ball search tree ----------


def solve_searchtree(
    S: BinaryStringSet,
    p: PExponent,
    budget: Optional[CostBudget] = None,
) -> Optional[CentroidResult]:
    """Ball enumeration around input strings.

    After dropping constant columns: if more surviving columns than the
    p-th-power budget remain, every candidate already costs too much. Any
    centroid within budget B lies within r = max{r : r^p <= B/m} of some
    input string (averaging over the m distances), so enumerating those balls
    by increasing radius and lexicographic flip set is exhaustive.
    """
    n, m = S.n, S.m
    report = preprocess_constant_columns(S)
    table = PowerTable(p, n)
    if report.reduced_set is None:
        return _finish(S, p, table, _expand_through_report(report, 0, n), "searchtree", budget)
    Sr = report.reduced_set
    nr = Sr.n
    if budget is not None and budget.exceeded_by_count(nr, p):
        return None
    radius = nr if budget is None else min(budget.max_distance(p, divisor=m), nr)
    pw = table.powers
    rows = [s.bits for s in Sr]
    col_masks = [1 << (nr - 1 - q) for q in range(nr)]
    tracker = _BestTracker(table.tie_tol())
    for idx, center in enumerate(rows):
        for r in range(radius + 1):
            logger.info("searchtree: string %d/%d, radius %d/%d", idx + 1, m, r, radius)
            for flips in combinations(col_masks, r):
                cand = center
                for f in flips:
                    cand ^= f
                raw = sum(pw[(cand ^ row).bit_count()] for row in rows)
                tracker.update(raw, cand)
    if tracker.raw is None:
        return None
    full_bits = _expand_through_report(report, tracker.bits, n)
    return _finish(S, p, table, full_bits, "searchtree", budget)


# ---------- dispatcher ----------


def _loose_budget(S: BinaryStringSet, p: PExponent) -> CostBudget:
    return CostBudget.from_power(S.m * S.n ** math.ceil(float(p)) + 1)


def dispatch_choice(S: BinaryStringSet, p: PExponent, budget: Optional[CostBudget]) -> str:
    """Which solver the dispatcher would run (pure; useful for tests)."""
    if p.is_unit:
        return "majority"
    ref = budget if budget is not None else _loose_budget(S, p)
    lo, hi = ref.interval(p)
    pf = float(p)
    k = float((lo + hi) / 2) ** (1.0 / pf)
    if k <= 1.0:
        return "bruteforce"
    threshold = k ** (pf / (pf + 1.0)) / math.log2(k)
    return "dp" if S.m <= threshold else "searchtree"


def solve_dispatch(
    S: BinaryStringSet,
    p: PExponent,
    budget: Optional[CostBudget] = None,
    mem_cap_mb: Optional[int] = None,
) -> Optional[CentroidResult]:
    """Route to DP when the string count is small relative to the budget's
    norm value (m <= k^(p/(p+1))/log2 k), else to the search tree. Degenerate
    budgets (norm <= 1) go to brute force; p = 1 uses column majority."""
    choice = dispatch_choice(S, p, budget)
    if choice == "majority":
        return solve_majority(S, budget)
    if choice == "bruteforce":
        return solve_bruteforce(S, p, budget)
    if choice == "dp":
        return solve_dp(S, p, budget, mem_cap_mb=mem_cap_mb)
    return solve_searchtree(S, p, budget)


# ---------- committee (exactly t ones) ----------


@functools.lru_cache(maxsize=4)
def _committee_layers(S: BinaryStringSet, cap: int):
    """Shared packed layers with an extra ones-count field (cap n, so one run
    serves every t)."""
    return _run_layers(S, cap, ones_cap=S.n)


def solve_committee(
    S: BinaryStringSet,
    p: PExponent,
    t: int,
    budget: Optional[CostBudget] = None,
    method: str = "auto",
    mem_cap_mb: Optional[int] = None,
    column_cap: int = BRUTE_FORCE_COLUMN_CAP,
) -> Optional[CentroidResult]:
    """Best centroid among strings with exactly t ones.

    ``method``: "dp" (distance-vector DP with a ones-count field),
    "bruteforce" (enumerate the C(n, t) supports), or "auto" (DP unless the
    memory estimate refuses, then brute force when n allows)."""
    n, m = S.n, S.m
    if not 0 <= t <= n:
        raise ValueError(f"ones count t={t} outside 0..{n}")
    if method not in ("auto", "dp", "bruteforce"):
        raise ValueError(f"unknown committee method {method!r}")
    cap = n if budget is None else min(budget.max_distance(p), n)
    if method in ("auto", "dp"):
        try:
            _check_dp_memory(n, m + 1, cap, _mem_cap_mb(mem_cap_mb))
            return _committee_dp(S, p, t, budget, cap)
        except CapacityError:
            if method == "dp":
                raise
    if n > column_cap:
        raise CapacityError(
            f"committee fallback refused: n={n} exceeds the column cap {column_cap}"
        )
    return _committee_bruteforce(S, p, t, budget)


def _committee_dp(S, p, t, budget, cap) -> Optional[CentroidResult]:
    n, m = S.n, S.m
    table = PowerTable(p, n)
    tol = table.tie_tol()
    layers, W, deltas = _committee_layers(S, cap)
    ones_shift = W * m
    finals = [T for T in layers[n] if T >> ones_shift == t]
    best_raw = None
    for _, raw in _final_costs(finals, W, m, table):
        if best_raw is None or raw < best_raw:
            best_raw = raw
    if best_raw is None:
        return None
    good = {T for T, raw in _final_costs(finals, W, m, table) if raw <= best_raw + tol}
    bits = _lex_min_witness(layers, deltas, good, n)
    return _finish(S, p, table, bits, "committee-dp", budget)


def _committee_bruteforce(S, p, t, budget) -> Optional[CentroidResult]:
    n = S.n
    table = PowerTable(p, n)
    pw = table.powers
    rows = [s.bits for s in S]
    tracker = _BestTracker(table.tie_tol())
    for support in combinations(range(n), t):
        cand = 0
        for q in support:
            cand |= 1 << (n - 1 - q)
        raw = sum(pw[(cand ^ row).bit_count()] for row in rows)
        tracker.update(raw, cand)
    if tracker.raw is None:
        return None
    return _finish(S, p, table, tracker.bits, "committee-bruteforce", budget)


# ---------- p = 1 closed form ----------


def solve_majority(
    S: BinaryStringSet, budget: Optional[CostBudget] = None
) -> Optional[CentroidResult]:
    """Column-wise strict majority (ties to 0). Optimal for p = 1 because the
    cost separates per column; ties-to-0 yields the lexicographic minimum."""
    n, m = S.n, S.m
    bits = 0
    for j in range(1, n + 1):
        ones = sum(S.column(j))
        if 2 * ones > m:
            bits |= 1 << (n - j)
    p1 = PExponent(1, 1, allow_unit=True)
    return _finish(S, p1, PowerTable(p1, n), bits, "majority", budget)
