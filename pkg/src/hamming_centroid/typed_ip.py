"""Column-type compression and the convex integer model solved by branch and
bound.

Columns with identical bit patterns across the input strings are
interchangeable: a centroid is characterized (up to permuting columns inside a
class) by how many ones it places in each type class, giving n' <= min(2^m, n)
integer variables x[j] in [0, e(j)]. Each distance is the affine form

    hd(s_i, centroid(x)) = w_i + sum_j x[j] * (1 - 2 s_i[j])

(w_i = ones of s_i), non-negative over the box, so the objective
sum_i hd_i^p is convex. ``build_cnip`` exports this as an integer model with
separable convex objective; ``solve_typed_bb`` solves it directly with
best-first branch and bound, bounding each box by a gradient cut at the
projected-coordinate-descent minimizer of the continuous relaxation.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
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
    "TypeProfile",
    "CnipModel",
    "TypeSolution",
    "extract_types",
    "decode_centroid",
    "build_cnip",
    "solve_typed_bb",
    "solve_typed",
]

CD_TOL = 1e-7  # coordinate-descent convergence tolerance
PRUNE_MARGIN = 1e-7  # safety slack so float bounds never cut the optimum


@dataclass(frozen=True)
class TypeProfile:
    """Column classes of a string set.

    ``patterns[j]`` is the bit column shared by class j (one entry per input
    string); ``counts[j]`` its multiplicity e(j); ``column_map[j0]`` the class
    of 1-based column j0+1 (classes numbered by first occurrence);
    ``ones_per_string[i]`` the total ones w_i of input string i.
    """

    patterns: tuple[tuple[int, ...], ...]
    counts: tuple[int, ...]
    column_map: tuple[int, ...]
    ones_per_string: tuple[int, ...]

    @property
    def n_types(self) -> int:
        return len(self.patterns)

    @property
    def n(self) -> int:
        return len(self.column_map)

    @property
    def m(self) -> int:
        return len(self.patterns[0])

    def columns_of_type(self, j: int) -> tuple[int, ...]:
        """1-based original columns belonging to class j, ascending."""
        return tuple(c + 1 for c, t in enumerate(self.column_map) if t == j)


def extract_types(S: BinaryStringSet) -> TypeProfile:
    patterns: list[tuple[int, ...]] = []
    index: dict[tuple[int, ...], int] = {}
    counts: list[int] = []
    column_map: list[int] = []
    for j in range(1, S.n + 1):
        col = S.column(j)
        t = index.get(col)
        if t is None:
            t = len(patterns)
            index[col] = t
            patterns.append(col)
            counts.append(0)
        counts[t] += 1
        column_map.append(t)
    ones = tuple(s.count_ones() for s in S)
    return TypeProfile(tuple(patterns), tuple(counts), tuple(column_map), ones)


def decode_centroid(x: tuple[int, ...], profile: TypeProfile) -> BinaryString:
    """Place x[j] ones in the *rightmost* columns of each class, producing the
    lexicographically smallest string with those per-class counts."""
    if len(x) != profile.n_types:
        raise ValueError("count vector length does not match the type profile")
    n = profile.n
    bits = 0
    for j, cnt in enumerate(x):
        cols = profile.columns_of_type(j)
        if not 0 <= cnt <= len(cols):
            raise ValueError(f"count {cnt} for class {j} outside 0..{len(cols)}")
        for c in cols[len(cols) - cnt:]:
            bits |= 1 << (n - c)
    return BinaryString(bits, n)


@dataclass(frozen=True)
class CnipModel:
    """Equality-constrained integer model E·(x, y, z) = b with box bounds and
    the separable convex objective sum_i y[i]^p over the y block.

    Rows 1..m linearize the distances (y[i] picks up w_i + Σ_j x[j](1−2s_i[j]));
    the last row is all ones with z as a slack-only balance variable (its
    exported bounds are deliberately loose and symmetric)."""

    E: tuple[tuple[int, ...], ...]
    b: tuple[int, ...]
    lower: tuple[int, ...]
    upper: tuple[int, ...]
    exponent: PExponent
    objective_kind: str = "sum_of_powers"
    objective_over: str = "y-block"

    def to_json_dict(self) -> dict:
        return {
            "E": [list(row) for row in self.E],
            "b": list(self.b),
            "lower": list(self.lower),
            "upper": list(self.upper),
            "objective": {
                "kind": self.objective_kind,
                "exponent": {"a": self.exponent.a, "b": self.exponent.b},
                "over": self.objective_over,
            },
        }


def build_cnip(profile: TypeProfile, p: PExponent) -> CnipModel:
    nt, m, n = profile.n_types, profile.m, profile.n
    width = nt + m + 1
    rows = []
    for i in range(m):
        row = [1 - 2 * profile.patterns[j][i] for j in range(nt)]
        row += [-1 if q == i else 0 for q in range(m)]
        row.append(0)
        rows.append(tuple(row))
    rows.append(tuple([1] * width))
    b = tuple([-w for w in profile.ones_per_string] + [0])
    lower = tuple([0] * nt + [0] * m + [-nt * n + m * n])
    upper = tuple(list(profile.counts) + [n] * m + [nt * n + m * n])
    return CnipModel(tuple(rows), b, lower, upper, p)


@dataclass(frozen=True)
class TypeSolution:
    x: tuple[int, ...]
    objective: CostValue


# ---------- branch and bound ----------


def _coordinate_descent(w, coef, lo, hi, pf, x0):
    """Projected coordinate descent for g(x) = Σ_i (w_i + Σ_j c_ij x_j)^pf
    over the box [lo, hi]; returns (x, y, gradient). Each 1-D step bisects the
    monotone partial derivative of the convex objective."""
    nt = len(lo)
    m = len(w)
    x = [min(max(x0[j], lo[j]), hi[j]) for j in range(nt)]
    y = [w[i] + sum(coef[i][j] * x[j] for j in range(nt)) for i in range(m)]

    def partial(j, xj_shift):
        # derivative wrt x_j at current x with x_j shifted by xj_shift
        # (y_i >= 0 on the box; at y_i = 0 the derivative piece vanishes for p > 1)
        tot = 0.0
        for i in range(m):
            yi = y[i] + coef[i][j] * xj_shift
            if yi > 0.0:
                tot += pf * yi ** (pf - 1.0) * coef[i][j]
        return tot

    for _ in range(200):
        moved = 0.0
        for j in range(nt):
            if lo[j] == hi[j]:
                continue
            a, c = float(lo[j]), float(hi[j])
            if partial(j, a - x[j]) >= 0.0:
                new = a
            elif partial(j, c - x[j]) <= 0.0:
                new = c
            else:
                for _ in range(60):
                    mid = 0.5 * (a + c)
                    if partial(j, mid - x[j]) > 0.0:
                        c = mid
                    else:
                        a = mid
                    if c - a < CD_TOL * 0.01:
                        break
                new = 0.5 * (a + c)
            if new != x[j]:
                shift = new - x[j]
                for i in range(m):
                    y[i] += coef[i][j] * shift
                moved = max(moved, abs(shift))
                x[j] = new
        if moved < CD_TOL:
            break
    grad = [partial(j, 0.0) for j in range(nt)]
    return x, y, grad


def _node_bound(w, coef, lo, hi, pf):
    """Valid lower bound on the box: g at the descent point plus the best the
    gradient inequality allows inside the box (convexity makes it rigorous up
    to float rounding, absorbed by PRUNE_MARGIN)."""
    mid = [(lo[j] + hi[j]) / 2.0 for j in range(len(lo))]
    x, y, grad = _coordinate_descent(w, coef, lo, hi, pf, mid)
    g = sum((yi if yi > 0.0 else 0.0) ** pf for yi in y)
    slack = 0.0
    for j in range(len(lo)):
        slack += min(grad[j] * (lo[j] - x[j]), grad[j] * (hi[j] - x[j]), 0.0)
    return g + slack, x


def _round_candidate(x, lo, hi):
    return tuple(int(min(max(round(xj), lo[j]), hi[j])) for j, xj in enumerate(x))


def solve_typed_bb(
    profile: TypeProfile,
    p: PExponent,
    budget: Optional[CostBudget] = None,
    node_log: Optional[list] = None,
) -> Optional[TypeSolution]:
    """Best-first branch and bound on the per-class ones counts.

    Branches on the class with the largest remaining domain, splitting at the
    relaxation minimizer; integer candidates are evaluated exactly (integer
    arithmetic for integer exponents). ``node_log`` collects
    (lower_bounds, upper_bounds, node_bound) triples for soundness checks.
    """
    nt, m, n = profile.n_types, profile.m, profile.n
    w = [float(v) for v in profile.ones_per_string]
    coef = [[1 - 2 * profile.patterns[j][i] for j in range(nt)] for i in range(m)]
    pf = float(p)
    table = PowerTable(p, n)
    tol = table.tie_tol()

    def exact_value(x: tuple[int, ...]):
        dists = [
            profile.ones_per_string[i]
            + sum(coef[i][j] * x[j] for j in range(nt))
            for i in range(m)
        ]
        return sum(table.powers[d] for d in dists)

    best_raw = None
    best_x: Optional[tuple[int, ...]] = None
    best_bits = None

    def offer(x: tuple[int, ...]) -> None:
        nonlocal best_raw, best_x, best_bits
        raw = exact_value(x)
        if best_raw is None or raw < best_raw - tol:
            best_raw, best_x = raw, x
            best_bits = decode_centroid(x, profile).bits
        elif raw <= best_raw + tol:
            bits = decode_centroid(x, profile).bits
            if bits < best_bits:
                best_raw, best_x, best_bits = raw, x, bits

    root_lo = tuple([0] * nt)
    root_hi = tuple(profile.counts)
    bound, relax_x = _node_bound(w, coef, root_lo, root_hi, pf)
    if node_log is not None:
        node_log.append((root_lo, root_hi, bound))
    offer(_round_candidate(relax_x, root_lo, root_hi))
    counter = 0
    heap = [(bound, counter, root_lo, root_hi, relax_x)]
    while heap:
        bound, _, lo, hi, relax_x = heapq.heappop(heap)
        if best_raw is not None and bound >= float(best_raw) + PRUNE_MARGIN:
            # best-first: every remaining node has an equal or larger bound
            break
        widths = [hi[j] - lo[j] for j in range(nt)]
        j_star = max(range(nt), key=lambda j: widths[j])
        if widths[j_star] == 0:
            offer(tuple(lo))
            continue
        split = int(math.floor(relax_x[j_star]))
        split = min(max(split, lo[j_star]), hi[j_star] - 1)
        for new_lo_j, new_hi_j in ((lo[j_star], split), (split + 1, hi[j_star])):
            c_lo = tuple(new_lo_j if j == j_star else lo[j] for j in range(nt))
            c_hi = tuple(new_hi_j if j == j_star else hi[j] for j in range(nt))
            c_bound, c_relax = _node_bound(w, coef, c_lo, c_hi, pf)
            if node_log is not None:
                node_log.append((c_lo, c_hi, c_bound))
            offer(_round_candidate(c_relax, c_lo, c_hi))
            if best_raw is not None and c_bound >= float(best_raw) + PRUNE_MARGIN:
                continue
            counter += 1
            heapq.heappush(heap, (c_bound, counter, c_lo, c_hi, c_relax))
    cost = table.to_cost(best_raw, m)
    if budget is not None:
        cmp = compare_cost(cost, budget, p)
        if cmp is Comparison.ABOVE:
            return None
        if cmp is Comparison.INDETERMINATE:
            raise IndeterminateComparisonError(
                "typed optimum cannot be separated from the budget at working precision"
            )
    return TypeSolution(best_x, cost)


def solve_typed(
    S: BinaryStringSet,
    p: PExponent,
    budget: Optional[CostBudget] = None,
) -> Optional[CentroidResult]:
    """Convenience wrapper returning a CentroidResult for the typed solver."""
    profile = extract_types(S)
    sol = solve_typed_bb(profile, p, budget)
    if sol is None:
        return None
    centroid = decode_centroid(sol.x, profile)
    dvec = distance_vector(centroid, S)
    return CentroidResult(centroid, sol.objective, "typed-bb", dvec)
