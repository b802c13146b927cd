"""Verifiable hardness reduction: graph 3-coloring to budgeted centroid
instances.

For a graph with n vertices and m edges, write n_hat = n + m. Strings have
length (2^b + 2) * n_hat and decompose into a triple region (3 columns per
vertex/edge slot), a padding region, and a split tail:

* group 1 anchors the ones count: one string of (2^b+1)*n_hat ones then
  zeros, plus 2^(a-b) all-zero copies — any budget-meeting centroid has
  exactly n_hat ones, all inside the triple region;
* group 2, per vertex i: a string marking triple i with 111 and a
  complementary partner (tails 0·1^(n_hat-1) / 1·0^(n_hat-1)), distance
  4*n_hat apart — the centroid must hit triple i exactly once (a color);
* group 3, per edge, three shifted marker strings plus complements force the
  edge's endpoints to disagree (the shift z that both endpoints avoid is
  absorbed by the edge's own slot).

A proper coloring maps to a centroid meeting the budget exactly, and any
centroid within budget reads back as a proper coloring off the vertex
triples. The distinct variant appends 2^(a-b) + 2^b disambiguating columns
so all strings are pairwise distinct, with a revised budget.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import comb
from typing import Optional

from .core import (
    BinaryString,
    BinaryStringSet,
    Comparison,
    CostBudget,
    CostValue,
    PExponent,
    PowerTable,
    compare_cost,
)
from .exact import CapacityError, enumerate_optima

__all__ = [
    "Graph",
    "Coloring",
    "ReductionOutput",
    "GadgetCheck",
    "StructuredCheck",
    "GraphFormatError",
    "complete_graph",
    "build_gadget_group1",
    "reduce_3coloring",
    "coloring_to_centroid",
    "centroid_to_coloring",
    "verify_gadget_lemma",
    "structured_noncolorability_check",
]


class GraphFormatError(ValueError):
    """Malformed graph input; message carries the 1-based line number."""


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on 1-based vertices; edges stored as (i, j)
    with i < j, no self loops, no duplicates."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("graph needs at least one vertex")
        seen = set()
        norm = []
        for i, j in self.edges:
            if i == j:
                raise ValueError(f"self loop at vertex {i}")
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise ValueError(f"edge ({i},{j}) outside 1..{self.n}")
            e = (min(i, j), max(i, j))
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            seen.add(e)
            norm.append(e)
        object.__setattr__(self, "edges", tuple(norm))

    @property
    def m(self) -> int:
        return len(self.edges)

    @classmethod
    def from_text(cls, text: str) -> "Graph":
        n = None
        m_declared = None
        edges = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if n is None:
                if len(parts) != 4 or parts[0] != "n" or parts[2] != "m":
                    raise GraphFormatError(
                        f"line {lineno}: expected header 'n <int> m <int>', got {line!r}"
                    )
                try:
                    n, m_declared = int(parts[1]), int(parts[3])
                except ValueError:
                    raise GraphFormatError(f"line {lineno}: non-integer header counts")
                continue
            if parts[0] != "e" or len(parts) != 3:
                raise GraphFormatError(f"line {lineno}: expected 'e <i> <j>', got {line!r}")
            try:
                edges.append((int(parts[1]), int(parts[2])))
            except ValueError:
                raise GraphFormatError(f"line {lineno}: non-integer edge endpoints")
        if n is None:
            raise GraphFormatError("line 1: missing header 'n <int> m <int>'")
        if len(edges) != m_declared:
            raise GraphFormatError(
                f"header declares m={m_declared} edges but {len(edges)} were given"
            )
        try:
            return cls(n, tuple(edges))
        except ValueError as exc:
            raise GraphFormatError(str(exc))

    def to_text(self) -> str:
        lines = [f"n {self.n} m {self.m}"]
        lines.extend(f"e {i} {j}" for i, j in self.edges)
        return "\n".join(lines) + "\n"


def complete_graph(n: int) -> Graph:
    return Graph(n, tuple((i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)))


@dataclass(frozen=True)
class Coloring:
    """Vertex colors in {0, 1, 2}, one per vertex in index order."""

    colors: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(c not in (0, 1, 2) for c in self.colors):
            raise ValueError("colors must be 0, 1 or 2")
        object.__setattr__(self, "colors", tuple(self.colors))

    def is_proper(self, g: Graph) -> bool:
        if len(self.colors) != g.n:
            raise ValueError("coloring length does not match vertex count")
        return all(self.colors[i - 1] != self.colors[j - 1] for i, j in g.edges)


# ---------- construction ----------


def _budget_for(n: int, m: int, n_hat_term: int, n_hat: int, p: PExponent) -> CostBudget:
    """(2^a + 2^(a-b)) * n_hat_term^p + 2 (n + 3m) * (2 n_hat)^p, exact."""
    c1 = 2 ** p.a + 2 ** (p.a - p.b)
    c2 = 2 * (n + 3 * m)
    if p.is_integer:
        return CostBudget.from_power(c1 * n_hat_term ** p.a + c2 * (2 * n_hat) ** p.a)
    return CostBudget.from_power_terms(((c1, n_hat_term), (c2, 2 * n_hat)))


def build_gadget_group1(n_hat: int, p: PExponent) -> BinaryStringSet:
    """The ones-count anchor: 1^((2^b+1) n_hat) 0^(n_hat) plus 2^(a-b)
    all-zero strings of length (2^b+2) n_hat."""
    if n_hat < 1:
        raise ValueError("n_hat must be positive")
    if p.is_unit:
        raise ValueError("the reduction needs an exponent above 1")
    length = (2 ** p.b + 2) * n_hat
    top = "1" * ((2 ** p.b + 1) * n_hat) + "0" * n_hat
    rows = [top] + ["0" * length] * (2 ** (p.a - p.b))
    return BinaryStringSet.from_texts(rows)


@dataclass(frozen=True)
class ReductionOutput:
    """A centroid instance encoding 3-colorability of ``graph``.

    ``roles[i]`` names the i-th string's function (group1-allones,
    group1-zero-copy#c, vertex-s_i, vertex-r_i, edge-t_j^z, edge-w_j^z)."""

    graph: Graph
    p: PExponent
    strings: BinaryStringSet
    budget: CostBudget
    n_hat: int
    roles: tuple[str, ...]
    distinct: bool

    @property
    def string_length(self) -> int:
        return self.strings.n


def _triple_block(n_hat: int, marked: set[int], z: int) -> str:
    cells = []
    for ell in range(1, n_hat + 1):
        if ell in marked:
            t = ["0", "0", "0"]
            t[z] = "1"
            cells.append("".join(t))
        else:
            cells.append("000")
    return "".join(cells)


def reduce_3coloring(g: Graph, p: PExponent, distinct: bool = False) -> ReductionOutput:
    if p.is_unit:
        raise ValueError("the reduction needs an exponent above 1")
    n, m = g.n, g.m
    n_hat = n + m
    pad = "0" * ((2 ** p.b - 2) * n_hat)
    tail_t = pad + "0" + "1" * (n_hat - 1)
    tail_w = pad + "1" + "0" * (n_hat - 1)
    length = (2 ** p.b + 2) * n_hat
    copies = 2 ** (p.a - p.b)
    ext = copies + 2 ** p.b

    rows: list[str] = []
    roles: list[str] = []
    g1 = "1" * ((2 ** p.b + 1) * n_hat) + "0" * n_hat
    rows.append(g1 + ("0" * copies + "1" * 2 ** p.b if distinct else ""))
    roles.append("group1-allones")
    for c in range(1, copies + 1):
        suffix = "0" * (c - 1) + "1" + "0" * (ext - c) if distinct else ""
        rows.append("0" * length + suffix)
        roles.append(f"group1-zero-copy#{c}")
    suffix = "0" * ext if distinct else ""
    for i in range(1, n + 1):
        u = "".join("111" if ell == i else "000" for ell in range(1, n_hat + 1))
        ubar = "".join("1" if ch == "0" else "0" for ch in u)
        rows.append(u + tail_t + suffix)
        roles.append(f"vertex-s_{i}")
        rows.append(ubar + tail_w + suffix)
        roles.append(f"vertex-r_{i}")
    for j, (vi, vj) in enumerate(g.edges, start=1):
        marked = {vi, vj, n + j}
        for z in range(3):
            e = _triple_block(n_hat, marked, z)
            ebar = "".join("1" if ch == "0" else "0" for ch in e)
            rows.append(e + tail_t + suffix)
            roles.append(f"edge-t_{j}^{z}")
            rows.append(ebar + tail_w + suffix)
            roles.append(f"edge-w_{j}^{z}")

    # distinct variant: only the anchor term changes (n_hat -> n_hat + 1)
    budget = _budget_for(n, m, n_hat + 1 if distinct else n_hat, n_hat, p)
    return ReductionOutput(
        g, p, BinaryStringSet.from_texts(rows), budget, n_hat, tuple(roles), distinct
    )


def coloring_to_centroid(
    g: Graph, coloring: Coloring, p: PExponent, distinct: bool = False
) -> BinaryString:
    """The centroid a proper coloring induces: color triples for vertices, the
    missing endpoint color for each edge slot, zeros elsewhere."""
    if not coloring.is_proper(g):
        raise ValueError("coloring is not proper: some edge is monochromatic")
    n, m = g.n, g.m
    n_hat = n + m
    cells = []
    for i in range(1, n + 1):
        t = ["0", "0", "0"]
        t[coloring.colors[i - 1]] = "1"
        cells.append("".join(t))
    for vi, vj in g.edges:
        missing = ({0, 1, 2} - {coloring.colors[vi - 1], coloring.colors[vj - 1]}).pop()
        t = ["0", "0", "0"]
        t[missing] = "1"
        cells.append("".join(t))
    text = "".join(cells) + "0" * ((2 ** p.b - 1) * n_hat)
    if distinct:
        text += "0" * (2 ** (p.a - p.b) + 2 ** p.b)
    return BinaryString.from_text(text)


def centroid_to_coloring(g: Graph, centroid: BinaryString) -> Optional[Coloring]:
    """Read colors off the vertex triples; None when some triple does not hold
    exactly one 1 (no coloring can be extracted)."""
    n_hat = g.n + g.m
    if centroid.length < 3 * n_hat:
        raise ValueError("centroid shorter than the triple region")
    colors = []
    for i in range(1, g.n + 1):
        triple = [centroid.bit(3 * (i - 1) + z + 1) for z in range(3)]
        if sum(triple) != 1:
            return None
        colors.append(triple.index(1))
    return Coloring(tuple(colors))


# ---------- verifiers ----------


@dataclass(frozen=True)
class GadgetCheck:
    """Exhaustive audit of the group-1 anchor for one (n_hat, p)."""

    n_hat: int
    p: PExponent
    length: int
    min_cost: CostValue
    expected_min: CostValue
    minimizer_count: int
    characterization_count: int
    value_matches: bool
    minimizers_match: bool

    @property
    def ok(self) -> bool:
        return self.value_matches and self.minimizers_match


def verify_gadget_lemma(n_hat: int, p: PExponent, length_cap: int = 24) -> GadgetCheck:
    """Enumerate every centroid against the group-1 anchor and confirm the
    minimum cost is (2^a + 2^(a-b)) n_hat^p, attained exactly by the strings
    with n_hat ones inside the first (2^b + 1) n_hat columns."""
    S = build_gadget_group1(n_hat, p)
    length = S.n
    if length > length_cap:
        raise CapacityError(
            f"gadget audit needs 2^{length} candidates; cap is 2^{length_cap}"
        )
    min_cost, optima = enumerate_optima(S, p, column_cap=length_cap)
    ones_region = (2 ** p.b + 1) * n_hat
    char_count = comb(ones_region, n_hat)
    good = all(
        s.count_ones() == n_hat and all(j <= ones_region for j in s.ones_positions())
        for s in optima
    )
    minimizers_match = good and len(optima) == char_count

    c1 = 2 ** p.a + 2 ** (p.a - p.b)
    table = PowerTable(p, 2 * n_hat)
    expected_raw = c1 * table.powers[n_hat]
    expected = table.to_cost(expected_raw, 1)
    if min_cost.exact is not None and expected.exact is not None:
        value_matches = min_cost.exact == expected.exact
    else:
        value_matches = abs(min_cost.approx - expected.approx) <= min_cost.err + expected.err
    return GadgetCheck(
        n_hat,
        p,
        length,
        min_cost,
        expected,
        len(optima),
        char_count,
        value_matches,
        minimizers_match,
    )


@dataclass(frozen=True)
class StructuredCheck:
    """Result of enumerating all one-1-per-triple candidates of a reduction.

    Sound for deciding feasibility because any budget-meeting centroid must
    place exactly one 1 in every triple (anchor lemma + cover-once pair
    bounds); see the module docstring.
    """

    graph: Graph
    p: PExponent
    candidates: int
    min_cost: CostValue
    budget: CostBudget
    exceeds_budget: bool
    witness: Optional[BinaryString]


def structured_noncolorability_check(g: Graph, p: PExponent) -> StructuredCheck:
    out = reduce_3coloring(g, p)
    n_hat = out.n_hat
    length = out.string_length
    table = PowerTable(p, length)
    pw = table.powers
    rows = [s.bits for s in out.strings]
    # one mask per (triple slot, shift): a 1 at column 3*(ell-1) + z + 1
    masks = [
        [1 << (length - (3 * ell + z + 1)) for z in range(3)] for ell in range(n_hat)
    ]
    best_raw = None
    best_bits = None
    count = 0
    for assign in product(range(3), repeat=n_hat):
        cand = 0
        for ell, z in enumerate(assign):
            cand |= masks[ell][z]
        raw = 0
        for r in rows:
            raw += pw[(cand ^ r).bit_count()]
        count += 1
        if best_raw is None or raw < best_raw:
            best_raw, best_bits = raw, cand
    min_cost = table.to_cost(best_raw, len(rows))
    cmp = compare_cost(min_cost, out.budget, p)
    exceeds = cmp is Comparison.ABOVE
    witness = None if exceeds else BinaryString(best_bits, length)
    return StructuredCheck(g, p, count, min_cost, out.budget, exceeds, witness)
