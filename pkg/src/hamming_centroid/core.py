"""Core types and exact cost arithmetic for p-norm Hamming centroids.

Binary strings are bit-packed into Python integers with column 1 as the most
significant bit, so Hamming distance is one XOR plus a popcount and the integer
order of the packed value coincides with lexicographic order of the text form.
Column indices in the public API are 1-based throughout.

Costs are p-th powers of Hamming distances summed over a string set. For
integer exponents (denominator 1) everything is exact integer arithmetic. For
fractional exponents a/b with b > 1 the terms d^(a/b) are irrational in
general; they are computed as b-th roots of exact integers d^a at
`COST_PRECISION_BITS` bits of mantissa with a tracked absolute error bound, and
comparisons that the bound cannot separate are reported as indeterminate rather
than silently resolved.
"""

from __future__ import annotations

import math
from dataclasses import InitVar, dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence, Union

import mpmath

__all__ = [
    "COST_PRECISION_BITS",
    "PExponent",
    "BinaryString",
    "BinaryStringSet",
    "Comparison",
    "CostValue",
    "CostBudget",
    "CentroidResult",
    "PowerTable",
    "IndeterminateComparisonError",
    "hamming_distance",
    "hamming_set",
    "distance_vector",
    "p_power_cost",
    "compare_cost",
]

# Mantissa bits for the fractional-exponent path (well above the 64 required
# for the tracked-error contract; roots of exact integers are good to 1 ulp).
COST_PRECISION_BITS = 96


class IndeterminateComparisonError(ArithmeticError):
    """A cost comparison could not be separated at working precision.

    Raised by solvers when a feasibility decision would depend on it. Supplying
    the budget as an exact p-th power avoids this for integer exponents.
    """


@dataclass(frozen=True)
class PExponent:
    """Rational exponent p = a/b >= 1 in lowest terms.

    p = 1 (a == b) is a convenience mode for the column-majority closed form
    and must be requested explicitly via ``allow_unit``; everything else
    requires a > b >= 1.
    """

    a: int
    b: int = 1
    allow_unit: InitVar[bool] = False

    def __post_init__(self, allow_unit: bool) -> None:
        a, b = self.a, self.b
        if not (isinstance(a, int) and isinstance(b, int)):
            raise ValueError("exponent must be a ratio of integers")
        if a <= 0 or b <= 0:
            raise ValueError("exponent must be positive")
        g = math.gcd(a, b)
        a //= g
        b //= g
        if a < b:
            raise ValueError(f"exponent {a}/{b} is below 1")
        if a == b and not allow_unit:
            raise ValueError(
                "exponent 1 is the majority-vote convenience mode; "
                "construct it with allow_unit=True"
            )
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @classmethod
    def parse(cls, text: str, allow_unit: bool = False) -> "PExponent":
        """Parse 'a/b' or a bare integer 'a'. Rejects anything non-rational."""
        body = text.strip()
        num, _, den = body.partition("/")
        try:
            a = int(num)
            b = int(den) if den else 1
        except ValueError:
            raise ValueError(f"cannot parse exponent {text!r}; expected 'a' or 'a/b'")
        return cls(a, b, allow_unit=allow_unit)

    @property
    def is_unit(self) -> bool:
        return self.a == self.b

    @property
    def is_integer(self) -> bool:
        return self.b == 1

    def as_fraction(self) -> Fraction:
        return Fraction(self.a, self.b)

    def __float__(self) -> float:
        return self.a / self.b

    def __str__(self) -> str:
        return str(self.a) if self.b == 1 else f"{self.a}/{self.b}"


# ---------- binary strings ----------


@dataclass(frozen=True)
class BinaryString:
    """Immutable fixed-length binary string, packed MSB-first into an int."""

    bits: int
    length: int

    def __post_init__(self) -> None:
        if self.length <= 0:
            raise ValueError("binary string must have positive length")
        if not 0 <= self.bits < (1 << self.length):
            raise ValueError("packed value out of range for length")

    @classmethod
    def from_text(cls, text: str) -> "BinaryString":
        if not text or any(c not in "01" for c in text):
            raise ValueError(f"not a binary string: {text!r}")
        return cls(int(text, 2), len(text))

    @classmethod
    def from_bits(cls, values: Iterable[int]) -> "BinaryString":
        bits = 0
        n = 0
        for v in values:
            if v not in (0, 1):
                raise ValueError("bit values must be 0 or 1")
            bits = (bits << 1) | v
            n += 1
        return cls(bits, n)

    @classmethod
    def zeros(cls, n: int) -> "BinaryString":
        return cls(0, n)

    @classmethod
    def all_ones(cls, n: int) -> "BinaryString":
        return cls((1 << n) - 1, n)

    @classmethod
    def from_ones(cls, n: int, ones: Iterable[int]) -> "BinaryString":
        """Build a length-n string with ones at the given 1-based columns."""
        bits = 0
        for j in ones:
            if not 1 <= j <= n:
                raise ValueError(f"column {j} outside 1..{n}")
            bits |= 1 << (n - j)
        return cls(bits, n)

    def bit(self, j: int) -> int:
        """Value at 1-based column j (column 1 is the leftmost character)."""
        if not 1 <= j <= self.length:
            raise ValueError(f"column {j} outside 1..{self.length}")
        return (self.bits >> (self.length - j)) & 1

    def count_ones(self) -> int:
        return self.bits.bit_count()

    def ones_positions(self) -> tuple[int, ...]:
        """1-based columns holding a 1, ascending."""
        return tuple(j for j in range(1, self.length + 1) if self.bit(j))

    def complement(self) -> "BinaryString":
        return BinaryString(self.bits ^ ((1 << self.length) - 1), self.length)

    def concat(self, other: "BinaryString") -> "BinaryString":
        return BinaryString((self.bits << other.length) | other.bits, self.length + other.length)

    @property
    def text(self) -> str:
        return format(self.bits, f"0{self.length}b")

    def __len__(self) -> int:
        return self.length

    def __str__(self) -> str:
        return self.text

    def __repr__(self) -> str:
        return f"BinaryString({self.text!r})"


@dataclass(frozen=True)
class BinaryStringSet:
    """Non-empty tuple of equal-length binary strings (duplicates allowed)."""

    strings: tuple[BinaryString, ...]

    def __post_init__(self) -> None:
        if not self.strings:
            raise ValueError("string set must contain at least one string")
        object.__setattr__(self, "strings", tuple(self.strings))
        n = self.strings[0].length
        if any(s.length != n for s in self.strings):
            raise ValueError("incompatible lengths in string set")

    @classmethod
    def from_texts(cls, texts: Sequence[str]) -> "BinaryStringSet":
        return cls(tuple(BinaryString.from_text(t) for t in texts))

    @property
    def m(self) -> int:
        return len(self.strings)

    @property
    def n(self) -> int:
        return self.strings[0].length

    def column(self, j: int) -> tuple[int, ...]:
        """Bits of 1-based column j across all strings, in input order."""
        return tuple(s.bit(j) for s in self.strings)

    def __iter__(self) -> Iterator[BinaryString]:
        return iter(self.strings)

    def __len__(self) -> int:
        return len(self.strings)

    def __getitem__(self, i: int) -> BinaryString:
        return self.strings[i]


def hamming_distance(x: BinaryString, y: BinaryString) -> int:
    if x.length != y.length:
        raise ValueError("incompatible lengths")
    return (x.bits ^ y.bits).bit_count()


def hamming_set(x: BinaryString, y: BinaryString) -> set[int]:
    """1-based columns where x and y differ."""
    if x.length != y.length:
        raise ValueError("incompatible lengths")
    diff = x.bits ^ y.bits
    n = x.length
    out = set()
    while diff:
        low = diff & -diff
        out.add(n - low.bit_length() + 1)
        diff ^= low
    return out


def distance_vector(candidate: BinaryString, strings: BinaryStringSet) -> tuple[int, ...]:
    cb = candidate.bits
    if candidate.length != strings.n:
        raise ValueError("incompatible lengths")
    return tuple((cb ^ s.bits).bit_count() for s in strings)


# ---------- cost values ----------


class Comparison(Enum):
    """Three-valued outcome of comparing a cost against a budget (<= wins)."""

    BELOW = "below"          # cost <= budget
    ABOVE = "above"          # cost >  budget
    INDETERMINATE = "indeterminate"


def _root_term(power_int: int, b: int) -> tuple[mpmath.mpf, mpmath.mpf]:
    """b-th root of an exact integer with an absolute error bound (~2 ulp)."""
    with mpmath.workprec(COST_PRECISION_BITS):
        if power_int == 0:
            return mpmath.mpf(0), mpmath.mpf(0)
        val = mpmath.root(mpmath.mpf(power_int), b)
        err = val * mpmath.mpf(2) ** (2 - COST_PRECISION_BITS)
    return val, err


@dataclass(frozen=True)
class CostValue:
    """A p-power cost: exact integer when the exponent is an integer,
    otherwise a high-precision value with a tracked absolute error bound."""

    exact: Optional[int]
    approx: mpmath.mpf
    err: mpmath.mpf

    @classmethod
    def from_int(cls, value: int) -> "CostValue":
        return cls(value, mpmath.mpf(value), mpmath.mpf(0))

    @classmethod
    def from_approx(cls, value: mpmath.mpf, err: mpmath.mpf) -> "CostValue":
        return cls(None, value, err)

    @property
    def lower(self) -> mpmath.mpf:
        return self.approx - self.err

    @property
    def upper(self) -> mpmath.mpf:
        return self.approx + self.err

    def __float__(self) -> float:
        return float(self.approx)

    def __str__(self) -> str:
        if self.exact is not None:
            return str(self.exact)
        return mpmath.nstr(self.approx, 17)


class PowerTable:
    """Precomputed d^p for d = 0..max_d; the cost kernel shared by solvers.

    ``powers`` holds exact ints for integer exponents, else mpf values whose
    error is below ``term_err`` relatively. ``sum_raw`` works on these raw
    entries for speed; ``to_cost`` wraps a raw sum into a CostValue with an
    error bound of (number of terms + 1) add-roundings plus the term errors.
    """

    def __init__(self, p: PExponent, max_d: int):
        self.p = p
        self.max_d = max_d
        if p.is_integer:
            self.exact = True
            self.powers: list = [d ** p.a for d in range(max_d + 1)]
            self.term_errs = None
        else:
            self.exact = False
            vals = []
            errs = []
            for d in range(max_d + 1):
                v, e = _root_term(d ** p.a, p.b)
                vals.append(v)
                errs.append(e)
            self.powers = vals
            self.term_errs = errs

    def power(self, d: int):
        return self.powers[d]

    def sum_raw(self, dists: Iterable[int]):
        pw = self.powers
        total = 0 if self.exact else mpmath.mpf(0)
        for d in dists:
            total += pw[d]
        return total

    def to_cost(self, raw, n_terms: int) -> CostValue:
        if self.exact:
            return CostValue.from_int(raw)
        with mpmath.workprec(COST_PRECISION_BITS):
            err = (
                sum(self.term_errs)
                + (n_terms + 1) * abs(raw) * mpmath.mpf(2) ** (1 - COST_PRECISION_BITS)
            )
        return CostValue.from_approx(raw, err)

    def tie_tol(self):
        """Gap below which two raw sums are treated as equal (0 when exact)."""
        if self.exact:
            return 0
        with mpmath.workprec(COST_PRECISION_BITS):
            scale = self.powers[self.max_d] * (self.max_d + 2)
            return scale * mpmath.mpf(2) ** (8 - COST_PRECISION_BITS)

    def cost_of(self, candidate: BinaryString, strings: BinaryStringSet) -> CostValue:
        dists = distance_vector(candidate, strings)
        return self.to_cost(self.sum_raw(dists), len(dists))


def p_power_cost(candidate: BinaryString, strings: BinaryStringSet, p: PExponent) -> CostValue:
    """Sum of p-th powers of Hamming distances from candidate to every string."""
    return PowerTable(p, strings.n).cost_of(candidate, strings)


# ---------- budgets ----------


def _nth_root_exact(value: int, b: int) -> Optional[int]:
    if value < 0:
        return None
    if value in (0, 1) or b == 1:
        return value
    r = round(value ** (1.0 / b))
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand ** b == value:
            return cand
    return None


@dataclass(frozen=True)
class CostBudget:
    """A cost bound, canonically the exact rational p-th power of the norm
    bound k when that is representable.

    Exactly one construction path applies:
      * ``power``: exact rational k^p (from a ``kp`` line or computed k^a);
      * ``norm``: exact rational k whose p-th power is irrational (b > 1);
      * ``power_terms``: exact symbolic sum  Σ coef·base^p  (used by the
        reduction for fractional exponents, where the budget is a sum of
        b-th roots).
    """

    power: Optional[Fraction] = None
    norm: Optional[Fraction] = None
    power_terms: Optional[tuple[tuple[int, int], ...]] = None

    def __post_init__(self) -> None:
        forms = [f for f in (self.power, self.norm, self.power_terms) if f is not None]
        if not forms:
            raise ValueError("budget needs a power, a norm, or power terms")
        if self.power is not None and self.power < 0:
            raise ValueError("budget must be non-negative")
        if self.norm is not None and self.norm < 0:
            raise ValueError("budget must be non-negative")

    @classmethod
    def from_power(cls, value: Union[int, Fraction, str]) -> "CostBudget":
        return cls(power=Fraction(value))

    @classmethod
    def from_norm(cls, k: Union[int, Fraction, str], p: PExponent) -> "CostBudget":
        """Budget given as the norm bound k; stores k^p exactly when rational."""
        kf = Fraction(k)
        if p.is_integer:
            return cls(power=kf ** p.a, norm=kf)
        num = _nth_root_exact(kf.numerator ** p.a, p.b)
        den = _nth_root_exact(kf.denominator ** p.a, p.b)
        if num is not None and den is not None:
            return cls(power=Fraction(num, den), norm=kf)
        return cls(norm=kf)

    @classmethod
    def from_power_terms(cls, terms: Sequence[tuple[int, int]]) -> "CostBudget":
        terms = tuple((int(c), int(base)) for c, base in terms)
        if any(c < 0 or base < 0 for c, base in terms):
            raise ValueError("budget terms must be non-negative")
        return cls(power_terms=terms)

    # -- exact single-value predicates (cross-multiplied integer arithmetic) --

    def _terms_exact(self, p: PExponent) -> Optional[int]:
        """The terms-form value as an exact integer (integer exponents only)."""
        if self.power_terms is None or not p.is_integer:
            return None
        return sum(c * base ** p.a for c, base in self.power_terms)

    def _power_leq(self, d: int, p: PExponent, divisor: int = 1) -> Optional[bool]:
        """Exact truth of d^p <= budget/divisor, or None if undecidable exactly."""
        if d < 0:
            return True
        if self.power is not None:
            u, v = self.power.numerator, self.power.denominator
            return d ** p.a * (v * divisor) ** p.b <= u ** p.b
        if self.norm is not None:
            x, y = self.norm.numerator, self.norm.denominator
            return d ** p.a * y ** p.a * divisor ** p.b <= x ** p.a
        total = self._terms_exact(p)
        if total is not None:
            return d ** p.a * divisor <= total
        return None

    def max_distance(self, p: PExponent, divisor: int = 1) -> int:
        """Largest integer d >= 0 with d^p <= budget/divisor."""
        def leq(d: int) -> bool:
            exact = self._power_leq(d, p, divisor)
            if exact is not None:
                return exact
            # terms form: decide d^p * divisor <= Σ coef·base^p by intervals
            for extra in (0, 64, 192, 448):
                blo, bhi = self.interval(p, extra)
                vlo, vhi = _power_enclosure(d, p, divisor, extra)
                if vhi <= blo:
                    return True
                if vlo > bhi:
                    return False
                if blo == vlo and bhi == vhi:
                    break
            raise IndeterminateComparisonError(
                f"cannot decide d={d} against budget at working precision"
            )

        hi = 1
        while leq(hi):
            hi *= 2
        lo = hi // 2
        while lo + 1 < hi:
            mid = (lo + hi) // 2
            if leq(mid):
                lo = mid
            else:
                hi = mid
        return lo

    def power_equals(self, d: int, p: PExponent) -> bool:
        """Exact truth of d^p == budget (False when not decidable exactly)."""
        if self.power is not None:
            u, v = self.power.numerator, self.power.denominator
            return d ** p.a * v ** p.b == u ** p.b
        if self.norm is not None:
            # d^p == (x/y)^p  iff  d == x/y for non-negative bases
            return self.norm == d
        total = self._terms_exact(p)
        return total is not None and d ** p.a == total

    def exceeded_by_count(self, count: int, p: PExponent) -> bool:
        """Exact truth of count > budget (plain value, not a p-th power);
        conservative False when an interval cannot separate them."""
        if self.power is not None:
            return Fraction(count) > self.power
        if self.norm is not None:
            x, y = self.norm.numerator, self.norm.denominator
            return count ** p.b * y ** p.a > x ** p.a
        total = self._terms_exact(p)
        if total is not None:
            return count > total
        _, hi = self.interval(p)
        return mpmath.mpf(count) > hi

    def interval(self, p: PExponent, extra_bits: int = 0) -> tuple[mpmath.mpf, mpmath.mpf]:
        """Enclosure [lo, hi] of the p-th-power budget value."""
        prec = COST_PRECISION_BITS + extra_bits
        with mpmath.workprec(prec):
            if self.power is not None:
                v = mpmath.mpf(self.power.numerator) / self.power.denominator
                e = abs(v) * mpmath.mpf(2) ** (2 - prec)
                return v - e, v + e
            if self.norm is not None:
                kn = mpmath.mpf(self.norm.numerator) / self.norm.denominator
                v = mpmath.root(kn ** p.a, p.b)
                e = abs(v) * mpmath.mpf(2) ** (4 - prec)
                return v - e, v + e
            total = mpmath.mpf(0)
            for coef, base in self.power_terms:
                total += coef * mpmath.root(mpmath.mpf(base) ** p.a, p.b)
            e = abs(total) * mpmath.mpf(2) ** (6 - prec)
            return total - e, total + e

    def describe(self, p: PExponent) -> str:
        if self.power is not None:
            q = self.power
            return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
        if self.norm is not None:
            return f"norm {self.norm}"
        return " + ".join(f"{c}*{base}^{p}" for c, base in self.power_terms)


def _power_enclosure(
    d: int, p: PExponent, scale: int, extra_bits: int
) -> tuple[mpmath.mpf, mpmath.mpf]:
    """Enclosure of d^p * scale at COST_PRECISION_BITS + extra_bits."""
    prec = COST_PRECISION_BITS + extra_bits
    with mpmath.workprec(prec):
        if d == 0:
            return mpmath.mpf(0), mpmath.mpf(0)
        v = mpmath.root(mpmath.mpf(d) ** p.a, p.b) * scale
        e = abs(v) * mpmath.mpf(2) ** (3 - prec)
    return v - e, v + e


def compare_cost(cost: CostValue, budget: CostBudget, p: PExponent) -> Comparison:
    """Three-valued cost-vs-budget comparison with <= semantics for BELOW."""
    if cost.exact is not None and budget.power is not None:
        return Comparison.BELOW if Fraction(cost.exact) <= budget.power else Comparison.ABOVE
    terms_total = budget._terms_exact(p)
    if cost.exact is not None and terms_total is not None:
        return Comparison.BELOW if cost.exact <= terms_total else Comparison.ABOVE
    if cost.exact is not None and budget.norm is not None:
        # cost^b vs k^a exactly: both sides integer/rational powers
        x, y = budget.norm.numerator, budget.norm.denominator
        return (
            Comparison.BELOW
            if cost.exact ** p.b * y ** p.a <= x ** p.a
            else Comparison.ABOVE
        )
    for extra in (0, 64, 192):
        blo, bhi = budget.interval(p, extra)
        if cost.upper <= blo:
            return Comparison.BELOW
        if cost.lower > bhi:
            return Comparison.ABOVE
    return Comparison.INDETERMINATE


# ---------- results ----------


@dataclass(frozen=True)
class CentroidResult:
    """A solved centroid: the string, its cost, which algorithm produced it,
    and the per-input-string Hamming distances (input order)."""

    centroid: BinaryString
    cost: CostValue
    algorithm: str
    distance_vector: tuple[int, ...]

    @property
    def max_distance(self) -> int:
        return max(self.distance_vector)
