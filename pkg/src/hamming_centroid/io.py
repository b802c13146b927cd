"""Instance file formats and the result JSON schema.

Text format (``#`` starts a comment, blank lines ignored)::

    p 2/1
    kp 56          # optional: budget as exact p-th power (int or num/den)
    1111111        # or:  k 7.5   (budget as a decimal norm bound)
    1111000
    ...

JSON mirror: ``{"p": {"a": 2, "b": 1}, "power_budget": 56, "strings": [...]}``
with ``power_budget`` null when absent, a ``"num/den"`` string when
non-integer, plus optional ``norm`` / ``power_terms`` keys for budgets that
have no exact rational p-th power.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

import mpmath

from .core import (
    BinaryString,
    BinaryStringSet,
    CentroidResult,
    CostBudget,
    PExponent,
)

__all__ = [
    "Instance",
    "InstanceFormatError",
    "parse_instance",
    "parse_instance_json",
    "write_instance",
    "instance_to_json_dict",
    "load_instance",
    "save_instance",
    "result_to_json_dict",
]


class InstanceFormatError(ValueError):
    """Malformed instance input; message carries the 1-based line number."""


@dataclass(frozen=True)
class Instance:
    p: PExponent
    budget: Optional[CostBudget]
    strings: BinaryStringSet


def _parse_budget_token(keyword: str, value: str, p: PExponent, lineno: int) -> CostBudget:
    try:
        if keyword == "kp":
            frac = Fraction(value)
            if frac < 0:
                raise ValueError
            return CostBudget.from_power(frac)
        return CostBudget.from_norm(Fraction(value), p)
    except (ValueError, ZeroDivisionError):
        raise InstanceFormatError(f"line {lineno}: invalid budget value {value!r}")


def parse_instance(text: str) -> Instance:
    p: Optional[PExponent] = None
    budget: Optional[CostBudget] = None
    rows: list[str] = []
    budget_allowed = True
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if p is None:
            if parts[0] != "p" or len(parts) != 2:
                raise InstanceFormatError(
                    f"line {lineno}: expected exponent header 'p a/b', got {line!r}"
                )
            try:
                p = PExponent.parse(parts[1], allow_unit=True)
            except ValueError as exc:
                raise InstanceFormatError(f"line {lineno}: {exc}")
            continue
        if budget_allowed and parts[0] in ("k", "kp"):
            if len(parts) != 2:
                raise InstanceFormatError(f"line {lineno}: budget line needs one value")
            budget = _parse_budget_token(parts[0], parts[1], p, lineno)
            budget_allowed = False
            continue
        budget_allowed = False
        if len(parts) != 1 or any(c not in "01" for c in parts[0]):
            raise InstanceFormatError(f"line {lineno}: expected a binary string, got {line!r}")
        if rows and len(parts[0]) != len(rows[0]):
            raise InstanceFormatError(
                f"line {lineno}: string length {len(parts[0])} differs from "
                f"earlier length {len(rows[0])}"
            )
        rows.append(parts[0])
    if p is None:
        raise InstanceFormatError("line 1: missing exponent header 'p a/b'")
    if not rows:
        raise InstanceFormatError("instance contains no strings")
    return Instance(p, budget, BinaryStringSet.from_texts(rows))


def _frac_to_json(q: Fraction) -> Union[int, str]:
    return q.numerator if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def instance_to_json_dict(inst: Instance) -> dict:
    out: dict = {
        "p": {"a": inst.p.a, "b": inst.p.b},
        "power_budget": None,
        "strings": [s.text for s in inst.strings],
    }
    b = inst.budget
    if b is not None:
        if b.power is not None:
            out["power_budget"] = _frac_to_json(b.power)
        if b.norm is not None and b.power is None:
            out["norm"] = _frac_to_json(b.norm)
        if b.power_terms is not None:
            out["power_terms"] = [[c, base] for c, base in b.power_terms]
    return out


def parse_instance_json(text: str) -> Instance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"line {exc.lineno}: invalid JSON ({exc.msg})")
    try:
        p = PExponent(int(doc["p"]["a"]), int(doc["p"]["b"]), allow_unit=True)
        budget = None
        if doc.get("power_budget") is not None:
            budget = CostBudget.from_power(Fraction(str(doc["power_budget"])))
        elif doc.get("power_terms") is not None:
            budget = CostBudget.from_power_terms(
                [(int(c), int(base)) for c, base in doc["power_terms"]]
            )
        elif doc.get("norm") is not None:
            budget = CostBudget.from_norm(Fraction(str(doc["norm"])), p)
        strings = BinaryStringSet.from_texts(doc["strings"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InstanceFormatError(f"invalid instance JSON: {exc}")
    return Instance(p, budget, strings)


def write_instance(inst: Instance, comment: Optional[str] = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"p {inst.p}")
    b = inst.budget
    if b is not None:
        if b.power is not None:
            lines.append(f"kp {_frac_to_json(b.power)}")
        elif b.norm is not None:
            lines.append(f"k {float(b.norm)}")
        else:
            # sum-of-powers budgets have no exact one-line form; emit a close
            # decimal norm and keep the exact terms in the JSON mirror/sidecar
            _, hi = b.interval(inst.p)
            with mpmath.workprec(80):
                k = mpmath.root(hi, inst.p.a) ** inst.p.b
            lines.append(f"k {mpmath.nstr(k, 25)}")
    lines.extend(s.text for s in inst.strings)
    return "\n".join(lines) + "\n"


def load_instance(path: str) -> Instance:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    if path.endswith(".json") or text.lstrip()[:1] == "{":
        return parse_instance_json(text)
    return parse_instance(text)


def save_instance(inst: Instance, path: str, comment: Optional[str] = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        if path.endswith(".json"):
            json.dump(instance_to_json_dict(inst), fh, indent=2)
            fh.write("\n")
        else:
            fh.write(write_instance(inst, comment))


def result_to_json_dict(
    result: CentroidResult, p: PExponent, runtime_ms: float
) -> dict:
    """Schema: {centroid, cost, norm, algorithm, distance_vector, runtime_ms}."""
    cost = result.cost
    if cost.exact is not None:
        cost_json: Union[int, float] = cost.exact
        with mpmath.workprec(64):
            norm = float(mpmath.root(mpmath.mpf(cost.exact) ** p.b, p.a))
    else:
        cost_json = float(cost.approx)
        with mpmath.workprec(64):
            norm = float(mpmath.root(cost.approx ** p.b, p.a))
    return {
        "centroid": result.centroid.text,
        "cost": cost_json,
        "norm": norm,
        "algorithm": result.algorithm,
        "distance_vector": list(result.distance_vector),
        "runtime_ms": runtime_ms,
    }
