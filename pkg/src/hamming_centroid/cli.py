"""Command-line front end (``hdc`` or ``python -m hamming_centroid``).

Subcommands: solve, reduce, verify, gen, types, export-cnip. Results go to
stdout as JSON; diagnostics go to stderr. Exit codes: 0 success/feasible,
1 infeasible (or a failed verification suite), 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from typing import Optional

import numpy as np

from . import __version__
from .approx import approx_factor2
from .core import (
    CostBudget,
    IndeterminateComparisonError,
    PExponent,
    PowerTable,
    distance_vector,
)
from .exact import (
    CapacityError,
    solve_bruteforce,
    solve_committee,
    solve_dispatch,
    solve_dp,
    solve_searchtree,
)
from .generator import gen_planted, gen_uniform
from .io import (
    Instance,
    InstanceFormatError,
    load_instance,
    result_to_json_dict,
    save_instance,
    write_instance,
)
from .reduction import (
    Coloring,
    Graph,
    GraphFormatError,
    centroid_to_coloring,
    coloring_to_centroid,
    complete_graph,
    reduce_3coloring,
    structured_noncolorability_check,
    verify_gadget_lemma,
)
from .typed_ip import build_cnip, extract_types, solve_typed

__all__ = ["main"]


class _InputError(Exception):
    """User-input problem; main() reports it on stderr and exits 2."""


def _positive_threads(value: str) -> int:
    n = int(value)
    if n < 1:
        raise argparse.ArgumentTypeError("--threads must be >= 1")
    return n


def _load(path: str) -> Instance:
    try:
        return load_instance(path)
    except FileNotFoundError:
        raise _InputError(f"no such file: {path}")
    except InstanceFormatError as exc:
        raise _InputError(f"{path}: {exc}")


def _load_graph(path: str) -> Graph:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return Graph.from_text(fh.read())
    except FileNotFoundError:
        raise _InputError(f"no such file: {path}")
    except GraphFormatError as exc:
        raise _InputError(f"{path}: {exc}")


def _resolve_p(inst: Instance, override: Optional[str]) -> PExponent:
    if override is None:
        return inst.p
    try:
        return PExponent.parse(override, allow_unit=True)
    except ValueError as exc:
        raise _InputError(str(exc))


def _resolve_budget(
    inst: Instance, p: PExponent, kp: Optional[str], k: Optional[str]
) -> Optional[CostBudget]:
    if kp is not None and k is not None:
        raise _InputError("give at most one of --kp and --k")
    try:
        if kp is not None:
            return CostBudget.from_power(Fraction(kp))
        if k is not None:
            return CostBudget.from_norm(Fraction(k), p)
    except (ValueError, ZeroDivisionError) as exc:
        raise _InputError(f"bad budget: {exc}")
    return inst.budget


# ---------- solve ----------


def cmd_solve(args: argparse.Namespace) -> int:
    inst = _load(args.instance)
    p = _resolve_p(inst, args.p)
    budget = _resolve_budget(inst, p, args.kp, args.k)
    S = inst.strings
    start = time.perf_counter()
    try:
        if args.t is not None:
            result = solve_committee(S, p, args.t, budget)
        elif args.algo == "auto":
            result = solve_dispatch(S, p, budget)
        elif args.algo == "bruteforce":
            result = solve_bruteforce(S, p, budget)
        elif args.algo == "dp":
            result = solve_dp(S, p, budget)
        elif args.algo == "searchtree":
            result = solve_searchtree(S, p, budget)
        elif args.algo == "typed-bb":
            result = solve_typed(S, p, budget)
        else:  # approx2: budget ignored — an approximation certifies nothing
            result = approx_factor2(S, p)
    except (CapacityError, ValueError) as exc:
        raise _InputError(str(exc))
    except IndeterminateComparisonError as exc:
        raise _InputError(str(exc))
    runtime_ms = (time.perf_counter() - start) * 1e3
    if result is None:
        doc = {"feasible": False, "budget": budget.describe(p), "runtime_ms": runtime_ms}
        print(json.dumps(doc))
        return 1
    doc = result_to_json_dict(result, p, runtime_ms)
    doc["feasible"] = True
    print(json.dumps(doc))
    return 0


# ---------- reduce ----------


def cmd_reduce(args: argparse.Namespace) -> int:
    g = _load_graph(args.graph)
    try:
        p = PExponent.parse(args.p)
    except ValueError as exc:
        raise _InputError(str(exc))
    out = reduce_3coloring(g, p, distinct=args.distinct)
    inst = Instance(p, out.budget, out.strings)
    summary = {
        "strings": out.strings.m,
        "columns": out.strings.n,
        "n_hat": out.n_hat,
        "distinct": out.distinct,
        "budget": out.budget.describe(p),
    }
    if args.out:
        save_instance(inst, args.out)
        with open(args.out + ".roles.json", "w", encoding="utf-8") as fh:
            json.dump({"roles": list(out.roles)}, fh, indent=2)
        summary["out"] = args.out
        summary["roles_out"] = args.out + ".roles.json"
        print(json.dumps(summary))
    else:
        sys.stdout.write(write_instance(inst))
        print(json.dumps(summary), file=sys.stderr)
    return 0


# ---------- verify ----------


def _report(name: str, ok: bool, detail: str = "") -> bool:
    tag = "PASS" if ok else "FAIL"
    suffix = f"  ({detail})" if detail else ""
    print(f"{tag}  {name}{suffix}")
    return ok


def _require_seed(args: argparse.Namespace) -> int:
    if args.seed is None:
        raise _InputError("randomized suites require --seed (no timestamp default)")
    return args.seed


def _random_instances(seed: int, trials: int, nmax: int, mmax: int):
    rng = np.random.Generator(np.random.PCG64(seed))
    exponents = [PExponent(2, 1), PExponent(3, 1), PExponent(3, 2)]
    for i in range(trials):
        n = int(rng.integers(1, nmax + 1))
        m = int(rng.integers(1, mmax + 1))
        S = gen_uniform(n, m, int(rng.integers(0, 2**63)))
        yield S, exponents[i % len(exponents)]


def _cost_float(result) -> float:
    c = result.cost
    return float(c.exact) if c.exact is not None else float(c.approx)


def _costs_agree(a, b, p: PExponent) -> bool:
    if a.cost.exact is not None and b.cost.exact is not None:
        return a.cost.exact == b.cost.exact
    x, y = _cost_float(a), _cost_float(b)
    return abs(x - y) <= 1e-9 * max(1.0, abs(x), abs(y))


def verify_gadget(args: argparse.Namespace) -> int:
    try:
        p = PExponent.parse(args.p)
        check = verify_gadget_lemma(args.nhat, p)
    except (ValueError, CapacityError) as exc:
        raise _InputError(str(exc))
    mc = check.min_cost
    detail = (
        f"min {mc.exact if mc.exact is not None else float(mc.approx)}, "
        f"{check.minimizer_count} minimizers"
    )
    ok = _report(f"gadget n_hat={args.nhat} p={p}", check.ok, detail)
    return 0 if ok else 1


def verify_oracle(args: argparse.Namespace) -> int:
    seed = _require_seed(args)
    all_ok = True
    worst = ""
    for idx, (S, p) in enumerate(
        _random_instances(seed, args.trials, args.nmax, args.mmax)
    ):
        ref = solve_bruteforce(S, p)
        others = [solve_dp(S, p), solve_searchtree(S, p), solve_dispatch(S, p), solve_typed(S, p)]
        if not all(o is not None and _costs_agree(ref, o, p) for o in others):
            all_ok = False
            worst = f"first divergence at trial {idx}"
            break
    _report(
        f"oracle agreement over {args.trials} trials "
        f"(n<={args.nmax}, m<={args.mmax}, p in {{2, 3, 3/2}})",
        all_ok,
        worst,
    )
    return 0 if all_ok else 1


def verify_approx(args: argparse.Namespace) -> int:
    seed = _require_seed(args)
    max_ratio = 1.0
    for S, p in _random_instances(seed, args.trials, args.nmax, args.mmax):
        opt = solve_bruteforce(S, p)
        apx = approx_factor2(S, p)
        o, a = _cost_float(opt), _cost_float(apx)
        ratio = 1.0 if a == 0.0 else (a / o) ** (1.0 / float(p))
        max_ratio = max(max_ratio, ratio)
    ok = _report(
        f"approximation ratio over {args.trials} trials",
        max_ratio <= 2.0,
        f"max ratio {max_ratio:.6f}",
    )
    return 0 if ok else 1


def verify_reduction(args: argparse.Namespace) -> int:
    p2 = PExponent(2, 1)
    ok = True

    k3 = complete_graph(3)
    out = reduce_3coloring(k3, p2)
    col = Coloring((0, 1, 2))
    center = coloring_to_centroid(k3, col, p2)
    table = PowerTable(p2, out.strings.n)
    cost = table.sum_raw(distance_vector(center, out.strings))
    ok &= _report(
        "K3 coloring meets the budget exactly",
        out.budget.power is not None and Fraction(cost) == out.budget.power,
        f"cost {cost}",
    )
    back = centroid_to_coloring(k3, center)
    ok &= _report(
        "K3 centroid reads back as a proper coloring",
        back is not None and back.is_proper(k3),
    )

    k4 = complete_graph(4)
    check = structured_noncolorability_check(k4, p2)
    mc = check.min_cost
    ok &= _report(
        "K4 structured enumeration exceeds the budget",
        check.exceeds_budget,
        f"min {mc.exact if mc.exact is not None else float(mc.approx)} over "
        f"{check.candidates} candidates",
    )

    dout = reduce_3coloring(k3, p2, distinct=True)
    ok &= _report(
        "distinct variant: strings pairwise distinct",
        len({s.bits for s in dout.strings}) == dout.strings.m,
    )
    return 0 if ok else 1


def cmd_verify(args: argparse.Namespace) -> int:
    return {
        "gadget": verify_gadget,
        "oracle": verify_oracle,
        "approx": verify_approx,
        "reduction": verify_reduction,
    }[args.suite](args)


# ---------- gen ----------


def cmd_gen(args: argparse.Namespace) -> int:
    try:
        p = PExponent.parse(args.p, allow_unit=True)
    except ValueError as exc:
        raise _InputError(str(exc))
    if not 0.0 <= args.rho <= 1.0:
        raise _InputError("--rho must lie in [0, 1]")
    comment = None
    if args.mode == "uniform":
        S = gen_uniform(args.n, args.m, args.seed)
    else:
        S, planted = gen_planted(args.n, args.m, args.seed, args.rho)
        comment = f"planted {planted.text}"
    inst = Instance(p, None, S)
    if args.out:
        save_instance(inst, args.out, comment=comment)
        print(json.dumps({"out": args.out, "n": S.n, "m": S.m, "mode": args.mode}))
    else:
        sys.stdout.write(write_instance(inst, comment=comment))
    return 0


# ---------- types / export-cnip ----------


def cmd_types(args: argparse.Namespace) -> int:
    inst = _load(args.instance)
    profile = extract_types(inst.strings)
    doc = {
        "n": profile.n,
        "m": profile.m,
        "n_types": profile.n_types,
        "types": [
            {
                "pattern": "".join(str(b) for b in profile.patterns[j]),
                "count": profile.counts[j],
                "columns": list(profile.columns_of_type(j)),
            }
            for j in range(profile.n_types)
        ],
    }
    print(json.dumps(doc, indent=2))
    return 0


def cmd_export_cnip(args: argparse.Namespace) -> int:
    inst = _load(args.instance)
    profile = extract_types(inst.strings)
    model = build_cnip(profile, inst.p)
    doc = model.to_json_dict()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2)
        print(json.dumps({"out": args.out, "rows": len(model.E), "cols": len(model.E[0])}))
    else:
        print(json.dumps(doc, indent=2))
    return 0


# ---------- parser ----------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="hdc",
        description="Exact and approximate p-th-power Hamming centroid solvers.",
    )
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("solve", help="solve or decide an instance file")
    sp.add_argument("instance")
    sp.add_argument(
        "--algo",
        choices=["auto", "bruteforce", "dp", "searchtree", "typed-bb", "approx2"],
        default="auto",
    )
    sp.add_argument("--t", type=int, default=None,
                    help="committee mode: exact number of ones in the centroid")
    sp.add_argument("--p", default=None, help="override the instance exponent (a or a/b)")
    sp.add_argument("--kp", default=None,
                    help="override the p-th-power budget (integer or num/den)")
    sp.add_argument("--k", default=None, help="override the norm budget (decimal)")
    sp.add_argument("--threads", type=_positive_threads, default=1,
                    help="accepted for interface stability; execution is sequential "
                         "and results are identical for any value")
    sp.set_defaults(func=cmd_solve)

    rp = sub.add_parser("reduce", help="encode graph 3-coloring as an instance")
    rp.add_argument("graph")
    rp.add_argument("--p", required=True, help="exponent a or a/b, strictly above 1")
    rp.add_argument("--distinct", action="store_true",
                    help="append disambiguating columns so all strings are distinct")
    rp.add_argument("--out", default=None,
                    help="instance file to write (role map goes to OUT.roles.json)")
    rp.set_defaults(func=cmd_reduce)

    vp = sub.add_parser("verify", help="run a verification suite")
    vp.add_argument("suite", choices=["gadget", "oracle", "approx", "reduction"])
    vp.add_argument("--nhat", type=int, default=1)
    vp.add_argument("--p", default="2")
    vp.add_argument("--trials", type=int, default=200)
    vp.add_argument("--nmax", type=int, default=12)
    vp.add_argument("--mmax", type=int, default=6)
    vp.add_argument("--seed", type=int, default=None,
                    help="required for randomized suites (oracle, approx)")
    vp.set_defaults(func=cmd_verify)

    gp = sub.add_parser("gen", help="generate a random instance")
    gp.add_argument("--n", type=int, required=True)
    gp.add_argument("--m", type=int, required=True)
    gp.add_argument("--seed", type=int, required=True)
    gp.add_argument("--mode", choices=["uniform", "planted"], default="uniform")
    gp.add_argument("--rho", type=float, default=0.1, help="planted flip probability")
    gp.add_argument("--p", default="2", help="exponent header for the written instance")
    gp.add_argument("--out", default=None)
    gp.set_defaults(func=cmd_gen)

    tp = sub.add_parser("types", help="print the column-type profile of an instance")
    tp.add_argument("instance")
    tp.set_defaults(func=cmd_types)

    ep = sub.add_parser("export-cnip", help="export the typed integer model as JSON")
    ep.add_argument("instance")
    ep.add_argument("--out", default=None)
    ep.set_defaults(func=cmd_export_cnip)
    return ap


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
