"""Exact and approximate solvers for the p-th-power Hamming centroid problem
on binary strings, with a verifiable graph-coloring hardness reduction.

Highlights:

* :mod:`~hamming_centroid.core` — bit-packed strings, rational exponents,
  exact/interval cost arithmetic and budgets;
* :mod:`~hamming_centroid.exact` — brute force, packed distance-vector DP,
  bounded-ball search tree, a dispatcher, the fixed-ones committee variant,
  and the p = 1 majority rule;
* :mod:`~hamming_centroid.typed_ip` — column-type compression and a convex
  branch-and-bound over per-type counts, plus an integer-model export;
* :mod:`~hamming_centroid.approx` — the factor-2^(1-1/p) best-input-string
  approximation;
* :mod:`~hamming_centroid.reduction` — 3-coloring to centroid instances with
  exhaustive gadget audits;
* :mod:`~hamming_centroid.estimator` — a scikit-learn compatible wrapper;
* ``hdc`` / ``python -m hamming_centroid`` — the command-line interface.
"""

from .approx import approx_factor2
from .core import (
    BinaryString,
    BinaryStringSet,
    CentroidResult,
    Comparison,
    CostBudget,
    CostValue,
    IndeterminateComparisonError,
    PExponent,
    PowerTable,
    compare_cost,
    distance_vector,
    hamming_distance,
    hamming_set,
    p_power_cost,
)
from .estimator import HammingCentroid, validate_binary_matrix
from .exact import (
    CapacityError,
    dispatch_choice,
    enumerate_optima,
    preprocess_constant_columns,
    solve_bruteforce,
    solve_committee,
    solve_dispatch,
    solve_dp,
    solve_majority,
    solve_searchtree,
)
from .generator import GenSpec, gen_planted, gen_uniform, generate
from .io import (
    Instance,
    InstanceFormatError,
    load_instance,
    parse_instance,
    save_instance,
    write_instance,
)
from .reduction import (
    Coloring,
    Graph,
    GraphFormatError,
    ReductionOutput,
    build_gadget_group1,
    centroid_to_coloring,
    coloring_to_centroid,
    complete_graph,
    reduce_3coloring,
    structured_noncolorability_check,
    verify_gadget_lemma,
)
from .typed_ip import (
    CnipModel,
    TypeProfile,
    build_cnip,
    decode_centroid,
    extract_types,
    solve_typed,
    solve_typed_bb,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "BinaryString",
    "BinaryStringSet",
    "CentroidResult",
    "Comparison",
    "CostBudget",
    "CostValue",
    "IndeterminateComparisonError",
    "PExponent",
    "PowerTable",
    "compare_cost",
    "distance_vector",
    "hamming_distance",
    "hamming_set",
    "p_power_cost",
    "Instance",
    "InstanceFormatError",
    "load_instance",
    "parse_instance",
    "save_instance",
    "write_instance",
    "CapacityError",
    "dispatch_choice",
    "enumerate_optima",
    "preprocess_constant_columns",
    "solve_bruteforce",
    "solve_committee",
    "solve_dispatch",
    "solve_dp",
    "solve_majority",
    "solve_searchtree",
    "CnipModel",
    "TypeProfile",
    "build_cnip",
    "decode_centroid",
    "extract_types",
    "solve_typed",
    "solve_typed_bb",
    "approx_factor2",
    "Coloring",
    "Graph",
    "GraphFormatError",
    "ReductionOutput",
    "build_gadget_group1",
    "centroid_to_coloring",
    "coloring_to_centroid",
    "complete_graph",
    "reduce_3coloring",
    "structured_noncolorability_check",
    "verify_gadget_lemma",
    "GenSpec",
    "gen_planted",
    "gen_uniform",
    "generate",
    "HammingCentroid",
    "validate_binary_matrix",
]
