"""Exact learning of d-monotone Boolean functions over finite lattices."""

from .boolfn import (
    ComposedTarget,
    DenseFunction,
    MonotoneDNF,
    XorHypothesis,
    chain_alternations,
    global_min,
    implies,
    local_min,
    monotone_closure,
    monotone_degree,
    nested_disjoint_violation,
    strict_decompose,
)
from .consistent import LabeledSample, consistent
from .families import (
    chain_witness_check,
    parity_table,
    prefix_levels,
    random_composed,
    takimoto_family,
    tightness_family,
)
from .fileio import dumps_function, load_function, loads_function, save_function
from .lattice import (
    CubeLattice,
    ExplicitLattice,
    Lattice,
    load_lattice,
    parse_lattice,
    validate_explicit,
)
from .learner import (
    DescentResult,
    EquivalenceOracle,
    MembershipOracle,
    QueryStats,
    SamplingEquivalenceOracle,
    counterexample_bound,
    descend_to_local_min,
    learn,
)

__version__ = "0.1.0"

__all__ = [
    "ComposedTarget",
    "CubeLattice",
    "DenseFunction",
    "DescentResult",
    "EquivalenceOracle",
    "ExplicitLattice",
    "LabeledSample",
    "Lattice",
    "MembershipOracle",
    "MonotoneDNF",
    "QueryStats",
    "SamplingEquivalenceOracle",
    "XorHypothesis",
    "chain_alternations",
    "chain_witness_check",
    "consistent",
    "counterexample_bound",
    "descend_to_local_min",
    "dumps_function",
    "global_min",
    "implies",
    "learn",
    "load_function",
    "load_lattice",
    "loads_function",
    "local_min",
    "monotone_closure",
    "monotone_degree",
    "nested_disjoint_violation",
    "parity_table",
    "parse_lattice",
    "prefix_levels",
    "random_composed",
    "save_function",
    "strict_decompose",
    "takimoto_family",
    "tightness_family",
    "validate_explicit",
]
