"""Exact enumeration toolkit for labelled combinatorial structures.

Three layers:

* exact coefficient rings and truncated exponential generating series
  (``rings``, ``egf``);
* a partial-semigroup framework with brute-force axiom certifiers,
  concrete families (graphs, endofunctions, set partitions), and the
  exponential-formula engine relating a family's series to the series of
  its connected atoms (``sfd``, ``families``, ``statistics``);
* a normal-ordering engine for the boson creation/annihilation algebra
  producing generalized Stirling triangles (``weyl``).

The ``egflab`` console script exposes tables, verifications, and b-file
comparisons; see the README.
"""

from .egf import (
    EgfSeries,
    egf_add,
    egf_exp,
    egf_exp_partition,
    egf_from,
    egf_log,
    egf_mul,
)
from .families import (
    ENDOFUNCTIONS,
    GRAPHS,
    PARTITIONS,
    BurnsideParams,
    Endofunction,
    LabelledGraph,
    SetPartition,
    burnside_family,
    get_family,
)
from .report import CheckReport
from .rings import MultiPolynomial, ring_add, ring_eval, ring_mul, ring_neg
from .sfd import (
    StructureFamily,
    atoms_on,
    check_direct_sum_axioms,
    check_levi,
    check_unique_factorization,
    decompose_atoms,
)
from .statistics import (
    COUNT,
    Statistic,
    atoms_egf_from_total,
    class_sum,
    check_equivariance,
    check_multiplicativity,
    egf_of,
    verify_exponential_formula,
    verify_stirling_identity,
)
from .weyl import (
    NormalFormOperator,
    OperatorExpr,
    StirlingTable,
    excess,
    gen_stirling,
    multiply_normal,
    normal_order,
    parse_operator,
    power_normal,
    verify_one_annihilation,
)

__all__ = [
    "EgfSeries",
    "egf_add",
    "egf_exp",
    "egf_exp_partition",
    "egf_from",
    "egf_log",
    "egf_mul",
    "ENDOFUNCTIONS",
    "GRAPHS",
    "PARTITIONS",
    "BurnsideParams",
    "Endofunction",
    "LabelledGraph",
    "SetPartition",
    "burnside_family",
    "get_family",
    "CheckReport",
    "MultiPolynomial",
    "ring_add",
    "ring_eval",
    "ring_mul",
    "ring_neg",
    "StructureFamily",
    "atoms_on",
    "check_direct_sum_axioms",
    "check_levi",
    "check_unique_factorization",
    "decompose_atoms",
    "COUNT",
    "Statistic",
    "atoms_egf_from_total",
    "class_sum",
    "check_equivariance",
    "check_multiplicativity",
    "egf_of",
    "verify_exponential_formula",
    "verify_stirling_identity",
    "NormalFormOperator",
    "OperatorExpr",
    "StirlingTable",
    "excess",
    "gen_stirling",
    "multiply_normal",
    "normal_order",
    "parse_operator",
    "power_normal",
    "verify_one_annihilation",
]

__version__ = "0.1.0"
