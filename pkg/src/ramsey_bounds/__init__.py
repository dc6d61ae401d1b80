"""Exact pigeonhole upper bounds on multicolor Ramsey numbers."""

from .bigcomb import (
    PartList,
    binomial,
    e0_scaled,
    e1_scaled,
    factorial,
    multinomial,
    multinomial_recursive,
)
from .bounds import (
    BoundReport,
    ColorSignature,
    M,
    M_formula,
    M_lower,
    M_upper,
    asympt_constants,
    asympt_ratio,
    bound_report,
    canonicalize,
    classical_bound,
    diag,
    php_bound,
    teravainen_bound,
    w,
    w3_exact,
    w_lower_diag,
)
from .oracles import (
    EdgeColoring,
    Outcome,
    SearchOutcome,
    mono_clique_exists,
    naive_M_w,
    php_check,
    ramsey_witness_search,
)

__version__ = "0.1.0"
