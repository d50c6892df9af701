"""Exact computations with quantum groups at roots of unity.

Builds the rational, divided-power (Lusztig), Kac-De Concini and hybrid
forms of quantum groups, and mechanically checks the identities satisfied by
the Cartan elements ``H_alpha = (K_alpha^{2 l_alpha} - 1) / Phi_{l_alpha}(v_alpha^2)``.
"""

from qunroll.arith import (
    CycloNum,
    LaurentPoly,
    NotDivisible,
    PoleAtRoot,
    RatFunc,
    cyclotomic,
    eval_at_root,
    exact_div,
    poly_rem,
    quantum_binomial,
    quantum_factorial,
    quantum_number,
    substitute_power,
)

__all__ = [
    "CycloNum", "LaurentPoly", "NotDivisible", "PoleAtRoot", "RatFunc", "cyclotomic",
    "eval_at_root", "exact_div", "poly_rem", "quantum_binomial", "quantum_factorial",
    "quantum_number", "substitute_power",
]

__version__ = "0.1.0"
