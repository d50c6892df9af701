"""U_q(sl2): PBW engine, integral forms, specializations and the hybrid quotient."""

from qunroll.uqsl2.pbw import (
    DegreeCapExceeded,
    TensorElement,
    UqElement,
    E,
    F,
    K,
    antipode,
    commutator,
    coproduct,
    counit,
    divided_power,
)

__all__ = [
    "DegreeCapExceeded", "TensorElement", "UqElement", "E", "F", "K",
    "antipode", "commutator", "coproduct", "counit", "divided_power",
]
