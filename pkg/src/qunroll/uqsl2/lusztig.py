"""Integral forms of U_q(sl2) and the specialization of Lusztig's form.

Lusztig's form has the ``Z[v, 1/v]``-basis ``E^(a) K^delta [K; 0, t] F^(c)``
(``delta`` in ``{0, 1}``), labelled ``(a, delta, t, c)``. The Kac-De Concini
form has the basis ``E^a K^b F^c``.
"""

from __future__ import annotations

from functools import lru_cache

from qunroll.arith import CycloNum, LaurentPoly, RatFunc, eval_at_root
from qunroll.torus import (
    _render_coeff_prefix,
    basis_coeffs,
    decompose_univariate,
    render_sum,
)
from qunroll.uqsl2.pbw import UqElement, mono_str

Label = tuple[int, int, int, int]


def label_str(lab: Label, index: str = "") -> str:
    a, delta, t, c = lab
    parts = []
    if a:
        parts.append(mono_str((a, 0, 0), index=index))
    if delta:
        parts.append("K" + index)
    if t:
        parts.append(f"[K{index};0,{t}]")
    if c:
        parts.append(mono_str((0, 0, c), index=index))
    return "*".join(parts)


def label_element(lab: Label) -> UqElement:
    a, delta, t, c = lab
    return UqElement({(a, k, c): x for k, x in basis_coeffs(delta, t, 1).items()})


def lusztig_coordinates(x: UqElement) -> dict[Label, RatFunc]:
    """Coordinates of ``x`` on the labels ``(a, delta, t, c)`` over ``Q(v)``."""
    blocks: dict[tuple[int, int], dict[int, RatFunc]] = {}
    for (a, b, c), coeff in x.divided().terms.items():
        blocks.setdefault((a, c), {})[b] = coeff
    out: dict[Label, RatFunc] = {}
    for (a, c), line in blocks.items():
        for (delta, t), mu in decompose_univariate(line, 1).items():
            out[(a, delta, t, c)] = mu
    return out


def from_coordinates(coords: dict) -> UqElement:
    acc = UqElement()
    for lab, mu in coords.items():
        acc = acc + label_element(lab).scale(mu)
    return acc


class IntegralityResult(tuple):
    """``(ok, witness)``; ``witness`` names the first failing coefficient."""

    def __new__(cls, ok: bool, witness: str | None = None):
        return super().__new__(cls, (ok, witness))

    @property
    def ok(self) -> bool:
        return self[0]

    @property
    def witness(self):
        return self[1]

    def __bool__(self):
        return self[0]


def lusztig_integral_test(x: UqElement) -> IntegralityResult:
    for lab, mu in sorted(lusztig_coordinates(x).items()):
        if not mu.is_integral():
            return IntegralityResult(False, f"coefficient {mu} of {label_str(lab) or '1'}")
    return IntegralityResult(True)


def kdc_integral_test(x: UqElement) -> IntegralityResult:
    for m, c in sorted(x.to_mode("plain").terms.items()):
        if not c.is_integral():
            return IntegralityResult(False, f"coefficient {c} of {mono_str(m, 'plain') or '1'}")
    return IntegralityResult(True)


def integral_coordinates(x: UqElement) -> dict[Label, LaurentPoly]:
    out = {}
    for lab, mu in lusztig_coordinates(x).items():
        if not mu.is_integral():
            raise ArithmeticError(f"not in the Lusztig form: coefficient {mu} of {label_str(lab)}")
        out[lab] = mu.num
    return out


@lru_cache(maxsize=None)
def structure_constants(l1: Label, l2: Label) -> tuple:
    """Integral coordinates of the product of two Lusztig basis elements."""
    prod = label_element(l1) * label_element(l2)
    return tuple(sorted(integral_coordinates(prod).items()))


class SpecializedUq:
    """Element of the specialized Lusztig form, coordinates in ``Q(zeta_ell)``."""

    __slots__ = ("ell", "_t")

    def __init__(self, ell: int, terms: dict | None = None):
        self.ell = ell
        self._t = {k: c for k, c in (terms or {}).items() if c}

    @property
    def terms(self):
        return dict(self._t)

    def is_zero(self):
        return not self._t

    def __add__(self, other: "SpecializedUq"):
        t = dict(self._t)
        for k, c in other._t.items():
            s = t.get(k)
            s = c if s is None else s + c
            if s:
                t[k] = s
            else:
                t.pop(k, None)
        return SpecializedUq(self.ell, t)

    def __neg__(self):
        return SpecializedUq(self.ell, {k: -c for k, c in self._t.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "SpecializedUq":
        return SpecializedUq(self.ell, {k: x * c for k, x in self._t.items()})

    def __mul__(self, other):
        if not isinstance(other, SpecializedUq):
            return self.scale(other)
        acc: dict = {}
        for l1, c1 in self._t.items():
            for l2, c2 in other._t.items():
                c12 = c1 * c2
                for lab, mu in structure_constants(l1, l2):
                    x = acc.get(lab, 0) + c12 * eval_at_root(mu, self.ell)
                    acc[lab] = x
        return SpecializedUq(self.ell, acc)

    def __eq__(self, other):
        if not isinstance(other, SpecializedUq):
            return NotImplemented
        return self.ell == other.ell and self._t == other._t

    def render(self, index: str = "") -> str:
        parts = [_render_coeff_prefix(c, label_str(lab, index)) for lab, c in sorted(self._t.items(), reverse=True)]
        return render_sum(parts)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"SpecializedUq(ell={self.ell}, {self})"


def specialize_lusztig(x: UqElement, ell: int) -> SpecializedUq:
    """Image of a Lusztig-integral element under ``v -> zeta_ell``."""
    coords = integral_coordinates(x)
    return SpecializedUq(ell, {lab: eval_at_root(mu, ell) for lab, mu in coords.items()})


def specialized_generator(name: str, ell: int) -> SpecializedUq:
    one = CycloNum.rational(ell, 1)
    lab = {"1": (0, 0, 0, 0), "E": (1, 0, 0, 0), "F": (0, 0, 0, 1), "K": (0, 1, 0, 0)}[name]
    return SpecializedUq(ell, {lab: one})
