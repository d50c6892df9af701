"""U_q(sl2) over Q(v) in the PBW basis ``E^(a) K^b F^(c)``.

Relations: ``K E = v^2 E K``, ``K F = v^-2 F K``, ``[E, F] = (K - K^-1)/(v - v^-1)``.
Hopf structure: ``Delta(E) = E (x) K + 1 (x) E``, ``Delta(F) = F (x) 1 + K^-1 (x) F``,
``S(E) = -E K^-1``, ``S(F) = -K F``.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable

from qunroll.arith import RATONE, LaurentPoly, RatFunc, quantum_binomial, quantum_factorial, vpow
from qunroll.torus import bracket_coeffs, render_sum, _render_coeff_prefix

Mono = tuple[int, int, int]

MAX_DIVIDED = 12
MAX_K = 64


class DegreeCapExceeded(ValueError):
    pass


def _check_caps(m: Mono) -> None:
    a, b, c = m
    if a > MAX_DIVIDED or c > MAX_DIVIDED or abs(b) > MAX_K:
        raise DegreeCapExceeded(
            f"monomial E^({a})K^{b}F^({c}) exceeds caps a,c <= {MAX_DIVIDED}, |b| <= {MAX_K}")


def _add_into(acc: dict, key, c) -> None:
    s = acc.get(key)
    s = c if s is None else s + c
    if s:
        acc[key] = s
    else:
        acc.pop(key, None)


def mono_str(m: Mono, mode: str = "divided", index: str = "") -> str:
    """``index`` is appended to generator names (``E1``, ``K1``) for multi-rank style output."""
    a, b, c = m
    e, k, f = "E" + index, "K" + index, "F" + index
    parts = []
    if a:
        parts.append((e if a == 1 else f"{e}^({a})") if mode == "divided" else (e if a == 1 else f"{e}^{a}"))
    if b:
        parts.append(k if b == 1 else f"{k}^{b}")
    if c:
        parts.append((f if c == 1 else f"{f}^({c})") if mode == "divided" else (f if c == 1 else f"{f}^{c}"))
    return "*".join(parts)


@lru_cache(maxsize=None)
def _fe_coeffs(c: int, a: int) -> tuple:
    """``F^(c) E^(a) = sum_j (-1)^j E^(a-j) [K; a+c-j-1, j] F^(c-j)`` as ``(j, {k: coeff})`` pairs."""
    out = []
    for j in range(min(a, c) + 1):
        sign = -1 if j % 2 else 1
        br = bracket_coeffs(a + c - j - 1, j, 1)
        out.append((j, {k: x * sign for k, x in br.items()}))
    return tuple(out)


@lru_cache(maxsize=None)
def mono_product(m1: Mono, m2: Mono) -> dict[Mono, RatFunc]:
    """Product of two divided-mode basis monomials, in normal order."""
    a1, b1, c1 = m1
    a2, b2, c2 = m2
    out: dict[Mono, RatFunc] = {}
    for j, br in _fe_coeffs(c1, a2):
        a, c = a1 + a2 - j, c1 + c2 - j
        scal = (vpow(2 * b1 * (a2 - j) + 2 * b2 * (c1 - j))
                * quantum_binomial(a, a1, 1) * quantum_binomial(c, c2, 1))
        for k, x in br.items():
            m = (a, b1 + b2 + k, c)
            _check_caps(m)
            _add_into(out, m, x * scal)
    return out


class UqElement:
    """Finite sum of PBW monomials with ``Q(v)`` coefficients.

    ``mode="divided"`` stores coefficients of ``E^(a) K^b F^(c)``;
    ``mode="plain"`` stores coefficients of ``E^a K^b F^c``.
    """

    __slots__ = ("_t", "mode")

    def __init__(self, terms: dict | None = None, mode: str = "divided"):
        if mode not in ("divided", "plain"):
            raise ValueError(f"unknown basis mode {mode!r}")
        self.mode = mode
        self._t: dict[Mono, RatFunc] = {}
        for m, c in (terms or {}).items():
            c = RatFunc.coerce(c)
            if c:
                m = tuple(m)
                _check_caps(m)
                self._t[m] = c

    @classmethod
    def _raw(cls, t: dict, mode: str = "divided") -> "UqElement":
        x = cls.__new__(cls)
        x._t, x.mode = t, mode
        return x

    @classmethod
    def scalar(cls, c, mode: str = "divided") -> "UqElement":
        return cls({(0, 0, 0): c}, mode)

    @classmethod
    def monomial(cls, a: int = 0, b: int = 0, c: int = 0, mode: str = "divided") -> "UqElement":
        return cls({(a, b, c): RATONE}, mode)

    @property
    def terms(self) -> dict[Mono, RatFunc]:
        return dict(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self):
        return bool(self._t)

    # -- basis modes --------------------------------------------------------
    def to_mode(self, mode: str) -> "UqElement":
        if mode == self.mode:
            return self
        t = {}
        for (a, b, c), x in self._t.items():
            f = quantum_factorial(a, 1) * quantum_factorial(c, 1)
            t[(a, b, c)] = x * f if mode == "divided" else x / f
        return UqElement._raw(t, mode)

    def divided(self) -> "UqElement":
        return self.to_mode("divided")

    # -- ring operations ------------------------------------------------------
    def _coerce_other(self, other) -> "UqElement":
        if isinstance(other, UqElement):
            return other.to_mode(self.mode)
        return UqElement.scalar(other, self.mode)

    def __add__(self, other):
        other = self._coerce_other(other)
        t = dict(self._t)
        for m, c in other._t.items():
            _add_into(t, m, c)
        return UqElement._raw(t, self.mode)

    def __radd__(self, other):
        return self + other

    def __neg__(self):
        return UqElement._raw({m: -c for m, c in self._t.items()}, self.mode)

    def __sub__(self, other):
        return self + (-self._coerce_other(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "UqElement":
        c = RatFunc.coerce(c)
        if not c:
            return UqElement._raw({}, self.mode)
        return UqElement._raw({m: x * c for m, x in self._t.items()}, self.mode)

    def __mul__(self, other):
        if not isinstance(other, UqElement):
            return self.scale(other)
        x, y = self.divided(), other.divided()
        t: dict[Mono, RatFunc] = {}
        for m1, c1 in x._t.items():
            for m2, c2 in y._t.items():
                c12 = c1 * c2
                for m, c in mono_product(m1, m2).items():
                    _add_into(t, m, c12 * c)
        return UqElement._raw(t, "divided").to_mode(self.mode)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are only defined for K")
        out = UqElement.scalar(1, self.mode)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, UqElement):
            return self.divided()._t == other.divided()._t
        if isinstance(other, (int, LaurentPoly, RatFunc)):
            return self == UqElement.scalar(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.divided()._t.items()))

    # -- rendering ----------------------------------------------------------
    def render(self, index: str = "") -> str:
        parts = [_render_coeff_prefix(c, mono_str(m, self.mode, index))
                 for m, c in sorted(self._t.items(), key=lambda kv: (-kv[0][0], -kv[0][2], -kv[0][1]))]
        return render_sum(parts)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"UqElement[{self.mode}]({self})"

    def to_json(self) -> dict:
        return {"mode": self.mode,
                "terms": [{"E": a, "K": b, "F": c, "coeff": x.to_json()}
                          for (a, b, c), x in sorted(self._t.items())]}


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------

def E() -> UqElement:
    return UqElement.monomial(1, 0, 0)


def F() -> UqElement:
    return UqElement.monomial(0, 0, 1)


def K(b: int = 1) -> UqElement:
    return UqElement.monomial(0, b, 0)


def divided_power(gen: str, t: int) -> UqElement:
    if t < 0:
        raise ValueError("divided power index must be nonnegative")
    if gen == "E":
        return UqElement.monomial(t, 0, 0)
    if gen == "F":
        return UqElement.monomial(0, 0, t)
    raise ValueError(f"divided powers exist for E and F, not {gen!r}")


def from_torus_line(coeffs: dict[int, RatFunc], a: int = 0, c: int = 0) -> UqElement:
    """``E^(a) (sum_k c_k K^k) F^(c)``."""
    return UqElement({(a, k, c): x for k, x in coeffs.items()})


def commutator(x: UqElement, y: UqElement) -> UqElement:
    return x * y - y * x


# ---------------------------------------------------------------------------
# tensor powers and Hopf structure
# ---------------------------------------------------------------------------

class TensorElement:
    """Element of the ``n``-fold tensor power, keyed by tuples of divided-mode monomials."""

    __slots__ = ("arity", "_t")

    def __init__(self, arity: int, terms: dict | None = None):
        self.arity = arity
        self._t = {}
        for k, c in (terms or {}).items():
            c = RatFunc.coerce(c)
            if c:
                self._t[tuple(tuple(m) for m in k)] = c

    @classmethod
    def _raw(cls, arity, t):
        x = cls.__new__(cls)
        x.arity, x._t = arity, t
        return x

    @classmethod
    def pure(cls, *factors: UqElement) -> "TensorElement":
        t: dict = {(): RATONE}
        for f in factors:
            f = f.divided()
            nxt: dict = {}
            for k, c in t.items():
                for m, x in f._t.items():
                    _add_into(nxt, k + (m,), c * x)
            t = nxt
        return cls._raw(len(factors), t)

    @property
    def terms(self):
        return dict(self._t)

    def is_zero(self):
        return not self._t

    def __add__(self, other: "TensorElement"):
        t = dict(self._t)
        for k, c in other._t.items():
            _add_into(t, k, c)
        return TensorElement._raw(self.arity, t)

    def __neg__(self):
        return TensorElement._raw(self.arity, {k: -c for k, c in self._t.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TensorElement":
        c = RatFunc.coerce(c)
        return TensorElement._raw(self.arity, {k: x * c for k, x in self._t.items()} if c else {})

    def __mul__(self, other):
        if not isinstance(other, TensorElement):
            return self.scale(other)
        if other.arity != self.arity:
            raise ValueError("tensor arity mismatch")
        t: dict = {}
        for k1, c1 in self._t.items():
            for k2, c2 in other._t.items():
                partial: dict = {(): c1 * c2}
                for m1, m2 in zip(k1, k2):
                    prod = mono_product(m1, m2)
                    nxt: dict = {}
                    for key, c in partial.items():
                        for m, x in prod.items():
                            _add_into(nxt, key + (m,), c * x)
                    partial = nxt
                for key, c in partial.items():
                    _add_into(t, key, c)
        return TensorElement._raw(self.arity, t)

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.arity == other.arity and self._t == other._t

    def map_factor(self, i: int, f: Callable[[Mono], "UqElement | TensorElement | RatFunc"]) -> "TensorElement":
        """Apply a linear map to factor ``i``; ``f`` may return a scalar, element or tensor."""
        t: dict = {}
        new_arity = None
        for key, c in self._t.items():
            img = f(key[i])
            if isinstance(img, UqElement):
                img = TensorElement._raw(1, {(m,): x for m, x in img.divided()._t.items()})
            elif not isinstance(img, TensorElement):
                img = TensorElement._raw(0, {(): RatFunc.coerce(img)} if img else {})
            new_arity = self.arity - 1 + img.arity
            for sub, x in img._t.items():
                _add_into(t, key[:i] + sub + key[i + 1:], c * x)
        if new_arity is None:
            probe = f((0, 0, 0))
            sub_arity = probe.arity if isinstance(probe, TensorElement) else (1 if isinstance(probe, UqElement) else 0)
            new_arity = self.arity - 1 + sub_arity
        return TensorElement._raw(new_arity, t)

    def multiply_out(self) -> UqElement:
        """``m: x1 (x) ... (x) xn -> x1 ... xn``."""
        acc = UqElement._raw({}, "divided")
        for key, c in self._t.items():
            term = UqElement.scalar(c)
            for m in key:
                term = term * UqElement._raw({m: RATONE})
            acc = acc + term
        return acc

    def as_element(self) -> UqElement:
        if self.arity == 0:
            return UqElement.scalar(self._t.get((), 0))
        if self.arity != 1:
            raise ValueError("not a single-factor tensor")
        return UqElement._raw({k[0]: c for k, c in self._t.items()})

    def render(self, index: str = "") -> str:
        parts = []
        for key, c in sorted(self._t.items()):
            mono = " (x) ".join(mono_str(m, index=index) or "1" for m in key)
            parts.append(_render_coeff_prefix(c, mono))
        return render_sum(parts)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"TensorElement({self})"

    def to_json(self) -> dict:
        return {"arity": self.arity,
                "terms": [{"factors": [list(m) for m in key], "coeff": c.to_json()}
                          for key, c in sorted(self._t.items())]}


@lru_cache(maxsize=None)
def _delta_E(t: int) -> TensorElement:
    # Delta(E^(t)) = sum_j v^{j(t-j)} E^(t-j) (x) E^(j) K^(t-j)
    return TensorElement._raw(2, {((t - j, 0, 0), (j, t - j, 0)): RatFunc(vpow(j * (t - j)))
                                  for j in range(t + 1)})


@lru_cache(maxsize=None)
def _delta_F(t: int) -> TensorElement:
    # Delta(F^(t)) = sum_j v^{-j(t-j)} K^{-j} F^(t-j) (x) F^(j)
    return TensorElement._raw(2, {((0, -j, t - j), (0, 0, j)): RatFunc(vpow(-j * (t - j)))
                                  for j in range(t + 1)})


@lru_cache(maxsize=None)
def _delta_mono(m: Mono) -> TensorElement:
    a, b, c = m
    kk = TensorElement._raw(2, {((0, b, 0), (0, b, 0)): RATONE})
    return _delta_E(a) * kk * _delta_F(c)


def coproduct(x: UqElement) -> TensorElement:
    out = TensorElement._raw(2, {})
    for m, c in x.divided()._t.items():
        out = out + _delta_mono(m).scale(c)
    return out


def counit(x: UqElement) -> RatFunc:
    acc = RatFunc(0)
    for (a, b, c), x_ in x.divided()._t.items():
        if a == 0 and c == 0:
            acc = acc + x_
    return acc


@lru_cache(maxsize=None)
def _antipode_mono(m: Mono) -> UqElement:
    a, b, c = m
    sf = UqElement({(0, c, c): RatFunc(vpow(c * (c - 1)) * (-1) ** c)})
    se = UqElement({(a, -a, 0): RatFunc(vpow(-a * (a - 1)) * (-1) ** a)})
    return sf * K(-b) * se


def antipode(x: UqElement) -> UqElement:
    acc = UqElement._raw({}, "divided")
    for m, c in x.divided()._t.items():
        acc = acc + _antipode_mono(m).scale(c)
    return acc.to_mode(x.mode)


def delta_on(T: TensorElement, i: int) -> TensorElement:
    return T.map_factor(i, lambda m: _delta_mono(m))


def eps_on(T: TensorElement, i: int) -> TensorElement:
    return T.map_factor(i, lambda m: RATONE if m[0] == 0 and m[2] == 0 else RatFunc(0))


def antipode_on(T: TensorElement, i: int) -> TensorElement:
    return T.map_factor(i, lambda m: _antipode_mono(m))


def mono_element(m: Mono) -> UqElement:
    return UqElement._raw({tuple(m): RATONE})
