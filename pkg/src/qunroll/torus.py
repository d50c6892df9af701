"""The Cartan part: commuting ``K``-variables with coefficients in ``Q(v)``.

Houses Lusztig's bracket elements ``[K_alpha; c, t]``, the elements
``H_alpha``, the integral-basis decomposition over ``Z[v, 1/v]``, coproducts,
the twist by ``E_beta`` (``x E_beta = E_beta tau_beta(x)``), specialization at
a root of unity and the weight limit.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from qunroll.arith import (
    ONE,
    RATONE,
    CycloNum,
    LaurentPoly,
    RatFunc,
    cyclotomic,
    eval_at_root,
    exact_div,
    poly_gcd,
    quantum_number,
    substitute_power,
    vpow,
)
from qunroll.rootdata import RootOrderData, RootSystem, Vector


class NotIntegral(ArithmeticError):
    """An extracted coefficient is not in ``Z[v, 1/v]``."""

    def __init__(self, coeff: RatFunc, label=None):
        self.coeff = coeff
        self.label = label
        super().__init__(f"coefficient {coeff} of basis element {label} is not in Z[v,1/v]")


class NonIntegralWeightPairing(ValueError):
    pass


def _add_into(acc: dict, key, c) -> None:
    s = acc.get(key)
    s = c if s is None else s + c
    if s:
        acc[key] = s
    else:
        acc.pop(key, None)


def _vadd(a: Vector, b: Vector) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def _vscale(k: int, a: Vector) -> Vector:
    return tuple(k * x for x in a)


def _render_coeff_prefix(c, mono: str) -> str:
    if not mono:
        return str(c)
    if c == 1:
        return mono
    if c == -1:
        return "-" + mono
    s = str(c)
    if " " not in s and "/" not in s:
        return f"{s}*{mono}"
    return f"({s})*{mono}"


def render_sum(parts: list[str]) -> str:
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


def k_monomial_str(b: Vector) -> str:
    out = []
    for i, e in enumerate(b, start=1):
        if e:
            out.append(f"K{i}" if e == 1 else f"K{i}^{e}")
    return "*".join(out)


# ---------------------------------------------------------------------------
# TorusElement / TensorSquare
# ---------------------------------------------------------------------------

class TorusElement:
    """Finite sum ``sum_b c_b K^b`` with ``K^b = prod_i K_i^{b_i}`` and ``c_b`` in ``Q(v)``."""

    __slots__ = ("rank", "_t")

    def __init__(self, rank: int, terms: dict | None = None):
        self.rank = rank
        t = {}
        for b, c in (terms or {}).items():
            c = RatFunc.coerce(c)
            if c:
                if len(b) != rank:
                    raise ValueError(f"exponent {b} does not have length {rank}")
                t[tuple(b)] = c
        self._t = t

    @classmethod
    def _raw(cls, rank, t):
        x = cls.__new__(cls)
        x.rank, x._t = rank, t
        return x

    @classmethod
    def unit(cls, rank: int) -> "TorusElement":
        return cls._raw(rank, {(0,) * rank: RATONE})

    @classmethod
    def scalar(cls, rank: int, c) -> "TorusElement":
        return cls(rank, {(0,) * rank: c})

    @property
    def terms(self) -> dict:
        return dict(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self):
        return bool(self._t)

    def __add__(self, other):
        if not isinstance(other, TorusElement):
            other = TorusElement.scalar(self.rank, other)
        t = dict(self._t)
        for b, c in other._t.items():
            _add_into(t, b, c)
        return TorusElement._raw(self.rank, t)

    __radd__ = __add__

    def __neg__(self):
        return TorusElement._raw(self.rank, {b: -c for b, c in self._t.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TorusElement):
            c = RatFunc.coerce(other)
            if not c:
                return TorusElement._raw(self.rank, {})
            return TorusElement._raw(self.rank, {b: x * c for b, x in self._t.items()})
        t: dict = {}
        for b1, c1 in self._t.items():
            for b2, c2 in other._t.items():
                _add_into(t, _vadd(b1, b2), c1 * c2)
        return TorusElement._raw(self.rank, t)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._t) != 1:
                raise ValueError("negative power of a non-monomial torus element")
            (b, c), = self._t.items()
            return TorusElement._raw(self.rank, {_vscale(n, b): c ** n})
        out = TorusElement.unit(self.rank)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, TorusElement):
            return self.rank == other.rank and self._t == other._t
        if isinstance(other, (int, Fraction, LaurentPoly, RatFunc)):
            return self == TorusElement.scalar(self.rank, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.rank, frozenset(self._t.items())))

    def on_line(self, alpha: Vector) -> dict[int, RatFunc] | None:
        """Coefficients as a polynomial in ``K_alpha``, or None if off the line."""
        out = {}
        for b, c in self._t.items():
            k = _multiple_of(b, alpha)
            if k is None:
                return None
            out[k] = c
        return out

    @classmethod
    def from_line(cls, rank: int, alpha: Vector, coeffs: dict) -> "TorusElement":
        return cls(rank, {_vscale(k, alpha): c for k, c in coeffs.items()})

    def __repr__(self):
        return f"TorusElement({self})"

    def __str__(self):
        parts = [_render_coeff_prefix(c, k_monomial_str(b))
                 for b, c in sorted(self._t.items(), reverse=True)]
        return render_sum(parts)

    def to_json(self) -> dict:
        return {"rank": self.rank,
                "terms": [{"k": list(b), "coeff": c.to_json()} for b, c in sorted(self._t.items())]}


def _multiple_of(b: Vector, alpha: Vector) -> int | None:
    k = None
    for x, a in zip(b, alpha):
        if a == 0:
            if x != 0:
                return None
            continue
        if x % a:
            return None
        if k is None:
            k = x // a
        elif k != x // a:
            return None
    return 0 if k is None else k


class TensorSquare:
    """Element of the torus tensored with itself: ``sum c K^b (x) K^b'``."""

    __slots__ = ("rank", "_t")

    def __init__(self, rank: int, terms: dict | None = None):
        self.rank = rank
        self._t = {}
        for k, c in (terms or {}).items():
            c = RatFunc.coerce(c)
            if c:
                self._t[(tuple(k[0]), tuple(k[1]))] = c

    @classmethod
    def _raw(cls, rank, t):
        x = cls.__new__(cls)
        x.rank, x._t = rank, t
        return x

    @classmethod
    def tensor(cls, x: TorusElement, y: TorusElement) -> "TensorSquare":
        t: dict = {}
        for b1, c1 in x._t.items():
            for b2, c2 in y._t.items():
                _add_into(t, (b1, b2), c1 * c2)
        return cls._raw(x.rank, t)

    @property
    def terms(self) -> dict:
        return dict(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self):
        return bool(self._t)

    def __add__(self, other: "TensorSquare"):
        t = dict(self._t)
        for k, c in other._t.items():
            _add_into(t, k, c)
        return TensorSquare._raw(self.rank, t)

    def __neg__(self):
        return TensorSquare._raw(self.rank, {k: -c for k, c in self._t.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, TensorSquare):
            c = RatFunc.coerce(other)
            return TensorSquare._raw(self.rank, {k: x * c for k, x in self._t.items() if c})
        t: dict = {}
        for (a1, a2), c1 in self._t.items():
            for (b1, b2), c2 in other._t.items():
                _add_into(t, (_vadd(a1, b1), _vadd(a2, b2)), c1 * c2)
        return TensorSquare._raw(self.rank, t)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TensorSquare):
            return NotImplemented
        return self.rank == other.rank and self._t == other._t

    def on_line(self, alpha: Vector) -> dict[tuple[int, int], RatFunc] | None:
        out = {}
        for (b1, b2), c in self._t.items():
            k1, k2 = _multiple_of(b1, alpha), _multiple_of(b2, alpha)
            if k1 is None or k2 is None:
                return None
            out[(k1, k2)] = c
        return out

    def __str__(self):
        parts = []
        for (b1, b2), c in sorted(self._t.items(), reverse=True):
            mono = f"{k_monomial_str(b1) or '1'} (x) {k_monomial_str(b2) or '1'}"
            parts.append(_render_coeff_prefix(c, mono))
        return render_sum(parts)

    def __repr__(self):
        return f"TensorSquare({self})"

    def to_json(self) -> dict:
        return {"rank": self.rank,
                "terms": [{"left": list(a), "right": list(b), "coeff": c.to_json()}
                          for (a, b), c in sorted(self._t.items())]}


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------

def k_power(lam: Vector) -> TorusElement:
    lam = tuple(lam)
    return TorusElement._raw(len(lam), {lam: RATONE})


@lru_cache(maxsize=None)
def bracket_numerator(c: int, t: int, d: int = 1) -> tuple[dict[int, LaurentPoly], LaurentPoly]:
    """``[K; c, t]`` as ``({K-exponent: numerator}, common denominator)`` in ``v_alpha = v^d``.

    ``[K; c, t] = prod_{s=1}^{t} (K v_a^{c+1-s} - K^{-1} v_a^{-c-1+s}) / (v_a^s - v_a^{-s})``
    """
    if t < 0:
        raise ValueError("t must be nonnegative")
    num: dict[int, LaurentPoly] = {0: ONE}
    den = ONE
    for s in range(1, t + 1):
        nxt: dict[int, LaurentPoly] = {}
        up, down = vpow(d * (c + 1 - s)), -vpow(d * (-c - 1 + s))
        for k, p in num.items():
            nxt[k + 1] = nxt.get(k + 1, LaurentPoly()) + p * up
            nxt[k - 1] = nxt.get(k - 1, LaurentPoly()) + p * down
        num = {k: p for k, p in nxt.items() if p}
        den = den * (vpow(d * s) - vpow(-d * s))
    return num, den


@lru_cache(maxsize=None)
def bracket_coeffs(c: int, t: int, d: int = 1) -> dict[int, RatFunc]:
    num, den = bracket_numerator(c, t, d)
    return {k: RatFunc(p, den) for k, p in num.items()}


def k_bracket(rs: RootSystem, alpha: Vector, c: int, t: int) -> TorusElement:
    alpha = tuple(alpha)
    return TorusElement.from_line(rs.rank, alpha, bracket_coeffs(c, t, rs.root_d(alpha)))


def phi_of_v_alpha_squared(ell_alpha: int, d: int) -> LaurentPoly:
    """``Phi_{l_alpha}(v_alpha^2)`` as a Laurent polynomial in ``v``."""
    return substitute_power(cyclotomic(ell_alpha), 2 * d)


def h_element(rs: RootSystem, alpha: Vector, orders: RootOrderData) -> TorusElement:
    """``H_alpha = (K_alpha^{2 l_alpha} - 1) / Phi_{l_alpha}(v_alpha^2)``."""
    alpha = tuple(alpha)
    la = orders[alpha]
    phi = RatFunc(ONE, phi_of_v_alpha_squared(la, rs.root_d(alpha)))
    return (k_power(_vscale(2 * la, alpha)) - TorusElement.unit(rs.rank)) * phi


# ---------------------------------------------------------------------------
# integral decomposition
# ---------------------------------------------------------------------------

def basis_coeffs(delta: int, t: int, d: int) -> dict[int, RatFunc]:
    """``K^delta [K; 0, t]`` as ``{exponent: coefficient}``."""
    base = bracket_coeffs(0, t, d)
    return {k + delta: c for k, c in base.items()} if delta else base


def _lcm(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    if a == ONE:
        return b
    if b == ONE or a == b:
        return a
    return exact_div(a * b, poly_gcd(a, b))


def _clear_denominators(coeffs: dict) -> tuple[dict, LaurentPoly]:
    L = ONE
    rats = {k: RatFunc.coerce(c) for k, c in coeffs.items() if c}
    for c in rats.values():
        L = _lcm(L, c.den)
    return {k: (c * L).to_laurent() for k, c in rats.items()}, L


def _greedy_laurent(work: dict[int, LaurentPoly], d: int) -> dict[tuple[int, int], LaurentPoly]:
    # The outermost coefficients of [K;0,t] are the unit monomials
    # -/+ v_a^{...}, so every step stays inside Z[v, 1/v] up to the scale D_t.
    work = dict(work)
    out: dict[tuple[int, int], LaurentPoly] = {}
    while work:
        n = max(abs(k) for k in work)
        if n > 0 and -n in work:
            delta, t, target = 0, n, -n
        elif n == 0:
            delta, t, target = 0, 0, 0
        else:
            delta, t, target = 1, n - 1, n
        num, den = bracket_numerator(0, t, d)
        lead = num[target - delta]
        (e, u), = lead.terms.items()
        assert u == 1 or u == -1
        ratio = work[target] * LaurentPoly.monomial(-e, u)
        for k, p in num.items():
            _add_into(work, k + delta, -(ratio * p))
        out[(delta, t)] = out.get((delta, t), LaurentPoly()) + ratio * den
    return {k: c for k, c in out.items() if c}


def decompose_univariate(coeffs: dict[int, RatFunc], d: int) -> dict[tuple[int, int], RatFunc]:
    """Coordinates of ``sum_k c_k K^k`` in the basis ``K^delta [K; 0, t]`` over ``Q(v)``.

    Eliminates the extreme exponents from the outside in. ``[K;0,n]`` is the
    only basis element reaching exponent ``-n``, so it clears that end first;
    ``K [K;0,n-1]`` then clears ``+n`` without touching ``-n``.
    """
    work, L = _clear_denominators(coeffs)
    return {lab: RatFunc(mu, L) for lab, mu in _greedy_laurent(work, d).items()}


def recompose_univariate(coords: dict[tuple[int, int], object], d: int) -> dict[int, RatFunc]:
    acc: dict[int, RatFunc] = {}
    for (delta, t), mu in coords.items():
        mu = RatFunc.coerce(mu)
        for k, c in basis_coeffs(delta, t, d).items():
            _add_into(acc, k, mu * c)
    return acc


def decompose_tensor_univariate(coeffs: dict[tuple[int, int], RatFunc], d: int) -> dict:
    """Coordinates in the basis ``B (x) B'`` of a two-factor element on one ``K``-line."""
    work, L = _clear_denominators(coeffs)
    by_right: dict[int, dict[int, LaurentPoly]] = {}
    for (i, j), c in work.items():
        by_right.setdefault(j, {})[i] = c
    by_left: dict[tuple[int, int], dict[int, LaurentPoly]] = {}
    for j, left in by_right.items():
        for lab, mu in _greedy_laurent(left, d).items():
            by_left.setdefault(lab, {})[j] = mu
    out = {}
    for lab, right in by_left.items():
        for lab2, mu in _greedy_laurent(right, d).items():
            out[(lab, lab2)] = RatFunc(mu, L)
    return out


def check_integral(coords: dict) -> dict:
    """Convert coordinates to Laurent polynomials, raising :class:`NotIntegral`."""
    out = {}
    for lab in sorted(coords):
        mu = coords[lab]
        if not mu.is_integral():
            raise NotIntegral(mu, lab)
        out[lab] = mu.num
    return out


class IntegralDecomposition:
    """``x = constant + sum mu * K_alpha^delta [K_alpha; 0, t]`` with ``mu`` in ``Z[v, 1/v]``."""

    def __init__(self, rank: int, alpha: Vector, d: int, terms: list, constant: LaurentPoly):
        self.rank = rank
        self.alpha = tuple(alpha)
        self.d = d
        self.terms = terms
        self.constant = constant

    def coordinates(self) -> dict[tuple[int, int], LaurentPoly]:
        out = {(delta, t): mu for delta, t, mu in self.terms}
        if self.constant:
            out[(0, 0)] = self.constant
        return out

    def recompose(self) -> TorusElement:
        coeffs = recompose_univariate(self.coordinates(), self.d)
        return TorusElement.from_line(self.rank, self.alpha, coeffs)

    def __str__(self):
        idx = "".join(map(str, self.alpha))
        parts = []
        for delta, t, mu in self.terms:
            mono = (f"K[{idx}]*" if delta else "") + f"[K[{idx}];0,{t}]" if t else f"K[{idx}]"
            parts.append(_render_coeff_prefix(RatFunc(mu), mono))
        if self.constant:
            parts.append(str(self.constant) if len(self.constant._t) <= 1 else f"({self.constant})")
        return render_sum(parts)


def _line_root(rs: RootSystem, x) -> Vector:
    """A positive root whose ``K``-line carries the support of ``x``."""
    for alpha in rs.positive_roots:
        if x.on_line(alpha) is not None:
            return alpha
    raise ValueError("element is not supported on the K-line of a positive root")


def integral_decompose(x: TorusElement, rs: RootSystem, alpha: Vector | None = None) -> IntegralDecomposition:
    alpha = _line_root(rs, x) if alpha is None else tuple(alpha)
    line = x.on_line(alpha)
    if line is None:
        raise ValueError(f"element is not supported on powers of K_{alpha}")
    d = rs.root_d(alpha)
    coords = check_integral(decompose_univariate(line, d))
    constant = coords.pop((0, 0), LaurentPoly())
    terms = [(delta, t, mu) for (delta, t), mu in sorted(coords.items(), key=lambda kv: (-(kv[0][0] + kv[0][1]), kv[0]))]
    return IntegralDecomposition(rs.rank, alpha, d, terms, constant)


def leading_term_decomposition(rs: RootSystem, alpha: Vector, orders: RootOrderData):
    """Split ``H_alpha = mu K^{l} [K; 0, l] + R(K^2)`` with ``l = l_alpha``.

    ``mu = v_a^{l(l-1)/2} prod_s (v_a^s - v_a^{-s}) / Phi_l(v_a^2)`` and the
    remainder ``R`` is a polynomial in ``K_alpha^2`` over ``Z[v, 1/v]``.
    Returns ``(mu, remainder)`` with ``remainder`` a TorusElement.
    """
    alpha = tuple(alpha)
    la = orders[alpha]
    d = rs.root_d(alpha)
    phi = phi_of_v_alpha_squared(la, d)
    prod = ONE
    for s in range(1, la + 1):
        prod = prod * (vpow(d * s) - vpow(-d * s))
    mu = exact_div(vpow(d * la * (la - 1) // 2) * prod, phi)
    # numerator (K^{2l} - 1) - prod_s (K^2 - v_a^{2(s-1)}), as a polynomial in K^2
    poly: dict[int, LaurentPoly] = {0: ONE}
    for s in range(1, la + 1):
        nxt: dict[int, LaurentPoly] = {}
        for k, p in poly.items():
            nxt[k + 1] = nxt.get(k + 1, LaurentPoly()) + p
            nxt[k] = nxt.get(k, LaurentPoly()) - p * vpow(2 * d * (s - 1))
        poly = nxt
    num = {k: -p for k, p in poly.items()}
    num[la] = num.get(la, LaurentPoly()) + ONE
    num[0] = num.get(0, LaurentPoly()) - ONE
    rem = {2 * k: RatFunc(exact_div(p, phi)) for k, p in num.items() if p}
    return mu, TorusElement.from_line(rs.rank, alpha, rem)


# ---------------------------------------------------------------------------
# coproduct and the E-twist
# ---------------------------------------------------------------------------

def coproduct(x: TorusElement) -> TensorSquare:
    """Linear extension of ``K^b -> K^b (x) K^b``."""
    return TensorSquare._raw(x.rank, {(b, b): c for b, c in x._t.items()})


def counit(x: TorusElement) -> RatFunc:
    out = RatFunc(0)
    for c in x._t.values():
        out = out + c
    return out


def antipode(x: TorusElement) -> TorusElement:
    return TorusElement._raw(x.rank, {_vscale(-1, b): c for b, c in x._t.items()})


def _simple(rs: RootSystem, beta) -> Vector:
    return rs.simple_root(beta) if isinstance(beta, int) else tuple(beta)


def twist_by_E(x: TorusElement, rs: RootSystem, beta) -> TorusElement:
    """``tau_beta: K^b -> v^{(b, beta)} K^b``; satisfies ``x E_beta = E_beta tau_beta(x)``."""
    beta = _simple(rs, beta)
    t = {}
    for b, c in x._t.items():
        t[b] = c * vpow(rs.pairing(b, beta))
    return TorusElement._raw(x.rank, t)


def commutator_with_E(x: TorusElement, rs: RootSystem, beta) -> TorusElement:
    """``T = tau_beta(x) - x``, so that ``[x, E_beta] = E_beta T``."""
    return twist_by_E(x, rs, beta) - x


def cofactor_scalar(rs: RootSystem, alpha: Vector, beta, orders: RootOrderData) -> LaurentPoly:
    """``(v_a^{2 l_a m} - 1) / Phi_{l_a}(v_a^2)`` with ``m = 2(alpha,beta)/(alpha,alpha)``.

    Raises :class:`NotDivisible` if the quotient is not a Laurent polynomial.
    """
    alpha, beta = tuple(alpha), _simple(rs, beta)
    la, d = orders[alpha], rs.root_d(alpha)
    m = rs.coroot_pairing(alpha, beta)
    assert m.denominator == 1
    m = int(m)
    return exact_div(vpow(d * 2 * la * m) - ONE, phi_of_v_alpha_squared(la, d))


def commutator_cofactor(rs: RootSystem, alpha: Vector, beta, orders: RootOrderData) -> TorusElement:
    """Closed form ``K_alpha^{2 l_alpha} * cofactor_scalar``."""
    alpha = tuple(alpha)
    return k_power(_vscale(2 * orders[alpha], alpha)) * cofactor_scalar(rs, alpha, beta, orders)


def geometric_series_forms(rs: RootSystem, alpha: Vector, beta, orders: RootOrderData,
                           ratio: str = "v_alpha^(2 l_alpha)") -> dict[str, LaurentPoly]:
    """The commutator scalar written three ways.

    ``closed``: the direct quotient; ``qnumber``: ``(v_a^l)^{m-1} [m]_{v_a^l} c``;
    ``series``: the case split by the sign of ``m`` with geometric sums in
    ``X = v_a^{2l}``, where ``c = (X - 1)/Phi_l(v_a^2)``. Passing
    ``ratio="v_alpha^2"`` sums powers of ``v_a^2`` instead; that variant
    disagrees with the other two whenever ``m != 0, 1``.
    """
    alpha, beta = tuple(alpha), _simple(rs, beta)
    la, d = orders[alpha], rs.root_d(alpha)
    m = int(rs.coroot_pairing(alpha, beta))
    phi = phi_of_v_alpha_squared(la, d)
    X = vpow(2 * d * la)
    c = exact_div(X - ONE, phi)
    closed = cofactor_scalar(rs, alpha, beta, orders)
    qnumber = vpow(d * la * (m - 1)) * quantum_number(m, d * la) * c
    step = X if ratio == "v_alpha^(2 l_alpha)" else vpow(2 * d)
    if m == 0:
        series = LaurentPoly()
    elif m > 0:
        series = sum((step ** k for k in range(m)), LaurentPoly()) * c
    else:
        series = -sum((step ** k for k in range(-m)), LaurentPoly()) * (X ** m) * c
    return {"closed": closed, "qnumber": qnumber, "series": series}


# ---------------------------------------------------------------------------
# specialization
# ---------------------------------------------------------------------------

class SpecializedTorus:
    """Image of a torus element (or tensor square) in the specialization at ``zeta_ell``.

    ``basis="group"``: coordinates on ``K^b`` with ``b`` reduced modulo the
    sublattice generated by ``2 l_i alpha_i``; ``frame`` holds the moduli.
    ``basis="lusztig"``: coordinates on ``K_alpha^delta [K_alpha; 0, t]`` for the
    root ``frame``; this is the canonical form for elements whose coefficients
    have poles at ``v = q`` but which lie in the integral form (such as ``H_alpha``).
    """

    __slots__ = ("ell", "basis", "frame", "arity", "_t")

    def __init__(self, ell: int, basis: str, frame, arity: int, terms: dict):
        self.ell, self.basis, self.frame, self.arity = ell, basis, frame, arity
        self._t = {k: c for k, c in terms.items() if c}

    def _check(self, other):
        if (self.ell, self.basis, self.frame, self.arity) != (other.ell, other.basis, other.frame, other.arity):
            raise ValueError("incompatible specialized elements")

    @property
    def terms(self):
        return dict(self._t)

    def is_zero(self):
        return not self._t

    def __bool__(self):
        return bool(self._t)

    def __add__(self, other):
        self._check(other)
        t = dict(self._t)
        for k, c in other._t.items():
            _add_into(t, k, c)
        return SpecializedTorus(self.ell, self.basis, self.frame, self.arity, t)

    def __neg__(self):
        return SpecializedTorus(self.ell, self.basis, self.frame, self.arity, {k: -c for k, c in self._t.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "SpecializedTorus":
        return SpecializedTorus(self.ell, self.basis, self.frame, self.arity, {k: x * c for k, x in self._t.items()})

    def __mul__(self, other):
        if not isinstance(other, SpecializedTorus):
            return self.scale(other)
        self._check(other)
        if self.basis != "group":
            raise NotImplementedError("products are computed before specializing in the lusztig basis")
        if self.arity != 1:
            raise NotImplementedError("product of specialized tensors")
        mods = self.frame
        t: dict = {}
        for b1, c1 in self._t.items():
            for b2, c2 in other._t.items():
                b = tuple((x + y) % m for x, y, m in zip(b1, b2, mods))
                _add_into(t, b, c1 * c2)
        return SpecializedTorus(self.ell, self.basis, self.frame, 1, t)

    def tensor(self, other: "SpecializedTorus") -> "SpecializedTorus":
        if self.arity != 1 or other.arity != 1:
            raise ValueError("tensor of non-elementary specialized elements")
        self._check(other)
        t: dict = {}
        for k1, c1 in self._t.items():
            for k2, c2 in other._t.items():
                _add_into(t, (k1, k2), c1 * c2)
        return SpecializedTorus(self.ell, self.basis, self.frame, 2, t)

    def __eq__(self, other):
        if not isinstance(other, SpecializedTorus):
            return NotImplemented
        return ((self.ell, self.basis, self.frame, self.arity) == (other.ell, other.basis, other.frame, other.arity)
                and self._t == other._t)

    def __repr__(self):
        return f"SpecializedTorus[{self.basis}]({self})"

    def __str__(self):
        parts = []
        for k, c in sorted(self._t.items()):
            if self.basis == "group":
                mono = " (x) ".join(k_monomial_str(b) or "1" for b in k) if self.arity == 2 else k_monomial_str(k)
            else:
                labs = k if self.arity == 2 else (k,)
                mono = " (x) ".join(_lusztig_label_str(l) for l in labs)
            parts.append(_render_coeff_prefix(c, mono))
        return render_sum(parts)


def _lusztig_label_str(lab: tuple[int, int]) -> str:
    delta, t = lab
    if t == 0:
        return "K" if delta else "1"
    return ("K*" if delta else "") + f"[K;0,{t}]"


def unit_specialized(ell: int, basis: str, frame) -> SpecializedTorus:
    key = (0, 0) if basis == "lusztig" else (0,) * len(frame)
    return SpecializedTorus(ell, basis, frame, 1, {key: CycloNum.rational(ell, 1)})


def specialize_torus(x, orders: RootOrderData, root: Vector | None = None) -> SpecializedTorus:
    """Specialize ``v -> zeta_ell``.

    Without ``root`` the coefficients must be regular at ``zeta_ell``; they are
    evaluated and exponents are reduced modulo ``2 l_i`` in each simple-root
    coordinate. With ``root`` the element must live on the ``K_root`` line and
    in the integral form; its integral coordinates are evaluated.
    """
    ell = orders.ell
    rs = orders.root_system
    if root is None:
        mods = tuple(2 * m for m in orders.simple_orders())
        t: dict = {}
        if isinstance(x, TorusElement):
            for b, c in x._t.items():
                _add_into(t, tuple(e % m for e, m in zip(b, mods)), eval_at_root(c, ell))
            return SpecializedTorus(ell, "group", mods, 1, t)
        for (b1, b2), c in x._t.items():
            key = (tuple(e % m for e, m in zip(b1, mods)), tuple(e % m for e, m in zip(b2, mods)))
            _add_into(t, key, eval_at_root(c, ell))
        return SpecializedTorus(ell, "group", mods, 2, t)
    root = tuple(root)
    d = rs.root_d(root)
    line = x.on_line(root)
    if line is None:
        raise ValueError(f"element is not on the K-line of {root}")
    if isinstance(x, TorusElement):
        coords = check_integral(decompose_univariate(line, d))
        arity = 1
    else:
        coords = check_integral(decompose_tensor_univariate(line, d))
        arity = 2
    return SpecializedTorus(ell, "lusztig", root, arity, {k: eval_at_root(mu, ell) for k, mu in coords.items()})


# ---------------------------------------------------------------------------
# weight evaluation
# ---------------------------------------------------------------------------

class LimitMismatch(ArithmeticError):
    pass


def weight_limit(m: int, ell: int) -> CycloNum:
    """``lim_{v -> q} (v^{m ell} - 1) / (v^ell - 1)`` by exact division then evaluation."""
    quotient = exact_div(vpow(m * ell) - ONE, vpow(ell) - ONE)
    return eval_at_root(quotient, ell)


def weight_eval(rs: RootSystem, alpha: Vector, lam: Vector, ell: int) -> int:
    """Eigenvalue ``2(alpha, lam)/(alpha, alpha)`` of ``H_alpha`` on weight ``lam``.

    Computed as the limit and checked against the integer formula.
    """
    m = rs.coroot_pairing(tuple(alpha), tuple(lam))
    if m.denominator != 1:
        raise NonIntegralWeightPairing(f"2(alpha,lambda)/(alpha,alpha) = {m} is not an integer")
    m = int(m)
    lim = weight_limit(m, ell)
    if not (lim.is_rational() and lim.rational_value() == m):
        raise LimitMismatch(f"limit {lim} differs from {m}")
    return m
