"""Exact arithmetic kernel.

Sparse Laurent polynomials in one indeterminate ``v``, rational functions in
``v``, q-numbers and q-binomials, cyclotomic polynomials, and the cyclotomic
field ``Q(zeta_ell)`` in which specializations ``v -> q`` are evaluated.

Everything here is immutable. Coefficients of :class:`LaurentPoly` are
``Fraction`` by default; the same class is reused with :class:`CycloNum`
coefficients for polynomials over ``Q(zeta_ell)`` (the hybrid quotient needs
those).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union


class NotDivisible(ArithmeticError):
    """Raised by :func:`exact_div` when the remainder is nonzero."""


class PoleAtRoot(ArithmeticError):
    """A denominator vanishes at the chosen root of unity."""


# ---------------------------------------------------------------------------
# coefficient helpers
# ---------------------------------------------------------------------------

def _coerce(c):
    # integral rationals are kept as int: same hash and equality as Fraction, much faster
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _inv(c):
    if isinstance(c, int):
        if c == 1 or c == -1:
            return c
        return Fraction(1, c)
    if isinstance(c, Fraction):
        return _coerce(Fraction(c.denominator, c.numerator))
    return c.inverse()


# Dense helpers on ordinary polynomials stored low -> high.

def _trim(a: list) -> list:
    while a and not a[-1]:
        a.pop()
    return a


def _pdivmod(a: list, b: list) -> tuple[list, list]:
    a = list(a)
    _trim(a)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    db = len(b) - 1
    lc_inv = _inv(b[-1])
    if len(a) - 1 < db:
        return [], a
    q = [0] * (len(a) - db)
    nz = [(j, x) for j, x in enumerate(b) if x]
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if not c:
            continue
        c = c * lc_inv
        q[i - db] = c
        base = i - db
        for j, x in nz:
            a[base + j] = a[base + j] - c * x
    return _trim(q), _trim(a[:db])


def _pmul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return _trim(out)


def _psub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _trim(out)


def _pmonic(a: list) -> list:
    inv = _inv(a[-1])
    return [c * inv for c in a]


def _pgcd(a: list, b: list) -> list:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pdivmod(a, b)[1]
    return _pmonic(a) if a else a


# ---------------------------------------------------------------------------
# LaurentPoly
# ---------------------------------------------------------------------------

Scalar = Union[int, Fraction, "CycloNum"]


class LaurentPoly:
    """Sparse Laurent polynomial ``sum c_e v^e`` with exact coefficients."""

    __slots__ = ("_t", "_hash")

    def __init__(self, terms: Mapping[int, Scalar] | Iterable[tuple[int, Scalar]] | None = None):
        t: dict[int, Scalar] = {}
        if terms:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for e, c in items:
                if c:
                    t[int(e)] = _coerce(c)
        self._t = t
        self._hash = None

    @classmethod
    def _raw(cls, t: dict) -> "LaurentPoly":
        p = cls.__new__(cls)
        p._t = t
        p._hash = None
        return p

    @classmethod
    def const(cls, c: Scalar) -> "LaurentPoly":
        return cls._raw({0: _coerce(c)} if c else {})

    @classmethod
    def monomial(cls, e: int, c: Scalar = 1) -> "LaurentPoly":
        return cls._raw({e: _coerce(c)} if c else {})

    @classmethod
    def from_dense(cls, coeffs: Iterable[Scalar], shift: int = 0) -> "LaurentPoly":
        return cls._raw({i + shift: _coerce(c) for i, c in enumerate(coeffs) if c})

    # -- inspection ---------------------------------------------------------
    @property
    def terms(self) -> dict[int, Scalar]:
        return dict(self._t)

    def items(self):
        return sorted(self._t.items())

    def coeff(self, e: int):
        return self._t.get(e, 0)

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self) -> bool:
        return bool(self._t)

    @property
    def degree(self) -> int:
        if not self._t:
            raise ValueError("degree of zero polynomial")
        return max(self._t)

    @property
    def low(self) -> int:
        if not self._t:
            raise ValueError("low degree of zero polynomial")
        return min(self._t)

    @property
    def leading(self):
        return self._t[self.degree]

    def is_constant(self) -> bool:
        return not self._t or set(self._t) == {0}

    def constant_value(self):
        return self._t.get(0, 0)

    def is_rational(self) -> bool:
        """True when every coefficient lies in Q."""
        return all(isinstance(c, (int, Fraction)) for c in self._t.values())

    def is_integral(self) -> bool:
        """True when every coefficient is an integer (the ring Z[v, 1/v])."""
        return all(isinstance(c, (int, Fraction)) and c.denominator == 1 for c in self._t.values())

    def dense(self) -> tuple[list, int]:
        """Return ``(coeffs, low)`` with ``self = v^low * sum coeffs[i] v^i``."""
        if not self._t:
            return [], 0
        lo, hi = self.low, self.degree
        out = [0] * (hi - lo + 1)
        for e, c in self._t.items():
            out[e - lo] = c
        return out, lo

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            if isinstance(other, RatFunc):
                return NotImplemented
            other = LaurentPoly.const(other)
        t = dict(self._t)
        for e, c in other._t.items():
            s = t.get(e, 0) + c
            if s:
                t[e] = _coerce(s)
            else:
                t.pop(e, None)
        return LaurentPoly._raw(t)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -c for e, c in self._t.items()})

    def __sub__(self, other):
        if isinstance(other, RatFunc):
            return NotImplemented
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            if isinstance(other, RatFunc):
                return NotImplemented
            other = _coerce(other)
            if not other:
                return LaurentPoly._raw({})
            return LaurentPoly._raw({e: _coerce(c * other) for e, c in self._t.items()})
        t: dict[int, Scalar] = {}
        for e1, c1 in self._t.items():
            for e2, c2 in other._t.items():
                e = e1 + e2
                t[e] = t.get(e, 0) + c1 * c2
        return LaurentPoly._raw({e: _coerce(c) for e, c in t.items() if c})

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, n: int):
        if n < 0:
            if len(self._t) != 1:
                raise ValueError("negative power of a non-monomial")
            (e, c), = self._t.items()
            return LaurentPoly._raw({e * n: _inv(c) ** (-n)})
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, (LaurentPoly, RatFunc)):
            return RatFunc(self) / other
        return self * _inv(_coerce(other))

    def __rtruediv__(self, other):
        return RatFunc(LaurentPoly.const(other)) / RatFunc(self)

    def shift(self, k: int) -> "LaurentPoly":
        return LaurentPoly._raw({e + k: c for e, c in self._t.items()})

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._t == other._t
        if isinstance(other, RatFunc):
            return other == self
        if isinstance(other, (int, Fraction)) or hasattr(other, "inverse"):
            return self._t == ({0: _coerce(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    def __call__(self, x):
        """Evaluate at a field element ``x`` (``x`` must be invertible if low < 0)."""
        acc = 0
        for e, c in self._t.items():
            acc = acc + c * (x ** e if e >= 0 else _inv(x) ** (-e))
        return acc

    def map_coeffs(self, f) -> "LaurentPoly":
        return LaurentPoly({e: f(c) for e, c in self._t.items()})

    # -- rendering ----------------------------------------------------------
    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        return render_poly(self, "v")

    def to_json(self) -> list:
        if not self.is_rational():
            raise TypeError("JSON form is defined for rational coefficients only")
        return [[e, str(c.numerator), str(c.denominator)] for e, c in self.items()]

    @classmethod
    def from_json(cls, data: list) -> "LaurentPoly":
        last = None
        t = {}
        for e, n, d in data:
            if last is not None and e <= last:
                raise ValueError("exponents must be strictly increasing")
            last = e
            t[int(e)] = Fraction(int(n), int(d))
        return cls(t)


def _coeff_str(c) -> str:
    s = str(c)
    if isinstance(c, CycloNum) and len([x for x in c.c if x]) > 1:
        return f"({s})"
    return s


def _is_negative(c) -> bool:
    if isinstance(c, (int, Fraction)):
        return c < 0
    nz = [x for x in c.c if x]
    return len(nz) == 1 and nz[0] < 0


def render_poly(p: LaurentPoly, var: str = "v") -> str:
    if not p._t:
        return "0"
    parts = []
    for e, c in sorted(p._t.items(), reverse=True):
        neg = _is_negative(c)
        a = -c if neg else c
        if e == 0:
            body = _coeff_str(a)
        else:
            mono = var if e == 1 else f"{var}^{e}"
            body = mono if a == 1 else f"{_coeff_str(a)}*{mono}"
        parts.append(("-" if neg else "+", body))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)
V = LaurentPoly.monomial(1)


def vpow(e: int) -> LaurentPoly:
    return LaurentPoly.monomial(e)


# ---------------------------------------------------------------------------
# division and remainders
# ---------------------------------------------------------------------------

def exact_div(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Return ``c`` with ``a == b * c`` or raise :class:`NotDivisible`."""
    if b.is_zero():
        raise ZeroDivisionError("exact_div by zero")
    if a.is_zero():
        return ZERO
    if len(b._t) == 1:
        (e, c), = b._t.items()
        inv = _inv(c)
        return LaurentPoly._raw({k - e: x * inv for k, x in a._t.items()})
    A, ja = a.dense()
    B, jb = b.dense()
    q, r = _pdivmod(A, B)
    if r:
        raise NotDivisible(f"{a} is not divisible by {b}")
    return LaurentPoly.from_dense(q, ja - jb)


def _normal_modulus(m: LaurentPoly) -> list:
    if m.is_zero():
        raise ZeroDivisionError("poly_rem modulo zero")
    M, _ = m.dense()
    return M


def poly_rem(a: LaurentPoly, m: LaurentPoly) -> LaurentPoly:
    """Canonical remainder of ``a`` modulo ``m`` in the Laurent ring.

    Powers of ``v`` are units, so ``m`` is first replaced by the ordinary
    polynomial ``M = v^-low(m) m`` with ``M(0) != 0``. The result is the unique
    ordinary polynomial of degree ``< deg M`` congruent to ``a``; negative
    powers of ``v`` in ``a`` are handled through the inverse of ``v`` mod ``M``.
    """
    M = _normal_modulus(m)
    if len(M) == 1:
        return ZERO
    if a.is_zero():
        return ZERO
    A, ja = a.dense()
    r = _pdivmod(A, M)[1]
    if ja:
        if ja > 0:
            factor = [0] * ja + [1]
        else:
            # v * (-(M - M0)/(v M0)) == 1 mod M
            m0_inv = _inv(M[0])
            base = [-c * m0_inv for c in M[1:]]
            factor, k = [1], -ja
            while k:
                if k & 1:
                    factor = _pdivmod(_pmul(factor, base), M)[1]
                k >>= 1
                if k:
                    base = _pdivmod(_pmul(base, base), M)[1]
        r = _pdivmod(_pmul(r, factor), M)[1]
    return LaurentPoly.from_dense(r)


def laurent_divmod(a: LaurentPoly, m: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    """Euclidean division in ``F[v, 1/v]``: ``a = q m + r`` with ``r = poly_rem(a, m)``."""
    r = poly_rem(a, m)
    return exact_div(a - r, m), r


def normalize_unit(p: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    """Split ``p = u * P`` with ``u = c v^k`` a unit and ``P`` monic, ``P(0) != 0``."""
    P, lo = p.dense()
    lc = P[-1]
    inv = _inv(lc)
    return LaurentPoly.monomial(lo, lc), LaurentPoly.from_dense([c * inv for c in P])


def euclid_size(p: LaurentPoly) -> int:
    return p.degree - p.low


def poly_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Monic gcd with nonzero constant term (units of the Laurent ring removed)."""
    if a.is_zero() and b.is_zero():
        return ZERO
    A = a.dense()[0]
    B = b.dense()[0]
    return LaurentPoly.from_dense(_pgcd(A, B))


def substitute_power(p: LaurentPoly, k: int) -> LaurentPoly:
    """The substitution ``v -> v^k``."""
    if k == 0:
        raise ValueError("substitute_power needs k != 0")
    return LaurentPoly._raw({e * k: c for e, c in p._t.items()})


# ---------------------------------------------------------------------------
# RatFunc
# ---------------------------------------------------------------------------

class RatFunc:
    """Element of ``Q(v)`` kept in canonical form.

    Canonical form: ``num`` and ``den`` coprime, ``den`` an ordinary monic
    polynomial with nonzero constant term. Equality is structural.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None):
        if not isinstance(num, LaurentPoly):
            num = LaurentPoly.const(num)
        if den is None:
            self.num, self.den, self._hash = num, ONE, None
            return
        if not isinstance(den, LaurentPoly):
            den = LaurentPoly.const(den)
        if den.is_zero():
            raise ZeroDivisionError("RatFunc with zero denominator")
        self.num, self.den = _canonical(num, den)
        self._hash = None

    @classmethod
    def _raw(cls, num: LaurentPoly, den: LaurentPoly) -> "RatFunc":
        r = cls.__new__(cls)
        r.num, r.den, r._hash = num, den, None
        return r

    @staticmethod
    def coerce(x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        return RatFunc(x)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_laurent(self) -> bool:
        return self.den == ONE

    def to_laurent(self) -> LaurentPoly:
        if not self.is_laurent():
            raise NotDivisible(f"{self} is not a Laurent polynomial")
        return self.num

    def is_integral(self) -> bool:
        return self.is_laurent() and self.num.is_integral()

    def __add__(self, other):
        o = _as_ratfunc(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            if self.den == ONE:
                return RatFunc._raw(self.num + o.num, ONE)
            return RatFunc(self.num + o.num, self.den)
        if o.den == ONE:
            return RatFunc._raw(self.num + o.num * self.den, self.den)
        if self.den == ONE:
            return RatFunc._raw(self.num * o.den + o.num, o.den)
        g = poly_gcd(self.den, o.den)
        if g == ONE:
            return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)
        d1 = exact_div(self.den, g)
        d2 = exact_div(o.den, g)
        return RatFunc(self.num * d2 + o.num * d1, self.den * d2)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(-self.num, self.den)

    def __sub__(self, other):
        o = _as_ratfunc(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = _as_ratfunc(other)
        if o is None:
            return NotImplemented
        if self.den == ONE and o.den == ONE:
            return RatFunc._raw(self.num * o.num, ONE)
        if self.num.is_zero() or o.num.is_zero():
            return RATZERO
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero RatFunc")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        o = _as_ratfunc(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return _as_ratfunc(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        if self.den == ONE:
            return RatFunc._raw(self.num ** n, ONE)
        return RatFunc._raw(self.num ** n, self.den ** n)

    def __eq__(self, other):
        o = _as_ratfunc(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        if self.den == ONE:
            return str(self.num)
        n = str(self.num)
        if len(self.num._t) > 1:
            n = f"({n})"
        return f"{n}/({self.den})"

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "RatFunc":
        return cls(LaurentPoly.from_json(data["num"]), LaurentPoly.from_json(data["den"]))


def _as_ratfunc(x) -> RatFunc | None:
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, LaurentPoly):
        return RatFunc._raw(x, ONE)
    if isinstance(x, (int, Fraction)):
        return RatFunc._raw(LaurentPoly.const(x), ONE)
    return None


def _canonical(num: LaurentPoly, den: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    D, dlo = den.dense()
    num = num.shift(-dlo)
    if len(D) == 1:
        return num * _inv(D[0]), ONE
    if num.is_zero():
        return ZERO, ONE
    N, nlo = num.dense()
    g = _pgcd(N, D)
    if len(g) > 1:
        N = _pdivmod(N, g)[0]
        D = _pdivmod(D, g)[0]
    inv = _inv(D[-1])
    return (LaurentPoly.from_dense([c * inv for c in N], nlo),
            LaurentPoly.from_dense([c * inv for c in D]))


RATZERO = RatFunc(ZERO)
RATONE = RatFunc(ONE)


# ---------------------------------------------------------------------------
# q-combinatorics and cyclotomic polynomials
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def quantum_number(n: int, d: int = 1) -> LaurentPoly:
    """``[n]_{v^d} = (v^{dn} - v^{-dn}) / (v^d - v^{-d})``."""
    if d <= 0:
        raise ValueError("d must be positive")
    num = vpow(d * n) - vpow(-d * n)
    return exact_div(num, vpow(d) - vpow(-d))


@lru_cache(maxsize=None)
def quantum_factorial(n: int, d: int = 1) -> LaurentPoly:
    if n < 0:
        raise ValueError("quantum_factorial needs n >= 0")
    out = ONE
    for k in range(1, n + 1):
        out = out * quantum_number(k, d)
    return out


@lru_cache(maxsize=None)
def _falling(n: int, k: int, d: int) -> LaurentPoly:
    """``[n][n-1]...[n-k+1]`` in ``v^d``."""
    return ONE if k == 0 else _falling(n, k - 1, d) * quantum_number(n - k + 1, d)


@lru_cache(maxsize=None)
def quantum_binomial(n: int, k: int, d: int = 1) -> LaurentPoly:
    if not 0 <= k <= n:
        raise ValueError("quantum_binomial needs 0 <= k <= n")
    k = min(k, n - k)
    out = exact_div(_falling(n, k, d), quantum_factorial(k, d))
    assert out.is_integral(), "q-binomial with non-integer coefficients"
    return out


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> LaurentPoly:
    """The cyclotomic polynomial Phi_n(X), with X written as ``v``."""
    if n < 1:
        raise ValueError("cyclotomic needs n >= 1")
    out = vpow(n) - ONE
    for d in range(1, n):
        if n % d == 0:
            out = exact_div(out, cyclotomic(d))
    return out


# ---------------------------------------------------------------------------
# cyclotomic fields
# ---------------------------------------------------------------------------

class _CycloField:
    def __init__(self, ell: int):
        self.ell = ell
        phi = cyclotomic(ell).dense()[0]
        self.phi = [_coerce(c) for c in phi]
        self.deg = len(phi) - 1
        # reduction table: zeta^k for deg <= k < 2*deg - 1 written in the power basis
        self.table: dict[int, list] = {}
        cur = [0] * self.deg
        if self.deg:
            cur = [-c for c in self.phi[:-1]]  # zeta^deg
        for k in range(self.deg, max(2 * self.deg - 1, ell + 1)):
            self.table[k] = cur
            # multiply by zeta
            top = cur[-1]
            nxt = [0] + cur[:-1]
            if top:
                nxt = [nxt[i] - top * self.phi[i] for i in range(self.deg)]
            cur = nxt

    def reduce(self, coeffs: list) -> tuple:
        d = self.deg
        if len(coeffs) <= d:
            return tuple(_coerce(x) for x in coeffs) + (0,) * (d - len(coeffs))
        out = list(coeffs[:d])
        for k in range(d, len(coeffs)):
            c = coeffs[k]
            if c:
                row = self.table[k]
                for i in range(d):
                    if row[i]:
                        out[i] += c * row[i]
        return tuple(_coerce(x) for x in out)


@lru_cache(maxsize=None)
def cyclotomic_field(ell: int) -> _CycloField:
    if ell < 1:
        raise ValueError("ell must be positive")
    return _CycloField(ell)


class CycloNum:
    """Element of ``Q(zeta_ell)`` stored as a residue modulo ``Phi_ell``.

    The printed symbol for ``zeta_ell`` is ``q``.
    """

    __slots__ = ("ell", "c", "_hash")

    def __init__(self, ell: int, coeffs: Iterable = ()):
        F = cyclotomic_field(ell)
        coeffs = [_coerce(Fraction(x)) for x in coeffs]
        if len(coeffs) > F.deg:
            coeffs = [_coerce(x) for x in _pdivmod(coeffs, F.phi)[1]]
        self.ell = ell
        self.c = tuple(coeffs) + (0,) * (F.deg - len(coeffs))
        self._hash = None

    @classmethod
    def _raw(cls, ell: int, c: tuple) -> "CycloNum":
        x = cls.__new__(cls)
        x.ell, x.c, x._hash = ell, c, None
        return x

    @classmethod
    def rational(cls, ell: int, r) -> "CycloNum":
        return cls(ell, [r])

    @classmethod
    def zeta(cls, ell: int, k: int = 1) -> "CycloNum":
        return _zeta_power(ell, k % ell)

    def _lift(self, other) -> "CycloNum | None":
        if isinstance(other, CycloNum):
            if other.ell != self.ell:
                raise ValueError(f"mixing Q(zeta_{self.ell}) and Q(zeta_{other.ell})")
            return other
        if isinstance(other, (int, Fraction)):
            return CycloNum.rational(self.ell, other)
        return None

    def __bool__(self):
        return any(self.c)

    def is_zero(self) -> bool:
        return not any(self.c)

    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.c[0]) if self.c else Fraction(0)

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return CycloNum._raw(self.ell, tuple(_coerce(a + b) for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __neg__(self):
        return CycloNum._raw(self.ell, tuple(-a for a in self.c))

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return CycloNum._raw(self.ell, tuple(_coerce(a - b) for a, b in zip(self.c, o.c)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycloNum._raw(self.ell, tuple(_coerce(a * other) for a in self.c))
        o = self._lift(other)
        if o is None:
            return NotImplemented
        a, b = self.c, o.c
        if not any(b[1:]):
            return self * b[0]
        if not any(a[1:]):
            return o * a[0]
        prod = [0] * max(len(a) + len(b) - 1, 0)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return CycloNum._raw(self.ell, cyclotomic_field(self.ell).reduce(prod))

    __rmul__ = __mul__

    def inverse(self) -> "CycloNum":
        """Inverse via the extended Euclidean algorithm against ``Phi_ell``."""
        if not self:
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        F = cyclotomic_field(self.ell)
        r0, r1 = list(F.phi), _trim(list(self.c))
        s0, s1 = [], [1]
        while len(r1) > 1:
            q, r = _pdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _psub(s0, _pmul(q, s1))
        inv_c = _inv(r1[0])
        return CycloNum(self.ell, [c * inv_c for c in s1])

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = CycloNum.rational(self.ell, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, CycloNum):
            return self.ell == other.ell and self.c == other.c
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.c[0] == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ell, self.c))
        return self._hash

    def order(self) -> int:
        """Multiplicative order (must divide ``2 * ell`` for roots of unity here)."""
        one = CycloNum.rational(self.ell, 1)
        x = self
        for k in range(1, 2 * self.ell + 1):
            if x == one:
                return k
            x = x * self
        raise ValueError(f"{self} is not a root of unity of order dividing {2 * self.ell}")

    def __repr__(self):
        return f"CycloNum[{self.ell}]({self})"

    def __str__(self):
        return render_poly(LaurentPoly.from_dense(self.c), "q")

    def to_json(self) -> dict:
        return {"ell": self.ell,
                "residue": [[i, str(c.numerator), str(c.denominator)] for i, c in enumerate(self.c) if c]}


@lru_cache(maxsize=None)
def _zeta_power(ell: int, k: int) -> CycloNum:
    F = cyclotomic_field(ell)
    coeffs = [0] * k + [1]
    return CycloNum._raw(ell, F.reduce(coeffs) if k >= F.deg else tuple(coeffs) + (0,) * (F.deg - k - 1))


def eval_at_root(p, ell: int) -> CycloNum:
    """Image of ``p`` under ``v -> zeta_ell`` in ``Q(zeta_ell)``."""
    if isinstance(p, RatFunc):
        num = eval_at_root(p.num, ell)
        den = eval_at_root(p.den, ell)
        if not den:
            raise PoleAtRoot(f"denominator {p.den} vanishes at a primitive {ell}-th root of unity")
        return num / den
    if isinstance(p, (int, Fraction)):
        return CycloNum.rational(ell, p)
    F = cyclotomic_field(ell)
    acc = [0] * F.deg
    for e, c in p._t.items():
        z = _zeta_power(ell, e % ell)
        if isinstance(c, CycloNum):
            z = z * c
            for i in range(F.deg):
                acc[i] += z.c[i]
        else:
            for i in range(F.deg):
                if z.c[i]:
                    acc[i] += c * z.c[i]
    return CycloNum._raw(ell, tuple(_coerce(x) for x in acc))


def to_cyclo_poly(p: LaurentPoly, ell: int) -> LaurentPoly:
    """View a rational Laurent polynomial as one over ``Q(zeta_ell)``."""
    return LaurentPoly._raw({e: (c if isinstance(c, CycloNum) else CycloNum.rational(ell, c))
                             for e, c in p._t.items()})


def v_minus_q(ell: int) -> LaurentPoly:
    """The polynomial ``v - zeta_ell`` over ``Q(zeta_ell)``."""
    return LaurentPoly._raw({1: CycloNum.rational(ell, 1), 0: -CycloNum.zeta(ell)})
