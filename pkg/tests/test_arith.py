import cmath
from fractions import Fraction
from functools import lru_cache

import pytest
from hypothesis import given, settings, strategies as st

from conftest import laurent_polys, nonzero_laurent, ratfuncs
from qunroll.arith import (
    ONE,
    CycloNum,
    LaurentPoly,
    NotDivisible,
    PoleAtRoot,
    RatFunc,
    V,
    cyclotomic,
    eval_at_root,
    exact_div,
    poly_gcd,
    poly_rem,
    quantum_binomial,
    quantum_factorial,
    quantum_number,
    substitute_power,
    to_cyclo_poly,
    v_minus_q,
    vpow,
)

X = LaurentPoly.monomial(1)


def lp(*pairs):
    return LaurentPoly(dict(pairs))


# ---------------------------------------------------------------------------
# oracles
# ---------------------------------------------------------------------------

def qnum_oracle(n: int, d: int) -> LaurentPoly:
    """``[n]_{v^d}`` as the explicit symmetric sum."""
    if n < 0:
        return -qnum_oracle(-n, d)
    return LaurentPoly({d * (n - 1 - 2 * i): 1 for i in range(n)})


@lru_cache(maxsize=None)
def pascal(n: int, k: int, d: int) -> LaurentPoly:
    if k < 0 or k > n:
        return LaurentPoly()
    if k == 0 or k == n:
        return ONE
    return vpow(d * k) * pascal(n - 1, k, d) + vpow(d * (k - n)) * pascal(n - 1, k - 1, d)


def to_complex(z: CycloNum) -> complex:
    w = cmath.exp(2j * cmath.pi / z.ell)
    return sum(float(c) * w ** i for i, c in enumerate(z.c))


def poly_complex(p: LaurentPoly, ell: int) -> complex:
    w = cmath.exp(2j * cmath.pi / ell)
    return sum(float(c) * w ** e for e, c in p.items())


# ---------------------------------------------------------------------------
# ring and field laws
# ---------------------------------------------------------------------------

@given(laurent_polys(), laurent_polys(), laurent_polys())
def test_laurent_ring_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a - a == LaurentPoly()
    assert a * ONE == a


@given(ratfuncs(), ratfuncs(), ratfuncs())
def test_ratfunc_field_laws(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a + b) - b == a
    if a:
        assert a * a ** -1 == RatFunc(1)
        assert (b / a) * a == b


@given(laurent_polys(max_terms=3), nonzero_laurent(max_terms=3), st.integers(-3, 3).filter(bool))
def test_ratfunc_canonical_form(p, q, k):
    r = RatFunc(p, q)
    s = RatFunc(p * vpow(k) * 3, q * vpow(k) * 3)
    assert r == s and r.num == s.num and r.den == s.den and hash(r) == hash(s)
    if r:
        lead = r.den.terms[r.den.degree]
        assert r.den.low == 0 and lead == 1


@given(st.sampled_from([3, 4, 5, 8, 12]), laurent_polys(), laurent_polys())
def test_cyclonum_field_laws(ell, p, q):
    a, b = eval_at_root(p, ell), eval_at_root(q, ell)
    assert (a + b) - b == a
    assert a * b == b * a
    if a:
        assert a * a.inverse() == CycloNum.rational(ell, 1)


# ---------------------------------------------------------------------------
# q-numbers, factorials, binomials
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("d", [1, 2, 3])
def test_quantum_number_matches_sum(d):
    for n in range(-12, 13):
        assert quantum_number(n, d) == qnum_oracle(n, d)


def test_quantum_number_examples():
    assert quantum_number(1, 1) == ONE
    assert quantum_number(2, 1) == V + V ** -1
    assert quantum_factorial(0, 1) == ONE
    assert quantum_factorial(2, 1) == V + V ** -1
    assert quantum_binomial(4, 0, 1) == ONE
    assert quantum_binomial(4, 2, 1) == lp((4, 1), (2, 1), (0, 2), (-2, 1), (-4, 1))
    assert quantum_binomial(3, 1, 2) == lp((4, 1), (0, 1), (-4, 1))


@pytest.mark.parametrize("ell,la,d", [(4, 2, 1), (8, 4, 1), (6, 3, 1), (12, 6, 1), (8, 2, 2), (12, 2, 3)])
def test_quantum_number_vanishes_at_root(ell, la, d):
    assert not eval_at_root(quantum_number(la, d), ell)
    assert not eval_at_root(quantum_factorial(la, d), ell)
    assert eval_at_root(quantum_number(la - 1, d), ell)


def test_factorial_two_vanishes_at_i():
    assert not eval_at_root(quantum_factorial(2, 1), 4)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_quantum_binomial_pascal_and_integrality(d):
    for n in range(31):
        for k in range(n + 1):
            b = quantum_binomial(n, k, d)
            assert b.is_integral()
            assert b == pascal(n, k, d), (n, k, d)


def test_quantum_binomial_rejects_bad_k():
    with pytest.raises(ValueError):
        quantum_binomial(3, 4)


# ---------------------------------------------------------------------------
# cyclotomic polynomials
# ---------------------------------------------------------------------------

def test_cyclotomic_examples():
    assert cyclotomic(1) == X - ONE
    assert cyclotomic(2) == X + ONE
    assert cyclotomic(4) == X ** 2 + ONE
    assert cyclotomic(12) == X ** 4 - X ** 2 + ONE


@pytest.mark.parametrize("n", range(1, 61))
def test_cyclotomic_product(n):
    prod = ONE
    for d in (d for d in range(1, n + 1) if n % d == 0):
        prod = prod * cyclotomic(d)
    assert prod == X ** n - ONE
    assert cyclotomic(n).low == 0


# ---------------------------------------------------------------------------
# division and remainders
# ---------------------------------------------------------------------------

def test_exact_div_examples():
    assert exact_div(vpow(2) - vpow(-2), V - V ** -1) == V + V ** -1
    q = exact_div(vpow(16) - ONE, vpow(4) + ONE)
    assert q * (vpow(4) + ONE) == vpow(16) - ONE
    assert q == vpow(12) - vpow(8) + vpow(4) - ONE
    with pytest.raises(NotDivisible):
        exact_div(vpow(2) + ONE, V - ONE)


@given(laurent_polys(), nonzero_laurent(max_terms=3))
def test_exact_div_inverts_multiplication(a, b):
    assert exact_div(a * b, b) == a


@given(laurent_polys(), laurent_polys(), st.sampled_from([V ** 2 + ONE, V - 3, V ** 3 - V + 2]))
def test_poly_rem_invariance(a, s, m):
    assert poly_rem(a + s * m, m) == poly_rem(a, m)
    assert poly_rem(m, m).is_zero()


@given(laurent_polys(), laurent_polys())
def test_poly_rem_invariance_over_cyclotomic_field(a, s):
    ell = 8
    m = v_minus_q(ell) * to_cyclo_poly(V + V ** -1, ell)
    a, s = to_cyclo_poly(a, ell), to_cyclo_poly(s, ell)
    assert poly_rem(a + s * m, m) == poly_rem(a, m)


def test_poly_rem_examples():
    q8 = CycloNum.zeta(8)
    r = poly_rem(to_cyclo_poly(vpow(2) + ONE, 8), v_minus_q(8))
    assert r == LaurentPoly.const(q8 * q8 + 1)
    # (v - i)(v^2 + 1) has a double root at i, 1 - v^16 only a simple one
    m = v_minus_q(4) * to_cyclo_poly(vpow(2) + ONE, 4)
    assert not poly_rem(to_cyclo_poly(ONE - vpow(16), 4), m).is_zero()
    # at ell = 8 the corresponding modulus divides 1 - v^16
    m8 = v_minus_q(8) * to_cyclo_poly(vpow(2) + ONE, 8)
    assert poly_rem(to_cyclo_poly(ONE - vpow(16), 8), m8).is_zero()


def test_gcd_is_monic_common_divisor():
    a = (V - ONE) * (V + 2)
    b = (V - ONE) * (V - 5)
    g = poly_gcd(a, b)
    assert g == V - ONE


# ---------------------------------------------------------------------------
# evaluation at roots of unity
# ---------------------------------------------------------------------------

@given(st.sampled_from([3, 4, 6, 8, 12]), laurent_polys(), laurent_polys())
def test_eval_is_ring_homomorphism(ell, a, b):
    assert eval_at_root(a * b, ell) == eval_at_root(a, ell) * eval_at_root(b, ell)
    assert eval_at_root(a + b, ell) == eval_at_root(a, ell) + eval_at_root(b, ell)


@given(st.sampled_from([3, 4, 5, 8, 12]), laurent_polys())
@settings(max_examples=50)
def test_eval_matches_complex_oracle(ell, p):
    assert abs(to_complex(eval_at_root(p, ell)) - poly_complex(p, ell)) < 1e-9


@pytest.mark.parametrize("ell", [3, 4, 6, 8, 12])
def test_eval_examples(ell):
    assert eval_at_root(vpow(ell), ell) == CycloNum.rational(ell, 1)
    assert not eval_at_root(cyclotomic(ell), ell)


@pytest.mark.parametrize("ell,la,d", [(4, 2, 1), (8, 4, 1), (6, 3, 1), (8, 2, 2), (12, 6, 1), (12, 2, 3)])
def test_h_scalar_nonzero_at_root(ell, la, d):
    phi = substitute_power(cyclotomic(la), 2 * d)
    assert not eval_at_root(phi, ell)
    c = exact_div(vpow(2 * d * la) - ONE, phi)
    assert eval_at_root(c, ell)


def test_pole_at_root():
    with pytest.raises(PoleAtRoot):
        eval_at_root(RatFunc(ONE, V ** 2 + ONE), 4)


# ---------------------------------------------------------------------------
# substitution and serialization
# ---------------------------------------------------------------------------

def test_substitute_power():
    assert substitute_power(V + V ** -1, 2) == vpow(2) + vpow(-2)
    assert substitute_power(ONE, 5) == ONE
    for d in (1, 2, 3):
        assert substitute_power(quantum_number(3, 1), d) == quantum_number(3, d)


@given(laurent_polys())
def test_laurent_json_round_trip(p):
    data = p.to_json()
    exps = [e for e, _, _ in data]
    assert exps == sorted(set(exps))
    assert all(isinstance(n, str) and isinstance(d, str) for _, n, d in data)
    assert LaurentPoly.from_json(data) == p


@given(ratfuncs())
def test_ratfunc_json_round_trip(r):
    assert RatFunc.from_json(r.to_json()) == r


def test_integral_coefficients_normalize_to_int():
    p = LaurentPoly({0: Fraction(4, 2), 1: Fraction(1, 2)})
    assert type(p.terms[0]) is int and p.terms[1] == Fraction(1, 2)
    assert p == LaurentPoly({0: 2, 1: Fraction(1, 2)})
