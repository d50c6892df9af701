"""Acceptance criteria, each checked exactly and reported on one PASS/FAIL line."""

import time
from itertools import product

from conftest import ACCEPTANCE_LINES
from qunroll.arith import (
    ONE,
    LaurentPoly,
    RatFunc,
    cyclotomic,
    eval_at_root,
    exact_div,
    quantum_binomial,
    quantum_factorial,
    substitute_power,
    v_minus_q,
    vpow,
)
from qunroll.certify import random_uq_elements, random_words, run_defaults
from qunroll.rootdata import SUPPORTED, admissible, build_root_system, root_orders
from qunroll.torus import (
    TensorSquare,
    TorusElement,
    commutator_cofactor,
    commutator_with_E,
    coproduct,
    geometric_series_forms,
    h_element,
    integral_decompose,
    k_bracket,
    k_power,
    specialize_torus,
    twist_by_E,
    unit_specialized,
    weight_eval,
)
from qunroll.uqsl2.hybrid import (
    hybrid_commutator,
    hybrid_reduce,
    hybrid_unit,
    tensor_class_is_zero,
    tensor_lusztig_coordinates,
)
from qunroll.uqsl2.lusztig import lusztig_integral_test, specialize_lusztig, specialized_generator
from qunroll.uqsl2.pbw import (
    E,
    F,
    K,
    TensorElement,
    UqElement,
    antipode_on,
    coproduct as uq_coproduct,
    counit,
    delta_on,
    divided_power,
    eps_on,
)
from qunroll.uqsl2.rewrite import divided_word_element, word_element

MATRIX = [("A", 1, 4), ("A", 1, 8), ("A", 2, 6), ("A", 2, 12), ("B", 2, 8), ("G", 2, 12)]


def record(n: int, title: str, failures: list[str], detail: str = "") -> None:
    status = "PASS" if not failures else "FAIL"
    line = f"{status}  [{n}] {title}"
    if detail:
        line += f"  ({detail})"
    if failures:
        line += "  first failure: " + failures[0]
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert not failures, "\n".join(failures)


def config(letter, rank, ell):
    rs = build_root_system(letter, rank)
    return rs, root_orders(rs, ell)


def phi_alpha(la: int, d: int) -> LaurentPoly:
    return substitute_power(cyclotomic(la), 2 * d)


def test_criterion_1_integral_membership():
    failures, roots, slowest = [], 0, 0.0
    for letter, rank, ell in MATRIX:
        t0 = time.perf_counter()
        rs, o = config(letter, rank, ell)
        for a in rs.positive_roots:
            roots += 1
            h = h_element(rs, a, o)
            dec = integral_decompose(h, rs, a)
            bad = [mu for _, _, mu in dec.terms if not mu.is_integral()]
            if bad or not dec.constant.is_integral():
                failures.append(f"{letter}{rank} ell={ell} alpha={a}: non-integral coefficient")
            if dec.recompose() != h:
                failures.append(f"{letter}{rank} ell={ell} alpha={a}: recomposition differs")
        dt = time.perf_counter() - t0
        slowest = max(slowest, dt)
        if dt >= 10:
            failures.append(f"{letter}{rank} ell={ell}: {dt:.1f} s >= 10 s")
    record(1, "integral membership of H_alpha", failures,
           f"{len(MATRIX)} configs, {roots} roots, slowest config {slowest:.2f} s")


def test_criterion_2_worked_example():
    failures = []
    # every root with l_alpha = 2 across the matrix
    cases = 0
    for letter, rank, ell in MATRIX:
        rs, o = config(letter, rank, ell)
        for a in rs.positive_roots:
            if o[a] != 2:
                continue
            cases += 1
            d = rs.root_d(a)
            va = vpow(d)
            mu = va * (va - vpow(-d)) * (ONE - vpow(-2 * d))
            K2 = k_power(tuple(2 * x for x in a))
            expected = K2 * k_bracket(rs, a, 0, 2) * RatFunc(mu) + K2 - 1
            if h_element(rs, a, o) != expected:
                failures.append(f"{letter}{rank} ell={ell} alpha={a}")
    if not cases:
        failures.append("no root with l_alpha = 2 in the matrix")
    record(2, "worked example at l_alpha = 2", failures, f"{cases} roots with l_alpha = 2")


def test_criterion_3_coproduct_and_commutators():
    failures, pairs = [], 0
    for letter, rank, ell in MATRIX:
        rs, o = config(letter, rank, ell)
        tag = f"{letter}{rank} ell={ell}"
        unit = specialize_torus(TorusElement.unit(rank), o)
        for a in rs.positive_roots:
            la, d = o[a], rs.root_d(a)
            h = h_element(rs, a, o)
            big = k_power(tuple(2 * la * x for x in a))
            if coproduct(h) != TensorSquare.tensor(big, h) + TensorSquare.tensor(h, TorusElement.unit(rank)):
                failures.append(f"{tag} alpha={a}: coproduct")
            hs = specialize_torus(h, o, a)
            u = unit_specialized(ell, "lusztig", a)
            if specialize_torus(coproduct(h), o, a) != u.tensor(hs) + hs.tensor(u):
                failures.append(f"{tag} alpha={a}: specialized coproduct not primitive")
            c = eval_at_root(exact_div(vpow(2 * d * la) - ONE, phi_alpha(la, d)), ell)
            if not c:
                failures.append(f"{tag} alpha={a}: c_alpha = 0")
            for j in range(rank):
                pairs += 1
                comm = twist_by_E(h, rs, j) - h
                if comm != commutator_with_E(h, rs, j) or comm != commutator_cofactor(rs, a, j, o):
                    failures.append(f"{tag} alpha={a} beta={j}: commutator")
                forms = geometric_series_forms(rs, a, j, o)
                if not forms["closed"] == forms["qnumber"] == forms["series"]:
                    failures.append(f"{tag} alpha={a} beta={j}: geometric series")
                m = rs.coroot_pairing(a, rs.simple_root(j))
                if specialize_torus(comm, o) != unit.scale(c * m):
                    failures.append(f"{tag} alpha={a} beta={j}: specialized commutator")
    record(3, "coproduct, commutator and specialization identities", failures,
           f"{pairs} (alpha, beta) pairs")


def test_criterion_4_pairwise_commutation():
    failures, pairs = [], 0
    for letter, rank, ell in MATRIX:
        rs, o = config(letter, rank, ell)
        hs = [h_element(rs, a, o) for a in rs.positive_roots]
        for x, y in product(hs, hs):
            pairs += 1
            if x * y != y * x:
                failures.append(f"{letter}{rank} ell={ell}")
    record(4, "H_alpha commute pairwise", failures, f"{pairs} ordered pairs")


def _hybrid_failures(ell: int, findings: list[str]) -> list[str]:
    fails = []
    rs, o = config("A", 1, ell)
    la = o[(1,)]
    vq = v_minus_q(ell)
    tag = f"ell={ell}"

    # literal items, both ell
    if not hybrid_reduce(E() ** 2, ell, vq).is_zero():
        fails.append(f"{tag}: (v-q)E^2 not 0")
    if hybrid_reduce(divided_power("E", 2), ell, vq).is_zero():
        fails.append(f"{tag}: (v-q)E^(2) is 0")
    e2 = hybrid_reduce(divided_power("E", 2), ell)
    if not hybrid_commutator(e2, hybrid_reduce(E() ** 2, ell)).is_zero():
        fails.append(f"{tag}: [E^(2), E^2] != 0")
    f_comm = hybrid_commutator(e2, hybrid_reduce(F() ** 2, ell))
    oracle = hybrid_reduce((word_element("EEFF") - word_element("FFEE")).scale(RatFunc(1, quantum_factorial(2))), ell)
    if f_comm != oracle:
        fails.append(f"{tag}: [E^(2), F^2] differs from the oracle")

    # the same items at E^(l_alpha)
    ed = hybrid_reduce(divided_power("E", la), ell)
    if not hybrid_reduce(E() ** la, ell, vq).is_zero() or hybrid_reduce(divided_power("E", la), ell, vq).is_zero():
        fails.append(f"{tag}: submodule test at l_alpha")
    if not hybrid_commutator(ed, hybrid_reduce(E() ** la, ell)).is_zero():
        fails.append(f"{tag}: [E^(l), E^l] != 0")
    k_comm = hybrid_commutator(ed, hybrid_reduce(K(2 * la), ell))
    if k_comm.is_zero():
        fails.append(f"{tag}: [E^({la}), K^{2 * la}] is zero")
    if k_comm != hybrid_reduce(divided_power("E", la) * K(2 * la), ell, ONE - vpow(4 * la * la)):
        fails.append(f"{tag}: [E^({la}), K^{2 * la}] != (1 - v^{4 * la * la}) E^({la}) K^{2 * la}")
    word = word_element("E" * la + "F" * la) - word_element("F" * la + "E" * la)
    if hybrid_commutator(ed, hybrid_reduce(F() ** la, ell)) != hybrid_reduce(
            word.scale(RatFunc(1, quantum_factorial(la))), ell):
        fails.append(f"{tag}: [E^(l), F^l] differs from the oracle")

    lit = hybrid_commutator(e2, hybrid_reduce(K(4), ell))
    findings.append(f"{tag}: literal [E^(2), K^4] class is {'zero' if lit.is_zero() else 'nonzero'}")
    if ell == 4 and lit.is_zero():
        fails.append(f"{tag}: [E^(2), K^4] is zero")

    # skew primitivity
    h = UqElement({(0, b[0], 0): c for b, c in h_element(rs, (1,), o).terms.items()})
    big, one = K(2 * la), UqElement.scalar(1)
    diff = uq_coproduct(h) - TensorElement.pure(big, h) - TensorElement.pure(h, one)
    if not tensor_class_is_zero(tensor_lusztig_coordinates(diff), ell):
        fails.append(f"{tag}: H is not skew primitive")
    if hybrid_reduce(big, ell) == hybrid_unit(ell):
        fails.append(f"{tag}: class(K^{2 * la}) = class(1)")

    # composite on generators and words
    for name, g in (("E", E()), ("F", F()), ("K", K(1))):
        if hybrid_reduce(g, ell).specialize() != specialized_generator(name, ell):
            fails.append(f"{tag}: composite moves {name}")
    for w in random_words(40, seed=ell):
        x = word_element(w)
        if hybrid_reduce(x, ell).specialize() != specialize_lusztig(x, ell):
            fails.append(f"{tag}: composite differs on word {w}")
    return fails


def test_criterion_5_hybrid_quotient():
    t0 = time.perf_counter()
    failures, findings = [], []
    for ell in (4, 8):
        failures += _hybrid_failures(ell, findings)
    # reference scalars for the sl2 example, recorded rather than asserted
    disp = UqElement({(2, 4, 0): RatFunc(ONE - vpow(16), (vpow(1) - vpow(-1)) * (vpow(2) - vpow(-2)))}, mode="plain")
    findings.append("ell=4: reference form (1-q^16)/((q-q^-1)(q^2-q^-2)) E^2 K^4 is Lusztig-integral: "
                    f"{bool(lusztig_integral_test(disp))}")
    q = eval_at_root(vpow(1), 4)
    shown = hybrid_reduce(K(2) - K(-2), 4, LaurentPoly.const(q / (q - q.inverse()) ** 2))
    got = hybrid_commutator(hybrid_reduce(divided_power("E", 2), 4), hybrid_reduce(F() ** 2, 4))
    findings.append(f"ell=4: reference form q/(q-q^-1)^2 (K^2-K^-2) equals [E^(2), F^2]: {shown == got}")
    dt = time.perf_counter() - t0
    if dt >= 30:
        failures.append(f"{dt:.1f} s >= 30 s")
    for f in findings:
        line = f"      finding: {f}"
        ACCEPTANCE_LINES.append(line)
        print(line)
    record(5, "hybrid quotient at ell = 4 and 8", failures,
           f"{dt:.1f} s; at ell = 8 the K-commutator is read at l_alpha = 4")


def test_criterion_6_weight_limits():
    failures, checked, configs = [], 0, 0
    for letter, rank in sorted(SUPPORTED):
        rs = build_root_system(letter, rank)
        ells = {e for l2, r2, e in MATRIX if (l2, r2) == (letter, rank)}
        if not ells:
            ells = {next(e for e in range(3, 40) if admissible(rs, e) and admissible(rs, e).main_case)}
        for ell in sorted(ells):
            configs += 1
            for a in rs.positive_roots:
                for lam in product(range(-3, 4), repeat=rank):
                    m = 2 * rs.pairing(a, lam) / rs.pairing(a, a)
                    if m != int(m):
                        continue
                    checked += 1
                    if weight_eval(rs, a, lam, ell) != m:
                        failures.append(f"{letter}{rank} ell={ell} alpha={a} lambda={lam}")
    record(6, "weight limits equal 2(alpha,lambda)/(alpha,alpha)", failures,
           f"{configs} configs, {checked} (alpha, lambda) pairs")


def _pascal(n, k, d, memo={}):
    if k < 0 or k > n:
        return LaurentPoly()
    if k in (0, n):
        return ONE
    key = (n, k, d)
    if key not in memo:
        memo[key] = vpow(d * k) * _pascal(n - 1, k, d) + vpow(d * (k - n)) * _pascal(n - 1, k - 1, d)
    return memo[key]


def test_criterion_7_property_suites():
    failures = []
    elems = random_uq_elements(200, seed=7)
    for i, x in enumerate(elems):
        d = uq_coproduct(x)
        e = UqElement.scalar(counit(x))
        if delta_on(d, 0) != delta_on(d, 1):
            failures.append(f"coassociativity on element {i}")
        if eps_on(d, 0).as_element() != x or eps_on(d, 1).as_element() != x:
            failures.append(f"counit on element {i}")
        if antipode_on(d, 0).multiply_out() != e or antipode_on(d, 1).multiply_out() != e:
            failures.append(f"antipode on element {i}")
    for a, c in product(range(6), repeat=2):
        if divided_power("E", a) * divided_power("F", c) != divided_word_element(a, c, "E"):
            failures.append(f"straightening E^({a})F^({c})")
        if divided_power("F", c) * divided_power("E", a) != divided_word_element(a, c, "F"):
            failures.append(f"straightening F^({c})E^({a})")
    for d in (1, 2, 3):
        for n in range(31):
            for k in range(n + 1):
                b = quantum_binomial(n, k, d)
                if not b.is_integral() or b != _pascal(n, k, d):
                    failures.append(f"q-binomial ({n} {k})_{d}")
    X = LaurentPoly.monomial(1)
    for n in range(1, 61):
        prod = ONE
        for dd in range(1, n + 1):
            if n % dd == 0:
                prod = prod * cyclotomic(dd)
        if prod != X ** n - ONE:
            failures.append(f"cyclotomic product n={n}")
    t0 = time.perf_counter()
    rep = run_defaults()
    dt = time.perf_counter() - t0
    if not rep.passed:
        failures.append(f"default run: {len(rep.failures)} failures, first {rep.failures[0].name}")
    if dt >= 120:
        failures.append(f"default run took {dt:.1f} s")
    record(7, "property suites and full default run", failures,
           f"200 Hopf elements, default run {len(rep.results)} checks in {dt:.1f} s")
