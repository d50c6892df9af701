from math import gcd

import pytest

from qunroll.arith import CycloNum
from qunroll.rootdata import (
    SUPPORTED,
    InadmissibleEll,
    UnsupportedType,
    admissible,
    build_root_system,
    parse_type,
    root_orders,
    root_system_json,
)

CLASSICAL_COUNTS = {("A", 1): 1, ("A", 2): 3, ("A", 3): 6, ("A", 4): 10,
                    ("B", 2): 4, ("C", 3): 9, ("D", 4): 12, ("G", 2): 6}


def root_strings(rs):
    """Positive roots by the root-string algorithm (independent of reflections)."""
    n = rs.rank
    simple = [rs.simple_root(i) for i in range(n)]
    roots = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for b in layer:
            for i in range(n):
                # p = how far the alpha_i string extends below b
                p = 0
                down = tuple(x - s for x, s in zip(b, simple[i]))
                while down in roots:
                    p += 1
                    down = tuple(x - s for x, s in zip(down, simple[i]))
                q = p - rs.coroot_pairing(simple[i], b)
                up = tuple(x + s for x, s in zip(b, simple[i]))
                if q > 0 and up not in roots:
                    roots.add(up)
                    nxt.append(up)
        layer = nxt
    return roots


@pytest.mark.parametrize("letter,rank", sorted(SUPPORTED))
def test_positive_roots_match_root_strings(letter, rank):
    rs = build_root_system(letter, rank)
    assert set(rs.positive_roots) == root_strings(rs)
    assert len(rs.positive_roots) == CLASSICAL_COUNTS[(letter, rank)]


@pytest.mark.parametrize("letter,rank", sorted(SUPPORTED))
def test_pairing_and_symmetrizers(letter, rank):
    rs = build_root_system(letter, rank)
    for a in rs.positive_roots:
        assert rs.pairing(a, a) == 2 * rs.root_d(a)
        assert rs.root_d(a) in (1, 2, 3)
    for i in range(rank):
        for j in range(rank):
            assert rs.pairing(rs.simple_root(i), rs.simple_root(j)) == rs.d[i] * rs.cartan[i][j]
            assert rs.pairing(rs.simple_root(i), rs.simple_root(j)) == rs.pairing(rs.simple_root(j), rs.simple_root(i))


def test_examples():
    a1 = build_root_system("A", 1)
    assert a1.positive_roots == ((1,),) and a1.d == (1,)
    a2 = build_root_system("A", 2)
    assert set(a2.positive_roots) == {(1, 0), (0, 1), (1, 1)}
    assert a2.pairing((1, 0), (0, 1)) == -1
    assert a1.pairing((1,), (1,)) == 2
    g2 = build_root_system("G", 2)
    assert len(g2.positive_roots) == 6 and sorted(g2.d) == [1, 3]
    long = [a for a in g2.positive_roots if g2.root_d(a) == 3]
    assert len(long) == 3 and all(g2.pairing(a, a) == 6 for a in long)


def test_root_orders_examples():
    assert root_orders(build_root_system("A", 1), 4)[(1,)] == 2
    a2 = root_orders(build_root_system("A", 2), 6)
    assert set(a2.orders.values()) == {3}
    g2 = build_root_system("G", 2)
    o = root_orders(g2, 12)
    for a in g2.positive_roots:
        assert o[a] == (6 if g2.root_d(a) == 1 else 2)


def multiplicative_order(z: CycloNum) -> int:
    one = CycloNum.rational(z.ell, 1)
    k, w = 1, z
    while w != one:
        w, k = w * z, k + 1
    return k


@pytest.mark.parametrize("letter,rank,ell", [("A", 1, 4), ("A", 1, 8), ("A", 2, 6), ("A", 2, 12),
                                             ("B", 2, 8), ("G", 2, 12), ("C", 3, 12), ("D", 4, 10)])
def test_root_orders_match_cyclotomic_exponentiation(letter, rank, ell):
    rs = build_root_system(letter, rank)
    orders = root_orders(rs, ell)
    for a in rs.positive_roots:
        q_a_sq = CycloNum.zeta(ell, 2 * rs.root_d(a))
        assert orders[a] == multiplicative_order(q_a_sq) == ell // gcd(ell, 2 * rs.root_d(a))


def test_admissibility():
    assert not admissible(build_root_system("A", 1), 2)
    assert not admissible(build_root_system("G", 2), 6)
    assert not admissible(build_root_system("B", 2), 4)
    ok = admissible(build_root_system("A", 1), 4)
    assert ok and ok.main_case
    assert "excluded" in admissible(build_root_system("A", 1), 1).reason
    with pytest.raises(InadmissibleEll):
        root_orders(build_root_system("A", 1), 2)


def test_unsupported_and_parse():
    with pytest.raises(UnsupportedType):
        build_root_system("E", 8)
    assert parse_type("g2") == ("G", 2)
    with pytest.raises(UnsupportedType):
        parse_type("A")
    js = root_system_json(build_root_system("B", 2))
    assert '"positive_roots"' in js and js == root_system_json(build_root_system("B", 2))
