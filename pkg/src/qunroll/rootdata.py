"""Finite-type Cartan data and root-of-unity bookkeeping."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import NamedTuple

Vector = tuple[int, ...]


class UnsupportedType(ValueError):
    pass


class InadmissibleEll(ValueError):
    pass


# Types the harness accepts out of the box; add entries to extend.
SUPPORTED: set[tuple[str, int]] = {
    ("A", 1), ("A", 2), ("A", 3), ("A", 4),
    ("B", 2), ("C", 3), ("D", 4), ("G", 2),
}

# classical counts of positive roots, used as a sanity check
_POSITIVE_COUNT = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "E": lambda n: {6: 36, 7: 63, 8: 120}[n],
    "F": lambda n: 24,
    "G": lambda n: 6,
}


def _symmetrized_form(letter: str, n: int) -> list[list[int]]:
    """Gram matrix ``(alpha_i, alpha_j)`` with short roots of squared length 2."""
    B = [[0] * n for _ in range(n)]

    def link(i, j, val):
        B[i][j] = B[j][i] = val

    if letter == "A" and n >= 1:
        for i in range(n):
            B[i][i] = 2
        for i in range(n - 1):
            link(i, i + 1, -1)
    elif letter == "B" and n >= 2:
        # alpha_n short
        for i in range(n - 1):
            B[i][i] = 4
        B[n - 1][n - 1] = 2
        for i in range(n - 1):
            link(i, i + 1, -2)
    elif letter == "C" and n >= 2:
        # alpha_n long
        for i in range(n - 1):
            B[i][i] = 2
        B[n - 1][n - 1] = 4
        for i in range(n - 2):
            link(i, i + 1, -1)
        link(n - 2, n - 1, -2)
    elif letter == "D" and n >= 4:
        for i in range(n):
            B[i][i] = 2
        for i in range(n - 2):
            link(i, i + 1, -1)
        link(n - 3, n - 1, -1)
    elif letter == "E" and n in (6, 7, 8):
        # Bourbaki labelling: 1-3-4-5-6(-7-8), 2 attached to 4
        for i in range(n):
            B[i][i] = 2
        link(0, 2, -1)
        link(1, 3, -1)
        for i in range(2, n - 1):
            link(i, i + 1, -1)
    elif letter == "F" and n == 4:
        B[0][0] = B[1][1] = 4
        B[2][2] = B[3][3] = 2
        link(0, 1, -2)
        link(1, 2, -2)
        link(2, 3, -1)
    elif letter == "G" and n == 2:
        # alpha_1 short, alpha_2 long
        B[0][0], B[1][1] = 2, 6
        link(0, 1, -3)
    else:
        raise UnsupportedType(f"no finite type {letter}{n}")
    return B


@dataclass(frozen=True)
class RootSystem:
    """Cartan datum in the simple-root basis.

    ``cartan[i][j] = 2 (alpha_i, alpha_j) / (alpha_i, alpha_i)`` and
    ``d[i] = (alpha_i, alpha_i) / 2``, so that ``d_i a_ij = (alpha_i, alpha_j)``.
    """

    letter: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]
    d: tuple[int, ...]
    positive_roots: tuple[Vector, ...] = field(repr=False)

    @property
    def name(self) -> str:
        return f"{self.letter}{self.rank}"

    def simple_root(self, i: int) -> Vector:
        return tuple(1 if j == i else 0 for j in range(self.rank))

    @property
    def simple_roots(self) -> tuple[Vector, ...]:
        return tuple(self.simple_root(i) for i in range(self.rank))

    def pairing(self, lam: Vector, mu: Vector) -> int:
        return sum(lam[i] * mu[j] * self.d[i] * self.cartan[i][j]
                   for i in range(self.rank) if lam[i]
                   for j in range(self.rank) if mu[j])

    def root_d(self, alpha: Vector) -> int:
        """``d_alpha = (alpha, alpha) / 2``."""
        n = self.pairing(alpha, alpha)
        if n % 2:
            raise ValueError(f"{alpha} has odd squared length")
        return n // 2

    def coroot_pairing(self, alpha: Vector, lam: Vector) -> Fraction:
        """``2 (alpha, lam) / (alpha, alpha)``."""
        return Fraction(2 * self.pairing(alpha, lam), self.pairing(alpha, alpha))

    def reflect(self, lam: Vector, i: int) -> Vector:
        ai = self.simple_root(i)
        k = 2 * self.pairing(lam, ai) // self.pairing(ai, ai)
        return tuple(x - k * a for x, a in zip(lam, ai))

    def index_of(self, alpha: Vector) -> int:
        return self.positive_roots.index(tuple(alpha))

    def to_json(self) -> dict:
        return {
            "type": self.letter,
            "rank": self.rank,
            "cartan": [list(r) for r in self.cartan],
            "symmetrizers": list(self.d),
            "positive_roots": [list(a) for a in self.positive_roots],
        }

    def table(self) -> str:
        lines = [f"root system {self.name}", "cartan matrix:"]
        for row in self.cartan:
            lines.append("  " + " ".join(f"{x:3d}" for x in row))
        lines.append("symmetrizers: " + " ".join(map(str, self.d)))
        lines.append(f"{'root':<20} d_alpha")
        for a in self.positive_roots:
            lines.append(f"{str(list(a)):<20} {self.root_d(a)}")
        return "\n".join(lines)


def _positive_roots(rs: RootSystem) -> tuple[Vector, ...]:
    seen = set(rs.simple_roots)
    frontier = list(seen)
    while frontier:
        nxt = []
        for lam in frontier:
            for i in range(rs.rank):
                mu = rs.reflect(lam, i)
                if mu not in seen:
                    seen.add(mu)
                    nxt.append(mu)
        frontier = nxt
    pos = [r for r in seen if all(x >= 0 for x in r)]
    return tuple(sorted(pos, key=lambda r: (sum(r), tuple(-x for x in r))))


def build_root_system(letter: str, rank: int, *, check_supported: bool = True) -> RootSystem:
    letter = letter.upper()
    if check_supported and (letter, rank) not in SUPPORTED:
        raise UnsupportedType(f"type {letter}{rank} is not in the supported set "
                              f"{sorted(SUPPORTED)}")
    B = _symmetrized_form(letter, rank)
    d = tuple(B[i][i] // 2 for i in range(rank))
    cartan = tuple(tuple(B[i][j] // d[i] for j in range(rank)) for i in range(rank))
    rs = RootSystem(letter, rank, cartan, d, ())
    roots = _positive_roots(rs)
    object.__setattr__(rs, "positive_roots", roots)
    expected = _POSITIVE_COUNT[letter](rank)
    if len(roots) != expected:
        raise AssertionError(f"{letter}{rank}: found {len(roots)} positive roots, expected {expected}")
    return rs


def parse_type(name: str) -> tuple[str, int]:
    """``"G2" -> ("G", 2)``."""
    name = name.strip()
    if len(name) < 2 or not name[0].isalpha() or not name[1:].isdigit():
        raise UnsupportedType(f"cannot parse root system name {name!r}")
    return name[0].upper(), int(name[1:])


class Admissibility(NamedTuple):
    ok: bool
    reason: str
    main_case: bool

    def __bool__(self):
        return self.ok


def admissible(rs: RootSystem, ell: int) -> Admissibility:
    ds = {rs.root_d(a) for a in rs.positive_roots}
    main = all(ell % (2 * d) == 0 for d in ds)
    if ell < 1:
        return Admissibility(False, f"ell={ell} must be a positive integer", False)
    if ell in (1, 2):
        return Admissibility(False, f"ell={ell} excluded: small values 1, 2 are degenerate", main)
    if ell == 4 and 2 in ds:
        return Admissibility(False, "ell=4 excluded when some d_alpha = 2", main)
    if ell in (3, 4, 6) and 3 in ds:
        return Admissibility(False, f"ell={ell} excluded when some d_alpha = 3", main)
    reason = "admissible" + ("" if main else " (2 d_alpha does not divide ell for every alpha)")
    return Admissibility(True, reason, main)


@dataclass(frozen=True)
class RootOrderData:
    """Per positive root, ``l_alpha = ord(q_alpha^2) = ell / gcd(ell, 2 d_alpha)``."""

    ell: int
    orders: dict[Vector, int]
    root_system: RootSystem = field(repr=False)

    def __getitem__(self, alpha) -> int:
        return self.orders[tuple(alpha)]

    def simple_orders(self) -> tuple[int, ...]:
        return tuple(self.orders[a] for a in self.root_system.simple_roots)


def root_orders(rs: RootSystem, ell: int) -> RootOrderData:
    adm = admissible(rs, ell)
    if not adm:
        raise InadmissibleEll(adm.reason)
    orders = {a: ell // gcd(ell, 2 * rs.root_d(a)) for a in rs.positive_roots}
    return RootOrderData(ell, orders, rs)


def root_system_json(rs: RootSystem) -> str:
    return json.dumps(rs.to_json(), sort_keys=True)
