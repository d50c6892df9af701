"""The hybrid quotient ``L / (v - q) K`` of U_q(sl2) with computable canonical forms.

Scalars are ``R = F[v, 1/v]`` with ``F = Q(zeta_ell)``. Lusztig's form ``L`` is
free over ``R`` on the labels ``(a, delta, t, c)``; the Kac-De Concini form ``K``
has, inside each block ``(a, c)``, the span of ``[a]! [c]! E^(a) K^b F^(c)``.
So the quotient splits into blocks ``R^m / f M`` with ``f = (v - q)[a]![c]!`` and
``M`` the ``R``-span of the Lusztig coordinates of the group elements ``K^b``.

Coordinates inside a block are ordered outer-first by the extent of a label
(``t`` for ``delta = 0``, ``t + 1`` for ``delta = 1``):
``(0,n), (1,n-1), (0,n-1), ..., (1,0), (0,0)``. In that order the lattice of
``M`` is block lower triangular, its Hermite form is lower triangular, and
reducing top-down against it yields a representative that does not depend
on the window size ``n``.
"""

from __future__ import annotations

from functools import lru_cache

from qunroll.arith import (
    ONE,
    CycloNum,
    LaurentPoly,
    RatFunc,
    euclid_size,
    eval_at_root,
    laurent_divmod,
    normalize_unit,
    poly_gcd,
    poly_rem,
    quantum_factorial,
    to_cyclo_poly,
    v_minus_q,
)
from qunroll.torus import (
    decompose_tensor_univariate,
    decompose_univariate,
    render_sum,
)
from qunroll.uqsl2.lusztig import (
    Label,
    SpecializedUq,
    integral_coordinates,
    label_str,
    structure_constants,
)
from qunroll.uqsl2.pbw import TensorElement, UqElement

Block = tuple[int, int]


class HybridError(ValueError):
    pass


def extent(delta: int, t: int) -> int:
    return t + delta


def window_rows(n: int) -> list[tuple[int, int]]:
    rows = []
    for m in range(n, 0, -1):
        rows += [(0, m), (1, m - 1)]
    return rows + [(0, 0)]


@lru_cache(maxsize=None)
def lattice_columns(n: int) -> tuple[tuple[LaurentPoly, ...], ...]:
    """Coordinates of ``K^b`` for ``b = n, -n, n-1, ..., 0`` in the window-``n`` rows."""
    rows = window_rows(n)
    idx = {r: i for i, r in enumerate(rows)}
    cols = []
    order = [0] + [s * m for m in range(1, n + 1) for s in (1, -1)]
    for b in reversed(order):
        col = [LaurentPoly()] * len(rows)
        for lab, mu in decompose_univariate({b: RatFunc(1)}, 1).items():
            assert mu.is_integral()
            col[idx[lab]] = mu.num
        cols.append(tuple(col))
    return tuple(cols)


def _col_axpy(x: list, q: LaurentPoly, col, start: int = 0) -> None:
    """``x -= q * col`` in place."""
    for r in range(start, len(x)):
        if col[r]:
            x[r] = x[r] - q * col[r]


@lru_cache(maxsize=None)
def hermite_basis(n: int) -> tuple[tuple[LaurentPoly, ...], ...]:
    """Lower-triangular column basis of ``M`` over ``Q[v, 1/v]``; pivot ``i`` is monic."""
    cols = [list(c) for c in lattice_columns(n)]
    size = len(cols)
    out = []
    for i in range(size):
        active = [c for c in cols if c[i]]
        rest = [c for c in cols if not c[i]]
        while len(active) > 1:
            active.sort(key=lambda c: euclid_size(c[i]))
            piv = active[0]
            nxt = [piv]
            for c in active[1:]:
                q, _ = laurent_divmod(c[i], piv[i])
                _col_axpy(c, q, piv, i)
                (nxt if c[i] else rest).append(c)
            active = nxt
        if not active:
            raise AssertionError("lattice of group elements is not of full rank")
        piv = active[0]
        unit, _ = normalize_unit(piv[i])
        inv = unit ** -1
        piv = [x * inv for x in piv]
        out.append(tuple(piv))
        cols = rest
    return tuple(out)


@lru_cache(maxsize=None)
def _scaled_pivots(n: int, a: int, c: int, ell: int) -> tuple:
    f = v_minus_q(ell) * to_cyclo_poly(quantum_factorial(a, 1) * quantum_factorial(c, 1), ell)
    return tuple(tuple(f * to_cyclo_poly(x, ell) for x in col) for col in hermite_basis(n))


def block_modulus(a: int, c: int, ell: int) -> LaurentPoly:
    return v_minus_q(ell) * to_cyclo_poly(quantum_factorial(a, 1) * quantum_factorial(c, 1), ell)


def _as_cyclo(x, ell: int) -> LaurentPoly:
    if isinstance(x, RatFunc):
        x = x.to_laurent()
    if isinstance(x, LaurentPoly):
        if all(isinstance(c, CycloNum) for c in x.terms.values()):
            return x
        return to_cyclo_poly(x, ell)
    if isinstance(x, CycloNum):
        return LaurentPoly.const(x)
    return to_cyclo_poly(LaurentPoly.const(x), ell)


def reduce_block(vec: dict[tuple[int, int], LaurentPoly], a: int, c: int, ell: int) -> dict:
    """Canonical representative of a block vector modulo ``f M``."""
    if not vec:
        return {}
    n = max(extent(*k) for k in vec)
    rows = window_rows(n)
    x = [vec.get(r, LaurentPoly()) for r in rows]
    pivots = _scaled_pivots(n, a, c, ell)
    for i, col in enumerate(pivots):
        if x[i]:
            q, r = laurent_divmod(x[i], col[i])
            if q:
                _col_axpy(x, q, col, i)
            x[i] = r
    return {rows[i]: p for i, p in enumerate(x) if p}


def reduce_coordinates(coords: dict[Label, object], ell: int) -> dict[Label, LaurentPoly]:
    blocks: dict[Block, dict] = {}
    for (a, delta, t, c), mu in coords.items():
        mu = _as_cyclo(mu, ell)
        if mu:
            blocks.setdefault((a, c), {})[(delta, t)] = mu
    out = {}
    for (a, c), vec in blocks.items():
        for (delta, t), p in reduce_block(vec, a, c, ell).items():
            out[(a, delta, t, c)] = p
    return out


@lru_cache(maxsize=None)
def _cyclo_structure(l1: Label, l2: Label, ell: int) -> tuple:
    return tuple((lab, to_cyclo_poly(mu, ell)) for lab, mu in structure_constants(l1, l2))


class HybridClass:
    """A class in the hybrid quotient.

    ``(v - q)K`` is a left and right ``K``-submodule of ``L`` but not an ideal
    of ``L`` (for instance ``E^(2) (v - q) F`` is not in it), so a product of
    classes depends on the chosen lifts. A class therefore keeps the lift it
    was built from; arithmetic acts on lifts and equality compares canonical
    representatives.
    """

    __slots__ = ("ell", "lift", "_t")

    def __init__(self, ell: int, coords: dict | None = None):
        self.ell = ell
        lift = {}
        for k, mu in (coords or {}).items():
            mu = _as_cyclo(mu, ell)
            if mu:
                lift[k] = mu
        self.lift = lift
        self._t = reduce_coordinates(lift, ell)

    @classmethod
    def _make(cls, ell: int, lift: dict, rep: dict) -> "HybridClass":
        x = cls.__new__(cls)
        x.ell, x.lift, x._t = ell, lift, rep
        return x

    @property
    def coordinates(self) -> dict[Label, LaurentPoly]:
        """Canonical representative."""
        return dict(self._t)

    def canonical(self) -> "HybridClass":
        """The same class, lifted by its canonical representative."""
        return HybridClass._make(self.ell, dict(self._t), dict(self._t))

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self):
        return bool(self._t)

    def _check(self, other: "HybridClass"):
        if self.ell != other.ell:
            raise HybridError("classes at different ell")

    def __add__(self, other: "HybridClass"):
        self._check(other)
        lift = dict(self.lift)
        for k, p in other.lift.items():
            lift[k] = lift.get(k, LaurentPoly()) + p
        return HybridClass(self.ell, lift)

    def __neg__(self):
        return HybridClass._make(self.ell, {k: -p for k, p in self.lift.items()},
                                 {k: -p for k, p in self._t.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "HybridClass":
        s = _as_cyclo(s, self.ell)
        return HybridClass(self.ell, {k: p * s for k, p in self.lift.items()})

    def __mul__(self, other):
        if not isinstance(other, HybridClass):
            return self.scale(other)
        self._check(other)
        acc: dict = {}
        for l1, c1 in self.lift.items():
            for l2, c2 in other.lift.items():
                c12 = c1 * c2
                for lab, mu in _cyclo_structure(l1, l2, self.ell):
                    acc[lab] = acc.get(lab, LaurentPoly()) + c12 * mu
        return HybridClass(self.ell, acc)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        out = hybrid_unit(self.ell)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, HybridClass):
            return NotImplemented
        return self.ell == other.ell and self._t == other._t

    def __hash__(self):
        return hash((self.ell, frozenset(self._t.items())))

    def specialize(self) -> SpecializedUq:
        """Image under the surjection onto the specialized Lusztig form."""
        return SpecializedUq(self.ell, {k: eval_at_root(p, self.ell) for k, p in self._t.items()})

    def render(self, index: str = "") -> str:
        parts = []
        for lab, p in sorted(self._t.items(), reverse=True):
            s = str(p)
            mono = label_str(lab, index)
            if not mono:
                parts.append(s if len(p.terms) == 1 else f"({s})")
            elif p == ONE:
                parts.append(mono)
            elif len(p.terms) == 1 and " " not in s:
                parts.append(f"{s}*{mono}")
            else:
                parts.append(f"({s})*{mono}")
        return render_sum(parts)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"HybridClass(ell={self.ell}, {self})"

    def to_json(self) -> dict:
        return {"ell": self.ell,
                "terms": [{"label": {"E": a, "delta": d, "t": t, "F": c},
                           "coeff": [[e, x.to_json()] for e, x in p.items()]}
                          for (a, d, t, c), p in sorted(self._t.items())]}


def hybrid_unit(ell: int) -> HybridClass:
    return HybridClass(ell, {(0, 0, 0, 0): 1})


def hybrid_reduce(x: UqElement, ell: int, scalar=None) -> HybridClass:
    """Class of ``scalar * x`` for ``x`` in Lusztig's form; ``scalar`` lies in ``F[v, 1/v]``."""
    coords = integral_coordinates(x)
    if scalar is not None:
        s = _as_cyclo(scalar, ell)
        coords = {k: to_cyclo_poly(p, ell) * s for k, p in coords.items()}
    return HybridClass(ell, coords)


def hybrid_generator(name: str, ell: int, t: int = 1) -> HybridClass:
    """Classes of ``E``, ``F``, ``K^t``, ``E^(t)``, ``F^(t)``."""
    lab = {"E": (t, 0, 0, 0), "F": (0, 0, 0, t), "1": (0, 0, 0, 0)}.get(name)
    if lab is not None:
        return HybridClass(ell, {lab: 1})
    if name == "K":
        return hybrid_reduce(UqElement.monomial(0, t, 0), ell)
    raise HybridError(f"unknown generator {name!r}")


def hybrid_commutator(x: HybridClass, y: HybridClass) -> HybridClass:
    return x * y - y * x


# ---------------------------------------------------------------------------
# tensor squares of the quotient
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def smith_data(n: int) -> tuple[tuple, tuple]:
    """``(P, d)`` with ``P C Q = diag(d)`` for the window-``n`` lattice ``C``.

    ``P`` is returned as a tuple of rows. A vector ``x`` lies in ``M`` iff
    ``(P x)_i`` is divisible by ``d_i`` for every ``i``.
    """
    C = [list(col) for col in lattice_columns(n)]
    size = len(C)
    A = [[C[j][i] for j in range(size)] for i in range(size)]  # rows x cols
    P = [[ONE if i == j else LaurentPoly() for j in range(size)] for i in range(size)]

    def row_op(dst, src, q):  # row_dst -= q * row_src
        for M in (A, P):
            for j in range(size):
                if M[src][j]:
                    M[dst][j] = M[dst][j] - q * M[src][j]

    for k in range(size):
        while True:
            best = None
            for i in range(k, size):
                for j in range(k, size):
                    if A[i][j] and (best is None or euclid_size(A[i][j]) < best[0]):
                        best = (euclid_size(A[i][j]), i, j)
            if best is None:
                raise AssertionError("singular lattice")
            _, i, j = best
            A[k], A[i] = A[i], A[k]
            P[k], P[i] = P[i], P[k]
            for row in A:
                row[k], row[j] = row[j], row[k]
            dirty = False
            for i in range(k + 1, size):
                if A[i][k]:
                    q, _ = laurent_divmod(A[i][k], A[k][k])
                    row_op(i, k, q)
                    dirty = dirty or bool(A[i][k])
            for j in range(k + 1, size):
                if A[k][j]:
                    q, _ = laurent_divmod(A[k][j], A[k][k])
                    for row in A:
                        if row[k]:
                            row[j] = row[j] - q * row[k]
                    dirty = dirty or bool(A[k][j])
            if not dirty:
                break
    return tuple(tuple(r) for r in P), tuple(A[i][i] for i in range(size))


def tensor_lusztig_coordinates(T: TensorElement) -> dict[tuple[Label, Label], RatFunc]:
    if T.arity != 2:
        raise ValueError("expected a two-factor tensor")
    blocks: dict[tuple[Block, Block], dict] = {}
    for ((a1, b1, c1), (a2, b2, c2)), x in T.terms.items():
        blocks.setdefault(((a1, c1), (a2, c2)), {})[(b1, b2)] = x
    out = {}
    for ((a1, c1), (a2, c2)), coeffs in blocks.items():
        for ((d1, t1), (d2, t2)), mu in decompose_tensor_univariate(coeffs, 1).items():
            out[((a1, d1, t1, c1), (a2, d2, t2, c2))] = mu
    return out


def tensor_class_is_zero(coords: dict[tuple[Label, Label], object], ell: int) -> bool:
    """Whether an element of ``L (x)_R L`` vanishes in the tensor square of the quotient."""
    pairs: dict[tuple[Block, Block], dict] = {}
    for (l1, l2), mu in coords.items():
        mu = _as_cyclo(mu, ell)
        if mu:
            pairs.setdefault(((l1[0], l1[3]), (l2[0], l2[3])), {})[((l1[1], l1[2]), (l2[1], l2[2]))] = mu
    for (B1, B2), entries in pairs.items():
        n1 = max(extent(*k[0]) for k in entries)
        n2 = max(extent(*k[1]) for k in entries)
        r1, r2 = window_rows(n1), window_rows(n2)
        i1, i2 = {r: i for i, r in enumerate(r1)}, {r: i for i, r in enumerate(r2)}
        X = [[LaurentPoly()] * len(r2) for _ in r1]
        for (k1, k2), mu in entries.items():
            X[i1[k1]][i2[k2]] = mu
        P1, d1 = smith_data(n1)
        P2, d2 = smith_data(n2)
        P1 = [[to_cyclo_poly(x, ell) for x in row] for row in P1]
        P2 = [[to_cyclo_poly(x, ell) for x in row] for row in P2]
        f1, f2 = block_modulus(*B1, ell), block_modulus(*B2, ell)
        # Y = P1 X P2^T
        PX = [[sum((P1[i][k] * X[k][j] for k in range(len(r1)) if P1[i][k] and X[k][j]), LaurentPoly())
               for j in range(len(r2))] for i in range(len(r1))]
        for i in range(len(r1)):
            for j in range(len(r2)):
                y = sum((PX[i][k] * P2[j][k] for k in range(len(r2)) if PX[i][k] and P2[j][k]), LaurentPoly())
                if not y:
                    continue
                g = poly_gcd(f1 * to_cyclo_poly(d1[i], ell), f2 * to_cyclo_poly(d2[j], ell))
                if poly_rem(y, g):
                    return False
    return True


