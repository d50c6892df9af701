"""Evaluation of parsed expressions in one of four algebras."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from qunroll.arith import (
    CycloNum,
    LaurentPoly,
    RatFunc,
    cyclotomic,
    eval_at_root,
    quantum_number,
)
from qunroll.cli.parser import (
    Bracket,
    BinOp,
    Call,
    Cyclo,
    Gen,
    Neg,
    Node,
    Num,
    Pow,
    QNum,
    Sym,
    parse,
    to_source,
)
from qunroll.rootdata import (
    InadmissibleEll,
    UnsupportedType,
    admissible,
    build_root_system,
    parse_type,
    root_orders,
)
from qunroll.torus import (
    TensorSquare,
    TorusElement,
    _render_coeff_prefix,
    antipode as torus_antipode,
    commutator_with_E,
    coproduct as torus_coproduct,
    counit as torus_counit,
    h_element,
    k_power,
    render_sum,
    twist_by_E,
)


class ContextError(ValueError):
    """The expression uses something the chosen algebra does not provide."""


class ConfigError(ValueError):
    """The context itself is malformed or inadmissible."""


@dataclass(frozen=True)
class Context:
    kind: str  # torus | sl2-rational | sl2-lusztig | sl2-hybrid
    letter: str = "A"
    rank: int = 1
    ell: int | None = None

    def __str__(self):
        if self.kind == "torus":
            return f"torus({self.letter}{self.rank},{self.ell})"
        if self.kind == "sl2-rational":
            return "sl2-rational"
        return f"{self.kind}({self.ell})"


_CTX_RE = re.compile(r"\s*(torus|sl2-rational|sl2-lusztig|sl2-hybrid)\s*(?:\((.*)\))?\s*")


def parse_context(text: str) -> Context:
    """``torus(A2,6)``, ``sl2-rational``, ``sl2-lusztig(4)`` or ``sl2-hybrid(8)``."""
    m = _CTX_RE.fullmatch(text)
    if not m:
        raise ConfigError(f"unknown context {text!r}")
    kind, args = m.group(1), m.group(2)
    parts = [p.strip() for p in args.split(",")] if args else []
    try:
        if kind == "torus":
            if len(parts) != 2:
                raise ConfigError("torus context takes a type and ell, e.g. torus(A2,6)")
            letter, rank = parse_type(parts[0])
            ctx = Context(kind, letter, rank, int(parts[1]))
        elif kind == "sl2-rational":
            if parts:
                raise ConfigError("sl2-rational takes no arguments")
            return Context(kind)
        else:
            if len(parts) != 1:
                raise ConfigError(f"{kind} takes ell, e.g. {kind}(4)")
            ctx = Context(kind, "A", 1, int(parts[0]))
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"bad context {text!r}: {exc}") from exc
    try:
        rs = build_root_system(ctx.letter, ctx.rank)
    except UnsupportedType as exc:
        raise ConfigError(str(exc)) from exc
    adm = admissible(rs, ctx.ell)
    if not adm:
        raise InadmissibleEll(f"{ctx.letter}{ctx.rank}, ell={ctx.ell}: {adm.reason}")
    return ctx


# ---------------------------------------------------------------------------
# value types local to the evaluator
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EMultiple:
    """``E_j * c`` with ``c`` a torus element; results of ``[x, E_j]`` in the torus."""
    j: int
    cofactor: TorusElement

    def __str__(self):
        return "0" if self.cofactor.is_zero() else f"E{self.j + 1} * ({self.cofactor})"

    def to_json(self):
        return {"E": self.j + 1, "cofactor": self.cofactor.to_json()}


class Result:
    def __init__(self, context: Context, expr: Node, value, text: str, data):
        self.context, self.expr, self.value, self.text, self.data = context, expr, value, text, data

    def to_json(self) -> dict:
        return {"context": str(self.context), "expr": to_source(self.expr),
                "result": self.text, "value": self.data}


def _cyclo_json(c) -> object:
    return c.to_json() if isinstance(c, CycloNum) else [str(Fraction(c))]


def _laurent_json(p: LaurentPoly) -> list:
    return [[e, _cyclo_json(c) if isinstance(c, CycloNum) else [str(Fraction(c))]] for e, c in p.items()]


def _ratfunc_json(r: RatFunc) -> dict:
    try:
        return r.to_json()
    except TypeError:
        return {"num": _laurent_json(r.num), "den": _laurent_json(r.den)}


# ---------------------------------------------------------------------------
# algebras
# ---------------------------------------------------------------------------

class _Algebra:
    """Scalars are ``RatFunc``; everything else is an algebra-specific value."""

    ctx: Context

    def __init__(self, ctx: Context):
        self.ctx = ctx
        self.rs = build_root_system(ctx.letter, ctx.rank)
        self.orders = root_orders(self.rs, ctx.ell) if ctx.ell else None

    def q(self) -> RatFunc:
        raise ContextError("q is only available in the sl2-hybrid context")

    def check_scalar(self, s: RatFunc) -> RatFunc:
        if not all(isinstance(c, (int, Fraction)) for p in (s.num, s.den) for c in p.terms.values()):
            raise ContextError("cyclotomic scalars need the sl2-hybrid context")
        return s

    def bracket(self, ev, node: Bracket):
        x, y = ev(node.left), ev(node.right)
        return self.sub(self.mul(x, y), self.mul(y, x))

    # to be provided
    def embed(self, s: RatFunc): ...
    def generator(self, node: Gen): ...
    def add(self, x, y): ...
    def neg(self, x): ...
    def mul(self, x, y): ...
    def call(self, fn: str, x): ...
    def render(self, x) -> str: ...
    def to_json(self, x): ...

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def scale(self, x, s: RatFunc):
        return self.mul(self.embed(s), x)

    def power(self, x, n: int):
        if n < 0:
            return self.power(self.inverse(x), -n)
        out = self.embed(RatFunc(1))
        for _ in range(n):
            out = self.mul(out, x)
        return out

    def inverse(self, x):
        raise ContextError("negative powers are defined for scalars and K-monomials only")


class TorusAlgebra(_Algebra):
    def embed(self, s):
        return TorusElement.scalar(self.rs.rank, self.check_scalar(s))

    def generator(self, node: Gen):
        i = node.index - 1
        if node.kind == "K":
            return k_power(tuple(int(j == i) for j in range(self.rs.rank)))
        if node.kind == "Kinv":
            return k_power(tuple(-int(j == i) for j in range(self.rs.rank)))
        if node.kind == "H":
            return h_element(self.rs, self.rs.simple_root(i), self.orders)
        raise ContextError(f"{node.kind}{node.index} is not in the torus; use it inside [x, E{node.index}]")

    def bracket(self, ev, node: Bracket):
        for this, other, sign in ((node.right, node.left, 1), (node.left, node.right, -1)):
            if isinstance(this, Gen) and this.kind == "E":
                x = ev(other)
                if isinstance(x, TorusElement):
                    c = commutator_with_E(x, self.rs, this.index - 1)
                    return EMultiple(this.index - 1, c if sign == 1 else -c)
        return super().bracket(ev, node)

    def _kind(self, x):
        return type(x).__name__

    def add(self, x, y):
        if isinstance(x, EMultiple) and isinstance(y, EMultiple):
            if x.j != y.j:
                raise ContextError("sums of different E_j are not representable in the torus")
            return EMultiple(x.j, x.cofactor + y.cofactor)
        if isinstance(x, EMultiple) and not y:
            return x
        if isinstance(y, EMultiple) and not x:
            return y
        if type(x) is not type(y):
            raise ContextError(f"cannot add {self._kind(x)} and {self._kind(y)}")
        return x + y

    def neg(self, x):
        return EMultiple(x.j, -x.cofactor) if isinstance(x, EMultiple) else -x

    def mul(self, x, y):
        if isinstance(x, EMultiple) and isinstance(y, TorusElement):
            return EMultiple(x.j, x.cofactor * y)
        if isinstance(x, TorusElement) and isinstance(y, EMultiple):
            return EMultiple(y.j, twist_by_E(x, self.rs, y.j) * y.cofactor)
        if isinstance(x, TorusElement) and isinstance(y, TorusElement):
            return x * y
        if isinstance(x, TensorSquare) and isinstance(y, TensorSquare):
            return x * y
        for a, b in ((x, y), (y, x)):
            if isinstance(a, TensorSquare) and isinstance(b, TorusElement) and set(b.terms) <= {(0,) * self.rs.rank}:
                return a * TensorSquare.tensor(b, TorusElement.unit(self.rs.rank))
        raise ContextError(f"cannot multiply {self._kind(x)} and {self._kind(y)}")

    def inverse(self, x):
        if isinstance(x, TorusElement) and len(x.terms) == 1:
            return x ** -1
        return super().inverse(x)

    def power(self, x, n):
        if isinstance(x, TorusElement):
            return x ** n if n >= 0 or len(x.terms) == 1 else super().inverse(x)
        return super().power(x, n)

    def call(self, fn, x):
        if not isinstance(x, TorusElement):
            raise ContextError(f"{fn} is applied to torus elements only")
        if fn == "Delta":
            return torus_coproduct(x)
        if fn == "S":
            return torus_antipode(x)
        return self.embed(torus_counit(x))

    def render(self, x):
        return str(x)

    def to_json(self, x):
        return x.to_json()


class _Sl2Base(_Algebra):
    def __init__(self, ctx):
        super().__init__(ctx)
        from qunroll.uqsl2 import pbw
        self.pbw = pbw

    def uq_generator(self, node: Gen):
        pbw = self.pbw
        if node.kind == "E":
            return pbw.E()
        if node.kind == "F":
            return pbw.F()
        if node.kind == "K":
            return pbw.K(1)
        if node.kind == "Kinv":
            return pbw.K(-1)
        if node.kind in ("Ed", "Fd"):
            return pbw.divided_power(node.kind[0], node.arg)
        if node.kind == "H":
            if self.orders is None:
                raise ContextError("H1 depends on ell; use sl2-lusztig(ell) or sl2-hybrid(ell)")
            h = h_element(self.rs, (1,), self.orders)
            return pbw.UqElement({(0, b[0], 0): c for b, c in h.terms.items()})
        raise ContextError(f"unknown generator {node.kind}")


class RationalSl2(_Sl2Base):
    """Rational form; also used for Lusztig's form before specialization."""

    def embed(self, s):
        return self.pbw.UqElement.scalar(self.check_scalar(s))

    def generator(self, node):
        return self.uq_generator(node)

    def add(self, x, y):
        if type(x) is not type(y):
            raise ContextError("cannot add an element and a tensor")
        return x + y

    def neg(self, x):
        return -x

    def _scalar_of(self, x):
        if isinstance(x, self.pbw.UqElement) and set(x.terms) <= {(0, 0, 0)}:
            return x.terms.get((0, 0, 0), RatFunc(0))
        return None

    def mul(self, x, y):
        T = self.pbw.TensorElement
        if isinstance(x, T) and isinstance(y, T):
            return x * y
        if isinstance(x, T) or isinstance(y, T):
            s = self._scalar_of(y if isinstance(x, T) else x)
            if s is None:
                raise ContextError("cannot multiply an element and a tensor")
            return (x if isinstance(x, T) else y).scale(s)
        return x * y

    def inverse(self, x):
        if isinstance(x, self.pbw.UqElement) and len(x.terms) == 1:
            ((a, b, c), s), = x.terms.items()
            if a == c == 0:
                return self.pbw.UqElement({(0, -b, 0): s ** -1})
        return super().inverse(x)

    def call(self, fn, x):
        if not isinstance(x, self.pbw.UqElement):
            raise ContextError(f"{fn} is applied to elements, not tensors")
        if fn == "Delta":
            return self.pbw.coproduct(x)
        if fn == "S":
            return self.pbw.antipode(x)
        return self.embed(self.pbw.counit(x))

    def render(self, x):
        return x.render("1")

    def to_json(self, x):
        return x.to_json()


class LusztigSl2(RationalSl2):
    """Computes in the rational form and specializes the final value at ``v = zeta_ell``."""

    def finish(self, x):
        from qunroll.uqsl2.hybrid import tensor_lusztig_coordinates
        from qunroll.uqsl2.lusztig import specialize_lusztig
        ell = self.ctx.ell
        try:
            if isinstance(x, self.pbw.UqElement):
                return specialize_lusztig(x, ell)
            coords = tensor_lusztig_coordinates(x)
        except ArithmeticError as exc:
            raise ContextError(f"result is not in the Lusztig form: {exc}") from exc
        out = {}
        for k, mu in coords.items():
            if not mu.is_integral():
                raise ContextError(f"result is not in the Lusztig form: coefficient {mu}")
            c = eval_at_root(mu.num, ell)
            if c:
                out[k] = c
        return _SpecializedTensor(ell, out)

    def render(self, x):
        return x.render("1")

    def to_json(self, x):
        return {"ell": self.ctx.ell,
                "terms": [{"label": list(k) if isinstance(k[0], int) else [list(l) for l in k],
                           "coeff": _cyclo_json(c)} for k, c in sorted(x.terms.items())]}


@dataclass
class _SpecializedTensor:
    ell: int
    terms: dict

    def render(self, index: str = "") -> str:
        from qunroll.uqsl2.lusztig import label_str
        parts = [_render_coeff_prefix(c, f"{label_str(l1, index) or '1'} (x) {label_str(l2, index) or '1'}")
                 for (l1, l2), c in sorted(self.terms.items(), reverse=True)]
        return render_sum(parts)


class _HybridTensor:
    """Tensor of lifts; displayed as ``0`` when its class in the tensor square vanishes."""

    def __init__(self, ell: int, coords: dict):
        self.ell = ell
        self.coords = {k: c for k, c in coords.items() if c}

    def __add__(self, other):
        out = dict(self.coords)
        for k, c in other.coords.items():
            out[k] = out.get(k, LaurentPoly()) + c
        return _HybridTensor(self.ell, out)

    def __neg__(self):
        return _HybridTensor(self.ell, {k: -c for k, c in self.coords.items()})

    def scale(self, s: LaurentPoly):
        return _HybridTensor(self.ell, {k: c * s for k, c in self.coords.items()})

    def is_zero(self) -> bool:
        from qunroll.uqsl2.hybrid import tensor_class_is_zero
        return tensor_class_is_zero(self.coords, self.ell)

    def render(self, index: str = "") -> str:
        from qunroll.uqsl2.lusztig import label_str
        if self.is_zero():
            return "0"
        parts = []
        for (l1, l2), p in sorted(self.coords.items(), reverse=True):
            mono = f"{label_str(l1, index) or '1'} (x) {label_str(l2, index) or '1'}"
            parts.append(f"({p})*{mono}" if len(p.terms) > 1 else _render_coeff_prefix(p, mono))
        return render_sum(parts)

    def to_json(self):
        return {"ell": self.ell, "zero": self.is_zero(),
                "terms": [{"labels": [list(l1), list(l2)], "coeff": _laurent_json(p)}
                          for (l1, l2), p in sorted(self.coords.items())]}


class HybridSl2(_Sl2Base):
    def __init__(self, ctx):
        super().__init__(ctx)
        from qunroll.uqsl2 import hybrid, lusztig
        self.hy, self.lz = hybrid, lusztig

    def q(self):
        return RatFunc(LaurentPoly.const(CycloNum.zeta(self.ctx.ell)))

    def _laurent(self, s: RatFunc) -> LaurentPoly:
        if not s.is_laurent():
            raise ContextError(f"scalar {s} is not in F[v, 1/v]")
        return s.to_laurent()

    def embed(self, s):
        return self.hy.hybrid_unit(self.ctx.ell).scale(self._laurent(s))

    def generator(self, node):
        try:
            return self.hy.hybrid_reduce(self.uq_generator(node), self.ctx.ell)
        except ArithmeticError as exc:
            raise ContextError(str(exc)) from exc

    def _scalar_of(self, x):
        if isinstance(x, self.hy.HybridClass) and set(x.lift) <= {(0, 0, 0, 0)}:
            return x.lift.get((0, 0, 0, 0), LaurentPoly())
        return None

    def add(self, x, y):
        if type(x) is not type(y):
            raise ContextError("cannot add an element and a tensor")
        return x + y

    def neg(self, x):
        return -x

    def mul(self, x, y):
        if isinstance(x, _HybridTensor) or isinstance(y, _HybridTensor):
            t, other = (x, y) if isinstance(x, _HybridTensor) else (y, x)
            s = self._scalar_of(other)
            if s is None:
                raise ContextError("products of tensors are not supported in the hybrid context")
            return t.scale(s)
        return x * y

    def inverse(self, x):
        s = self._scalar_of(x)
        if s is not None and len(s.terms) == 1:
            (e, c), = s.terms.items()
            return self.hy.hybrid_unit(self.ctx.ell).scale(LaurentPoly({-e: c.inverse() if isinstance(c, CycloNum) else Fraction(1) / c}))
        if isinstance(x, self.hy.HybridClass):
            for lab in (x.lift if len(x.lift) == 1 else ()):
                a, delta, t, c = lab
                if a == c == t == 0 and delta == 1 and x.lift[lab] == LaurentPoly.const(1):
                    return self.hy.hybrid_reduce(self.pbw.K(-1), self.ctx.ell)
        return super().inverse(x)

    def _lift_map(self, x, fn):
        ell = self.ctx.ell
        if fn == "Delta":
            acc: dict = {}
            for lab, p in x.lift.items():
                T = self.pbw.coproduct(self.lz.label_element(lab))
                for k, mu in self.hy.tensor_lusztig_coordinates(T).items():
                    acc[k] = acc.get(k, LaurentPoly()) + p * self.hy._as_cyclo(mu, ell)
            return _HybridTensor(ell, acc)
        if fn == "S":
            acc = {}
            for lab, p in x.lift.items():
                for k, mu in self.lz.integral_coordinates(self.pbw.antipode(self.lz.label_element(lab))).items():
                    acc[k] = acc.get(k, LaurentPoly()) + p * self.hy._as_cyclo(mu, ell)
            return self.hy.HybridClass(ell, acc)
        total = LaurentPoly()
        for lab, p in x.lift.items():
            total = total + p * self.hy._as_cyclo(self.pbw.counit(self.lz.label_element(lab)), ell)
        return self.hy.hybrid_unit(ell).scale(total)

    def call(self, fn, x):
        if not isinstance(x, self.hy.HybridClass):
            raise ContextError(f"{fn} is applied to classes, not tensors")
        return self._lift_map(x, fn)

    def render(self, x):
        return x.render("1")

    def to_json(self, x):
        return x.to_json()


_ALGEBRAS = {"torus": TorusAlgebra, "sl2-rational": RationalSl2,
             "sl2-lusztig": LusztigSl2, "sl2-hybrid": HybridSl2}


# ---------------------------------------------------------------------------
# driver
# ---------------------------------------------------------------------------

class _Evaluator:
    def __init__(self, alg: _Algebra):
        self.alg = alg

    def scalar(self, node) -> RatFunc | None:
        """Value of a scalar-only subtree, or ``None`` if it involves generators."""
        if isinstance(node, Num):
            return RatFunc(node.value)
        if isinstance(node, Sym):
            return RatFunc(LaurentPoly.monomial(1, 1)) if node.name == "v" else self.alg.q()
        if isinstance(node, QNum):
            return RatFunc(quantum_number(node.n, node.d))
        if isinstance(node, Cyclo):
            return RatFunc(cyclotomic(node.n))
        if isinstance(node, Neg):
            s = self.scalar(node.x)
            return None if s is None else -s
        if isinstance(node, BinOp):
            l, r = self.scalar(node.left), self.scalar(node.right)
            if l is None or r is None:
                return None
            return l + r if node.op == "+" else l - r if node.op == "-" else l * r
        if isinstance(node, Pow):
            b = self.scalar(node.base)
            if b is None:
                return None
            if node.exp < 0 and not b:
                raise ContextError("division by zero")
            return b ** node.exp
        return None

    def __call__(self, node: Node):
        alg = self.alg
        s = self.scalar(node)
        if s is not None:
            return alg.embed(s)
        if isinstance(node, Gen):
            return alg.generator(node)
        if isinstance(node, Neg):
            return alg.neg(self(node.x))
        if isinstance(node, BinOp):
            if node.op == "*":
                for a, b in ((node.left, node.right), (node.right, node.left)):
                    sa = self.scalar(a)
                    if sa is not None:
                        return alg.scale(self(b), sa)
                return alg.mul(self(node.left), self(node.right))
            x, y = self(node.left), self(node.right)
            return alg.add(x, y) if node.op == "+" else alg.sub(x, y)
        if isinstance(node, Pow):
            return alg.power(self(node.base), node.exp)
        if isinstance(node, Bracket):
            return alg.bracket(self, node)
        if isinstance(node, Call):
            return alg.call(node.fn, self(node.arg))
        raise TypeError(f"unknown node {node!r}")


def evaluate(expr: Node | str, context: Context | str) -> Result:
    if isinstance(context, str):
        context = parse_context(context)
    if isinstance(expr, str):
        expr = parse(expr, rank=context.rank)
    alg = _ALGEBRAS[context.kind](context)
    value = _Evaluator(alg)(expr)
    if isinstance(alg, LusztigSl2):
        value = alg.finish(value)
    text = alg.render(value)
    return Result(context, expr, value, text, alg.to_json(value))


__all__ = ["Context", "ContextError", "ConfigError", "InadmissibleEll", "Result",
           "evaluate", "parse_context"]
