"""``qunroll`` command line: eval, certify, decompose, limits.

Exit codes: 0 success, 1 evaluation error or failed check, 2 invalid configuration.
"""

from __future__ import annotations

import argparse
import json
import sys

from qunroll.arith import NotDivisible, PoleAtRoot
from qunroll.certify import (
    CertConfig,
    CertReport,
    canonical_suite,
    default_configs,
    run_config,
)
from qunroll.cli.evaluate import ConfigError, ContextError, evaluate, parse_context
from qunroll.cli.parser import ParseError
from qunroll.rootdata import (
    InadmissibleEll,
    UnsupportedType,
    admissible,
    build_root_system,
    root_orders,
)
from qunroll.torus import (
    NotIntegral,
    integral_decompose,
    h_element,
    leading_term_decomposition,
    weight_eval,
)
from qunroll.uqsl2.pbw import DegreeCapExceeded

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


class _ConfigProblem(Exception):
    pass


def _vector(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace("(", "").replace(")", "").split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _add_config_flags(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("--type", dest="letter", required=required, help="Cartan type letter (A, B, C, D, G)")
    p.add_argument("--rank", type=int, required=required)
    p.add_argument("--ell", type=int, required=required, help="order of q")
    p.add_argument("--json", action="store_true", help="emit JSON")


def _root_system(args):
    try:
        rs = build_root_system(args.letter.upper(), args.rank)
    except (UnsupportedType, ValueError) as exc:
        raise _ConfigProblem(str(exc)) from exc
    adm = admissible(rs, args.ell)
    if not adm:
        raise _ConfigProblem(f"InadmissibleEll: {rs.name}, ell={args.ell}: {adm.reason}")
    return rs


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qunroll", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate an expression")
    p.add_argument("expr")
    p.add_argument("--context", default="sl2-rational",
                   help="torus(TYPE,ELL) | sl2-rational | sl2-lusztig(ELL) | sl2-hybrid(ELL)")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("certify", help="run certification suites")
    _add_config_flags(p, required=False)
    p.add_argument("--suite", action="append", default=None,
                   help="thm-main, limits, hybrid-sl2 (alias hybrid) or hopf-axioms; repeatable")
    p.add_argument("--all-defaults", action="store_true", help="run the default configuration matrix")
    p.add_argument("--no-timing", action="store_true", help="omit timings for byte-stable output")

    p = sub.add_parser("decompose", help="integral decomposition of H_alpha")
    _add_config_flags(p)
    p.add_argument("--root", type=_vector, default=None, help="positive root in simple-root coordinates")

    p = sub.add_parser("limits", help="weight limits of H_alpha")
    _add_config_flags(p)
    p.add_argument("--weight", type=_vector, default=None, help="weight in simple-root coordinates")
    p.add_argument("--radius", type=int, default=3)
    return ap


def cmd_eval(args) -> int:
    try:
        ctx = parse_context(args.context)
    except (ConfigError, InadmissibleEll) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        res = evaluate(args.expr, ctx)
    except (ParseError, ContextError, DegreeCapExceeded, NotDivisible, PoleAtRoot,
            NotIntegral, ArithmeticError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if args.json:
        print(json.dumps(res.to_json(), indent=2, sort_keys=True))
    else:
        print(res.text)
    return EXIT_OK


def cmd_certify(args) -> int:
    if args.all_defaults:
        configs = default_configs()
        if args.suite:
            wanted = {canonical_suite(s) for s in args.suite}
            configs = [CertConfig(c.letter, c.rank, c.ell, tuple(s for s in c.suites if s in wanted))
                       for c in configs]
            configs = [c for c in configs if c.suites]
    else:
        if args.letter is None or args.rank is None or args.ell is None:
            raise _ConfigProblem("certify needs --type, --rank and --ell, or --all-defaults")
        try:
            suites = tuple(canonical_suite(s) for s in (args.suite or ["thm-main", "limits"]))
        except ValueError as exc:
            raise _ConfigProblem(str(exc)) from exc
        configs = [CertConfig(args.letter.upper(), args.rank, args.ell, suites)]
    for cfg in configs:
        try:
            cfg.validate()
        except InadmissibleEll as exc:
            raise _ConfigProblem(f"InadmissibleEll: {exc}") from exc
        except (UnsupportedType, ValueError) as exc:
            raise _ConfigProblem(str(exc)) from exc
    report = CertReport()
    for cfg in configs:
        report.extend(run_config(cfg))
    timing = not args.no_timing
    print(report.json(timing) if args.json else report.text(timing))
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_decompose(args) -> int:
    rs = _root_system(args)
    orders = root_orders(rs, args.ell)
    roots = rs.positive_roots
    if args.root is not None:
        if args.root not in roots:
            raise _ConfigProblem(f"{args.root} is not a positive root of {rs.name}")
        roots = [args.root]
    out = []
    for a in roots:
        h = h_element(rs, a, orders)
        try:
            dec = integral_decompose(h, rs, a)
        except NotIntegral as exc:
            print(f"error: H_{a} is not integral: {exc}", file=sys.stderr)
            return EXIT_FAIL
        mu, rest = leading_term_decomposition(rs, a, orders)
        out.append({"root": list(a), "ell_alpha": orders[a], "H": str(h),
                    "decomposition": str(dec),
                    "coordinates": {f"{d},{t}": [[e, str(c)] for e, c in p.items()]
                                    for (d, t), p in sorted(dec.coordinates().items())},
                    "expansion": f"({mu})*K_a^{orders[a]}*[K_a;0,{orders[a]}] + ({rest})",
                    "recomposes": dec.recompose() == h})
    if args.json:
        print(json.dumps({"type": rs.name, "ell": args.ell, "roots": out}, indent=2, sort_keys=True))
    else:
        for r in out:
            print(f"alpha = {tuple(r['root'])}  (ell_alpha = {r['ell_alpha']})")
            print(f"  H = {r['H']}")
            print(f"  integral form: {r['decomposition']}")
            print(f"  leading term:  {r['expansion']}   (K_a = K^alpha)")
    return EXIT_OK if all(r["recomposes"] for r in out) else EXIT_FAIL


def cmd_limits(args) -> int:
    from qunroll.certify import _ball
    rs = _root_system(args)
    weights = [args.weight] if args.weight is not None else _ball(rs.rank, args.radius)
    for w in weights:
        if len(w) != rs.rank:
            raise _ConfigProblem(f"weight {w} does not have {rs.rank} coordinates")
    rows, ok = [], True
    for a in rs.positive_roots:
        for lam in weights:
            expected = rs.coroot_pairing(a, lam)
            if expected.denominator != 1:
                continue
            got = weight_eval(rs, a, lam, args.ell)
            ok &= got == expected
            rows.append({"root": list(a), "weight": list(lam), "limit": got, "pairing": int(expected)})
    if args.json:
        print(json.dumps({"type": rs.name, "ell": args.ell, "passed": ok, "rows": rows}, indent=2, sort_keys=True))
    elif args.weight is not None:
        for r in rows:
            print(f"alpha = {tuple(r['root'])}, lambda = {tuple(r['weight'])}: limit {r['limit']}, pairing {r['pairing']}")
    else:
        print(f"{len(rows)} limits checked on [-{args.radius},{args.radius}]^{rs.rank}: "
              f"{'all agree' if ok else 'MISMATCH'}")
    return EXIT_OK if ok else EXIT_FAIL


_COMMANDS = {"eval": cmd_eval, "certify": cmd_certify, "decompose": cmd_decompose, "limits": cmd_limits}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except _ConfigProblem as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
