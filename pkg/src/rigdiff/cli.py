"""Command line front end.

Subcommands: ``normalize`` an expression, ``derive`` it with a chosen family
member, ``mu``-collapse a level-2 expression, ``eval`` into a rig of
naturals, and run the ``laws`` suite or the ``distinctness`` check.  An
expression argument of ``-`` reads from stdin.  ``--format structured``
emits JSON built from the canonical order, so equal values print equal
bytes.
"""

from __future__ import annotations

import argparse
import json
import sys

from .carrier import CarrierMismatch, FreeMonoid, MonomialBasis
from .derive import d_n, d_n_level2
from .laws import SuiteConfig, check_distinctness, check_laws
from .modality import CATALOG, evaluate, mu, rig_from_term
from .normal import SelfMapDisabled, nf_to_obj, normalize, render_nf, tensor_to_obj
from .text import ParseError, parse, render_tensor


def _base_flags(sub, levels: bool = True) -> None:
    sub.add_argument("expr", help="expression, or - to read stdin")
    sub.add_argument("--carrier", type=int, default=1, metavar="K",
                     help="rank of the base carrier (default 1)")
    if levels:
        sub.add_argument("--level", type=int, choices=(1, 2), default=1,
                         help="1 for base expressions, 2 for constructed-rig ones")
    sub.add_argument("--format", choices=("text", "structured"), default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rigdiff",
        description="exact arithmetic and derivatives in freely built rigs")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("normalize", help="canonical form of an expression")
    _base_flags(p)

    p = subs.add_parser("derive", help="apply one derivative family member")
    _base_flags(p)
    p.add_argument("--n", type=int, required=True,
                   help="family index (weight of the unary operation)")

    p = subs.add_parser("mu", help="collapse a level-2 expression one level")
    _base_flags(p, levels=False)

    p = subs.add_parser("eval", help="evaluate in the naturals")
    _base_flags(p, levels=False)
    p.add_argument("--target", required=True, metavar="RIG",
                   help="catalog name (%s) or a one-variable expression"
                        % ", ".join(sorted(CATALOG)))
    p.add_argument("--phi", required=True, metavar="LIST",
                   help="comma-separated images of the generators")

    p = subs.add_parser("laws", help="run the randomized law suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=int, default=1000)
    p.add_argument("--depth", type=int, default=4)
    p.add_argument("--n-values", default="0,1,2,3,7", metavar="LIST")
    p.add_argument("--format", choices=("text", "structured"), default="text")

    p = subs.add_parser("distinctness",
                        help="evaluate each family member on the witness")
    p.add_argument("--n-values", default=",".join(str(n) for n in range(11)),
                   metavar="LIST")
    p.add_argument("--format", choices=("text", "structured"), default="text")

    return parser


def _read_expr(expr: str) -> str:
    return sys.stdin.read() if expr == "-" else expr


def _carrier_for(args):
    base = FreeMonoid(args.carrier)
    return MonomialBasis(base) if getattr(args, "level", 1) == 2 else base


def _nat_list(text: str) -> list[int]:
    values = [int(piece) for piece in text.split(",") if piece.strip() != ""]
    if any(v < 0 for v in values):
        raise ValueError("list entries must be naturals")
    return values


def _cmd_normalize(args) -> int:
    carrier = _carrier_for(args)
    nf = normalize(parse(_read_expr(args.expr), carrier), carrier)
    if args.format == "structured":
        print(json.dumps(nf_to_obj(nf), indent=2))
    else:
        print(render_nf(nf))
    return 0


def _cmd_derive(args) -> int:
    carrier = _carrier_for(args)
    nf = normalize(parse(_read_expr(args.expr), carrier), carrier)
    derived = d_n_level2(nf, args.n) if args.level == 2 else d_n(nf, args.n)
    if args.format == "structured":
        print(json.dumps(tensor_to_obj(derived), indent=2))
    else:
        print(render_tensor(derived))
    return 0


def _cmd_mu(args) -> int:
    carrier = MonomialBasis(FreeMonoid(args.carrier))
    nf = normalize(parse(_read_expr(args.expr), carrier), carrier)
    collapsed = mu(nf)
    if args.format == "structured":
        print(json.dumps(nf_to_obj(collapsed), indent=2))
    else:
        print(render_nf(collapsed))
    return 0


def _cmd_eval(args) -> int:
    carrier = FreeMonoid(args.carrier)
    nf = normalize(parse(_read_expr(args.expr), carrier), carrier)
    images = _nat_list(args.phi)
    if len(images) != carrier.rank:
        raise ValueError(f"--phi needs {carrier.rank} entries, got {len(images)}")
    rig = CATALOG.get(args.target)
    if rig is None:
        rig_carrier = FreeMonoid(1)
        rig = rig_from_term(parse(args.target, rig_carrier), rig_carrier)
    print(evaluate(nf, rig, dict(enumerate(images))))
    return 0


def _cmd_laws(args) -> int:
    cfg = SuiteConfig(seed=args.seed, cases=args.cases, max_depth=args.depth,
                      n_values=tuple(_nat_list(args.n_values)))
    report = check_laws(cfg)
    if args.format == "structured":
        print(json.dumps(report.to_obj(), indent=2))
    else:
        print(report.render_text())
    return 0 if report.ok else 1


def _cmd_distinctness(args) -> int:
    n_values = _nat_list(args.n_values)
    try:
        pairs = check_distinctness(n_values)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.format == "structured":
        print(json.dumps({"pairs": [[n, v] for n, v in pairs], "distinct": True},
                         indent=2))
    else:
        for n, value in pairs:
            print(f"n={n}: {value}")
        print(f"{len(pairs)} values, all distinct")
    return 0


_COMMANDS = {
    "normalize": _cmd_normalize,
    "derive": _cmd_derive,
    "mu": _cmd_mu,
    "eval": _cmd_eval,
    "laws": _cmd_laws,
    "distinctness": _cmd_distinctness,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ParseError, CarrierMismatch, SelfMapDisabled, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
