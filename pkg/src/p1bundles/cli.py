"""Command-line front end.

Subcommands cover the whole library: `split`, `h0`, `h1`, `deg`, `chi`,
`profile`, `op`, `twist`, `iso`, `selfdual`, `random`, `verify`.  Reports
are printed as stable `key: value` lines, or as one deterministic JSON
object (sorted keys, no timestamps) under `--json`.

Exit codes: 0 success, 1 invalid bundle, 2 parse/usage error, 3 failed
internal certificate (window instability or a broken splitting
invariant).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import cech, splitter
from .bundle import VectorBundle, random_bundle
from .errors import InternalCheckError, InvalidBundle, ParseError
from .text import (
    format_bundle,
    format_factorization,
    parse_bundle,
    parse_factorization,
)


def _load_bundle(path: str) -> VectorBundle:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}")
    return parse_bundle(text)


def _load_factorization(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}")
    return parse_factorization(text)


def _write(path: str, text: str):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _emit(args, command: str, inputs, result: dict, human_lines, extra_text=None):
    if args.json:
        report = {"command": command, "inputs": list(inputs), "result": result}
        print(json.dumps(report, sort_keys=True))
    else:
        for line in human_lines:
            print(line)
        if extra_text:
            print(extra_text, end="")


def _fmt_bool(b: bool) -> str:
    return "true" if b else "false"


def _fmt_type(t) -> str:
    return "(" + ", ".join(str(d) for d in t) + ")"


# -- subcommand handlers ------------------------------------------------------


def _cmd_split(args):
    e = _load_bundle(args.file)
    stype, fact = splitter.grothendieck_split(e)
    verified = splitter.verify_factorization(e, fact)
    fact_text = format_factorization(fact)
    if args.output:
        _write(args.output, fact_text)
    result = {
        "rank": e.rank,
        "type": list(stype),
        "deg": e.degree,
        "verified": verified,
    }
    lines = [
        f"rank: {e.rank}",
        f"type: {_fmt_type(stype)}",
        f"deg: {e.degree}",
        f"verified: {_fmt_bool(verified)}",
    ]
    _emit(args, "split", [args.file], result, lines, extra_text=fact_text)
    return 0


def _cmd_h0(args):
    e = _load_bundle(args.file)
    value = cech.h0_dim(e, window=args.window)
    _emit(args, "h0", [args.file], {"h0": value}, [f"h0: {value}"])
    return 0


def _cmd_h1(args):
    e = _load_bundle(args.file)
    value = cech.h1_dim_oracle(e, window=args.window)
    _emit(args, "h1", [args.file], {"h1": value}, [f"h1: {value}"])
    return 0


def _cmd_deg(args):
    e = _load_bundle(args.file)
    result = {"deg": e.degree, "rank": e.rank}
    _emit(args, "deg", [args.file], result, [f"deg: {e.degree}", f"rank: {e.rank}"])
    return 0


def _cmd_chi(args):
    e = _load_bundle(args.file)
    value = cech.euler_char(e, window=args.window)
    _emit(args, "chi", [args.file], {"chi": value}, [f"chi: {value}"])
    return 0


def _cmd_profile(args):
    e = _load_bundle(args.file)
    profile = cech.h0_profile(e, args.m_from, args.m_to, window=args.window)
    result = {
        "from": args.m_from,
        "to": args.m_to,
        "profile": [[m, h] for m, h in profile],
    }
    lines = [f"h0(E({m})): {h}" for m, h in profile]
    _emit(args, "profile", [args.file], result, lines)
    return 0


def _cmd_op(args):
    a = _load_bundle(args.a)
    if args.kind in ("dsum", "tensor"):
        if args.b is None:
            raise ParseError(f"op {args.kind} needs two bundle files")
        b = _load_bundle(args.b)
        out = a.dsum(b) if args.kind == "dsum" else a.tensor(b)
        inputs = [args.a, args.b]
    else:
        if args.b is not None:
            raise ParseError(f"op {args.kind} takes one bundle file")
        out = a.dual() if args.kind == "dual" else a.det_bundle()
        inputs = [args.a]
    return _emit_bundle(args, "op", inputs, out)


def _cmd_twist(args):
    e = _load_bundle(args.file)
    return _emit_bundle(args, "twist", [args.file], e.twist(args.m))


def _emit_bundle(args, command, inputs, out: VectorBundle):
    text = format_bundle(out)
    result = {"rank": out.rank, "deg": out.degree}
    lines = [f"rank: {out.rank}", f"deg: {out.degree}"]
    if args.output:
        _write(args.output, text)
        result["path"] = args.output
        lines.append(f"wrote: {args.output}")
        _emit(args, command, inputs, result, lines)
    else:
        result["bundle"] = text
        _emit(args, command, inputs, result, lines, extra_text=text)
    return 0


def _cmd_iso(args):
    a = _load_bundle(args.a)
    b = _load_bundle(args.b)
    ta = splitter.splitting_type(a)
    tb = splitter.splitting_type(b)
    same = a.rank == b.rank and ta == tb
    result = {"iso": same, "type_a": list(ta), "type_b": list(tb)}
    lines = [
        f"iso: {_fmt_bool(same)}",
        f"type_a: {_fmt_type(ta)}",
        f"type_b: {_fmt_type(tb)}",
    ]
    _emit(args, "iso", [args.a, args.b], result, lines)
    return 0


def _cmd_selfdual(args):
    e = _load_bundle(args.file)
    stype = splitter.splitting_type(e)
    sd = list(stype) == [-d for d in reversed(stype)]
    result = {"self_dual": sd, "type": list(stype)}
    lines = [f"self_dual: {_fmt_bool(sd)}", f"type: {_fmt_type(stype)}"]
    _emit(args, "selfdual", [args.file], result, lines)
    return 0


def _cmd_random(args):
    try:
        degrees = [int(part) for part in args.type.split(",") if part.strip() != ""]
    except ValueError:
        raise ParseError(f"bad --type list: {args.type!r}")
    if not degrees:
        raise ParseError("--type needs at least one degree")
    e = random_bundle(degrees, args.gauge_degree, args.seed, moves=args.moves)
    _write(args.output, format_bundle(e))
    stype = list(splitter.SplittingType(degrees))
    result = {"path": args.output, "rank": e.rank, "type": stype, "seed": args.seed}
    lines = [
        f"wrote: {args.output}",
        f"rank: {e.rank}",
        f"type: {_fmt_type(stype)}",
        f"seed: {args.seed}",
    ]
    _emit(args, "random", [], result, lines)
    return 0


def _cmd_verify(args):
    e = _load_bundle(args.file)
    fact = _load_factorization(args.factfile)
    ok = splitter.verify_factorization(e, fact)
    _emit(
        args,
        "verify",
        [args.file, args.factfile],
        {"verified": ok},
        [f"verified: {_fmt_bool(ok)}"],
    )
    return 0


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable report")
    windowed = argparse.ArgumentParser(add_help=False)
    windowed.add_argument(
        "--window",
        type=int,
        default=None,
        help="override the truncation window (stability is still asserted)",
    )

    parser = argparse.ArgumentParser(
        prog="p1bundles",
        description="Splitting types and cohomology of vector bundles on the "
        "Riemann sphere, with exact certificates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("split", parents=[common], help="splitting type + certificate")
    p.add_argument("file")
    p.add_argument("-o", "--output", default=None, help="write the certificate here")
    p.set_defaults(func=_cmd_split)

    p = sub.add_parser("h0", parents=[common, windowed], help="dim H0")
    p.add_argument("file")
    p.set_defaults(func=_cmd_h0)

    p = sub.add_parser("h1", parents=[common, windowed], help="dim H1 (oracle)")
    p.add_argument("file")
    p.set_defaults(func=_cmd_h1)

    p = sub.add_parser("deg", parents=[common], help="bundle degree")
    p.add_argument("file")
    p.set_defaults(func=_cmd_deg)

    p = sub.add_parser("chi", parents=[common, windowed], help="Euler characteristic h0 - h1")
    p.add_argument("file")
    p.set_defaults(func=_cmd_chi)

    p = sub.add_parser("profile", parents=[common, windowed], help="h0 of twists over a range")
    p.add_argument("file")
    p.add_argument("--from", dest="m_from", type=int, required=True)
    p.add_argument("--to", dest="m_to", type=int, required=True)
    p.set_defaults(func=_cmd_profile)

    p = sub.add_parser("op", parents=[common], help="bundle operations")
    p.add_argument("kind", choices=("dual", "det", "dsum", "tensor"))
    p.add_argument("a")
    p.add_argument("b", nargs="?", default=None)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_op)

    p = sub.add_parser("twist", parents=[common], help="tensor by O(m)")
    p.add_argument("file")
    p.add_argument("m", type=int)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_twist)

    p = sub.add_parser("iso", parents=[common], help="isomorphism test")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=_cmd_iso)

    p = sub.add_parser("selfdual", parents=[common], help="isomorphic to its dual?")
    p.add_argument("file")
    p.set_defaults(func=_cmd_selfdual)

    p = sub.add_parser("random", parents=[common], help="seeded gauge scramble")
    p.add_argument("--type", required=True, help="comma-separated degrees, e.g. 2,-1")
    p.add_argument("--gauge-degree", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--moves", type=int, default=None)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_random)

    p = sub.add_parser("verify", parents=[common], help="check a certificate file")
    p.add_argument("file")
    p.add_argument("factfile")
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except InvalidBundle as exc:
        print(f"invalid bundle: {exc}", file=sys.stderr)
        return 1
    except InternalCheckError as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
