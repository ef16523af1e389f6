"""``segcalc``: verify, render and export from the command line."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .render import FIGURES, figure_panels, render_svg, render_text, render_tsv
from .segments import DomainError
from .serialize import dumps, export_object
from .verify import SUITES, run

OBJECTS = ("mle", "mge", "mgr", "utable", "cohtable", "ss")


def _pos(x: str) -> int:
    n = int(x)
    if n < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return n


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="segcalc", description=__doc__)
    p.add_argument("--version", action="version", version=f"segcalc {__version__}")
    sub = p.add_subparsers(dest="cmd", required=True)

    v = sub.add_parser("verify", help="run the identity checks")
    v.add_argument("--suite", choices=("all",) + SUITES, default="all")
    v.add_argument("--max-s", type=_pos, default=6)
    v.add_argument("--only", help="run a single named check")
    v.add_argument("--json", metavar="PATH", help="also write the report as JSON")

    r = sub.add_parser("render", help="render a figure grid")
    r.add_argument("--figure", choices=FIGURES, required=True)
    r.add_argument("--format", choices=("text", "svg"), default="text")
    r.add_argument("--s", type=_pos)
    r.add_argument("--g", type=_pos)
    r.add_argument("--d", type=_pos)
    r.add_argument("--out", help="output file; svg also writes a .tsv of the cells next to it")

    e = sub.add_parser("export", help="write a JSON export")
    e.add_argument("--object", choices=OBJECTS, required=True)
    e.add_argument("--out", required=True)
    e.add_argument("--s", type=_pos, default=4)
    e.add_argument("--g", type=_pos, default=1)
    e.add_argument("--d", type=_pos)
    e.add_argument("--t", type=_pos, default=1)
    e.add_argument("--r", type=_pos, default=1)
    e.add_argument("--case", choices=("SP", "SPEH"), default="SP")
    e.add_argument("--functor", choices=("J!", "J!*", "RJ*"), default="J!*")
    return p


def cmd_verify(args) -> int:
    try:
        report = run(args.suite, args.max_s, args.only)
    except ValueError as exc:
        print(f"segcalc: {exc}", file=sys.stderr)
        return 2
    print("\n".join(report.lines()))
    if args.json:
        Path(args.json).write_text(json.dumps(report.to_json(), indent=1, sort_keys=True) + "\n")
    return 0 if report.ok else 1


def cmd_render(args) -> int:
    params = {"s": args.s, "g": args.g, "d": args.d}
    try:
        panels = figure_panels(args.figure, **params)
    except DomainError as exc:
        print(f"segcalc: {exc}", file=sys.stderr)
        return 2
    if args.format == "text":
        text = render_text(panels)
        if args.out:
            Path(args.out).write_text(text)
        else:
            sys.stdout.write(text)
        return 0
    out = Path(args.out or f"{args.figure}.svg")
    out.write_text(render_svg(panels))
    tsv = out.with_suffix(".tsv")
    tsv.write_text(render_tsv(panels))
    sys.stdout.write(render_text(panels))
    print(f"wrote {out} and {tsv}")
    return 0


def cmd_export(args) -> int:
    try:
        doc = export_object(args.object, s=args.s, g=args.g, d=args.d, t=args.t, r=args.r,
                            case=args.case, functor=args.functor)
    except (DomainError, ValueError) as exc:
        print(f"segcalc: {exc}", file=sys.stderr)
        return 2
    try:
        Path(args.out).write_text(dumps(doc))
    except OSError as exc:
        print(f"segcalc: cannot write {args.out}: {exc}", file=sys.stderr)
        return 3
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return {"verify": cmd_verify, "render": cmd_render, "export": cmd_export}[args.cmd](args)


if __name__ == "__main__":
    sys.exit(main())
