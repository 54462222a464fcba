"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 domain error, 3 verification failure.
Negative arguments go after ``--``, e.g. ``fibwang tile -- -1,6``.
"""

from __future__ import annotations

import argparse
import json
import sys

from .automata import (
    dot_export,
    fibonacci_dfao,
    json_export,
    tile_at,
    tile_trace,
    wang_dfao,
)
from .desubstitution import PipelineError, self_similarity_pipeline
from .morphisms import FIBONACCI, PHI, PHI_SEED, MorphismError, quadrant_fixed_point, two_sided_fixed_point
from .numeration import NumerationError, ZWord2, is_canonical, rep_f, rep_f2, val_f, val_f2
from .wang import Patch, first_violation, render, tile_set_z

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_VERIFY = 0, 1, 2, 3

# options that may trail the positional arguments after "--"
_VALUE_OPTIONS = {"--format"}
_FLAG_OPTIONS = {"--trace", "--strict"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _int(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None


def _int_or_pair(text: str):
    parts = text.split(",")
    if len(parts) == 1:
        return _int(parts[0])
    if len(parts) == 2:
        return (_int(parts[0]), _int(parts[1]))
    raise argparse.ArgumentTypeError(f"expected 'n' or 'n1,n2', got {text!r}")


def _pair(text: str):
    value = _int_or_pair(text)
    if not isinstance(value, tuple):
        raise argparse.ArgumentTypeError(f"expected 'n1,n2', got {text!r}")
    return value


def _zword(text: str):
    rows = text.split("/")
    if len(rows) > 2:
        raise argparse.ArgumentTypeError(f"expected 'word' or 'row1/row2', got {text!r}")
    for row in rows:
        if not row or set(row) - {"0", "1"} or len(row) % 2 == 0:
            raise argparse.ArgumentTypeError(f"rows must be odd-length binary words, got {row!r}")
    if len(rows) == 2:
        if len(rows[0]) != len(rows[1]):
            raise argparse.ArgumentTypeError("rows must have equal length")
        return ZWord2(*rows)
    return rows[0]


def _normalize(argv: list[str]) -> list[str]:
    """Move options that follow ``--`` back in front of it."""
    if "--" not in argv:
        return argv
    k = argv.index("--")
    head, rest = argv[:k], []
    i = k + 1
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_OPTIONS and i + 1 < len(argv):
            head += [tok, argv[i + 1]]
            i += 2
            continue
        if tok in _FLAG_OPTIONS or any(tok.startswith(o + "=") for o in _VALUE_OPTIONS):
            head.append(tok)
        else:
            rest.append(tok)
        i += 1
    return head + ["--"] + rest


def _cmd_rep(args, out):
    value = args.n
    if isinstance(value, tuple):
        print(rep_f2(value), file=out)
    else:
        print(rep_f(value), file=out)
    return EXIT_OK


def _cmd_val(args, out):
    word = args.word
    if isinstance(word, ZWord2):
        n1, n2 = val_f2(word)
        print(f"{n1},{n2}", file=out)
    else:
        if args.strict and not is_canonical(word):
            raise NumerationError(f"{word} is not canonical")
        print(val_f(word), file=out)
    return EXIT_OK


def _cmd_tile(args, out):
    if args.trace:
        print("→".join(str(q) for q in tile_trace(args.n)), file=out)
    print(tile_at(args.n), file=out)
    return EXIT_OK


def _cmd_window(args, out):
    x0, y0, x1, y1 = args.x0, args.y0, args.x1, args.y1
    if x0 >= x1 or y0 >= y1:
        raise UsageError(f"window: empty window [{x0},{x1}) x [{y0},{y1})")
    window = (x0, y0, x1, y1)
    patch = Patch(window, quadrant_fixed_point(PHI, PHI_SEED, window))
    tiles = tile_set_z()
    if args.format == "json":
        text = patch.to_json()
    else:
        text = render(tiles, patch, args.format)
    out.write(text if text.endswith("\n") else text + "\n")
    problem = first_violation(tiles, patch)
    if problem is not None:
        print(f"invalid: {problem}", file=sys.stderr)
        return EXIT_VERIFY
    print("valid", file=sys.stderr)
    return EXIT_OK


def _cmd_pipeline(args, out):
    try:
        result = self_similarity_pipeline(tile_set_z())
    except PipelineError as e:
        print(f"pipeline failed at stage {e.stage}: {e}", file=sys.stderr)
        return EXIT_VERIFY
    out.write(result.transcript)
    return EXIT_OK if result.matches_phi else EXIT_VERIFY


def _cmd_automaton(args, out):
    dfao = fibonacci_dfao() if args.which == "fib1d" else wang_dfao()
    if args.format == "json":
        print(json_export(dfao), file=out)
    else:
        out.write(dot_export(dfao, args.which))
    return EXIT_OK


def _cmd_fibword(args, out):
    if args.lo >= args.hi:
        raise UsageError(f"fibword: empty range [{args.lo},{args.hi})")
    word = two_sided_fixed_point(FIBONACCI, "b.a", (args.lo, args.hi))
    if args.format == "json":
        print(json.dumps({"range": [args.lo, args.hi], "word": word}), file=out)
    else:
        print(word, file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fibwang", description="Fibonacci numeration, DFAOs and the 16-tile Wang set Z.")
    sub = parser.add_subparsers(dest="command", metavar="command", required=True)

    p = sub.add_parser("rep", help="representation of n or of a pair n1,n2")
    p.add_argument("n", type=_int_or_pair)
    p.set_defaults(func=_cmd_rep)

    p = sub.add_parser("val", help="value of a word or of row1/row2")
    p.add_argument("word", type=_zword)
    p.add_argument("--strict", action="store_true", help="reject non-canonical single words")
    p.set_defaults(func=_cmd_val)

    p = sub.add_parser("tile", help="tile index at position n1,n2")
    p.add_argument("n", type=_pair)
    p.add_argument("--trace", action="store_true", help="print the automaton path first")
    p.set_defaults(func=_cmd_tile)

    p = sub.add_parser("window", help="render the fixed-point tiling on [x0,x1) x [y0,y1)")
    for name in ("x0", "y0", "x1", "y1"):
        p.add_argument(name, type=_int)
    p.add_argument("--format", choices=("text", "json", "svg"), default="text")
    p.set_defaults(func=_cmd_window)

    p = sub.add_parser("pipeline", help="rederive the self-similarity of Z")
    p.set_defaults(func=_cmd_pipeline)

    p = sub.add_parser("automaton", help="export an automaton")
    p.add_argument("which", choices=("fib1d", "wang2d"))
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    p.set_defaults(func=_cmd_automaton)

    p = sub.add_parser("fibword", help="two-sided Fibonacci word on [lo, hi)")
    p.add_argument("lo", type=_int)
    p.add_argument("hi", type=_int)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=_cmd_fibword)
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_normalize(argv))
        return args.func(args, out)
    except UsageError as e:
        print(str(e).splitlines()[0], file=sys.stderr)
        return EXIT_USAGE
    except (NumerationError, MorphismError, ValueError) as e:
        print(f"fibwang: {e}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
