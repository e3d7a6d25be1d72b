"""Command line entry point: `tilelab <subcommand> ...`.

Exit status: 0 success, 1 the check said no, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import data_path
from .engine import FREE, TORUS, TileTable, format_tiling, parse_tilings, validate
from .model import TilesetError, load_tileset
from .render import RenderStyle, render_svg
from .search import AtLeast, SearchConfig, enumerate_tilings, max_completable_square
from .substitution import (CoarseOriented, CoarseTable, SubstitutionError, derive_coarse_tileset, iterate,
                           iterate_1d, line_sequence, load_bits, load_rules, oeis_match, parse_coarse,
                           serialize_coarse, smallest_period, to_base)
from .zones import READINGS, corner_redundancy_check, discover_supertiles

log = logging.getLogger("tilelab")

OK, FAILED, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _write(text: str, out) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _tileset(args):
    return load_tileset(data_path(args.tileset))


def _coarse(args):
    return parse_coarse(data_path(args.coarse).read_text(encoding="utf-8"), _tileset(args))


def _positive(name):
    def conv(s):
        try:
            v = int(s)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{name} must be an integer") from None
        if v < 1:
            raise argparse.ArgumentTypeError(f"{name} must be at least 1")
        return v
    return conv


def _nonneg(s):
    v = int(s)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


# ---------------------------------------------------------------- subcommands

def cmd_enumerate(args) -> int:
    ts = _tileset(args)
    cfg = SearchConfig(args.width, args.height, TORUS if args.torus else FREE, args.max_results,
                       workers=args.workers)
    res = enumerate_tilings(cfg, ts)
    log.info("%d tilings, %d nodes, exhausted=%s", res.count, res.nodes_explored, res.exhausted)
    if args.count_only:
        _write(f"{res.count}{'' if res.exhausted else '+'}\n", args.out)
    else:
        _write("".join(format_tiling(t, f"t{i}") for i, t in enumerate(res.tilings)), args.out)
    return OK


def sweep_report(cts, limit: int, mrv: bool = True) -> tuple[list[tuple[str, object]], str]:
    table = CoarseTable(cts)
    rows = []
    names = [t.name for t in cts.tiles]
    for drop in names:
        keep = frozenset(n for n in names if n != drop)
        rows.append((drop, max_completable_square(table, keep, limit, mrv)))
    lines = [f"# leave-one-out sweep over {len(names)} coarse tiles, limit {limit}",
             "dropped\tmax_completable_square"]
    lines += [f"{d}\t{b}" for d, b in rows]
    return rows, "\n".join(lines) + "\n"


def cmd_sweep(args) -> int:
    cts = _coarse(args)
    rows, text = sweep_report(cts, args.limit)
    _write(text, args.report)
    finite = [d for d, b in rows if not isinstance(b, AtLeast)]
    log.info("%d of %d subsets have a finite bound", len(finite), len(rows))
    return OK


def cmd_supertiles(args) -> int:
    ts = _tileset(args)
    table = TileTable(ts)
    sts = discover_supertiles(ts, args.max, args.max, args.depth, table)
    cts = derive_coarse_tileset(sts, args.name)
    _write(serialize_coarse(cts), args.out)
    sys.stderr.write(f"{len(sts)} supertiles (max {args.max}, depth {args.depth})\n")
    if args.check_stable:
        bigger = discover_supertiles(ts, args.max + 1, args.max + 1, args.depth, table)
        stable = [s.form for s in bigger] == [s.form for s in sts]
        sys.stderr.write(f"stable at max {args.max + 1}: {stable}\n")
        if not stable:
            return FAILED
    if args.expect is not None and len(sts) != args.expect:
        sys.stderr.write(f"expected {args.expect} supertiles\n")
        return FAILED
    return OK


def cmd_corner_check(args) -> int:
    ts = _tileset(args)
    readings = READINGS if args.reading == "all" else (args.reading,)
    failed = False
    out = []
    for reading in readings:
        rep = corner_redundancy_check(ts, reading, args.target)
        out.append(f"{reading}: {rep.count} counterexamples among {rep.examined} arrangements")
        for ex in rep.counterexamples[:10]:
            out.append("  " + " ".join(t.token for t in ex))
        failed = failed or rep.count > 0
    _write("\n".join(out) + "\n", args.out)
    return FAILED if failed else OK


def cmd_expand(args) -> int:
    cts = _coarse(args)
    table = CoarseTable(cts)
    rules = load_rules(data_path(args.rules).read_text(encoding="utf-8"), cts)
    try:
        cts.by_name(args.seed)
    except KeyError:
        raise UsageError(f"unknown seed tile {args.seed!r}") from None
    p = iterate(CoarseOriented(args.seed, 0), args.iterations, rules, cts, table)
    if args.base:
        _write(format_tiling(to_base(p, cts, table), f"{args.seed}-k{args.iterations}"), args.out)
    else:
        _write(p.format(f"{args.seed}-k{args.iterations}", cts.name), args.out)
    return OK


def cmd_sequence(args) -> int:
    cts = _coarse(args)
    table = CoarseTable(cts)
    rules = load_rules(data_path(args.rules).read_text(encoding="utf-8"), cts)
    seed = cts.tiles[0].name
    p = iterate(CoarseOriented(seed, 0), args.iterations, rules, cts, table)
    word = line_sequence(p, "x", cts)
    expected = iterate_1d(line_sequence(iterate(CoarseOriented(seed, 0), 0, rules, cts, table), "x", cts),
                          args.iterations)
    shown = 120
    lines = [f"length {len(word)}", f"word {word[:shown]}{'...' if len(word) > shown else ''}",
             f"bits {word.bits()[:shown]}{'...' if len(word.bits()) > shown else ''}",
             f"morphism agrees: {word == expected}"]
    status = OK if word == expected else FAILED
    if args.check_period is not None:
        if args.check_period >= len(word):
            raise UsageError("--check-period must be smaller than the word length")
        p_ = smallest_period(word, args.check_period)
        lines.append(f"smallest period <= {args.check_period}: {p_ if p_ is not None else 'NONE'}")
        if p_ is not None:
            status = FAILED
    if args.oeis is not None:
        ref = load_bits(data_path(args.oeis).read_text(encoding="utf-8"))
        shift = oeis_match(word, ref, 3, min(len(ref), len(word.bits()) - 3))
        lines.append(f"reference match shift: {shift if shift is not None else 'NO_MATCH'}")
        if shift is None:
            status = FAILED
    _write("\n".join(lines) + "\n", args.out)
    return status


def cmd_render(args) -> int:
    ts = _tileset(args)
    if args.input:
        found = parse_tilings(Path(args.input).read_text(encoding="utf-8"), ts)
        if not found:
            raise UsageError("no tiling in the input file")
        t = found[args.index][1]
    else:
        cts = _coarse(args)
        rules = load_rules(data_path(args.rules).read_text(encoding="utf-8"), cts)
        seed = args.seed or cts.tiles[0].name
        table = CoarseTable(cts)
        t = to_base(iterate(CoarseOriented(seed, 0), args.iterations, rules, cts, table), cts, table)
    if args.crop:
        n = args.crop
        if n > min(t.width, t.height):
            raise UsageError(f"cannot crop {n}x{n} from {t.width}x{t.height}")
        t = t.crop(0, 0, n, n)
    if not t.complete:
        raise UsageError("render needs a complete tiling")
    style = RenderStyle(cell=args.cell, show_corners=args.corners, show_lines=args.lines, show_zones=args.zones)
    _write(render_svg(t, style), args.out)
    return OK


def cmd_validate(args) -> int:
    ts = _tileset(args)
    found = parse_tilings(Path(args.input).read_text(encoding="utf-8"), ts)
    bad = 0
    out = []
    for name, t in found:
        vs = validate(t, TORUS if args.torus else FREE)
        out.append(f"{name}: {'valid' if not vs else f'{len(vs)} violations'}")
        for v in vs[:20]:
            out.append(f"  {v.kind} at {v.location} observed {v.observed}")
        bad += bool(vs)
    _write("\n".join(out) + "\n", args.out)
    return FAILED if bad else OK


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tilelab", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, coarse=False, rules=False):
        p.add_argument("--tileset", default="as.tiles")
        if coarse:
            p.add_argument("--coarse", default="coarse.tiles")
        if rules:
            p.add_argument("--rules", default="as.rules")
        p.add_argument("--out", default=None)

    p = sub.add_parser("enumerate", help="all valid tilings of a rectangle")
    common(p)
    p.add_argument("--width", type=_positive("width"), required=True)
    p.add_argument("--height", type=_positive("height"), required=True)
    p.add_argument("--torus", action="store_true")
    p.add_argument("--max-results", type=_positive("max-results"))
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--workers", type=_positive("workers"), default=1)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("sweep-leave-one-out", help="bound square tilings with one coarse tile removed")
    common(p, coarse=True)
    p.add_argument("--limit", type=_positive("limit"), default=6)
    p.add_argument("--report", default=None)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("supertiles", help="discover surroundable zones and write them as coarse tiles")
    common(p)
    p.add_argument("--max", type=_positive("max"), default=3)
    p.add_argument("--depth", type=_positive("depth"), default=1)
    p.add_argument("--name", default="coarse")
    p.add_argument("--check-stable", action="store_true")
    p.add_argument("--expect", type=_nonneg)
    p.set_defaults(func=cmd_supertiles)

    p = sub.add_parser("corner-check", help="2x2 corner redundancy brute force")
    common(p)
    p.add_argument("--reading", choices=READINGS + ("all",), default="crossing")
    p.add_argument("--target", type=_nonneg, default=6)
    p.set_defaults(func=cmd_corner_check)

    p = sub.add_parser("expand", help="iterate the fixed-point rules from one coarse tile")
    common(p, coarse=True, rules=True)
    p.add_argument("--seed", required=True)
    p.add_argument("--iterations", type=_nonneg, default=1)
    p.add_argument("--base", action="store_true", help="write base tiles instead of coarse tiles")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("sequence", help="gap word of an expansion, with period and reference checks")
    common(p, coarse=True, rules=True)
    p.add_argument("--iterations", type=_nonneg, default=3)
    p.add_argument("--check-period", type=_positive("check-period"))
    p.add_argument("--oeis", default=None, help="reference bit file")
    p.set_defaults(func=cmd_sequence)

    p = sub.add_parser("render", help="SVG of a tiling file or of an expansion")
    common(p, coarse=True, rules=True)
    p.add_argument("--in", dest="input", default=None)
    p.add_argument("--index", type=_nonneg, default=0)
    p.add_argument("--seed", default=None)
    p.add_argument("--iterations", type=_nonneg, default=2)
    p.add_argument("--crop", type=_positive("crop"))
    p.add_argument("--cell", type=float, default=40.0)
    p.add_argument("--corners", action="store_true")
    p.add_argument("--lines", type=int, choices=(6, 8))
    p.add_argument("--zones", action="store_true")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("validate", help="check every tiling in a file")
    common(p)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--torus", action="store_true")
    p.set_defaults(func=cmd_validate)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code not in (0, None) else OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except (UsageError, TilesetError, FileNotFoundError, KeyError, ValueError) as exc:
        if isinstance(exc, SubstitutionError):
            sys.stderr.write(f"tilelab: verification failed: {exc}\n")
            return FAILED
        sys.stderr.write(f"tilelab: {exc}\n")
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
