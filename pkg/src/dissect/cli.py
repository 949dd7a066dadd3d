"""Command-line entry point: ``dissect <verb> ...``."""
from __future__ import annotations

import argparse
import json
import logging
import re
import sys
from pathlib import Path

from .exactnum import AngleMode, parse_qn
from .geometry import TRAPEZOID, GeometryError, Prototile
from .tiling import Region, SchemaError, Tiling, load_path, save, validate

EXIT_OK, EXIT_USAGE, EXIT_VIOLATED, EXIT_NOT_EXHAUSTED = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=False)


def _parse_alpha(text: str) -> AngleMode:
    m = re.fullmatch(r"\s*(\d+)\s*/\s*(\d+)\s*", text)
    if not m:
        raise UsageError(f"--alpha expects p/q, got {text!r}")
    try:
        return AngleMode.bound(int(m[1]), int(m[2]))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _qn_arg(text: str, d: int, name: str):
    try:
        v = parse_qn(text, d)
    except ValueError as exc:
        raise UsageError(f"{name}: {exc}") from None
    if v.d != d:
        raise UsageError(f"{name}: {text!r} is not in Q(sqrt {d})")
    return v


def _parse_region(text: str, d: int) -> Region:
    parts = re.split(r"[x×]", text)
    if len(parts) != 2:
        raise UsageError(f"--region expects WxH, got {text!r}")
    w, h = (_qn_arg(p.strip(), d, "--region") for p in parts)
    try:
        return Region(w, h)
    except GeometryError as exc:
        raise UsageError(str(exc)) from None


def _prototile(args) -> Prototile:
    d = args.field
    if args.prototile == TRAPEZOID:
        if args.x is None:
            raise UsageError("--x is required for a trapezoid prototile")
        return Prototile.right_trapezoid(_qn_arg(args.x, d, "--x"), _parse_alpha(args.alpha))
    if args.w is None or args.h is None:
        raise UsageError("--w and --h are required for a rectangle prototile")
    return Prototile.rectangle(_qn_arg(args.w, d, "--w"), _qn_arg(args.h, d, "--h"))


def _load(path: str) -> Tiling:
    return load_path(path)


# ---------------------------------------------------------------------------
# verbs


def cmd_validate(args, out) -> int:
    t = _load(args.file)
    rep = validate(t, args.threads)
    if args.json:
        print(_dump(rep.to_json()), file=out)
    elif rep.valid:
        print(f"valid: {t.n} tiles", file=out)
    else:
        print("invalid: " + ", ".join(sorted(rep.kinds())), file=out)
    return EXIT_OK if rep.valid else EXIT_VIOLATED


def cmd_analyze(args, out) -> int:
    from .incidence import build_incidence, check_linear_identity, check_ratio_identity, counting_summary

    t = _load(args.file)
    if not validate(t, args.threads).valid:
        print("invalid tiling", file=out)
        return EXIT_VIOLATED
    s = counting_summary(build_incidence(t), t.q, t.n)
    ratio = check_ratio_identity(s)
    linear = check_linear_identity(s)
    doc = s.to_json()
    doc["ratioIdentity"] = ratio
    doc["linearIdentity"] = {"holds": linear.holds, "lhs": linear.lhs}
    if args.json:
        print(_dump(doc), file=out)
    else:
        print(" ".join(f"{k}={doc[k]}" for k in ("q", "N", "cardF", "cardH", "F", "H", "hbar", "Delta")), file=out)
        print(f"ratio identity: {'holds' if ratio else 'fails'}", file=out)
        print(f"linear identity: {'holds' if linear.holds else 'fails'} (lhs {linear.lhs})", file=out)
    return EXIT_OK if ratio and linear.holds else EXIT_VIOLATED


def cmd_hgraph(args, out) -> int:
    from .hgraph import hgraph_report

    t = _load(args.file)
    if not validate(t, args.threads).valid:
        print("invalid tiling", file=out)
        return EXIT_VIOLATED
    doc = hgraph_report(t, args.threads)
    ok = doc["eulerian"] and all(c["certificate"]["holds"] for c in doc["cycles"])
    if args.json:
        print(_dump(doc), file=out)
    else:
        print(f"eulerian: {doc['eulerian']}  components: {doc['components']}  cycles: {len(doc['cycles'])}", file=out)
        for v in doc["offenders"]:
            print(f"offender at {v['vertex']}: {','.join(v['pattern'])}", file=out)
        print(f"pairing conjecture: {doc['pairingConjecture']}  hypotenuse paired: {doc['hypotenusePaired']}", file=out)
    return EXIT_OK if ok else EXIT_VIOLATED


def cmd_segments(args, out) -> int:
    from .segments import segments_report

    t = _load(args.file)
    if not validate(t, args.threads).valid:
        print("invalid tiling", file=out)
        return EXIT_VIOLATED
    doc = segments_report(t)
    ok = doc.get("alphaHeads", 0) == 0 and doc.get("areaConstraint", {}).get("consistent", True)
    if args.json:
        print(_dump(doc), file=out)
    else:
        print(f"maximal segments: {len(doc['maximalSegments'])}", file=out)
        if "solveX" in doc:
            print(f"solve x: {doc['solveX']['kind']}", file=out)
        if "specialSegments" in doc:
            print(f"special segments: {len(doc['specialSegments'])} (alpha heads {doc['alphaHeads']})", file=out)
    return EXIT_OK if ok else EXIT_VIOLATED


def cmd_render(args, out) -> int:
    from .render import render_svg

    t = _load(args.file)
    layers = ["tiles"]
    if args.labels:
        layers.append("labels")
    if args.vertices:
        layers.append("vertices")
    if args.hgraph:
        if t.prototile.kind != TRAPEZOID:
            raise UsageError("--hgraph needs a trapezoid tiling")
        layers.append("hgraph")
    if args.segments:
        layers.append("segments")
    Path(args.out).write_bytes(render_svg(t, layers).encode())
    print(f"wrote {args.out}", file=out)
    return EXIT_OK


def cmd_search(args, out) -> int:
    from .search import SearchConfig, enumerate_tilings

    proto = _prototile(args)
    region = _parse_region(args.region, args.field)
    try:
        cfg = SearchConfig(
            proto,
            region,
            args.n,
            reflections=not args.no_reflections,
            dedup_symmetry=not args.no_dedup,
            node_limit=args.node_limit,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    res = enumerate_tilings(cfg, args.threads)
    summary = res.summary()
    if args.out:
        d = Path(args.out)
        d.mkdir(parents=True, exist_ok=True)
        for i, t in enumerate(res.tilings):
            (d / f"tiling_{i:03d}.json").write_bytes(save(t))
        (d / "summary.json").write_text(_dump(summary) + "\n")
    if args.json:
        print(_dump(summary), file=out)
    else:
        state = "exhausted" if res.exhausted else "node limit reached"
        print(f"{len(res.tilings)} tilings, {state} ({res.nodes_explored} nodes, {res.raw_count} before symmetry)", file=out)
    return EXIT_OK if res.exhausted else EXIT_NOT_EXHAUSTED


def cmd_sweep(args, out) -> int:
    from .search import sweep

    m = re.fullmatch(r"(\d+)(?:-(\d+))?", args.n_range)
    if not m:
        raise UsageError(f"--n-range expects N or A-B, got {args.n_range!r}")
    lo = int(m[1])
    hi = int(m[2]) if m[2] else lo
    rows = sweep([_prototile(args)], range(lo, hi + 1), node_limit=args.node_limit, threads=args.threads)
    if args.json:
        print(_dump(rows), file=out)
    else:
        for row in rows:
            if "skipped" in row:
                print(f"N={row['N']}: skipped ({row['skipped']})", file=out)
            else:
                state = "exhausted" if row["exhausted"] else "node limit reached"
                print(f"N={row['N']}: {row['tilings']} tilings, {state}", file=out)
    exhausted = all(row.get("exhausted", True) for row in rows)
    return EXIT_OK if exhausted else EXIT_NOT_EXHAUSTED


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=1, help="worker processes (default 1)")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=None, help="reserved; exact code paths are deterministic")
    common.add_argument("-v", "--verbose", action="store_true")

    proto = argparse.ArgumentParser(add_help=False)
    proto.add_argument("--prototile", choices=["trapezoid", "rectangle"], default="trapezoid")
    proto.add_argument("--x", help="trapezoid parameter, e.g. \"(-1/2)+(1/2)√3\"")
    proto.add_argument("--alpha", default="1/3", help="alpha as a fraction of pi (default 1/3)")
    proto.add_argument("--w", help="rectangle width")
    proto.add_argument("--h", help="rectangle height")
    proto.add_argument("--field", type=int, default=3, help="radicand d of Q(sqrt d) (default 3)")
    proto.add_argument("--node-limit", type=int, default=10**7)

    p = argparse.ArgumentParser(prog="dissect", description="Exact analysis of dissections of rectangles into congruent polygons.")
    sub = p.add_subparsers(dest="verb", required=True)

    for name, helptext in (
        ("validate", "check that a tiling document is a valid tiling"),
        ("analyze", "vertex census and counting identities"),
        ("hgraph", "hypotenuse graph: Eulerian check and parity certificates"),
        ("segments", "maximal segments, side relations and special segments"),
    ):
        sp = sub.add_parser(name, parents=[common], help=helptext)
        sp.add_argument("file")

    sp = sub.add_parser("render", parents=[common], help="draw a tiling as SVG")
    sp.add_argument("file")
    sp.add_argument("--out", required=True)
    sp.add_argument("--hgraph", action="store_true", help="draw hypotenuse edges")
    sp.add_argument("--segments", action="store_true", help="draw interior maximal segments")
    sp.add_argument("--vertices", action="store_true", help="mark vertices by class")
    sp.add_argument("--labels", action="store_true", help="number the tiles")

    sp = sub.add_parser("search", parents=[common, proto], help="enumerate all tilings of a rectangle")
    sp.add_argument("--region", required=True, help="WxH, e.g. \"√3x√3\"")
    sp.add_argument("--n", type=int, required=True, help="number of tiles")
    sp.add_argument("--out", help="directory for one JSON per tiling plus summary.json")
    sp.add_argument("--no-dedup", action="store_true", help="keep symmetric copies")
    sp.add_argument("--no-reflections", action="store_true", help="disallow mirrored tiles")

    sp = sub.add_parser("sweep", parents=[common, proto], help="search squares over a range of tile counts")
    sp.add_argument("--n-range", default="1-3", help="N or A-B (default 1-3)")
    return p


COMMANDS = {
    "validate": cmd_validate,
    "analyze": cmd_analyze,
    "hgraph": cmd_hgraph,
    "segments": cmd_segments,
    "render": cmd_render,
    "search": cmd_search,
    "sweep": cmd_sweep,
}


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return COMMANDS[args.verb](args, out)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"dissect: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SchemaError, GeometryError, OSError) as exc:
        print(f"dissect: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
