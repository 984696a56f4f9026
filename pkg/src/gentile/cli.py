"""Command-line entry point.

Exit codes: 0 when the answer is yes (valid, found, ...), 1 when the tool ran
and the answer is no, 2 for usage or input errors.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .angles import AngleSpec, obtuse_split_check, side_relation_search, splitting_candidates, vertex_signatures
from .budget import SearchBudget
from .constructions import KINDS, construct
from .curves import (
    builtin_curve,
    check_continuity,
    check_face_continuity,
    check_measure,
    evaluate,
    polyline,
    solve_entry_exit,
)
from .dual import build_dual, conforming_hamiltonian_path, hamiltonian_path, two_level
from .enumeration import enumerate_reptilings
from .exact import ExactError, format_rational, parse_rational
from .io import (
    FormatError,
    dumps,
    file_digest,
    load_rule,
    load_tiling,
    point_to_json,
    rule_to_json,
    save_rule,
    save_tiling,
)
from .render import RenderOptions, render_curve, render_tiling
from .tiling import (
    audit_vertex_degrees,
    build_graph,
    check_euler,
    detect_caps_fans,
    is_trivial_tiling,
    side_ratio_rationality,
    validate_gentiling,
    validate_reptiling,
)


class UsageError(Exception):
    pass


def _report(command: str, inputs: list[str], **body) -> dict:
    out = {"tool": "gentile", "version": __version__, "command": command}
    out["input_sha256"] = {p: file_digest(p) for p in inputs}
    out.update(body)
    return out


def _emit(report: dict, out: str | None) -> None:
    text = dumps(report)
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _fracs(text: str) -> list[Fraction]:
    try:
        return [parse_rational(x.strip()) for x in text.split(",") if x.strip()]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse rationals from {text!r}") from None


# --- subcommands --------------------------------------------------------------------


def cmd_construct(args) -> int:
    t = construct(args.kind, n=args.n, p=args.p, q=args.q, r=args.r, l=args.l, m=args.m, refine=args.refine)
    save_tiling(t, args.out)
    rep = _report("construct", [], kind=args.kind, r=t.r, out=args.out, output_sha256=file_digest(args.out))
    sys.stdout.write(dumps(rep))
    return 0


def cmd_validate(args) -> int:
    t = load_tiling(args.input)
    v = validate_reptiling(t) if args.reptiling else validate_gentiling(t)
    _emit(_report("validate", [args.input], mode="reptiling" if args.reptiling else "gentiling", **v.to_json()), args.out)
    return 0 if v.ok else 1


def cmd_graph(args) -> int:
    t = load_tiling(args.input)
    g = build_graph(t)
    euler = check_euler(g, t.r)
    rep = _report(
        "graph",
        [args.input],
        r=t.r,
        euler=euler,
        caps_fans=detect_caps_fans(t, g),
        trivial=is_trivial_tiling(t),
        side_ratios=side_ratio_rationality(t),
        graph=g.to_json(),
    )
    _emit(rep, args.out)
    return 0 if euler else 1


def cmd_audit(args) -> int:
    t = load_tiling(args.input)
    a = audit_vertex_degrees(t)
    _emit(_report("audit", [args.input], **a), args.out)
    return 0 if a["ok"] else 1


def cmd_dual(args) -> int:
    g = build_dual(load_tiling(args.input))
    _emit(_report("dual", [args.input], **g.to_json()), args.out)
    return 0


def cmd_hampath(args) -> int:
    g = build_dual(load_tiling(args.input))
    res = hamiltonian_path(g, SearchBudget(max_nodes=args.budget))
    _emit(_report("hampath", [args.input], **res.to_json()), args.out)
    return 0 if res.found else 1


def cmd_conforming(args) -> int:
    outer = load_tiling(args.outer)
    inners = [load_tiling(p) for p in args.inner]
    t2 = two_level(outer, inners[0] if len(inners) == 1 else inners)
    res = conforming_hamiltonian_path(t2, SearchBudget(max_nodes=args.budget))
    _emit(_report("conforming", [args.outer, *args.inner], atoms=t2.atoms.r, **res.to_json()), args.out)
    return 0 if res.found else 1


def cmd_enumerate(args) -> int:
    t = load_tiling(args.input)
    res = enumerate_reptilings(t.master, args.n, SearchBudget(max_nodes=args.max_nodes, max_tilings=args.max_tilings))
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    files = []
    for i, tiling in enumerate(res.tilings):
        name = f"tiling_{i:03d}.json"
        save_tiling(tiling, out / name)
        files.append({"file": name, "trivial": is_trivial_tiling(tiling)})
    manifest = _report(
        "enumerate",
        [args.input],
        n=args.n,
        count=len(res.tilings),
        exhaustive=res.exhaustive,
        nodes_explored=res.nodes_explored,
        skipped_outside_field=res.skipped,
        notes=res.notes,
        tilings=files,
    )
    (out / "manifest.json").write_text(dumps(manifest), encoding="utf-8")
    sys.stdout.write(dumps(manifest))
    return 0 if res.tilings else 1


def _spec_from_args(args) -> AngleSpec:
    if args.family is not None:
        return AngleSpec("family", k=args.family)
    if args.angles is None:
        raise UsageError("give --angles or --family")
    return AngleSpec("rational_pi", tuple(_fracs(args.angles)))


def cmd_solve_angles(args) -> int:
    spec = _spec_from_args(args)
    sigs = vertex_signatures(spec, args.target)
    rep = _report("solve-angles", [], target=args.target, count=len(sigs), signatures=[list(s[:3]) for s in sigs])
    _emit(rep, args.out)
    return 0 if sigs else 1


def cmd_split_candidates(args) -> int:
    cands = splitting_candidates(args.k)
    rep = _report(
        "split-candidates", [], k=args.k, candidates=[[format_rational(a) for a in c] for c in cands], unit="pi"
    )
    _emit(rep, args.out)
    return 0 if cands else 1


def cmd_side_relations(args) -> int:
    t = load_tiling(args.input)
    rels = side_relation_search(t, args.bound)
    rep = _report("side-relations", [args.input], bound=args.bound, relations=[list(r) for r in rels])
    _emit(rep, args.out)
    return 0 if rels else 1


def cmd_obtuse_check(args) -> int:
    v = obtuse_split_check(_fracs(args.angles), args.k)
    _emit(_report("obtuse-check", [], **v.to_json()), args.out)
    return 0 if v.verdict == "impossible" else 1


def _load_curve(args):
    if args.input:
        return load_rule(args.input), [args.input]
    if args.name:
        return builtin_curve(args.name), []
    raise UsageError("give --name or --input")


def cmd_curve(args) -> int:
    rule, inputs = _load_curve(args)
    body: dict = {"r": rule.r}
    ok = True
    if args.save:
        save_rule(rule, args.save)
        body["saved"] = args.save
    if args.check:
        cont = check_continuity(rule)
        meas = check_measure(rule)
        face = check_face_continuity(rule, args.depth) if cont.ok else None
        body["continuity"] = {"ok": cont.ok, "failing_junctions": cont.failing}
        body["measure"] = meas
        body["face_continuity"] = None if face is None else {"ok": face.ok, "depth": args.depth, "failure": face.failure}
        if cont.entry_exit:
            body["entry"] = point_to_json(cont.entry_exit.entry)
            body["exit"] = point_to_json(cont.entry_exit.exit)
        ok = cont.ok and meas and bool(face)
    if args.eval is not None:
        t = parse_rational(args.eval)
        tile, pt = evaluate(rule, t, args.depth)
        body["eval"] = {"t": format_rational(t), "depth": args.depth, "point": point_to_json(pt), "tile": [point_to_json(p) for p in tile]}
    if args.polyline:
        pts = polyline(rule, args.depth, unique=args.unique)
        body["polyline"] = [point_to_json(p) for p in pts]
    if not (args.check or args.eval is not None or args.polyline or args.save):
        ee = solve_entry_exit(rule)
        body["rule"] = rule_to_json(rule)
        body["entry"], body["exit"] = point_to_json(ee.entry), point_to_json(ee.exit)
    _emit(_report("curve", inputs, **body), args.out)
    return 0 if ok else 1


def cmd_render(args) -> int:
    opts = RenderOptions(width_px=args.width, depth=args.depth, show_R_glyphs=args.glyphs, show_order_curve=not args.no_curve)
    if args.input:
        inputs = [args.input]
        svg = render_tiling(load_tiling(args.input), opts)
    elif args.rule or args.curve:
        inputs = [args.rule] if args.rule else []
        rule = load_rule(args.rule) if args.rule else builtin_curve(args.curve)
        svg = render_curve(rule, opts)
    else:
        raise UsageError("give --input, --rule or --curve")
    Path(args.out).write_text(svg, encoding="utf-8")
    sys.stdout.write(dumps(_report("render", inputs, out=args.out, output_sha256=file_digest(args.out))))
    return 0


# --- parser -------------------------------------------------------------------------


def _pos_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gentile", description="Exact triangle gentilings and their space-filling curves.")
    p.add_argument("--version", action="version", version=f"gentile {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a tiling and write it to a file")
    c.add_argument("--kind", required=True, choices=KINDS)
    for name in ("n", "p", "q", "r", "l", "m"):
        c.add_argument(f"--{name}", type=_pos_int)
    c.add_argument("--refine", action="store_true")
    c.add_argument("--out", required=True)
    c.set_defaults(func=cmd_construct)

    c = sub.add_parser("validate", help="check a tiling file")
    c.add_argument("--input", required=True)
    c.add_argument("--reptiling", action="store_true")
    c.add_argument("--out")
    c.set_defaults(func=cmd_validate)

    for name, func, helptext in (
        ("graph", cmd_graph, "tiling graph, Euler identity, caps and fans"),
        ("audit", cmd_audit, "vertex angle-degree audit"),
        ("dual", cmd_dual, "dual graph adjacency"),
        ("side-relations", cmd_side_relations, "integer relations between side lengths"),
    ):
        c = sub.add_parser(name, help=helptext)
        c.add_argument("--input", required=True)
        c.add_argument("--out")
        if name == "side-relations":
            c.add_argument("--bound", type=_pos_int, default=10)
        c.set_defaults(func=func)

    c = sub.add_parser("hampath", help="Hamiltonian path in the dual graph")
    c.add_argument("--input", required=True)
    c.add_argument("--budget", type=_pos_int, default=1_000_000)
    c.add_argument("--out")
    c.set_defaults(func=cmd_hampath)

    c = sub.add_parser("conforming", help="conforming Hamiltonian path of a two-level reptiling")
    c.add_argument("--outer", required=True)
    c.add_argument("--inner", required=True, action="append", help="one shared rule, or one file per outer tile")
    c.add_argument("--budget", type=_pos_int, default=1_000_000)
    c.add_argument("--out")
    c.set_defaults(func=cmd_conforming)

    c = sub.add_parser("enumerate", help="all n^2-reptilings of a master")
    c.add_argument("--input", required=True)
    c.add_argument("--n", type=_pos_int, required=True)
    c.add_argument("--max-nodes", type=_pos_int, default=1_000_000)
    c.add_argument("--max-tilings", type=_pos_int, default=10_000)
    c.add_argument("--out", required=True)
    c.set_defaults(func=cmd_enumerate)

    c = sub.add_parser("solve-angles", help="vertex angle signatures")
    c.add_argument("--angles", help="comma separated multiples of pi, e.g. 2/13,5/13,6/13")
    c.add_argument("--family", type=int, help="k for the family alpha, k alpha, pi-(k+1) alpha")
    c.add_argument("--target", choices=("full", "half"), default="full")
    c.add_argument("--out")
    c.set_defaults(func=cmd_solve_angles)

    c = sub.add_parser("split-candidates", help="angle triples left for a k-splitting gentiling")
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--out")
    c.set_defaults(func=cmd_split_candidates)

    c = sub.add_parser("obtuse-check", help="capacity counting for an angle above 2 pi / 3")
    c.add_argument("--angles", required=True)
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--out")
    c.set_defaults(func=cmd_obtuse_check)

    c = sub.add_parser("curve", help="check, evaluate or trace a curve rule")
    c.add_argument("--name", choices=("sierpinski", "rep3", "polya", "kaiser5"))
    c.add_argument("--input")
    c.add_argument("--check", action="store_true")
    c.add_argument("--eval")
    c.add_argument("--polyline", action="store_true")
    c.add_argument("--unique", action="store_true", help="drop repeated polyline points")
    c.add_argument("--depth", type=int, default=5)
    c.add_argument("--save")
    c.add_argument("--out")
    c.set_defaults(func=cmd_curve)

    c = sub.add_parser("render", help="SVG of a tiling or a curve")
    c.add_argument("--input", help="tiling file")
    c.add_argument("--rule", help="curve rule file")
    c.add_argument("--curve", choices=("sierpinski", "rep3", "polya", "kaiser5"))
    c.add_argument("--depth", type=int, default=3)
    c.add_argument("--width", type=_pos_int, default=480)
    c.add_argument("--glyphs", action="store_true")
    c.add_argument("--no-curve", action="store_true")
    c.add_argument("--out", required=True)
    c.set_defaults(func=cmd_render)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, FormatError, ExactError, ValueError, KeyError, OSError) as exc:
        print(f"gentile {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
