"""Command-line front end: ``k3cone <group> <command> [options]``.

Exit codes: 0 success, 1 the computation succeeded but the answer is
negative (no certificate, failed validation, contradiction), 2 usage or
input error, 3 internal error. Progress goes to stderr; stdout carries
only the result, so ``--json`` output can be piped.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

from . import catalog as cat
from . import surfaces
from .cones import ChamberComplex, RationalCone, dual_cone, faces, orbit_faces, validate_chamber_complex
from .lattice import (
    GramLattice,
    determinant,
    direct_sum,
    load_lattice,
    parse_block,
    signature,
)
from .roots import LevelSlice
from .vinberg import Budget, Verdict, aut_finiteness_report, chamber_rays, run_vinberg


class UsageError(Exception):
    pass


def _dump(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)


def _csv_ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(a) for a in text.replace(" ", "").split(",") if a != "")
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _scan_range(text: str) -> range:
    a, sep, b = text.partition("..")
    if not sep:
        raise UsageError(f"--scan expects a..b, got {text!r}")
    try:
        return range(int(a), int(b) + 1)
    except ValueError:
        raise UsageError(f"--scan expects integers, got {text!r}") from None


def _lattice(args) -> GramLattice:
    if args.lattice and args.blocks:
        raise UsageError("give either --lattice or --blocks, not both")
    if args.lattice:
        return load_lattice(args.lattice)
    if args.blocks:
        tokens = [t for chunk in args.blocks for t in chunk.replace(",", " ").split()]
        return direct_sum([parse_block(t) for t in tokens])
    raise UsageError("a lattice is required (--lattice FILE or --blocks TOKENS)")


def _read_json(path: str) -> Any:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _fmt_vec(v: Sequence[int]) -> str:
    return "(" + ", ".join(str(a) for a in v) + ")"


# -- lattice ----------------------------------------------------------------

def cmd_lattice_info(args) -> tuple[int, str]:
    L = _lattice(args)
    sig = signature(L)
    data = {
        "label": L.label,
        "rank": L.rank,
        "signature": [sig.positive, sig.negative],
        "determinant": determinant(L),
        "hyperbolic": sig.positive == 1,
        "gram": [list(r) for r in L.gram],
    }
    if args.json:
        return 0, _dump(data)
    return 0, "\n".join([
        f"label: {L.label}",
        f"rank: {L.rank}",
        f"signature: ({sig.positive},{sig.negative})",
        f"det: {data['determinant']}",
    ])


# -- roots ------------------------------------------------------------------

def cmd_roots_enum(args) -> tuple[int, str]:
    L = _lattice(args)
    v0 = _csv_ints(args.v0)
    slicer = LevelSlice(L, v0)
    levels = []
    for k in range(args.max_level + 1):
        roots = sorted(slicer.roots(k))
        levels.append({"level": k, "roots": [list(r) for r in roots]})
    if args.json:
        return 0, _dump({"v0": list(v0), "levels": levels})
    lines = []
    for rec in levels:
        lines.append(f"level {rec['level']}: {len(rec['roots'])} roots")
        lines.extend("  " + _fmt_vec(r) for r in rec["roots"])
    return 0, "\n".join(lines)


# -- vinberg ----------------------------------------------------------------

def cmd_vinberg_run(args) -> tuple[int, str]:
    L = _lattice(args)
    v0 = _csv_ints(args.v0) if args.v0 else None
    budget = Budget(args.max_walls, args.max_level, args.max_candidates)

    def progress(level, walls):
        print(f"vinberg: level {level} done, {walls} walls", file=sys.stderr)

    res = run_vinberg(L, v0, budget, progress=progress)
    report = aut_finiteness_report(L, res)
    code = 0 if res.verdict is Verdict.TWO_REFLECTIVE else 1
    rays = chamber_rays(L, res.walls, res.v0) if res.verdict is Verdict.TWO_REFLECTIVE else None
    if args.json:
        data = res.to_json()
        data["chamber_rays"] = [list(r) for r in rays] if rays is not None else None
        data["report"] = report.to_json()
        return code, _dump(data)
    lines = [
        f"verdict: {res.verdict.value}",
        f"v0: {_fmt_vec(res.v0)}",
        f"walls ({len(res.walls)}):",
        *("  " + _fmt_vec(w) for w in res.wall_vectors),
    ]
    if rays is not None:
        lines.append("chamber rays: " + " ".join(_fmt_vec(r) for r in rays))
    lines.append(f"candidates: {res.budget_spent['candidates']}, levels: {res.budget_spent['levels']}")
    lines.append(report.summary)
    return code, "\n".join(lines)


# -- cones ------------------------------------------------------------------

def cmd_cone_dual(args) -> tuple[int, str]:
    C = RationalCone.from_json(_read_json(args.input))
    D = dual_cone(C.generators(), dim=C.ambient_dim)
    if args.json:
        return 0, _dump(D.to_json())
    return 0, "\n".join(["dual rays:", *("  " + _fmt_vec(r) for r in D.rays)]
                        + (["lineality:", *("  " + _fmt_vec(r) for r in D.lineality)] if D.lineality else []))


def cmd_cone_faces(args) -> tuple[int, str]:
    C = RationalCone.from_json(_read_json(args.input))
    fs = faces(C, args.codim)
    items = [{"active_facets": sorted(f.active_facets), "dim": f.dim, "rays": [list(r) for r in f.rays()]}
             for f in fs]
    if args.json:
        return 0, _dump({"codim": args.codim, "count": len(items), "faces": items})
    lines = [f"{len(items)} faces of codimension {args.codim}"]
    for it in items:
        lines.append(f"  facets {it['active_facets']} dim {it['dim']} rays "
                     + " ".join(_fmt_vec(r) for r in it["rays"]))
    return 0, "\n".join(lines)


def cmd_cone_orbits(args) -> tuple[int, str]:
    doc = _read_json(args.input)
    items = [RationalCone.from_json(c) for c in doc["faces"]]
    budget = args.word_budget or int(doc.get("word_budget", 8))
    part = orbit_faces(items, doc.get("generators", []), budget)
    data = {
        "orbits": [{"members": cl, "representative": rep, "complete": ok}
                   for cl, rep, ok in zip(part.classes, part.representatives, part.complete)],
        "word_budget": budget,
    }
    if args.json:
        return 0, _dump(data)
    lines = [f"{len(part)} orbits"]
    for o in data["orbits"]:
        lines.append(f"  {o['members']} complete={str(o['complete']).lower()}")
    return 0, "\n".join(lines)


def cmd_cone_validate(args) -> tuple[int, str]:
    X = ChamberComplex.from_json(_read_json(args.input))
    rep = validate_chamber_complex(X)
    code = 0 if rep.passed else 1
    if args.json:
        return code, _dump(rep.to_json())
    data = rep.to_json()
    lines = [f"passed: {str(rep.passed).lower()}"]
    for name, chk in data["checks"].items():
        lines.append(f"  {name}: {'pass' if chk['passed'] else 'FAIL'}")
        for w in chk["witnesses"]:
            lines.append(f"    {json.dumps(w, sort_keys=True)}")
    return code, "\n".join(lines)


# -- surfaces ---------------------------------------------------------------

def _hirzebruch_row(n: int) -> dict[str, Any]:
    a = surfaces.fixed_component_analysis(n)
    return {
        "n": n,
        "minus_K_dot_C0": a.minus_K_dot_C0,
        "residual_dot_C0": a.residual_dot_C0,
        "multiplicity_of_C0_in_base_locus": str(a.multiplicity_of_C0_in_base_locus),
        "smooth_K3_cover_possible": a.smooth_K3_cover_possible,
    }


def cmd_surface_hirzebruch(args) -> tuple[int, str]:
    if (args.n is None) == (args.scan is None):
        raise UsageError("give exactly one of --n or --scan")
    ns = [args.n] if args.n is not None else list(_scan_range(args.scan))
    if any(n < 0 for n in ns):
        raise UsageError("n must be nonnegative")
    rows = [_hirzebruch_row(n) for n in ns]
    if args.json:
        return 0, _dump({"rows": rows})
    lines = ["n  -K.C0  residual.C0  mult  smooth_cover"]
    for r in rows:
        lines.append(f"{r['n']}  {r['minus_K_dot_C0']}  {r['residual_dot_C0']}  "
                     f"{r['multiplicity_of_C0_in_base_locus']}  {str(r['smooth_K3_cover_possible']).lower()}")
    return 0, "\n".join(lines)


def cmd_surface_rr(args) -> tuple[int, str]:
    h0 = surfaces.k3_riemann_roch(surfaces.K3Class(args.lsq, nef_and_big=True))
    if args.json:
        return 0, _dump({"L_squared": args.lsq, "h0": h0})
    return 0, f"h0(L) = {h0} for L^2 = {args.lsq}"


def cmd_surface_classify(args) -> tuple[int, str]:
    v = surfaces.classify_contraction(surfaces.ContractionDescriptor(args.type))
    if args.json:
        return 0, _dump({"type": args.type, "allowed": v.allowed, "reason": v.reason})
    return 0, f"type {args.type}: {'allowed' if v.allowed else 'excluded'}\n{v.reason}"


# -- catalog ----------------------------------------------------------------

def _entry_json(e: cat.FanoEntry) -> dict[str, Any]:
    d = e.to_json()
    if e.lattice is not None:
        sig = signature(e.lattice)
        d["lattice_rank"] = e.lattice.rank
        d["lattice_signature"] = [sig.positive, sig.negative]
        d["lattice_determinant"] = determinant(e.lattice)
    return d


def cmd_catalog_list(args) -> tuple[int, str]:
    c = cat.load_catalog(args.catalog)
    arith = cat.catalog_arithmetic(c)
    if args.json:
        return 0, _dump({"entries": [e.to_json() for e in c], "arithmetic": arith})
    lines = [f"{e.label:22s} galois_trivial={str(e.galois_trivial).lower():5s} {e.status.value}"
             + ("  [lattice]" if e.lattice is not None else "") for e in c]
    lines.append(f"total {arith['total']} - excluded {arith['excluded']} = {arith['infinite']}"
                 f" ({'ok' if arith['passed'] else 'MISMATCH'})")
    return 0, "\n".join(lines)


def cmd_catalog_show(args) -> tuple[int, str]:
    c = cat.load_catalog(args.catalog)
    try:
        e = c.get(args.label)
    except KeyError:
        raise UsageError(f"no catalog entry {args.label!r}") from None
    d = _entry_json(e)
    if args.json:
        return 0, _dump(d)
    return 0, "\n".join(f"{k}: {json.dumps(v, ensure_ascii=False) if isinstance(v, (dict, list)) else v}"
                        for k, v in sorted(d.items()))


def cmd_catalog_cross_check(args) -> tuple[int, str]:
    c = cat.load_catalog(args.catalog)
    rows = cat.cross_check(c)
    bad = any(r.outcome is cat.Outcome.CONTRADICTION for r in rows)
    if args.json:
        return int(bad), _dump({"rows": [r.to_json() for r in rows]})
    lines = [f"{r.label:22s} {r.outcome.value}" + (f"  ({r.notice})" if r.notice else "") for r in rows]
    return int(bad), "\n".join(lines)


# -- parser -----------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _add_lattice_args(p):
    p.add_argument("--lattice", metavar="FILE", help="lattice definition JSON")
    p.add_argument("--blocks", nargs="+", metavar="TOKEN",
                   help="direct sum of U, E8MINUS, DIAG(n); comma or space separated")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="k3cone", description=__doc__.splitlines()[0])
    groups = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)

    g = groups.add_parser("lattice").add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = g.add_parser("info")
    _add_lattice_args(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_lattice_info)

    g = groups.add_parser("roots").add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = g.add_parser("enum")
    _add_lattice_args(p)
    p.add_argument("--v0", required=True, help="controlling vector, e.g. --v0=1,1")
    p.add_argument("--max-level", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_roots_enum)

    g = groups.add_parser("vinberg").add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = g.add_parser("run")
    _add_lattice_args(p)
    p.add_argument("--v0", help="controlling vector (default: automatic search)")
    defaults = Budget()
    p.add_argument("--max-walls", type=int, default=defaults.max_walls)
    p.add_argument("--max-level", type=int, default=defaults.max_level)
    p.add_argument("--max-candidates", type=int, default=defaults.max_candidates)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_vinberg_run)

    g = groups.add_parser("cone").add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, func in (("dual", cmd_cone_dual), ("faces", cmd_cone_faces),
                       ("orbits", cmd_cone_orbits), ("validate-complex", cmd_cone_validate)):
        p = g.add_parser(name)
        p.add_argument("--in", dest="input", required=True, metavar="FILE")
        p.add_argument("--json", action="store_true")
        if name == "faces":
            p.add_argument("--codim", type=int, default=1)
        if name == "orbits":
            p.add_argument("--word-budget", type=int, default=None)
        p.set_defaults(func=func)

    g = groups.add_parser("surface").add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = g.add_parser("hirzebruch")
    p.add_argument("--n", type=int)
    p.add_argument("--scan", metavar="A..B")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_surface_hirzebruch)
    p = g.add_parser("rr")
    p.add_argument("--lsq", type=int, required=True, help="even self-intersection L^2 > 0")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_surface_rr)
    p = g.add_parser("classify")
    p.add_argument("--type", type=int, required=True, choices=range(1, 9))
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_surface_classify)

    g = groups.add_parser("catalog").add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, func in (("list", cmd_catalog_list), ("show", cmd_catalog_show),
                       ("cross-check", cmd_catalog_cross_check)):
        p = g.add_parser(name)
        if name == "show":
            p.add_argument("label")
        p.add_argument("--catalog", metavar="FILE", help="catalog JSON (default: shipped catalog)")
        p.add_argument("--json", action="store_true")
        p.set_defaults(func=func)
    return parser


def dispatch(argv: Sequence[str]) -> tuple[int, str]:
    """Run one command; returns (exit code, stdout text). Diagnostics go to stderr."""
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
        return args.func(args)
    except UsageError as exc:
        print(f"k3cone: error: {exc}", file=sys.stderr)
        return 2, ""
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"k3cone: error: {exc}", file=sys.stderr)
        return 2, ""
    except SystemExit as exc:  # --help
        return int(exc.code or 0), ""
    except Exception as exc:  # noqa: BLE001
        print(f"k3cone: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3, ""


def main(argv: Sequence[str] | None = None) -> int:
    code, out = dispatch(sys.argv[1:] if argv is None else argv)
    if out:
        print(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
