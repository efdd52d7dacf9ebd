"""Command line entry point.

Exit codes: 0 success, 1 refused input (a documented precondition fails),
2 usage error.
"""

from __future__ import annotations

import argparse
import re
import sys

from .errors import DomainError, ParseError
from .lens import (
    FoldedLens,
    GluingSpec,
    build_lens,
    closed_complex,
    dehn_fill,
    identify_gluing,
    is_one_efficient,
    is_zero_efficient,
    nonorientable_genus,
)
from .lst import (
    LayeredPath,
    build_from_path,
    build_minimal,
    edge_line,
    edge_table,
    is_nearly_minimal,
    materialize_labeled,
)
from .normal import KERNEL, classify, enumerate_surfaces, surface_name
from .slope import LVertex, SlopeTriple
from .tri import homology_h1, isomorphic, parse, serialize, validate


class _UsageError(Exception):
    pass


def _read_tri(path: str):
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def _layered(args) -> LayeredPath:
    if args.pq and args.path:
        raise _UsageError("give --pq or --path, not both")
    if args.pq:
        v = LVertex.parse(args.pq)
        return build_minimal(v.p, v.q)
    if args.path:
        return build_from_path([LVertex.parse(x) for x in args.path.split(",")])
    raise _UsageError("one of --pq or --path is required")


def _group(free: int, torsion) -> str:
    parts = ["Z"] * free + [f"Z/{t}" for t in torsion]
    return " + ".join(parts) if parts else "0"


def _slot(text: str) -> int:
    k = int(text)
    if k not in (0, 1, 2):
        raise argparse.ArgumentTypeError("slot must be 0, 1 or 2")
    return k


# lst ---------------------------------------------------------------------------


def _lst_build(args) -> int:
    lp = _layered(args)
    if args.emit == "tri":
        sys.stdout.write(serialize(materialize_labeled(lp).tri))
        return 0
    print(f"path {lp}")
    print(f"moves {','.join(map(str, lp.moves)) or '-'}")
    print(f"tets {lp.tet_count}")
    print(f"meridian {lp.meridian}")
    if lp.degenerate:
        print("degenerate yes")
    return 0


def _lst_table(args) -> int:
    lp = _layered(args)
    rows = edge_table(lp)
    if args.lines:
        for e in rows:
            print(edge_line(e))
        return 0
    head = ("edge", "level", "meridian", "kind", "univalent", "slope", "boundary")
    body = [
        (
            f"{e.id[0]}.{e.id[1]}",
            str(e.level_created),
            str(e.meridian_count),
            e.kind,
            "yes" if e.univalent else "",
            str(e.final_slope),
            ",".join(map(str, e.boundary_slots)),
        )
        for e in rows
    ]
    widths = [max(len(r[i]) for r in [head] + body) for i in range(len(head))]
    for r in [head] + body:
        print("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
    return 0


def _lst_check(args) -> int:
    lp = _layered(args)
    ok, witness = is_nearly_minimal(lp)
    print(f"nearly-minimal {'yes' if ok else 'no'}")
    if witness:
        print("witness " + " ".join(edge_line(e) for e in witness))
    return 0


# lens --------------------------------------------------------------------------

_GLUING = re.compile(r"\s*(\{[^}]*\})\s*<->\s*(\{[^}]*\})\s*")


def _pairing(text: str):
    out = [None, None, None]
    for item in text.split(","):
        a, sep, b = item.partition(":")
        if not sep:
            raise _UsageError(f"bad --pair item {item!r}")
        out[int(a)] = int(b)
    if sorted(x for x in out if x is not None) != [0, 1, 2]:
        raise _UsageError("--pair must map 0, 1, 2 onto 0, 1, 2")
    return tuple(out)


def _lens_identify(args) -> int:
    m = _GLUING.fullmatch(args.gluing)
    if not m:
        raise _UsageError('write the gluing as "{a,b,c}<->{d,e,f}"')
    A, B = SlopeTriple.parse(m.group(1)), SlopeTriple.parse(m.group(2))
    pair = _pairing(args.pair) if args.pair else (0, 1, 2)
    L = identify_gluing(GluingSpec(A, B, pair), args.strategy)
    print(L.raw())
    print(f"canonical {L}" + (f" ({L.name})" if L.name != str(L) else ""))
    return 0


def _lens_build(args) -> int:
    desc = build_lens(args.X, args.Y)
    if args.emit == "tri":
        sys.stdout.write(serialize(closed_complex(desc)))
        return 0
    print(f"path {desc.path}")
    print(f"meridian {desc.path.meridian}")
    print(f"fold {desc.fold_slot}" + (" (univalent edge)" if desc.folds_univalent else ""))
    print(f"tets {desc.tet_count}")
    print(f"lens {desc.lens.raw()} canonical {desc.lens}")
    return 0


def _lens_genus(args) -> int:
    print(nonorientable_genus(args.X, args.Y))
    return 0


def _lens_check(args) -> int:
    desc = FoldedLens(_layered(args), args.fold)
    L = desc.lens
    print(f"lens {L.raw()} canonical {L}")
    if desc.folds_univalent:
        print("note folds the univalent edge")
    if args.efficiency is not None:
        test = is_zero_efficient if args.efficiency == 0 else is_one_efficient
        print(f"{args.efficiency}-efficient {'yes' if test(desc) else 'no'}")
    return 0


def _lens_fill(args) -> int:
    T = _read_tri(args.tri)
    alpha = SlopeTriple.parse(args.alpha)
    R = dehn_fill(T, args.boundary, alpha)
    free, tors = homology_h1(R)
    print(f"# filled along {alpha}: H1 = {_group(free, tors)}")
    sys.stdout.write(serialize(R))
    return 0


# normal ------------------------------------------------------------------------


def _label(lp, comps, tri) -> str:
    names = []
    for c in comps:
        names.append(classify(lp, c, tri) if lp is not None else surface_name(c))
    return "+".join(n.replace(" ", "_") for n in names)


def _normal_enumerate(args) -> int:
    lp = None
    slot_classes = None
    if args.tri:
        if args.pq or args.path:
            raise _UsageError("give --tri or a layered path, not both")
        T = _read_tri(args.tri)
    else:
        lp = _layered(args)
        M = materialize_labeled(lp)
        T, slot_classes = M.tri, M.slot_classes
    found = enumerate_surfaces(T, args.bound, args.octagons, args.connected_only, args.closed_only, slot_classes)
    for vec, S in found:
        bd = [b for c in S.components for b in c.boundary]
        boundary = ";".join("{%d,%d,%d}" % b for b in bd) if bd else "-"
        orient = "y" if all(c.orientable for c in S.components) else "n"
        print(
            f"surface comps={len(S.components)} chi={S.euler} orient={orient} boundary={boundary} "
            f"class={_label(lp, S.components, T)} vec={','.join(map(str, vec))}"
        )
    print(f"# {len(found)} surfaces, bound {args.bound}, {KERNEL} kernel", file=sys.stderr)
    return 0


# tri ---------------------------------------------------------------------------


def _tri_validate(args) -> int:
    sk = validate(_read_tri(args.file))
    print(f"tets {sk.tet_count}")
    print(f"vertices {sk.num_vertices}")
    print(f"edges {sk.num_edges}")
    print(f"boundary-faces {len(sk.boundary_faces)}")
    print(f"manifold {'yes' if sk.manifold else 'no'}")
    for p in sk.problems:
        print(f"problem {p}")
    return 0


def _tri_homology(args) -> int:
    free, tors = homology_h1(_read_tri(args.file))
    print(f"H1 = {_group(free, tors)}")
    return 0


def _tri_iso(args) -> int:
    same = isomorphic(_read_tri(args.a), _read_tri(args.b))
    print("isomorphic" if same else "not isomorphic")
    return 0


# verify ------------------------------------------------------------------------


def _verify(args) -> int:
    from .fixtures import run_all

    failed = 0
    for name, ok, err in run_all():
        print(f"{'pass' if ok else 'FAIL'} {name}" + (f" ({err})" if err else ""))
        failed += not ok
    print(f"{failed} failed")
    return 1 if failed else 0


# parser ------------------------------------------------------------------------


def _add_layered(p):
    p.add_argument("--pq", help="minimal layering for a fraction, e.g. 2/7")
    p.add_argument("--path", help='explicit L-graph path ending at 1/1, e.g. "2/7,2/5,2/3,1/2,1/1"')


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lenslab", description="Layered solid tori, lens spaces and normal surfaces.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    lst = sub.add_parser("lst", help="layered solid tori").add_subparsers(dest="sub", required=True)
    p = lst.add_parser("build")
    _add_layered(p)
    p.add_argument("--emit", choices=["tri"])
    p.set_defaults(run=_lst_build)
    p = lst.add_parser("table")
    _add_layered(p)
    p.add_argument("--lines", action="store_true", help="machine-readable edge lines")
    p.set_defaults(run=_lst_table)
    p = lst.add_parser("check")
    _add_layered(p)
    p.set_defaults(run=_lst_check)

    lens = sub.add_parser("lens", help="lens spaces").add_subparsers(dest="sub", required=True)
    p = lens.add_parser("identify")
    p.add_argument("gluing")
    p.add_argument("--pair", help="slot map, e.g. 0:0,1:1,2:2")
    p.add_argument("--strategy", choices=["larger", "first"], default="larger")
    p.set_defaults(run=_lens_identify)
    p = lens.add_parser("build")
    p.add_argument("X", type=int)
    p.add_argument("Y", type=int)
    p.add_argument("--emit", choices=["tri"])
    p.set_defaults(run=_lens_build)
    p = lens.add_parser("genus")
    p.add_argument("X", type=int)
    p.add_argument("Y", type=int)
    p.set_defaults(run=_lens_genus)
    p = lens.add_parser("check")
    _add_layered(p)
    p.add_argument("--fold", type=_slot, required=True)
    p.add_argument("--efficiency", type=int, choices=[0, 1])
    p.set_defaults(run=_lens_check)
    p = lens.add_parser("fill")
    p.add_argument("--tri", required=True)
    p.add_argument("--boundary", type=int, default=0)
    p.add_argument("--alpha", required=True)
    p.set_defaults(run=_lens_fill)

    normal = sub.add_parser("normal", help="normal surfaces").add_subparsers(dest="sub", required=True)
    p = normal.add_parser("enumerate")
    p.add_argument("--tri")
    _add_layered(p)
    p.add_argument("--bound", type=int, default=6)
    p.add_argument("--octagons", action="store_true")
    p.add_argument("--closed-only", action="store_true")
    p.add_argument("--connected-only", action="store_true")
    p.set_defaults(run=_normal_enumerate)

    tri = sub.add_parser("tri", help="face-pairing triangulations").add_subparsers(dest="sub", required=True)
    p = tri.add_parser("validate")
    p.add_argument("file")
    p.set_defaults(run=_tri_validate)
    p = tri.add_parser("homology")
    p.add_argument("file")
    p.set_defaults(run=_tri_homology)
    p = tri.add_parser("iso")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(run=_tri_iso)

    verify = sub.add_parser("verify", help="built-in worked examples").add_subparsers(dest="sub", required=True)
    p = verify.add_parser("paper-examples")
    p.set_defaults(run=_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.run(args)
    except _UsageError as exc:
        print(f"lenslab: {exc}", file=sys.stderr)
        return 2
    except (DomainError, ParseError, ValueError, OSError) as exc:
        print(f"lenslab: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
