"""Command line front end: classification, ring dumps, isomorphism search,
automorphisms, characteristic classes, and the verification suites.

Output is JSON on stdout (deterministic for identical invocations); a table
renderer exists for humans but carries no stability contract.  Exit codes:
0 success / all checks pass, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import charmat as cm
from . import isokit as ik
from . import ringkit as rk
from . import verify
from .charclasses import full_manifold_data, manifold_data
from .errors import QtoricError

DEFAULT_AUT_BOUND_CAP = 8


def _max_bound_env():
    raw = os.environ.get("QTORIC_MAX_BOUND")
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError:
        raise QtoricError(f"QTORIC_MAX_BOUND must be an integer, got {raw!r}")


def _check_bound(bound, cap):
    override = _max_bound_env()
    limit = override if override is not None else cap
    if bound > limit:
        raise QtoricError(
            f"bound {bound} exceeds the cap {limit}"
            " (set QTORIC_MAX_BOUND to override; large bounds are slow)")


def _resolve_star(args):
    if getattr(args, "star", None):
        parts = args.star.split()
        if len(parts) != 6:
            raise QtoricError('--star wants six integers "x1 y1 x2 y2 x3 y3"')
        return cm.StarForm.from_tuple(tuple(int(p) for p in parts))
    name = getattr(args, "matrix", None)
    if not name:
        raise QtoricError("need --star or --matrix")
    if name.startswith("@"):
        with open(name[1:], "r", encoding="utf-8") as fh:
            lam = cm.matrix_from_json_dict(json.load(fh))
        return cm.to_star_form(lam)
    return cm.named_star(name)


def _emit(args, payload):
    text = json.dumps(payload, indent=2, sort_keys=True)
    if args.format == "table":
        text = _render_table(payload)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _render_table(payload, prefix=""):
    lines = []

    def walk(obj, indent):
        pad = "  " * indent
        if isinstance(obj, dict):
            for k in sorted(obj):
                v = obj[k]
                if isinstance(v, (dict, list)):
                    lines.append(f"{pad}{k}:")
                    walk(v, indent + 1)
                else:
                    lines.append(f"{pad}{k}: {v}")
        elif isinstance(obj, list):
            for v in obj:
                if isinstance(v, (dict, list)):
                    walk(v, indent)
                    lines.append("")
                else:
                    lines.append(f"{pad}- {v}")
        else:
            lines.append(f"{pad}{obj}")

    walk(payload, 0)
    return "\n".join(line for line in lines if line is not None)


def _ring_payload(sf, full=False):
    if full:
        data = full_manifold_data(sf.to_matrix())
    else:
        data = manifold_data(sf)
    ring = data.ring
    degrees = {}
    for d in range(0, ring.max_degree + 1, 2):
        degrees[str(d)] = {
            "rank": ring.rank(d),
            "basis": list(ring.basis_names(d)),
        }
    products = {}
    for d1 in range(2, ring.max_degree + 1, 2):
        for d2 in range(d1, ring.max_degree + 1 - d1, 2):
            table = []
            for i in range(ring.rank(d1)):
                row = []
                a = rk.RingElement(d1, tuple(1 if k == i else 0 for k in range(ring.rank(d1))))
                for j in range(ring.rank(d2)):
                    b = rk.RingElement(d2, tuple(1 if k == j else 0 for k in range(ring.rank(d2))))
                    row.append(list(ring.multiply(a, b).coeffs))
                table.append(row)
            products[f"{d1},{d2}"] = table
    return {
        "star": list(sf.as_tuple()),
        "presentation": "full" if full else "small",
        "ranks": list(ring.ranks()),
        "degrees": degrees,
        "products": products,
        "w2": list(data.classes.w2.coeffs),
        "p1": list(data.classes.p1.coeffs),
    }


def _cmd_classify(args):
    _check_bound(args.bound, verify.CLASSIFY_MAX_BOUND)
    report = verify.classify_cube(args.bound, args.jobs, max_bound=_max_bound_env())
    _emit(args, report)
    return 0 if report["pass"] else 1


def _cmd_ring(args):
    sf = _resolve_star(args)
    _emit(args, _ring_payload(sf, full=args.full))
    return 0


def _cmd_classes(args):
    sf = _resolve_star(args)
    data = manifold_data(sf)
    payload = {
        "star": list(sf.as_tuple()),
        "w2": list(data.classes.w2.coeffs),
        "p1": list(data.classes.p1.coeffs),
        "total_sw": {str(d): list(e.coeffs) for d, e in data.classes.total_sw.items()},
        "total_pontryagin": {str(d): list(e.coeffs)
                             for d, e in data.classes.total_pontryagin.items()},
    }
    _emit(args, payload)
    return 0


def _cmd_aut(args):
    _check_bound(args.bound, DEFAULT_AUT_BOUND_CAP)
    sf = _resolve_star(args)
    data = manifold_data(sf)
    auts = ik.automorphisms(data.ring, args.bound, args.jobs)
    payload = {
        "star": list(sf.as_tuple()),
        "bound": args.bound,
        "automorphisms": [L.as_list() for L in auts],
        "count": len(auts),
    }
    _emit(args, payload)
    return 0


def _parse_ring_ref(text):
    """A builtin name, or six whitespace-separated integers."""
    if " " in text.strip():
        parts = text.split()
        if len(parts) != 6:
            raise QtoricError(f"expected six integers, got {text!r}")
        return cm.StarForm.from_tuple(tuple(int(p) for p in parts))
    return cm.named_star(text)


def _cmd_iso(args):
    _check_bound(args.bound, DEFAULT_AUT_BOUND_CAP)
    src = manifold_data(_parse_ring_ref(args.src))
    dst = manifold_data(_parse_ring_ref(args.dst))
    maps = ik.find_isomorphisms(src.ring, dst.ring, args.bound, args.jobs)
    payload = {
        "src": list(src.star.as_tuple()),
        "dst": list(dst.star.as_tuple()),
        "bound": args.bound,
        "maps": [
            {"matrix": L.as_list(), "is_iso": True,
             "jupp": ik.jupp_check(L, src, dst)}
            for L in maps
        ],
        "count": len(maps),
    }
    _emit(args, payload)
    return 0


def _cmd_verify(args):
    report = verify.run_suite(args.suite, args.bound, args.samples, args.seed, args.jobs)
    _emit(args, report)
    return 0 if report["pass"] else 1


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--out", metavar="FILE", default=None)
    common.add_argument("--jobs", type=int, default=None,
                        help="worker count for search partitioning")
    common.add_argument("--seed", type=int, default=verify.DEFAULT_SEED)

    parser = argparse.ArgumentParser(
        prog="qtoric",
        description="exact-arithmetic engine for torus manifolds over the 3-cube",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common],
                       help="orbit census of star forms within a bound")
    p.add_argument("--bound", type=int, default=verify.DEFAULT_CLASSIFY_BOUND)
    p.set_defaults(fn=_cmd_classify)

    p = sub.add_parser("ring", parents=[common],
                       help="realize a cohomology ring and dump it")
    p.add_argument("--star", default=None)
    p.add_argument("--matrix", default=None)
    p.add_argument("--full", action="store_true",
                   help="use the facet presentation instead of the 3-generator one")
    p.set_defaults(fn=_cmd_ring)

    p = sub.add_parser("classes", parents=[common],
                       help="characteristic class data of a matrix")
    p.add_argument("--star", default=None)
    p.add_argument("--matrix", default=None)
    p.set_defaults(fn=_cmd_classes)

    p = sub.add_parser("aut", parents=[common],
                       help="bounded graded automorphism search")
    p.add_argument("--star", default=None)
    p.add_argument("--matrix", default=None)
    p.add_argument("--bound", type=int, default=verify.DEFAULT_ISO_BOUND)
    p.set_defaults(fn=_cmd_aut)

    p = sub.add_parser("iso", parents=[common],
                       help="bounded graded isomorphism search between two rings")
    p.add_argument("--src", required=True, help="builtin name or six integers")
    p.add_argument("--dst", required=True)
    p.add_argument("--bound", type=int, default=verify.DEFAULT_ISO_BOUND)
    p.set_defaults(fn=_cmd_iso)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("--suite", choices=verify.SUITES, default="all")
    p.add_argument("--bound", type=int, default=None)
    p.add_argument("--samples", type=int, default=None)
    p.set_defaults(fn=_cmd_verify)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except QtoricError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
