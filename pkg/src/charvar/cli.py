"""Command line front end: ``charvar <subcommand> ...``.

Exit codes: 0 success, 1 usage or input errors, 2 a hypothesis or
verification failure, 3 an obstructed push-off.
"""

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import invariants as inv
from . import io as cio
from .algebra import homology, pi1_presentation
from .complex import barycentric_subdivision
from .errors import (CharvarError, InternalError, Obstructed, PushoffError, SchemaError,
                     ValidationError)
from .generators import SURFACES, random_problem, seeded_rng

EXIT_OK, EXIT_USAGE, EXIT_FAIL, EXIT_OBSTRUCTED = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _compact(obj):
    return json.dumps(obj, separators=(",", ":"))


def _emit(args, text):
    out = getattr(args, "output", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _range(text):
    """"3" or "3-7" (inclusive) -> list of ints."""
    try:
        if "-" in text:
            a, b = text.split("-", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or A-B, got {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return list(range(lo, hi + 1))


# -- invariants ---------------------------------------------------------

def cmd_poincare(args):
    p = inv.poincare_su2(args.r, method=args.method)
    rep = inv.duality_check(args.r) if args.check_duality else None
    if args.format == "json":
        out = {"group": "SU(2)", "r": args.r, "poincare": p.to_json()}
        if rep is not None:
            out["duality"] = rep.to_json()
        _emit(args, _compact(out))
        return EXIT_OK
    if args.format == "table":
        rows = [(str(k), str(p[k])) for k in range(p.degree + 1)]
        text = _format_table(["k", "b_k"], rows)
    else:
        text = str(p)
    if rep is not None:
        if rep.satisfies_duality:
            text += "\nduality: b_k = b_{%d-k} for all k" % rep.m
        else:
            bad = ", ".join(f"k={k} (b_k={a}, b_{{m-k}}={b})" for k, a, b in rep.mismatches)
            text += f"\nduality fails (m={rep.m}): {bad}"
    _emit(args, text)
    return EXIT_OK


def cmd_homotopy(args):
    ans = inv.pi_k_irr(args.family, args.n, args.r, args.k)
    if args.full or ans.kind != inv.GROUP:
        _emit(args, _compact(ans.to_json()))
    else:
        _emit(args, _compact(ans.group.to_json()))
    return EXIT_OK


def cmd_pi1(args):
    if args.irr:
        g = inv.pi1_irr(args.family, args.n, args.r)
    else:
        g = inv.pi1_charvar(args.family, args.n, args.r)
    _emit(args, _compact(g.to_json()))
    return EXIT_OK


def cmd_codim(args):
    out = inv.codim_bounds(args.family, args.n, args.r, args.dim_g, args.dim_pmax)
    _emit(args, _compact(out))
    return EXIT_OK


# -- complexes ----------------------------------------------------------

def _load_complex(path):
    return cio.read_json(path, cio.complex_from_json)


def cmd_homology(args):
    K = _load_complex(args.complex)
    hs = homology(K)
    if args.json:
        _emit(args, _compact([h.to_json() for h in hs]))
    else:
        _emit(args, "[" + ", ".join(str(h) for h in hs) + "]")
    return EXIT_OK


def cmd_pi1_complex(args):
    K = _load_complex(args.complex)
    if args.basepoint is not None and args.basepoint not in K.vertices:
        raise ValidationError(f"basepoint {args.basepoint!r} is not a vertex")
    grp = pi1_presentation(K, args.basepoint, full=True)
    pres = grp.presentation
    out = {"basepoint": grp.basepoint, "presentation": pres.to_json(),
           "abelianization": pres.abelianization().to_json()}
    _emit(args, _compact(out))
    return EXIT_OK


# -- push-off -----------------------------------------------------------

def _load_problem(args):
    if args.problem:
        return cio.read_json(args.problem, cio.problem_from_json)
    missing = [f"--{k}" for k in ("complex", "subcomplex", "surface", "map")
               if not getattr(args, k)]
    if missing:
        raise ValidationError("give --problem or all of " + ", ".join(missing))
    X = _load_complex(args.complex)
    Y = cio.read_json(args.subcomplex, cio.subcomplex_from_json, X)
    S = cio.read_json(args.surface, cio.surface_from_json)
    f = cio.read_json(args.map, cio.map_from_json, S.complex, X)
    return cio.make_problem(X, Y, S, f)


def _failure(exc):
    return {"status": type(exc).__name__, "stage": exc.stage, "message": str(exc),
            "evidence": exc.evidence}


def cmd_pushoff(args):
    from .pushoff import pushoff
    problem = _load_problem(args)
    try:
        res = pushoff(problem, budget=args.budget, node_limit=args.node_limit)
    except Obstructed as exc:
        print(_compact(_failure(exc)))
        return EXIT_OBSTRUCTED
    except PushoffError as exc:
        print(_compact(_failure(exc)))
        return EXIT_FAIL
    if args.out:
        cio.dump_json(cio.output_map_to_json(res.h), args.out)
    if args.certificate:
        cio.dump_json(res.certificate.to_json(), args.certificate)
    print(_compact({"status": "OK", "stats": res.stats,
                    "vertices": len(res.h.source.vertices),
                    "moves": len(res.certificate.moves)}))
    return EXIT_OK


def cmd_check_hypotheses(args):
    from .pushoff import FAIL, check_hypotheses
    X = _load_complex(args.complex)
    Y = cio.read_json(args.subcomplex, cio.subcomplex_from_json, X)
    rep = check_hypotheses(X, Y, depth=args.depth, budget=args.budget)
    _emit(args, json.dumps(rep.to_json(), indent=None if args.compact else 2))
    return EXIT_FAIL if rep.verdict == FAIL else EXIT_OK


def cmd_verify_certificate(args):
    from .pushoff import PushoffCertificate, verify_certificate
    problem = _load_problem(args)
    B = barycentric_subdivision(problem.X).refined
    h = cio.read_json(args.h, cio.output_map_from_json, B)
    data = cio.load_json(args.certificate)
    try:
        cert = PushoffCertificate.from_json(data)
    except ValidationError as exc:
        raise SchemaError(str(exc), path=args.certificate) from None
    v = verify_certificate(problem.f, h, cert, problem)
    print(_compact({"valid": v.ok, "reason": v.reason, "moves": len(cert.moves)}))
    return EXIT_OK if v else EXIT_FAIL


def cmd_generate_problem(args):
    seed = args.seed
    if seed is None:
        seed = int(os.environ.get("CHARVAR_SEED", "0"))
    rng = seeded_rng(seed)
    surfaces = [args.surface] if args.surface else None
    problem, meta = random_problem(rng, surfaces=surfaces, depth=args.depth)
    data = cio.problem_to_json(problem)
    data["meta"] = {"seed": seed, **meta}
    _emit(args, json.dumps(data, indent=2))
    return EXIT_OK


# -- tables -------------------------------------------------------------

# header names say which quantity each column holds
TABLE_HEADERS = {
    "homotopy": ["family", "n", "r", "k", "pi_k(irreducible locus)", "pi_2(X_r)", "note"],
    "poincare": ["r", "P_t(X_r(SU(2)))", "degree", "duality mismatches"],
    "codim": ["family", "n", "r", "codim_C(reducible) >=", "codim_R(reducible) >=",
              "codim_C(singular)"],
}


def _homotopy_cell(cell):
    fam, n, r, k = cell
    ans = inv.pi_k_irr(fam, n, r, k)
    return [fam, str(n), str(r), str(k), str(ans), str(inv.pi2_full(fam, n, r)),
            ans.range_note]


def _poincare_cell(r):
    p = inv.poincare_su2(r)
    mism = "n/a" if r < 3 else ";".join(str(k) for k, _, _ in inv.duality_check(r).mismatches)
    return [str(r), str(p), str(p.degree), mism or "none"]


def _codim_cell(cell):
    fam, n, r = cell
    c = inv.codim_bounds(fam, n, r)
    return [fam, str(n), str(r), str(c["reducible_lower_complex"]),
            str(c["reducible_lower_real"]),
            "unknown" if c["singular"] is None else str(c["singular"])]


def _format_table(header, rows):
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h)
              for i, h in enumerate(header)]
    line = lambda cells: "  ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip()
    out = [line(header), line(["-" * w for w in widths])]
    out += [line(r) for r in rows]
    return "\n".join(out)


def _format_csv(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue().rstrip("\n")


def cmd_table(args):
    fams = [inv.family(f) for f in args.family]
    if args.kind == "homotopy":
        cells = [(f, n, r, k) for f in fams for n in args.n for r in args.r for k in args.k]
        fn = _homotopy_cell
    elif args.kind == "poincare":
        cells, fn = list(args.r), _poincare_cell
    else:
        cells = [(f, n, r) for f in fams for n in args.n for r in args.r]
        fn = _codim_cell
    if args.jobs > 1 and len(cells) > 1:
        with ProcessPoolExecutor(args.jobs) as ex:
            rows = list(ex.map(fn, cells, chunksize=max(1, len(cells) // (4 * args.jobs))))
    else:
        rows = [fn(c) for c in cells]
    header = TABLE_HEADERS[args.kind]
    fmt = _format_csv if args.format == "csv" else _format_table
    _emit(args, fmt(header, rows))
    return EXIT_OK


# -- parser -------------------------------------------------------------

def _positive(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def _problem_args(p):
    p.add_argument("--problem", help="bundle with complex, subcomplex, surface and map")
    p.add_argument("--complex")
    p.add_argument("--subcomplex")
    p.add_argument("--surface")
    p.add_argument("--map")


def build_parser():
    ap = _Parser(prog="charvar", description="Character variety invariants and "
                 "simplicial push-offs of surface maps.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)
    fam = dict(required=True, type=str.upper, choices=inv.FAMILIES)

    p = sub.add_parser("poincare", help="Poincare polynomial of X_r(SU(2))")
    p.add_argument("group", choices=["su2"])
    p.add_argument("--r", type=_positive, required=True)
    p.add_argument("--check-duality", action="store_true")
    p.add_argument("--method", choices=["rational", "series", "both"], default="both")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--json", dest="format", action="store_const", const="json")
    g.add_argument("--table", dest="format", action="store_const", const="table")
    p.add_argument("--output")
    p.set_defaults(func=cmd_poincare, format="text")

    p = sub.add_parser("homotopy", help="pi_k of the irreducible locus")
    p.add_argument("--family", **fam)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--r", type=_positive, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--full", action="store_true", help="include kind and range note")
    p.add_argument("--output")
    p.set_defaults(func=cmd_homotopy)

    p = sub.add_parser("pi1", help="fundamental group of X_r(G) or its irreducible locus")
    p.add_argument("--family", **fam)
    p.add_argument("--n", type=_positive, default=2)
    p.add_argument("--r", type=_positive, required=True)
    p.add_argument("--irr", action="store_true")
    p.add_argument("--output")
    p.set_defaults(func=cmd_pi1)

    p = sub.add_parser("codim", help="codimension bounds")
    p.add_argument("--family", **fam)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--r", type=_positive, required=True)
    p.add_argument("--dim-g", type=int)
    p.add_argument("--dim-pmax", type=int)
    p.add_argument("--output")
    p.set_defaults(func=cmd_codim)

    p = sub.add_parser("homology", help="integral homology of a complex")
    p.add_argument("--complex", required=True)
    p.add_argument("--json", action="store_true")
    p.add_argument("--output")
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("pi1-complex", help="edge-path presentation of pi_1")
    p.add_argument("--complex", required=True)
    p.add_argument("--basepoint")
    p.add_argument("--output")
    p.set_defaults(func=cmd_pi1_complex)

    p = sub.add_parser("pushoff", help="push a surface map off a subcomplex")
    _problem_args(p)
    p.add_argument("--budget", type=int, default=12)
    p.add_argument("--node-limit", type=_positive, default=20000)
    p.add_argument("--out", help="write h here")
    p.add_argument("--certificate", help="write the certificate here")
    p.set_defaults(func=cmd_pushoff)

    p = sub.add_parser("check-hypotheses", help="check the local push-off hypotheses")
    p.add_argument("--complex", required=True)
    p.add_argument("--subcomplex", required=True)
    p.add_argument("--depth", type=int, default=0)
    p.add_argument("--budget", type=int, default=6)
    p.add_argument("--compact", action="store_true")
    p.add_argument("--output")
    p.set_defaults(func=cmd_check_hypotheses)

    p = sub.add_parser("verify-certificate", help="replay a push-off certificate")
    _problem_args(p)
    p.add_argument("--h", required=True, help="push-off output")
    p.add_argument("--certificate", required=True)
    p.set_defaults(func=cmd_verify_certificate)

    p = sub.add_parser("table", help="batch tables as fixed-width text or CSV")
    p.add_argument("kind", choices=sorted(TABLE_HEADERS))
    p.add_argument("--family", nargs="+", default=list(inv.FAMILIES))
    p.add_argument("--n", type=_range, default=_range("2-3"))
    p.add_argument("--r", type=_range, default=_range("2-4"))
    p.add_argument("--k", type=_range, default=_range("2-6"))
    p.add_argument("--format", choices=["table", "csv"], default="table")
    p.add_argument("--jobs", type=_positive, default=1)
    p.add_argument("--output")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("generate-problem", help="random admissible push-off problem")
    p.add_argument("--seed", type=int, help="defaults to $CHARVAR_SEED, then 0")
    p.add_argument("--surface", choices=sorted(SURFACES))
    p.add_argument("--depth", type=int, default=0)
    p.add_argument("--output")
    p.set_defaults(func=cmd_generate_problem)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InternalError:
        raise
    except (CharvarError, OSError) as exc:
        print(f"charvar: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
