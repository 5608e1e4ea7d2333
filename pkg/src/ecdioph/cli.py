"""Command line front end: solve, curve, reduce, search, isogeny, verify, table, families."""
import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__
from .curve import CurveQ, SingularCurve
from .exactnum import fmt_rational, parse_rational
from .isogeny import four_isogeny_at, three_isogeny_at, two_isogeny_at
from .problems import REGISTRY, SingularParameter, get_family, instance, solve, verify
from .problems.base import FamilyInstance, SolutionRecord
from .quartic import QuarticModel, reduce_monic, reduce_with_point
from .search import SearchBudget, descent_search, naive_search
from .torsion import torsion_subgroup


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    family: str = None
    params: dict = field(default_factory=dict)
    bound: int = 100
    isogenies: bool = True
    enumerate: int = 1
    workers: int = 1
    output: str = "text"
    cache: str = None


# -- formatting ------------------------------------------------------------------


def fr(q):
    return fmt_rational(Fraction(q))


def fmt_point(P):
    return None if P is None else [fr(P[0]), fr(P[1])]


def record_json(rec):
    return {
        "tuple": [fr(v) for v in rec.solution],
        "point": fmt_point(rec.point),
        "provenance": rec.provenance,
        "verified": rec.verified,
        "filter_status": rec.filter_status,
    }


def result_json(inst, records, status):
    return {
        "family": inst.family,
        "params": {k: fr(v) for k, v in inst.params},
        "solutions": [record_json(r) for r in records],
        "status": status,
    }


def _rationals(text, what):
    try:
        return [parse_rational(s) for s in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"malformed {what}: {text!r}") from None


def _rational(text, what):
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"malformed {what}: {text!r}") from None


# -- cache -----------------------------------------------------------------------


def cache_append(path, records):
    with open(path, "a", encoding="utf-8") as fh:
        for rec in records:
            row = {
                "family": rec.family,
                "params": {k: fr(v) for k, v in rec.params},
                "record": record_json(rec),
                "timestamp": time.strftime("%Y-%m-%dT%H:%M:%S"),
                "version": __version__,
            }
            fh.write(json.dumps(row, sort_keys=True) + "\n")


def _record_from_row(row):
    fam = get_family(row["family"])
    params = tuple((k, parse_rational(row["params"][k])) for k in fam.params)
    r = row["record"]
    sol = tuple(parse_rational(v) for v in r["tuple"])
    pt = None if r["point"] is None else tuple(parse_rational(v) for v in r["point"])
    inst = FamilyInstance(row["family"], params)
    ok = verify(inst, sol)
    return SolutionRecord(row["family"], params, sol, pt, ok, r.get("filter_status", "ok"), r["provenance"], fam.fields)


def cache_query(path, family=None, params=None):
    """(records, warnings): verified records matching the filter; bad or tampered lines are skipped."""
    out, warnings = [], 0
    try:
        fh = open(path, encoding="utf-8")
    except FileNotFoundError:
        return [], 0
    with fh:
        for line in fh:
            if not line.strip():
                continue
            try:
                rec = _record_from_row(json.loads(line))
            except (ValueError, KeyError, TypeError, ZeroDivisionError):
                warnings += 1
                continue
            if not rec.verified:
                warnings += 1
                continue
            if family and rec.family != family:
                continue
            if params is not None and rec.params != params:
                continue
            out.append(rec)
    return out, warnings


# -- family parameters -------------------------------------------------------------


def _family_instance(name, extra):
    if name not in REGISTRY:
        raise UsageError(f"unknown family {name!r}; try 'ecdioph families'")
    fam = get_family(name)
    vals = {}
    it = iter(extra)
    for tok in it:
        if not tok.startswith("--"):
            raise UsageError(f"unexpected argument {tok!r}")
        key = tok[2:]
        if "=" in key:
            key, val = key.split("=", 1)
        else:
            val = next(it, None)
            if val is None:
                raise UsageError(f"missing value for --{key}")
        if key not in fam.params:
            raise UsageError(f"{name} takes parameters {', '.join(fam.params)}; got --{key}")
        vals[key] = _rational(val, f"parameter {key}")
    missing = [k for k in fam.params if k not in vals]
    if missing:
        raise UsageError(f"{name} needs --{' --'.join(missing)}")
    try:
        return instance(name, **vals)
    except SingularParameter as exc:
        raise UsageError(str(exc)) from None


# -- subcommands -------------------------------------------------------------------


def _budget(args):
    return SearchBudget(max_uv=args.bound, max_param=args.bound, worker_count=args.workers)


def cmd_solve(args, extra, out):
    inst = _family_instance(args.family, extra)
    res = solve(inst, _budget(args), use_isogenies=args.isogenies, enumerate_L=args.enumerate)
    records = list(res.records)
    warnings = 0
    if args.cache:
        cached, warnings = cache_query(args.cache, inst.family, inst.params)
        fam = get_family(inst.family)
        keys = {r.solution for r in records}
        merged = records + [r for r in cached if fam.key(r.solution, inst.p) not in keys]
        new = [r for r in records if r.solution not in {c.solution for c in cached}]
        cache_append(args.cache, new)
        records = merged
    status = "ok" if records else res.status
    if args.json:
        data = result_json(inst, records, status)
        if res.near_misses:
            data["near_misses"] = [record_json(r) for r in res.near_misses]
        out.write(json.dumps(data, indent=2) + "\n")
    else:
        out.write(f"{inst.family} {inst.label()}: {status}\n")
        for r in records:
            named = ", ".join(f"{k}={fr(v)}" for k, v in zip(r.fields, r.solution))
            out.write(f"  {named}  [{r.provenance}, {r.filter_status}]\n")
        for r in res.near_misses:
            out.write(f"  near miss: {', '.join(fr(v) for v in r.solution)}  [{r.filter_status}]\n")
    if warnings:
        print(f"warning: skipped {warnings} cache line(s) that failed to parse or re-verify", file=sys.stderr)
    return 0 if records else 1


def _curve_report(E):
    tors = torsion_subgroup(E)
    return {
        "curve": str(E),
        "coefficients": [fr(c) for c in E.coeffs],
        "discriminant": fr(E.discriminant),
        "torsion": tors.structure,
        "torsion_points": [fmt_point(P) for P in tors.points],
        "components": E.real_components(),
    }


def _write_report(rep, as_json, out):
    if as_json:
        out.write(json.dumps(rep, indent=2) + "\n")
        return
    for k, v in rep.items():
        out.write(f"{k}: {v}\n")


def cmd_curve(args, extra, out):
    inst = _family_instance(args.family, extra)
    fam = get_family(inst.family)
    if not fam.has_curve:
        raise UsageError(f"{inst.family} has no elliptic curve")
    rep = {"family": inst.family, "params": {k: fr(v) for k, v in inst.params}}
    rep.update(_curve_report(fam.curve(inst.p)))
    rep["expected_torsion"] = fam.meta.torsion
    _write_report(rep, args.json, out)
    return 0


def _parse_curve(text):
    vals = _rationals(text, "curve")
    if len(vals) != 3:
        raise UsageError("--curve needs a2,a4,a6")
    E = CurveQ(*vals)
    if E.is_singular:
        raise UsageError(f"{E} is singular")
    return E


def cmd_reduce(args, extra, out):
    coeffs = _rationals(args.quartic, "quartic")
    if len(coeffs) != 5:
        raise UsageError("--quartic needs a,b,c,d,e")
    point = tuple(_rationals(args.point, "point")) if args.point else None
    try:
        q = QuarticModel(*coeffs, known_point=point)
        if point is not None:
            E, bmap = reduce_with_point(q)
            builtin = []
        else:
            E, bmap, builtin = reduce_monic(q)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rep = {"quartic": str(q), "curve": str(E), "coefficients": [fr(c) for c in E.coeffs]}
    rep["builtin_points"] = [fmt_point(P) for P in builtin]
    rep["maps"] = bmap.describe()
    _write_report(rep, args.json, out)
    return 0


def cmd_search(args, extra, out):
    E = _parse_curve(args.curve)
    budget = _budget(args)
    try:
        pts = descent_search(E, budget) if args.descent else naive_search(E, budget)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.json:
        out.write(json.dumps({"curve": str(E), "points": [fmt_point(P) for P in pts]}, indent=2) + "\n")
    else:
        out.write(f"{E}: {len(pts)} point(s)\n")
        for P in pts:
            out.write(f"  ({fr(P[0])}, {fr(P[1])})\n")
    return 0


def cmd_isogeny(args, extra, out):
    E = _parse_curve(args.curve)
    tors = torsion_subgroup(E)
    kernel = [P for P in tors.points if tors.orders.get(P) == args.degree]
    if not kernel:
        raise UsageError(f"{E} has no rational point of order {args.degree}")
    build = {2: two_isogeny_at, 3: three_isogeny_at, 4: four_isogeny_at}[args.degree]
    maps = []
    for P in kernel:
        imap = build(E, P)
        maps.append({"kernel": fmt_point(P), "target": str(imap.target),
                     "coefficients": [fr(c) for c in imap.target.coeffs], "maps": imap.describe()})
    _write_report({"curve": str(E), "isogenies": maps}, args.json, out)
    return 0


def cmd_verify(args, extra, out):
    inst = _family_instance(args.family, extra)
    sol = _rationals(args.solution, "solution")
    fam = get_family(inst.family)
    if len(sol) != len(fam.fields):
        raise UsageError(f"{inst.family} solutions have {len(fam.fields)} entries ({', '.join(fam.fields)})")
    ok = verify(inst, sol)
    if args.json:
        out.write(json.dumps({"family": inst.family, "params": {k: fr(v) for k, v in inst.params},
                              "tuple": [fr(v) for v in sol], "verified": ok}) + "\n")
    else:
        out.write(f"verified={'true' if ok else 'false'}\n")
    return 0 if ok else 1


def _parse_range(text):
    try:
        lo, hi = text.split("..")
        return int(lo), int(hi)
    except ValueError:
        raise UsageError(f"malformed range {text!r}; use N1..N2") from None


def cmd_table(args, extra, out):
    if args.family not in REGISTRY:
        raise UsageError(f"unknown family {args.family!r}")
    fam = get_family(args.family)
    lo, hi = _parse_range(args.range)
    first = fam.params[0]
    rows = []
    for v in range(lo, hi + 1):
        try:
            inst = _family_instance(args.family, extra + [f"--{first}", str(v)])
        except UsageError:
            rows.append((v, None, "singular"))
            continue
        res = solve(inst, _budget(args), use_isogenies=args.isogenies, enumerate_L=args.enumerate)
        rows.append((v, res.records[0] if res.records else None, res.status))
    if args.json:
        data = [{first: v, "tuple": [fr(x) for x in r.solution] if r else None, "status": s} for v, r, s in rows]
        out.write(json.dumps({"family": args.family, "rows": data}, indent=2) + "\n")
        return 0
    out.write(" & ".join((first,) + fam.fields) + "\n")
    for v, r, s in rows:
        cells = [fr(x) for x in r.solution] if r else [s]
        out.write(" & ".join([str(v)] + cells) + "\n")
    return 0


def cmd_families(args, extra, out):
    if args.json:
        data = {n: {"params": list(REGISTRY[n].params), "fields": list(REGISTRY[n].fields),
                    "description": REGISTRY[n].description} for n in sorted(REGISTRY)}
        out.write(json.dumps(data, indent=2) + "\n")
        return 0
    for name in sorted(REGISTRY):
        fam = REGISTRY[name]
        out.write(f"{name}({', '.join(fam.params)}) -> ({', '.join(fam.fields)}): {fam.description}\n")
    return 0


def build_parser():
    ap = argparse.ArgumentParser(prog="ecdioph", description="Exact elliptic-curve Diophantine toolkit")
    sub = ap.add_subparsers(dest="subcommand", required=True)

    def common(p, fam=True):
        if fam:
            p.add_argument("family")
        p.add_argument("--bound", type=int, default=100)
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--format", choices=("text", "json"))
        p.add_argument("--json", dest="format", action="store_const", const="json")
        return p

    p = common(sub.add_parser("solve", help="find verified solutions for one instance"))
    p.add_argument("--isogenies", dest="isogenies", action="store_true", default=True)
    p.add_argument("--no-isogenies", dest="isogenies", action="store_false")
    p.add_argument("--enumerate", type=int, default=1)
    p.add_argument("--cache")
    p.set_defaults(fn=cmd_solve)

    p = common(sub.add_parser("curve", help="curve model, discriminant, torsion, components"))
    p.set_defaults(fn=cmd_curve)

    p = common(sub.add_parser("reduce", help="quartic to Weierstrass model"), fam=False)
    p.add_argument("--quartic", required=True)
    p.add_argument("--point")
    p.set_defaults(fn=cmd_reduce)

    p = common(sub.add_parser("search", help="rational point search"), fam=False)
    p.add_argument("--curve", required=True)
    p.add_argument("--descent", action="store_true")
    p.set_defaults(fn=cmd_search)

    p = common(sub.add_parser("isogeny", help="isogenies from rational torsion"), fam=False)
    p.add_argument("--curve", required=True)
    p.add_argument("--degree", type=int, choices=(2, 3, 4), required=True)
    p.set_defaults(fn=cmd_isogeny)

    p = common(sub.add_parser("verify", help="check a tuple against the original equation"))
    p.add_argument("--solution", required=True)
    p.set_defaults(fn=cmd_verify)

    p = common(sub.add_parser("table", help="first solution for each N in a range"))
    p.add_argument("--range", required=True)
    p.add_argument("--isogenies", dest="isogenies", action="store_true", default=True)
    p.add_argument("--no-isogenies", dest="isogenies", action="store_false")
    p.add_argument("--enumerate", type=int, default=1)
    p.set_defaults(fn=cmd_table)

    p = sub.add_parser("families", help="list the registered families")
    p.add_argument("--format", choices=("text", "json"))
    p.add_argument("--json", dest="format", action="store_const", const="json")
    p.set_defaults(fn=cmd_families)
    return ap


def run(argv, out=None):
    out = out or sys.stdout
    ap = build_parser()
    try:
        args, extra = ap.parse_known_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if extra and args.subcommand not in ("solve", "curve", "verify", "table"):
        print(f"error: unrecognized arguments: {' '.join(extra)}", file=sys.stderr)
        return 2
    if args.format is None:
        # solve reports machine-readable results by default
        args.format = "json" if args.subcommand == "solve" else "text"
    args.json = args.format == "json"
    try:
        return args.fn(args, extra, out)
    except (UsageError, SingularCurve) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main(argv=None):
    sys.exit(run(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
