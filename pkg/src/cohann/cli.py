"""Command-line front end.

Exit codes: 0 success, 2 mathematical validation failure, 3 input syntax
failure, 4 non-stabilized result under ``--require-stable``.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from math import gcd

from .annihilator import RelationMissingError, cohomology_annihilator_catalog, ext2_annihilator, stable_annihilator
from .catalog import CatalogError, a_n_catalog, load_catalog
from .ideal import ideal_from_generators
from .invariants import SemigroupCurve, jacobian_ideal, milnor_number, semigroup_row, suspension_report
from .mf import MFFormatError, MFValidationError, branched_cover_ring, knorrer_cover, mf_from_json, mf_to_json
from .ring import PolynomialSyntaxError, UnknownVariableError, build_algebra, default_truncation, poly_parse

EXIT_OK, EXIT_INVALID, EXIT_SYNTAX, EXIT_UNSTABLE = 0, 2, 3, 4


class UsageError(Exception):
    pass


def _emit(args, obj, text):
    if args.format == "json":
        sys.stdout.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


def _truncation(args, polys):
    if args.trunc is not None:
        N = args.trunc
    elif os.environ.get("COHANN_TRUNC"):
        try:
            N = int(os.environ["COHANN_TRUNC"])
        except ValueError:
            raise UsageError("COHANN_TRUNC must be an integer") from None
    else:
        N = default_truncation(polys)
    if N < 2:
        raise UsageError("truncation must be >= 2")
    return N


def _vars_for(text, given):
    if given:
        return tuple(v.strip() for v in given.split(",") if v.strip())
    names = sorted(set(re.findall(r"[A-Za-z_][A-Za-z0-9_]*", text)))
    return tuple(names) or ("x",)


def _read_json(path):
    with open(path) as fh:
        return json.load(fh)


def _read_mf(path):
    return mf_from_json(_read_json(path))


def _ideal_text(ideal, title):
    gens = ", ".join(ideal.generator_strings()) or "0"
    flag = "stabilized" if ideal.stabilized else "NOT stabilized"
    return f"{title}: ({gens})\ncodimension: {ideal.dim_quotient}\ntruncation: {ideal.truncation} ({flag})"


def _finish_ideal(args, ideal, title):
    _emit(args, ideal.to_json(), _ideal_text(ideal, title))
    if args.require_stable and not ideal.stabilized:
        return EXIT_UNSTABLE
    return EXIT_OK


def cmd_sann(args):
    M = _read_mf(args.mf_file)
    N = _truncation(args, M.entries() + [M.f])
    alg = build_algebra(M.ambient, (M.f,), N)
    return _finish_ideal(args, stable_annihilator(M, alg), f"sann({M.label or 'M'})")


def cmd_ext2(args):
    M = _read_mf(args.mf_file)
    N = _truncation(args, M.entries() + [M.f])
    alg = build_algebra(M.ambient, (M.f,), N)
    return _finish_ideal(args, ext2_annihilator(M, alg), f"ann Ext^2({M.label or 'M'})")


def cmd_ca(args):
    if args.an is not None:
        cat = a_n_catalog(args.an)
    elif args.catalog:
        cat = load_catalog(args.catalog)
    else:
        raise UsageError("ca needs --an or --catalog")
    polys = [p for M in cat.entries for p in M.entries()] + [cat.f]
    N = _truncation(args, polys)
    alg = build_algebra(cat.vars, (cat.f,), N)
    ideal = cohomology_annihilator_catalog(cat.entries, alg)
    title = "ca" if cat.complete else "intersection of sann (partial catalog)"
    return _finish_ideal(args, ideal, title)


def cmd_knorrer(args):
    M = _read_mf(args.mf_file)
    cover = knorrer_cover(M, args.var)
    obj = mf_to_json(cover)
    if args.output:
        with open(args.output, "w") as fh:
            json.dump(obj, fh, indent=2, sort_keys=True)
            fh.write("\n")
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")
    return EXIT_OK


def cmd_cover(args):
    amb = _vars_for(args.f, args.vars)
    ring = branched_cover_ring(poly_parse(args.f, amb), args.m, args.var)
    obj = {"vars": list(ring.ambient), "f": str(ring.f), "m": ring.m, "cover": str(ring.cover)}
    _emit(args, obj, f"{ring.cover}")
    return EXIT_OK


def cmd_jacobian(args):
    amb = _vars_for(args.f, args.vars)
    parts = [str(p) for p in jacobian_ideal(poly_parse(args.f, amb))]
    _emit(args, {"vars": list(amb), "generators": parts}, "(" + ", ".join(parts) + ")")
    return EXIT_OK


def cmd_milnor(args):
    amb = _vars_for(args.f, args.vars)
    f = poly_parse(args.f, amb)
    N = _truncation(args, [f])
    mu = milnor_number(f, N)
    _emit(args, {"f": str(f), "mu": mu, "truncation": N, "stabilized": mu is not None},
          f"mu = {mu}" if mu is not None else f"not finite at N={N}")
    if mu is None and args.require_stable:
        return EXIT_UNSTABLE
    return EXIT_OK


def cmd_semigroup(args):
    if args.upto:
        pairs = [(a, b) for a in range(2, args.upto + 1) for b in range(a + 1, args.upto + 1) if gcd(a, b) == 1]
    else:
        if args.a is None or args.b is None:
            raise UsageError("semigroup needs A B or --upto")
        SemigroupCurve(args.a, args.b)
        pairs = [(args.a, args.b)]
    rows = [semigroup_row(a, b, args.trunc) for a, b in pairs]
    lines = ["a\tb\tgaps\tF\tdelta\tmu\tMJ"]
    for r in rows:
        gaps = ",".join(map(str, r["gaps"]))
        lines.append(f"{r['a']}\t{r['b']}\t{gaps}\t{r['frobenius']}\t{r['delta']}\t{r['mu']}\t"
                     f"{'holds' if r['mj_holds'] else 'fails'}")
    _emit(args, rows if args.upto else rows[0], "\n".join(lines))
    return EXIT_OK if all(r["mj_holds"] for r in rows) else EXIT_INVALID


def cmd_mj(args):
    rep = suspension_report(SemigroupCurve(args.a, args.b), args.l, args.trunc)
    text = (f"{rep.polynomial}\nmu = {rep.mu}, delta = {rep.delta}, r = {rep.r}\n"
            f"mu = 2*delta - r + 1: {'holds' if rep.mj_holds else 'fails'}")
    _emit(args, rep.to_json(), text)
    return EXIT_OK if rep.mj_holds else EXIT_INVALID


def cmd_validate_mf(args):
    M = _read_mf(args.mf_file)
    _emit(args, {"valid": True, "label": M.label, "size": M.n, "f": str(M.f)},
          f"valid {M.n}x{M.n} factorization of {M.f}")
    return EXIT_OK


def cmd_intersect(args):
    amb = tuple(v.strip() for v in args.vars.split(","))
    rels = tuple(poly_parse(r, amb) for r in args.relation)
    gens = [[poly_parse(g, amb) for g in _split_gens(s)] for s in args.ideal]
    N = _truncation(args, list(rels) + [g for gs in gens for g in gs])
    alg = build_algebra(amb, rels, N)
    ideals = [ideal_from_generators(gs, alg) for gs in gens]
    out = ideals[0]
    for J in ideals[1:]:
        out = out & J
    obj = out.to_json()
    obj["stabilized"] = False
    text = f"intersection: ({', '.join(out.generator_strings())})\ncodimension: {out.dim_quotient}\ntruncation: {N}"
    if args.compare:
        target = ideal_from_generators([poly_parse(g, amb) for g in _split_gens(args.compare)], alg)
        obj["equals_compare"] = target == out
        text += f"\nequals ({args.compare}): {target == out}"
    _emit(args, obj, text)
    if args.compare and not obj["equals_compare"]:
        return EXIT_INVALID
    return EXIT_OK


def _split_gens(s):
    return [g for g in (t.strip() for t in s.split(",")) if g]


def cmd_verify(args):
    from .verify import run_suite

    results = run_suite(args.suite, seed=args.seed)
    lines = [f"{'PASS' if ok else 'FAIL'}  {name}" for name, ok in results]
    passed = sum(ok for _, ok in results)
    lines.append(f"{passed}/{len(results)} passed")
    _emit(args, {"suite": args.suite, "results": dict(results), "passed": passed, "total": len(results)},
          "\n".join(lines))
    return EXIT_OK if passed == len(results) else EXIT_INVALID


def _positive(s):
    v = int(s)
    if v < 2:
        raise argparse.ArgumentTypeError("truncation must be >= 2")
    return v


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--trunc", type=_positive, default=None, metavar="N",
                        help="truncation order (default: COHANN_TRUNC or 2*maxdeg+4)")
    common.add_argument("--require-stable", action="store_true",
                        help="exit 4 when the result did not stabilize from N to N+2")

    p = argparse.ArgumentParser(prog="cohann", description="Cohomology annihilators of hypersurface singularities.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("sann", parents=[common], help="stable annihilator of an MF file")
    s.add_argument("mf_file")
    s.set_defaults(func=cmd_sann)

    s = sub.add_parser("ext2", parents=[common], help="annihilator of Ext^2(M, M)")
    s.add_argument("mf_file")
    s.set_defaults(func=cmd_ext2)

    s = sub.add_parser("ca", parents=[common], help="cohomology annihilator over a catalog")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--an", type=int, metavar="n")
    g.add_argument("--catalog", metavar="PATH")
    s.set_defaults(func=cmd_ca)

    s = sub.add_parser("knorrer", parents=[common], help="Knörrer cover of an MF file")
    s.add_argument("mf_file")
    s.add_argument("--var", default="z")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_knorrer)

    s = sub.add_parser("cover", parents=[common], help="m-branched cover polynomial f + y^m")
    s.add_argument("f")
    s.add_argument("--m", type=int, default=2)
    s.add_argument("--var", default="z")
    s.add_argument("--vars")
    s.set_defaults(func=cmd_cover)

    s = sub.add_parser("jacobian", parents=[common], help="partial derivatives of f")
    s.add_argument("f")
    s.add_argument("--vars")
    s.set_defaults(func=cmd_jacobian)

    s = sub.add_parser("milnor", parents=[common], help="Milnor number of f")
    s.add_argument("f")
    s.add_argument("--vars")
    s.set_defaults(func=cmd_milnor)

    s = sub.add_parser("semigroup", parents=[common], help="semigroup invariants of x^a + y^b")
    s.add_argument("a", type=int, nargs="?")
    s.add_argument("b", type=int, nargs="?")
    s.add_argument("--upto", type=int, help="all coprime 2 <= a < b <= UPTO")
    s.set_defaults(func=cmd_semigroup)

    s = sub.add_parser("mj", parents=[common], help="Milnor-Jung check for x^a + y^b + z_1^2 + ... + z_l^2")
    s.add_argument("a", type=int)
    s.add_argument("b", type=int)
    s.add_argument("--l", type=int, default=0)
    s.set_defaults(func=cmd_mj)

    s = sub.add_parser("validate-mf", parents=[common], help="check AB = BA = f I")
    s.add_argument("mf_file")
    s.set_defaults(func=cmd_validate_mf)

    s = sub.add_parser("intersect", parents=[common], help="intersect ideals in a truncated algebra")
    s.add_argument("--vars", required=True)
    s.add_argument("--relation", action="append", default=[])
    s.add_argument("--ideal", action="append", required=True, help="comma-separated generators")
    s.add_argument("--compare", help="comma-separated generators to compare against")
    s.set_defaults(func=cmd_intersect)

    s = sub.add_parser("verify", parents=[common], help="run a built-in check suite")
    s.add_argument("--suite", choices=("golden", "properties"), default="golden")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except (PolynomialSyntaxError, UnknownVariableError, MFFormatError, json.JSONDecodeError) as exc:
        print(f"cohann: syntax error: {exc}", file=sys.stderr)
        return EXIT_SYNTAX
    except (MFValidationError, RelationMissingError, CatalogError, ValueError, ArithmeticError) as exc:
        print(f"cohann: validation failed: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"cohann: {exc}", file=sys.stderr)
        return EXIT_SYNTAX


if __name__ == "__main__":
    sys.exit(main())
