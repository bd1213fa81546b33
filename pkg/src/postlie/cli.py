"""Command-line front end.

Exit codes: 0 success, 2 unreadable or malformed input, 3 precondition
violated, 4 a requested check failed, 5 search parameter cap exceeded.

Wherever an algebra is expected, either an LAJ file path or a catalog
algebra name (``gl2``, ``n3+abelian1``, ``sl3-table`` ...) is accepted.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from . import catalog, laj
from . import exactla as la
from .errors import ParameterCapExceeded, ParseError, PostLieError, PreconditionError, UnknownFixtureError
from .exactla import Matrix, format_rational
from .liealg import (
    LieAlgebra,
    check_jacobi,
    classify,
    direct_sum,
    exp_ad,
    nilradical,
    radical,
    semidirect,
)
from .solver import Ansatz, NOT_A_PROOF, nonexistence_report, search_postlie, search_rb
from .structures import (
    BilinearProduct,
    LiePair,
    check_postlie,
    check_prelie,
    check_rota_baxter,
    induced_g,
    inner_product_from_map,
    postlie_to_prelie,
    rb_from_subalgebra_pair,
)

EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, EXIT_CHECK_FAILED, EXIT_CAP = 0, 2, 3, 4, 5


class CheckFailed(Exception):
    """A verification command ran cleanly but the property does not hold."""


# -- input resolution ------------------------------------------------------------------


def load_algebra(spec: str) -> LieAlgebra:
    if Path(spec).is_file():
        return laj.load_algebra(spec)
    try:
        return catalog.algebra(spec)
    except UnknownFixtureError:
        raise ParseError(f"{spec!r} is neither an LAJ file nor a known algebra name") from None


def load_product(path: str, alg: LieAlgebra, other: LieAlgebra | None = None) -> BilinearProduct:
    doc = laj.read_document(path)
    _, basis, prod = laj.parse_product(doc)
    allowed = [list(alg.basis)] + ([list(other.basis)] if other is not None else [])
    if basis not in allowed:
        raise ParseError(f"product basis {basis} does not match the algebra basis {list(alg.basis)}")
    return prod


def load_matrix(path: str, alg: LieAlgebra) -> Matrix:
    return laj.parse_matrix(laj.read_document(path), alg.basis)[2]


def _ansatz(args, target: str, basis) -> Ansatz:
    support = None
    if args.support_mask:
        support = laj.parse_support(laj.read_document(args.support_mask), basis, target)
    dens = tuple(int(d) for d in args.denominators.split(",") if d.strip())
    return Ansatz(args.bound, dens, args.max_solutions, args.param_cap, support)


def _emit(doc: dict, out: str | None) -> None:
    if out:
        laj.write_document(doc, out)
        print(f"wrote {out}")
    else:
        sys.stdout.write(laj.dumps(doc))


def _span_text(space, basis) -> str:
    return "<" + ", ".join(laj.format_combination(v, basis) for v in space.basis) + ">"


def _product_lines(prod: BilinearProduct, basis) -> list[str]:
    return [f"  {basis[i]}.{basis[j]} = {laj.format_combination(v, basis)}"
            for (i, j), v in sorted(prod.entries().items())] or ["  (zero product)"]


def _location(g_spec: str, n_spec: str) -> str | None:
    """Provenance of a rigidity spot-check pair named on the command line, if any."""
    for g_name, n_name, anchor in catalog._metadata()["rigidity-spot-checks"]["pairs"]:
        if (g_name, n_name) == (g_spec, n_spec):
            return anchor
    return None


# -- commands ---------------------------------------------------------------------------


def cmd_info(args) -> None:
    g = load_algebra(args.algebra)
    fp = classify(g)
    print(f"algebra: {g.name} (dim {g.dim})")
    print(f"basis: {' '.join(g.basis)}")
    for key, value in fp.as_dict().items():
        print(f"{key}: {value}")
    print(f"radical: {_span_text(radical(g), g.basis)}")
    print(f"nilradical: {_span_text(nilradical(g), g.basis)}")


def cmd_check_jacobi(args) -> None:
    g = load_algebra(args.algebra)
    rep = check_jacobi(g)
    if rep.ok:
        print(f"jacobi: PASS ({g.name})")
        return
    i, j, k = rep.witness
    print(f"jacobi: FAIL on ({g.basis[i]}, {g.basis[j]}, {g.basis[k]})")
    raise CheckFailed


def _print_axioms(report, basis) -> None:
    names = {"eq1": "difference", "eq2": "representation", "eq3": "derivation"}
    for key, label in names.items():
        ok = getattr(report, f"{key}_ok")
        line = f"{key} ({label}): {'PASS' if ok else 'FAIL'}"
        if not ok:
            line += " at (" + ", ".join(basis[t] for t in report.witnesses[key]) + ")"
        print(line)


def cmd_check_postlie(args) -> None:
    g, n = load_algebra(args.g), load_algebra(args.n)
    pair = LiePair(g, n)
    prod = load_product(args.prod, n, g)
    rep = check_postlie(pair, prod)
    _print_axioms(rep, n.basis)
    if not rep.ok:
        raise CheckFailed


def cmd_check_prelie(args) -> None:
    g = load_algebra(args.g)
    prod = load_product(args.prod, g)
    rep = check_prelie(g, prod)
    _print_axioms(rep, g.basis)
    if not rep.ok:
        raise CheckFailed


def cmd_check_rb(args) -> None:
    n = load_algebra(args.n)
    r = load_matrix(args.op, n)
    weight = la.parse_rational(args.weight)
    rep = check_rota_baxter(n, r, weight)
    if rep.ok:
        print(f"rota-baxter (weight {format_rational(weight)}): PASS")
        return
    i, j = rep.witness
    print(f"rota-baxter (weight {format_rational(weight)}): FAIL on ({n.basis[i]}, {n.basis[j]})")
    raise CheckFailed


def cmd_build_direct_sum(args) -> None:
    a, b = load_algebra(args.a), load_algebra(args.b)
    _emit(laj.emit_algebra(direct_sum(a, b, args.name)), args.output)


def cmd_build_semidirect(args) -> None:
    """``acting ⋉ base``; the action file maps acting labels to matrices on base."""
    base, acting = load_algebra(args.base), load_algebra(args.acting)
    doc = laj.read_document(args.action)
    _, basis = laj._header(doc)
    if list(basis) != list(base.basis):
        raise ParseError(f"action basis {basis} does not match {list(base.basis)}")
    maps = doc.get("action")
    if not isinstance(maps, dict) or set(maps) != set(acting.basis):
        raise ParseError(f"action must give one matrix for each of {list(acting.basis)}")
    action = [laj.parse_matrix({"basis": basis, "matrix": maps[label]})[2] for label in acting.basis]
    _emit(laj.emit_algebra(semidirect(acting, base, action, args.name)), args.output)


def cmd_build_rb_induced(args) -> None:
    n = load_algebra(args.n)
    r = load_matrix(args.op, n)
    prod = inner_product_from_map(n, r)
    g, jac = induced_g(n, prod, args.name or "g")
    if not check_rota_baxter(n, r, 1).ok:
        print("warning: operator is not Rota-Baxter of weight 1", file=sys.stderr)
    if not jac.ok:
        print("warning: induced bracket fails Jacobi", file=sys.stderr)
    if args.prod_out:
        laj.write_document(laj.emit_product(prod, n.basis, "product"), args.prod_out)
        print(f"wrote {args.prod_out}")
    _emit(laj.emit_algebra(g), args.output)


def cmd_build_from_pair(args) -> None:
    n = load_algebra(args.n)
    n1, n2 = laj.parse_span(args.n1, n.basis), laj.parse_span(args.n2, n.basis)
    r = rb_from_subalgebra_pair(n, n1, n2)
    _emit(laj.emit_matrix(r, n.basis, "R"), args.output)


def cmd_build_exp_ad(args) -> None:
    g = load_algebra(args.g)
    z = laj.parse_combination(args.z, g.basis)
    _emit(laj.emit_matrix(exp_ad(g, z), g.basis, "exp_ad"), args.output)


def cmd_transform_prelie(args) -> None:
    g, n = load_algebra(args.g), load_algebra(args.n)
    prod = load_product(args.prod, n, g)
    out = postlie_to_prelie(LiePair(g, n), prod)
    _emit(laj.emit_product(out, n.basis, "prelie"), args.output)


def cmd_search_postlie(args) -> None:
    g, n = load_algebra(args.g), load_algebra(args.n)
    pair = LiePair(g, n)
    result = search_postlie(pair, _ansatz(args, "product", n.basis), args.workers)
    print(f"pair ({g.name}, {n.name}): {result.n_params} free parameters, "
          f"{len(result)} solutions, exhausted={result.exhausted}")
    for k, sol in enumerate(result.solutions, start=1):
        fp = sol.fingerprint
        print(f"solution {k}: induced g center {fp.dim_center}, derived {list(fp.derived_series_dims)}, "
              f"solvable={fp.is_solvable}")
        if not args.quiet:
            print("\n".join(_product_lines(sol.product, n.basis)))
        if args.output_dir:
            out = Path(args.output_dir)
            out.mkdir(parents=True, exist_ok=True)
            laj.write_document(laj.emit_product(sol.product, n.basis, f"solution-{k}"),
                               out / f"solution_{k:04d}.lajp")
    if not result.solutions:
        print(NOT_A_PROOF if result.n_params else "no solutions")


def cmd_search_rb(args) -> None:
    n = load_algebra(args.n)
    weight = la.parse_rational(args.weight)
    sols = search_rb(n, _ansatz(args, "operator", n.basis), args.workers, weight)
    print(f"{n.name}: {len(sols)} Rota-Baxter operators of weight {format_rational(weight)} on the grid")
    for k, sol in enumerate(sols, start=1):
        fp = sol.fingerprint
        print(f"operator {k}: induced g center {fp.dim_center}, derived {list(fp.derived_series_dims)}")
        if not args.quiet:
            for row in sol.operator.entries:
                print("  [" + " ".join(format_rational(a) for a in row) + "]")


def cmd_report_nonexistence(args) -> None:
    g, n = load_algebra(args.g), load_algebra(args.n)
    rep = nonexistence_report(LiePair(g, n), _ansatz(args, "product", n.basis), args.workers)
    anchor = _location(args.g, args.n)
    print(f"pair ({g.name}, {n.name}): {rep.label}" + (f"  [{anchor}]" if anchor else ""))
    print(f"free parameters after linear stage: {rep.n_params}; grid exhausted: {rep.exhausted}")
    if rep.caveat:
        print(rep.caveat)
    if rep.witness is not None:
        print("witness:")
        print("\n".join(_product_lines(rep.witness, n.basis)))


def cmd_catalog_list(args) -> None:
    for name in catalog.names():
        meta = catalog._metadata().get(name)
        print(f"{name}  [{meta['anchor']}]" if meta else name)


def cmd_catalog_emit(args) -> None:
    for path in catalog.emit(args.name, args.output):
        print(f"wrote {path}")


def cmd_verify_fixtures(args) -> None:
    failures = 0

    def show(r: catalog.CheckResult) -> None:
        nonlocal failures
        failures += not r.passed
        status = "PASS" if r.passed else "FAIL"
        line = f"{status}  {r.provenance:<40}  {r.fixture:<24}  {r.check}"
        if r.detail and (args.verbose or not r.passed):
            line += f"  ({r.detail})"
        print(line, flush=True)

    results = catalog.verify_all(show)
    print(f"{len(results) - failures}/{len(results)} checks passed")
    if failures:
        raise CheckFailed


# -- parser -----------------------------------------------------------------------------


def _add_ansatz_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--bound", type=int, default=1, help="coefficient bound B (default 1)")
    p.add_argument("--denominators", default="1,2", help="comma-separated denominators (default 1,2)")
    p.add_argument("--max-solutions", type=int, default=Ansatz.max_solutions)
    p.add_argument("--param-cap", type=int, default=Ansatz.parameter_cap)
    p.add_argument("--support-mask", help="mask file, or an LAJ-P/LAJ-M file whose nonzero pattern is used")
    p.add_argument("--workers", type=int, default=None, help="worker processes (default: THREADS or 1)")
    p.add_argument("-q", "--quiet", action="store_true", help="omit per-solution entries")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="postlie", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", help="fingerprint report of an algebra")
    p.add_argument("algebra")
    p.set_defaults(func=cmd_info)

    check = sub.add_parser("check", help="verify identities").add_subparsers(dest="what", required=True)
    p = check.add_parser("jacobi")
    p.add_argument("algebra")
    p.set_defaults(func=cmd_check_jacobi)
    p = check.add_parser("postlie")
    p.add_argument("--g", required=True)
    p.add_argument("--n", required=True)
    p.add_argument("--prod", required=True)
    p.set_defaults(func=cmd_check_postlie)
    p = check.add_parser("prelie")
    p.add_argument("--g", required=True)
    p.add_argument("--prod", required=True)
    p.set_defaults(func=cmd_check_prelie)
    p = check.add_parser("rb")
    p.add_argument("--n", required=True)
    p.add_argument("--op", required=True)
    p.add_argument("--weight", default="1")
    p.set_defaults(func=cmd_check_rb)

    build = sub.add_parser("build", help="construct algebras and maps").add_subparsers(dest="what", required=True)
    p = build.add_parser("direct-sum")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--name")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_build_direct_sum)
    p = build.add_parser("semidirect")
    p.add_argument("--base", required=True, help="the ideal being acted on")
    p.add_argument("--acting", required=True)
    p.add_argument("--action", required=True, help='JSON {"basis": [...], "action": {label: grid}}')
    p.add_argument("--name")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_build_semidirect)
    p = build.add_parser("rb-induced")
    p.add_argument("--n", required=True)
    p.add_argument("--op", required=True)
    p.add_argument("--name")
    p.add_argument("--prod-out", help="also write the product x.y = {R(x), y}")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_build_rb_induced)
    p = build.add_parser("from-pair")
    p.add_argument("--n", required=True)
    p.add_argument("--n1", required=True, help='span such as "e1, e3, e4, e6"')
    p.add_argument("--n2", required=True, help='span such as "e2, e3+e5"')
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_build_from_pair)
    p = build.add_parser("exp-ad")
    p.add_argument("--g", required=True)
    p.add_argument("--z", required=True, help='vector such as "v1" or "0,0,0,1,0"')
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_build_exp_ad)

    transform = sub.add_parser("transform", help="product transforms").add_subparsers(dest="what", required=True)
    p = transform.add_parser("prelie", help="x∘y = ½{x,y} + x·y for 2-step nilpotent n")
    p.add_argument("--g", required=True)
    p.add_argument("--n", required=True)
    p.add_argument("--prod", required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_transform_prelie)

    search = sub.add_parser("search", help="grid search").add_subparsers(dest="what", required=True)
    p = search.add_parser("postlie")
    p.add_argument("--g", required=True)
    p.add_argument("--n", required=True)
    p.add_argument("--output-dir", help="write each solution as an LAJ-P file")
    _add_ansatz_flags(p)
    p.set_defaults(func=cmd_search_postlie)
    p = search.add_parser("rb")
    p.add_argument("--n", required=True)
    p.add_argument("--weight", default="1")
    _add_ansatz_flags(p)
    p.set_defaults(func=cmd_search_rb)

    report = sub.add_parser("report", help="existence reports").add_subparsers(dest="what", required=True)
    p = report.add_parser("nonexistence")
    p.add_argument("--g", required=True)
    p.add_argument("--n", required=True)
    _add_ansatz_flags(p)
    p.set_defaults(func=cmd_report_nonexistence)

    cat = sub.add_parser("catalog", help="named fixtures").add_subparsers(dest="what", required=True)
    p = cat.add_parser("list")
    p.set_defaults(func=cmd_catalog_list)
    p = cat.add_parser("emit")
    p.add_argument("name")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_catalog_emit)

    verify = sub.add_parser("paper", help="fixture verification suite").add_subparsers(dest="what", required=True)
    p = verify.add_parser("verify", help="run every fixture check and print a PASS/FAIL table")
    p.add_argument("-v", "--verbose", action="store_true")
    p.set_defaults(func=cmd_verify_fixtures)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except CheckFailed:
        return EXIT_CHECK_FAILED
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except UnknownFixtureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except ParameterCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except PostLieError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
