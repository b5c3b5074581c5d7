"""Command-line front end.

    operad-gb gb     --preset pa --parity even --arity-bound 15
    operad-gb dims   --preset pa --parity odd --n-max 13 [--list]
    operad-gb reduce --preset pa "((***)**)"
    operad-gb verify --preset pa --n-max 11
    operad-gb verify --relations-file rels.txt --reference pa

Exit status: 0 success, 1 verification mismatch, 2 bad input,
3 completion stopped before the pair queue emptied.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

from .dimensions import DimensionReport, IncompleteBasisError, dimension_series
from .groebner import GroebnerBasis, buchberger
from .oracle import cross_validate
from .polynomials import GradedContext, PolynomialSyntaxError, TreePolynomial, parse_poly
from .presets import PRESETS, preset
from .validation import DEFAULT_MAX_ARITY, check_arity, check_relations, read_relations

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT = 2
EXIT_INCOMPLETE = 3

MEMORY_ENV = "OPERAD_GB_MAX_MEMORY_MB"

log = logging.getLogger("operad_gb")


@dataclass
class RunConfig:
    m: int
    parity: str
    preset: str | None
    relations_file: str | None
    relations_text: list[str] | None
    arity_bound: int
    n_max: int
    fmt: str
    list_monomials: bool = False
    jobs: int = 1
    max_pairs: int | None = None
    max_arity: int = DEFAULT_MAX_ARITY
    reference: str | None = None

    @property
    def ctx(self) -> GradedContext:
        return GradedContext(self.m, self.parity)

    def relations(self) -> list[TreePolynomial]:
        ctx = self.ctx
        if self.relations_file:
            with open(self.relations_file, encoding="utf-8") as fh:
                return read_relations(fh, ctx)
        if self.relations_text:
            return check_relations(self.relations_text, ctx)
        return preset(self.preset or "pa", ctx)


def _config(args) -> RunConfig:
    cfg = RunConfig(
        m=args.m, parity=args.parity, preset=args.preset, relations_file=args.relations_file,
        relations_text=args.relations, arity_bound=args.arity_bound,
        n_max=args.arity_bound if getattr(args, "n_max", None) is None else args.n_max, fmt=args.format,
        list_monomials=getattr(args, "list", False), jobs=args.jobs,
        max_pairs=args.max_pairs, max_arity=args.max_arity, reference=getattr(args, "reference", None))
    check_arity(cfg.m, cfg.arity_bound, "--arity-bound", cfg.max_arity)
    check_arity(cfg.m, cfg.n_max, "--n-max", cfg.max_arity)
    if cfg.jobs < 1:
        raise ValueError("--jobs must be >= 1")
    return cfg


# -- serialization --------------------------------------------------------------

def _coeff(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def poly_to_json(f: TreePolynomial) -> dict:
    return {"terms": [{"coeff": _coeff(c), "tree": str(t)} for t, c in f.sorted_terms()]}


def poly_from_json(obj: dict, ctx: GradedContext) -> TreePolynomial:
    from .trees import PlanarTree

    return TreePolynomial(ctx, {PlanarTree.parse(term["tree"], ctx.m): Fraction(term["coeff"])
                                for term in obj["terms"]})


def report_json(ctx: GradedContext, G: GroebnerBasis | None, dims: DimensionReport | None = None,
                **extra) -> dict:
    out = {
        "m": ctx.m,
        "parity": ctx.parity,
        "generators": [poly_to_json(g) for g in G.gens] if G is not None else [],
        "complete_up_to_arity": (G.checked_bound if G is not None and G.complete_below_bound else None),
        "dims": [],
    }
    if dims is not None:
        for r in dims.records:
            row = {"arity": r.arity, "weight": r.weight, "trees": r.trees, "dim": r.dim}
            if r.monomials is not None:
                row["monomials"] = [str(t) for t in r.monomials]
            out["dims"].append(row)
    out.update(extra)
    return out


def _print_basis(G: GroebnerBasis, out) -> None:
    status = "complete" if G.complete_below_bound else "INCOMPLETE"
    print(f"# reduced Groebner basis, m={G.ctx.m}, {G.ctx.parity} generator", file=out)
    print(f"# {len(G)} generators; {status} up to arity {G.checked_bound} "
          f"({G.pairs_processed} SCMs processed)", file=out)
    for g in G.gens:
        print(f"[arity {g.arity}] lm = {g.lm} :  {g}", file=out)


def _print_dims(report: DimensionReport, out) -> None:
    print(f"# dimensions, m={report.ctx.m}, {report.ctx.parity} generator", file=out)
    print(f"{'arity':>6} {'weight':>6} {'|T(n)|':>8} {'dim':>6}", file=out)
    for r in report.records:
        print(f"{r.arity:>6} {r.weight:>6} {r.trees:>8} {r.dim:>6}", file=out)
        if r.monomials is not None:
            for t in r.monomials:
                print(f"{'':>14}{t}", file=out)


# -- commands ---------------------------------------------------------------------

def _basis(cfg: RunConfig, bound: int | None = None) -> GroebnerBasis:
    return buchberger(cfg.relations(), cfg.ctx, bound or cfg.arity_bound, max_pairs=cfg.max_pairs)


def cmd_gb(cfg: RunConfig, out=sys.stdout) -> int:
    G = _basis(cfg)
    if cfg.fmt == "json":
        json.dump(report_json(cfg.ctx, G), out, indent=2)
        print(file=out)
    else:
        _print_basis(G, out)
    return EXIT_OK if G.complete_below_bound else EXIT_INCOMPLETE


def cmd_dims(cfg: RunConfig, out=sys.stdout) -> int:
    G = _basis(cfg, max(cfg.arity_bound, cfg.n_max))
    if not G.complete_below_bound:
        _print_basis(G, out)
        return EXIT_INCOMPLETE
    report = dimension_series(G, cfg.n_max, cfg.list_monomials)
    if cfg.fmt == "json":
        json.dump(report_json(cfg.ctx, G, report), out, indent=2)
        print(file=out)
    else:
        _print_dims(report, out)
    return EXIT_OK


def cmd_reduce(cfg: RunConfig, text: str, out=sys.stdout) -> int:
    f = parse_poly(text, cfg.ctx)
    G = _basis(cfg)
    r = G.normal_form(f)
    if cfg.fmt == "json":
        json.dump(report_json(cfg.ctx, G, input=poly_to_json(f), normal_form=poly_to_json(r)), out, indent=2)
        print(file=out)
    else:
        print(r, file=out)
    return EXIT_OK if G.complete_below_bound else EXIT_INCOMPLETE


def _cap_memory() -> None:
    limit = os.environ.get(MEMORY_ENV)
    if not limit:
        return
    import resource

    nbytes = int(limit) * 1024 * 1024
    resource.setrlimit(resource.RLIMIT_AS, (nbytes, nbytes))


def cmd_verify(cfg: RunConfig, out=sys.stdout) -> int:
    _cap_memory()
    relations = cfg.relations()
    # with a reference preset the basis is built from it and the oracle spans the supplied relations
    source = preset(cfg.reference, cfg.ctx) if cfg.reference else relations
    G = buchberger(source, cfg.ctx, max(cfg.arity_bound, cfg.n_max), max_pairs=cfg.max_pairs)
    if not G.complete_below_bound:
        _print_basis(G, out)
        return EXIT_INCOMPLETE
    cv = cross_validate(G, relations, cfg.n_max, jobs=cfg.jobs)
    if cfg.fmt == "json":
        json.dump(report_json(cfg.ctx, G, verify={"ok": cv.ok, "rows": cv.rows, "mismatches": cv.mismatches}),
                  out, indent=2)
        print(file=out)
    else:
        print(f"# oracle cross-validation, m={cfg.m}, {cfg.parity} generator, arities <= {cfg.n_max}", file=out)
        print(f"{'arity':>6} {'|T(n)|':>8} {'oracle':>7} {'GB':>5} {'vectors':>8}", file=out)
        for row in cv.rows:
            print(f"{row['arity']:>6} {row['trees']:>8} {row['oracle_dim']:>7} {row['gb_dim']:>5} "
                  f"{row['vectors']:>8}", file=out)
        for msg in cv.mismatches:
            print(f"MISMATCH {msg}", file=out)
        print("PASS" if cv.ok else "FAIL", file=out)
    return EXIT_OK if cv.ok else EXIT_MISMATCH


# -- argument parsing -----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-m", type=int, default=3, help="arity of the generating operation (default 3)")
    common.add_argument("--parity", choices=("even", "odd"), default="even")
    src = common.add_mutually_exclusive_group()
    src.add_argument("--preset", choices=sorted(PRESETS), help="named relation set (default pa)")
    src.add_argument("--relations-file", metavar="PATH",
                     help="UTF-8 file, one polynomial per line, '#' comments")
    src.add_argument("--relations", action="append", metavar="POLY", help="inline relation (repeatable)")
    common.add_argument("--arity-bound", type=int, default=15)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--max-pairs", type=int, default=None, help="stop completion after this many SCMs")
    common.add_argument("--max-arity", type=int, default=DEFAULT_MAX_ARITY,
                        help=f"refuse bounds above this arity (default {DEFAULT_MAX_ARITY})")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="operad-gb", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("gb", parents=[common], help="compute the reduced Groebner basis")
    p = sub.add_parser("dims", parents=[common], help="dimension series of the quotient")
    p.add_argument("--n-max", type=int, default=13)
    p.add_argument("--list", action="store_true", help="list the normal monomials")
    p = sub.add_parser("reduce", parents=[common], help="normal form of a polynomial")
    p.add_argument("polynomial")
    p = sub.add_parser("verify", parents=[common], help="cross-check dimensions with the oracle")
    p.add_argument("--n-max", type=int, default=11)
    p.add_argument("--reference", choices=sorted(PRESETS),
                   help="build the basis from this preset and check the supplied relations against it")
    return parser


def main(argv=None, out=sys.stdout) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    start = time.perf_counter()
    try:
        cfg = _config(args)
        if args.command == "gb":
            status = cmd_gb(cfg, out)
        elif args.command == "dims":
            status = cmd_dims(cfg, out)
        elif args.command == "reduce":
            status = cmd_reduce(cfg, args.polynomial, out)
        else:
            status = cmd_verify(cfg, out)
    except (PolynomialSyntaxError, ValueError, KeyError, TypeError, OSError) as exc:
        print(f"operad-gb: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except IncompleteBasisError as exc:
        print(f"operad-gb: {exc}", file=sys.stderr)
        return EXIT_INCOMPLETE
    print(f"# {args.command} finished in {time.perf_counter() - start:.2f}s", file=sys.stderr)
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
