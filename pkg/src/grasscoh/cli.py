"""Command-line front end.

Every subcommand prints JSON on stdout (rationals as "p/q" strings); sweeps
can print CSV instead.  Exit status: 0 on success, 2 on a parse error, 3 when
a mathematical precondition fails.
"""
import argparse
import csv
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Callable, Iterable, List, Sequence

from . import coincidence, derivations, endo
from .expr import ElaborationError, ParseError, parse, parse_class, to_text
from .grassring import GrassClass, RingContext
from .productring import (
    ProductClass,
    ProductContext,
    dold_generators,
    fixed_subring_basis,
    subalgebra_span_dims,
)

EXIT_PARSE = 2
EXIT_MATH = 3


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (GrassClass, ProductClass)):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def emit(obj, out=None):
    out = out or sys.stdout
    json.dump(_jsonable(obj), out, indent=2, sort_keys=False)
    out.write("\n")


def emit_csv(header: Sequence[str], rows: Iterable[Sequence], out=None):
    out = out or sys.stdout
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([str(v) for v in row])


def worker_count(requested: int = None) -> int:
    if requested:
        return max(1, requested)
    env = os.environ.get("GRASSCOH_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def run_grid(fn: Callable, keys: List[tuple], workers: int) -> List:
    """Evaluate fn on every key; results come back sorted by key."""
    keys = sorted(keys)
    if workers <= 1 or len(keys) <= 1:
        return [fn(key) for key in keys]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, keys))


def ring(m: int, n: int, k: int):
    return ProductContext.of(m, n, k) if m else RingContext(n, k)


def load_json_arg(text: str):
    """Literal JSON, a path to a JSON file, or '-' for stdin."""
    if text == "-":
        return json.load(sys.stdin)
    stripped = text.lstrip()
    if stripped.startswith("{") or stripped.startswith("["):
        return json.loads(text)
    with open(text) as fh:
        return json.load(fh)


def parse_rationals(text: str) -> List[Fraction]:
    return [Fraction(part.strip()) for part in text.split(",") if part.strip()]


def load_descriptor(text: str):
    """Family descriptor text: 'adams(l,mu)', 'identity', or JSON."""
    stripped = text.strip()
    if stripped.startswith("{") or stripped == "-" or stripped.endswith(".json"):
        return load_json_arg(text)
    return stripped


# -- grid workers (top level so they pickle) -----------------------------

def _derivation_point(key):
    n, k, drop = key
    return derivations.derivation_space(RingContext(n, k), drop).certificate()


def _extension_point(key):
    m, n, k, lam = key
    return endo.extension_nullspace(ProductContext.of(m, n, k), lam).to_json()


def _lefschetz_point(key):
    m, n, k, lam, mu, lam1, mu1 = key
    verdict = coincidence.coincidence_criteria(
        m, n, k,
        {"family": "adams", "lambda": lam, "mu": mu},
        {"family": "adams", "lambda": lam1, "mu": mu1},
    )
    lef = verdict.lefschetz
    return [m, n, k, lam, mu, lam1, mu1, lef["L_untwisted"], lef["L_twisted"],
            verdict.theorem_applied, verdict.conclusion]


# -- subcommands --------------------------------------------------------

def cmd_betti(args):
    emit({"n": args.n, "k": args.k, "betti": coincidence.betti(args.n, args.k)})


def cmd_reduce(args):
    ctx = ring(args.m, args.n, args.k)
    cls = parse_class(args.expr, ctx)
    emit({"input": args.expr, "class": str(cls), "degrees": sorted(cls.degrees())})


def cmd_mul(args):
    ctx = ring(args.m, args.n, args.k)
    x, y = parse_class(args.a, ctx), parse_class(args.b, ctx)
    emit({"a": str(x), "b": str(y), "product": str(x * y)})


def _endo_arg(args):
    ctx = ProductContext.of(args.m, args.n, args.k)
    return endo.endo_from_json(ctx, load_json_arg(args.endo))


def cmd_endo_check(args):
    phi = _endo_arg(args)
    verdict = endo.is_well_defined(phi)
    out = verdict.to_json()
    out["residues"] = {name: str(res) for name, res in verdict.residues.items()}
    emit(out)
    return 0


def cmd_classify(args):
    phi = _endo_arg(args)
    emit(endo.classify(phi).to_json())


def _family(args, maker):
    ctx = ProductContext.of(args.m, args.n, args.k)
    phi = maker(ctx, Fraction(args.lam), Fraction(args.mu))
    verdict = endo.is_well_defined(phi)
    out = {"endo": phi.to_json(), "well_defined": verdict.well_defined,
           "failing_relation": verdict.failing_relation}
    if verdict.well_defined:
        out["classification"] = endo.classify(phi).to_json()
    emit(out)


def cmd_adams(args):
    _family(args, endo.make_adams)


def cmd_complement(args):
    _family(args, endo.make_complement)


def cmd_derivations(args):
    if args.sweep is not None:
        keys = []
        for n in range(2, args.sweep + 1):
            for k in range(1, n // 2 + 1):
                d = k * (n - k)
                keys += [(n, k, drop) for drop in range(1, 2 * d + 1)]
    else:
        if args.n is None or args.k is None or args.drop is None:
            raise ValueError("give --sweep NMAX or all of -n, -k, --drop")
        keys = [(args.n, args.k, args.drop)]
    rows = run_grid(_derivation_point, keys, worker_count(args.workers))
    if args.csv:
        header = ["n", "k", "drop", "unknowns", "equations", "rank", "nullity", "dimension"]
        emit_csv(header, ([r[h] for h in header] for r in rows))
    else:
        emit(rows)


def cmd_extension(args):
    lams = parse_rationals(args.lambdas)
    if args.sweep is not None:
        ms = [int(x) for x in args.ms.split(",")]
        keys = []
        for n in range(2, args.sweep + 1):
            for k in range(1, n):
                d = k * (n - k)
                keys += [(m, n, k, lam) for m in ms if m <= 2 * d for lam in lams]
    else:
        if args.m is None or args.n is None or args.k is None:
            raise ValueError("give --sweep NMAX or all of -m, -n, -k")
        keys = [(args.m, args.n, args.k, lam) for lam in lams]
    rows = run_grid(_extension_point, keys, worker_count(args.workers))
    if args.csv:
        header = ["m", "n", "k", "lambda", "unknowns", "equations", "rank", "dimension"]
        emit_csv(header, ([r[h] for h in header] for r in rows))
    else:
        emit(rows)


LEFSCHETZ_HEADER = ["m", "n", "k", "lambda", "mu", "lambda1", "mu1", "L_untwisted", "L_twisted", "theorem", "conclusion"]


def cmd_lefschetz(args):
    if args.sweep:
        grid = parse_rationals(args.grid)
        ms = [int(x) for x in args.ms.split(",")]
        contexts = [tuple(int(v) for v in pair.split(":")) for pair in args.contexts.split(",")]
        keys = [(m, n, k, a, b, c, d) for m in ms for n, k in contexts
                for a in grid for b in grid for c in grid for d in grid]
        rows = run_grid(_lefschetz_point, keys, worker_count(args.workers))
        if args.csv:
            emit_csv(LEFSCHETZ_HEADER, rows)
        else:
            emit([dict(zip(LEFSCHETZ_HEADER, row)) for row in rows])
        return
    lam, mu, lam1, mu1 = (Fraction(x) for x in (args.lam, args.mu, args.lam1, args.mu1))
    m, n, k = args.m, args.n, args.k
    if args.closed:
        if m == 0:
            emit({"method": "closed_form", "L": coincidence.lefschetz_closed_grass(n, k, lam, lam1)})
            return
        emit({
            "method": "closed_form",
            "family": args.family,
            "L_untwisted": coincidence.lefschetz_closed_product(m, n, k, lam, mu, lam1, mu1, False, args.family),
            "L_twisted": coincidence.lefschetz_closed_product(m, n, k, lam, mu, lam1, mu1, True, args.family),
        })
        return
    if m == 0:
        ctx = RingContext(n, k)
        value = coincidence.lefschetz_trace_grass(
            ctx, coincidence.adams_images(ctx, lam), coincidence.adams_images(ctx, lam1))
        emit({"method": "trace", "L": value})
        return
    if args.family != "adams":
        raise ValueError("--trace builds Adams pairs; use `criteria` with a u_family descriptor instead")
    ctx = ProductContext.of(m, n, k)
    report = coincidence.lefschetz_trace(endo.make_adams(ctx, lam, mu), endo.make_adams(ctx, lam1, mu1))
    emit(report.to_json())


def cmd_criteria(args):
    verdict = coincidence.coincidence_criteria(
        args.m, args.n, args.k, load_descriptor(args.f), load_descriptor(args.g))
    emit(verdict.to_json())


def cmd_certify_lemma(args):
    emit(coincidence.nonvanishing_certificate(args.n, args.k))


def cmd_fixed_basis(args):
    ctx = ProductContext.of(args.m, args.n, args.k)
    basis = fixed_subring_basis(ctx, args.degree)
    span = subalgebra_span_dims(dold_generators(ctx), args.degree, ctx)
    emit({
        "m": args.m, "n": args.n, "k": args.k, "degree": args.degree,
        "dimension": len(basis),
        "basis": [str(b) for b in basis],
        "generated_dimension": span[args.degree],
        "generators": [str(g) for g in dold_generators(ctx)],
    })


def random_class(rng: random.Random, ctx) -> object:
    """A random class with small rational coefficients (for round-trip checks)."""
    inner = ctx.inner if isinstance(ctx, ProductContext) else ctx

    def grass():
        coeffs = {}
        for w in range(inner.d + 1):
            for lam in inner.basis(w):
                if rng.random() < 0.3:
                    coeffs[lam] = Fraction(rng.randint(-9, 9), rng.randint(1, 6))
        return GrassClass(inner, coeffs)

    if isinstance(ctx, ProductContext):
        return ProductClass(ctx, grass(), grass() if rng.random() < 0.6 else None)
    return grass()


def cmd_roundtrip(args):
    rng = random.Random(args.seed)
    ctx = ring(args.m, args.n, args.k)
    failures = []
    for _ in range(args.count):
        text = str(random_class(rng, ctx))
        again = str(parse_class(text, ctx))
        if again != text:
            failures.append({"printed": text, "reprinted": again})
    emit({"seed": args.seed, "count": args.count, "failures": failures})
    return 0 if not failures else 1


def cmd_parse(args):
    emit({"input": args.expr, "canonical": to_text(parse(args.expr))})


# -- argument parsing ---------------------------------------------------

def _ctx_options(p, m_default=0, need_m=False):
    p.add_argument("-m", type=int, default=None if need_m else m_default,
                   required=need_m, help="sphere dimension (0 = bare Grassmannian)")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-k", type=int, required=True)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="grasscoh", description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("betti", help="even Betti numbers of CG_{n,k}")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("reduce", help="normal form of an expression")
    _ctx_options(p)
    p.add_argument("expr")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("mul", help="product of two classes")
    _ctx_options(p)
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_mul)

    p = sub.add_parser("parse", help="canonical print of an expression AST")
    p.add_argument("expr")
    p.set_defaults(func=cmd_parse)

    for name, func, doc in (("endo-check", cmd_endo_check, "well-definedness verdict"),
                            ("classify", cmd_classify, "family of a well-defined endomorphism")):
        p = sub.add_parser(name, help=doc)
        _ctx_options(p, need_m=True)
        p.add_argument("endo", help='JSON {"c": [...], "u": ...}, a file path, or -')
        p.set_defaults(func=func)

    for name, func in (("adams", cmd_adams), ("complement", cmd_complement)):
        p = sub.add_parser(name, help=f"build the {name} endomorphism")
        _ctx_options(p, need_m=True)
        p.add_argument("--lambda", dest="lam", default="1")
        p.add_argument("--mu", default="1")
        p.set_defaults(func=func)

    p = sub.add_parser("derivations", help="derivation-space certificates")
    p.add_argument("--sweep", type=int, metavar="NMAX")
    p.add_argument("-n", type=int)
    p.add_argument("-k", type=int)
    p.add_argument("--drop", type=int)
    p.add_argument("--csv", action="store_true")
    p.add_argument("--workers", type=int)
    p.set_defaults(func=cmd_derivations)

    p = sub.add_parser("extension", help="extension-nullspace dimensions")
    p.add_argument("--sweep", type=int, metavar="NMAX")
    p.add_argument("-m", type=int)
    p.add_argument("-n", type=int)
    p.add_argument("-k", type=int)
    p.add_argument("--ms", default="2,4,6")
    p.add_argument("--lambdas", default="1,2,-1,1/2")
    p.add_argument("--csv", action="store_true")
    p.add_argument("--workers", type=int)
    p.set_defaults(func=cmd_extension)

    p = sub.add_parser("lefschetz", help="Lefschetz coincidence numbers of Adams pairs")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--closed", action="store_true")
    mode.add_argument("--trace", action="store_true")
    mode.add_argument("--sweep", action="store_true")
    p.add_argument("-m", type=int, default=0)
    p.add_argument("-n", type=int)
    p.add_argument("-k", type=int)
    p.add_argument("--lambda", dest="lam", default="1")
    p.add_argument("--mu", default="1")
    p.add_argument("--lambda1", dest="lam1", default="1")
    p.add_argument("--mu1", default="1")
    p.add_argument("--family", choices=["adams", "u_family"], default="adams")
    p.add_argument("--ms", default="2,4", help="sweep: sphere dimensions")
    p.add_argument("--contexts", default="4:2,5:2", help="sweep: n:k pairs")
    p.add_argument("--grid", default="-1,1,2", help="sweep: values for each of lambda, mu, lambda1, mu1")
    p.add_argument("--csv", action="store_true")
    p.add_argument("--workers", type=int)
    p.set_defaults(func=cmd_lefschetz)

    p = sub.add_parser("criteria", help="decide coincidence from the coincidence theorems")
    _ctx_options(p, need_m=True)
    p.add_argument("--f", required=True, help="descriptor: adams(l,mu), complement(l,mu), identity, or JSON")
    p.add_argument("--g", required=True)
    p.set_defaults(func=cmd_criteria)

    p = sub.add_parser("certify-lemma", help="no rational root of sum d_2i x^i")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    p.set_defaults(func=cmd_certify_lemma)

    p = sub.add_parser("fixed-basis", help="basis of Fix(theta*) in one degree")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    p.add_argument("degree", type=int)
    p.set_defaults(func=cmd_fixed_basis)

    p = sub.add_parser("roundtrip", help="print/parse/print stability on random classes")
    _ctx_options(p)
    p.add_argument("--count", type=int, default=1000)
    p.set_defaults(func=cmd_roundtrip)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        status = args.func(args)
    except (ParseError, ElaborationError, json.JSONDecodeError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MATH
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    return status or 0


if __name__ == "__main__":
    sys.exit(main())
