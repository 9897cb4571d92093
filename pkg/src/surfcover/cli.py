"""Command line front door.

Every subcommand prints one JSON document (or CSV with --csv) carrying the
package version. Exact rationals are printed as "p/q".
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import math
import os
import sys
import warnings
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .core_graph import QuotientLimitError, xi_nu_top, xstar_count_bruteforce, xstar_frobenius, xstar_rational
from .expectation import (
    EnumerationLimitError,
    embedding_counts,
    en_emb_formula,
    enumerate_homs,
    expected_embeddings,
    expected_fix,
)
from .growth import DEFAULT_EPS, MAX_EPS, GrowthError, ovb
from .partition_algebra import mednykh_count, witten_zeta
from .resolution import aggregate_resolution, check_identity, code_string, orbit_representatives, word_cycle
from .sym_rep import InterchangeError, ResourceLimitError
from .tiled_surface import (
    SurfaceError,
    TiledSurface,
    boundary_cycles,
    cover_from_permutations,
    find_bad_piece,
    from_word,
    image_surface,
    is_boundary_reduced,
    is_eps_adapted,
    is_strongly_boundary_reduced,
    morphism_from,
    quotient_multiplicities,
    single_vertex,
)
from .trace_numerics import QuadratureError, bound_pipeline_demo, geometric_side, read_spectrum, synthetic_spectrum
from .words import LETTERS, WordError, parse_word

EXIT_OK = 0
EXIT_ACCEPTANCE = 1
EXIT_USAGE = 2
EXIT_WORD = 3
EXIT_RESOURCE = 4
EXIT_IO = 5
EXIT_DOMAIN = 6

CACHE_ENV = "SURFCOVER_CACHE_DIR"


class UsageError(Exception):
    pass


# --- output ------------------------------------------------------------------


def plain(value):
    """Convert to JSON-ready values; fractions become "p/q"."""
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, dict):
        return {str(k): plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [plain(v) for v in value]
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, float) and not math.isfinite(value):
        return repr(value)
    return value


def render(payload: dict, as_csv: bool) -> str:
    payload = plain(payload)
    if not as_csv:
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    rows = payload.get("rows")
    if isinstance(rows, list) and rows and all(isinstance(r, dict) for r in rows):
        keys = sorted({k for r in rows for k in r})
        writer.writerow(keys)
        for r in rows:
            writer.writerow([_cell(r.get(k)) for k in keys])
    else:
        writer.writerow(["key", "value"])
        for k in sorted(payload):
            writer.writerow([k, _cell(payload[k])])
    return out.getvalue()


def _cell(value) -> str:
    if isinstance(value, (dict, list)):
        return json.dumps(value, sort_keys=True)
    return "" if value is None else str(value)


def emit(args, payload: dict) -> None:
    payload = {"command": args.command, "version": __version__, **payload}
    text = render(payload, args.csv)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


# --- cache -------------------------------------------------------------------


def cache_path(kind: str, key: dict) -> Path | None:
    root = os.environ.get(CACHE_ENV)
    if not root:
        return None
    digest = hashlib.sha256(json.dumps({"version": __version__, **key}, sort_keys=True).encode()).hexdigest()[:20]
    return Path(root) / f"{kind}-{digest}.json"


def cached(kind: str, key: dict, compute):
    path = cache_path(kind, key)
    if path is not None and path.exists():
        return json.loads(path.read_text())
    value = plain(compute())
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(value, sort_keys=True))
    return value


# --- argument helpers ----------------------------------------------------------


def parse_eps(text: str) -> Fraction:
    try:
        eps = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text}") from exc
    if eps < 0 or eps > MAX_EPS:
        raise argparse.ArgumentTypeError(f"eps must lie in [0, 1/16], got {text}")
    return eps


def parse_cover(text: str) -> TiledSurface:
    """Cover from "a=1,0;b=0,1;c=0,1;d=0,1" (images of 0..n-1)."""
    perms = {}
    for part in text.split(";"):
        name, _, images = part.partition("=")
        perms[name.strip()] = tuple(int(x) for x in images.split(","))
    if set(perms) != set(LETTERS):
        raise UsageError("a cover needs permutations for a, b, c and d")
    return cover_from_permutations(perms)


def surface_from_args(args) -> TiledSurface:
    if getattr(args, "surface", None):
        return TiledSurface.from_json(Path(args.surface).read_text())
    if getattr(args, "vertices", None) is not None:
        if args.vertices == 1:
            return single_vertex()
        from .core_graph import vertex_only_surface

        return vertex_only_surface(args.vertices)
    if getattr(args, "word", None):
        return from_word(args.word)
    raise UsageError("give --word, --vertices or --surface")


def random_cover(n: int, seed: int) -> TiledSurface:
    ens = enumerate_homs(n)
    index = int(np.random.default_rng(seed).integers(len(ens)))
    return cover_from_permutations(ens.cover(index).as_dict())


# --- subcommands -------------------------------------------------------------------


def cmd_zeta(args) -> int:
    ns = range(1, args.n + 1) if args.table else [args.n]
    rows = [{"n": n, "s": args.s, "zeta": witten_zeta(n, args.s)} for n in ns]
    for r in rows:
        r["excess"] = r["zeta"] - 2
    emit(args, {"rows": rows} if args.table else rows[0])
    return EXIT_OK


def cmd_mednykh(args) -> int:
    payload = {"n": args.n, "genus": args.genus, "route": args.route}
    if args.route == "enumerate":
        if args.genus != 2:
            raise UsageError("enumeration is implemented for genus 2")
        payload["count"] = len(enumerate_homs(args.n))
    else:
        payload["count"] = mednykh_count(args.n, args.genus)
    emit(args, payload)
    return EXIT_OK


def oracle_value(word: str, n: int, route: str, eps: Fraction, jobs: int) -> dict:
    if route == "enumerate":
        value = expected_fix(word, n)
        return {"value": value, "exact": True, "numerator": value.numerator, "denominator": value.denominator}
    if route == "resolution":
        table = aggregate_resolution(word, range(1, n + 1), eps, jobs)
        value = sum((expected_embeddings(e.surface, n) for e in table.entries.values()), Fraction(0))
        return {
            "value": value,
            "exact": True,
            "numerator": value.numerator,
            "denominator": value.denominator,
            "entries": len(table.entries),
        }
    # representation formula applied to every quotient of the word cycle
    total = 0.0
    terms = 0
    for H, mult in quotient_multiplicities(word_cycle(word)):
        if len(H.vertices) <= n:
            total += mult * en_emb_formula(H, n)
            terms += 1
    return {"value": total, "exact": False, "quotients": terms}


def cmd_oracle(args) -> int:
    word = parse_word(args.word)
    payload = {"word": word, "n": args.n, "route": args.route}
    payload.update(oracle_value(word, args.n, args.route, args.eps, args.jobs))
    emit(args, payload)
    return EXIT_OK


def cmd_surface(args) -> int:
    Y = surface_from_args(args)
    payload = {"surface": Y.to_dict()}
    show_all = not (args.stats or args.predicates)
    if args.stats or show_all:
        payload["stats"] = Y.stats().as_dict()
        payload["boundary_cycle_lengths"] = sorted(c.length for c in boundary_cycles(Y))
    if args.predicates or show_all:
        piece = find_bad_piece(Y, args.eps)
        payload["predicates"] = {
            "connected": Y.is_connected(),
            "boundaryless": Y.is_boundaryless(),
            "boundary_reduced": is_boundary_reduced(Y),
            "strongly_boundary_reduced": is_strongly_boundary_reduced(Y),
            "eps_adapted": piece is None,
            "eps": args.eps,
        }
        if piece is not None:
            payload["bad_piece"] = piece.as_dict()
    emit(args, payload)
    return EXIT_OK


def cmd_ovb(args) -> int:
    Y = surface_from_args(args)
    if args.cover:
        Z = parse_cover(args.cover)
        source = {"cover": args.cover}
    else:
        Z = random_cover(args.n, args.seed)
        source = {"n": args.n, "seed": args.seed}
    root = Y.vertices[0]
    runs = []
    for z in Z.vertices:
        h = morphism_from(Y, Z, root, z)
        if h is None:
            continue
        U = image_surface(h, Y)
        W, trace = ovb(U, Z, args.eps)
        run = {"base_image": z, "input": U.stats().as_dict(), "output": W.stats().as_dict(),
               "output_surface": W.to_dict(), "eps_adapted": is_eps_adapted(W, args.eps)}
        if args.trace:
            run["trace"] = trace.as_dict()
        runs.append(run)
    cover = {f: [Z.step(v, f) for v in Z.vertices] for f in LETTERS}
    emit(args, {**source, "eps": args.eps, "cover_permutations": cover, "runs": runs})
    return EXIT_OK


def cmd_resolve(args) -> int:
    word = parse_word(args.word)
    ns = list(range(1, args.max_n + 1))

    def compute():
        table = aggregate_resolution(word, ns, args.eps, args.jobs)
        out = table.as_dict()
        out["counts"] = {code_string(k): v for k, v in sorted(table.counts.items())}
        if args.check:
            reports = [check_identity(table, n, orbits=True) for n in ns]
            out["identity"] = [
                {"n": r.n, "covers": r.covers, "morphisms": r.morphisms, "factorizations": r.factorizations,
                 "violations": r.violations, "ok": r.ok}
                for r in reports
            ]
        return out

    payload = cached("resolve", {"word": word, "ns": ns, "eps": str(args.eps), "check": args.check}, compute)
    emit(args, payload)
    return EXIT_OK


def cmd_xstar(args) -> int:
    Y = surface_from_args(args)
    formula = xstar_rational(Y, args.cap)
    ns = range(max(len(Y.vertices), 1), args.n + 1) if args.table else [args.n]
    rows = []
    for n in ns:
        row = {"n": n, "xstar": formula.evaluate(n), "xi_nu_top": xi_nu_top(Y, n, formula)}
        if args.verify:
            row["enumeration"] = xstar_count_bruteforce(Y, n)
            if not Y.edges:
                row["frobenius"] = xstar_frobenius(len(Y.vertices), n)
        rows.append(row)
    payload = {"quotients": formula.num_quotients, "rows": rows}
    if not args.table:
        payload.update(rows[0])
        del payload["rows"]
    emit(args, payload)
    return EXIT_OK


def cmd_enemb(args) -> int:
    Y = surface_from_args(args)
    n = args.n
    if len(Y.vertices) > n:
        raise ValueError(f"the surface has more than {n} vertices")
    buckets = expected_embeddings(Y, n)
    reps, sizes = orbit_representatives(n)
    orbit_total = int((embedding_counts(Y, reps) * sizes).sum())
    orbits = Fraction(orbit_total, int(sizes.sum()))
    formula = en_emb_formula(Y, n)
    rel = abs(formula - float(buckets)) / max(abs(float(buckets)), 1e-300)
    emit(args, {
        "n": n,
        "stats": Y.stats().as_dict(),
        "routes": {"buckets": buckets, "orbits": orbits, "formula": formula},
        "exact_routes_agree": buckets == orbits,
        "formula_relative_error": rel,
    })
    return EXIT_OK


def cmd_trace(args) -> int:
    if args.n is not None:
        spectrum = read_spectrum(args.spectrum) if args.spectrum else synthetic_spectrum(4 * math.log(args.n) + 1)
        report = bound_pipeline_demo(spectrum, args.n, args.c, args.A, args.eps_numeric)
        emit(args, {"mode": "pipeline", "source": spectrum.source, **report.as_dict()})
        return EXIT_OK
    if not (args.spectrum and args.T):
        raise UsageError("trace needs --spectrum FILE --T FLOAT, or --n INT")
    spectrum = read_spectrum(args.spectrum)
    discrepancy = {}
    if args.discrepancy:
        with open(args.discrepancy, newline="") as fh:
            for row in csv.DictReader(ln for ln in fh if not ln.lstrip().startswith("#")):
                discrepancy[float(row["length"])] = float(Fraction(row["discrepancy"]))
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        side = geometric_side(spectrum, args.T, discrepancy, n=args.degree)
    emit(args, {"mode": "geometric-side", "source": spectrum.source, **side.as_dict(),
                "warnings": [str(w.message) for w in caught]})
    return EXIT_OK


def cmd_accept(args) -> int:
    from .acceptance import CRITERIA, NOT_REPRODUCIBLE

    selected = args.only or sorted(CRITERIA)
    results = []
    for k in selected:
        r = CRITERIA[k]()
        print(r.line(), file=sys.stderr, flush=True)
        results.append(r)
    rows = []
    for r in results:
        d = r.as_dict()
        d.pop("seconds")  # keep the primary output deterministic
        rows.append(d)
    emit(args, {"rows": rows, "all_passed": all(r.passed for r in results), "criterion_10": NOT_REPRODUCIBLE})
    return EXIT_OK if all(r.passed for r in results) else EXIT_ACCEPTANCE


# --- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--csv", action="store_true", help="CSV output instead of JSON")
    common.add_argument("--output", help="write the primary output to this file")
    common.add_argument("--jobs", type=int, default=1, help="worker processes")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized choices")
    common.add_argument("--eps", type=parse_eps, default=DEFAULT_EPS, help="adaptedness parameter, at most 1/16")

    parser = argparse.ArgumentParser(prog="surfcover", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def surface_args(p):
        p.add_argument("--word", help="word in a b c d, upper case for inverses")
        p.add_argument("--vertices", type=int, help="surface of isolated vertices")
        p.add_argument("--surface", help="JSON file of a tiled surface")

    p = sub.add_parser("zeta", parents=[common], help="Witten zeta of S_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=int, default=2)
    p.add_argument("--table", action="store_true", help="all degrees 1..n")
    p.set_defaults(func=cmd_zeta)

    p = sub.add_parser("mednykh", parents=[common], help="number of genus-g cover tuples")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--genus", type=int, default=2)
    p.add_argument("--route", choices=("formula", "enumerate"), default="formula")
    p.set_defaults(func=cmd_mednykh)

    p = sub.add_parser("oracle", parents=[common], help="expected fixed points of a word")
    p.add_argument("--word", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--route", choices=("enumerate", "formula", "resolution"), default="enumerate")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("surface", parents=[common], help="statistics and predicates of a tiled surface")
    surface_args(p)
    p.add_argument("--stats", action="store_true")
    p.add_argument("--predicates", action="store_true")
    p.set_defaults(func=cmd_surface)

    p = sub.add_parser("ovb", parents=[common], help="grow the image of a surface inside a cover")
    surface_args(p)
    p.add_argument("--n", type=int, default=3, help="degree of a random cover")
    p.add_argument("--cover", help='explicit cover such as "a=1,0;b=0,1;c=0,1;d=0,1"')
    p.add_argument("--trace", action="store_true", help="include every growth step")
    p.set_defaults(func=cmd_ovb)

    p = sub.add_parser("resolve", parents=[common], help="resolution of a word from all covers")
    p.add_argument("--word", required=True)
    p.add_argument("--max-n", type=int, default=4)
    p.add_argument("--check", action="store_true", help="verify unique factorization")
    p.set_defaults(func=cmd_resolve)

    p = sub.add_parser("xstar", parents=[common], help="rational count of the double-coset set")
    surface_args(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--table", action="store_true", help="all degrees up to n")
    p.add_argument("--verify", action="store_true", help="compare with enumeration")
    p.add_argument("--cap", type=int, default=24, help="largest graph for quotient search")
    p.set_defaults(func=cmd_xstar)

    p = sub.add_parser("enemb", parents=[common], help="expected embeddings by three routes")
    surface_args(p)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_enemb)

    p = sub.add_parser("trace", parents=[common], help="trace formula numerics")
    p.add_argument("--spectrum", help="length spectrum CSV")
    p.add_argument("--T", type=float, help="scale of the test function")
    p.add_argument("--discrepancy", help="CSV with length,discrepancy")
    p.add_argument("--degree", type=int, help="cover degree for the non-primitive bound")
    p.add_argument("--n", type=int, help="run the bound pipeline at this degree")
    p.add_argument("--eps-numeric", "--eps-trace", dest="eps_numeric", type=float, default=0.01)
    p.add_argument("--c", type=float, default=1.0)
    p.add_argument("--A", type=float, default=1.0)
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("accept", parents=[common], help="run the acceptance suite")
    p.add_argument("--only", type=int, nargs="+", choices=range(1, 10), metavar="K")
    p.set_defaults(func=cmd_accept)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except WordError as exc:
        print(f"word error: {exc}", file=sys.stderr)
        return EXIT_WORD
    except (EnumerationLimitError, QuotientLimitError, ResourceLimitError, ResourceWarning, MemoryError) as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (GrowthError, SurfaceError, InterchangeError, QuadratureError, ValueError, KeyError) as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
