"""Command-line front end.

JSON goes to stdout and diagnostics to stderr. Exit codes:

    0  success (certify: strictly convex; enumerate: no violations)
    1  bad input (parse error, negative entry, invalid arguments)
    2  enumerate found a violation or a probe disagreement
    3  certify: equality is possible, witness printed
    4  witness requested for a two-fold irreducible matrix
    5  power iteration did not converge
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import convexity, oracle, structure
from .formats import MatrixParseError, format_matrix, load_matrix, matrix_to_json
from .generators import FAMILIES, GeneratorSpec, generate
from .matrix import DiagonalParams, sign_pattern
from .spectral import ConvergenceError, SpectralConfig, perron_pair, spectral_radius

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_VIOLATION = 2
EXIT_EQUALITY = 3
EXIT_NO_WITNESS = 4
EXIT_CONVERGENCE = 5


class UsageError(ValueError):
    pass


def _emit(doc) -> None:
    json.dump(doc, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _floats(text: str, what: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"{what} must be comma-separated numbers, got {text!r}") from None


def _config(args) -> SpectralConfig:
    return SpectralConfig(tolerance=args.tolerance, max_iterations=args.max_iter,
                          shift=args.shift)


def cmd_analyze(args) -> int:
    A = load_matrix(args.path)
    P = sign_pattern(A)
    doc = structure.classify(P).to_dict()
    if args.spectral:
        cfg = _config(args)
        doc["spectral_radius"] = spectral_radius(A, cfg)
        doc["perron_vector"] = (perron_pair(A, cfg).vector.tolist()
                                if structure.is_irreducible(P) else None)
    _emit(doc)
    return EXIT_OK


def _witness_kw(args) -> dict:
    kw = {}
    if args.log_alpha is not None:
        kw["log_alpha"] = args.log_alpha
    if args.levels is not None:
        kw["levels"] = _floats(args.levels, "--levels")
    return kw


def cmd_certify(args) -> int:
    cert = convexity.certify(load_matrix(args.path), _config(args), **_witness_kw(args))
    _emit(cert.to_dict())
    return EXIT_OK if cert.holds else EXIT_EQUALITY


def cmd_witness(args) -> int:
    A = load_matrix(args.path)
    try:
        w = convexity.construct_witness(A, _config(args), **_witness_kw(args))
    except convexity.NoWitnessError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_WITNESS
    doc = w.to_dict()
    doc["similarity_holds"] = convexity.verify_similarity(A, w)
    _emit(doc)
    return EXIT_OK


def cmd_gap(args) -> int:
    A = load_matrix(args.path)
    C = DiagonalParams(_floats(args.C, "--C"))
    D = DiagonalParams(_floats(args.D, "--D"))
    if len(C) != A.n or len(D) != A.n:
        raise UsageError(f"--C and --D need {A.n} values each")
    grid = _floats(args.t_grid, "--t-grid")
    cfg = _config(args)
    rows = [{"t": t, "phi": convexity.convexity_gap(A, C, D, t, cfg)} for t in grid]
    _emit({"C": C.values.tolist(), "D": D.values.tolist(), "gaps": rows})
    return EXIT_OK


def cmd_generate(args) -> int:
    blocks = tuple(int(x) for x in _floats(args.blocks, "--blocks")) if args.blocks else None
    spec = GeneratorSpec(args.family, n=args.n, seed=args.seed, density=args.density,
                         blocks=blocks)
    M = generate(spec)
    sys.stdout.write(matrix_to_json(M) + "\n" if args.json else format_matrix(M))
    return EXIT_OK


def cmd_enumerate(args) -> int:
    if args.check == "property1":
        patterns = oracle.enumerate_patterns(args.n, filter="positive_radius",
                                             sample=args.sample, seed=args.seed)
        summary = oracle.probe_patterns(patterns, trials=args.trials, seed=args.seed,
                                        cfg=_config(args))
        doc = summary.to_dict()
        ok = summary.ok
    else:
        checks = oracle.CHECKS if args.check == "all" else ("two_fold_equivalence",)
        report = oracle.theorem_sweep(args.n, checks=checks, sample=args.sample,
                                      seed=args.seed, workers=args.workers)
        doc = report.to_dict()
        ok = report.ok
    doc["check"] = args.check
    _emit(doc)
    if not ok:
        print("violation found", file=sys.stderr)
    return EXIT_OK if ok else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    numeric = argparse.ArgumentParser(add_help=False)
    numeric.add_argument("--tolerance", type=float, default=1e-12,
                         help="relative width of the Collatz-Wielandt bracket")
    numeric.add_argument("--max-iter", type=int, default=100_000)
    numeric.add_argument("--shift", type=float, default=1.0)

    free = argparse.ArgumentParser(add_help=False)
    free.add_argument("--log-alpha", type=float,
                      help="log(alpha) of the equality witness (irreducible input)")
    free.add_argument("--levels",
                      help="comma-separated L value per column component")

    parser = argparse.ArgumentParser(
        prog="twofold",
        description="Structure of nonnegative matrices and strict log-convexity "
                    "of the scaled spectral radius.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[numeric], help="classify a matrix file")
    p.add_argument("path", help="matrix file (text or JSON); '-' for stdin")
    p.add_argument("--spectral", action="store_true",
                   help="also report the spectral radius and Perron vector")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("certify", parents=[numeric, free],
                       help="decide strict convexity; exit 3 with a witness if it fails")
    p.add_argument("path")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("witness", parents=[numeric, free], help="print an equality witness")
    p.add_argument("path")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("gap", parents=[numeric], help="tabulate the convexity gap phi(t)")
    p.add_argument("path")
    p.add_argument("--C", required=True, help="comma-separated diagonal, e.g. 0,0,0,0")
    p.add_argument("--D", required=True)
    p.add_argument("--t-grid", default=",".join(str(k / 10) for k in range(1, 10)))
    p.set_defaults(func=cmd_gap)

    p = sub.add_parser("generate", help="write a matrix family in text format")
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--n", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("--blocks", help="cyclic_normal block sizes, e.g. 2,3")
    p.add_argument("--json", action="store_true", help="emit the JSON layout instead")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("enumerate", parents=[numeric],
                       help="exhaustive or sampled verification sweep")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--sample", type=int, help="number of seeded patterns (required for n > 4)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--check", choices=("all", "twofold", "property1"), default="all")
    p.add_argument("--trials", type=int, default=8, help="strict-case samples per pattern")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_enumerate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    np.seterr(over="raise")
    try:
        return args.func(args)
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except (MatrixParseError, UsageError, ValueError, OSError, FloatingPointError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
