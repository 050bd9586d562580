"""Command-line entry point ``bvn-lcu``.

    bvn-lcu scale MATRIX [--tol T] [--max-iter M]
    bvn-lcu complete MATRIX
    bvn-lcu decompose MATRIX --variant {original,largest,bottleneck,threshold,cutoff} --eps E [--theta T]
    bvn-lcu resources DECOMPOSITION.json MATRIX
    bvn-lcu pauli-count MATRIX [--tol T]
    bvn-lcu bench scaling --sizes 4,8,16 --variants original,largest --eps 0.01 --trials 5 --seed S --out F.csv
    bvn-lcu bench precision --n 16 --eps 0.1,0.01 --trials 5 --seed S --out F.csv

Matrix files use the text format of ``birkhoff_lcu.matrix.format_matrix``.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import bench
from .bvn import Decomposition, Variant, decompose
from .errors import (
    Degenerate,
    DimensionMismatch,
    InvalidInput,
    NonConvergence,
    NotDoublyStochastic,
    NotPowerOfTwo,
    ToleranceTooTight,
    UnsupportedShape,
)
from .lcu import pauli_term_count, resource_report
from .matrix import format_matrix, read_matrix
from .sinkhorn import complete_to_doubly_stochastic, sinkhorn_scale

EXIT_TRIAL_FAILED = 2

_USER_ERRORS = (
    Degenerate,
    DimensionMismatch,
    InvalidInput,
    NonConvergence,
    NotDoublyStochastic,
    NotPowerOfTwo,
    ToleranceTooTight,
    UnsupportedShape,
    OSError,
)


def _csv_list(cast):
    def parse(text: str):
        return [cast(x) for x in text.split(",") if x.strip()]
    return parse


def _dump(obj) -> None:
    json.dump(obj, sys.stdout, indent=2)
    sys.stdout.write("\n")


def cmd_scale(args) -> int:
    r = sinkhorn_scale(read_matrix(args.matrix), tol=args.tol, max_iter=args.max_iter)
    _dump({
        "d1": r.d1.tolist(),
        "d2": r.d2.tolist(),
        "S": r.s.tolist(),
        "iterations": r.iterations,
        "achieved_tol": r.achieved_tol,
    })
    return 0


def cmd_complete(args) -> int:
    sys.stdout.write(format_matrix(complete_to_doubly_stochastic(read_matrix(args.matrix)).m))
    return 0


def cmd_decompose(args) -> int:
    s = read_matrix(args.matrix)
    kwargs = {}
    if args.theta is not None:
        kwargs["theta"] = args.theta
    _dump(decompose(s, args.eps, args.variant, **kwargs).to_dict())
    return 0


def cmd_resources(args) -> int:
    d = Decomposition.from_dict(json.loads(Path(args.decomposition).read_text()))
    _dump(resource_report(d, read_matrix(args.matrix), singular_values=args.svd).to_dict())
    return 0


def cmd_pauli(args) -> int:
    _dump(pauli_term_count(read_matrix(args.matrix), tol=args.tol).to_dict())
    return 0


def cmd_bench_scaling(args) -> int:
    rows = bench.run_scaling_experiment(
        args.sizes, args.variants, args.eps, args.trials, args.seed,
        workers=args.workers, timed=not args.no_timing,
    )
    bench.emit_csv(rows, args.out, bench.ScalingExperimentRow)
    _dump(bench.summarize_scaling(rows))
    return EXIT_TRIAL_FAILED if any(r.error for r in rows) else 0


def cmd_bench_precision(args) -> int:
    rows = bench.run_precision_experiment(args.n, args.eps, args.trials, args.seed, workers=args.workers)
    bench.emit_csv(rows, args.out, bench.PrecisionExperimentRow)
    _dump([r.__dict__ for r in rows])
    return EXIT_TRIAL_FAILED if any(r.trials < args.trials for r in rows) else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bvn-lcu", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("scale", help="Sinkhorn-scale a non-negative matrix")
    sp.add_argument("matrix")
    sp.add_argument("--tol", type=float, default=1e-10)
    sp.add_argument("--max-iter", type=int, default=10_000)
    sp.set_defaults(func=cmd_scale)

    sp = sub.add_parser("complete", help="embed a matrix into a 2N doubly stochastic matrix")
    sp.add_argument("matrix")
    sp.set_defaults(func=cmd_complete)

    sp = sub.add_parser("decompose", help="Birkhoff-von Neumann decomposition")
    sp.add_argument("matrix")
    sp.add_argument("--variant", choices=[v.value for v in Variant], default="largest")
    sp.add_argument("--eps", type=float, default=0.01)
    sp.add_argument("--theta", type=float, default=None,
                    help="threshold variant only; searched for when omitted")
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("resources", help="LCU resource report for a decomposition")
    sp.add_argument("decomposition")
    sp.add_argument("matrix")
    sp.add_argument("--svd", action="store_true", help="also report the second singular value")
    sp.set_defaults(func=cmd_resources)

    sp = sub.add_parser("pauli-count", help="count non-zero Pauli coefficients")
    sp.add_argument("matrix")
    sp.add_argument("--tol", type=float, default=1e-12)
    sp.set_defaults(func=cmd_pauli)

    bp = sub.add_parser("bench", help="seeded experiment campaigns")
    bsub = bp.add_subparsers(dest="campaign", required=True)

    sp = bsub.add_parser("scaling", help="term count vs dimension")
    sp.add_argument("--sizes", type=_csv_list(int), default=[4, 8, 16, 32, 64, 128])
    sp.add_argument("--variants", type=_csv_list(str), default=["original", "largest", "bottleneck"])
    sp.add_argument("--eps", type=float, default=0.01)
    sp.add_argument("--trials", type=int, default=5)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--no-timing", action="store_true", help="zero the runtime column for reproducible output")
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_bench_scaling)

    sp = bsub.add_parser("precision", help="term count vs tolerance (largest-weight)")
    sp.add_argument("--n", type=int, default=16)
    sp.add_argument("--eps", type=_csv_list(float), default=[0.1, 0.01, 0.001, 0.0001])
    sp.add_argument("--trials", type=int, default=5)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_bench_precision)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _USER_ERRORS as exc:
        print(f"bvn-lcu: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
