"""Command-line front end.

Subcommands: ``skeletonize`` (the full weighted pipeline), ``baseline``
(fixed-radius Rips + density), ``diagram`` (diagram only, no reconstruction),
``gen`` (synthetic data), ``verify`` (randomized oracle suite).

Exit codes: 0 ok, 2 bad parameters, 3 input/output problems, 4 simplex
budget exceeded, 1 anything else.
"""

from __future__ import annotations

import argparse
import sys
import time
from typing import Optional

import numpy as np

from .builders import DEFAULT_SIMPLEX_BUDGET, dtm_weights, sparse_dtm_rips
from .datagen import GeneratorConfig, gen_circle, gen_two_circles
from .errors import (
    BudgetExceededError,
    InputFormatError,
    DuplicatePointError,
    ParameterError,
)
from .io import load_points, write_text
from .oracle import run_theorem_suite
from .persistence import betti, reduce
from .recon import reconstruct, skeletonize, skeletonize_baseline

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_PARAMETER = 2
EXIT_IO = 3
EXIT_BUDGET = 4


def _add_common_io(p: argparse.ArgumentParser) -> None:
    p.add_argument("input", help="point CSV (or distance-matrix CSV with --metric precomputed)")
    p.add_argument("--metric", default="l2", choices=["l2", "l1", "precomputed"])
    p.add_argument("--budget", type=int, default=DEFAULT_SIMPLEX_BUDGET,
                   help="abort if the filtration would exceed this many simplices")
    p.add_argument("--graph-out", default=None, help="write the skeleton as JSON here")
    p.add_argument("--diagram-out", default=None, help="write the diagram as CSV here")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="graphskel")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("skeletonize", help="weighted sparse-Rips pipeline")
    _add_common_io(p)
    p.add_argument("--k", type=int, default=15, help="neighbors for the distance-to-measure weight")
    p.add_argument("--epsilon", type=float, default=0.99, help="sparsification parameter")
    p.add_argument("--delta", type=float, required=True, help="persistence threshold")

    p = sub.add_parser("baseline", help="fixed-radius Rips + density pipeline")
    _add_common_io(p)
    p.add_argument("--radius", type=float, required=True, help="Rips radius")
    p.add_argument("--k", type=int, default=15, help="neighbors for the density estimate")
    p.add_argument("--bandwidth", type=float, default=None,
                   help="kernel bandwidth (default: mean k-NN distance)")
    p.add_argument("--delta", type=float, required=True, help="persistence threshold")

    p = sub.add_parser("diagram", help="persistence diagram only, no reconstruction")
    _add_common_io(p)
    p.add_argument("--k", type=int, default=15)
    p.add_argument("--epsilon", type=float, default=0.99)

    p = sub.add_parser("gen", help="generate a synthetic point cloud")
    shape = p.add_mutually_exclusive_group(required=True)
    shape.add_argument("--circle", action="store_true")
    shape.add_argument("--two-circles", action="store_true")
    p.add_argument("--n", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--noise", type=float, default=0.05)
    p.add_argument("--background", type=float, default=0.0)
    p.add_argument("--nonuniformity", type=float, default=0.0)
    p.add_argument("--out", required=True, help="output CSV path")

    p = sub.add_parser("verify", help="run the randomized cycle-basis oracle suite")
    p.add_argument("--random-instances", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    return parser


def _summary(n_points: int, n_simplices: int, b0: int, b1: int, seconds: float) -> str:
    return (
        f"points={n_points} simplices={n_simplices} "
        f"b0={b0} b1={b1} seconds={seconds:.2f}"
    )


def _run_pipeline(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    cloud = load_points(args.input, args.metric)
    points = cloud.points if args.metric != "precomputed" else cloud._dist

    if args.subcommand == "skeletonize":
        graph, diagram = skeletonize(
            points, k=args.k, epsilon=args.epsilon, delta=args.delta,
            metric=args.metric, budget=args.budget,
        )
    elif args.subcommand == "baseline":
        graph, diagram = skeletonize_baseline(
            points, r=args.radius, k=args.k, delta=args.delta,
            bandwidth=args.bandwidth, metric=args.metric, budget=args.budget,
        )
    else:  # diagram
        dtm_weights(cloud, args.k)
        filtration, _ = sparse_dtm_rips(cloud, args.epsilon, budget=args.budget)
        diagram = reduce(filtration)
        graph = None

    if args.diagram_out:
        write_text(args.diagram_out, diagram.to_csv())
    if graph is not None and args.graph_out:
        write_text(args.graph_out, graph.to_json())

    seconds = time.perf_counter() - t0
    if graph is not None:
        b0, b1 = graph.beta0(), graph.beta1()
    else:
        b0, b1 = betti(diagram)
    print(_summary(cloud.n, len(diagram), b0, b1, seconds))
    return EXIT_OK


def _run_gen(args: argparse.Namespace) -> int:
    config = GeneratorConfig(
        seed=args.seed,
        n_points=args.n,
        noise_sigma=args.noise,
        background_fraction=args.background,
        nonuniformity=args.nonuniformity,
    )
    pts = gen_circle(config) if args.circle else gen_two_circles(config)
    write_text(args.out, "\n".join(",".join(f"{c:.17g}" for c in row) for row in pts))
    print(f"wrote {len(pts)} points to {args.out}")
    return EXIT_OK


def _run_verify(args: argparse.Namespace) -> int:
    if args.random_instances < 1:
        raise ParameterError("--random-instances must be >= 1")
    reports = run_theorem_suite(args.random_instances, seed=args.seed)
    failed = [r for r in reports if not r.passed]
    for r in failed:
        print(r.format())
    print(f"oracle suite: {len(reports) - len(failed)}/{len(reports)} passed")
    return EXIT_OK if not failed else EXIT_ERROR


def main(argv: Optional[list] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.subcommand == "gen":
            return _run_gen(args)
        if args.subcommand == "verify":
            return _run_verify(args)
        return _run_pipeline(args)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (InputFormatError, DuplicatePointError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAMETER


if __name__ == "__main__":
    sys.exit(main())
