"""Command-line front end.

Subcommands: ``solve`` an instance file and emit a JSON report, ``gen`` a
seeded random instance, ``oracle`` for the exact enumeration answer, and
``dee`` for dead-end-elimination preprocessing.  Data goes to stdout or
``--out``; diagnostics go to stderr.  ``solve`` exits 0 when termination
certifies convergence (gap closed or residuals), 3 on the iteration cap;
all commands exit 1 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .bounds import EIGENVECTOR, FIRST_COLUMN, UPPER_SOURCES
from .instances import (
    InstanceError,
    load_instance,
    random_instance,
    serialize_instance,
)
from .oracle import OracleSizeError, brute_force, goldstein_reduce
from .solver import (
    TERMINATION_MAX_ITER,
    SolverParams,
    default_params,
    solve,
    with_overrides,
)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_MAX_ITER = 3

_SOURCE_FLAGS = {
    "column": (FIRST_COLUMN,),
    "eig": (EIGENVECTOR,),
    "both": UPPER_SOURCES,
}


@dataclass(frozen=True)
class ReportDocument:
    """Machine-readable solve report (one document per solve)."""

    problem: str
    p: int
    n0: int
    lbd: float
    ubd: float
    rel_gap: float
    iter: int
    time_sec: float
    assignment: tuple[int, ...]
    termination: str
    params: SolverParams


def serialize_report(doc: ReportDocument, include_timing: bool = True) -> str:
    """JSON rendering with a fixed field order; ``include_timing=False``
    drops the wall-time field, leaving only input-determined content."""
    body = {
        "problem": doc.problem,
        "p": doc.p,
        "n0": doc.n0,
        "lbd": doc.lbd,
        "ubd": doc.ubd,
        "rel_gap": doc.rel_gap,
        "iter": doc.iter,
        "time_sec": doc.time_sec,
        "assignment": list(doc.assignment),
        "termination": doc.termination,
        "params": {
            "beta": doc.params.beta,
            "gamma": doc.params.gamma,
            "epsilon": doc.params.epsilon,
            "max_iter": doc.params.max_iter,
            "t_consecutive": doc.params.t_consecutive,
            "bound_period": doc.params.bound_period,
        },
    }
    if not include_timing:
        del body["time_sec"]
    return json.dumps(body, indent=2) + "\n"


def parse_report(text: str) -> ReportDocument:
    doc = json.loads(text)
    params = doc["params"]
    return ReportDocument(
        problem=doc["problem"],
        p=doc["p"],
        n0=doc["n0"],
        lbd=doc["lbd"],
        ubd=doc["ubd"],
        rel_gap=doc["rel_gap"],
        iter=doc["iter"],
        time_sec=doc.get("time_sec", 0.0),
        assignment=tuple(doc["assignment"]),
        termination=doc["termination"],
        params=SolverParams(
            beta=params["beta"],
            gamma=params["gamma"],
            epsilon=params["epsilon"],
            max_iter=params["max_iter"],
            t_consecutive=params["t_consecutive"],
            bound_period=params["bound_period"],
        ),
    )


def _write_output(text: str, out_path) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_solve(args) -> int:
    instance = load_instance(args.instance)
    target = instance
    reduction = None
    if args.dee:
        reduction = goldstein_reduce(instance)
        target = reduction.reduced
        sizes = "x".join(str(len(b)) for b in reduction.kept)
        print(
            f"dead-end elimination: {instance.partition.n0} -> "
            f"{target.partition.n0} rotamers ({sizes})",
            file=sys.stderr,
        )
    params = with_overrides(
        default_params(target),
        beta=args.beta,
        gamma=args.gamma,
        epsilon=args.eps,
        max_iter=args.max_iter,
        t_consecutive=args.t,
        bound_period=args.bound_period,
    )
    report = solve(target, params, upper_sources=_SOURCE_FLAGS[args.upper_source])
    assignment = report.assignment
    if reduction is not None:
        assignment = reduction.to_original(assignment)
    doc = ReportDocument(
        problem=instance.name,
        p=instance.partition.p,
        n0=instance.partition.n0,
        lbd=report.lbd,
        ubd=report.ubd,
        rel_gap=report.rel_gap,
        iter=report.iterations,
        time_sec=report.time_sec,
        assignment=assignment.choice,
        termination=report.termination,
        params=params,
    )
    _write_output(serialize_report(doc), args.out)
    return EXIT_MAX_ITER if report.termination == TERMINATION_MAX_ITER else EXIT_OK


def cmd_gen(args) -> int:
    inst = random_instance(
        args.p, args.m_max, (args.range[0], args.range[1]), args.seed
    )
    _write_output(serialize_instance(inst), args.out)
    return EXIT_OK


def cmd_oracle(args) -> int:
    instance = load_instance(args.instance)
    result = brute_force(instance, limit=args.limit)
    doc = {
        "problem": instance.name,
        "optimum": result.optimum,
        "assignment": list(result.argmin.choice),
        "enumerated": result.enumerated,
    }
    _write_output(json.dumps(doc, indent=2) + "\n", args.out)
    return EXIT_OK


def cmd_dee(args) -> int:
    instance = load_instance(args.instance)
    reduction = goldstein_reduce(instance)
    _write_output(serialize_instance(reduction.reduced), args.out)
    for i, block in enumerate(reduction.kept):
        print(
            f"block {i + 1}: kept {len(block)}/{instance.partition.m[i]} "
            f"rotamers {list(block)}",
            file=sys.stderr,
        )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="scpsolve",
        description="Certified side-chain positioning solver",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve an instance file")
    p_solve.add_argument("instance", help="path to an instance file")
    p_solve.add_argument("--out", default=None, help="write the report here")
    p_solve.add_argument("--beta", type=float, default=None)
    p_solve.add_argument("--gamma", type=float, default=None)
    p_solve.add_argument("--eps", type=float, default=None)
    p_solve.add_argument("--max-iter", type=int, default=None)
    p_solve.add_argument("--t", type=int, default=None, dest="t")
    p_solve.add_argument("--bound-period", type=int, default=None)
    p_solve.add_argument("--dee", action="store_true", help="preprocess with DEE")
    p_solve.add_argument(
        "--upper-source", choices=sorted(_SOURCE_FLAGS), default="both"
    )
    p_solve.set_defaults(func=cmd_solve)

    p_gen = sub.add_parser("gen", help="generate a seeded random instance")
    p_gen.add_argument("--p", type=int, required=True)
    p_gen.add_argument("--m-max", type=int, required=True)
    p_gen.add_argument("--range", type=float, nargs=2, default=(-10.0, 10.0))
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--out", default=None)
    p_gen.set_defaults(func=cmd_gen)

    p_oracle = sub.add_parser("oracle", help="exact answer by enumeration")
    p_oracle.add_argument("instance")
    p_oracle.add_argument("--limit", type=int, default=1_000_000)
    p_oracle.add_argument("--out", default=None)
    p_oracle.set_defaults(func=cmd_oracle)

    p_dee = sub.add_parser("dee", help="dead-end elimination preprocessing")
    p_dee.add_argument("instance")
    p_dee.add_argument("--out", default=None)
    p_dee.set_defaults(func=cmd_dee)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InstanceError, OracleSizeError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
