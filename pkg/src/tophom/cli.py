"""Command-line interface.

Exit codes: 0 success, 2 invalid arguments, 3 solver non-convergence.
All subcommands are deterministic given their seed; ``--threads`` never
changes the output.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .collapse import run_phases
from .complexes import sample_complex
from .harness import (
    fmt_float,
    gw_validation,
    process_experiment,
    threshold_scan,
)
from .homology import h_d
from .theory import (
    ConvergenceError,
    beta_sequence,
    gamma_recurrence,
    threshold_constants,
)


def _csv_line(values) -> str:
    out = []
    for v in values:
        out.append(fmt_float(v) if isinstance(v, float) else str(v))
    return ",".join(out)


def cmd_constants(args) -> int:
    print("d,beta_d,c_star,c_collapse,beta_asym,c_star_asym")
    for d in range(args.d_min, args.d_max + 1):
        tc = threshold_constants(d, tol=args.tol)
        print(
            _csv_line(
                [d, tc.beta_d, tc.c_star, tc.c_collapse, tc.beta_asym, tc.c_star_asym]
            )
        )
    return 0


def cmd_gamma(args) -> int:
    gammas = gamma_recurrence(args.d, args.c, args.r_max)
    betas = beta_sequence(args.d, args.c, max(args.r_max - 1, 0))
    print("r,gamma_r,beta_r")
    for r in range(args.r_max + 1):
        beta = fmt_float(float(betas[r])) if r < len(betas) else ""
        print(f"{r},{fmt_float(float(gammas[r]))},{beta}")
    return 0


def cmd_sample(args) -> int:
    x = sample_complex(args.n, args.d, args.c, args.seed)
    trace = run_phases(x)
    out = {
        "f_d": x.num_faces,
        "zeta_star": trace.zeta_star,
        "s_star": trace.s_star,
        "h_d": h_d(x, args.field) if not args.skip_homology else None,
        "phases": trace.k_stop,
    }
    print(json.dumps(out, sort_keys=True))
    return 0


def cmd_process(args) -> int:
    batch = process_experiment(args.n, args.d, args.trials, args.seed, args.threads)
    lines = [r.to_json() for r in batch.records]
    if args.out:
        with open(args.out, "w") as fh:
            fh.write("\n".join(lines) + "\n")
    else:
        for line in lines:
            print(line)
    print(json.dumps(batch.aggregates, sort_keys=True))
    return 0


def cmd_threshold_scan(args) -> int:
    grid = [
        round(c, 10)
        for c in np.arange(args.c_min, args.c_max + args.step / 2, args.step)
    ]
    rows = threshold_scan(
        args.n, args.d, grid, args.trials, args.seed, p=args.field,
        threads=args.threads,
    )
    print("c,trials,frac_s_positive,frac_h_positive,mean_s_density")
    for row in rows:
        print(
            _csv_line(
                [
                    row["c"],
                    row["trials"],
                    row["frac_s_positive"],
                    row["frac_h_positive"],
                    row["mean_s_density"],
                ]
            )
        )
    return 0


def cmd_gw(args) -> int:
    rows = gw_validation(
        args.d, [args.c], args.r_max, args.samples, args.seed,
        n_direct=args.direct_n, direct_faces=args.direct_faces,
        threads=args.threads,
    )
    print(
        "d,c,r,samples,tree_estimate,tree_std_error,"
        "direct_n,direct_faces,direct_estimate,direct_std_error,theory_gamma"
    )
    for row in rows:
        print(
            _csv_line(
                [
                    row["d"], row["c"], row["r"], row["samples"],
                    row["tree_estimate"], row["tree_std_error"],
                    row["direct_n"], row["direct_faces"],
                    row["direct_estimate"], row["direct_std_error"],
                    row["theory_gamma"],
                ]
            )
        )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tophom",
        description="Random d-complex collapse, homology and threshold experiments",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("constants", help="threshold constants table (CSV)")
    p.add_argument("--d-min", type=int, required=True)
    p.add_argument("--d-max", type=int, required=True)
    p.add_argument("--tol", type=float, default=1e-12)
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("gamma", help="gamma/beta recurrence table (CSV)")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--r-max", type=int, required=True)
    p.set_defaults(func=cmd_gamma)

    p = sub.add_parser("sample", help="one complex: collapse stats + homology (JSON)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--field", type=int, default=2)
    p.add_argument("--skip-homology", action="store_true",
                   help="skip h_d (exact rank is slow on large complexes)")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("process", help="first-cycle process experiment (JSONL)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", type=str, default=None)
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_process)

    p = sub.add_parser("threshold-scan", help="s/h fractions over a c-grid (CSV)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--c-min", type=float, required=True)
    p.add_argument("--c-max", type=float, required=True)
    p.add_argument("--step", type=float, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--field", type=int, default=2)
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_threshold_scan)

    p = sub.add_parser("gw", help="tree-vs-direct gamma validation (CSV)")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--r-max", type=int, required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--direct-n", type=int, default=500)
    p.add_argument("--direct-faces", type=int, default=2000)
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_gw)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
