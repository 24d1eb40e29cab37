#!/usr/bin/env python3
"""Localization error growth when the series length quadruples at fixed
signal-to-noise ratio.

Holds the signal (three change points at 125/250/375, unit jumps) and the
noise fixed while n goes from --n to 4 * --n, and prints error quantiles
for both detectors.  Under the log(n) localization theory the 90th
percentile should grow by at most ~log(4n)/log(n).
"""

import argparse
import math

import numpy as np

from steploc.experiments import ExperimentConfig, run_experiment
from steploc.signal import make_signal


def quantiles(method: str, n: int, reps: int, seed: int, jobs: int) -> dict:
    sig = make_signal(n, [125, 250, 375], [0.0, 1.0, 0.0, 1.0])
    kw = dict(n=n, method=method, sigma=1.0, base_seed=seed, replications=reps, signal=sig)
    if method == "l0":
        kw["lam"] = 2 * math.log(n)
    else:
        kw["tau"] = 2.0 * math.sqrt(math.log(n))
        kw["intervals"] = 600
        kw["max_len"] = 250
    rows = run_experiment(ExperimentConfig(**kw), jobs=jobs)
    errs = np.asarray([r.max_err for r in rows if r.k_correct])
    return {
        "correct": len(errs) / len(rows),
        "p50": float(np.quantile(errs, 0.5)),
        "p90": float(np.quantile(errs, 0.9)),
    }


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=500, help="base length (>= 376)")
    ap.add_argument("--reps", type=int, default=200)
    ap.add_argument("--seed", type=int, default=1729)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()

    allowed = 1.5 * math.log(4 * args.n) / math.log(args.n)
    print(f"allowed p90 growth factor: {allowed:.3f}")
    for method in ("l0", "wbs"):
        base = quantiles(method, args.n, args.reps, args.seed, args.jobs)
        quad = quantiles(method, 4 * args.n, args.reps, args.seed, args.jobs)
        ratio = quad["p90"] / base["p90"] if base["p90"] > 0 else float("inf")
        print(
            f"{method}: n={args.n} p50={base['p50']:.1f} p90={base['p90']:.1f} "
            f"(correct {base['correct']:.2f}) | n={4*args.n} p50={quad['p50']:.1f} "
            f"p90={quad['p90']:.1f} (correct {quad['correct']:.2f}) | ratio={ratio:.2f}"
        )


if __name__ == "__main__":
    main()
