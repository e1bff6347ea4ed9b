"""Empirical exponent of n(s) as s approaches ||A|| from above.

For each pair of a seeded ensemble the normalised count
``n_{A+K}(||A|| + delta) / |||K|||_{p,INF}^p`` is evaluated on a log grid of
``delta``; the envelope over the ensemble is fitted by a power law
``delta^{-beta}``.  The bounds proven for Banach spaces have ``beta = p + 1``
and the Hilbert-space ones ``beta = p``; the fit is descriptive only.

    python scripts/exponent_fit.py --pairs 300 --p 0.5 1 2
"""
import argparse

import numpy as np

from spectral_perturb import eigen_profile, op_norm, random_ensemble
from spectral_perturb.bounds import k_norm_power


def envelope(pairs, p, deltas, norm_kind):
    env = np.zeros(deltas.size)
    for _, A, K in pairs:
        mods = np.abs(eigen_profile(A + K).flattened())
        nA = op_norm(A)
        nk = k_norm_power(K, p, norm_kind)
        if nk == 0:
            continue
        counts = np.array([np.count_nonzero(mods > nA + d) for d in deltas], dtype=float)
        env = np.maximum(env, counts / nk)
    return env


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("--pairs", type=int, default=300)
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("--p", type=float, nargs="+", default=[0.5, 1.0, 2.0])
    ap.add_argument("--norm", default="approx", choices=("approx", "entropy_upper"))
    ap.add_argument("--deltas", type=int, default=25, help="points of the log delta grid")
    args = ap.parse_args(argv)

    deltas = np.logspace(-3, 0.5, args.deltas)
    pairs = random_ensemble(args.pairs, args.seed)
    print(f"{'p':>5} {'beta_fit':>9} {'p':>5} {'p+1':>5}  points")
    for p in args.p:
        env = envelope(pairs, p, deltas, args.norm)
        keep = env > 0
        if keep.sum() < 3:
            print(f"{p:5g} {'n/a':>9}")
            continue
        slope, _ = np.polyfit(np.log(deltas[keep]), np.log(env[keep]), 1)
        print(f"{p:5g} {-slope:9.3f} {p:5g} {p + 1:5g}  {int(keep.sum())}")


if __name__ == "__main__":
    main()
