"""Ratio of the entropy-number and approximation-number Lorentz norms.

On finite matrices both norms are finite, so only the size of
``|||K|||^(e)_{p,q} / |||K|||^(a)_{p,q}`` across an ensemble is of interest.
The entropy side uses the certified upper estimates, so the ratio printed is
an upper bound on the true one.  Quantiles are reported; nothing is asserted.

    python scripts/ratio_statistic.py --pairs 200
"""
import argparse

import numpy as np

from spectral_perturb import INF, LorentzParams, ideal_norm, random_ensemble


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("--pairs", type=int, default=200)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--n-max", type=int, default=12)
    args = ap.parse_args(argv)

    grid = [(0.5, INF), (1.0, INF), (2.0, INF), (1.0, 1.0), (2.0, 2.0)]
    pairs = random_ensemble(args.pairs, args.seed, n_max=args.n_max)
    print(f"{'p':>4} {'q':>4} {'min':>8} {'median':>8} {'p90':>8} {'max':>8}")
    for p, q in grid:
        params = LorentzParams(p, q)
        ratios = []
        for _, _, K in pairs:
            a = ideal_norm(K, params, "approx")
            if a > 0:
                ratios.append(ideal_norm(K, params, "entropy_upper") / a)
        r = np.array(ratios)
        qs = np.quantile(r, [0.0, 0.5, 0.9, 1.0])
        print(f"{p:4g} {q:4g} " + " ".join(f"{v:8.3f}" for v in qs))


if __name__ == "__main__":
    main()
