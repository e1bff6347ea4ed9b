"""Hilbert-space counting bound against the general Banach-space one.

For s just above ||A|| the Hilbert bound scales like (s - ||A||)^{-p} while
the Banach bound scales like (s - ||A||)^{-(p+1)}.  The script prints the
ratio of the two on random pairs and writes an SVG of the median ratio.

    python scripts/hilbert_vs_banach.py --pairs 40 --p 2 --out hvb.svg
"""
import argparse
from pathlib import Path

import numpy as np

from spectral_perturb import op_norm, random_ensemble, thm1_bound
from spectral_perturb.hilbert import hilbert_counting_checks
from spectral_perturb.svgplot import line_plot


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("--pairs", type=int, default=40)
    ap.add_argument("--seed", type=int, default=11)
    ap.add_argument("--p", type=float, default=2.0)
    ap.add_argument("--out", type=Path, help="write an SVG plot here")
    args = ap.parse_args(argv)
    if not args.p > 1:
        ap.error("--p must exceed 1 for the Hilbert bound")

    deltas = np.logspace(-3, 0, 13)
    ratios = np.empty((args.pairs, deltas.size))
    for i, (_, A, K) in enumerate(random_ensemble(args.pairs, args.seed, n_max=10)):
        nA = op_norm(A)
        for j, d in enumerate(deltas):
            s = nA + d
            hcor = next(r for r in hilbert_counting_checks(A, K, args.p, s, r_grid=4) if r.theorem_id == "HCOR_NORM")
            ratios[i, j] = hcor.bound_value / thm1_bound(A, K, s, args.p).bound_value
    med = np.median(ratios, axis=0)
    print(f"{'s-||A||':>9} {'median':>10} {'min':>10} {'max':>10}")
    for d, m, lo, hi in zip(deltas, med, ratios.min(0), ratios.max(0)):
        print(f"{d:9.3g} {m:10.4g} {lo:10.4g} {hi:10.4g}")
    slope = np.polyfit(np.log(deltas), np.log(med), 1)[0]
    print(f"log-log slope of the median ratio: {slope:.3f} (exponent gap, expected 1)")
    if args.out:
        svg = line_plot([{"label": "median Hilbert / Banach", "x": deltas.tolist(), "y": med.tolist()}],
                        title=f"bound ratio, p={args.p:g}", xlabel="s - ||A||", ylabel="ratio", log_y=True)
        args.out.write_text(svg, encoding="utf-8")


if __name__ == "__main__":
    main()
