"""Growth of M_V(r) = sup_n ||V^n|| / r^n for the discretised Volterra operator.

The spectral radius of the N-point discretisation is 1/N, so M_V(r) is
finite for every r above it, yet it grows faster than any power of 1/r.
The table lists M_V(r) and the local log-log slope between neighbouring r.

    python scripts/volterra_growth.py --N 64 128 256
"""
import argparse
import math

from spectral_perturb import make_volterra, power_norm_sup


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("--N", type=int, nargs="+", default=[64, 128, 256])
    ap.add_argument("--r", type=float, nargs="+", default=[0.4, 0.2, 0.1, 0.07, 0.05])
    args = ap.parse_args(argv)

    rs = sorted(args.r, reverse=True)
    for N in args.N:
        V = make_volterra(N)
        ms = [power_norm_sup(V, r) for r in rs]
        print(f"N = {N}")
        print(f"  {'r':>6} {'M_V(r)':>12} {'slope':>7}")
        for k, (r, m) in enumerate(zip(rs, ms)):
            slope = "" if k == 0 else f"{math.log(m / ms[k - 1]) / math.log(rs[k - 1] / r):7.2f}"
            print(f"  {r:6.3g} {m:12.5g} {slope:>7}")
        total = math.log(ms[-1] / ms[0]) / math.log(rs[0] / rs[-1])
        print(f"  overall slope {total:.2f} between r={rs[0]:g} and r={rs[-1]:g}")


if __name__ == "__main__":
    main()
