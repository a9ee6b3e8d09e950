"""Time inversion and recovery of two-factor triangular maps as their degree grows.

    python3 scripts/degree_scaling.py --max-k 6
"""
import argparse
import time

from derauto.endomorph import compose, invert_bounded
from derauto.parsing import parse_endo
from derauto.recover import main_theorem_roundtrip, retry_doubling


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-k", type=int, default=5)
    args = ap.parse_args()
    print(f"{'k':>2} {'deg':>4} {'inv deg':>7} {'bound':>5} {'invert s':>9} {'roundtrip s':>11}")
    for k in range(1, args.max_k + 1):
        # x1 -> x1 + x2^k after x2 -> x2 + x1^2: degree 2k
        sigma = compose(parse_endo(f"x1 -> x1 + x2^{k}", 2), parse_endo("x2 -> x2 + x1^2", 2))
        t0 = time.perf_counter()
        tau, used = retry_doubling(lambda m: invert_bounded(sigma, m), sigma.degree(), 4)
        t1 = time.perf_counter()
        (ok, _), _ = retry_doubling(lambda m: main_theorem_roundtrip(sigma, m, 64), used, 2)
        t2 = time.perf_counter()
        assert ok
        print(f"{k:>2} {sigma.degree():>4} {tau.degree():>7} {used:>5} {t1 - t0:>9.3f} {t2 - t1:>11.3f}")


if __name__ == "__main__":
    main()
