"""Run the bounded-degree structural checks and print a pass/fail table.

    python3 scripts/verify_lemmas.py --degree 6 --samples 20
"""
import argparse
import time

from derauto.config import LemmaExperiment
from derauto.lemmas import format_table, lemma_suite


def main():
    d = LemmaExperiment()
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--nvars", type=int, nargs="+", default=list(d.nvars))
    ap.add_argument("--degree", type=int, default=d.degree)
    ap.add_argument("--closure-degree", type=int, default=d.closure_degree)
    ap.add_argument("--samples", type=int, default=d.samples)
    ap.add_argument("--seed", type=int, default=d.seed)
    args = ap.parse_args()
    all_ok = True
    for n in args.nvars:
        start = time.perf_counter()
        checks = lemma_suite(n, args.degree, args.closure_degree, args.samples, args.seed)
        all_ok &= all(c.passed for c in checks)
        print(format_table(checks))
        print(f"  n={n}: {time.perf_counter() - start:.2f}s\n")
    raise SystemExit(0 if all_ok else 1)


if __name__ == "__main__":
    main()
