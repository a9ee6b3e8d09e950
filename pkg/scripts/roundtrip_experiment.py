"""Roundtrip random tame automorphisms through conjugation and recovery.

For each sample sigma: conjugate the partials by sigma, recover tau from the
conjugates alone, and check that tau^-1 sigma is a shift.  Prints one line
per sample and a summary; optionally writes JSON records.

    python3 scripts/roundtrip_experiment.py --samples 100 --json out.json
"""
import argparse
import json
import random
import time

from derauto.config import Bounds, RoundtripExperiment
from derauto.errors import DerautoError
from derauto.recover import main_theorem_roundtrip, retry_doubling
from derauto.sampling import random_tame


def run(cfg: RoundtripExperiment):
    rng = random.Random(cfg.seed)
    records = []
    for k in range(cfg.samples):
        n = cfg.nvars[k % len(cfg.nvars)]
        sigma = random_tame(rng, n, cfg.max_factors, cfg.factor_degree, cfg.max_total_degree)
        start = time.perf_counter()
        rec = {"n": n, "sigma": str(sigma), "degree": sigma.degree()}
        try:
            (ok, rep), used = retry_doubling(
                lambda m: main_theorem_roundtrip(sigma, m, cfg.bounds.cap, cfg.method),
                max(cfg.bounds.max_deg, sigma.degree()), cfg.bounds.retries)
            rec.update(ok=ok, tau=str(rep.sigma), degree_bound_used=used,
                       branches=[t["branch"] for t in rep.trace if "branch" in t])
        except DerautoError as exc:
            rec.update(ok=False, error=str(exc))
        rec["seconds"] = round(time.perf_counter() - start, 4)
        records.append(rec)
    return records


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=100)
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("--max-total-degree", type=int, default=None,
                    help="cap on the composite degree (default: none)")
    ap.add_argument("--method", choices=("proof", "direct"), default="proof")
    ap.add_argument("--max-deg", type=int, default=Bounds().max_deg)
    ap.add_argument("--json", default=None, help="write records to this file")
    args = ap.parse_args()
    cfg = RoundtripExperiment(samples=args.samples, seed=args.seed, method=args.method,
                              max_total_degree=args.max_total_degree,
                              bounds=Bounds(max_deg=args.max_deg))
    records = run(cfg)
    for r in records:
        status = "ok " if r["ok"] else "FAIL"
        print(f"{status} n={r['n']} deg={r['degree']:<2} {r['seconds']:>7.3f}s  {r['sigma']}")
    failures = sum(not r["ok"] for r in records)
    total = sum(r["seconds"] for r in records)
    print(f"\n{len(records) - failures}/{len(records)} roundtrips closed, {total:.2f}s total, "
          f"max degree {max(r['degree'] for r in records)}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(records, fh, indent=1)


if __name__ == "__main__":
    main()
