"""Run the verification suite and write the report to disk.

    python scripts/run_suite.py --n-max 5 --out results/report.json
"""
import argparse
import pathlib
import time

from unimod.suite import FAULTS, SuiteConfig, run_all


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-max", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--fault", choices=sorted(FAULTS))
    ap.add_argument("--out", type=pathlib.Path, default=pathlib.Path("results/report.json"))
    args = ap.parse_args()

    cfg = SuiteConfig(n_max=args.n_max, seed=args.seed, fault=args.fault)
    t0 = time.perf_counter()
    report = run_all(cfg)
    elapsed = time.perf_counter() - t0
    args.out.parent.mkdir(parents=True, exist_ok=True)
    args.out.write_text(report.to_machine() + "\n")
    print(report.to_text())
    print(f"wrote {args.out} ({elapsed:.1f} s)")
    return 0 if report.ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
