"""Scan x x^-a x^(a^2) = c over every admissible (a, c) in a list of groups.

For each group: how many pairs satisfy the hypotheses (a^6, c in G'), how
many of those have a solution in the group itself, and how many have a
nontrivial obstruction g. Groups of derived length > 2 are included on
purpose: there a solution may coexist with g != 1.

    python scripts/scan_equation.py g42 remark:3 "wreath:(cyclic:2,cyclic:6:a)"
"""
import argparse
import csv
import sys
from dataclasses import dataclass

from unimod.derived import derived_series
from unimod.equations import brute_force_solve, obstruction_element, standard_equation
from unimod.groups import CapacityError, as_finite
from unimod.parsing import parse_group_spec

DEFAULT_SPECS = ["g42", "remark:3", "remark:4", "remark:5", "metacyclic:(13,6,4)",
                 "metacyclic:(9,6,2)", "dl:3", "wreath:(cyclic:2,cyclic:6:a)"]


@dataclass
class ScanConfig:
    specs: list
    cap: int = 5000
    max_pairs: int = 20000


def scan(G, max_pairs):
    s = derived_series(G)
    D = s.term(1)
    acting = [x for x in range(G.size) if G.power(x, 6) in D]
    rows = dict(pairs=0, solvable=0, g_nontrivial=0, solvable_with_g_nontrivial=0)
    for a in acting:
        for c in D.members:
            if rows["pairs"] >= max_pairs:
                return s, rows
            rows["pairs"] += 1
            sol = bool(brute_force_solve(standard_equation(G, a, c)))
            g = obstruction_element(G, a, c) != G.identity
            rows["solvable"] += sol
            rows["g_nontrivial"] += g
            rows["solvable_with_g_nontrivial"] += sol and g
    return s, rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("specs", nargs="*", default=DEFAULT_SPECS)
    ap.add_argument("--cap", type=int, default=5000)
    ap.add_argument("--max-pairs", type=int, default=20000)
    args = ap.parse_args()
    cfg = ScanConfig(args.specs, args.cap, args.max_pairs)

    out = csv.writer(sys.stdout)
    out.writerow(["group", "order", "derived_length", "pairs", "solvable", "g_nontrivial",
                  "solvable_with_g_nontrivial"])
    for spec in cfg.specs:
        try:
            G = as_finite(parse_group_spec(spec, cfg.cap), cfg.cap)
            s, rows = scan(G, cfg.max_pairs)
        except CapacityError as exc:
            print(f"# {spec}: skipped ({exc})", file=sys.stderr)
            continue
        out.writerow([spec, G.size, s.derived_length, *rows.values()])


if __name__ == "__main__":
    main()
