"""Print the intervals of r on which s(K_2, K_r) stays constant, checked at both ends."""
from __future__ import annotations

import argparse

from homlp.cli import interval_rows
from homlp.exactlp import format_rational


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k-max", type=int, default=5)
    args = ap.parse_args()
    print(f"{'k':>3}  {'r_low':>7}  {'r_high':>7}  {'s':>6}  ends agree")
    for row in interval_rows(args.k_max, check=True):
        same = row["s_at_low"] == row["s"] == row["s_at_high"]
        cells = [format_rational(row[c]) for c in ("r_low", "r_high", "s")]
        print(f"{row['k']:>3}  {cells[0]:>7}  {cells[1]:>7}  {cells[2]:>6}  {same}")


if __name__ == "__main__":
    main()
