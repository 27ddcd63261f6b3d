"""Render the preimage tables of the stored walk maps and the signature of each map."""
from __future__ import annotations

import argparse

from homlp.constructions import EXAMPLE_TABLES, build_fS, grid_from_map, render_table, signature_of
from homlp.graphs import circular_complete, cycle
from homlp.symmetry import circular_orbits


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("names", nargs="*", default=sorted(EXAMPLE_TABLES))
    args = ap.parse_args()
    for name in args.names:
        t = EXAMPLE_TABLES[name]
        p, q, k = t["p"], t["q"], t["k"]
        f = build_fS(p, q, k, t["S"])
        sig = signature_of(f, cycle(2 * k + 1), circular_complete(p, q), circular_orbits(p, q))
        grid = grid_from_map(p, q, k, t["S"])
        same = "matches" if grid == t["grid"] else "differs from"
        print(f"# {name}: K({p}/{q}) -> C({2 * k + 1}), signature {sig}, {same} the stored table")
        print(render_table(grid))


if __name__ == "__main__":
    main()
