"""Compare s(K_2, G) with the bipartite density of G for a few circular graphs."""
from __future__ import annotations

import argparse
import json

from homlp.graphs import parse_graph
from homlp.hcuts import refute_density_conjecture


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("graphs", nargs="*", default=["K(11/4)", "C(5)", "K(4)", "K(8/3)"])
    ap.add_argument("--json", action="store_true", help="print the full records")
    args = ap.parse_args()
    for text in args.graphs:
        rec = refute_density_conjecture(parse_graph(text))
        if args.json:
            print(json.dumps(rec, indent=2))
        else:
            print(
                f"{rec['graph']:>8}: s = {rec['s']:>6}, max cut {rec['max_cut']}/{rec['edges']} "
                f"({rec['parity']}), {rec['conclusion']}"
            )


if __name__ == "__main__":
    main()
