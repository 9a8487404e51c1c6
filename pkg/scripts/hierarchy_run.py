"""Build the k-weak hierarchy for small n and report class counts and timing.

Usage: python3 scripts/hierarchy_run.py [--n 3] [--fix-loops] [--workers W] [--out FILE]
"""
import argparse
import time

from dmgweak import io
from dmgweak.eqclass import hierarchy


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--fix-loops", action="store_true")
    ap.add_argument("--workers", type=int, default=1, help="0 uses every CPU.")
    ap.add_argument("--out", default=None, help="Write the forest as JSON.")
    args = ap.parse_args(argv)

    start = time.perf_counter()
    forest = hierarchy(args.n, fix_loops=args.fix_loops, workers=args.workers)
    took = time.perf_counter() - start
    print(f"n={args.n} fix_loops={args.fix_loops}: {forest.graph_count} graphs in {took:.1f}s")
    for k, nodes in enumerate(forest.levels):
        sizes = sorted((node.members for node in nodes), reverse=True)
        print(f"  k={k}: {len(nodes)} classes, largest {sizes[:5]}")
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(io.dumps(io.forest_to_document(forest)))


if __name__ == "__main__":
    main()
