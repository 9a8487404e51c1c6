"""Build both reductions for a set of 3DNF formulas and time the checks.

For each formula and variant: node and edge counts, the largest adjacency
degree, the witness check for every falsifying assignment and a sampled
comparison of the graph pairs.

Usage: python3 scripts/reduction_bench.py [--samples N] [--seed S] [FORMULA ...]
"""
import argparse
import sys
import time
from itertools import product
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "tests"))

from fixture_graphs import FORMULA_CORPUS  # noqa: E402
from dmgweak.reduction import (  # noqa: E402
    DENSE, SPARSE, build, is_tautology_bruteforce, max_adjacency_degree, parse_3dnf,
    sample_disagreements, witness_disagreement,
)


def bench(text, samples, seed):
    h = parse_3dnf(text)
    taut = is_tautology_bruteforce(h)[0]
    falsifying = [a for a in product((0, 1), repeat=h.n_vars) if not h.evaluate(a)]
    rows = []
    for variant in (DENSE, SPARSE):
        t0 = time.perf_counter()
        inst = build(h, variant)
        witnesses_ok = all(all(witness_disagreement(inst, a)) for a in falsifying)
        g12 = sample_disagreements(inst.g1, inst.g2, samples, seed=seed)
        gg1 = sample_disagreements(inst.g, inst.g1, samples, seed=seed)
        took = time.perf_counter() - t0
        rows.append((variant, inst.g.n, len(inst.g.edges()), max_adjacency_degree(inst.g1),
                     witnesses_ok, not g12, not gg1, took))
    return taut, rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("formulas", nargs="*")
    ap.add_argument("--samples", type=int, default=10 ** 4)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    formulas = args.formulas or [t for t, _ in FORMULA_CORPUS]
    print(f"{'formula':42} {'variant':7} {'nodes':>5} {'edges':>6} {'deg':>4} "
          f"{'wit':>4} {'g1=g2':>6} {'g=g1':>5} {'secs':>6}")
    for text in formulas:
        taut, rows = bench(text, args.samples, args.seed)
        name = text + (" (taut)" if taut else "")
        for variant, n, m, deg, wit, same12, same01, took in rows:
            print(f"{name:42} {variant:7} {n:5d} {m:6d} {deg:4d} {'ok' if wit else 'BAD':>4} "
                  f"{str(same12):>6} {str(same01):>5} {took:6.2f}")
            name = ""
    print("g1=g2 and g=g1 mean no disagreement was sampled; for a non-tautology the")
    print("disagreement is usually too rare to sample, the witness column covers it.")


if __name__ == "__main__":
    main()
