"""Project the twelve-node alarm network onto ten nodes and print its extremal graphs.

Usage: python3 scripts/alarm_example.py [--dot-dir DIR]
"""
import argparse
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "tests"))

from fixture_graphs import ALARM_KEEP, alarm_full  # noqa: E402
from dmgweak import io  # noqa: E402
from dmgweak.eqclass import dmeg, greatest_element  # noqa: E402
from dmgweak.graph import Edge  # noqa: E402
from dmgweak.independence import ConditioningFamily  # noqa: E402
from dmgweak.projection import latent_project  # noqa: E402


def edges_text(g, edges):
    return ", ".join(g.edge_str(e) for e in sorted(edges, key=Edge.sort_key)) or "(none)"


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dot-dir", type=Path, default=None, help="Write DOT files here.")
    args = ap.parse_args(argv)

    full = alarm_full()
    proj = latent_project(full, [v - 1 for v in ALARM_KEEP]).graph
    print(f"projection onto {', '.join(map(str, ALARM_KEEP))}:")
    print("  " + edges_text(proj, proj.non_loop_edges()))
    for k in (2, proj.n):
        fam = ConditioningFamily.size_bound(k)
        top = greatest_element(proj, fam)
        added = set(top.non_loop_edges()) - set(proj.non_loop_edges())
        d = dmeg(proj, fam, fixed_loops=True)
        dashed = [e for e in d.dashed_sorted() if e.a != e.b]
        print(f"k={k}: greatest element adds {edges_text(top, added)}")
        print(f"      dashed edges: {edges_text(top, dashed)}")
        if args.dot_dir:
            args.dot_dir.mkdir(parents=True, exist_ok=True)
            (args.dot_dir / f"alarm_dmeg_k{k}.dot").write_text(io.to_dot(d.base, d.dashed, f"k{k}"))


if __name__ == "__main__":
    main()
