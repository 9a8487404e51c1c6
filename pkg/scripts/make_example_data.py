"""Write the small example graphs used by the README into data/."""
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "tests"))

from fixture_graphs import (  # noqa: E402
    alarm_full, directed_cycle, four_class, mixed_triangle, overlap_example,
    overlap_triples, weak_class,
)
from dmgweak import io  # noqa: E402


def main(out=ROOT / "data"):
    out.mkdir(exist_ok=True)

    def graph(name, g):
        (out / f"{name}.json").write_text(io.dumps(io.graph_to_document(g)))

    graph("three_node", mixed_triangle())
    fc = four_class()
    graph("four_class_a", fc["A"])
    graph("four_class_d", fc["D"])
    wc = weak_class()
    graph("weak_class_c", wc["C"])
    graph("weak_class_d", wc["D"])
    graph("alarm_full", alarm_full())
    graph("directed_cycle", directed_cycle(4))
    base, _, _, both = overlap_example()
    graph("overlap_base", base)
    graph("overlap_both", both)
    triples = [{"A": [str(v + 1) for v in a], "B": [str(v + 1) for v in b],
                "C": [str(v + 1) for v in sorted(c)]} for a, b, c in overlap_triples()]
    (out / "overlap_triples.json").write_text(io.dumps(triples))
    (out / "family_k2.json").write_text(io.dumps({"k": 2}))
    (out / "family_sets.json").write_text(io.dumps({"sets": [[], ["2"], ["2", "4"]]}))
    seps = {"nodes": ["1", "2", "3"], "separations": [["1", "3", ["2", "3"]], ["3", "1", ["1"]]]}
    (out / "separation_list.json").write_text(io.dumps(seps))
    print(f"wrote {len(list(out.glob('*.json')))} files to {out}")


if __name__ == "__main__":
    main()
