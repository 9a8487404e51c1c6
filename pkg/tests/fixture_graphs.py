"""Small hand-checked graphs used across the test suite.

Labels are the strings "1".."n"; helper ``ix`` maps a label to its index.
"""
from dmgweak.graph import Dmg


def build(n, directed=(), bidirected=(), loops="all", labels=None):
    """Graph on nodes 1..n (1-based pairs); loops: "all", "directed" or "none"."""
    d = [(a - 1, b - 1) for a, b in directed]
    b = [(x - 1, y - 1) for x, y in bidirected]
    if loops in ("all", "directed"):
        d += [(v, v) for v in range(n)]
    if loops == "all":
        b += [(v, v) for v in range(n)]
    labels = labels or [str(v) for v in range(1, n + 1)]
    return Dmg.from_edges(n, d, b, labels)


def ix(*labels):
    """1-based labels to 0-based indices (a set when given several)."""
    if len(labels) == 1:
        return int(labels[0]) - 1
    return {int(x) - 1 for x in labels}


# three nodes with a collider/noncollider switch at node 2
def mixed_triangle():
    g = Dmg.from_edges(3, [(1, 2), (2, 1), (0, 0), (2, 2)], [(0, 1), (1, 1)], ["1", "2", "3"])
    return g


# four graphs forming one Markov class (all loops present)
def four_class():
    base = [(1, 2), (2, 4), (4, 3)]
    bi = [(3, 2)]
    a = build(4, base, bi)
    b = build(4, base + [(1, 3)], bi)
    c = build(4, base + [(2, 3)], bi)
    d = build(4, base + [(1, 3), (2, 3)], bi)
    return {"A": a, "B": b, "C": c, "D": d}


def chain(n):
    """i -> i+1 and i <-> i+1 along a line, directed loops only."""
    pairs = [(i, i + 1) for i in range(1, n)]
    return build(n, pairs, pairs, loops="directed")


def complete(n):
    return Dmg.complete(n, [str(v) for v in range(1, n + 1)])


def two_node_trek():
    """2 -> 1 with directed loops: trek equivalent to the complete graph."""
    return build(2, [(2, 1)], loops="directed")


def directed_cycle(n):
    return build(n, [(i, i % n + 1) for i in range(1, n + 1)], loops="directed")


def inclusion_pair():
    """Both maximal, the second's model sits inside the first's."""
    g1 = build(3, [(1, 2), (1, 3), (2, 1)], [(1, 2)])
    g2 = build(3, [(1, 2), (1, 3), (3, 2)], [(1, 2)])
    return g1, g2


# separations listed for inclusion_pair, as (alpha, beta, C) with 1-based labels
INCLUSION_FIRST = {(2, 3, (1,)), (2, 3, (1, 3)), (3, 2, (1,)), (3, 2, (1, 2)),
                   (3, 1, (1,)), (3, 1, (1, 2))}
INCLUSION_SECOND = {(2, 3, (1, 3)), (3, 1, (1,))}


def weak_class():
    """Graphs A..D on four nodes, all loops; A, B, C are 2-weakly equivalent."""
    common = [(1, 3), (4, 2)]
    a = build(4, common + [(2, 3)], [(3, 2)])
    b = build(4, common + [(4, 3)], [(3, 2)])
    c = build(4, common + [(2, 3), (4, 3)], [(3, 2)])
    d = build(4, common + [(2, 3), (4, 3)])
    return {"A": a, "B": b, "C": c, "D": d}


def fan_pair(n):
    """1 -> i -> n for the middle nodes; the second graph adds 1 -> n."""
    mids = range(2, n)
    edges = [(1, i) for i in mids] + [(i, n) for i in mids]
    return build(n, edges), build(n, edges + [(1, n)])


def overlap_example():
    """Five nodes; used with a non-homogeneous triple collection."""
    g = build(5, [(1, 2), (2, 3), (3, 2), (4, 3), (3, 4)], [(5, 4)])
    g1 = g.add_edges([_bi(2, 3)])
    g2 = g.add_edges([_bi(3, 4)])
    g3 = g.add_edges([_bi(2, 3), _bi(3, 4)])
    return g, g1, g2, g3


def overlap_triples(n=5):
    """(alpha, beta, {beta}) for every pair, plus (1, 5, {2,3,4,5})."""
    out = [({a}, {b}, {b}) for a in range(n) for b in range(n)]
    out.append(({0}, {4}, {1, 2, 3, 4}))
    return out


def _bi(a, b):
    from dmgweak.graph import Edge
    return Edge.bidirected(a - 1, b - 1)


def _di(a, b):
    from dmgweak.graph import Edge
    return Edge.directed(a - 1, b - 1)


def degree_mismatch():
    """Five nodes; Markov equivalent to itself plus 5 -> 3."""
    return build(5, [(1, 2), (2, 3), (3, 2), (4, 3), (5, 4)], [(3, 4)])


def inseparable_nonadjacent():
    """Six nodes, maximal, 2 and 5 inseparable both ways but not adjacent."""
    return build(6, [(1, 2), (2, 3), (3, 2), (4, 5), (5, 4), (6, 5)], [(3, 5), (2, 4)])


def hub_family(n):
    """Nodes 0..2n: 0 -> 1 <-> 2, 2 <-> 2k both ways, (2k-1) -> 2k; all loops.

    Returned with labels "0".."2n" (node index == label).
    """
    labels = [str(v) for v in range(2 * n + 1)]
    d = [(0, 1)]
    for k in range(2, n + 1):
        d += [(2, 2 * k), (2 * k, 2), (2 * k - 1, 2 * k)]
    d += [(v, v) for v in range(2 * n + 1)]
    b = [(1, 2)] + [(v, v) for v in range(2 * n + 1)]
    return Dmg.from_edges(2 * n + 1, d, b, labels)


def out_star(n):
    return build(n, [(1, i) for i in range(2, n + 1)], loops="directed")


def in_star(n):
    return build(n, [(i, 1) for i in range(2, n + 1)], loops="directed")


def projection_not_maximal():
    """Four nodes (all loops) whose projection onto 1,2,3 is not k-maximal."""
    return build(4, [(1, 2), (2, 3), (4, 3), (4, 2)])


# alarm network ---------------------------------------------------------------

ALARM_DIRECTED = [(1, 5), (2, 5), (2, 3), (4, 3), (5, 9), (6, 3), (7, 3), (7, 11), (7, 12),
                  (8, 4), (8, 12), (9, 6), (9, 10), (9, 12), (10, 11), (11, 10)]
ALARM_KEEP = (1, 2, 3, 4, 5, 6, 8, 10, 11, 12)
ALARM_PROJECTED_DIRECTED = {(1, 5), (2, 5), (2, 3), (4, 3), (5, 6), (5, 10), (5, 12), (6, 3),
                            (8, 4), (8, 12), (10, 11), (11, 10)}
ALARM_PROJECTED_BIDIRECTED = {(3, 11), (3, 12), (6, 10), (6, 12), (10, 12), (11, 12)}
# edges added on top of the projection by the greatest element
ALARM_ADDED_HIGH_K = {("->", 6, 10), ("->", 6, 12), ("->", 10, 12), ("->", 11, 12)}
ALARM_ADDED_LOW_K = ALARM_ADDED_HIGH_K | {("<->", 3, 10)}
# dashed non-loop edges of the high-k DMEG as computed here (see the notes
# on 3 <-> 12 in the decisions ledger: it is dashed, the drawing shows it solid)
ALARM_DASHED_HIGH_K = {("->", 5, 10), ("->", 5, 12), ("->", 6, 10), ("->", 6, 12),
                       ("->", 10, 12), ("->", 11, 12), ("<->", 6, 12), ("<->", 10, 12),
                       ("<->", 3, 12)}


def alarm_full():
    """Twelve nodes, directed loops on all of them."""
    return build(12, ALARM_DIRECTED, loops="directed")


def alarm_projection():
    from dmgweak.projection import latent_project
    g = alarm_full()
    return latent_project(g, [v - 1 for v in ALARM_KEEP]).graph


def edge_triples(g, edges):
    """Edges as (kind, label, label) with bidirected endpoints in numeric order."""
    out = set()
    for e in edges:
        a, b = int(g.label(e.a)), int(g.label(e.b))
        if e.kind == "<->":
            a, b = min(a, b), max(a, b)
        out.add((e.kind, a, b))
    return out


# formula corpus: (text, is tautology), the flag worked out by hand
FORMULA_CORPUS = [
    ("x1 | !x1", True),
    ("x1 & x2 | !x1 | !x2", True),
    ("x1 | !x1 & x2 | !x2", True),
    ("x1 & x2 | x1 & !x2 | !x1", True),
    ("x1 & x2 | !x1 & x3 | !x2 | !x3", True),
    ("x1 & x2 & x3 | !x1 | !x2 | !x3", True),
    ("x1 & x2 | !x1 & !x2 | x1 & !x2 | !x1 & x2", True),
    ("x1 | !x1 & x3 | !x3 & x4 | !x4", True),
    ("x1", False),
    ("!x1", False),
    ("x1 & x2 & x3", False),
    ("x1 | x2", False),
    ("x1 & x2 | !x1 & !x2", False),
    ("x1 | x2 | x3", False),
    ("x1 & !x2 | x2 & !x3 | x3 & !x1", False),
    ("x1 & x2 & x3 | !x1 & !x2 & !x3", False),
    ("x1 | !x2 & x3 | x4", False),
    ("x1 & x2 | x3 & x4 | !x1 & !x3", False),
    ("!x1 & x4 | x2 & !x3", False),
    ("x1 & !x1", False),
    ("x1 | x2 & x3 | !x4 | !x1 & !x2", False),
    ("x1 & x2 | x1 & !x2 | !x1 & x3", False),
    ("x2 & x3 & x4 | !x2 | !x3", False),
    ("x1 | x1 | x1", False),
]
