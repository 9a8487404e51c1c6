"""Greatest elements, extremal checks, DMEGs and the k-weak hierarchy."""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations

from .graph import Dmg, Edge, GuardError, _ancestor_mask, iter_bits, popcount, to_mask
from .independence import ConditioningFamily, first_difference, weak_equivalent
from .potential import SeparationMatrix, allowed_edges
from .separation import head_reach

LEAST_MAX_DASHED = 20
HIERARCHY_MAX_NODES = 3
HIERARCHY_MAX_NODES_FIXED_LOOPS = 4


def greatest_from_matrices(n: int, matrices) -> tuple:
    """AND the per-C allowed edges; returns (dir rows, bi rows)."""
    full = (1 << n) - 1
    d = [full] * n
    b = [full] * n
    for sm in matrices:
        dok, bok = allowed_edges(sm)
        for a in range(n):
            d[a] &= dok[a]
            b[a] &= bok[a]
    return tuple(d), tuple(b)


def greatest_element(g: Dmg, fam: ConditioningFamily) -> Dmg:
    """Unique maximal member of the weak equivalence class of ``g``.

    An edge is kept when its parent/sibling condition holds for every
    conditioning set of the family; loops are candidates like any other edge.
    """
    mats = (SeparationMatrix.from_graph(g, cm) for cm in fam.masks(g.n))
    d, b = greatest_from_matrices(g.n, mats)
    return Dmg(g.n, d, b, g.labels)


def is_maximal(g: Dmg, fam: ConditioningFamily) -> bool:
    return greatest_element(g, fam) == g


def is_minimal(g: Dmg, fam: ConditioningFamily) -> bool:
    for e in g.edges():
        if weak_equivalent(g, g.remove_edge(e), fam)[0]:
            return False
    return True


@dataclass(frozen=True)
class Dmeg:
    """Greatest element with the edges split into solid and dashed."""

    base: Dmg
    dashed: frozenset = field(default_factory=frozenset)

    @property
    def solid(self) -> list:
        return [e for e in self.base.edges() if e not in self.dashed]

    def dashed_sorted(self) -> list:
        return sorted(self.dashed, key=Edge.sort_key)


def dashed_edges(base: Dmg, fam: ConditioningFamily, fixed_loops: bool = False) -> frozenset:
    # some member lacks e  <=>  base - e is a member (monotonicity squeeze)
    masks = fam.masks(base.n)
    out = set()
    for e in base.edges():
        if fixed_loops and e.is_loop:
            continue
        if first_difference(base, base.remove_edge(e), masks) is None:
            out.add(e)
    return frozenset(out)


def dmeg(g: Dmg, fam: ConditioningFamily, fixed_loops: bool = False) -> Dmeg:
    """Greatest element plus its dashed edges.

    With ``fixed_loops`` the class is restricted to graphs carrying every
    loop of the greatest element, so loops always count as solid.
    """
    base = greatest_element(g, fam)
    return Dmeg(base, dashed_edges(base, fam, fixed_loops))


def least_element(g: Dmg, fam: ConditioningFamily, fixed_loops: bool = False):
    """The least member of the class, or None if there is none.

    Every member lies between ``base - dashed`` and ``base``, and for each
    dashed edge some member lacks it, so a least member exists exactly when
    ``base - dashed`` is itself a member.
    """
    d = dmeg(g, fam, fixed_loops)
    if len(d.dashed) > LEAST_MAX_DASHED:
        raise GuardError(f"least-element search limited to {LEAST_MAX_DASHED} dashed edges, "
                         f"got {len(d.dashed)}")
    candidate = d.base.remove_edges(d.dashed)
    if weak_equivalent(candidate, d.base, fam)[0]:
        return candidate
    return None


def class_members(g: Dmg, fam: ConditioningFamily, fixed_loops: bool = False) -> list:
    """Every member of the class, by sweeping subsets of the dashed edges.

    Supersets of a failing removal fail too, so they are pruned.
    """
    d = dmeg(g, fam, fixed_loops)
    dashed = d.dashed_sorted()
    if len(dashed) > LEAST_MAX_DASHED:
        raise GuardError(f"member sweep limited to {LEAST_MAX_DASHED} dashed edges, got {len(dashed)}")
    masks = fam.masks(g.n)
    failed = []
    members = []
    for size in range(len(dashed) + 1):
        for combo in combinations(range(len(dashed)), size):
            cm = to_mask(combo)
            if any(f & ~cm == 0 for f in failed):
                continue
            h = d.base.remove_edges(dashed[i] for i in combo)
            if first_difference(h, d.base, masks) is None:
                members.append(h)
            else:
                failed.append(cm)
    return members


def maximal_elements(graphs) -> list:
    """Graphs of the collection with no proper supergraph in the collection."""
    from .graph import is_subgraph
    graphs = list(graphs)
    return [g for g in graphs
            if not any(h != g and is_subgraph(g, h) for h in graphs)]


def greatest_of_set(graphs):
    """The member containing every other member, or None."""
    from .graph import is_subgraph
    graphs = list(graphs)
    for g in graphs:
        if all(is_subgraph(h, g) for h in graphs):
            return g
    return None


# hierarchy ---------------------------------------------------------------------

def encode_rows(n: int, d, b) -> int:
    code = 0
    for a in range(n):
        code |= d[a] << (a * n)
        code |= b[a] << (n * n + a * n)
    return code


def decode_rows(n: int, code: int):
    m = (1 << n) - 1
    d = tuple((code >> (a * n)) & m for a in range(n))
    b = tuple((code >> (n * n + a * n)) & m for a in range(n))
    return d, b


def graph_from_code(n: int, code: int, labels=None) -> Dmg:
    d, b = decode_rows(n, code)
    return Dmg(n, d, b, labels)


def _pairs(n):
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def enumeration_size(n: int, fix_loops: bool) -> int:
    return 8 ** len(_pairs(n)) * (1 if fix_loops else 4 ** n)


def graph_at(n: int, index: int, fix_loops: bool):
    """The ``index``-th graph of the enumeration, as raw rows."""
    d = [0] * n
    b = [0] * n
    for i, j in _pairs(n):
        bits = index & 7
        index >>= 3
        if bits & 1:
            d[i] |= 1 << j
        if bits & 2:
            d[j] |= 1 << i
        if bits & 4:
            b[i] |= 1 << j
            b[j] |= 1 << i
    for v in range(n):
        if fix_loops:
            d[v] |= 1 << v
            b[v] |= 1 << v
        else:
            bits = index & 3
            index >>= 2
            if bits & 1:
                d[v] |= 1 << v
            if bits & 2:
                b[v] |= 1 << v
    return tuple(d), tuple(b)


def _parents(n, d):
    p = [0] * n
    for a in range(n):
        for h in iter_bits(d[a]):
            p[h] |= 1 << a
    return p


def _levels_for_chunk(args):
    """Greatest-element codes per level for a range of enumerated graphs."""
    n, fix_loops, start, stop = args
    full = (1 << n) - 1
    masks = [to_mask(c) for size in range(n) for c in combinations(range(n), size)]
    sizes = [popcount(m) for m in masks]
    allowed_cache = {}
    out = []
    for index in range(start, stop):
        d, b = graph_at(n, index, fix_loops)
        p = _parents(n, d)
        gd = [full] * n
        gb = [full] * n
        per_level = []
        level = 0
        for cm, size in zip(masks, sizes):
            if size > level:
                per_level.append(encode_rows(n, gd, gb))
                level = size
            anc = _ancestor_mask(p, cm)
            rows = tuple(full if (cm >> a) & 1 else full & ~head_reach(d, p, b, a, cm, anc)
                         for a in range(n))
            key = (cm, rows)
            ok = allowed_cache.get(key)
            if ok is None:
                ok = allowed_edges(SeparationMatrix(n, cm, rows))
                allowed_cache[key] = ok
            dok, bok = ok
            for a in range(n):
                gd[a] &= dok[a]
                gb[a] &= bok[a]
        per_level.append(encode_rows(n, gd, gb))
        out.append((encode_rows(n, d, b), tuple(per_level)))
    return out


@dataclass
class HierarchyNode:
    level: int
    code: int
    graph: Dmg
    parent: int | None = None  # index into the previous level
    members: int = 0
    dashed: frozenset | None = None


@dataclass
class HierarchyForest:
    n: int
    fix_loops: bool
    levels: list  # list of lists of HierarchyNode
    graph_count: int

    def roots(self) -> list:
        return self.levels[0]

    def children(self, level: int, idx: int) -> list:
        if level + 1 >= len(self.levels):
            return []
        return [j for j, node in enumerate(self.levels[level + 1]) if node.parent == idx]

    def find(self, level: int, g: Dmg):
        code = encode_rows(self.n, g.dir, g.bi)
        for i, node in enumerate(self.levels[level]):
            if node.code == code:
                return i
        return None


def hierarchy(n: int, fix_loops: bool = False, workers: int | None = 1,
              with_dmeg: bool | None = None, chunk: int = 4096) -> HierarchyForest:
    """Build the k-weak hierarchy over all DMGs on ``n`` nodes.

    Levels k = 0..n-1; each node is a k-maximal graph and points down to the
    greatest element of its class at level k-1.
    """
    limit = HIERARCHY_MAX_NODES_FIXED_LOOPS if fix_loops else HIERARCHY_MAX_NODES
    if n < 1 or n > limit:
        raise GuardError(f"hierarchy enumeration limited to n <= {limit}"
                         f"{' with fixed loops' if fix_loops else ''}, got {n}")
    total = enumeration_size(n, fix_loops)
    jobs = [(n, fix_loops, s, min(s + chunk, total)) for s in range(0, total, chunk)]
    if workers is None or workers <= 0:
        workers = os.cpu_count() or 1
    if workers == 1 or len(jobs) == 1:
        results = map(_levels_for_chunk, jobs)
    else:
        pool = ProcessPoolExecutor(max_workers=workers)
        results = pool.map(_levels_for_chunk, jobs)
    nlev = n
    counts = [dict() for _ in range(nlev)]
    links = [dict() for _ in range(nlev)]
    for part in results:
        for _code, per_level in part:
            for k, gcode in enumerate(per_level):
                counts[k][gcode] = counts[k].get(gcode, 0) + 1
                if k > 0:
                    prev = links[k].setdefault(gcode, per_level[k - 1])
                    if prev != per_level[k - 1]:
                        raise AssertionError("class maps to two different parents")
    if workers != 1 and len(jobs) > 1:
        pool.shutdown()
    levels = []
    for k in range(nlev):
        codes = sorted(counts[k])
        index = {c: i for i, c in enumerate(codes)}
        nodes = []
        for c in codes:
            node = HierarchyNode(k, c, graph_from_code(n, c), members=counts[k][c])
            if k > 0:
                node.parent = prev_index[links[k][c]]
            nodes.append(node)
        levels.append(nodes)
        prev_index = index
    if with_dmeg is None:
        with_dmeg = True
    if with_dmeg:
        for k, nodes in enumerate(levels):
            fam = ConditioningFamily.size_bound(k)
            for node in nodes:
                node.dashed = dashed_edges(node.graph, fam, fixed_loops=fix_loops)
    return HierarchyForest(n, fix_loops, levels, total)
