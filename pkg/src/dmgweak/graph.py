"""Directed mixed graphs over dense integer nodes.

Edges are kept as bit rows: ``dir[a]`` has bit ``b`` set when ``a -> b`` is
present and ``bi[a]`` has bit ``b`` set when ``a <-> b`` is present.  The
bidirected rows are symmetric, loops included.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

MAX_NODES = 1024

DIRECTED = "->"
BIDIRECTED = "<->"


class InputError(ValueError):
    """Malformed input: bad index, mismatched graphs, broken walk."""


class GuardError(InputError):
    """A size guard of an exhaustive routine was exceeded."""


def iter_bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def to_mask(nodes: Iterable[int]) -> int:
    m = 0
    for v in nodes:
        m |= 1 << v
    return m


def popcount(x: int) -> int:
    return bin(x).count("1")


def mask_to_tuple(m: int) -> tuple:
    return tuple(iter_bits(m))


@dataclass(frozen=True, order=True)
class Edge:
    """A directed edge ``a -> b`` or a bidirected edge ``a <-> b`` (a <= b)."""

    kind: str
    a: int
    b: int

    def __post_init__(self):
        if self.kind not in (DIRECTED, BIDIRECTED):
            raise InputError(f"unknown edge kind {self.kind!r}")
        if self.kind == BIDIRECTED and self.a > self.b:
            a, b = self.b, self.a
            object.__setattr__(self, "a", a)
            object.__setattr__(self, "b", b)

    @classmethod
    def directed(cls, tail: int, head: int) -> "Edge":
        return cls(DIRECTED, tail, head)

    @classmethod
    def bidirected(cls, a: int, b: int) -> "Edge":
        return cls(BIDIRECTED, a, b)

    @property
    def is_directed(self) -> bool:
        return self.kind == DIRECTED

    @property
    def is_loop(self) -> bool:
        return self.a == self.b

    def sort_key(self):
        # directed edges before bidirected, then by endpoints
        return (0 if self.is_directed else 1, self.a, self.b)

    def __str__(self):
        return f"{self.a}{self.kind}{self.b}"


def _check_index(n: int, v: int):
    if not isinstance(v, int) or v < 0 or v >= n:
        raise InputError(f"node index {v!r} out of range for {n} nodes")


@dataclass(frozen=True, eq=False)
class Dmg:
    """Immutable directed mixed graph.

    Equality and hashing use the edge rows only; labels are presentational.
    """

    n: int
    dir: tuple
    bi: tuple
    labels: tuple | None = field(default=None)

    def __post_init__(self):
        if not 0 <= self.n <= MAX_NODES:
            raise InputError(f"node count must be in [0, {MAX_NODES}], got {self.n}")
        if len(self.dir) != self.n or len(self.bi) != self.n:
            raise InputError("edge rows do not match node count")
        full = (1 << self.n) - 1
        for a in range(self.n):
            if self.dir[a] & ~full or self.bi[a] & ~full:
                raise InputError("edge row references a node out of range")
            for b in iter_bits(self.bi[a]):
                if not (self.bi[b] >> a) & 1:
                    raise InputError("bidirected rows must be symmetric")
        if self.labels is not None:
            if len(self.labels) != self.n:
                raise InputError("label count does not match node count")
            if len(set(self.labels)) != self.n:
                raise InputError("labels must be unique")

    # construction -------------------------------------------------------
    @classmethod
    def from_edges(cls, n: int, directed: Iterable = (), bidirected: Iterable = (),
                   labels: Sequence[str] | None = None) -> "Dmg":
        d = [0] * n
        b = [0] * n
        for t, h in directed:
            _check_index(n, t)
            _check_index(n, h)
            d[t] |= 1 << h
        for x, y in bidirected:
            _check_index(n, x)
            _check_index(n, y)
            b[x] |= 1 << y
            b[y] |= 1 << x
        return cls(n, tuple(d), tuple(b), tuple(labels) if labels is not None else None)

    @classmethod
    def from_edge_list(cls, n: int, edges: Iterable[Edge], labels=None) -> "Dmg":
        edges = list(edges)
        return cls.from_edges(
            n,
            [(e.a, e.b) for e in edges if e.is_directed],
            [(e.a, e.b) for e in edges if not e.is_directed],
            labels,
        )

    @classmethod
    def empty(cls, n: int, labels=None) -> "Dmg":
        return cls(n, (0,) * n, (0,) * n, tuple(labels) if labels is not None else None)

    @classmethod
    def complete(cls, n: int, labels=None) -> "Dmg":
        full = (1 << n) - 1
        return cls(n, (full,) * n, (full,) * n, tuple(labels) if labels is not None else None)

    def with_labels(self, labels) -> "Dmg":
        return Dmg(self.n, self.dir, self.bi, tuple(labels) if labels is not None else None)

    def with_all_loops(self) -> "Dmg":
        d = tuple(r | (1 << a) for a, r in enumerate(self.dir))
        b = tuple(r | (1 << a) for a, r in enumerate(self.bi))
        return Dmg(self.n, d, b, self.labels)

    # derived rows -------------------------------------------------------
    @cached_property
    def par(self) -> tuple:
        """``par[b]`` has bit ``a`` set when ``a -> b``."""
        p = [0] * self.n
        for a, row in enumerate(self.dir):
            for b in iter_bits(row):
                p[b] |= 1 << a
        return tuple(p)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    # equality -----------------------------------------------------------
    def key(self) -> tuple:
        return (self.n, self.dir, self.bi)

    def __eq__(self, other):
        if not isinstance(other, Dmg):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        parts = [self.edge_str(e) for e in self.edges()]
        return f"Dmg(n={self.n}, [{', '.join(parts)}])"

    # edges --------------------------------------------------------------
    def check_node(self, v: int):
        _check_index(self.n, v)

    def has_edge(self, e: Edge) -> bool:
        self.check_node(e.a)
        self.check_node(e.b)
        rows = self.dir if e.is_directed else self.bi
        return bool((rows[e.a] >> e.b) & 1)

    def has_directed(self, a: int, b: int) -> bool:
        return bool((self.dir[a] >> b) & 1)

    def has_bidirected(self, a: int, b: int) -> bool:
        return bool((self.bi[a] >> b) & 1)

    def add_edge(self, e: Edge) -> "Dmg":
        return self.add_edges([e])

    def add_edges(self, edges: Iterable[Edge]) -> "Dmg":
        d = list(self.dir)
        b = list(self.bi)
        for e in edges:
            self.check_node(e.a)
            self.check_node(e.b)
            if e.is_directed:
                d[e.a] |= 1 << e.b
            else:
                b[e.a] |= 1 << e.b
                b[e.b] |= 1 << e.a
        return Dmg(self.n, tuple(d), tuple(b), self.labels)

    def remove_edge(self, e: Edge) -> "Dmg":
        return self.remove_edges([e])

    def remove_edges(self, edges: Iterable[Edge]) -> "Dmg":
        # removing an absent edge is a no-op
        d = list(self.dir)
        b = list(self.bi)
        for e in edges:
            self.check_node(e.a)
            self.check_node(e.b)
            if e.is_directed:
                d[e.a] &= ~(1 << e.b)
            else:
                b[e.a] &= ~(1 << e.b)
                b[e.b] &= ~(1 << e.a)
        return Dmg(self.n, tuple(d), tuple(b), self.labels)

    def directed_edges(self) -> list:
        return [Edge(DIRECTED, a, b) for a in range(self.n) for b in iter_bits(self.dir[a])]

    def bidirected_edges(self) -> list:
        return [Edge(BIDIRECTED, a, b) for a in range(self.n)
                for b in iter_bits(self.bi[a]) if b >= a]

    def edges(self) -> list:
        return self.directed_edges() + self.bidirected_edges()

    def num_edges(self) -> int:
        return sum(popcount(r) for r in self.dir) + len(self.bidirected_edges())

    def non_loop_edges(self) -> list:
        return [e for e in self.edges() if not e.is_loop]

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def edge_str(self, e: Edge) -> str:
        return f"{self.label(e.a)}{e.kind}{self.label(e.b)}"

    def in_degree(self, b: int) -> int:
        """Number of nodes a (b itself included) with ``a -> b`` or ``a <-> b``."""
        return popcount(self.par[b] | self.bi[b])

    def out_degree(self, a: int) -> int:
        """Number of nodes b (a itself included) with ``a -> b`` or ``a <-> b``."""
        return popcount(self.dir[a] | self.bi[a])

    def adjacency_degree(self, v: int) -> int:
        """Number of other nodes joined to ``v`` by any edge."""
        nb = self.dir[v] | self.par[v] | self.bi[v]
        return popcount(nb & ~(1 << v))


def ancestors(g: Dmg, c) -> int:
    """Bitmask of an(c): nodes with a (possibly trivial) directed path into c.

    ``c`` may be a bitmask or an iterable of node indices.
    """
    cm = c if isinstance(c, int) else to_mask(c)
    if cm & ~g.full:
        raise InputError("conditioning set references a node out of range")
    return _ancestor_mask(g.par, cm)


def _ancestor_mask(par, cm: int) -> int:
    result = cm
    frontier = cm
    while frontier:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= par[v]
        frontier = nxt & ~result
        result |= frontier
    return result


def is_subgraph(g1: Dmg, g2: Dmg) -> bool:
    if g1.n != g2.n:
        raise InputError(f"node-count mismatch: {g1.n} vs {g2.n}")
    return all(a & ~b == 0 for a, b in zip(g1.dir, g2.dir)) and \
        all(a & ~b == 0 for a, b in zip(g1.bi, g2.bi))


def induced_subgraph(g: Dmg, o) -> tuple:
    """Subgraph on the nodes ``o``, re-indexed in ascending order.

    Returns ``(graph, index_map)`` with ``index_map[old] = new``.
    """
    keep = sorted(set(o))
    for v in keep:
        g.check_node(v)
    index_map = {old: new for new, old in enumerate(keep)}
    d = [0] * len(keep)
    b = [0] * len(keep)
    for old, new in index_map.items():
        for h in iter_bits(g.dir[old]):
            if h in index_map:
                d[new] |= 1 << index_map[h]
        for h in iter_bits(g.bi[old]):
            if h in index_map:
                b[new] |= 1 << index_map[h]
    labels = tuple(g.labels[v] for v in keep) if g.labels is not None else None
    return Dmg(len(keep), tuple(d), tuple(b), labels), index_map


# walks ------------------------------------------------------------------

HEAD = "head"
TAIL = "tail"


@dataclass(frozen=True)
class Step:
    """One traversal of ``edge``; ``forward`` means from ``edge.a`` to ``edge.b``."""

    edge: Edge
    forward: bool = True

    @property
    def source(self) -> int:
        return self.edge.a if self.forward else self.edge.b

    @property
    def target(self) -> int:
        return self.edge.b if self.forward else self.edge.a

    @property
    def mark_at_source(self) -> str:
        if not self.edge.is_directed:
            return HEAD
        return TAIL if self.forward else HEAD

    @property
    def mark_at_target(self) -> str:
        if not self.edge.is_directed:
            return HEAD
        return HEAD if self.forward else TAIL


@dataclass(frozen=True)
class Walk:
    start: int
    steps: tuple = ()

    @property
    def nodes(self) -> list:
        out = [self.start]
        for s in self.steps:
            out.append(s.target)
        return out

    @property
    def end(self) -> int:
        return self.steps[-1].target if self.steps else self.start

    def __len__(self):
        return len(self.steps)

    def describe(self, g: Dmg | None = None) -> str:
        lab = (g.label if g is not None else str)
        out = [lab(self.start)]
        for s in self.steps:
            if not s.edge.is_directed:
                arrow = "<->"
            else:
                arrow = "->" if s.forward else "<-"
            out.append(arrow)
            out.append(lab(s.target))
        return " ".join(out)


ENDPOINT = "endpoint"
COLLIDER = "collider"
NONCOLLIDER = "noncollider"


def validate_walk(g: Dmg, w: Walk) -> list:
    """Classify each node instance on the walk.

    Returns one entry per instance: ``endpoint``, ``collider`` or
    ``noncollider``.  Raises InputError on a broken walk.
    """
    g.check_node(w.start)
    cur = w.start
    for s in w.steps:
        if not g.has_edge(s.edge):
            raise InputError(f"edge {s.edge} is not in the graph")
        if s.source != cur:
            raise InputError(f"step {s.edge} does not start at node {cur}")
        cur = s.target
    if not w.steps:
        return [ENDPOINT]
    kinds = [ENDPOINT]
    for prev, nxt in zip(w.steps, w.steps[1:]):
        both = prev.mark_at_target == HEAD and nxt.mark_at_source == HEAD
        kinds.append(COLLIDER if both else NONCOLLIDER)
    kinds.append(ENDPOINT)
    return kinds


def is_mu_connecting(g: Dmg, w: Walk, c) -> bool:
    """Check that ``w`` is a mu-connecting walk given ``c``."""
    cm = c if isinstance(c, int) else to_mask(c)
    kinds = validate_walk(g, w)
    if not w.steps or (cm >> w.start) & 1:
        return False
    if w.steps[-1].mark_at_target != HEAD:
        return False
    an = ancestors(g, cm)
    for v, kind in zip(w.nodes, kinds):
        if kind == COLLIDER and not (an >> v) & 1:
            return False
        if kind == NONCOLLIDER and (cm >> v) & 1:
            return False
    return True


def collider_count(g: Dmg, w: Walk) -> int:
    return sum(1 for k in validate_walk(g, w) if k == COLLIDER)
