"""Latent projection and separability-based sparsity."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .graph import Dmg, GuardError, InputError, induced_subgraph, iter_bits, to_mask
from .separation import connection_rows, mu_connected

INSEPARABLE_MAX_NODES = 24


@dataclass(frozen=True)
class ProjectionResult:
    graph: Dmg
    index_map: dict  # old node id -> new node id


def _edges_at(d, p, b, v):
    """(neighbour, mark at v, mark at neighbour) for every edge at v."""
    out = []
    for w in iter_bits(d[v]):
        out.append((w, "tail", "head"))
    for w in iter_bits(p[v]):
        out.append((w, "head", "tail"))
    for w in iter_bits(b[v]):
        out.append((w, "head", "head"))
    return out


def latent_project(g: Dmg, o) -> ProjectionResult:
    """Marginalize the nodes outside ``o``.

    Repeatedly look for a noncolliding path alpha ~ m ~ beta through a
    marginalized node m (alpha == beta allowed) and add the edge between
    alpha and beta carrying the same end marks, until nothing changes; then
    restrict to ``o``.
    """
    keep = set(o)
    for v in keep:
        g.check_node(v)
    latent = [m for m in range(g.n) if m not in keep]
    n = g.n
    d = list(g.dir)
    b = list(g.bi)
    changed = True
    while changed:
        changed = False
        for m in latent:
            p = [0] * n
            for t in range(n):
                for h in iter_bits(d[t]):
                    p[h] |= 1 << t
            # the walk enters m over one edge and leaves over another
            ends = [(w, at_m, at_w) for (w, at_m, at_w) in _edges_at(d, p, b, m) if w != m]
            for (a, at_m1, at_a) in ends:
                for (c, at_m2, at_c) in ends:
                    if at_m1 == "head" and at_m2 == "head":
                        continue  # collider at m
                    if at_a == "tail" and at_c == "tail":
                        raise AssertionError("noncolliding path with tails at both ends")
                    if at_a == "tail":
                        new = (d, a, c)
                    elif at_c == "tail":
                        new = (d, c, a)
                    else:
                        new = (b, a, c)
                    rows, x, y = new
                    if not (rows[x] >> y) & 1:
                        rows[x] |= 1 << y
                        if rows is b:
                            b[y] |= 1 << x
                        changed = True
    full = Dmg(n, tuple(d), tuple(b), g.labels)
    sub, index_map = induced_subgraph(full, sorted(keep))
    return ProjectionResult(sub, index_map)


def _guard(g: Dmg):
    if g.n > INSEPARABLE_MAX_NODES:
        raise GuardError(f"inseparability search limited to {INSEPARABLE_MAX_NODES} nodes, got {g.n}")


def inseparable(g: Dmg, alpha: int, beta: int) -> bool:
    """True when beta is connected from alpha given every C not containing alpha."""
    _guard(g)
    g.check_node(alpha)
    g.check_node(beta)
    others = [v for v in range(g.n) if v != alpha]
    # small separators first, so separable pairs exit early
    for size in range(len(others) + 1):
        for c in combinations(others, size):
            if not mu_connected(g, alpha, beta, to_mask(c)):
                return False
    return True


def inseparability_rows(g: Dmg) -> tuple:
    """``rows[a]`` = nodes inseparable from ``a``, sharing one sweep over C."""
    _guard(g)
    n = g.n
    full = (1 << n) - 1
    rows = [full] * n
    for size in range(n + 1):
        for c in combinations(range(n), size):
            cm = to_mask(c)
            conn = connection_rows(g, cm)
            for a in range(n):
                if not (cm >> a) & 1:
                    rows[a] &= conn[a]
        if not any(rows):
            break
    return tuple(rows)


def connectivity(g: Dmg, beta: int, rows=None) -> tuple:
    """(con_in, con_out, con) of ``beta``.

    con_in counts nodes alpha with beta inseparable from alpha; con_out
    counts nodes alpha inseparable from beta.
    """
    g.check_node(beta)
    rows = rows if rows is not None else inseparability_rows(g)
    con_in = sum(1 for a in range(g.n) if (rows[a] >> beta) & 1)
    con_out = bin(rows[beta]).count("1")
    return con_in, con_out, max(con_in, con_out)


def max_connectivity(g: Dmg) -> int:
    rows = inseparability_rows(g)
    return max((connectivity(g, v, rows)[2] for v in range(g.n)), default=0)


def is_m_sparse(g: Dmg, m: int) -> bool:
    if m < 0:
        raise InputError("sparsity bound must be non-negative")
    return max_connectivity(g) <= m
