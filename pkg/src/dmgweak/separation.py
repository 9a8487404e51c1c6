"""mu-separation by reachability over (node, arrival mark) states.

A walk arriving at ``v`` with an arrowhead may leave through another
arrowhead only if ``v`` is an ancestor of the conditioning set; every other
way of passing through ``v`` requires ``v`` outside the conditioning set.
"""
from __future__ import annotations

from collections import deque

from .graph import (
    Dmg, Edge, GuardError, InputError, Step, Walk, DIRECTED, BIDIRECTED,
    _ancestor_mask, iter_bits, popcount, to_mask,
)

ROUTE_ORACLE_MAX_NODES = 12


def _mask(g: Dmg, c) -> int:
    cm = c if isinstance(c, int) else to_mask(c)
    if cm < 0 or cm & ~g.full:
        raise InputError("node set references a node out of range")
    return cm


def head_reach(ch, par, bi, a: int, cm: int, anc: int) -> int:
    """Nodes reachable from ``a`` by a mu-connecting walk given ``cm``.

    Raw-row helper: ``ch``/``par``/``bi`` are bit rows, ``anc`` = an(cm).
    Assumes ``a`` is not in ``cm``.
    """
    heads = ch[a] | bi[a]
    tails = par[a]
    done_h = done_t = 0
    outside = ~cm
    while True:
        new_h = heads & ~done_h
        new_t = tails & ~done_t
        if not (new_h or new_t):
            return heads
        done_h |= new_h
        done_t |= new_t
        # leave with a tail: allowed whenever the node is outside C
        for v in iter_bits((new_h | new_t) & outside):
            heads |= ch[v]
        # leave with a head: collider needs an(C), noncollider needs v not in C
        for v in iter_bits((new_h & anc) | (new_t & outside)):
            heads |= bi[v]
            tails |= par[v]


def connection_rows(g: Dmg, c) -> tuple:
    """``rows[a]`` = bitmask of b such that a mu-connects to b given c."""
    cm = _mask(g, c)
    anc = _ancestor_mask(g.par, cm)
    ch, par, bi = g.dir, g.par, g.bi
    return tuple(0 if (cm >> a) & 1 else head_reach(ch, par, bi, a, cm, anc)
                 for a in range(g.n))


def separation_rows(g: Dmg, c) -> tuple:
    """``rows[a]`` = bitmask of b separated from a given c (all ones if a in c)."""
    full = g.full
    return tuple(full & ~r for r in connection_rows(g, c))


def mu_connected(g: Dmg, alpha: int, beta: int, c=0) -> bool:
    g.check_node(alpha)
    g.check_node(beta)
    cm = _mask(g, c)
    if (cm >> alpha) & 1:
        return False
    anc = _ancestor_mask(g.par, cm)
    return bool((head_reach(g.dir, g.par, g.bi, alpha, cm, anc) >> beta) & 1)


def mu_separated(g: Dmg, alpha: int, beta: int, c=0) -> bool:
    return not mu_connected(g, alpha, beta, c)


def mu_separated_sets(g: Dmg, a_set, b_set, c) -> bool:
    am = _mask(g, a_set)
    bm = _mask(g, b_set)
    cm = _mask(g, c)
    if not am or not bm:
        return True
    anc = _ancestor_mask(g.par, cm)
    for a in iter_bits(am & ~cm):
        if head_reach(g.dir, g.par, g.bi, a, cm, anc) & bm:
            return False
    return True


def bounded_collider_connected(g: Dmg, alpha: int, beta: int, c, k: int) -> bool:
    """Is there a mu-connecting walk given c with at most k colliders?"""
    if k < 0:
        raise InputError("collider bound must be non-negative")
    g.check_node(alpha)
    g.check_node(beta)
    cm = _mask(g, c)
    if (cm >> alpha) & 1:
        return False
    anc = _ancestor_mask(g.par, cm)
    ch, par, bi = g.dir, g.par, g.bi
    outside = ~cm
    # heads[i] / tails[i]: states reached having used i colliders
    heads = [0] * (k + 1)
    tails = [0] * (k + 1)
    heads[0] = ch[alpha] | bi[alpha]
    tails[0] = par[alpha]
    done_h = [0] * (k + 1)
    done_t = [0] * (k + 1)
    changed = True
    while changed:
        changed = False
        for i in range(k + 1):
            new_h = heads[i] & ~done_h[i]
            new_t = tails[i] & ~done_t[i]
            if not (new_h or new_t):
                continue
            changed = True
            done_h[i] |= new_h
            done_t[i] |= new_t
            for v in iter_bits((new_h | new_t) & outside):
                heads[i] |= ch[v]
            for v in iter_bits(new_t & outside):
                heads[i] |= bi[v]
                tails[i] |= par[v]
            if i < k:
                for v in iter_bits(new_h & anc):
                    heads[i + 1] |= bi[v]
                    tails[i + 1] |= par[v]
    return any((h >> beta) & 1 for h in heads)


def directed_trek_sources(g: Dmg, beta: int) -> int:
    """Bitmask of nodes with a directed trek to ``beta``."""
    return to_mask(a for a in range(g.n) if bounded_collider_connected(g, a, beta, 0, 0))


# witnesses ---------------------------------------------------------------

def _first_walk(g: Dmg, alpha: int, beta: int, cm: int, anc: int):
    """Breadth-first search over states, returning a walk or None."""
    start_steps = []
    for b in iter_bits(g.dir[alpha]):
        start_steps.append(Step(Edge(DIRECTED, alpha, b), True))
    for b in iter_bits(g.par[alpha]):
        start_steps.append(Step(Edge(DIRECTED, b, alpha), False))
    for b in iter_bits(g.bi[alpha]):
        e = Edge(BIDIRECTED, alpha, b)
        start_steps.append(Step(e, e.a == alpha))
    pred = {}
    queue = deque()
    for s in start_steps:
        state = (s.target, s.mark_at_target)
        if state not in pred:
            pred[state] = (None, s)
            queue.append(state)
    goal = (beta, "head")
    while queue:
        state = queue.popleft()
        if state == goal:
            break
        v, mark = state
        for s in _leaving_steps(g, v, mark, cm, anc):
            nxt = (s.target, s.mark_at_target)
            if nxt not in pred:
                pred[nxt] = (state, s)
                queue.append(nxt)
    if goal not in pred:
        return None
    steps = []
    state = goal
    while state is not None:
        prev, s = pred[state]
        steps.append(s)
        state = prev
    steps.reverse()
    return Walk(alpha, tuple(steps))


def _leaving_steps(g: Dmg, v: int, mark: str, cm: int, anc: int):
    in_c = (cm >> v) & 1
    if not in_c:
        for b in iter_bits(g.dir[v]):
            yield Step(Edge(DIRECTED, v, b), True)
    head_ok = ((anc >> v) & 1) if mark == "head" else not in_c
    if head_ok:
        for b in iter_bits(g.par[v]):
            yield Step(Edge(DIRECTED, b, v), False)
        for b in iter_bits(g.bi[v]):
            e = Edge(BIDIRECTED, v, b)
            yield Step(e, e.a == v)


def _path_into(g: Dmg, v: int, cm: int) -> list:
    """Shortest directed path v -> ... -> c with c the only node in cm."""
    pred = {v: None}
    queue = deque([v])
    while queue:
        u = queue.popleft()
        if (cm >> u) & 1:
            path = [u]
            while pred[path[-1]] is not None:
                path.append(pred[path[-1]])
            return path[::-1]
        for w in iter_bits(g.dir[u]):
            if w not in pred:
                pred[w] = u
                queue.append(w)
    raise AssertionError("collider is not an ancestor of the conditioning set")


def _kinds(steps):
    out = []
    for prev, nxt in zip(steps, steps[1:]):
        out.append(prev.mark_at_target == "head" and nxt.mark_at_source == "head")
    return out


def witness_walk(g: Dmg, alpha: int, beta: int, c=0):
    """A mu-connecting walk with at most |c| colliders, all in c, or None."""
    g.check_node(alpha)
    g.check_node(beta)
    cm = _mask(g, c)
    if (cm >> alpha) & 1:
        return None
    anc = _ancestor_mask(g.par, cm)
    w = _first_walk(g, alpha, beta, cm, anc)
    if w is None:
        return None
    steps = list(w.steps)
    # route each collider outside c through a directed detour into c
    out = [steps[0]]
    for i, coll in enumerate(_kinds(steps)):
        v = steps[i].target
        if coll and not (cm >> v) & 1:
            path = _path_into(g, v, cm)
            there = [Step(Edge(DIRECTED, x, y), True) for x, y in zip(path, path[1:])]
            back = [Step(s.edge, False) for s in reversed(there)]
            out.extend(there + back)
        out.append(steps[i + 1])
    steps = out
    # cut the walk between repeated collider instances of the same node
    while True:
        kinds = _kinds(steps)
        seen = {}
        cut = None
        for i, coll in enumerate(kinds):
            if not coll:
                continue
            v = steps[i].target
            if v in seen:
                cut = (seen[v], i)
                break
            seen[v] = i
        if cut is None:
            # a collider at beta can also shortcut the rest of the walk
            for i, coll in enumerate(kinds):
                if coll and steps[i].target == beta:
                    steps = steps[: i + 1]
                    break
            else:
                break
            continue
        i, j = cut
        steps = steps[: i + 1] + steps[j + 1:]
    return Walk(alpha, tuple(steps))


# brute-force oracle --------------------------------------------------------

def _all_steps_from(g: Dmg, v: int):
    for b in iter_bits(g.dir[v]):
        yield Step(Edge(DIRECTED, v, b), True)
    for b in iter_bits(g.par[v]):
        if b != v:  # the directed loop is already listed forwards
            yield Step(Edge(DIRECTED, b, v), False)
    if (g.dir[v] >> v) & 1:
        yield Step(Edge(DIRECTED, v, v), False)
    for b in iter_bits(g.bi[v]):
        e = Edge(BIDIRECTED, v, b)
        yield Step(e, e.a == v)


def iter_routes(g: Dmg, alpha: int):
    """All nontrivial routes starting at alpha.

    A route repeats no node except that its final node may occur twice.
    """
    path_nodes = {alpha}
    steps: list = []

    def extend(v):
        for s in _all_steps_from(g, v):
            w = s.target
            steps.append(s)
            yield Walk(alpha, tuple(steps))
            if w not in path_nodes:
                path_nodes.add(w)
                yield from extend(w)
                path_nodes.discard(w)
            steps.pop()

    yield from extend(alpha)


def route_oracle_connected(g: Dmg, alpha: int, beta: int, c=0) -> bool:
    """Exhaustive check over routes; only meant for small graphs."""
    if g.n > ROUTE_ORACLE_MAX_NODES:
        raise GuardError(f"route oracle limited to {ROUTE_ORACLE_MAX_NODES} nodes, got {g.n}")
    g.check_node(alpha)
    g.check_node(beta)
    cm = _mask(g, c)
    if (cm >> alpha) & 1:
        return False
    anc = _ancestor_mask(g.par, cm)
    for w in iter_routes(g, alpha):
        if w.end != beta or w.steps[-1].mark_at_target != "head":
            continue
        ok = True
        for i, coll in enumerate(_kinds(list(w.steps))):
            v = w.steps[i].target
            if coll:
                if not (anc >> v) & 1:
                    ok = False
                    break
            elif (cm >> v) & 1:
                ok = False
                break
        if ok:
            return True
    return False
