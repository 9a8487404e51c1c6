"""Oracle-driven recovery of the greatest element of a weak equivalence class."""
from __future__ import annotations

import threading
from concurrent.futures import ThreadPoolExecutor
from typing import Callable

from .graph import Dmg, InputError, iter_bits, to_mask
from .independence import ConditioningFamily
from .potential import SeparationMatrix, allowed_edges
from .separation import mu_separated_sets


class IndependenceOracle:
    """Answers ``query(alpha, beta, C)`` with True for independent."""

    def __init__(self, n: int, fn: Callable):
        self.n = n
        self._fn = fn

    def query(self, alpha: int, beta: int, c) -> bool:
        c = frozenset(c)
        for v in (alpha, beta, *c):
            if not 0 <= v < self.n:
                raise InputError(f"node index {v} out of range for {self.n} nodes")
        if alpha in c:
            return True
        return bool(self._fn(alpha, beta, c))

    __call__ = query


def graph_oracle(g: Dmg) -> IndependenceOracle:
    return IndependenceOracle(g.n, lambda a, b, c: mu_separated_sets(g, {a}, {b}, c))


def separation_list_oracle(n: int, separations) -> IndependenceOracle:
    """Oracle over an explicit list of separated (alpha, beta, C) triples."""
    table = {(a, b, frozenset(c)) for a, b, c in separations}
    return IndependenceOracle(n, lambda a, b, c: (a, b, frozenset(c)) in table)


class CachingOracle(IndependenceOracle):
    """Wraps an oracle; each distinct triple reaches the inner oracle once."""

    def __init__(self, inner: IndependenceOracle):
        super().__init__(inner.n, inner.query)
        self._cache = {}
        self._lock = threading.Lock()

    def query(self, alpha: int, beta: int, c) -> bool:
        key = (alpha, beta, frozenset(c))
        with self._lock:
            if key in self._cache:
                return self._cache[key]
        ans = self._fn(*key)
        with self._lock:
            self._cache[key] = ans
        return ans

    __call__ = query

    @property
    def count(self) -> int:
        return len(self._cache)


def query_count(oracle: CachingOracle) -> int:
    return oracle.count


def learn_maximal(oracle: IndependenceOracle, fam: ConditioningFamily, workers: int = 1) -> Dmg:
    """Start from the complete DMG and drop every edge whose condition fails.

    Conditions read only the oracle's answers, never an intermediate graph,
    so the order of removals does not matter.  With ``workers > 1`` the
    per-C tables are filled concurrently; the result is the same.
    """
    n = oracle.n
    full = (1 << n) - 1
    d = [full] * n
    b = [full] * n

    def table(cm):
        return allowed_edges(SeparationMatrix.from_oracle(oracle, n, cm))

    masks = fam.masks(n)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            tables = list(pool.map(table, masks))
    else:
        tables = map(table, masks)
    for dok, bok in tables:
        for a in range(n):
            d[a] &= dok[a]
            b[a] &= bok[a]
    return Dmg(n, tuple(d), tuple(b))
