"""Independence-model signatures and weak equivalence checks."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional

from .graph import Dmg, GuardError, InputError, iter_bits, mask_to_tuple, popcount, to_mask
from .separation import connection_rows, mu_separated_sets, bounded_collider_connected

SIZE = "size"
EXPLICIT = "explicit"
ALL = "all"

# conditioning sets over more nodes than this do not fit a machine word
FAMILY_MAX_NODES = 63


def _set_key(m: int):
    return (popcount(m), mask_to_tuple(m))


@dataclass(frozen=True)
class ConditioningFamily:
    """A homogeneous collection of conditioning sets.

    ``size_bound(k)``: every C with |C| <= k.  ``explicit(sets)``: a fixed
    list.  ``all()``: every subset of the node set.
    """

    kind: str
    k: int = 0
    sets: tuple = ()

    @classmethod
    def size_bound(cls, k: int) -> "ConditioningFamily":
        if k < 0:
            raise InputError("size bound must be non-negative")
        return cls(SIZE, k=k)

    @classmethod
    def explicit(cls, sets: Iterable) -> "ConditioningFamily":
        masks = {s if isinstance(s, int) else to_mask(s) for s in sets}
        return cls(EXPLICIT, sets=tuple(sorted(masks, key=_set_key)))

    @classmethod
    def all(cls) -> "ConditioningFamily":
        return cls(ALL)

    def masks(self, n: int) -> list:
        """Conditioning sets as bitmasks, ordered by size then lexicographically."""
        if n > FAMILY_MAX_NODES:
            raise GuardError(f"conditioning families limited to {FAMILY_MAX_NODES} nodes, got {n}")
        if self.kind == EXPLICIT:
            full = (1 << n) - 1
            for m in self.sets:
                if m & ~full:
                    raise InputError("conditioning family references a node out of range")
            return list(self.sets)
        k = n if self.kind == ALL else min(self.k, n)
        return [to_mask(c) for size in range(k + 1) for c in combinations(range(n), size)]

    def contains(self, m: int, n: int) -> bool:
        if self.kind == EXPLICIT:
            return m in self.sets
        k = n if self.kind == ALL else self.k
        return popcount(m) <= k

    def describe(self) -> str:
        if self.kind == SIZE:
            return f"k={self.k}"
        if self.kind == ALL:
            return "all"
        return "sets=" + ";".join(",".join(map(str, mask_to_tuple(m))) for m in self.sets)


def canonical_triples(n: int, fam: ConditioningFamily):
    """Yield (alpha, beta, C-mask) in signature order."""
    for cm in fam.masks(n):
        for a in range(n):
            if (cm >> a) & 1:
                continue
            for b in range(n):
                yield a, b, cm


@dataclass(frozen=True)
class Signature:
    """Separation bits over the canonical triple enumeration.

    Bit ``i`` (least significant first) is set when the ``i``-th triple of
    ``canonical_triples`` is a separation.
    """

    n: int
    family: ConditioningFamily
    bits: int
    length: int

    def triples(self):
        return list(canonical_triples(self.n, self.family))

    def separations(self) -> list:
        return [t for i, t in enumerate(canonical_triples(self.n, self.family))
                if (self.bits >> i) & 1]

    def to_hex(self) -> str:
        width = max(1, (self.length + 3) // 4)
        return format(self.bits, f"0{width}x")

    @classmethod
    def from_hex(cls, n: int, family: ConditioningFamily, text: str) -> "Signature":
        length = sum(1 for _ in canonical_triples(n, family))
        return cls(n, family, int(text, 16), length)

    def header(self) -> str:
        return f"n={self.n} {self.family.describe()}"


def signature(g: Dmg, fam: ConditioningFamily) -> Signature:
    bits = 0
    i = 0
    n = g.n
    for cm in fam.masks(n):
        rows = connection_rows(g, cm)
        for a in range(n):
            if (cm >> a) & 1:
                continue
            sep = ~rows[a]
            for b in range(n):
                if (sep >> b) & 1:
                    bits |= 1 << i
                i += 1
    return Signature(n, fam, bits, i)


def _same_n(g1: Dmg, g2: Dmg):
    if g1.n != g2.n:
        raise InputError(f"node-count mismatch: {g1.n} vs {g2.n}")


def first_difference(g1: Dmg, g2: Dmg, masks) -> Optional[tuple]:
    """First triple in canonical order on which the graphs disagree."""
    _same_n(g1, g2)
    for cm in masks:
        r1 = connection_rows(g1, cm)
        r2 = connection_rows(g2, cm)
        if r1 == r2:
            continue
        for a in range(g1.n):
            diff = r1[a] ^ r2[a]
            if diff:
                b = (diff & -diff).bit_length() - 1
                return (a, b, frozenset(iter_bits(cm)))
    return None


def weak_equivalent(g1: Dmg, g2: Dmg, fam: ConditioningFamily):
    """Return ``(equivalent, witness)``; witness is None when equivalent."""
    _same_n(g1, g2)
    w = first_difference(g1, g2, fam.masks(g1.n))
    return w is None, w


def markov_equivalent(g1: Dmg, g2: Dmg):
    # agreement on all sets of size n-1 already forces agreement on all sets
    _same_n(g1, g2)
    return weak_equivalent(g1, g2, ConditioningFamily.size_bound(max(g1.n - 1, 0)))


def general_weak_equivalent(g1: Dmg, g2: Dmg, triples):
    """Compare separation of arbitrary (A, B, C) triples in two graphs."""
    _same_n(g1, g2)
    for a_set, b_set, c in triples:
        s1 = mu_separated_sets(g1, a_set, b_set, c)
        s2 = mu_separated_sets(g2, a_set, b_set, c)
        if s1 != s2:
            return False, (frozenset(a_set), frozenset(b_set), frozenset(c))
    return True, None


def dtr(g: Dmg, beta: int) -> set:
    """Nodes with a directed trek to ``beta``."""
    g.check_node(beta)
    return {a for a in range(g.n) if bounded_collider_connected(g, a, beta, 0, 0)}


def trek_equivalent(g1: Dmg, g2: Dmg) -> bool:
    _same_n(g1, g2)
    return all(dtr(g1, b) == dtr(g2, b) for b in range(g1.n))
