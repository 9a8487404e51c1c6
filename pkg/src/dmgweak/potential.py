"""Conditions under which adding a single edge keeps the separations given C.

All checks read a SeparationMatrix: ``rows[g]`` holds the nodes separated
from ``g`` given C, ``cols[d]`` holds the nodes ``g`` from which ``d`` is
separated.  Quantifiers over nodes then become subset tests on bitmasks.
"""
from __future__ import annotations

from dataclasses import dataclass

from .graph import Dmg, InputError, iter_bits, to_mask
from .separation import separation_rows

# scope of the third parent condition: every node pair, or only pairs inside C
CP3_ALL = "all"
CP3_CONDITIONING = "conditioning"


def _sub(x: int, y: int) -> bool:
    return x & ~y == 0


@dataclass(frozen=True)
class SeparationMatrix:
    n: int
    cmask: int
    rows: tuple

    @classmethod
    def from_graph(cls, g: Dmg, c) -> "SeparationMatrix":
        cm = c if isinstance(c, int) else to_mask(c)
        return cls(g.n, cm, separation_rows(g, cm))

    @classmethod
    def from_oracle(cls, oracle, n: int, c) -> "SeparationMatrix":
        """Fill the table with ``oracle(gamma, delta, C)`` answers.

        ``oracle`` returns True for "separated".  Queries with gamma in C
        are answered without asking.
        """
        cm = c if isinstance(c, int) else to_mask(c)
        cset = frozenset(iter_bits(cm))
        full = (1 << n) - 1
        rows = []
        for g in range(n):
            if (cm >> g) & 1:
                rows.append(full)
                continue
            r = 0
            for d in range(n):
                if oracle(g, d, cset):
                    r |= 1 << d
            rows.append(r)
        return cls(n, cm, tuple(rows))

    def sep(self, g: int, d: int) -> bool:
        return bool((self.rows[g] >> d) & 1)

    @property
    def cols(self) -> tuple:
        cols = [0] * self.n
        for g, r in enumerate(self.rows):
            for d in iter_bits(r):
                cols[d] |= 1 << g
        return tuple(cols)


def _check(sm: SeparationMatrix, a: int, b: int):
    for v in (a, b):
        if not 0 <= v < sm.n:
            raise InputError(f"node index {v} out of range for {sm.n} nodes")


def sibling_ok(sm: SeparationMatrix, a: int, b: int, cols=None) -> bool:
    _check(sm, a, b)
    cols = cols if cols is not None else sm.cols
    cm = sm.cmask
    a_in = (cm >> a) & 1
    b_in = (cm >> b) & 1
    if not a_in and sm.sep(a, b):
        return False
    if not b_in and sm.sep(b, a):
        return False
    if b_in and not _sub(cols[a], cols[b]):
        return False
    if a_in and not _sub(cols[b], cols[a]):
        return False
    return True


def parent_ok(sm: SeparationMatrix, a: int, b: int, cols=None, cp3_scope: str = CP3_ALL) -> bool:
    _check(sm, a, b)
    cm = sm.cmask
    if (cm >> a) & 1:
        return True
    rows = sm.rows
    cols = cols if cols is not None else sm.cols
    if sm.sep(a, b):
        return False
    if not _sub(cols[b], cols[a]):
        return False
    if (cm >> b) & 1:
        scope = cm if cp3_scope == CP3_CONDITIONING else (1 << sm.n) - 1
        # every gamma connected to beta: its separated set sits inside alpha's
        for g in iter_bits(scope & ~cols[b]):
            if not _sub(rows[g] & scope, rows[a]):
                return False
    else:
        if not _sub(rows[b], rows[a]):
            return False
    return True


def allowed_edges(sm: SeparationMatrix):
    """Per-source bitmasks of edges passing the parent and sibling conditions."""
    n = sm.n
    rows = sm.rows
    cols = sm.cols
    cm = sm.cmask
    full = (1 << n) - 1
    # row_sub[a]: gamma with rows[gamma] inside rows[a]; col_sub[a]: b with cols[b] inside cols[a]
    row_sub = [0] * n
    col_sub = [0] * n
    for a in range(n):
        ra, ca = rows[a], cols[a]
        rs = cs = 0
        for x in range(n):
            if rows[x] & ~ra == 0:
                rs |= 1 << x
            if cols[x] & ~ca == 0:
                cs |= 1 << x
        row_sub[a] = rs
        col_sub[a] = cs
    dir_ok = [0] * n
    bi_ok = [0] * n
    for a in range(n):
        if (cm >> a) & 1:
            dir_ok[a] = full
        else:
            conn = full & ~rows[a]
            d = conn & col_sub[a]
            # beta outside C: rows[beta] inside rows[alpha]
            d_out = d & ~cm & row_sub[a]
            d_in = 0
            for b in iter_bits(d & cm):
                if (full & ~cols[b]) & ~row_sub[a] == 0:
                    d_in |= 1 << b
            dir_ok[a] = d_out | d_in
    for a in range(n):
        r = 0
        a_in = (cm >> a) & 1
        for b in range(n):
            b_in = (cm >> b) & 1
            if not a_in and (rows[a] >> b) & 1:
                continue
            if not b_in and (rows[b] >> a) & 1:
                continue
            if b_in and not (col_sub[b] >> a) & 1:
                continue
            if a_in and not (col_sub[a] >> b) & 1:
                continue
            r |= 1 << b
        bi_ok[a] = r
    return dir_ok, bi_ok


def c_potential_sibling(g: Dmg, alpha: int, beta: int, c) -> bool:
    g.check_node(alpha)
    g.check_node(beta)
    return sibling_ok(SeparationMatrix.from_graph(g, c), alpha, beta)


def c_potential_parent(g: Dmg, alpha: int, beta: int, c, cp3_scope: str = CP3_ALL) -> bool:
    g.check_node(alpha)
    g.check_node(beta)
    return parent_ok(SeparationMatrix.from_graph(g, c), alpha, beta, cp3_scope=cp3_scope)


def c_potential_sibling_oracle(oracle, n: int, alpha: int, beta: int, c) -> bool:
    return sibling_ok(SeparationMatrix.from_oracle(oracle, n, c), alpha, beta)


def c_potential_parent_oracle(oracle, n: int, alpha: int, beta: int, c,
                              cp3_scope: str = CP3_ALL) -> bool:
    return parent_ok(SeparationMatrix.from_oracle(oracle, n, c), alpha, beta, cp3_scope=cp3_scope)
