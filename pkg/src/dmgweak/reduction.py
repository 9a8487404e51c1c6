"""Graph families built from 3DNF formulas.

Each formula H yields three graphs on one node set: ``g``, ``g1 = g + eps<->beta``
and ``g2 = g + phi->eps``.  ``g1`` and ``g2`` are always Markov equivalent,
while ``g`` and ``g1`` are Markov equivalent exactly when H is a tautology.
For a falsifying assignment, ``witness_conditioning_set`` gives a set C on
which ``g`` separates ``beta`` from ``alpha`` and ``g1`` does not.

Two variants exist: a dense one, where a handful of hub nodes touch every
literal, and a sparse one, where binary trees of nodes fan the hubs out so
that every node has bounded adjacency.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from itertools import product

from .graph import Dmg, Edge, GuardError, InputError, ancestors, iter_bits, to_mask
from .separation import connection_rows, mu_connected

TAUTOLOGY_MAX_VARS = 24
MAX_LITERALS = 3

DENSE = "dense"
SPARSE = "sparse"


# formulas ---------------------------------------------------------------------

@dataclass(frozen=True)
class Literal:
    var: int  # 0-based
    negated: bool = False

    def value(self, assignment) -> bool:
        return bool(assignment[self.var]) != self.negated

    def __str__(self):
        return ("!" if self.negated else "") + f"x{self.var + 1}"


@dataclass(frozen=True)
class Formula3DNF:
    n_vars: int
    conjunctions: tuple  # tuple of tuples of Literal

    def __post_init__(self):
        if not self.conjunctions:
            raise InputError("formula needs at least one conjunction")
        for conj in self.conjunctions:
            if not conj:
                raise InputError("empty conjunction")
            if len(conj) > MAX_LITERALS:
                raise InputError(f"conjunction has {len(conj)} literals, at most {MAX_LITERALS} allowed")
            for lit in conj:
                if not 0 <= lit.var < self.n_vars:
                    raise InputError(f"variable x{lit.var + 1} outside 1..{self.n_vars}")

    def evaluate(self, assignment) -> bool:
        if len(assignment) != self.n_vars:
            raise InputError(f"assignment has {len(assignment)} values, formula has {self.n_vars} variables")
        return any(all(lit.value(assignment) for lit in conj) for conj in self.conjunctions)

    def __str__(self):
        return " | ".join(" & ".join(map(str, conj)) for conj in self.conjunctions)


_TOKEN = re.compile(r"\s*(?:(?P<var>x(?P<num>\d+))|(?P<op>[&|!()]))")


def parse_3dnf(text: str, n_vars: int | None = None) -> Formula3DNF:
    """Parse ``x1 & !x2 | x3``: ``|`` between conjunctions, ``&`` inside.

    The variable count is the largest index used unless ``n_vars`` is given.
    """
    conjs = []
    current = []
    pos = 0
    expect_literal = True
    negate = False
    stripped = text.rstrip()
    while pos < len(stripped):
        m = _TOKEN.match(stripped, pos)
        if not m:
            col = pos + len(stripped[pos:]) - len(stripped[pos:].lstrip())
            raise InputError(f"syntax error at position {col}: unexpected {stripped[col]!r}")
        at = m.start(m.lastgroup)
        pos = m.end()
        if m.group("var"):
            if not expect_literal:
                raise InputError(f"syntax error at position {at}: missing operator before variable")
            k = int(m.group("num"))
            if k < 1:
                raise InputError(f"syntax error at position {at}: variables are numbered from 1")
            current.append(Literal(k - 1, negate))
            negate = False
            expect_literal = False
            continue
        op = m.group("op")
        if op == "!":
            if not expect_literal:
                raise InputError(f"syntax error at position {at}: unexpected '!'")
            negate = not negate
        elif op in "&|":
            if expect_literal:
                raise InputError(f"syntax error at position {at}: operator {op!r} needs a literal before it")
            if op == "|":
                conjs.append(current)
                current = []
            expect_literal = True
        else:
            raise InputError(f"syntax error at position {at}: parentheses are not part of the grammar")
    if expect_literal:
        raise InputError(f"syntax error at position {len(stripped)}: formula ends without a literal")
    conjs.append(current)
    for j, conj in enumerate(conjs):
        if len(conj) > MAX_LITERALS:
            raise InputError(f"arity error: conjunction {j + 1} has {len(conj)} literals, "
                             f"at most {MAX_LITERALS} allowed")
    used = max(lit.var for conj in conjs for lit in conj) + 1
    if n_vars is None:
        n_vars = used
    elif n_vars < used:
        raise InputError(f"formula uses x{used} but only {n_vars} variables were declared")
    return Formula3DNF(n_vars, tuple(tuple(c) for c in conjs))


def is_tautology_bruteforce(h: Formula3DNF):
    """(True, None) or (False, falsifying assignment as a tuple of 0/1)."""
    if h.n_vars > TAUTOLOGY_MAX_VARS:
        raise GuardError(f"tautology brute force limited to {TAUTOLOGY_MAX_VARS} variables, got {h.n_vars}")
    for bits in product((0, 1), repeat=h.n_vars):
        if not h.evaluate(bits):
            return False, bits
    return True, None


def parse_assignment(text: str, n_vars: int) -> tuple:
    """``"0,1,1"`` or ``"011"`` or ``"x1=0,x2=1"`` into a 0/1 tuple."""
    t = text.replace(" ", "")
    if "=" in t:
        vals = {}
        for part in t.split(","):
            name, _, v = part.partition("=")
            if not re.fullmatch(r"x\d+", name) or v not in ("0", "1", "true", "false"):
                raise InputError(f"cannot read assignment item {part!r}")
            vals[int(name[1:]) - 1] = 1 if v in ("1", "true") else 0
        if sorted(vals) != list(range(n_vars)):
            raise InputError(f"assignment must set each of x1..x{n_vars} exactly once")
        return tuple(vals[i] for i in range(n_vars))
    parts = t.split(",") if "," in t else list(t)
    if len(parts) != n_vars or any(p not in ("0", "1") for p in parts):
        raise InputError(f"assignment needs {n_vars} values of 0/1, got {text!r}")
    return tuple(int(p) for p in parts)


# construction helpers -----------------------------------------------------------

class _Builder:
    def __init__(self):
        self.names = []
        self.index = {}
        self.directed = set()
        self.bidirected = set()

    def node(self, name: str) -> int:
        if name in self.index:
            raise AssertionError(f"duplicate node {name}")
        self.index[name] = len(self.names)
        self.names.append(name)
        return self.index[name]

    def bi(self, a: str, b: str):
        i, j = self.index[a], self.index[b]
        self.bidirected.add((min(i, j), max(i, j)))

    def di(self, a: str, b: str):
        self.directed.add((self.index[a], self.index[b]))

    def both(self, a: str, b: str):
        self.di(a, b)
        self.di(b, a)

    def cycle(self, names):
        names = list(names)
        if len(names) < 2:
            return
        for a, b in zip(names, names[1:] + names[:1]):
            self.di(a, b)

    def graph(self) -> Dmg:
        n = len(self.names)
        loops_d = [(v, v) for v in range(n)]
        return Dmg.from_edges(n, sorted(self.directed) + loops_d,
                              sorted(self.bidirected) + loops_d, tuple(self.names))


@dataclass(frozen=True)
class ReductionInstance:
    formula: Formula3DNF
    variant: str
    g: Dmg
    g1: Dmg
    g2: Dmg
    alpha: int
    beta: int
    index: dict = field(compare=False)  # label -> node id
    extra: dict = field(default_factory=dict, compare=False)

    @property
    def labels(self) -> tuple:
        return self.g.labels

    def node(self, name: str) -> int:
        try:
            return self.index[name]
        except KeyError:
            raise InputError(f"no node named {name!r}") from None

    def stats(self) -> dict:
        return {
            "variant": self.variant,
            "nodes": self.g.n,
            "directed_edges": len(self.g.directed_edges()),
            "bidirected_edges": len(self.g.bidirected_edges()),
            "max_adjacency_degree": max_adjacency_degree(self.g),
            "max_adjacency_degree_g1": max_adjacency_degree(self.g1),
            "max_adjacency_degree_g2": max_adjacency_degree(self.g2),
        }


def max_adjacency_degree(g: Dmg) -> int:
    return max((g.adjacency_degree(v) for v in range(g.n)), default=0)


def _phi(i, k):
    return f"phi{i}^{k}"


def _phibar(i, k):
    return f"phibar{i}^{k}"


def _literal_cycles(b: _Builder, h: Formula3DNF):
    """Directed cycle through chi_l and the literal nodes of x_l, same for lambda_l."""
    for var in range(h.n_vars):
        for negated, hub in ((False, f"chi{var + 1}"), (True, f"lambda{var + 1}")):
            members = [hub]
            for k, conj in enumerate(h.conjunctions, 1):
                for i, lit in enumerate(conj, 1):
                    if lit.var == var and lit.negated == negated:
                        members += [_phi(i, k), _phibar(i, k)]
            b.cycle(members)


def _ladder(b: _Builder, n_vars: int):
    for l in range(1, n_vars):
        for x in (f"chi{l}", f"lambda{l}"):
            for y in (f"chi{l + 1}", f"lambda{l + 1}"):
                b.bi(x, y)


def _finish(h, variant, b: _Builder, extra) -> ReductionInstance:
    g = b.graph()
    eps, beta, phi = b.index["epsilon"], b.index["beta"], b.index["phi"]
    g1 = g.add_edge(Edge.bidirected(eps, beta))
    g2 = g.add_edge(Edge.directed(phi, eps))
    return ReductionInstance(h, variant, g, g1, g2, b.index["alpha"], beta, dict(b.index), extra)


# dense ---------------------------------------------------------------------------

def build_dense(h: Formula3DNF) -> ReductionInstance:
    b = _Builder()
    for name in ("alpha", "beta", "epsilon", "phi"):
        b.node(name)
    core = ["gamma", "gammabar", "delta", "deltabar"]
    for k, conj in enumerate(h.conjunctions, 1):
        core += [_phi(i, k) for i in range(1, len(conj) + 1)]
        core += [_phibar(i, k) for i in range(1, len(conj) + 1)]
    for l in range(1, h.n_vars + 1):
        core += [f"chi{l}", f"lambda{l}"]
    for name in core:
        b.node(name)
    for name in core:
        b.node(f"nu_eps:{name}")
        b.node(f"nu_beta:{name}")

    b.both("gamma", "gammabar")
    b.both("delta", "deltabar")
    for rho in core:
        ne, nb = f"nu_eps:{rho}", f"nu_beta:{rho}"
        b.both(rho, ne)
        b.both(rho, nb)
        b.both(ne, nb)
        b.bi("epsilon", ne)
        b.bi("beta", nb)
    b.bi("alpha", "gamma")
    b.bi("alpha", "gammabar")
    b.bi("epsilon", "deltabar")
    b.bi("beta", "delta")
    b.both("epsilon", "beta")
    b.bi("phi", "epsilon")
    b.bi("phi", "beta")
    for k, conj in enumerate(h.conjunctions, 1):
        m = len(conj)
        for names, start, end in (([_phi(i, k) for i in range(1, m + 1)], "gamma", "delta"),
                                  ([_phibar(i, k) for i in range(1, m + 1)], "gammabar", "deltabar")):
            chain = [start] + names + [end]
            for x, y in zip(chain, chain[1:]):
                b.bi(x, y)
    n = h.n_vars
    for x in ("chi1", "lambda1"):
        b.bi("gammabar", x)
    for x in (f"chi{n}", f"lambda{n}"):
        b.bi("deltabar", x)
    _ladder(b, n)
    _literal_cycles(b, h)
    return _finish(h, DENSE, b, {"core": core})


# sparse --------------------------------------------------------------------------

def tree_depth(n_conjunctions: int) -> int:
    """Smallest M with 2**(M-1) >= N + 1."""
    m = 1
    while 2 ** (m - 1) < n_conjunctions + 1:
        m += 1
    return m


def _tree(prefix, depth):
    return [f"{prefix}{i},{j}" for i in range(1, depth + 1) for j in range(1, 2 ** (i - 1) + 1)]


def build_sparse(h: Formula3DNF) -> ReductionInstance:
    M = tree_depth(len(h.conjunctions))
    n = h.n_vars
    b = _Builder()
    for name in ("alpha", "beta", "epsilon", "phi"):
        b.node(name)
    trees = {p: _tree(p, M) for p in ("gamma", "delta", "gammabar", "deltabar")}
    lits = [_phi(i, k) for k, conj in enumerate(h.conjunctions, 1) for i in range(1, len(conj) + 1)]
    litbars = [_phibar(i, k) for k, conj in enumerate(h.conjunctions, 1) for i in range(1, len(conj) + 1)]
    chis = [f"{x}{l}" for l in range(1, n + 1) for x in ("chi", "lambda")]
    lower = trees["gamma"] + trees["delta"] + lits + chis
    upper = trees["gammabar"] + trees["deltabar"] + litbars
    for name in lower + upper:
        b.node(name)
    nu = {}
    for rho in lower:
        nu[rho] = (f"nu_eps:{rho}", f"nu_beta:{rho}")
    for rho in upper:
        nu[rho] = (f"nubar_eps:{rho}", f"nubar_beta:{rho}")
    for rho in lower + upper:
        for name in nu[rho]:
            b.node(name)

    # bidirected skeleton, recorded so the nu copies can mirror it
    skeleton = []

    def link(x, y):
        b.bi(x, y)
        skeleton.append((x, y))

    for p, names in trees.items():
        for i in range(1, M):
            for j in range(1, 2 ** (i - 1) + 1):
                link(f"{p}{i},{j}", f"{p}{i + 1},{2 * j}")
                link(f"{p}{i},{j}", f"{p}{i + 1},{2 * j - 1}")
    for k, conj in enumerate(h.conjunctions, 1):
        m = len(conj)
        for lit, top, bottom in ((_phi, "gamma", "delta"), (_phibar, "gammabar", "deltabar")):
            link(f"{top}{M},{k}", lit(1, k))
            link(f"{bottom}{M},{k}", lit(m, k))
            for i in range(1, m):
                link(lit(i, k), lit(i + 1, k))
    last = 2 ** (M - 1)
    for x in ("chi1", "lambda1"):
        link(f"gammabar{M},{last}", x)
    for x in (f"chi{n}", f"lambda{n}"):
        link(f"deltabar{M},{last}", x)
    for l in range(1, n):
        for x in (f"chi{l}", f"lambda{l}"):
            for y in (f"chi{l + 1}", f"lambda{l + 1}"):
                link(x, y)
    b.bi("alpha", "gamma1,1")
    b.bi("alpha", "gammabar1,1")
    b.bi("epsilon", "deltabar1,1")
    b.bi("beta", "delta1,1")
    b.both("epsilon", "beta")
    b.bi("phi", "epsilon")
    b.bi("phi", "beta")

    # the chi/lambda ladder hangs off the barred trees; its copies follow it
    # across, otherwise the nu_beta ladder would be cut off from beta
    lit_set = set(lits) | set(litbars)
    for x, y in skeleton:
        if x in lit_set and y in lit_set:
            continue
        for side in (0, 1):
            b.bi(nu[x][side], nu[y][side])
    for k, conj in enumerate(h.conjunctions, 1):
        for i in range(1, len(conj) + 1):
            for lit, top, bottom in ((_phi, "gamma", "delta"), (_phibar, "gammabar", "deltabar")):
                for side in (0, 1):
                    mid = nu[lit(i, k)][side]
                    b.bi(nu[f"{top}{M},{k}"][side], mid)
                    b.bi(mid, nu[f"{bottom}{M},{k}"][side])
    b.bi(nu["delta1,1"][0], "epsilon")
    b.bi(nu["delta1,1"][1], "beta")
    b.bi(nu["deltabar1,1"][0], "epsilon")
    b.bi(nu["deltabar1,1"][1], "beta")

    for rho in lower + upper:
        trio = [rho, *nu[rho]]
        for x in trio:
            for y in trio:
                if x != y:
                    b.di(x, y)
    segments = {}
    for row in range(1, M + 1):
        order = M + 1 - row
        for j in range(1, 2 ** (row - 1) + 1):
            for p, sign in (("gamma", -1), ("delta", 1)):
                seg = segments.setdefault(sign * order, [])
                for name in (f"{p}{row},{j}", f"{p}bar{row},{j}"):
                    seg += [name, *nu[name]]
    for key in sorted(segments):
        b.cycle(segments[key])
    _literal_cycles(b, h)
    return _finish(h, SPARSE, b, {"depth": M, "lower": lower, "upper": upper,
                                  "segments": {k: tuple(v) for k, v in segments.items()}})


def build(h: Formula3DNF, variant: str) -> ReductionInstance:
    if variant == DENSE:
        return build_dense(h)
    if variant == SPARSE:
        return build_sparse(h)
    raise InputError(f"unknown variant {variant!r}; use {DENSE} or {SPARSE}")


# witnesses -------------------------------------------------------------------------

def witness_conditioning_set(inst: ReductionInstance, assignment) -> int:
    """Bitmask of the conditioning set exposing the extra edge of ``g1``.

    The assignment must make the formula false.
    """
    assignment = tuple(int(bool(v)) for v in assignment)
    if inst.formula.evaluate(assignment):
        raise InputError("assignment satisfies the formula; a witness needs a falsifying assignment")
    hubs = [f"chi{l + 1}" if v else f"lambda{l + 1}" for l, v in enumerate(assignment)]
    if inst.variant == DENSE:
        seed = hubs + ["gamma", "delta", "epsilon", "beta"]
        return ancestors(inst.g, to_mask(inst.node(x) for x in seed))
    seed = []
    for x in hubs:
        seed += [x, f"nu_eps:{x}", f"nu_beta:{x}"]
    seed += [name for name in inst.index if name.startswith(("gamma", "delta"))
             and not name.startswith(("gammabar", "deltabar"))]
    cm = ancestors(inst.g, to_mask(inst.node(x) for x in seed))
    return cm | (1 << inst.beta) | (1 << inst.node("epsilon"))


def witness_disagreement(inst: ReductionInstance, assignment) -> tuple:
    """(separated in g, connected in g1) at (alpha, beta, witness C)."""
    cm = witness_conditioning_set(inst, assignment)
    return (not mu_connected(inst.g, inst.alpha, inst.beta, cm),
            mu_connected(inst.g1, inst.alpha, inst.beta, cm))


def sample_disagreements(ga: Dmg, gb: Dmg, samples: int, seed: int = 0, limit: int = 1) -> list:
    """Random (alpha, C) probes; returns up to ``limit`` disagreeing (alpha, beta, C) triples.

    Each probe draws an inclusion rate, a random C at that rate (closed under
    ancestors in ``ga`` half of the time) and compares the whole row of
    connected targets, so one probe covers every beta.  ``samples`` counts
    (alpha, beta, C) triples, that is probes times n.
    """
    if ga.n != gb.n:
        raise InputError("graphs must share the node set")
    n = ga.n
    rng = random.Random(seed)
    probes = max(1, -(-samples // max(n, 1)))
    found = []
    cache = {}
    for _ in range(probes):
        rate = rng.random()
        cm = to_mask(v for v in range(n) if rng.random() < rate)
        if rng.random() < 0.5:
            cm = ancestors(ga, cm)
        a = rng.randrange(n)
        cm &= ~(1 << a)
        if cm not in cache:
            cache[cm] = (connection_rows(ga, cm), connection_rows(gb, cm))
        ra, rb = cache[cm]
        diff = ra[a] ^ rb[a]
        for beta in iter_bits(diff):
            found.append((a, beta, cm))
            if len(found) >= limit:
                return found
    return found


def expected_node_count(h: Formula3DNF, variant: str) -> int:
    """Closed-form node count of the construction."""
    literals = sum(len(c) for c in h.conjunctions)
    if variant == DENSE:
        return 4 + 3 * (4 + 2 * literals + 2 * h.n_vars)
    tree = 2 ** tree_depth(len(h.conjunctions)) - 1
    lower = 2 * tree + literals + 2 * h.n_vars
    upper = 2 * tree + literals
    return 4 + 3 * (lower + upper)
