"""JSON documents, DOT export and label resolution.

Graph document::

    {"nodes": ["1", "2", "3"],
     "directed": [["2", "3"], ["3", "2"], ["1", "1"]],
     "bidirected": [["1", "2"], ["2", "2"]]}

Family document: ``{"k": 2}`` or ``{"sets": [[], ["2"], ["2", "4"]]}``.

Triple document (general weak equivalence): a list of
``{"A": [...], "B": [...], "C": [...]}`` objects.

Separation-list document (an oracle backed by a file)::

    {"nodes": [...], "separations": [["1", "3", ["2", "3"]], ...]}

listing every separated (alpha, beta, C); anything absent counts as connected.

Output is deterministic: edges follow node order, bidirected pairs are
emitted with the smaller node index first, and JSON keys keep a fixed order.
"""
from __future__ import annotations

import json
import re
from pathlib import Path

from .graph import Dmg, Edge, InputError, iter_bits, mask_to_tuple

# documents -----------------------------------------------------------------------


def _load_json(source):
    if isinstance(source, (dict, list)):
        return source
    try:
        text = Path(source).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _label_index(nodes) -> dict:
    if not isinstance(nodes, list) or not all(isinstance(x, (str, int)) for x in nodes):
        raise InputError("'nodes' must be a list of labels")
    labels = [str(x) for x in nodes]
    if len(set(labels)) != len(labels):
        dup = sorted({x for x in labels if labels.count(x) > 1})
        raise InputError(f"duplicate node labels: {', '.join(dup)}")
    return {lab: i for i, lab in enumerate(labels)}


def resolve(index: dict, label) -> int:
    key = str(label)
    if key not in index:
        raise InputError(f"unknown node label {key!r}")
    return index[key]


def resolve_set(index: dict, labels) -> int:
    m = 0
    for lab in labels:
        m |= 1 << resolve(index, lab)
    return m


def parse_label_list(text: str | None) -> list:
    """``"2,3"`` -> ["2", "3"]; empty or None -> []."""
    if text is None:
        return []
    return [p.strip() for p in text.split(",") if p.strip()]


def graph_from_document(doc) -> Dmg:
    doc = _load_json(doc)
    if not isinstance(doc, dict) or "nodes" not in doc:
        raise InputError("graph document needs a 'nodes' list")
    unknown = set(doc) - {"nodes", "directed", "bidirected"}
    if unknown:
        raise InputError(f"unexpected keys in graph document: {', '.join(sorted(unknown))}")
    index = _label_index(doc["nodes"])
    pairs = {}
    for key in ("directed", "bidirected"):
        items = doc.get(key, [])
        if not isinstance(items, list):
            raise InputError(f"'{key}' must be a list of label pairs")
        out = []
        for item in items:
            if not isinstance(item, list) or len(item) != 2:
                raise InputError(f"'{key}' entries must be [label, label] pairs, got {item!r}")
            out.append((resolve(index, item[0]), resolve(index, item[1])))
        pairs[key] = out
    labels = tuple(str(x) for x in doc["nodes"])
    return Dmg.from_edges(len(labels), pairs["directed"], pairs["bidirected"], labels)


def graph_to_document(g: Dmg) -> dict:
    lab = g.label
    return {
        "nodes": [lab(v) for v in range(g.n)],
        "directed": [[lab(e.a), lab(e.b)] for e in g.directed_edges()],
        "bidirected": [[lab(e.a), lab(e.b)] for e in g.bidirected_edges()],
    }


def load_graph(path) -> Dmg:
    return graph_from_document(_load_json(path))


# a real newline only occurs between tokens, never inside a JSON string
_FLAT_LIST = re.compile(r"\[\n\s*([^\[\]{}]*?)\n\s*\]")
_ITEM_BREAK = re.compile(r",\n\s*")


def dumps(obj) -> str:
    """Indented JSON with innermost lists of scalars kept on one line."""
    text = json.dumps(obj, indent=2, ensure_ascii=False)
    return _FLAT_LIST.sub(lambda m: "[" + _ITEM_BREAK.sub(", ", m.group(1)) + "]", text) + "\n"


def label_index(g: Dmg) -> dict:
    return {g.label(v): v for v in range(g.n)}


def family_from_document(doc, g: Dmg):
    from .independence import ConditioningFamily
    doc = _load_json(doc)
    if not isinstance(doc, dict) or len(doc) != 1 or not ({"k", "sets"} & set(doc)):
        raise InputError("family document must be {\"k\": K} or {\"sets\": [[...], ...]}")
    if "k" in doc:
        k = doc["k"]
        if not isinstance(k, int) or isinstance(k, bool):
            raise InputError("family 'k' must be an integer")
        return ConditioningFamily.size_bound(k)
    sets = doc["sets"]
    if not isinstance(sets, list) or not all(isinstance(s, list) for s in sets):
        raise InputError("family 'sets' must be a list of label lists")
    index = label_index(g)
    return ConditioningFamily.explicit(resolve_set(index, s) for s in sets)


def family_to_document(fam, g: Dmg) -> dict:
    from .independence import EXPLICIT, SIZE
    if fam.kind == SIZE:
        return {"k": fam.k}
    if fam.kind == EXPLICIT:
        return {"sets": [[g.label(v) for v in mask_to_tuple(m)] for m in fam.sets]}
    return {"k": g.n}


def triples_from_document(doc, g: Dmg) -> list:
    doc = _load_json(doc)
    if not isinstance(doc, list):
        raise InputError("triple document must be a list of {\"A\", \"B\", \"C\"} objects")
    index = label_index(g)
    out = []
    for item in doc:
        if not isinstance(item, dict) or set(item) != {"A", "B", "C"}:
            raise InputError(f"triple entries need exactly the keys A, B, C, got {item!r}")
        out.append(tuple({resolve(index, x) for x in item[key]} for key in ("A", "B", "C")))
    return out


def separation_list_from_document(doc):
    """(labels, list of (alpha, beta, frozenset C)) from a separation-list document."""
    doc = _load_json(doc)
    if not isinstance(doc, dict) or "separations" not in doc or "nodes" not in doc:
        raise InputError("separation list needs 'nodes' and 'separations'")
    index = _label_index(doc["nodes"])
    seps = []
    for item in doc["separations"]:
        if not isinstance(item, list) or len(item) != 3 or not isinstance(item[2], list):
            raise InputError(f"separation entries must be [alpha, beta, [C...]], got {item!r}")
        c = frozenset(resolve(index, x) for x in item[2])
        seps.append((resolve(index, item[0]), resolve(index, item[1]), c))
    return tuple(str(x) for x in doc["nodes"]), seps


# signatures ------------------------------------------------------------------------

def signature_text(sig) -> str:
    """Two lines: the header (node count and family) and the hex bitset."""
    return f"{sig.header()}\n{sig.to_hex()}\n"


# DOT ---------------------------------------------------------------------------------

def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g: Dmg, dashed=frozenset(), name: str = "G") -> str:
    """DOT text; edges in ``dashed`` get ``style=dashed``.

    Bidirected edges, loops included, are drawn with arrowheads at both ends.
    """
    lines = [f"digraph {_q(name)} {{"]
    for v in range(g.n):
        lines.append(f"  {_q(g.label(v))};")
    for e in sorted(g.edges(), key=Edge.sort_key):
        attrs = []
        if not e.is_directed:
            attrs.append("dir=both")
        if e in dashed:
            attrs.append("style=dashed")
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"  {_q(g.label(e.a))} -> {_q(g.label(e.b))}{suffix};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def dmeg_to_document(d) -> dict:
    g = d.base
    doc = graph_to_document(g)
    doc["dashed"] = {
        "directed": [[g.label(e.a), g.label(e.b)] for e in d.dashed_sorted() if e.is_directed],
        "bidirected": [[g.label(e.a), g.label(e.b)] for e in d.dashed_sorted() if not e.is_directed],
    }
    return doc


# hierarchy forest --------------------------------------------------------------------

def forest_to_document(forest, labels=None) -> dict:
    labels = labels or tuple(str(v + 1) for v in range(forest.n))
    levels = []
    for k, nodes in enumerate(forest.levels):
        out = []
        for i, node in enumerate(nodes):
            g = node.graph.with_labels(labels)
            item = {"id": i, "level": k, "parent": node.parent, "members": node.members,
                    "graph": graph_to_document(g)}
            if node.dashed is not None:
                item["dashed"] = sorted(g.edge_str(e) for e in node.dashed)
            out.append(item)
        levels.append(out)
    return {"n": forest.n, "fix_loops": forest.fix_loops, "graph_count": forest.graph_count,
            "levels": levels}


def forest_to_dot(forest, labels=None) -> str:
    """One DOT node per (level, class), arrows from each class to its parent."""
    labels = labels or tuple(str(v + 1) for v in range(forest.n))
    lines = ['digraph "hierarchy" {', "  node [shape=box, fontname=monospace];"]
    for k, nodes in enumerate(forest.levels):
        for i, node in enumerate(nodes):
            g = node.graph.with_labels(labels)
            edges = [g.edge_str(e) for e in g.non_loop_edges()]
            text = f"k={k} #{i} ({node.members})\\n" + "\\n".join(edges)
            # keep the \n line breaks, escape quotes only
            label = text.replace('"', '\\"')
            lines.append(f'  "k{k}_{i}" [label="{label}"];')
            if node.parent is not None:
                lines.append(f"  \"k{k}_{i}\" -> \"k{k - 1}_{node.parent}\";")
    lines.append("}")
    return "\n".join(lines) + "\n"


def mask_labels(g: Dmg, m: int) -> list:
    return [g.label(v) for v in iter_bits(m)]
