"""Command-line interface.

Exit codes: 0 success (or separated / equivalent), 1 the negative verdict
(connected / not equivalent), 2 malformed input or a violated size guard.
Data goes to stdout, diagnostics to stderr.
"""
from __future__ import annotations

import functools
import os
import sys

import click

from . import io
from .eqclass import dmeg as build_dmeg, greatest_element, hierarchy as build_hierarchy, least_element
from .graph import GuardError, InputError, is_mu_connecting, iter_bits
from .independence import ConditioningFamily, general_weak_equivalent, signature, weak_equivalent
from .learning import graph_oracle, learn_maximal, separation_list_oracle
from .projection import connectivity as node_connectivity, inseparability_rows, latent_project
from .reduction import TAUTOLOGY_MAX_VARS, build, is_tautology_bruteforce, parse_3dnf, \
    parse_assignment, witness_conditioning_set
from .separation import mu_connected, mu_separated_sets, witness_walk


def _fail(msg: str):
    click.echo(f"error: {msg}", err=True)
    sys.exit(2)


def guarded(fn):
    """Turn library input errors into exit code 2 with a message on stderr."""
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except GuardError as exc:
            _fail(f"size guard: {exc}")
        except InputError as exc:
            _fail(str(exc))
    return wrapper


def _emit(text: str, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _family(g, k, family):
    if (k is None) == (family is None):
        raise InputError("give exactly one of --k or --family")
    if family is not None:
        return io.family_from_document(family, g)
    return ConditioningFamily.size_bound(k)


def _fmt_set(g, m) -> str:
    return "{" + ",".join(io.mask_labels(g, m)) + "}"


@click.group()
@click.option("--threads", type=int, default=None,
              help="Worker count for parallel steps (default: all cores).")
@click.pass_context
def main(ctx, threads):
    """Directed mixed graphs: separation, weak equivalence and friends."""
    ctx.ensure_object(dict)
    if threads is not None and threads < 1:
        _fail("--threads must be positive")
    ctx.obj["threads"] = threads or os.cpu_count() or 1


@main.command()
@click.argument("graph", type=click.Path())
@click.option("--from", "source", required=True, help="Source label(s), comma separated.")
@click.option("--to", "target", required=True, help="Target label(s), comma separated.")
@click.option("--given", default="", help="Conditioning labels, comma separated.")
@click.option("--witness", is_flag=True, help="Print a connecting walk when connected.")
@guarded
def sep(graph, source, target, given, witness):
    """Test whether TO is separated from FROM given GIVEN."""
    g = io.load_graph(graph)
    idx = io.label_index(g)
    a_set = [io.resolve(idx, x) for x in io.parse_label_list(source)]
    b_set = [io.resolve(idx, x) for x in io.parse_label_list(target)]
    cm = io.resolve_set(idx, io.parse_label_list(given))
    if not a_set or not b_set:
        raise InputError("--from and --to need at least one label")
    separated = mu_separated_sets(g, a_set, b_set, set(iter_bits(cm)))
    if separated:
        click.echo("separated")
        sys.exit(0)
    click.echo("connected")
    if witness:
        for a in a_set:
            for b in b_set:
                if mu_connected(g, a, b, cm):
                    w = witness_walk(g, a, b, cm)
                    assert is_mu_connecting(g, w, cm)
                    click.echo(w.describe(g))
                    sys.exit(1)
    sys.exit(1)


def _align(g1, g2):
    if sorted(g1.labels) != sorted(g2.labels):
        raise InputError("the two graphs have different node labels")
    if g1.labels == g2.labels:
        return g2
    # reorder the second graph's nodes to match the first
    from .graph import Dmg
    pos = io.label_index(g2)
    perm = [pos[lab] for lab in g1.labels]
    inv = {old: new for new, old in enumerate(perm)}
    d = [(inv[e.a], inv[e.b]) for e in g2.directed_edges()]
    b = [(inv[e.a], inv[e.b]) for e in g2.bidirected_edges()]
    return Dmg.from_edges(g1.n, d, b, g1.labels)


@main.command()
@click.argument("graph1", type=click.Path())
@click.argument("graph2", type=click.Path())
@click.option("--k", type=int, default=None, help="Compare on all C with |C| <= K.")
@click.option("--family", type=click.Path(), default=None, help="Family document.")
@click.option("--triples", type=click.Path(), default=None, help="Triple document (A, B, C sets).")
@guarded
def equiv(graph1, graph2, k, family, triples):
    """Weak equivalence of two graphs."""
    g1 = io.load_graph(graph1)
    g2 = _align(g1, io.load_graph(graph2))
    if sum(x is not None for x in (k, family, triples)) != 1:
        raise InputError("give exactly one of --k, --family or --triples")
    if triples is not None:
        ok, w = general_weak_equivalent(g1, g2, io.triples_from_document(triples, g1))
        if ok:
            click.echo("equivalent")
            sys.exit(0)
        a, b, c = w
        click.echo("not equivalent")
        click.echo(f"witness: A={_fmt_set(g1, sum(1 << v for v in a))} "
                   f"B={_fmt_set(g1, sum(1 << v for v in b))} C={_fmt_set(g1, sum(1 << v for v in c))}")
        sys.exit(1)
    fam = _family(g1, k, family)
    ok, w = weak_equivalent(g1, g2, fam)
    if ok:
        click.echo("equivalent")
        sys.exit(0)
    a, b, c = w
    c_mask = sum(1 << v for v in c)
    sep1 = not mu_connected(g1, a, b, c_mask)
    click.echo("not equivalent")
    click.echo(f"witness: ({g1.label(a)}, {g1.label(b)}, {_fmt_set(g1, c_mask)}) "
               f"separated in {'first' if sep1 else 'second'} graph only")
    sys.exit(1)


@main.command(name="signature")
@click.argument("graph", type=click.Path())
@click.option("--k", type=int, default=None)
@click.option("--family", type=click.Path(), default=None)
@guarded
def signature_cmd(graph, k, family):
    """Hex dump of the separation bits over the family's canonical triples."""
    g = io.load_graph(graph)
    click.echo(io.signature_text(signature(g, _family(g, k, family))), nl=False)


def _extremal_options(fn):
    fn = click.option("--out", type=click.Path(), default=None, help="Write JSON here instead of stdout.")(fn)
    fn = click.option("--dot", type=click.Path(), default=None, help="Also write DOT to this file.")(fn)
    fn = click.option("--fixed-loops", is_flag=True,
                      help="Restrict the class to graphs with the greatest element's loops.")(fn)
    fn = click.option("--family", type=click.Path(), default=None)(fn)
    fn = click.option("--k", type=int, default=None)(fn)
    return click.argument("graph", type=click.Path())(fn)


@main.command()
@_extremal_options
@guarded
def greatest(graph, k, family, fixed_loops, dot, out):
    """Greatest element of the weak equivalence class."""
    g = io.load_graph(graph)
    h = greatest_element(g, _family(g, k, family))
    if dot:
        _emit(io.to_dot(h), dot)
    _emit(io.dumps(io.graph_to_document(h)), out)


@main.command()
@_extremal_options
@guarded
def dmeg(graph, k, family, fixed_loops, dot, out):
    """Greatest element with dashed (optional) edges marked."""
    g = io.load_graph(graph)
    d = build_dmeg(g, _family(g, k, family), fixed_loops=fixed_loops)
    if dot:
        _emit(io.to_dot(d.base, d.dashed), dot)
    _emit(io.dumps(io.dmeg_to_document(d)), out)


@main.command()
@_extremal_options
@guarded
def least(graph, k, family, fixed_loops, dot, out):
    """Least element of the class; prints null when none exists."""
    g = io.load_graph(graph)
    h = least_element(g, _family(g, k, family), fixed_loops=fixed_loops)
    if h is None:
        _emit(io.dumps(None), out)
        return
    if dot:
        _emit(io.to_dot(h), dot)
    _emit(io.dumps(io.graph_to_document(h)), out)


@main.command()
@click.argument("graph", type=click.Path())
@click.option("--keep", required=True, help="Labels to keep, comma separated.")
@click.option("--out", type=click.Path(), default=None)
@click.option("--dot", type=click.Path(), default=None)
@guarded
def project(graph, keep, out, dot):
    """Latent projection onto the kept nodes."""
    g = io.load_graph(graph)
    idx = io.label_index(g)
    kept = [io.resolve(idx, x) for x in io.parse_label_list(keep)]
    res = latent_project(g, kept)
    if dot:
        _emit(io.to_dot(res.graph), dot)
    _emit(io.dumps(io.graph_to_document(res.graph)), out)


@main.command()
@click.option("--oracle", "oracle_file", required=True, type=click.Path(),
              help="Graph document or separation-list document answering queries.")
@click.option("--k", type=int, default=None)
@click.option("--family", type=click.Path(), default=None)
@click.option("--out", type=click.Path(), default=None)
@click.pass_context
@guarded
def learn(ctx, oracle_file, k, family, out):
    """Recover the greatest element from independence answers alone."""
    doc = io._load_json(oracle_file)
    if isinstance(doc, dict) and "separations" in doc:
        labels, seps = io.separation_list_from_document(doc)
        oracle = separation_list_oracle(len(labels), seps)
    else:
        g = io.graph_from_document(doc)
        labels = g.labels
        oracle = graph_oracle(g)
    from .graph import Dmg
    ref = Dmg.empty(len(labels), labels)
    h = learn_maximal(oracle, _family(ref, k, family), workers=ctx.obj["threads"])
    _emit(io.dumps(io.graph_to_document(h.with_labels(labels))), out)


@main.command()
@click.option("--n", "n", required=True, type=int, help="Number of nodes.")
@click.option("--fix-loops", is_flag=True, help="Only graphs carrying every loop.")
@click.option("--no-dmeg", is_flag=True, help="Skip the dashed-edge computation.")
@click.option("--out", type=click.Path(), default=None)
@click.option("--dot", type=click.Path(), default=None)
@click.pass_context
@guarded
def hierarchy(ctx, n, fix_loops, no_dmeg, out, dot):
    """Forest of k-maximal graphs over every DMG on N nodes."""
    forest = build_hierarchy(n, fix_loops=fix_loops, workers=ctx.obj["threads"],
                             with_dmeg=False if no_dmeg else None)
    if dot:
        _emit(io.forest_to_dot(forest), dot)
    _emit(io.dumps(io.forest_to_document(forest)), out)


@main.command()
@click.argument("graph", type=click.Path())
@guarded
def connectivity(graph):
    """con_in, con_out and con of every node, plus the maximum."""
    g = io.load_graph(graph)
    rows = inseparability_rows(g)
    nodes = []
    for v in range(g.n):
        cin, cout, con = node_connectivity(g, v, rows)
        nodes.append({"node": g.label(v), "con_in": cin, "con_out": cout, "con": con,
                      "in_degree": g.in_degree(v)})
    doc = {"nodes": nodes, "max_con": max((x["con"] for x in nodes), default=0)}
    click.echo(io.dumps(doc), nl=False)


@main.command()
@click.option("--formula", required=True, help='3DNF text, e.g. "x1 & !x2 | x3".')
@click.option("--variant", type=click.Choice(["dense", "sparse"]), default="dense")
@click.option("--witness-for", "witness_for", default=None,
              help="Falsifying assignment, e.g. 0,1 or x1=0,x2=1.")
@click.option("--out", type=click.Path(), default=None)
@guarded
def reduce(formula, variant, witness_for, out):
    """Build the graph triple (g, g1, g2) for a 3DNF formula."""
    h = parse_3dnf(formula)
    inst = build(h, variant)
    taut, falsifier = is_tautology_bruteforce(h) if h.n_vars <= TAUTOLOGY_MAX_VARS else (None, None)
    doc = {
        "formula": str(h),
        "variant": variant,
        "tautology": taut,
        "alpha": inst.g.label(inst.alpha),
        "beta": inst.g.label(inst.beta),
        "stats": inst.stats(),
        "g": io.graph_to_document(inst.g),
        "g1_extra": [inst.g.label(inst.node("epsilon")), "<->", inst.g.label(inst.beta)],
        "g2_extra": [inst.g.label(inst.node("phi")), "->", inst.g.label(inst.node("epsilon"))],
    }
    if witness_for is not None:
        assignment = parse_assignment(witness_for, h.n_vars)
        cm = witness_conditioning_set(inst, assignment)
        doc["witness"] = {
            "assignment": list(assignment),
            "C": io.mask_labels(inst.g, cm),
            "separated_in_g": not mu_connected(inst.g, inst.alpha, inst.beta, cm),
            "separated_in_g1": not mu_connected(inst.g1, inst.alpha, inst.beta, cm),
        }
    elif falsifier is not None:
        doc["falsifying_assignment"] = list(falsifier)
    _emit(io.dumps(doc), out)


if __name__ == "__main__":  # pragma: no cover
    main()
