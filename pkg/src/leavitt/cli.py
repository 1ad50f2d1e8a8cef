"""Command-line front end.

Every command loads a graph from JSON, runs one analysis, and prints a
deterministic report; `--json` switches to a machine format carrying a
schema field.  Domain failures exit 1 with a one-line diagnostic, usage
problems exit 2.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from .errors import LeavittError
from .fields import QQ, parse_field, parse_laurent
from .graph import (
    Graph,
    LazyPath,
    count_paths,
    cycle_has_exit,
    enumerate_cycles,
    enumerate_hereditary_saturated,
    breaking_vertices,
    graph_from_file,
    growing_run_stream,
    growth_class,
    has_condition_L,
    is_downward_directed,
    is_exclusive,
    is_omega,
    make_cycle,
    one_cycle_per_vertex,
    sorted_vertices,
    to_dot,
    ultimately_periodic,
    Edge,
    GrowthClass,
)
from .algebra import normal_form
from .expressions import format_element, parse_expression
from .modules import (
    ModuleElement,
    act,
    annihilator,
    breaking_emitter_module,
    format_module_element,
    infinite_path_module,
    quotient_emitter_module,
    sink_module,
    twisted_module,
    verify_annihilator,
)
from .spectrum import spectrum_chen_bijection_report
from .structure import (
    UNKNOWN,
    build_counterexample_module,
    distinguish_from_cycle_modules,
    find_double_cycle_vertex,
    is_simple_findim,
    is_V_finitely_presented,
    reduce_pipeline,
)


class _Usage(Exception):
    pass


# ------------------------------------------------------------- small parsers


_EDGE_TOKEN = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*'*)(?:\[(\d+)\])?$")


def _parse_edges(g: Graph, text: str) -> list:
    out = []
    for tok in text.split():
        m = _EDGE_TOKEN.match(tok)
        if m is None:
            raise _Usage("bad edge token %r" % (tok,))
        out.append(Edge(m.group(1), int(m.group(2) or 0)))
    return out


def parse_module_spec(text: str, g: Graph, field):
    """Textual module forms: N(w), NB(v), NH(v), V(prefix; period),
    Vf(period; poly)."""
    m = re.match(r"^\s*(N|NB|NH|V|Vf)\s*\((.*)\)\s*$", text, re.S)
    if m is None:
        raise _Usage(
            "module spec %r is not one of N(w), NB(v), NH(v), "
            "V(prefix; period), Vf(period; poly)" % (text,)
        )
    kind, body = m.group(1), m.group(2).strip()
    if kind == "N":
        return sink_module(g, body, field)
    if kind == "NB":
        return breaking_emitter_module(g, body, field)
    if kind == "NH":
        return quotient_emitter_module(g, body, field)
    if ";" not in body:
        raise _Usage("%s(...) needs a ';' separating its two parts" % kind)
    left, right = body.split(";", 1)
    if kind == "V":
        period_edges = _parse_edges(g, right)
        if not period_edges:
            raise _Usage("V(prefix; period) needs a nonempty period")
        period = g.path(period_edges)
        prefix_edges = _parse_edges(g, left)
        prefix = (
            g.path(prefix_edges) if prefix_edges else g.empty_path(period.source)
        )
        return infinite_path_module(g, ultimately_periodic(g, prefix, period), field)
    cycle = make_cycle(g, _parse_edges(g, left))
    poly = parse_laurent(right.strip(), field)
    return twisted_module(g, cycle, poly, field)


def _descriptor_text(g: Graph, d) -> str:
    h = "{%s}" % ", ".join(sorted_vertices(g, d.pair.h))
    s = "{%s}" % ", ".join(sorted_vertices(g, d.pair.s))
    if d.kind == "graded":
        return "Graded(H=%s, S=%s)" % (h, s)
    cyc = " ".join(g.edge_label(e) for e in d.cycle.edges)
    return "NonGraded(H=%s, S=%s, cycle=%s, poly=%s)" % (h, s, cyc, d.poly.format())


def _descriptor_json(g: Graph, d) -> dict:
    out = {
        "kind": d.kind,
        "h": list(sorted_vertices(g, d.pair.h)),
        "s": list(sorted_vertices(g, d.pair.s)),
    }
    if d.kind == "non_graded":
        out["cycle"] = [g.edge_label(e) for e in d.cycle.edges]
        out["poly"] = d.poly.format()
    return out


# ------------------------------------------------------------- commands


def _cmd_analyze(args) -> int:
    g = graph_from_file(args.graph)
    cycles = enumerate_cycles(g)
    hs = enumerate_hereditary_saturated(g, bound=args.bound)
    if args.json:
        out = {
            "schema": 1,
            "graph": g.to_json_dict(),
            "vertex_kinds": {v: g.vertex_kind(v).name.lower() for v in g.vertices},
            "cycles": [
                {
                    "edges": [g.edge_label(e) for e in info.cycle.edges],
                    "has_exit": cycle_has_exit(g, info.cycle),
                    "exclusive": is_exclusive(g, info.cycle),
                }
                for info in cycles
            ],
            "condition_L": has_condition_L(g),
            "downward_directed": is_downward_directed(g),
            "one_cycle_per_vertex": one_cycle_per_vertex(g),
            "growth": growth_class(g).name.lower() if not g.has_omega_class() else None,
            "hereditary_saturated": [
                {
                    "h": list(sorted_vertices(g, h)),
                    "breaking": list(sorted_vertices(g, breaking_vertices(g, h))),
                }
                for h in hs
            ],
        }
        print(json.dumps(out, indent=2))
        return 0
    print("graph: %d vertices, %d edge classes" % (len(g.vertices), len(g.classes)))
    for v in g.vertices:
        print("  %s  %s" % (v, g.vertex_kind(v).name.lower().replace("_", " ")))
    for ec in g.classes:
        mult = "omega" if is_omega(ec.multiplicity) else "x%d" % ec.multiplicity
        print("  %s: %s -> %s  (%s)" % (ec.name, ec.src, ec.dst, mult))
    if cycles:
        print("cycles:")
        for info in cycles:
            print(
                "  %s  (exit: %s, exclusive: %s)"
                % (
                    " ".join(g.edge_label(e) for e in info.cycle.edges),
                    "yes" if cycle_has_exit(g, info.cycle) else "no",
                    "yes" if is_exclusive(g, info.cycle) else "no",
                )
            )
    else:
        print("cycles: none")
    print("condition (L): %s" % ("yes" if has_condition_L(g) else "no"))
    print("downward directed: %s" % ("yes" if is_downward_directed(g) else "no"))
    print("one cycle per vertex: %s" % ("yes" if one_cycle_per_vertex(g) else "no"))
    if not g.has_omega_class():
        print("growth: %s" % growth_class(g).name.lower())
    print("hereditary saturated sets (bound %d):" % args.bound)
    for h in hs:
        b = breaking_vertices(g, h)
        print(
            "  {%s}  breaking: {%s}"
            % (", ".join(sorted_vertices(g, h)), ", ".join(sorted_vertices(g, b)))
        )
    return 0


def _cmd_nf(args) -> int:
    g = graph_from_file(args.graph)
    field = parse_field(args.field)
    x = normal_form(parse_expression(args.expr, g, field))
    text = format_element(x)
    if args.json:
        print(json.dumps({"schema": 1, "input": args.expr, "normal_form": text}))
    else:
        print(text)
    return 0


def _cmd_prim(args) -> int:
    g = graph_from_file(args.graph)
    field = parse_field(args.field)
    polys = [parse_laurent(s.strip(), field) for s in args.irr.split(",") if s.strip()]
    report = spectrum_chen_bijection_report(g, polys, field, bound=args.bound)
    if args.json:
        print(json.dumps(report.to_json_dict(), indent=2))
    else:
        print(report.render_table())
    return 0


def _cmd_chen_act(args) -> int:
    g = graph_from_file(args.graph)
    field = parse_field(args.field)
    m = parse_module_spec(args.module, g, field)
    a = parse_expression(args.expr, g, field)
    x = ModuleElement(m, {m.generator_datum(): m.scalar_field.one()})
    y = act(m, a, x)
    if args.json:
        print(
            json.dumps(
                {
                    "schema": 1,
                    "module": m.label(),
                    "expr": args.expr,
                    "generator": format_module_element(x),
                    "result": format_module_element(y),
                }
            )
        )
    else:
        print("%s acting on generator of %s:" % (args.expr, m.label()))
        print("  %s" % format_module_element(y))
    return 0


def _cmd_chen_ann(args) -> int:
    g = graph_from_file(args.graph)
    field = parse_field(args.field)
    m = parse_module_spec(args.module, g, field)
    d = annihilator(m)
    ok = verify_annihilator(m, d, depth=args.depth)
    if args.json:
        out = {
            "schema": 1,
            "module": m.label(),
            "annihilator": _descriptor_json(g, d),
            "verified_depth": args.depth,
            "verified": ok,
        }
        print(json.dumps(out, indent=2))
    else:
        print("annihilator of %s: %s" % (m.label(), _descriptor_text(g, d)))
        print("verified at depth %d: %s" % (args.depth, "yes" if ok else "NO"))
    return 0


def _cmd_check_fp(args) -> int:
    g = graph_from_file(args.graph)
    if (args.path is None) == (args.stream is None):
        raise _Usage("check-fp needs exactly one of --path or --stream")
    if args.path is not None:
        if ";" not in args.path:
            raise _Usage("--path takes 'prefix; period'")
        left, right = args.path.split(";", 1)
        period_edges = _parse_edges(g, right)
        if not period_edges:
            raise _Usage("the period part is empty")
        period = g.path(period_edges)
        prefix_edges = _parse_edges(g, left)
        prefix = (
            g.path(prefix_edges) if prefix_edges else g.empty_path(period.source)
        )
        p = ultimately_periodic(g, prefix, period)
        label = "V(%s; %s)" % (
            " ".join(g.edge_label(e) for e in p.prefix.edges),
            " ".join(g.edge_label(e) for e in p.period.edges),
        )
    else:
        if args.stream != "gh-tower":
            raise _Usage("the only built-in stream is gh-tower")
        p = _gh_tower(g, args.depth)
        label = "stream gh-tower"
    res = is_V_finitely_presented(g, p)
    if res is UNKNOWN:
        text = "Unknown (not periodic within %d)" % args.depth
        value = None
    else:
        text = "true" if res else "false"
        value = bool(res)
    if args.json:
        print(
            json.dumps(
                {"schema": 1, "path": label, "finitely_presented": value, "note": text}
            )
        )
    else:
        print(text)
    return 0


def _gh_tower(g: Graph, depth: int) -> LazyPath:
    loops = {}
    for ec in g.classes:
        if ec.src == ec.dst and not is_omega(ec.multiplicity):
            loops.setdefault(ec.src, []).append(ec.name)
    for v in sorted(loops):
        if len(loops[v]) >= 2:
            first, second = sorted(loops[v])[:2]
            return LazyPath(
                g, growing_run_stream(g, first, second), depth, name="gh-tower"
            )
    raise _Usage("the gh-tower stream needs a vertex with two distinct loops")


def _cmd_reduce(args) -> int:
    g = graph_from_file(args.graph)
    field = parse_field(args.field)
    final, steps, t = reduce_pipeline(g, field)
    if args.json:
        out = {
            "schema": 1,
            "steps": [
                {
                    "kind": s.kind,
                    "detail": s.detail,
                    "certificate": s.certificate.kind,
                    "split_off": s.split_off,
                    "after": s.after.to_json_dict(),
                }
                for s in steps
            ],
            "final": final.to_json_dict(),
            "trivial_factors": t,
        }
        print(json.dumps(out, indent=2))
        return 0
    if not steps:
        print("nothing to reduce")
    for i, s in enumerate(steps, 1):
        print(
            "step %d: %s %s  (hom verified, %s certificate)"
            % (i, s.kind.replace("_", " "), s.detail, s.certificate.kind)
        )
    print(
        "final graph: %d vertices, %d edge classes; split-off trivial factors: %d"
        % (len(final.vertices), len(final.classes), t)
    )
    return 0


def _cmd_counterexample(args) -> int:
    g = graph_from_file(args.graph)
    field = parse_field(args.field)
    found = find_double_cycle_vertex(g)
    if found is None:
        raise LeavittError(
            "every vertex sits on at most one cycle; no counterexample exists"
        )
    v, c1, c2 = found
    m = build_counterexample_module(g, v, c1, c2, field)
    simple = is_simple_findim(m)
    rep = distinguish_from_cycle_modules(g, m)
    if args.json:
        out = {
            "schema": 1,
            "vertex": v,
            "cycles": [
                [g.edge_label(e) for e in c1.edges],
                [g.edge_label(e) for e in c2.edges],
            ],
            "dim": m.total_dim(),
            "field": repr(field),
            "simple": simple,
            "distinguish": rep.to_json_dict(),
        }
        print(json.dumps(out, indent=2))
        return 0
    print("vertex: %s" % v)
    print(
        "cycles: %s | %s"
        % (
            " ".join(g.edge_label(e) for e in c1.edges),
            " ".join(g.edge_label(e) for e in c2.edges),
        )
    )
    print("dim: %d" % m.total_dim())
    print("simple over %s: %s" % (repr(field), "true" if simple else "FALSE"))
    for ent in rep.entries:
        cyc = " ".join(g.edge_label(e) for e in ent.cycle.edges)
        if not ent.same_dims:
            print("cycle %s: distinguished by dimensions" % cyc)
        elif ent.witness_edge is not None:
            print("cycle %s: witness %s" % (cyc, g.edge_label(ent.witness_edge)))
        else:
            print("cycle %s: NOT distinguished" % cyc)
    if rep.vacuous:
        print("no cycle matches the module dimension; distinction by dimension")
    print("non-Chen: %s" % ("yes" if rep.all_distinguished else "NO"))
    return 0


def _cmd_growth(args) -> int:
    g = graph_from_file(args.graph)
    cls = growth_class(g)
    counts = count_paths(g, args.length)
    if args.json:
        print(
            json.dumps(
                {
                    "schema": 1,
                    "growth": cls.name.lower(),
                    "one_cycle_per_vertex": one_cycle_per_vertex(g),
                    "path_counts": counts,
                }
            )
        )
    else:
        print("growth: %s" % cls.name.lower())
        print("one cycle per vertex: %s" % ("yes" if one_cycle_per_vertex(g) else "no"))
        print(
            "path counts by length: %s"
            % " ".join(str(c) for c in counts)
        )
    return 0


def _cmd_export_dot(args) -> int:
    g = graph_from_file(args.graph)
    text = to_dot(g)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


# ------------------------------------------------------------- wiring


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="leavitt",
        description="Symbolic workbench for Leavitt path algebras of "
        "finite directed multigraphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--graph", required=True, help="graph JSON file")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument(
            "--seed",
            type=int,
            default=0,
            help="sampling seed (current commands draw no samples; accepted "
            "for reproducibility contracts)",
        )
        p.set_defaults(fn=fn)
        return p

    p = add("analyze", _cmd_analyze, "graph shape, cycles, ideals overview")
    p.add_argument("--bound", type=int, default=20,
                   help="cap on hereditary saturated sets listed")

    p = add("nf", _cmd_nf, "normal form of an algebra expression")
    p.add_argument("--expr", required=True)
    p.add_argument("--field", default="rational")

    p = add("prim", _cmd_prim, "primitive ideal table with realizing modules")
    p.add_argument("--irr", default="1+x,1+x+x^2",
                   help="comma-separated irreducible polynomials for "
                   "parametric ideals")
    p.add_argument("--field", default="rational")
    p.add_argument("--bound", type=int, default=16)

    p = add("chen-act", _cmd_chen_act, "act on a module's canonical generator")
    p.add_argument("--module", required=True,
                   help="N(w), NB(v), NH(v), V(prefix; period), Vf(period; poly)")
    p.add_argument("--expr", required=True)
    p.add_argument("--field", default="rational")

    p = add("chen-ann", _cmd_chen_ann, "annihilator of a module, with verification")
    p.add_argument("--module", required=True)
    p.add_argument("--field", default="rational")
    p.add_argument("--depth", type=int, default=6)

    p = add("check-fp", _cmd_check_fp, "finite presentation of an infinite-path module")
    p.add_argument("--path", help="'prefix; period' edge lists")
    p.add_argument("--stream", help="built-in stream name (gh-tower)")
    p.add_argument("--depth", type=int, default=50,
                   help="inspection depth for streams")

    p = add("reduce", _cmd_reduce, "source elimination and cycle collapse pipeline")
    p.add_argument("--field", default="rational")

    p = add("counterexample", _cmd_counterexample,
            "finite dimensional simple non-Chen module package")
    p.add_argument("--field", default="gf2")

    p = add("growth", _cmd_growth, "growth class and path counts")
    p.add_argument("--length", type=int, default=8)

    p = add("export-dot", _cmd_export_dot, "GraphViz rendering of the graph")
    p.add_argument("--out", "-o", help="output file (default stdout)")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except _Usage as ex:
        print("usage error: %s" % ex, file=sys.stderr)
        return 2
    except LeavittError as ex:
        print("error: %s" % ex, file=sys.stderr)
        return 1
    except FileNotFoundError as ex:
        print("error: %s" % ex, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
