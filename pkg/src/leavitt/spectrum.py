"""Primitive-ideal descriptors and their realization by simple modules.

For a finite graph every primitive ideal is pinned down by a hereditary
saturated vertex set H plus one extra datum, and splits into three shapes:

  * type III: the graded ideal of (H, B_H) itself, available when the
    quotient graph is downward directed, every quotient cycle has an
    exit, and H is proper;
  * type II: the graded ideal of (H, B_H minus one breaking vertex u)
    whose ancestor set fills the complement of H;
  * type I: the non-graded ideal generated by (H, B_H) together with
    f(c) for an exclusive cycle c filling the complement, f irreducible.

Each descriptor is realized as the annihilator of one of the module
kinds in the modules layer, and the realization is machine-checked by
recomputing the annihilator.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

import networkx as nx

from .errors import (
    MismatchedDescriptor,
    NoIrreduciblePolynomial,
    SearchBoundExceeded,
    TooLarge,
)
from .fields import Field, LaurentPoly, QQ, check_defining_poly, one_minus_x
from .graph import (
    AdmissiblePair,
    Cycle,
    Edge,
    Graph,
    UltimatelyPeriodicPath,
    VertexKind,
    admissible_pair,
    ancestors_of,
    breaking_vertices,
    cycle_base,
    cycle_based_at,
    cycle_has_exit,
    enumerate_cycles,
    enumerate_hereditary_saturated,
    has_condition_L,
    is_downward_directed,
    is_exclusive,
    is_omega,
    one_cycle_per_vertex,
    quotient_graph,
    sorted_vertices,
    ultimately_periodic,
)
from .modules import (
    AnnihilatorDescriptor,
    ChenKind,
    ChenModule,
    annihilator,
    infinite_path_module,
    quotient_emitter_module,
    breaking_emitter_module,
    sink_module,
    twisted_module,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SinkResult:
    vertex: str


@dataclass(frozen=True)
class PrimitiveIdealDescriptor:
    kind: str  # "I" | "II" | "III"
    h: tuple
    cycle: Optional[Cycle] = None
    poly: Optional[LaurentPoly] = None  # None = parametric type I
    emitter: Optional[str] = None

    def h_set(self) -> frozenset:
        return frozenset(self.h)

    def is_parametric(self) -> bool:
        return self.kind == "I" and self.poly is None

    def label(self, g: Optional[Graph] = None) -> str:
        hs = "{%s}" % ", ".join(self.h)
        if self.kind == "III":
            return "III(H=%s)" % hs
        if self.kind == "II":
            return "II(H=%s, u=%s)" % (hs, self.emitter)
        cyc = " ".join("%s[%d]" % (e.cls, e.idx) for e in self.cycle.edges)
        f = self.poly.format() if self.poly is not None else "parametric"
        return "I(H=%s, c=%s, f=%s)" % (hs, cyc, f)

    def to_json_dict(self) -> dict:
        out = {"kind": self.kind, "h": list(self.h)}
        if self.kind == "II":
            out["u"] = self.emitter
        if self.kind == "I":
            out["cycle"] = ["%s[%d]" % (e.cls, e.idx) for e in self.cycle.edges]
            out["f"] = None if self.poly is None else self.poly.format()
        return out


def instantiate(p: PrimitiveIdealDescriptor, f: LaurentPoly) -> PrimitiveIdealDescriptor:
    """Fill a parametric type-I descriptor with a concrete irreducible."""
    if p.kind != "I":
        raise MismatchedDescriptor("only type I descriptors take a polynomial")
    f = check_defining_poly(f)
    return PrimitiveIdealDescriptor(kind="I", h=p.h, cycle=p.cycle, poly=f)


def descriptor_ideal(g: Graph, p: PrimitiveIdealDescriptor) -> AnnihilatorDescriptor:
    """The annihilator-descriptor form of the primitive ideal."""
    hs = p.h_set()
    bh = breaking_vertices(g, hs)
    if p.kind == "III":
        return AnnihilatorDescriptor(
            kind="graded", pair=admissible_pair(g, hs, bh)
        )
    if p.kind == "II":
        return AnnihilatorDescriptor(
            kind="graded", pair=admissible_pair(g, hs, bh - {p.emitter})
        )
    if p.poly is None:
        raise NoIrreduciblePolynomial(
            "parametric type I descriptor has no ideal; instantiate it first"
        )
    return AnnihilatorDescriptor(
        kind="non_graded",
        pair=admissible_pair(g, hs, bh),
        cycle=p.cycle,
        poly=p.poly,
    )


# ------------------------------------------------------------- enumeration


def enumerate_prim_ideals(g: Graph, bound: int = 16) -> list:
    """All primitive-ideal descriptors, type I left parametric.

    Deterministic order: hereditary saturated sets by size then name,
    then III before II before I within each set.
    """
    if len(g.vertices) > bound:
        raise TooLarge(
            "%d vertices exceeds the spectrum bound %d" % (len(g.vertices), bound)
        )
    all_vs = frozenset(g.vertices)
    cycles = enumerate_cycles(g)
    out = []
    hsets = sorted(
        enumerate_hereditary_saturated(g, bound=bound),
        key=lambda h: (len(h), tuple(sorted(h))),
    )
    for hs in hsets:
        h = sorted_vertices(g, hs)
        bh = breaking_vertices(g, hs)
        pair = admissible_pair(g, hs, bh)
        quotient, _ = quotient_graph(g, pair)
        if hs != all_vs and is_downward_directed(quotient) and has_condition_L(quotient):
            out.append(PrimitiveIdealDescriptor(kind="III", h=h))
        for u in sorted_vertices(g, bh):
            if ancestors_of(g, {u}) == all_vs - hs:
                out.append(PrimitiveIdealDescriptor(kind="II", h=h, emitter=u))
        for info in cycles:
            c = info.cycle
            base = cycle_base(g, c)
            if base in hs:
                continue
            if not is_exclusive(g, c):
                continue
            if ancestors_of(g, {base}) != all_vs - hs:
                continue
            if cycle_has_exit(quotient, c):
                log.warning(
                    "exclusive cycle %r has an exit in the quotient by %s; dropped",
                    c, h,
                )
                continue
            out.append(PrimitiveIdealDescriptor(kind="I", h=h, cycle=c))
    return out


# ------------------------------------------------------------- cofinal path


def _terminal_component(g: Graph) -> frozenset:
    dg = nx.DiGraph()
    dg.add_nodes_from(g.vertices)
    for ec in g.classes:
        dg.add_edge(ec.src, ec.dst)
    cond = nx.condensation(dg)
    terminals = [n for n in cond.nodes if cond.out_degree(n) == 0]
    if len(terminals) != 1:
        raise SearchBoundExceeded(
            "no unique terminal component; the graph is not downward directed"
        )
    return frozenset(cond.nodes[terminals[0]]["members"])


def cofinal_path(f_graph: Graph):
    """A witness seen from every vertex: the unique sink, or an
    ultimately periodic path whose period weaves two distinct cycles
    (hence is never an exclusive cycle).

    Assumes the graph is downward directed and every cycle has an exit.
    """
    term = _terminal_component(f_graph)
    if len(term) == 1:
        (w,) = term
        if not f_graph.out_classes(w):
            return SinkResult(w)
    in_term = [
        info.cycle
        for info in enumerate_cycles(f_graph)
        if set(cv for cv in (f_graph.source(e) for e in info.cycle.edges)) <= term
    ]
    for u in sorted(term):
        through = [c for c in in_term if any(f_graph.source(e) == u for e in c.edges)]
        if len(through) >= 2:
            c1, c2 = through[0], through[1]
        elif len(through) == 1:
            c1 = through[0]
            c2 = _parallel_twin(f_graph, c1)
            if c2 is None:
                continue
        else:
            continue
        p1 = cycle_based_at(f_graph, c1, u)
        p2 = cycle_based_at(f_graph, c2, u)
        period = f_graph.path(p1.edges + p2.edges)
        return ultimately_periodic(f_graph, f_graph.empty_path(u), period)
    raise SearchBoundExceeded(
        "no sink and no doubled cycle in the terminal component; "
        "preconditions were not met"
    )


def _parallel_twin(g: Graph, c: Cycle) -> Optional[Cycle]:
    """A second cycle obtained by swapping one edge for a parallel mate."""
    from .graph import make_cycle

    for pos, e in enumerate(c.edges):
        ec = g.edge_class(e.cls)
        count = None if is_omega(ec.multiplicity) else ec.multiplicity
        if count is not None and count < 2:
            continue
        other = Edge(e.cls, 1 if e.idx == 0 else 0)
        edges = list(c.edges)
        edges[pos] = other
        return make_cycle(g, edges)
    return None


# ------------------------------------------------------------- realization


def realize_chen(g: Graph, p: PrimitiveIdealDescriptor, field: Field = QQ) -> ChenModule:
    """A module whose annihilator is exactly the descriptor's ideal; the
    match is recomputed and enforced before returning."""
    if p.kind == "I":
        if p.poly is None:
            raise NoIrreduciblePolynomial(
                "type I needs a concrete irreducible polynomial"
            )
        f = check_defining_poly(p.poly)
        if f == one_minus_x(field):
            base = cycle_base(g, p.cycle)
            tail = ultimately_periodic(
                g, g.empty_path(base), cycle_based_at(g, p.cycle, base)
            )
            m = infinite_path_module(g, tail, field)
        else:
            m = twisted_module(g, p.cycle, f, field)
    elif p.kind == "II":
        m = breaking_emitter_module(g, p.emitter, field)
    else:
        pair = admissible_pair(g, p.h_set(), breaking_vertices(g, p.h_set()))
        quotient, _ = quotient_graph(g, pair)
        found = cofinal_path(quotient)
        if isinstance(found, SinkResult):
            w = found.vertex
            kind = g.vertex_kind(w)
            if kind is VertexKind.SINK:
                m = sink_module(g, w, field)
            elif kind is VertexKind.INFINITE_EMITTER:
                m = quotient_emitter_module(g, w, field)
            else:
                raise MismatchedDescriptor(
                    "quotient sink %r is regular upstairs; saturation is broken" % (w,)
                )
        else:
            lifted = ultimately_periodic(
                g,
                g.path(found.prefix.edges, source=found.prefix.source),
                g.path(found.period.edges),
            )
            m = infinite_path_module(g, lifted, field)
    expected = descriptor_ideal(g, p)
    got = annihilator(m)
    if got != expected:
        raise MismatchedDescriptor(
            "realized module %s has annihilator %r, wanted %r"
            % (m.label(), got, expected)
        )
    return m


def is_primitive_algebra(g: Graph) -> bool:
    """The zero ideal is primitive exactly when the empty set passes the
    type III test: the whole graph is downward directed and every cycle
    has an exit."""
    if not g.vertices:
        return False
    return any(
        p.kind == "III" and not p.h for p in enumerate_prim_ideals(g)
    )


# ------------------------------------------------------------- reporting


@dataclass
class SpectrumRow:
    descriptor: PrimitiveIdealDescriptor
    module: Optional[ChenModule]
    matched: bool
    note: str = ""


@dataclass
class SpectrumReport:
    graph_vertices: tuple
    rows: list
    all_matched: bool
    injective: Optional[bool]  # None when the one-cycle condition fails

    def to_json_dict(self) -> dict:
        return {
            "schema": 1,
            "vertices": list(self.graph_vertices),
            "rows": [
                {
                    "descriptor": r.descriptor.to_json_dict(),
                    "module": None if r.module is None else r.module.label(),
                    "matched": r.matched,
                    "note": r.note,
                }
                for r in self.rows
            ],
            "all_matched": self.all_matched,
            "injective": self.injective,
        }

    def render_table(self) -> str:
        lines = ["%-40s  %-28s  %s" % ("descriptor", "module", "matched")]
        for r in self.rows:
            lines.append(
                "%-40s  %-28s  %s%s"
                % (
                    r.descriptor.label(),
                    "-" if r.module is None else r.module.label(),
                    "yes" if r.matched else "NO",
                    (" (%s)" % r.note) if r.note else "",
                )
            )
        tail = "all matched: %s" % ("yes" if self.all_matched else "NO")
        if self.injective is not None:
            tail += "; injective: %s" % ("yes" if self.injective else "NO")
        else:
            tail += "; injectivity not asserted (a vertex sits on two cycles)"
        lines.append(tail)
        return "\n".join(lines)


def spectrum_chen_bijection_report(g: Graph, sample_irreducibles,
                                   field: Field = QQ, bound: int = 16) -> SpectrumReport:
    """Realize every descriptor (parametric ones once per sample
    polynomial) and check the annihilators match; when each vertex sits
    on at most one cycle, additionally check distinct realized modules
    get distinct ideals."""
    rows = []
    realized = []
    for p in enumerate_prim_ideals(g, bound=bound):
        instances = [p]
        if p.is_parametric():
            instances = [instantiate(p, f) for f in sample_irreducibles]
        for inst in instances:
            try:
                m = realize_chen(g, inst, field)
                rows.append(SpectrumRow(inst, m, True))
                realized.append((inst, m))
            except MismatchedDescriptor as ex:
                rows.append(SpectrumRow(inst, None, False, note=str(ex)))
    all_matched = all(r.matched for r in rows)
    injective = None
    if one_cycle_per_vertex(g):
        injective = True
        for i in range(len(realized)):
            for j in range(i + 1, len(realized)):
                pi, mi = realized[i]
                pj, mj = realized[j]
                same_ideal = descriptor_ideal(g, pi) == descriptor_ideal(g, pj)
                from .modules import are_isomorphic

                if same_ideal and not are_isomorphic(mi, mj):
                    injective = False
    return SpectrumReport(
        graph_vertices=g.vertices,
        rows=rows,
        all_matched=all_matched,
        injective=injective,
    )
