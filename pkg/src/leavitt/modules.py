"""The five canonical simple modules and their annihilators.

Every module here comes with an explicit countable basis and an exact
action of the path algebra on it:

  * sink modules: basis = finite paths into a fixed sink; a ghost edge
    peels the first edge off a path or kills it, so the sink vertex
    itself is annihilated by every ghost edge;
  * breaking-emitter and quotient-emitter modules: sink modules over a
    quotient graph, pulled back along the quotient surjection, for the
    two shapes an infinite emitter can take;
  * infinite-path modules: basis = the tail-equivalence class of an
    ultimately periodic path, each member stored as a canonical
    (prefix, period-rotation) pair;
  * twisted modules: same basis as the infinite-path module of an
    exclusive cycle, but with scalars in K[x]/(f); crossing the marked
    edge of the cycle multiplies by the class of x (or its inverse for
    ghost crossings).

Infinite paths given only as streams (lazy paths) support the action and
nothing else until a period is detected inside the inspection window.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from enum import Enum
from typing import Optional

from .errors import (
    DatumEscapesH,
    DisallowedPolynomial,
    FieldMismatch,
    GraphMismatch,
    NotASink,
    NotExclusive,
    NotHereditary,
    UndecidableLazyTail,
    WrongEmitterShape,
)
from .fields import Field, LaurentPoly, QQ, QuotientField, check_defining_poly, one_minus_x
from .graph import (
    AdmissiblePair,
    Cycle,
    Edge,
    Graph,
    LazyPath,
    Path,
    UltimatelyPeriodicPath,
    VertexKind,
    admissible_pair,
    breaking_vertices,
    cycle_base,
    cycle_based_at,
    cycle_has_exit,
    detect_period,
    is_exclusive,
    is_hereditary,
    is_omega,
    make_cycle,
    quotient_graph,
    restricted_graph,
    tail_complement_of_upp,
    tail_equivalent,
    ultimately_periodic,
    vertex_tail_complement,
)
from .algebra import (
    GeneratorImages,
    LpaElement,
    Monomial,
    images_from_table,
    poly_at_cycle,
    vertex_element,
    vertex_minus_escapes,
    zero_element,
)


class ChenKind(Enum):
    SINK = "sink"
    BREAKING_EMITTER = "breaking_emitter"
    QUOTIENT_EMITTER = "quotient_emitter"
    INFINITE_PATH = "infinite_path"
    TWISTED = "twisted"


@dataclass(frozen=True)
class LazyDatum:
    """A prepended finite path in front of a shifted stream tail."""

    alpha: tuple
    offset: int


class ChenModule:
    """Immutable handle for one of the five module kinds."""

    def __init__(
        self,
        kind: ChenKind,
        graph: Graph,
        field: Field,
        sink: Optional[str] = None,
        emitter: Optional[str] = None,
        path: Optional[UltimatelyPeriodicPath] = None,
        lazy: Optional[LazyPath] = None,
        cycle: Optional[Cycle] = None,
        poly: Optional[LaurentPoly] = None,
        carrier: Optional[Graph] = None,
        carrier_sink: Optional[str] = None,
        hom: Optional[GeneratorImages] = None,
        pair: Optional[AdmissiblePair] = None,
        scalar_field: Optional[Field] = None,
    ):
        self.kind = kind
        self.graph = graph
        self.field = field
        self.sink = sink
        self.emitter = emitter
        self.path = path
        self.lazy = lazy
        self.cycle = cycle
        self.poly = poly
        self.carrier = carrier if carrier is not None else graph
        self.carrier_sink = carrier_sink
        self.hom = hom
        self.pair = pair
        self.scalar_field = scalar_field if scalar_field is not None else field

    def _datum_key(self):
        if self.kind is ChenKind.SINK:
            return self.sink
        if self.kind in (ChenKind.BREAKING_EMITTER, ChenKind.QUOTIENT_EMITTER):
            return self.emitter
        if self.kind is ChenKind.INFINITE_PATH:
            return self.path if self.path is not None else id(self.lazy)
        return (self.cycle, self.poly)

    def __eq__(self, other):
        if not isinstance(other, ChenModule):
            return NotImplemented
        return (
            self.kind == other.kind
            and self.graph == other.graph
            and self.field == other.field
            and self._datum_key() == other._datum_key()
        )

    def __hash__(self):
        return hash((self.kind, self.field, self._datum_key()))

    def is_lazy(self) -> bool:
        return self.kind is ChenKind.INFINITE_PATH and self.lazy is not None

    def label(self) -> str:
        if self.kind is ChenKind.SINK:
            return "N(%s)" % self.sink
        if self.kind is ChenKind.BREAKING_EMITTER:
            return "NB(%s)" % self.emitter
        if self.kind is ChenKind.QUOTIENT_EMITTER:
            return "NH(%s)" % self.emitter
        if self.kind is ChenKind.INFINITE_PATH:
            if self.lazy is not None:
                return "V(stream %s)" % self.lazy.name
            pre = " ".join(self.graph.edge_label(e) for e in self.path.prefix.edges)
            per = " ".join(self.graph.edge_label(e) for e in self.path.period.edges)
            return "V(%s; %s)" % (pre, per)
        per = " ".join(self.graph.edge_label(e) for e in self.cycle.edges)
        return "Vf(%s; %s)" % (per, self.poly.format())

    def __repr__(self):
        return "<ChenModule %s over %r>" % (self.label(), self.field)

    # -------------------------------------------------- canonical data

    def generator_datum(self):
        if self.kind is ChenKind.INFINITE_PATH:
            if self.lazy is not None:
                return LazyDatum((), 0)
            return self.path
        if self.kind is ChenKind.TWISTED:
            g = self.graph
            base_path = g.path(self.cycle.edges)
            return UltimatelyPeriodicPath(
                prefix=g.empty_path(base_path.source), period=base_path
            )
        return self.carrier.empty_path(self.carrier_sink)

    def generator(self) -> "ModuleElement":
        return ModuleElement(
            self, {self.generator_datum(): self.scalar_field.one()}
        )


@dataclass
class ModuleElement:
    module: ChenModule
    terms: dict

    def __post_init__(self):
        self.terms = {d: c for d, c in self.terms.items() if c}

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, ModuleElement):
            return NotImplemented
        return self.module == other.module and self.terms == other.terms

    def __add__(self, other: "ModuleElement") -> "ModuleElement":
        if other.module != self.module:
            raise GraphMismatch("module elements from different modules")
        out = dict(self.terms)
        zero = self.module.scalar_field.zero()
        for d, c in other.terms.items():
            out[d] = out.get(d, zero) + c
        return ModuleElement(self.module, out)

    def __neg__(self):
        return ModuleElement(self.module, {d: -c for d, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, scalar) -> "ModuleElement":
        scalar = self.module.scalar_field.coerce(scalar)
        return ModuleElement(
            self.module, {d: scalar * c for d, c in self.terms.items()}
        )

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda pair: _datum_sort_key(pair[0]))

    def __repr__(self):
        if self.is_zero():
            return "0"
        bits = []
        for d, c in self.sorted_terms():
            bits.append("%s * %s" % (c, format_datum(self.module, d)))
        return "  +  ".join(bits)


def _datum_sort_key(d):
    if isinstance(d, Path):
        return (0, len(d.edges), d.edges, d.source)
    if isinstance(d, UltimatelyPeriodicPath):
        return (1, len(d.prefix.edges), d.prefix.edges, d.period.edges)
    return (2, d.offset, d.alpha)


def format_datum(m: ChenModule, d) -> str:
    g = m.carrier
    if isinstance(d, Path):
        if not d.edges:
            return "[%s]" % d.source
        return "[" + " ".join(g.edge_label(e) for e in d.edges) + "]"
    if isinstance(d, UltimatelyPeriodicPath):
        pre = " ".join(m.graph.edge_label(e) for e in d.prefix.edges)
        per = " ".join(m.graph.edge_label(e) for e in d.period.edges)
        return "[%s; (%s)^inf]" % (pre, per)
    alpha = " ".join(m.graph.edge_label(e) for e in d.alpha)
    return "[%s; stream>%d]" % (alpha, d.offset)


def format_module_element(x) -> str:
    m = x.module
    terms = x.sorted_terms()
    if not terms:
        return "0"
    sf = m.scalar_field
    parts = []
    for d, c in terms:
        fc = sf.format(c)
        if any(ch in fc for ch in "+- "):
            fc = "(%s)" % fc
        word = format_datum(m, d)
        parts.append(word if fc == "1" else "%s %s" % (fc, word))
    return " + ".join(parts)


# ------------------------------------------------------------- constructors


def sink_module(g: Graph, w: str, field: Field = QQ) -> ChenModule:
    g.check_vertex(w)
    if g.vertex_kind(w) is not VertexKind.SINK:
        raise NotASink("%r is not a sink" % (w,))
    return ChenModule(ChenKind.SINK, g, field, sink=w, carrier=g, carrier_sink=w)


def breaking_emitter_module(g: Graph, v: str, field: Field = QQ) -> ChenModule:
    """For an infinite emitter that is a breaking vertex of its own tail
    complement: the sink module at the primed twin in the quotient that
    keeps v broken."""
    g.check_vertex(v)
    if g.vertex_kind(v) is not VertexKind.INFINITE_EMITTER:
        raise WrongEmitterShape("%r is not an infinite emitter" % (v,))
    h = vertex_tail_complement(g, v)
    bh = breaking_vertices(g, h)
    if v not in bh:
        raise WrongEmitterShape(
            "%r is not a breaking vertex of its tail complement" % (v,)
        )
    pair = admissible_pair(g, h, bh - {v})
    carrier, table = quotient_graph(g, pair)
    hom = images_from_table(table, field)
    primed = v + "'"
    return ChenModule(
        ChenKind.BREAKING_EMITTER,
        g,
        field,
        emitter=v,
        carrier=carrier,
        carrier_sink=primed,
        hom=hom,
        pair=pair,
    )


def quotient_emitter_module(g: Graph, v: str, field: Field = QQ) -> ChenModule:
    """For an infinite emitter all of whose targets fall outside its own
    ancestor set: v is a sink in the quotient by the full pair."""
    g.check_vertex(v)
    if g.vertex_kind(v) is not VertexKind.INFINITE_EMITTER:
        raise WrongEmitterShape("%r is not an infinite emitter" % (v,))
    h = vertex_tail_complement(g, v)
    for ec in g.out_classes(v):
        if ec.dst not in h:
            raise WrongEmitterShape(
                "%r keeps an edge out of H; it is not a quotient sink" % (v,)
            )
    pair = admissible_pair(g, h, breaking_vertices(g, h))
    carrier, table = quotient_graph(g, pair)
    hom = images_from_table(table, field)
    return ChenModule(
        ChenKind.QUOTIENT_EMITTER,
        g,
        field,
        emitter=v,
        carrier=carrier,
        carrier_sink=v,
        hom=hom,
        pair=pair,
    )


def infinite_path_module(g: Graph, p, field: Field = QQ) -> ChenModule:
    """Basis = the tail-equivalence class of p; p is either an
    ultimately periodic path or a lazy stream."""
    if isinstance(p, LazyPath):
        return ChenModule(ChenKind.INFINITE_PATH, g, field, lazy=p)
    if not isinstance(p, UltimatelyPeriodicPath):
        raise GraphMismatch("expected an ultimately periodic path or a stream")
    p = ultimately_periodic(g, p.prefix, p.period)
    return ChenModule(ChenKind.INFINITE_PATH, g, field, path=p)


def twisted_module(g: Graph, c: Cycle, f: LaurentPoly, field: Field = QQ,
                   assert_irreducible: bool = False) -> ChenModule:
    """Scalars extend to K[x]/(f); the tail spins through the cycle and
    picks up the class of x each time the marked edge is crossed."""
    if not is_exclusive(g, c):
        raise NotExclusive("the cycle shares a vertex with another cycle")
    f = check_defining_poly(f, assert_irreducible=assert_irreducible)
    if f == one_minus_x(f.field):
        raise DisallowedPolynomial(
            "1 - x gives the plain infinite-path module; construct that instead"
        )
    if f.field != field:
        raise FieldMismatch("polynomial over the wrong base field")
    kprime = QuotientField(field, f, assert_irreducible=assert_irreducible)
    return ChenModule(
        ChenKind.TWISTED, g, field, cycle=c, poly=f, scalar_field=kprime
    )


def make_chen(g: Graph, spec, field: Field = QQ) -> ChenModule:
    """Uniform constructor from a tagged tuple:

    ("sink", w) | ("breaking_emitter", v) | ("quotient_emitter", v)
    | ("infinite_path", path_or_stream) | ("twisted", cycle, poly)
    """
    tag = spec[0]
    if tag == "sink":
        return sink_module(g, spec[1], field)
    if tag == "breaking_emitter":
        return breaking_emitter_module(g, spec[1], field)
    if tag == "quotient_emitter":
        return quotient_emitter_module(g, spec[1], field)
    if tag == "infinite_path":
        return infinite_path_module(g, spec[1], field)
    if tag == "twisted":
        return twisted_module(g, spec[1], spec[2], field)
    raise GraphMismatch("unknown module spec tag %r" % (tag,))


# ------------------------------------------------------------- the action


def _act_monomial_sink(carrier: Graph, m: Monomial, datum: Path) -> Optional[Path]:
    q, p = m.ghost, m.real
    k = len(q.edges)
    if q.source != datum.source or datum.edges[:k] != q.edges:
        return None
    return Path(
        source=p.source, target=datum.target, edges=p.edges + datum.edges[k:]
    )


def _strip_front(g: Graph, d: UltimatelyPeriodicPath, e: Edge):
    """Ghost-edge step; returns (new datum, stripped from the tail?)."""
    pre = d.prefix
    if pre.edges:
        if pre.edges[0] != e:
            return None
        rest = Path(source=g.target(e), target=pre.target, edges=pre.edges[1:])
        return UltimatelyPeriodicPath(prefix=rest, period=d.period), False
    per = d.period
    if per.edges[0] != e:
        return None
    rotated = g.path(per.edges[1:] + per.edges[:1])
    return (
        UltimatelyPeriodicPath(prefix=g.empty_path(rotated.source), period=rotated),
        True,
    )


def _prepend_front(g: Graph, d: UltimatelyPeriodicPath, e: Edge):
    """Real-edge step; returns (new datum, absorbed into the tail?)."""
    if g.target(e) != d.start():
        return None
    pre = d.prefix
    if not pre.edges and e == d.period.edges[-1]:
        rotated = g.path((d.period.edges[-1],) + d.period.edges[:-1])
        return (
            UltimatelyPeriodicPath(
                prefix=g.empty_path(rotated.source), period=rotated
            ),
            True,
        )
    grown = Path(source=g.source(e), target=pre.target, edges=(e,) + pre.edges)
    if not pre.edges:
        grown = Path(source=g.source(e), target=pre.source, edges=(e,))
    return UltimatelyPeriodicPath(prefix=grown, period=d.period), False


def _act_monomial_upp(g: Graph, m: Monomial, datum: UltimatelyPeriodicPath,
                      marked: Optional[Edge], sf: Field):
    """Returns (new datum, scalar factor) or None.  The factor is only
    ever nontrivial for twisted modules (marked edge set)."""
    factor = sf.one()
    d = datum
    for e in m.ghost.edges:
        res = _strip_front(g, d, e)
        if res is None:
            return None
        d, from_tail = res
        if marked is not None and from_tail and e == marked:
            factor = factor * sf.x_bar_inv()
    if not m.ghost.edges and not m.real.edges:
        if d.start() != m.real.source:
            return None
    for e in reversed(m.real.edges):
        res = _prepend_front(g, d, e)
        if res is None:
            return None
        d, absorbed = res
        if marked is not None and absorbed and e == marked:
            factor = factor * sf.x_bar()
    return d, factor


def _canonical_lazy(stream: LazyPath, alpha: tuple, offset: int) -> LazyDatum:
    alpha = list(alpha)
    while alpha and offset > 0 and alpha[-1] == stream.edge_at(offset - 1):
        alpha.pop()
        offset -= 1
    return LazyDatum(tuple(alpha), offset)


def _act_monomial_lazy(g: Graph, stream: LazyPath, m: Monomial, datum: LazyDatum):
    alpha, offset = list(datum.alpha), datum.offset
    start = g.source(alpha[0]) if alpha else g.source(stream.edge_at(offset))
    if m.ghost.source != start:
        return None
    for e in m.ghost.edges:
        if alpha:
            if alpha[0] != e:
                return None
            alpha.pop(0)
        else:
            if stream.edge_at(offset) != e:
                return None
            offset += 1
    cur = g.source(alpha[0]) if alpha else g.source(stream.edge_at(offset))
    if not m.ghost.edges and not m.real.edges and m.real.source != cur:
        return None
    for e in reversed(m.real.edges):
        if g.target(e) != cur:
            return None
        alpha.insert(0, e)
        cur = g.source(e)
    return _canonical_lazy(stream, tuple(alpha), offset)


def act(m: ChenModule, a: LpaElement, x: ModuleElement) -> ModuleElement:
    """Left action, term by term, re-canonicalizing every output datum."""
    if x.module != m:
        raise GraphMismatch("element belongs to a different module")
    if a.graph != m.graph:
        raise GraphMismatch("algebra element over the wrong graph")
    if a.field != m.field:
        raise FieldMismatch("algebra element over the wrong base field")
    if m.hom is not None:
        a = m.hom.apply(a)
    sf = m.scalar_field
    zero = sf.zero()
    marked = m.cycle.edges[0] if m.kind is ChenKind.TWISTED else None
    out: dict = {}
    for mono, coeff in a.terms.items():
        cc = sf.coerce(coeff)
        for datum, s in x.terms.items():
            if m.kind in (ChenKind.SINK, ChenKind.BREAKING_EMITTER,
                          ChenKind.QUOTIENT_EMITTER):
                nd = _act_monomial_sink(m.carrier, mono, datum)
                fac = None
            elif m.is_lazy():
                nd = _act_monomial_lazy(m.graph, m.lazy, mono, datum)
                fac = None
            else:
                res = _act_monomial_upp(m.graph, mono, datum, marked, sf)
                nd, fac = res if res is not None else (None, None)
            if nd is None:
                continue
            contrib = cc * s if fac is None else cc * s * fac
            out[nd] = out.get(nd, zero) + contrib
    return ModuleElement(m, out)


# ------------------------------------------------------------- basis slices


def _reverse_edges_into(g: Graph, v: str, omega_reps: int):
    for ec in g.in_classes(v):
        count = omega_reps if is_omega(ec.multiplicity) else ec.multiplicity
        for i in range(count):
            yield Edge(ec.name, i)


def resolve_stream(m: ChenModule) -> ChenModule:
    """The ultimately periodic twin of a stream module, when the period
    is visible within the stream's inspection depth; other modules pass
    through unchanged."""
    if not m.is_lazy():
        return m
    detected = detect_period(m.lazy)
    if detected is None:
        raise UndecidableLazyTail(
            "no period found within the stream's inspection depth"
        )
    g = m.graph
    pre_edges, per_edges = detected
    pre = g.path(pre_edges) if pre_edges else g.empty_path(g.source(per_edges[0]))
    return infinite_path_module(
        g, ultimately_periodic(g, pre, g.path(per_edges)), m.field
    )


def basis_upto(m: ChenModule, depth: int, omega_reps: int = 2) -> list:
    """All basis data of prefix length at most depth; omega classes
    contribute their first omega_reps representatives per level.  Stream
    modules enumerate through their ultimately periodic twin."""
    if m.is_lazy():
        m = resolve_stream(m)
    out = []
    if m.kind in (ChenKind.SINK, ChenKind.BREAKING_EMITTER, ChenKind.QUOTIENT_EMITTER):
        g = m.carrier
        frontier = [g.empty_path(m.carrier_sink)]
        out.extend(frontier)
        for _ in range(depth):
            nxt = []
            for p in frontier:
                for e in _reverse_edges_into(g, p.source, omega_reps):
                    nxt.append(
                        Path(source=g.source(e), target=p.target, edges=(e,) + p.edges)
                    )
            out.extend(nxt)
            frontier = nxt
        return out
    g = m.graph
    period = m.path.period if m.kind is ChenKind.INFINITE_PATH else g.path(m.cycle.edges)
    n = len(period.edges)
    for i in range(n):
        rotated = g.path(period.edges[i:] + period.edges[:i])
        tail = UltimatelyPeriodicPath(
            prefix=g.empty_path(rotated.source), period=rotated
        )
        out.append(tail)
        blocked = rotated.edges[-1]
        frontier = [tail.prefix]
        for step in range(depth):
            nxt = []
            for p in frontier:
                for e in _reverse_edges_into(g, p.source, omega_reps):
                    if not p.edges and e == blocked:
                        continue
                    q = Path(source=g.source(e), target=rotated.source,
                             edges=(e,) + p.edges)
                    nxt.append(q)
                    out.append(UltimatelyPeriodicPath(prefix=q, period=rotated))
            frontier = nxt
    return out


def cyclic_generation_report(m: ChenModule, depth: int, omega_reps: int = 2):
    """Breadth-first closure of the canonical generator under single
    generator actions; checks it covers the depth-bounded basis."""
    m = resolve_stream(m)
    target = set(basis_upto(m, depth, omega_reps))
    gen = m.generator_datum()
    seen = {gen}
    frontier = [gen]
    gens = []
    src_graph = m.graph
    for v in src_graph.vertices:
        gens.append(vertex_element(src_graph, v, m.field))
    for ec in src_graph.classes:
        count = omega_reps if is_omega(ec.multiplicity) else ec.multiplicity
        for i in range(count):
            from .algebra import edge_element, ghost_element

            gens.append(edge_element(src_graph, Edge(ec.name, i), m.field))
            gens.append(ghost_element(src_graph, Edge(ec.name, i), m.field))
    rounds = 2 * depth + 4
    for _ in range(rounds):
        if target <= seen:
            break
        nxt = []
        for d in frontier:
            x = ModuleElement(m, {d: m.scalar_field.one()})
            for a in gens:
                y = act(m, a, x)
                for nd in y.terms:
                    if nd not in seen:
                        seen.add(nd)
                        nxt.append(nd)
        if not nxt:
            break
        frontier = nxt
    missing = target - seen
    return {"covered": not missing, "missing": sorted(
        (format_datum(m, d) for d in missing))}


# ------------------------------------------------------------- annihilators


@dataclass(frozen=True)
class AnnihilatorDescriptor:
    """Graded: the ideal of an admissible pair.  Non-graded: that ideal
    plus the evaluation of a polynomial at an exitless cycle of the
    quotient."""

    kind: str  # "graded" | "non_graded"
    pair: AdmissiblePair
    cycle: Optional[Cycle] = None
    poly: Optional[LaurentPoly] = None

    def is_zero_ideal(self) -> bool:
        return self.kind == "graded" and not self.pair.h and not self.pair.s


def graded_descriptor(g: Graph, h, s) -> AnnihilatorDescriptor:
    return AnnihilatorDescriptor(kind="graded", pair=admissible_pair(g, h, s))


def non_graded_descriptor(g: Graph, h, c: Cycle, f: LaurentPoly) -> AnnihilatorDescriptor:
    pair = admissible_pair(g, h, breaking_vertices(g, h))
    quotient, _ = quotient_graph(g, pair)
    if cycle_has_exit(quotient, c):
        raise NotExclusive("the cycle has an exit in the quotient graph")
    return AnnihilatorDescriptor(kind="non_graded", pair=pair, cycle=c, poly=f)


def annihilator(m: ChenModule) -> AnnihilatorDescriptor:
    g = m.graph
    if m.kind is ChenKind.SINK:
        h = vertex_tail_complement(g, m.sink)
        return graded_descriptor(g, h, breaking_vertices(g, h))
    if m.kind is ChenKind.BREAKING_EMITTER:
        h = vertex_tail_complement(g, m.emitter)
        return graded_descriptor(g, h, breaking_vertices(g, h) - {m.emitter})
    if m.kind is ChenKind.QUOTIENT_EMITTER:
        h = vertex_tail_complement(g, m.emitter)
        return graded_descriptor(g, h, breaking_vertices(g, h))
    if m.kind is ChenKind.TWISTED:
        tail = UltimatelyPeriodicPath(
            prefix=g.empty_path(cycle_base(g, m.cycle)),
            period=g.path(m.cycle.edges),
        )
        h = tail_complement_of_upp(g, tail)
        return non_graded_descriptor(g, h, m.cycle, m.poly)
    p = resolve_stream(m).path
    h = tail_complement_of_upp(g, p)
    from .graph import upp_ends_in_cycle

    excl = upp_ends_in_cycle(g, p)
    if excl is None:
        return graded_descriptor(g, h, breaking_vertices(g, h))
    return non_graded_descriptor(g, h, excl, one_minus_x(m.field))


def descriptor_generators(g: Graph, d: AnnihilatorDescriptor, field: Field) -> list:
    """Ideal generators as algebra elements: the vertices of H, the
    escape-trimmed corners of S, and f at the cycle when non-graded."""
    gens = [vertex_element(g, v, field) for v in d.pair.h]
    for v in d.pair.s:
        gens.append(vertex_minus_escapes(g, v, d.pair.h_set, field))
    if d.kind == "non_graded":
        based = cycle_based_at(g, d.cycle, cycle_base(g, d.cycle))
        f = d.poly
        if f.field != field:
            raise FieldMismatch("descriptor polynomial over the wrong field")
        gens.append(poly_at_cycle(g, f, based, field))
    return gens


def verify_annihilator(m: ChenModule, d: AnnihilatorDescriptor, depth: int,
                       omega_reps: int = 2) -> bool:
    """One-sided check: every descriptor generator kills every basis
    datum up to the depth bound.  Equality of the ideals is a theorem,
    not a computation, so only this containment is machine-checked."""
    m = resolve_stream(m)
    gens = descriptor_generators(m.graph, d, m.field)
    for datum in basis_upto(m, depth, omega_reps):
        x = ModuleElement(m, {datum: m.scalar_field.one()})
        for a in gens:
            if not act(m, a, x).is_zero():
                return False
    return True


# ------------------------------------------------------------- comparisons


def are_isomorphic(m1: ChenModule, m2: ChenModule) -> bool:
    """Isomorphism is decided on defining data: the five kinds are
    pairwise non-isomorphic, sinks and emitters compare by vertex,
    infinite-path modules by tail equivalence, twisted modules by cycle
    rotation and associate-equality of the polynomial."""
    if m1.graph != m2.graph or m1.field != m2.field:
        raise GraphMismatch("modules over different graphs or fields")
    if m1.kind is not m2.kind:
        return False
    if m1.kind is ChenKind.SINK:
        return m1.sink == m2.sink
    if m1.kind in (ChenKind.BREAKING_EMITTER, ChenKind.QUOTIENT_EMITTER):
        return m1.emitter == m2.emitter
    if m1.kind is ChenKind.TWISTED:
        return (
            m1.cycle == m2.cycle
            and m1.poly.normalize_associate() == m2.poly.normalize_associate()
        )
    p1, p2 = m1.path, m2.path
    if p1 is None or p2 is None:
        if m1.lazy is m2.lazy and m1.lazy is not None:
            return True
        p1, p2 = resolve_stream(m1).path, resolve_stream(m2).path
    return tail_equivalent(p1, p2)


def induce_from_restriction(g: Graph, h, m: ChenModule) -> ChenModule:
    """View a module of the restricted graph as a module of the whole
    graph; heredity makes every defining datum meaningful upstairs and
    the kind is preserved."""
    if not is_hereditary(g, h):
        raise NotHereditary("the vertex set is not hereditary")
    sub = restricted_graph(g, h)
    if m.graph != sub:
        raise DatumEscapesH(
            "module was not built over the restriction of this graph"
        )
    if m.kind is ChenKind.SINK:
        return sink_module(g, m.sink, m.field)
    if m.kind is ChenKind.BREAKING_EMITTER:
        return breaking_emitter_module(g, m.emitter, m.field)
    if m.kind is ChenKind.QUOTIENT_EMITTER:
        return quotient_emitter_module(g, m.emitter, m.field)
    if m.kind is ChenKind.TWISTED:
        lifted = make_cycle(g, m.cycle.edges)
        return twisted_module(g, lifted, m.poly, m.field)
    if m.is_lazy():
        return infinite_path_module(g, m.lazy, m.field)
    lifted_path = ultimately_periodic(
        g, g.path(m.path.prefix.edges, source=m.path.prefix.source),
        g.path(m.path.period.edges),
    )
    return infinite_path_module(g, lifted_path, m.field)
