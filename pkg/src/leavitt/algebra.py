"""The path algebra with ghost edges and its normal form.

Elements are finite scalar combinations of monomials p q* where p and q
are finite paths into a common vertex; a bare vertex is the monomial with
two empty paths.  Multiplication contracts ghost-against-real prefixes
(first Cuntz-Krieger relation) and then rewrites the junction: whenever
both paths end in the same special edge gamma at a regular vertex u, the
pair gamma gamma* expands to u minus the sum g g* over the other edges at
u (second Cuntz-Krieger relation, oriented as an expansion).  The special
edge of a regular vertex is its canonically least outgoing edge; infinite
emitters have none, so nothing rewrites there and their equal-edge
junctions are honest basis elements.

The surviving monomials form a linear basis, so two elements are equal
exactly when their term maps coincide.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import NamedTuple, Optional

from .errors import (
    FieldMismatch,
    GraphMismatch,
    HomViolation,
    NoWitness,
    NotAPath,
    NotClosed,
)
from .fields import Field, LaurentPoly, QQ
from .graph import (
    Edge,
    GeneratorTable,
    Graph,
    Path,
    VertexKind,
    admissible_pair,
    breaking_vertices,
    quotient_graph,
    restricted_graph,
)


class Monomial(NamedTuple):
    real: Path
    ghost: Path

    def total_length(self) -> int:
        return len(self.real.edges) + len(self.ghost.edges)

    def sort_key(self):
        return (
            self.total_length(),
            len(self.ghost.edges),
            self.real.edges,
            self.ghost.edges,
            self.real.source,
            self.ghost.source,
        )


@lru_cache(maxsize=None)
def special_edges(g: Graph) -> dict:
    """Canonically least outgoing edge of every regular vertex."""
    out = {}
    for v in g.vertices:
        if g.vertex_kind(v) is VertexKind.REGULAR:
            ec = g.out_classes(v)[0]
            out[v] = Edge(ec.name, 0)
    return out


def _drop_last(g: Graph, p: Path) -> Path:
    e = p.edges[-1]
    return Path(source=p.source, target=g.source(e), edges=p.edges[:-1])


def _append(g: Graph, p: Path, e: Edge) -> Path:
    return Path(source=p.source, target=g.target(e), edges=p.edges + (e,))


def _fix_junction(g: Graph, special: dict, p: Path, q: Path, out: dict, sign: int):
    """Emit the basis expansion of p q* into out (monomial -> +-1 tally)."""
    while (
        p.edges
        and q.edges
        and p.edges[-1] == q.edges[-1]
        and special.get(g.source(p.edges[-1])) == p.edges[-1]
    ):
        e = p.edges[-1]
        u = g.source(e)
        p = _drop_last(g, p)
        q = _drop_last(g, q)
        for other in g.out_edges(u):
            if other == e:
                continue
            m = Monomial(_append(g, p, other), _append(g, q, other))
            out[m] = out.get(m, 0) - sign
    m = Monomial(p, q)
    out[m] = out.get(m, 0) + sign


def _mul_monomials(g: Graph, special: dict, m1: Monomial, m2: Monomial) -> dict:
    """Product of two basis monomials as a tally of basis monomials."""
    q1, p2 = m1.ghost, m2.real
    if q1.source != p2.source:
        return {}
    m, k = len(q1.edges), len(p2.edges)
    if m <= k:
        if p2.edges[:m] != q1.edges:
            return {}
        rest = Path(source=q1.target, target=p2.target, edges=p2.edges[m:])
        real = Path(
            source=m1.real.source, target=rest.target, edges=m1.real.edges + rest.edges
        )
        ghost = m2.ghost
    else:
        if q1.edges[:k] != p2.edges:
            return {}
        leftover = Path(source=p2.target, target=q1.target, edges=q1.edges[k:])
        real = m1.real
        ghost = Path(
            source=m2.ghost.source,
            target=leftover.target,
            edges=m2.ghost.edges + leftover.edges,
        )
    out: dict = {}
    _fix_junction(g, special, real, ghost, out, 1)
    return out


class LpaElement:
    """Normal-form element: a scalar map on basis monomials."""

    __slots__ = ("graph", "field", "terms")

    def __init__(self, graph: Graph, field: Field, terms: Optional[dict] = None):
        self.graph = graph
        self.field = field
        self.terms = {}
        if terms:
            for m, c in terms.items():
                if c:
                    self.terms[m] = c

    # -------------------------------------------------- basics

    def is_zero(self) -> bool:
        return not self.terms

    def _compat(self, other: "LpaElement"):
        if other.graph != self.graph:
            raise GraphMismatch("elements over different graphs")
        if other.field != self.field:
            raise FieldMismatch("elements over different scalar fields")

    def __eq__(self, other):
        if not isinstance(other, LpaElement):
            return NotImplemented
        return (
            self.graph == other.graph
            and self.field == other.field
            and self.terms == other.terms
        )

    def __add__(self, other: "LpaElement") -> "LpaElement":
        self._compat(other)
        out = dict(self.terms)
        zero = self.field.zero()
        for m, c in other.terms.items():
            out[m] = out.get(m, zero) + c
        return LpaElement(self.graph, self.field, out)

    def __neg__(self) -> "LpaElement":
        return LpaElement(self.graph, self.field, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "LpaElement") -> "LpaElement":
        return self + (-other)

    def scale(self, scalar) -> "LpaElement":
        scalar = self.field.coerce(scalar)
        if not scalar:
            return LpaElement(self.graph, self.field)
        return LpaElement(
            self.graph, self.field, {m: scalar * c for m, c in self.terms.items()}
        )

    def __mul__(self, other: "LpaElement") -> "LpaElement":
        self._compat(other)
        g = self.graph
        special = special_edges(g)
        zero = self.field.zero()
        acc: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                c = c1 * c2
                if not c:
                    continue
                for m, tally in _mul_monomials(g, special, m1, m2).items():
                    if tally == 0:
                        continue
                    cur = acc.get(m, zero)
                    if tally == 1:
                        acc[m] = cur + c
                    elif tally == -1:
                        acc[m] = cur - c
                    else:
                        acc[m] = cur + self.field.from_int(tally) * c
        return LpaElement(g, self.field, acc)

    def star(self) -> "LpaElement":
        return LpaElement(
            self.graph,
            self.field,
            {Monomial(m.ghost, m.real): c for m, c in self.terms.items()},
        )

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda pair: pair[0].sort_key())

    def monomials(self):
        return [m for m, _ in self.sorted_terms()]

    def __repr__(self):
        from .expressions import format_element

        return format_element(self)

    __rmul__ = None


# ------------------------------------------------------------- constructors


def zero_element(g: Graph, field: Field = QQ) -> LpaElement:
    return LpaElement(g, field)


def vertex_element(g: Graph, v: str, field: Field = QQ) -> LpaElement:
    g.check_vertex(v)
    p = g.empty_path(v)
    return LpaElement(g, field, {Monomial(p, p): field.one()})


def path_element(g: Graph, p: Path, field: Field = QQ) -> LpaElement:
    ghost = g.empty_path(p.target)
    return LpaElement(g, field, {Monomial(p, ghost): field.one()})


def edge_element(g: Graph, e: Edge, field: Field = QQ) -> LpaElement:
    g.check_edge(e)
    return path_element(g, g.path([e]), field)


def ghost_element(g: Graph, e: Edge, field: Field = QQ) -> LpaElement:
    return edge_element(g, e, field).star()


def monomial_element(g: Graph, p: Path, q: Path, field: Field = QQ, coeff=None) -> LpaElement:
    """p q* as an element; rewrites into the basis if the junction needs it."""
    if p.target != q.target:
        raise NotAPath("real and ghost part must end at the same vertex")
    coeff = field.one() if coeff is None else field.coerce(coeff)
    tally: dict = {}
    _fix_junction(g, special_edges(g), p, q, tally, 1)
    terms = {}
    for m, t in tally.items():
        if t == 0:
            continue
        c = coeff if t == 1 else (-coeff if t == -1 else field.from_int(t) * coeff)
        terms[m] = c
    return LpaElement(g, field, terms)


def identity_element(g: Graph, field: Field = QQ) -> LpaElement:
    """Sum of all vertices; the unit when the graph is finite."""
    out = zero_element(g, field)
    for v in g.vertices:
        out = out + vertex_element(g, v, field)
    return out


def normal_form(x: LpaElement) -> LpaElement:
    """Elements are kept normalized by construction; re-emit defensively."""
    out = zero_element(x.graph, x.field)
    for m, c in x.terms.items():
        out = out + monomial_element(x.graph, m.real, m.ghost, x.field, c)
    return out


# ------------------------------------------------------------- cycle substitution


def poly_at_cycle(g: Graph, f: LaurentPoly, c: Path, field: Optional[Field] = None) -> LpaElement:
    """Substitute a closed path for x: positive powers walk the path,
    negative powers its ghost, the constant term lands on the base vertex."""
    if c.source != c.target:
        raise NotClosed("substitution needs a closed path")
    field = field if field is not None else f.field
    if f.field != field:
        raise FieldMismatch("polynomial over the wrong field")
    v = c.source
    out = zero_element(g, field)
    pow_cache = {0: vertex_element(g, v, field)}
    step = path_element(g, c, field)

    def cpow(k: int) -> LpaElement:
        if k not in pow_cache:
            if k > 0:
                pow_cache[k] = cpow(k - 1) * step
            else:
                pow_cache[k] = cpow(k + 1) * step.star()
        return pow_cache[k]

    for k, coeff in f.items():
        out = out + cpow(k).scale(coeff)
    return out


def vertex_minus_escapes(g: Graph, v: str, h, field: Field = QQ) -> LpaElement:
    """v minus the sum e e* over edges from v that avoid H; the corner
    generator a breaking vertex contributes to a graded ideal."""
    hs = frozenset(h)
    out = vertex_element(g, v, field)
    for ec in g.out_classes(v):
        if ec.dst in hs:
            continue
        from .graph import is_omega

        if is_omega(ec.multiplicity):
            raise NoWitness(
                "vertex %r sends an omega class outside H; no finite corner" % (v,)
            )
        for i in range(ec.multiplicity):
            e = edge_element(g, Edge(ec.name, i), field)
            out = out - e * e.star()
    return out


# ------------------------------------------------------------- generator images


@dataclass
class GeneratorImages:
    """Images of one graph's generators inside another graph's algebra.

    Finite classes list every concrete edge.  An omega class maps
    uniformly: its entry names the target classes whose same-index edge
    appears with coefficient one (all surgery and quotient maps in this
    workbench have that shape), and verification samples representative
    indices.
    """

    domain: Graph
    codomain: Graph
    field: Field
    vertex_images: dict
    finite_edge_images: dict
    omega_class_images: dict = dc_field(default_factory=dict)
    omega_rep_bound: int = 3

    def vertex_image(self, v: str) -> LpaElement:
        self.domain.check_vertex(v)
        return self.vertex_images[v]

    def edge_image(self, e: Edge) -> LpaElement:
        self.domain.check_edge(e)
        if e in self.finite_edge_images:
            return self.finite_edge_images[e]
        targets = self.omega_class_images.get(e.cls)
        if targets is None:
            raise GraphMismatch("no image recorded for edge %r" % (e,))
        out = zero_element(self.codomain, self.field)
        for cls in targets:
            out = out + edge_element(self.codomain, Edge(cls, e.idx), self.field)
        return out

    def ghost_image(self, e: Edge) -> LpaElement:
        return self.edge_image(e).star()

    def domain_edges_for_checks(self):
        from .graph import is_omega

        edges = []
        for ec in self.domain.classes:
            if is_omega(ec.multiplicity):
                count = self.omega_rep_bound
            else:
                count = ec.multiplicity
            edges.extend(Edge(ec.name, i) for i in range(count))
        return edges

    def apply_path(self, p: Path) -> LpaElement:
        if not p.edges:
            return self.vertex_image(p.source)
        out = self.edge_image(p.edges[0])
        for e in p.edges[1:]:
            out = out * self.edge_image(e)
        return out

    def apply(self, x: LpaElement) -> LpaElement:
        if x.graph != self.domain:
            raise GraphMismatch("element lives over the wrong graph")
        if x.field != self.field:
            raise FieldMismatch("element over the wrong scalar field")
        out = zero_element(self.codomain, self.field)
        for m, c in x.terms.items():
            img = self.apply_path(m.real) * self.apply_path(m.ghost).star()
            out = out + img.scale(c)
        return out


def images_from_table(table: GeneratorTable, field: Field = QQ) -> GeneratorImages:
    """Materialize a symbolic surgery table into algebra elements."""
    from .graph import is_omega

    cod = table.codomain
    vertex_images = {}
    for v, targets in table.vertex_images.items():
        acc = zero_element(cod, field)
        for t in targets:
            acc = acc + vertex_element(cod, t, field)
        vertex_images[v] = acc
    finite = {}
    omega = {}
    for ec in table.domain.classes:
        summands = table.class_images[ec.name]
        if is_omega(ec.multiplicity):
            names = []
            for prefix, cls in summands:
                if prefix or cls is None:
                    raise GraphMismatch(
                        "omega class %r needs a uniform class image" % ec.name
                    )
                names.append(cls)
            omega[ec.name] = tuple(names)
            continue
        for i in range(ec.multiplicity):
            acc = zero_element(cod, field)
            for prefix, cls in summands:
                edges = list(prefix) + ([Edge(cls, i)] if cls is not None else [])
                acc = acc + path_element(cod, cod.path(edges), field)
            finite[Edge(ec.name, i)] = acc
    return GeneratorImages(
        domain=table.domain,
        codomain=cod,
        field=field,
        vertex_images=vertex_images,
        finite_edge_images=finite,
        omega_class_images=omega,
    )


# ------------------------------------------------------------- verification


@dataclass
class HomReport:
    ok: bool
    checked: int
    violations: list

    def require(self):
        if not self.ok:
            raise HomViolation("; ".join(self.violations[:3]))
        return self


def verify_hom(images: GeneratorImages, max_violations: int = 10) -> HomReport:
    """Check the defining relations on the recorded generator images.

    Covers vertex orthogonality and idempotency, the composition laws for
    edges and ghost edges, ghost-against-edge contraction for same-source
    pairs (distinct-source products already vanish once the vertex checks
    pass), and the range decomposition at every regular vertex.
    """
    dom = images.domain
    checked = 0
    violations = []

    def note(msg):
        violations.append(msg)

    verts = dom.vertices
    for u in verts:
        iu = images.vertex_image(u)
        for v in verts:
            prod = iu * images.vertex_image(v)
            expect = iu if u == v else zero_element(images.codomain, images.field)
            checked += 1
            if prod != expect:
                note("idempotents: %r * %r" % (u, v))
                if len(violations) >= max_violations:
                    return HomReport(False, checked, violations)

    edges = images.domain_edges_for_checks()
    by_source: dict = {}
    for e in edges:
        by_source.setdefault(dom.source(e), []).append(e)

    for e in edges:
        ie = images.edge_image(e)
        ig = images.ghost_image(e)
        src = images.vertex_image(dom.source(e))
        rng = images.vertex_image(dom.target(e))
        for ok_flag, msg in (
            (src * ie == ie, "s(e)e = e at %s"),
            (ie * rng == ie, "e r(e) = e at %s"),
            (rng * ig == ig, "r(e)e* = e* at %s"),
            (ig * src == ig, "e* s(e) = e* at %s"),
        ):
            checked += 1
            if not ok_flag:
                note(msg % (dom.edge_label(e),))
                if len(violations) >= max_violations:
                    return HomReport(False, checked, violations)

    for src_vertex, bucket in sorted(by_source.items()):
        for e in bucket:
            ig = images.ghost_image(e)
            for f in bucket:
                prod = ig * images.edge_image(f)
                if e == f:
                    expect = images.vertex_image(dom.target(e))
                    label = "e*e = r(e) at %s" % dom.edge_label(e)
                else:
                    expect = zero_element(images.codomain, images.field)
                    label = "e*f = 0 at %s,%s" % (dom.edge_label(e), dom.edge_label(f))
                checked += 1
                if prod != expect:
                    note(label)
                    if len(violations) >= max_violations:
                        return HomReport(False, checked, violations)

    for v in dom.regular_vertices():
        acc = zero_element(images.codomain, images.field)
        for e in dom.out_edges(v):
            ie = images.edge_image(e)
            acc = acc + ie * ie.star()
        checked += 1
        if acc != images.vertex_image(v):
            note("range decomposition at %r" % (v,))
            if len(violations) >= max_violations:
                return HomReport(False, checked, violations)

    return HomReport(not violations, checked, violations)


# ------------------------------------------------------------- canonical homs


def quotient_hom(g: Graph, pair, field: Field = QQ) -> GeneratorImages:
    """The surjection that kills a graded ideal, with primed twins keeping
    track of breaking vertices outside S."""
    _, table = quotient_graph(g, pair)
    return images_from_table(table, field)


def in_graded_ideal(x: LpaElement, pair) -> bool:
    """Membership in the graded ideal of an admissible pair: the image
    under the quotient map vanishes."""
    images = quotient_hom(x.graph, pair, x.field)
    return images.apply(x).is_zero()


def corner_embedding(g: Graph, h, field: Field = QQ) -> GeneratorImages:
    """Identity-on-labels embedding of the restricted graph's algebra."""
    sub = restricted_graph(g, h)
    from .graph import is_omega

    vertex_images = {v: vertex_element(g, v, field) for v in sub.vertices}
    finite = {}
    omega = {}
    for ec in sub.classes:
        if is_omega(ec.multiplicity):
            omega[ec.name] = (ec.name,)
        else:
            for i in range(ec.multiplicity):
                e = Edge(ec.name, i)
                finite[e] = edge_element(g, e, field)
    return GeneratorImages(
        domain=sub,
        codomain=g,
        field=field,
        vertex_images=vertex_images,
        finite_edge_images=finite,
        omega_class_images=omega,
    )


# ------------------------------------------------------------- fullness


@dataclass
class FullnessCertificate:
    """Witness that a corner idempotent generates the whole algebra: every
    missing vertex is exhibited as a product passing through the corner."""

    kind: str
    corner_vertices: tuple
    identities: dict

    def missing(self):
        return tuple(sorted(self.identities))


def fullness_certificate_source(g: Graph, v: str, field: Field = QQ) -> FullnessCertificate:
    """For an eliminated source: v equals the sum of e e* over its own
    out-edges, every term routed through surviving range vertices."""
    if g.in_classes(v):
        raise NoWitness("%r is not a source" % (v,))
    if not g.is_regular(v):
        raise NoWitness("fullness witness needs a regular vertex, %r is not" % (v,))
    acc = zero_element(g, field)
    for e in g.out_edges(v):
        if g.target(e) == v:
            raise NoWitness("out-edge of %r loops back into the corner gap" % (v,))
        ee = edge_element(g, e, field)
        acc = acc + ee * ee.star()
    if acc != vertex_element(g, v, field):
        raise NoWitness("range decomposition failed at %r" % (v,))
    corner = tuple(w for w in g.vertices if w != v)
    return FullnessCertificate("source", corner, {v: acc})


def fullness_certificate_cycle(g: Graph, cycle_path: Path, field: Field = QQ) -> FullnessCertificate:
    """For a collapsed cycle based at its first vertex: each later cycle
    vertex is the ghost prefix times the base times the prefix."""
    if cycle_path.source != cycle_path.target:
        raise NotClosed("cycle certificate needs a closed path")
    base = cycle_path.source
    corner = tuple(
        w
        for w in g.vertices
        if w == base or w not in set(g.path_vertices(cycle_path))
    )
    identities = {}
    v1 = vertex_element(g, base, field)
    for i in range(1, len(cycle_path.edges)):
        prefix = g.path(cycle_path.edges[:i])
        vi = g.target(cycle_path.edges[i - 1])
        pe = path_element(g, prefix, field)
        expr = pe.star() * v1 * pe
        if expr != vertex_element(g, vi, field):
            raise NoWitness("telescoping failed at %r" % (vi,))
        identities[vi] = expr
    return FullnessCertificate("cycle", corner, identities)
