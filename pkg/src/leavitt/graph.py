"""Finite directed multigraphs with countable edge multiplicities.

A graph is an ordered list of vertices plus a list of edge classes.  Each
class bundles all parallel edges with the same name: it has a source, a
target and a multiplicity, which is either a positive integer or the marker
"omega" for a countably infinite bundle.  A concrete edge is a pair
(class name, index).

Vertices fall into three kinds by their outgoing multiplicity: sinks emit
nothing, regular vertices emit a finite nonzero number of edges, and
infinite emitters have at least one omega class.  Kind distinctions drive
everything downstream: the second Cuntz-Krieger relation only holds at
regular vertices, and the breaking-vertex bookkeeping only concerns
infinite emitters.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, NamedTuple, Optional, Sequence, Union

import networkx as nx

from .errors import (
    DanglingEndpoint,
    DuplicateName,
    HasEntry,
    InfiniteCount,
    IsASink,
    NotACycle,
    NotAdmissible,
    NotAPath,
    NotASource,
    NotClosed,
    NotHereditary,
    NotHereditarySaturated,
    NotPrimitivePeriod,
    TooLarge,
    UnknownEdge,
    UnknownVertex,
    ZeroMultiplicity,
)

OMEGA = "omega"

Multiplicity = Union[int, str]


def is_omega(m: Multiplicity) -> bool:
    return m == OMEGA


class VertexKind(Enum):
    SINK = "sink"
    REGULAR = "regular"
    INFINITE_EMITTER = "infinite_emitter"


class GrowthClass(Enum):
    POLYNOMIAL = "polynomial"
    EXPONENTIAL = "exponential"


class Edge(NamedTuple):
    """A concrete edge: class name plus index within the class."""

    cls: str
    idx: int

    def label(self, multiplicity: Multiplicity = 1) -> str:
        if multiplicity == 1:
            return self.cls
        return "%s[%d]" % (self.cls, self.idx)


@dataclass(frozen=True)
class EdgeClass:
    name: str
    src: str
    dst: str
    multiplicity: Multiplicity = 1


@dataclass(frozen=True)
class Graph:
    """Validated multigraph.  Vertices and classes are kept sorted by name
    so every derived listing is reproducible byte for byte."""

    vertices: tuple
    classes: tuple

    def __post_init__(self):
        by_name = {}
        out: dict = {v: [] for v in self.vertices}
        inc: dict = {v: [] for v in self.vertices}
        for ec in self.classes:
            by_name[ec.name] = ec
            out[ec.src].append(ec)
            inc[ec.dst].append(ec)
        object.__setattr__(self, "_class_by_name", by_name)
        object.__setattr__(self, "_out", {v: tuple(cs) for v, cs in out.items()})
        object.__setattr__(self, "_in", {v: tuple(cs) for v, cs in inc.items()})
        object.__setattr__(self, "_vset", frozenset(self.vertices))

    # -------------------------------------------------------- lookups

    def has_vertex(self, v: str) -> bool:
        return v in self._vset

    def check_vertex(self, v: str) -> str:
        if v not in self._vset:
            raise UnknownVertex("unknown vertex %r" % (v,))
        return v

    def edge_class(self, name: str) -> EdgeClass:
        ec = self._class_by_name.get(name)
        if ec is None:
            raise UnknownEdge("unknown edge class %r" % (name,))
        return ec

    def has_edge_class(self, name: str) -> bool:
        return name in self._class_by_name

    def check_edge(self, e: Edge) -> Edge:
        ec = self.edge_class(e.cls)
        if e.idx < 0 or (not is_omega(ec.multiplicity) and e.idx >= ec.multiplicity):
            raise UnknownEdge("index %d out of range for class %r" % (e.idx, e.cls))
        return e

    def source(self, e: Edge) -> str:
        return self.edge_class(e.cls).src

    def target(self, e: Edge) -> str:
        return self.edge_class(e.cls).dst

    def out_classes(self, v: str) -> tuple:
        self.check_vertex(v)
        return self._out[v]

    def in_classes(self, v: str) -> tuple:
        self.check_vertex(v)
        return self._in[v]

    # -------------------------------------------------------- kinds

    def vertex_kind(self, v: str) -> VertexKind:
        classes = self.out_classes(v)
        if not classes:
            return VertexKind.SINK
        if any(is_omega(ec.multiplicity) for ec in classes):
            return VertexKind.INFINITE_EMITTER
        return VertexKind.REGULAR

    def is_regular(self, v: str) -> bool:
        return self.vertex_kind(v) is VertexKind.REGULAR

    def is_sink(self, v: str) -> bool:
        return self.vertex_kind(v) is VertexKind.SINK

    def is_infinite_emitter(self, v: str) -> bool:
        return self.vertex_kind(v) is VertexKind.INFINITE_EMITTER

    def sinks(self) -> tuple:
        return tuple(v for v in self.vertices if self.is_sink(v))

    def regular_vertices(self) -> tuple:
        return tuple(v for v in self.vertices if self.is_regular(v))

    def infinite_emitters(self) -> tuple:
        return tuple(v for v in self.vertices if self.is_infinite_emitter(v))

    def has_omega_class(self) -> bool:
        return any(is_omega(ec.multiplicity) for ec in self.classes)

    # -------------------------------------------------------- concrete edges

    def out_edges(self, v: str, omega_reps: Optional[int] = None) -> tuple:
        """Concrete outgoing edges in canonical order.

        omega_reps bounds how many representatives an omega class
        contributes; None means the vertex must not emit an omega class.
        """
        edges = []
        for ec in self.out_classes(v):
            if is_omega(ec.multiplicity):
                if omega_reps is None:
                    raise InfiniteCount(
                        "vertex %r emits the omega class %r" % (v, ec.name)
                    )
                count = omega_reps
            else:
                count = ec.multiplicity
            edges.extend(Edge(ec.name, i) for i in range(count))
        return tuple(edges)

    def in_edge_count(self, v: str):
        """Number of concrete edges into v, or OMEGA."""
        total = 0
        for ec in self.in_classes(v):
            if is_omega(ec.multiplicity):
                return OMEGA
            total += ec.multiplicity
        return total

    def edge_label(self, e: Edge) -> str:
        return e.label(self.edge_class(e.cls).multiplicity)

    # -------------------------------------------------------- paths

    def empty_path(self, v: str) -> "Path":
        self.check_vertex(v)
        return Path(source=v, target=v, edges=())

    def path(self, edges: Iterable, source: Optional[str] = None) -> "Path":
        """Build a validated path from concrete edges (or bare class names,
        which mean index 0)."""
        norm = []
        for e in edges:
            if isinstance(e, str):
                e = Edge(e, 0)
            norm.append(self.check_edge(e))
        if not norm:
            if source is None:
                raise NotAPath("an empty path needs an explicit source vertex")
            return self.empty_path(source)
        for a, b in zip(norm, norm[1:]):
            if self.target(a) != self.source(b):
                raise NotAPath(
                    "edges %r and %r do not compose" % (a.cls, b.cls)
                )
        first, last = norm[0], norm[-1]
        if source is not None and source != self.source(first):
            raise NotAPath("declared source %r does not match %r" % (source, first.cls))
        return Path(source=self.source(first), target=self.target(last), edges=tuple(norm))

    def concat(self, p: "Path", q: "Path") -> "Path":
        if p.target != q.source:
            raise NotAPath("paths do not compose: %r then %r" % (p.target, q.source))
        return Path(source=p.source, target=q.target, edges=p.edges + q.edges)

    def path_vertices(self, p: "Path") -> tuple:
        """Vertex trail of p, length len(p)+1."""
        trail = [p.source]
        for e in p.edges:
            trail.append(self.target(e))
        return tuple(trail)

    # -------------------------------------------------------- serialization

    def to_json_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [
                {
                    "name": ec.name,
                    "src": ec.src,
                    "dst": ec.dst,
                    "multiplicity": ec.multiplicity,
                }
                for ec in self.classes
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=False)


@dataclass(frozen=True)
class Path:
    """Finite path of concrete edges.  The empty path at a vertex carries
    that vertex as both endpoints."""

    source: str
    target: str
    edges: tuple

    def __len__(self):
        return len(self.edges)

    def is_empty(self) -> bool:
        return not self.edges

    def first(self) -> Edge:
        return self.edges[0]

    def last(self) -> Edge:
        return self.edges[-1]

    def sort_key(self):
        return (len(self.edges), self.edges, self.source)


def path_prefix(g: Graph, p: Path, n: int) -> Path:
    return g.path(p.edges[:n], source=p.source)


def path_suffix(g: Graph, p: Path, n: int) -> Path:
    """Drop the first n edges."""
    if n == 0:
        return p
    return g.path(p.edges[n:], source=p.target if n >= len(p.edges) else None)


# ------------------------------------------------------------------ cycles


@dataclass(frozen=True)
class Cycle:
    """Simple cycle stored in its canonical rotation: the lexicographically
    least rotation of the edge tuple."""

    edges: tuple

    def __len__(self):
        return len(self.edges)

    def rotation(self, i: int) -> tuple:
        i %= len(self.edges)
        return self.edges[i:] + self.edges[:i]

    def rotations(self):
        return [self.rotation(i) for i in range(len(self.edges))]

    def sort_key(self):
        return (len(self.edges), self.edges)


def make_cycle(g: Graph, edges: Sequence) -> Cycle:
    """Validate a closed simple path and canonicalize its rotation."""
    p = g.path(edges)
    if p.is_empty():
        raise NotACycle("a cycle has at least one edge")
    if p.source != p.target:
        raise NotClosed("path from %r to %r is not closed" % (p.source, p.target))
    trail = g.path_vertices(p)[:-1]
    if len(set(trail)) != len(trail):
        raise NotACycle("closed path revisits a vertex, so it is not a cycle")
    best = min((p.edges[i:] + p.edges[:i] for i in range(len(p.edges))))
    return Cycle(edges=best)


def cycle_vertices(g: Graph, c: Cycle) -> tuple:
    return tuple(g.source(e) for e in c.edges)


def cycle_based_at(g: Graph, c: Cycle, v: str) -> Path:
    for i, e in enumerate(c.edges):
        if g.source(e) == v:
            return g.path(c.rotation(i))
    raise NotACycle("cycle does not pass through %r" % (v,))


def cycle_base(g: Graph, c: Cycle) -> str:
    return g.source(c.edges[0])


@dataclass(frozen=True)
class CycleInfo:
    cycle: Cycle
    has_exit: bool
    omega_parallel: bool


def cycle_has_exit(g: Graph, c: Cycle) -> bool:
    for e in c.edges:
        v = g.source(e)
        for ec in g.out_classes(v):
            if is_omega(ec.multiplicity):
                return True
            if ec.name != e.cls:
                return True
            if ec.multiplicity > 1:
                return True
    return False


def enumerate_cycles(g: Graph) -> list:
    """All simple cycles over concrete edges, canonically sorted.

    Node-level cycles come from Johnson's algorithm; every combination of
    parallel concrete edges along a node cycle is expanded separately.
    Omega classes contribute their 0-indexed representative and mark the
    cycle as having infinitely many parallel companions.
    """
    dg = nx.DiGraph()
    dg.add_nodes_from(g.vertices)
    for ec in g.classes:
        dg.add_edge(ec.src, ec.dst)
    found = []
    for nodes in nx.simple_cycles(dg):
        hops = list(zip(nodes, nodes[1:] + nodes[:1]))
        choices = []
        for u, w in hops:
            opts = []
            for ec in g.out_classes(u):
                if ec.dst != w:
                    continue
                if is_omega(ec.multiplicity):
                    opts.append((Edge(ec.name, 0), True))
                else:
                    opts.extend((Edge(ec.name, i), False) for i in range(ec.multiplicity))
            choices.append(opts)
        for combo in itertools.product(*choices):
            edges = [e for e, _ in combo]
            omega_flag = any(flag for _, flag in combo)
            cyc = make_cycle(g, edges)
            found.append((cyc, omega_flag))
    found.sort(key=lambda pair: pair[0].sort_key())
    return [
        CycleInfo(cycle=c, has_exit=cycle_has_exit(g, c), omega_parallel=flag)
        for c, flag in found
    ]


def is_exclusive(g: Graph, c: Cycle) -> bool:
    """True when c is the only cycle through any of its vertices."""
    mine = set(cycle_vertices(g, c))
    for info in enumerate_cycles(g):
        if info.cycle == c:
            if info.omega_parallel:
                return False
            continue
        if mine & set(cycle_vertices(g, info.cycle)):
            return False
    return True


def one_cycle_per_vertex(g: Graph) -> bool:
    """True when no vertex lies on two distinct cycles.

    Characterization used here: every strongly connected component either
    contains no edge or is exactly one simple cycle as a subgraph, meaning
    every component vertex has internal in- and out-degree one, counting
    multiplicity.
    """
    dg = nx.DiGraph()
    dg.add_nodes_from(g.vertices)
    for ec in g.classes:
        dg.add_edge(ec.src, ec.dst)
    for comp in nx.strongly_connected_components(dg):
        internal = [
            ec for ec in g.classes if ec.src in comp and ec.dst in comp
        ]
        if not internal:
            continue
        out_deg = {v: 0 for v in comp}
        in_deg = {v: 0 for v in comp}
        for ec in internal:
            if is_omega(ec.multiplicity):
                return False
            out_deg[ec.src] += ec.multiplicity
            in_deg[ec.dst] += ec.multiplicity
        if any(out_deg[v] != 1 or in_deg[v] != 1 for v in comp):
            return False
    return True


def has_condition_L(g: Graph) -> bool:
    """Every cycle has an exit."""
    return all(info.has_exit for info in enumerate_cycles(g))


# ------------------------------------------------------------------ reachability


def reaches(g: Graph, u: str, v: str) -> bool:
    """True when a (possibly empty) path runs from u to v."""
    g.check_vertex(u)
    g.check_vertex(v)
    seen = {u}
    frontier = [u]
    while frontier:
        w = frontier.pop()
        if w == v:
            return True
        for ec in g.out_classes(w):
            if ec.dst not in seen:
                seen.add(ec.dst)
                frontier.append(ec.dst)
    return v in seen


def ancestors_of(g: Graph, targets: Iterable) -> frozenset:
    """All vertices with a path into the target set (reflexive)."""
    seen = set()
    frontier = []
    for v in targets:
        g.check_vertex(v)
        if v not in seen:
            seen.add(v)
            frontier.append(v)
    while frontier:
        w = frontier.pop()
        for ec in g.in_classes(w):
            if ec.src not in seen:
                seen.add(ec.src)
                frontier.append(ec.src)
    return frozenset(seen)


def descendants_of(g: Graph, start: str) -> frozenset:
    seen = {start}
    frontier = [start]
    while frontier:
        w = frontier.pop()
        for ec in g.out_classes(w):
            if ec.dst not in seen:
                seen.add(ec.dst)
                frontier.append(ec.dst)
    return frozenset(seen)


def vertex_tail_complement(g: Graph, v: str) -> frozenset:
    """The complement of the ancestor set of v.

    Always hereditary.  For sinks and infinite emitters it is saturated
    automatically; for a regular base vertex saturation can fail, in which
    case this raises instead of silently closing up.
    """
    h = frozenset(g.vertices) - ancestors_of(g, [v])
    if not is_saturated(g, h):
        raise NotHereditarySaturated(
            "tail complement of %r is not saturated" % (v,)
        )
    return h


# ------------------------------------------------------------------ hereditary / saturated


def is_hereditary(g: Graph, h) -> bool:
    hs = set(h)
    return all(ec.dst in hs for ec in g.classes if ec.src in hs)


def is_saturated(g: Graph, h) -> bool:
    hs = set(h)
    for v in g.regular_vertices():
        if v in hs:
            continue
        if all(ec.dst in hs for ec in g.out_classes(v)):
            return False
    return True


def check_hereditary_saturated(g: Graph, h) -> frozenset:
    hs = frozenset(h)
    for v in hs:
        g.check_vertex(v)
    if not is_hereditary(g, hs):
        raise NotHereditary("set is not hereditary: %s" % sorted(hs))
    if not is_saturated(g, hs):
        raise NotHereditarySaturated("set is hereditary but not saturated: %s" % sorted(hs))
    return hs


def saturate(g: Graph, seed) -> frozenset:
    """Smallest hereditary saturated set containing the seed."""
    cur = set(seed)
    for v in cur:
        g.check_vertex(v)
    changed = True
    while changed:
        changed = False
        for ec in g.classes:
            if ec.src in cur and ec.dst not in cur:
                cur.add(ec.dst)
                changed = True
        for v in g.regular_vertices():
            if v not in cur and all(ec.dst in cur for ec in g.out_classes(v)):
                cur.add(v)
                changed = True
    return frozenset(cur)


def enumerate_hereditary_saturated(g: Graph, bound: int = 20) -> list:
    """All hereditary saturated vertex sets, canonically sorted."""
    n = len(g.vertices)
    if n > bound:
        raise TooLarge("graph has %d vertices, enumeration bound is %d" % (n, bound))
    order = {v: i for i, v in enumerate(g.vertices)}
    out = []
    for mask in range(1 << n):
        subset = frozenset(v for i, v in enumerate(g.vertices) if mask >> i & 1)
        if is_hereditary(g, subset) and is_saturated(g, subset):
            out.append(subset)
    out.sort(key=lambda h: (len(h), sorted(order[v] for v in h)))
    return out


def sorted_vertices(g: Graph, vs) -> tuple:
    order = {v: i for i, v in enumerate(g.vertices)}
    return tuple(sorted(vs, key=lambda v: order[v]))


# ------------------------------------------------------------------ breaking vertices


def breaking_vertices(g: Graph, h) -> frozenset:
    """Infinite emitters outside H that send infinitely many edges into H
    but only finitely many (and at least one) outside it."""
    hs = check_hereditary_saturated(g, h)
    out = set()
    for v in g.infinite_emitters():
        if v in hs:
            continue
        escaping = 0
        infinite_escape = False
        for ec in g.out_classes(v):
            if ec.dst in hs:
                continue
            if is_omega(ec.multiplicity):
                infinite_escape = True
                break
            escaping += ec.multiplicity
        if not infinite_escape and 1 <= escaping:
            out.add(v)
    return frozenset(out)


@dataclass(frozen=True)
class AdmissiblePair:
    """A hereditary saturated set together with a set of its breaking
    vertices; the data of a graded ideal."""

    h: tuple
    s: tuple

    @property
    def h_set(self) -> frozenset:
        return frozenset(self.h)

    @property
    def s_set(self) -> frozenset:
        return frozenset(self.s)


def admissible_pair(g: Graph, h, s=()) -> AdmissiblePair:
    hs = check_hereditary_saturated(g, h)
    ss = frozenset(s)
    bv = breaking_vertices(g, hs)
    if not ss <= bv:
        raise NotAdmissible(
            "S must consist of breaking vertices of H; offending: %s"
            % sorted(ss - bv)
        )
    return AdmissiblePair(h=sorted_vertices(g, hs), s=sorted_vertices(g, ss))


# ------------------------------------------------------------------ directedness


def is_downward_directed(g: Graph) -> bool:
    """Any two vertices see a common vertex below them."""
    desc = {v: descendants_of(g, v) for v in g.vertices}
    for u in g.vertices:
        for v in g.vertices:
            if not (desc[u] & desc[v]):
                return False
    return True


# ------------------------------------------------------------------ generator tables

# A summand (prefix, cls) stands for the path `prefix` followed by the
# same-index concrete edge of class `cls`; cls None means the bare prefix.
# An empty summand tuple is the zero image.


@dataclass(frozen=True)
class GeneratorTable:
    """Symbolic images of one graph's generators inside another graph's
    algebra, as produced by graph surgery.  Turned into actual algebra
    elements by the algebra layer."""

    domain: Graph
    codomain: Graph
    vertex_images: dict
    class_images: dict

    def is_identity_on(self, name: str) -> bool:
        vi = self.vertex_images.get(name)
        if vi is not None:
            return vi == (name,)
        ci = self.class_images.get(name)
        return ci == (((), name),)


def _identity_table(g: Graph) -> GeneratorTable:
    return GeneratorTable(
        domain=g,
        codomain=g,
        vertex_images={v: (v,) for v in g.vertices},
        class_images={ec.name: (((), ec.name),) for ec in g.classes},
    )


# ------------------------------------------------------------------ quotient graph


def _primed(name: str) -> str:
    return name + "'"


def quotient_graph(g: Graph, pair: AdmissiblePair):
    """Collapse a graded ideal: drop H, add a primed sink v' for every
    breaking vertex outside S, and a primed copy e' of every edge whose
    range got a primed twin.  Returns the new graph and the generator
    table of the natural surjection."""
    hs = pair.h_set
    bh = breaking_vertices(g, hs)
    primed_vs = sorted_vertices(g, bh - pair.s_set)

    vertices = [v for v in g.vertices if v not in hs]
    for v in primed_vs:
        if _primed(v) in g.vertices:
            raise DuplicateName("primed name %r collides" % _primed(v))
        vertices.append(_primed(v))

    classes = []
    vertex_images = {}
    class_images = {}
    for v in g.vertices:
        if v in hs:
            vertex_images[v] = ()
        elif v in set(primed_vs):
            vertex_images[v] = (v, _primed(v))
        else:
            vertex_images[v] = (v,)
    primed_set = set(primed_vs)
    for ec in g.classes:
        if ec.dst in hs:
            class_images[ec.name] = ()
            continue
        classes.append(ec)
        if ec.dst in primed_set:
            pname = _primed(ec.name)
            if g.has_edge_class(pname):
                raise DuplicateName("primed name %r collides" % pname)
            classes.append(
                EdgeClass(pname, ec.src, _primed(ec.dst), ec.multiplicity)
            )
            class_images[ec.name] = (((), ec.name), ((), pname))
        else:
            class_images[ec.name] = (((), ec.name),)

    quotient = build_graph(vertices, classes)
    table = GeneratorTable(
        domain=g,
        codomain=quotient,
        vertex_images=vertex_images,
        class_images=class_images,
    )
    return quotient, table


def restricted_graph(g: Graph, h) -> Graph:
    """Subgraph on a hereditary set, keeping every edge emitted inside it."""
    hs = frozenset(h)
    for v in hs:
        g.check_vertex(v)
    if not is_hereditary(g, hs):
        raise NotHereditary("restriction needs a hereditary set")
    return build_graph(
        [v for v in g.vertices if v in hs],
        [ec for ec in g.classes if ec.src in hs],
    )


# ------------------------------------------------------------------ surgery


def source_eliminate(g: Graph, v: str):
    """Remove a source that is not a sink.  Returns the smaller graph and
    the generator table of the corner embedding back into g."""
    g.check_vertex(v)
    if g.in_classes(v):
        raise NotASource("%r has incoming edges" % (v,))
    if not g.out_classes(v):
        raise IsASink("%r is an isolated vertex" % (v,))
    smaller = build_graph(
        [w for w in g.vertices if w != v],
        [ec for ec in g.classes if ec.src != v],
    )
    table = GeneratorTable(
        domain=smaller,
        codomain=g,
        vertex_images={w: (w,) for w in smaller.vertices},
        class_images={ec.name: (((), ec.name),) for ec in smaller.classes},
    )
    return smaller, table


def cycle_to_loop(g: Graph, c: Cycle):
    """Collapse an entry-free cycle to a loop at its base vertex.

    The cycle keeps its base vertex name; the loop and the re-routed exit
    classes get primed names.  The generator table sends the loop to the
    full cycle path and an exit from the i-th cycle vertex to the cycle
    prefix reaching that vertex followed by the exit itself.
    """
    for e in c.edges:
        g.check_edge(e)
    verts = cycle_vertices(g, c)
    for v in verts:
        if g.in_edge_count(v) != 1:
            raise HasEntry("cycle vertex %r has an entry" % (v,))
    if len(c) == 1:
        return g, _identity_table(g)

    base = g.source(c.edges[0])
    cset = set(verts)
    vertices = [v for v in g.vertices if v not in cset or v == base]

    classes = []
    class_images = {}
    for ec in g.classes:
        if ec.src in cset:
            continue
        # entry-freeness already rules out edges into the cycle from outside
        classes.append(ec)
        class_images[ec.name] = (((), ec.name),)

    loop_name = _primed(c.edges[0].cls)
    taken = {ec.name for ec in g.classes}
    if loop_name in taken:
        raise DuplicateName("loop name %r collides" % loop_name)
    classes.append(EdgeClass(loop_name, base, base, 1))
    class_images[loop_name] = ((tuple(c.edges), None),)

    cycle_class_names = {e.cls for e in c.edges}
    for i, v in enumerate(verts):
        prefix = c.edges[:i]
        for ec in g.out_classes(v):
            if ec.name in cycle_class_names:
                continue
            pname = _primed(ec.name)
            if pname in taken:
                raise DuplicateName("exit name %r collides" % pname)
            classes.append(EdgeClass(pname, base, ec.dst, ec.multiplicity))
            class_images[pname] = ((tuple(prefix), ec.name),)

    collapsed = build_graph(vertices, classes)
    table = GeneratorTable(
        domain=collapsed,
        codomain=g,
        vertex_images={v: (v,) for v in collapsed.vertices},
        class_images=class_images,
    )
    return collapsed, table


# ------------------------------------------------------------------ growth


def count_paths(g: Graph, length: int) -> list:
    """Exact path counts for lengths 0..length via powers of the adjacency
    matrix, in arbitrary precision."""
    if g.has_omega_class():
        raise InfiniteCount("path counts need finite multiplicities")
    n = len(g.vertices)
    index = {v: i for i, v in enumerate(g.vertices)}
    adj = [[0] * n for _ in range(n)]
    for ec in g.classes:
        adj[index[ec.src]][index[ec.dst]] += ec.multiplicity
    counts = [n]
    power = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(length):
        power = [
            [sum(power[i][k] * adj[k][j] for k in range(n)) for j in range(n)]
            for i in range(n)
        ]
        counts.append(sum(sum(row) for row in power))
    return counts


def growth_class(g: Graph) -> GrowthClass:
    """Path counts grow exponentially exactly when some vertex lies on two
    distinct cycles; otherwise they are polynomially bounded."""
    if g.has_omega_class():
        raise InfiniteCount("growth needs finite multiplicities")
    if one_cycle_per_vertex(g):
        return GrowthClass.POLYNOMIAL
    return GrowthClass.EXPONENTIAL


# ------------------------------------------------------------------ ultimately periodic paths


def _primitive_root(edges: tuple) -> tuple:
    n = len(edges)
    for d in range(1, n + 1):
        if n % d:
            continue
        if edges[:d] * (n // d) == edges:
            return edges[:d]
    return edges


@dataclass(frozen=True)
class UltimatelyPeriodicPath:
    """Infinite path written as prefix . period^infinity, canonicalized:
    the period is primitive and the prefix never ends with the edge that
    precedes the period's start (such an edge would belong to the tail)."""

    prefix: Path
    period: Path

    def __post_init__(self):
        if not self.period.edges:
            raise NotClosed("period must be nonempty")

    def spelled(self, n: int) -> tuple:
        """First n edges of the infinite path."""
        out = list(self.prefix.edges)
        per = self.period.edges
        while len(out) < n:
            out.extend(per)
        return tuple(out[:n])

    def start(self) -> str:
        return self.prefix.source


def ultimately_periodic(g: Graph, prefix: Path, period: Path) -> UltimatelyPeriodicPath:
    """Canonical form: primitive period, maximally absorbed prefix."""
    if period.source != period.target:
        raise NotClosed("period is not a closed path")
    if not prefix.edges:
        prefix = g.empty_path(period.source)
    if prefix.target != period.source:
        raise NotAPath("prefix must end where the period starts")
    per = _primitive_root(period.edges)
    pre = list(prefix.edges)
    while pre and pre[-1] == per[-1]:
        pre.pop()
        per = (per[-1],) + per[:-1]
    period_path = g.path(per)
    if pre:
        prefix_path = g.path(pre)
    else:
        prefix_path = g.empty_path(period_path.source)
    return UltimatelyPeriodicPath(prefix=prefix_path, period=period_path)


def path_vertices_of_upp(g: Graph, p: UltimatelyPeriodicPath) -> frozenset:
    vs = set(g.path_vertices(p.prefix))
    vs.update(g.path_vertices(p.period))
    return frozenset(vs)


def tail_complement_of_upp(g: Graph, p: UltimatelyPeriodicPath) -> frozenset:
    """Vertices that never connect into the path; hereditary and saturated
    for the same reason the single-vertex version is on non-regular bases."""
    h = frozenset(g.vertices) - ancestors_of(g, path_vertices_of_upp(g, p))
    if not is_saturated(g, h):
        raise NotHereditarySaturated("tail complement of the path is not saturated")
    return h


def tail_equivalent(p: UltimatelyPeriodicPath, q: UltimatelyPeriodicPath) -> bool:
    """Two ultimately periodic paths share a tail exactly when their
    primitive periods agree up to rotation."""
    a, b = p.period.edges, q.period.edges
    if len(a) != len(b):
        return False
    return any(b[i:] + b[:i] == a for i in range(len(b)))


def period_of_upp(g: Graph, p: UltimatelyPeriodicPath):
    """The primitive period as a canonical closed path; returns a Cycle
    when the period happens to be simple, else the closed Path."""
    trail = g.path_vertices(p.period)[:-1]
    if len(set(trail)) == len(trail):
        return make_cycle(g, p.period.edges)
    return p.period


def upp_ends_in_cycle(g: Graph, p: UltimatelyPeriodicPath):
    """The exclusive cycle the path falls into, if any."""
    per = period_of_upp(g, p)
    if isinstance(per, Cycle) and is_exclusive(g, per):
        return per
    return None


# ------------------------------------------------------------------ lazy paths


class LazyPath:
    """Infinite path revealed edge by edge through a generator, with a hard
    inspection depth.  Consumers that would need to look past the depth
    raise instead of guessing."""

    def __init__(self, g: Graph, edge_iter, depth: int, name: str = "stream"):
        self.graph = g
        self._iter = iter(edge_iter)
        self.depth = depth
        self.name = name
        self._cache = []

    def edge_at(self, i: int) -> Edge:
        from .errors import LazyDepthExceeded

        if i >= self.depth:
            raise LazyDepthExceeded(
                "stream %r inspected past depth %d" % (self.name, self.depth)
            )
        while len(self._cache) <= i:
            nxt = next(self._iter)
            if isinstance(nxt, str):
                nxt = Edge(nxt, 0)
            self.graph.check_edge(nxt)
            if self._cache:
                prev = self._cache[-1]
                if self.graph.target(prev) != self.graph.source(nxt):
                    raise NotAPath("stream edges do not compose at position %d" % i)
            self._cache.append(nxt)
        return self._cache[i]

    def start(self) -> str:
        return self.graph.source(self.edge_at(0))

    def visible_vertices(self) -> frozenset:
        vs = set()
        for i in range(self.depth):
            e = self.edge_at(i)
            vs.add(self.graph.source(e))
            vs.add(self.graph.target(e))
        return frozenset(vs)


def detect_period(stream: LazyPath):
    """Look for s, l with edges i and i+l agreeing for all i in
    [s, depth-l).  A candidate only counts when the window shows three full
    periods (s + 3l <= depth) and the periodic tail covers at least half
    the window (s <= depth // 2); a repetition seen only near the window's
    end is not evidence.  Returns (prefix_edges, period_edges) or None."""
    d = stream.depth
    window = [stream.edge_at(i) for i in range(d)]
    for ell in range(1, d // 3 + 1):
        for s in range(0, min(d - 3 * ell, d // 2) + 1):
            if all(window[i] == window[i + ell] for i in range(s, d - ell)):
                return tuple(window[:s]), tuple(window[s : s + ell])
    return None


def growing_run_stream(g: Graph, first: str, second: str):
    """The built-in aperiodic witness: a, b, b, a, b, b, b, a, ... with the
    run of the second edge growing by one each block."""
    e1 = g.check_edge(Edge(first, 0))
    e2 = g.check_edge(Edge(second, 0))

    def gen():
        run = 2
        while True:
            yield e1
            for _ in range(run):
                yield e2
            run += 1

    return gen()


# ------------------------------------------------------------------ construction


def build_graph(vertices: Iterable, classes: Iterable) -> Graph:
    """Validate and canonically sort raw vertex and class listings."""
    vs = list(vertices)
    seen = set()
    for v in vs:
        if not isinstance(v, str) or not v:
            raise UnknownVertex("vertex names must be nonempty strings: %r" % (v,))
        if v in seen:
            raise DuplicateName("duplicate vertex %r" % (v,))
        seen.add(v)
    ecs = []
    names = set()
    for ec in classes:
        if not isinstance(ec, EdgeClass):
            ec = EdgeClass(**ec)
        if ec.name in names:
            raise DuplicateName("duplicate edge class %r" % (ec.name,))
        if ec.name in seen:
            raise DuplicateName("edge class %r shadows a vertex" % (ec.name,))
        names.add(ec.name)
        if ec.src not in seen:
            raise DanglingEndpoint("edge %r leaves unknown vertex %r" % (ec.name, ec.src))
        if ec.dst not in seen:
            raise DanglingEndpoint("edge %r enters unknown vertex %r" % (ec.name, ec.dst))
        if is_omega(ec.multiplicity):
            pass
        elif isinstance(ec.multiplicity, int) and not isinstance(ec.multiplicity, bool):
            if ec.multiplicity <= 0:
                raise ZeroMultiplicity(
                    "edge class %r has multiplicity %r" % (ec.name, ec.multiplicity)
                )
        else:
            raise ZeroMultiplicity(
                "multiplicity must be a positive integer or %r" % OMEGA
            )
        ecs.append(ec)
    vs.sort()
    ecs.sort(key=lambda c: c.name)
    return Graph(vertices=tuple(vs), classes=tuple(ecs))


def validate_graph(data) -> Graph:
    """Parse the external JSON shape into a validated Graph."""
    if isinstance(data, str):
        data = json.loads(data)
    if not isinstance(data, dict):
        raise NotAPath("graph JSON must be an object")
    vertices = data.get("vertices")
    edges = data.get("edges", [])
    if not isinstance(vertices, list):
        raise UnknownVertex("graph JSON needs a 'vertices' list")
    classes = []
    for item in edges:
        classes.append(
            EdgeClass(
                name=item["name"],
                src=item["src"],
                dst=item["dst"],
                multiplicity=item.get("multiplicity", 1),
            )
        )
    return build_graph(vertices, classes)


def graph_from_file(path) -> Graph:
    with open(path) as fh:
        return validate_graph(json.load(fh))


def to_dot(g: Graph) -> str:
    """GraphViz rendering; multiplicities annotate the edge labels."""
    lines = ["digraph {"]
    for v in g.vertices:
        lines.append('  "%s";' % v)
    for ec in g.classes:
        if ec.multiplicity == 1:
            label = ec.name
        elif is_omega(ec.multiplicity):
            label = "%s (x omega)" % ec.name
        else:
            label = "%s (x%d)" % (ec.name, ec.multiplicity)
        lines.append('  "%s" -> "%s" [label="%s"];' % (ec.src, ec.dst, label))
    lines.append("}")
    return "\n".join(lines) + "\n"
