"""Normal-form engine: defining relations, ring axioms, homomorphisms.

The engine reduces products eagerly, so the tests feed it the defining
relations directly and also sample ring axioms on random elements built
from random walks.
"""

import random
from fractions import Fraction

import pytest

from conftest import random_graphs
from leavitt import (
    Edge,
    EdgeClass,
    FieldMismatch,
    GraphMismatch,
    HomViolation,
    NoWitness,
    NotClosed,
    PrimeField,
    QQ,
    admissible_pair,
    build_graph,
    corner_embedding,
    cycle_to_loop,
    edge_element,
    fullness_certificate_cycle,
    fullness_certificate_source,
    ghost_element,
    identity_element,
    images_from_table,
    in_graded_ideal,
    is_omega,
    make_cycle,
    monomial_element,
    normal_form,
    parse_laurent,
    path_element,
    poly_at_cycle,
    quotient_hom,
    source_eliminate,
    verify_hom,
    vertex_element,
    vertex_minus_escapes,
    zero_element,
)


# ------------------------------------------------------------------ random elements


def concrete_out(g, v, omega_reps=3):
    out = []
    for ec in g.out_classes(v):
        reps = omega_reps if is_omega(ec.multiplicity) else ec.multiplicity
        out.extend(Edge(ec.name, i) for i in range(reps))
    return out


def random_walk(g, rng, max_len=3, start=None):
    v = start if start is not None else rng.choice(g.vertices)
    edges = []
    for _ in range(rng.randint(0, max_len)):
        step = concrete_out(g, v)
        if not step:
            break
        e = rng.choice(step)
        edges.append(e)
        v = g.target(e)
    if edges:
        return g.path(edges)
    return g.empty_path(v)


def random_element(g, rng, field=QQ, terms=3):
    out = zero_element(g, field)
    for _ in range(rng.randint(1, terms)):
        p = random_walk(g, rng)
        for _ in range(12):
            q = random_walk(g, rng)
            if q.target == p.target:
                break
        else:
            q = g.empty_path(p.target)
        coeff = field.from_int(rng.randint(-4, 4))
        out = out + monomial_element(g, p, q, field, coeff)
    return out


def sample_graphs():
    from leavitt import all_fixtures

    gs = list(all_fixtures().values())
    gs += random_graphs(3301, 4, allow_omega=True)
    return gs


# ------------------------------------------------------------------ defining relations


def test_path_relations():
    for g in sample_graphs():
        for v in g.vertices:
            for e in concrete_out(g, v):
                ee = edge_element(g, e)
                src = vertex_element(g, g.source(e))
                dst = vertex_element(g, g.target(e))
                assert src * ee == ee
                assert ee * dst == ee
                ge = ghost_element(g, e)
                assert dst * ge == ge
                assert ge * src == ge


def test_ghost_relations():
    for g in sample_graphs():
        edges = [e for v in g.vertices for e in concrete_out(g, v)]
        for e in edges:
            for f in edges:
                prod = ghost_element(g, e) * edge_element(g, f)
                if e == f:
                    assert prod == vertex_element(g, g.target(e))
                else:
                    assert prod.is_zero(), (e, f)


def test_range_decomposition_at_regular_vertices():
    for g in sample_graphs():
        for v in g.regular_vertices():
            acc = zero_element(g)
            for e in g.out_edges(v):
                ee = edge_element(g, e)
                acc = acc + ee * ee.star()
            assert acc == vertex_element(g, v)


def test_no_range_decomposition_at_infinite_emitters(g_omega):
    # partial sums over finitely many representatives stay short of v2
    acc = zero_element(g_omega)
    for i in range(3):
        ee = edge_element(g_omega, Edge("a2", i))
        acc = acc + ee * ee.star()
    acc = acc + edge_element(g_omega, Edge("c2", 0)) * ghost_element(g_omega, Edge("c2", 0))
    assert acc != vertex_element(g_omega, "v2")


def test_vertices_are_orthogonal_idempotents(g_2cyc):
    for u in g_2cyc.vertices:
        for v in g_2cyc.vertices:
            prod = vertex_element(g_2cyc, u) * vertex_element(g_2cyc, v)
            if u == v:
                assert prod == vertex_element(g_2cyc, u)
            else:
                assert prod.is_zero()


def test_parallel_edges_are_orthogonal():
    g = build_graph(["v"], [EdgeClass("e", "v", "v", 2)])
    e0, e1 = Edge("e", 0), Edge("e", 1)
    assert (ghost_element(g, e0) * edge_element(g, e1)).is_zero()
    assert ghost_element(g, e0) * edge_element(g, e0) == vertex_element(g, "v")
    s = edge_element(g, e0) * ghost_element(g, e0) + edge_element(g, e1) * ghost_element(g, e1)
    assert s == vertex_element(g, "v")


# ------------------------------------------------------------------ ring axioms


def test_ring_axioms_on_random_elements():
    rng = random.Random(3302)
    for g in sample_graphs():
        one = identity_element(g)
        for _ in range(40):
            a = random_element(g, rng)
            b = random_element(g, rng)
            c = random_element(g, rng)
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            assert (a + b) * c == a * c + b * c
            assert (a * b).star() == b.star() * a.star()
            assert a.star().star() == a
            assert one * a == a
            assert a * one == a
            assert (a - a).is_zero()
            assert normal_form(a) == a


def test_scale_and_field_arithmetic():
    rng = random.Random(3303)
    gf5 = PrimeField(5)
    for g in sample_graphs()[:4]:
        for _ in range(20):
            a = random_element(g, rng, field=gf5)
            assert a.scale(5).is_zero()
            assert a.scale(2) + a.scale(3) == a.scale(5)
            assert a + a + a == a.scale(3)
            b = random_element(g, rng)
            assert b.scale(Fraction(1, 2)).scale(2) == b


def test_mixing_graphs_or_fields_raises(g_loop, g_toe):
    with pytest.raises(GraphMismatch):
        vertex_element(g_loop, "v") + vertex_element(g_toe, "v")
    with pytest.raises(FieldMismatch):
        vertex_element(g_loop, "v", QQ) + vertex_element(g_loop, "v", PrimeField(2))


# ------------------------------------------------------------------ the one-sided inverse


def test_one_sided_inverse_in_two_vertex_graph(g_toe):
    x = edge_element(g_toe, Edge("e", 0)) + edge_element(g_toe, Edge("f", 0))
    y = x.star()
    one = identity_element(g_toe)
    assert y * x == one
    assert x * y != one
    assert x * y == vertex_element(g_toe, "v")
    z = x * y
    assert z * z == z


# ------------------------------------------------------------------ cycle substitution


def test_poly_at_cycle_matches_powers(g_loop):
    c = g_loop.path([Edge("c", 0)])
    got = poly_at_cycle(g_loop, parse_laurent("1 + x + x^2", QQ), c)
    cc = path_element(g_loop, c)
    expect = vertex_element(g_loop, "v") + cc + cc * cc
    assert got == expect

    got = poly_at_cycle(g_loop, parse_laurent("3 + x^-2", QQ), c)
    expect = vertex_element(g_loop, "v").scale(3) + (cc * cc).star()
    assert got == expect


def test_poly_at_cycle_longer_cycle(g_2cyc):
    ab = g_2cyc.path([Edge("a", 0), Edge("b", 0)])
    got = poly_at_cycle(g_2cyc, parse_laurent("1 - x", QQ), ab)
    expect = vertex_element(g_2cyc, "u") - path_element(g_2cyc, ab)
    assert got == expect
    with pytest.raises(NotClosed):
        poly_at_cycle(g_2cyc, parse_laurent("1 + x", QQ), g_2cyc.path([Edge("a", 0)]))


def test_vertex_minus_escapes(g_omega, g_2cyc):
    x = vertex_minus_escapes(g_omega, "v2", {"h"})
    c2 = edge_element(g_omega, Edge("c2", 0))
    assert x == vertex_element(g_omega, "v2") - c2 * c2.star()
    with pytest.raises(NoWitness):
        vertex_minus_escapes(g_omega, "v2", set())
    y = vertex_minus_escapes(g_2cyc, "v", {"w"})
    b = edge_element(g_2cyc, Edge("b", 0))
    assert y == vertex_element(g_2cyc, "v") - b * b.star()


# ------------------------------------------------------------------ homomorphisms


def test_quotient_hom_verifies(g_2cyc):
    pair = admissible_pair(g_2cyc, {"w"})
    images = quotient_hom(g_2cyc, pair)
    report = verify_hom(images)
    assert report.ok
    report.require()


def test_quotient_hom_with_breaking_vertex(g_omega):
    pair = admissible_pair(g_omega, {"h"})
    images = quotient_hom(g_omega, pair, PrimeField(2))
    assert verify_hom(images).ok


def test_corner_embedding_verifies(g_2cyc):
    images = corner_embedding(g_2cyc, {"w"})
    assert verify_hom(images).ok
    w = vertex_element(images.domain, "w")
    assert images.apply(w) == vertex_element(g_2cyc, "w")


def test_surgery_tables_verify(g_line, g_2cyc):
    smaller, table = source_eliminate(g_line, "u")
    assert verify_hom(images_from_table(table)).ok

    c = make_cycle(g_2cyc, [Edge("a", 0), Edge("b", 0)])
    collapsed, table = cycle_to_loop(g_2cyc, c)
    images = images_from_table(table)
    report = verify_hom(images)
    assert report.ok


def test_verified_hom_is_multiplicative(g_2cyc):
    # applying images elementwise agrees with mapping products
    rng = random.Random(3304)
    pair = admissible_pair(g_2cyc, {"w"})
    images = quotient_hom(g_2cyc, pair)
    for _ in range(30):
        a = random_element(g_2cyc, rng)
        b = random_element(g_2cyc, rng)
        assert images.apply(a * b) == images.apply(a) * images.apply(b)
        assert images.apply(a + b) == images.apply(a) + images.apply(b)
        assert images.apply(a.star()) == images.apply(a).star()


def test_broken_hom_is_reported(g_2cyc):
    pair = admissible_pair(g_2cyc, {"w"})
    images = quotient_hom(g_2cyc, pair)
    images.vertex_images["u"], images.vertex_images["v"] = (
        images.vertex_images["v"],
        images.vertex_images["u"],
    )
    report = verify_hom(images)
    assert not report.ok
    assert report.violations
    with pytest.raises(HomViolation):
        report.require()


def test_in_graded_ideal(g_2cyc):
    pair = admissible_pair(g_2cyc, {"w"})
    d = path_element(g_2cyc, g_2cyc.path([Edge("d", 0)]))
    a = path_element(g_2cyc, g_2cyc.path([Edge("a", 0)]))
    assert in_graded_ideal(vertex_element(g_2cyc, "w"), pair)
    assert in_graded_ideal(d, pair)
    assert in_graded_ideal(d * d.star(), pair)
    assert not in_graded_ideal(a, pair)
    assert not in_graded_ideal(vertex_element(g_2cyc, "v"), pair)
    assert not in_graded_ideal(a + d, pair)


# ------------------------------------------------------------------ fullness


def test_fullness_certificate_source(g_line, g_loop):
    cert = fullness_certificate_source(g_line, "u")
    assert cert.kind == "source"
    assert cert.corner_vertices == ("v",)
    assert cert.missing() == ("u",)
    e = edge_element(g_line, Edge("e", 0))
    assert cert.identities["u"] == e * e.star()
    with pytest.raises(NoWitness):
        fullness_certificate_source(g_loop, "v")


def test_fullness_certificate_cycle(g_2cyc):
    ab = g_2cyc.path([Edge("a", 0), Edge("b", 0)])
    cert = fullness_certificate_cycle(g_2cyc, ab)
    assert cert.kind == "cycle"
    assert set(cert.corner_vertices) == {"u", "w"}
    assert cert.missing() == ("v",)
    a = path_element(g_2cyc, g_2cyc.path([Edge("a", 0)]))
    assert cert.identities["v"] == a.star() * vertex_element(g_2cyc, "u") * a
    with pytest.raises(NotClosed):
        fullness_certificate_cycle(g_2cyc, g_2cyc.path([Edge("a", 0)]))
