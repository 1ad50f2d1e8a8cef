"""Scalar layer: prime fields, Laurent polynomials, quotient rings.

Polynomial arithmetic is cross-checked by evaluation at rational points,
and irreducibility over GF(p) by a brute-force product table.
"""

import itertools
import random
from fractions import Fraction

import pytest

from leavitt import (
    DisallowedPolynomial,
    ExprSyntaxError,
    FieldMismatch,
    IrreducibilityUndecided,
    LaurentPoly,
    NotInvertible,
    PrimeField,
    QQ,
    QuotientField,
    ReduciblePolynomial,
    check_defining_poly,
    is_irreducible,
    one_minus_x,
    parse_field,
    parse_laurent,
)
from leavitt.fields import poly_divmod, poly_mod, poly_mul, poly_xgcd


# ------------------------------------------------------------------ oracles


def evaluate(poly, x0):
    """Evaluate a rational Laurent polynomial at a nonzero rational."""
    return sum(v * Fraction(x0) ** k for k, v in poly.items())


def random_poly(rng, span=(-3, 4)):
    coeffs = {}
    for _ in range(rng.randint(0, 5)):
        coeffs[rng.randint(*span)] = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
    return LaurentPoly(QQ, {k: QQ.coerce(v) for k, v in coeffs.items()})


def normalized_gf_polys(p, degree):
    """Dense int tuples (1, c1, ..., cd) with cd != 0."""
    out = []
    for mid in itertools.product(range(p), repeat=degree - 1):
        for top in range(1, p):
            out.append((1,) + mid + (top,))
    return out


def int_poly_mul(p, a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return tuple(out)


def brute_reducible_gf(p, degree):
    """Every normalized degree-d polynomial that splits into smaller ones."""
    products = set()
    for a in range(1, degree):
        b = degree - a
        if b < a:
            break
        for f in normalized_gf_polys(p, a):
            for g in normalized_gf_polys(p, b):
                products.add(int_poly_mul(p, f, g))
    return products


def from_dense_ints(field, coeffs):
    return LaurentPoly.from_ints(field, list(enumerate(coeffs)))


# ------------------------------------------------------------------ prime fields


def test_prime_field_arithmetic():
    f7 = PrimeField(7)
    for a in range(1, 7):
        x = f7.coerce(a)
        assert (x * f7.invert(x)).value == 1
        powed = f7.one()
        for _ in range(6):
            powed = powed * x
        assert powed == f7.one()  # Fermat
    assert f7.characteristic() == 7
    assert len(f7.all_elements()) == 7


def test_prime_field_guards():
    with pytest.raises(FieldMismatch):
        PrimeField(4)
    with pytest.raises(FieldMismatch):
        PrimeField(2).coerce(0) + PrimeField(3).coerce(0)
    with pytest.raises(NotInvertible):
        PrimeField(5).invert(0)
    with pytest.raises(FieldMismatch):
        PrimeField(5).coerce(Fraction(1, 2))


def test_rational_field():
    assert QQ.coerce(Fraction(2, 4)) == Fraction(1, 2)
    assert QQ.invert(Fraction(3, 5)) == Fraction(5, 3)
    assert QQ.characteristic() == 0
    with pytest.raises(NotInvertible):
        QQ.invert(0)


def test_parse_field():
    assert parse_field("rational") == QQ
    assert parse_field("QQ") == QQ
    assert parse_field("gf2") == PrimeField(2)
    assert parse_field("GF7") == PrimeField(7)
    with pytest.raises(FieldMismatch):
        parse_field("gf6")
    with pytest.raises(FieldMismatch):
        parse_field("complex")


# ------------------------------------------------------------------ Laurent arithmetic


def test_laurent_ring_axioms_by_evaluation():
    rng = random.Random(2201)
    points = [Fraction(1), Fraction(-2), Fraction(1, 3), Fraction(5, 2)]
    for _ in range(120):
        a, b, c = (random_poly(rng) for _ in range(3))
        for x0 in points:
            assert evaluate(a + b, x0) == evaluate(a, x0) + evaluate(b, x0)
            assert evaluate(a * b, x0) == evaluate(a, x0) * evaluate(b, x0)
            assert evaluate(a - b, x0) == evaluate(a, x0) - evaluate(b, x0)
            assert evaluate((a * b) * c, x0) == evaluate(a * (b * c), x0)
            assert evaluate(-a, x0) == -evaluate(a, x0)


def test_laurent_accessors():
    p = parse_laurent("x^-2 + 3x + x^4", QQ)
    assert p.min_exp() == -2
    assert p.max_exp() == 4
    assert p.coeff(1) == 3
    assert p.coeff(99) == 0
    assert not p.is_zero()
    assert LaurentPoly(QQ, {}).is_zero()


def test_normalize_associate():
    p = parse_laurent("2x^2 + 2x^3", QQ)
    n = p.normalize_associate()
    assert n == parse_laurent("1 + x", QQ)
    assert n.min_exp() == 0
    assert n.coeff(0) == 1
    with pytest.raises(DisallowedPolynomial):
        LaurentPoly(QQ, {}).normalize_associate()


def test_dense_rejects_negative_exponents():
    with pytest.raises(DisallowedPolynomial):
        parse_laurent("x^-1", QQ).dense()
    assert parse_laurent("1 + x^2", QQ).dense() == (1, 0, 1)


def test_parse_format_round_trip():
    rng = random.Random(2202)
    for _ in range(200):
        p = random_poly(rng)
        assert parse_laurent(p.format(), QQ) == p
    gf = PrimeField(5)
    q = LaurentPoly.from_ints(gf, [(0, 1), (2, 3), (5, 4)])
    assert parse_laurent(q.format(), gf) == q


def test_parse_laurent_forms():
    assert parse_laurent("1 - x", QQ) == one_minus_x(QQ)
    assert parse_laurent("-x + 1", QQ) == one_minus_x(QQ)
    assert parse_laurent("3/2x^2", QQ).coeff(2) == Fraction(3, 2)
    assert parse_laurent("x + x", QQ) == parse_laurent("2x", QQ)
    assert parse_laurent("x - x", QQ).is_zero()
    for bad in ("", "+", "1 + + x", "x^", "x^y", "huh"):
        with pytest.raises(ExprSyntaxError):
            parse_laurent(bad, QQ)


def test_dense_division_properties():
    gf = PrimeField(5)
    rng = random.Random(2203)
    for _ in range(150):
        a = tuple(rng.randrange(5) for _ in range(rng.randint(0, 6)))
        b = tuple(rng.randrange(5) for _ in range(rng.randint(1, 4)))
        a = tuple(gf.coerce(c) for c in a)
        b = tuple(gf.coerce(c) for c in b)
        while b and not b[-1]:
            b = b[:-1]
        if not b:
            continue
        q, r = poly_divmod(gf, a, b)
        assert len(r) < len(b) or not r
        recon = tuple(
            x + y
            for x, y in itertools.zip_longest(
                poly_mul(gf, q, b), r, fillvalue=gf.zero()
            )
        )
        trimmed = list(recon)
        while trimmed and not trimmed[-1]:
            trimmed.pop()
        expect = list(a)
        while expect and not expect[-1]:
            expect.pop()
        assert trimmed == expect
        assert poly_mod(gf, a, b) == r


def test_xgcd_bezout():
    gf = PrimeField(7)
    rng = random.Random(2204)
    for _ in range(100):
        a = tuple(gf.coerce(rng.randrange(7)) for _ in range(rng.randint(1, 5)))
        b = tuple(gf.coerce(rng.randrange(7)) for _ in range(rng.randint(1, 5)))
        g, s, t = poly_xgcd(gf, a, b)
        if g:
            assert not poly_mod(gf, a, g)
            assert not poly_mod(gf, b, g)
        combo = tuple(
            x + y
            for x, y in itertools.zip_longest(
                poly_mul(gf, s, a), poly_mul(gf, t, b), fillvalue=gf.zero()
            )
        )
        trimmed = list(combo)
        while trimmed and not trimmed[-1]:
            trimmed.pop()
        assert tuple(trimmed) == tuple(g)


# ------------------------------------------------------------------ irreducibility


def test_irreducible_gf_against_product_table():
    for p, degree in ((2, 2), (2, 3), (2, 4), (3, 2), (3, 3)):
        field = PrimeField(p)
        reducible = brute_reducible_gf(p, degree)
        for coeffs in normalized_gf_polys(p, degree):
            poly = from_dense_ints(field, coeffs)
            assert is_irreducible(poly) == (coeffs not in reducible), coeffs


def test_irreducible_known_cases():
    gf2 = PrimeField(2)
    assert is_irreducible(parse_laurent("1 + x + x^2", gf2))
    assert is_irreducible(parse_laurent("1 + x + x^4", gf2))
    assert not is_irreducible(parse_laurent("1 + x^2", gf2))  # (1+x)^2
    assert is_irreducible(parse_laurent("1 + x", QQ))
    assert is_irreducible(parse_laurent("1 + x + x^2", QQ))
    assert not is_irreducible(parse_laurent("1 + 2x + x^2", QQ))
    assert not is_irreducible(parse_laurent("2 + 3x + x^2", QQ))  # root -1
    assert not is_irreducible(parse_laurent("1 + x^3", QQ))  # root -1
    assert is_irreducible(parse_laurent("1 + x + x^3", QQ))


def test_irreducible_degree_zero_and_units():
    assert not is_irreducible(parse_laurent("5", QQ))
    # units shift away: x^2 + x^3 normalizes to 1 + x
    assert is_irreducible(parse_laurent("x^2 + x^3", QQ))


def test_irreducible_rational_degree_four_undecided():
    quartic = parse_laurent("1 + x^4", QQ)
    with pytest.raises(IrreducibilityUndecided):
        is_irreducible(quartic)
    assert is_irreducible(quartic, assert_irreducible=True)


def test_check_defining_poly():
    assert check_defining_poly(parse_laurent("2x + 2x^2", QQ)) == parse_laurent(
        "1 + x", QQ
    )
    with pytest.raises(ReduciblePolynomial):
        check_defining_poly(parse_laurent("1 + 2x + x^2", QQ))
    with pytest.raises(ReduciblePolynomial):
        check_defining_poly(parse_laurent("7", QQ))
    with pytest.raises(DisallowedPolynomial):
        check_defining_poly(LaurentPoly(QQ, {}))


# ------------------------------------------------------------------ quotient rings


def test_quotient_ring_cube_root_of_unity():
    ring = QuotientField(QQ, parse_laurent("1 + x + x^2", QQ))
    xb = ring.x_bar()
    assert xb * xb * xb == ring.coerce(1)
    assert xb + xb * xb == ring.coerce(-1)
    assert ring.x_bar_inv() == xb * xb
    assert ring.from_laurent(parse_laurent("x^-1", QQ)) == xb * xb


def test_quotient_ring_gf4():
    gf2 = PrimeField(2)
    ring = QuotientField(gf2, parse_laurent("1 + x + x^2", gf2))
    xb = ring.x_bar()
    assert xb * xb == xb + ring.coerce(1)
    elements = [
        ring.coerce(0),
        ring.coerce(1),
        xb,
        xb + ring.coerce(1),
    ]
    for a in elements:
        for b in elements:
            assert (a + b) in elements
            assert (a * b) in elements
    for a in elements[1:]:
        assert a * ring.invert(a) == ring.coerce(1)
    with pytest.raises(NotInvertible):
        ring.invert(ring.coerce(0))


def test_quotient_ring_degree_one_folds_xbar():
    # a degree-one modulus reduces xbar to a constant instead of truncating it
    ring = QuotientField(QQ, parse_laurent("1 + x", QQ))
    assert ring.x_bar() == ring.coerce(-1)
    assert ring.x_bar_inv() == ring.coerce(-1)
    ring2 = QuotientField(QQ, parse_laurent("1 + 2x", QQ))
    assert ring2.x_bar() == ring2.coerce(Fraction(-1, 2))


def test_quotient_ring_rejects_reducible_modulus():
    with pytest.raises(ReduciblePolynomial):
        QuotientField(QQ, parse_laurent("1 + 2x + x^2", QQ))
    with pytest.raises(FieldMismatch):
        QuotientField(QQ, parse_laurent("1 + x", PrimeField(2)))


def test_quotient_ring_asserted_quartic():
    ring = QuotientField(QQ, parse_laurent("1 + x^4", QQ), assert_irreducible=True)
    xb = ring.x_bar()
    assert xb * xb * xb * xb == ring.coerce(-1)


def test_quotient_ring_format():
    ring = QuotientField(QQ, parse_laurent("1 + x + x^2", QQ))
    assert ring.format(ring.x_bar()) == "xbar"
    assert ring.format(ring.coerce(0)) == "0"
    assert "xbar" in ring.format(ring.x_bar() + ring.coerce(2))


def test_quotient_mismatch():
    r1 = QuotientField(QQ, parse_laurent("1 + x + x^2", QQ))
    r2 = QuotientField(QQ, parse_laurent("1 + x", QQ))
    with pytest.raises(FieldMismatch):
        r1.coerce(r2.x_bar())
