"""Scalar arithmetic: rationals, prime fields, and quotient rings K[x]/(f).

Coefficients throughout the workbench are exact.  Rationals are stdlib
Fractions; GF(p) elements reduce mod p and invert by Fermat; a quotient
ring element is a coefficient tuple reduced mod the defining polynomial.

Defining polynomials are normalized Laurent polynomials: multiply by a
unit (a scalar times a power of x) so the lowest exponent is zero and the
constant term is one.  With a nonzero constant term the image of x stays
invertible in the quotient, which is what the twisted module construction
needs.

Irreducibility is decided exactly over prime fields by trial division.
Over the rationals it is decided up to degree three (linear factors are
the only way a quadratic or cubic splits); past that the caller must
assert irreducibility explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DisallowedPolynomial,
    ExprSyntaxError,
    FieldMismatch,
    IrreducibilityUndecided,
    NotInvertible,
    ReduciblePolynomial,
)


class Field:
    def coerce(self, x):
        raise NotImplementedError

    def zero(self):
        return self.coerce(0)

    def one(self):
        return self.coerce(1)

    def from_int(self, n: int):
        return self.coerce(n)

    def format(self, x) -> str:
        return str(x)

    def invert(self, x):
        raise NotImplementedError

    def characteristic(self) -> int:
        raise NotImplementedError


class RationalField(Field):
    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        raise FieldMismatch("cannot coerce %r into the rationals" % (x,))

    def invert(self, x):
        if not x:
            raise NotInvertible("division by zero")
        return 1 / self.coerce(x)

    def characteristic(self):
        return 0

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


QQ = RationalField()


@dataclass(frozen=True)
class GFElement:
    p: int
    value: int

    def _check(self, other):
        if not isinstance(other, GFElement) or other.p != self.p:
            raise FieldMismatch("mixed prime-field arithmetic")
        return other

    def __add__(self, other):
        other = self._check(other)
        return GFElement(self.p, (self.value + other.value) % self.p)

    def __sub__(self, other):
        other = self._check(other)
        return GFElement(self.p, (self.value - other.value) % self.p)

    def __mul__(self, other):
        other = self._check(other)
        return GFElement(self.p, self.value * other.value % self.p)

    def __neg__(self):
        return GFElement(self.p, -self.value % self.p)

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return "%d" % self.value


class PrimeField(Field):
    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise FieldMismatch("%r is not prime" % (p,))
        self.p = p

    def coerce(self, x):
        if isinstance(x, GFElement):
            if x.p != self.p:
                raise FieldMismatch("element of GF(%d) used in GF(%d)" % (x.p, self.p))
            return x
        if isinstance(x, int):
            return GFElement(self.p, x % self.p)
        raise FieldMismatch("cannot coerce %r into GF(%d)" % (x, self.p))

    def invert(self, x):
        x = self.coerce(x)
        if not x:
            raise NotInvertible("division by zero in GF(%d)" % self.p)
        return GFElement(self.p, pow(x.value, self.p - 2, self.p))

    def characteristic(self):
        return self.p

    def all_elements(self):
        return [GFElement(self.p, v) for v in range(self.p)]

    def __repr__(self):
        return "GF(%d)" % self.p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


# ------------------------------------------------------------- dense polynomials
#
# Plain polynomials over a field as coefficient tuples (c0, c1, ...),
# trailing zeros stripped.  Internal machinery for quotient rings.


def _poly_trim(field, cs):
    cs = list(cs)
    while cs and not cs[-1]:
        cs.pop()
    return tuple(cs)


def poly_add(field, a, b):
    n = max(len(a), len(b))
    z = field.zero()
    return _poly_trim(
        field,
        [(a[i] if i < len(a) else z) + (b[i] if i < len(b) else z) for i in range(n)],
    )


def poly_neg(field, a):
    return tuple(-c for c in a)

def poly_sub(field, a, b):
    return poly_add(field, a, poly_neg(field, b))


def poly_mul(field, a, b):
    if not a or not b:
        return ()
    z = field.zero()
    out = [z] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if not ca:
            continue
        for j, cb in enumerate(b):
            out[i + j] = out[i + j] + ca * cb
    return _poly_trim(field, out)


def poly_divmod(field, a, b):
    if not b:
        raise NotInvertible("polynomial division by zero")
    a = list(a)
    lead_inv = field.invert(b[-1])
    quot = [field.zero()] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b) and _poly_trim(field, a):
        a = list(_poly_trim(field, a))
        if len(a) < len(b):
            break
        shift = len(a) - len(b)
        factor = a[-1] * lead_inv
        quot[shift] = quot[shift] + factor
        for i, c in enumerate(b):
            a[i + shift] = a[i + shift] - factor * c
    return _poly_trim(field, quot), _poly_trim(field, a)


def poly_mod(field, a, b):
    return poly_divmod(field, a, b)[1]


def poly_xgcd(field, a, b):
    """Extended gcd; returns (g, s, t) with s*a + t*b = g."""
    r0, r1 = _poly_trim(field, a), _poly_trim(field, b)
    s0, s1 = (field.one(),), ()
    t0, t1 = (), (field.one(),)
    while r1:
        q, r = poly_divmod(field, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, poly_sub(field, s0, poly_mul(field, q, s1))
        t0, t1 = t1, poly_sub(field, t0, poly_mul(field, q, t1))
    return r0, s0, t0


# ------------------------------------------------------------- Laurent polynomials


class LaurentPoly:
    """Immutable Laurent polynomial over a field, exponents may be negative."""

    __slots__ = ("field", "_items")

    def __init__(self, field, coeffs):
        self.field = field
        if isinstance(coeffs, dict):
            items = coeffs.items()
        else:
            items = coeffs
        cleaned = {}
        for k, v in items:
            v = field.coerce(v)
            if v:
                cleaned[int(k)] = v
        self._items = tuple(sorted(cleaned.items()))

    @classmethod
    def from_ints(cls, field, pairs):
        return cls(field, [(k, field.from_int(v)) for k, v in pairs])

    def items(self):
        return self._items

    def coeff(self, k: int):
        for e, c in self._items:
            if e == k:
                return c
        return self.field.zero()

    def is_zero(self) -> bool:
        return not self._items

    def min_exp(self) -> int:
        return self._items[0][0]

    def max_exp(self) -> int:
        return self._items[-1][0]

    def degree(self) -> int:
        """Span after shifting the lowest exponent to zero."""
        if self.is_zero():
            return 0
        return self.max_exp() - self.min_exp()

    def __eq__(self, other):
        return (
            isinstance(other, LaurentPoly)
            and other.field == self.field
            and other._items == self._items
        )

    def __hash__(self):
        return hash((self.field, self._items))

    def __add__(self, other):
        self._check(other)
        out = dict(self._items)
        for k, v in other._items:
            out[k] = out.get(k, self.field.zero()) + v
        return LaurentPoly(self.field, out)

    def __neg__(self):
        return LaurentPoly(self.field, [(k, -v) for k, v in self._items])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        out = {}
        z = self.field.zero()
        for ka, va in self._items:
            for kb, vb in other._items:
                k = ka + kb
                out[k] = out.get(k, z) + va * vb
        return LaurentPoly(self.field, out)

    def _check(self, other):
        if not isinstance(other, LaurentPoly) or other.field != self.field:
            raise FieldMismatch("mixed Laurent arithmetic")

    def normalize_associate(self) -> "LaurentPoly":
        """The unique associate with lowest exponent zero and constant
        term one."""
        if self.is_zero():
            raise DisallowedPolynomial("zero has no normalized associate")
        shift = -self.min_exp()
        lead = self._items[0][1]
        inv = self.field.invert(lead)
        return LaurentPoly(self.field, [(k + shift, v * inv) for k, v in self._items])

    def dense(self):
        """Coefficient tuple; only valid when no exponent is negative."""
        if self._items and self.min_exp() < 0:
            raise DisallowedPolynomial("negative exponents have no dense form")
        n = self.max_exp() + 1 if self._items else 0
        out = [self.field.zero()] * n
        for k, v in self._items:
            out[k] = v
        return tuple(out)

    def format(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for k, v in self._items:
            if k == 0:
                term = self.field.format(v)
            else:
                xs = "x" if k == 1 else "x^%d" % k
                if v == self.field.one():
                    term = xs
                elif v == -self.field.one():
                    term = "-" + xs
                else:
                    term = "%s%s" % (self.field.format(v), xs)
            parts.append(term)
        text = parts[0]
        for term in parts[1:]:
            if term.startswith("-"):
                text += " - " + term[1:]
            else:
                text += " + " + term
        return text

    def __repr__(self):
        return "LaurentPoly(%s)" % self.format()


def one_minus_x(field) -> LaurentPoly:
    """The normalized representative of the cycle-annihilating family."""
    return LaurentPoly(field, [(0, field.one()), (1, -field.one())])


def parse_laurent(text: str, field) -> LaurentPoly:
    """Parse '1 + 2x - x^3' style input (x^-2 allowed)."""
    s = text.replace(" ", "")
    if not s:
        raise ExprSyntaxError("empty polynomial")
    terms = []
    i = 0
    sign = 1
    if s[0] in "+-":
        sign = -1 if s[0] == "-" else 1
        i = 1
    start = i
    chunks = []
    while i <= len(s):
        if i == len(s) or s[i] in "+-":
            # exponent minus signs were consumed with their '^'
            chunks.append((sign, s[start:i]))
            if i < len(s):
                sign = -1 if s[i] == "-" else 1
                start = i + 1
            i += 1
        elif s[i] == "^" and i + 1 < len(s) and s[i + 1] == "-":
            i += 2
        else:
            i += 1
    for sgn, chunk in chunks:
        if not chunk:
            raise ExprSyntaxError("dangling sign in %r" % text)
        if "x" in chunk:
            coeff_s, _, exp_s = chunk.partition("x")
            coeff_s = coeff_s.rstrip("*")
            if exp_s.startswith("^"):
                try:
                    exp = int(exp_s[1:])
                except ValueError:
                    raise ExprSyntaxError("bad exponent in %r" % chunk)
            elif exp_s == "":
                exp = 1
            else:
                raise ExprSyntaxError("bad term %r" % chunk)
        else:
            coeff_s, exp = chunk, 0
        if coeff_s == "":
            coeff = field.one()
        else:
            try:
                if "/" in coeff_s:
                    num, _, den = coeff_s.partition("/")
                    coeff = field.coerce(Fraction(int(num), int(den)))
                else:
                    coeff = field.from_int(int(coeff_s))
            except (ValueError, ZeroDivisionError):
                raise ExprSyntaxError("bad coefficient %r" % coeff_s)
        terms.append((exp, coeff if sgn > 0 else -coeff))
    out = {}
    for exp, coeff in terms:
        out[exp] = out.get(exp, field.zero()) + coeff
    return LaurentPoly(field, out)


# ------------------------------------------------------------- irreducibility


def _rational_root_exists(coeffs) -> bool:
    """Exact rational-root screening for a polynomial over the rationals."""
    denom_lcm = 1
    for c in coeffs:
        denom_lcm = denom_lcm * c.denominator // _gcd(denom_lcm, c.denominator)
    ints = [int(c * denom_lcm) for c in coeffs]
    const, lead = ints[0], ints[-1]
    if const == 0:
        return True
    for p in _divisors(abs(const)):
        for q in _divisors(abs(lead)):
            for num in (p, -p):
                if _gcd(abs(num), q) != 1:
                    continue
                acc = Fraction(0)
                x = Fraction(num, q)
                for c in reversed(ints):
                    acc = acc * x + c
                if acc == 0:
                    return True
    return False


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _divisors(n):
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def _gf_monic_polys(field, degree):
    """All monic polynomials of the given degree over GF(p)."""
    elems = field.all_elements()

    def rec(i, acc):
        if i == degree:
            yield tuple(acc) + (field.one(),)
            return
        for e in elems:
            yield from rec(i + 1, acc + [e])

    yield from rec(0, [])


def is_irreducible(poly: LaurentPoly, assert_irreducible: bool = False) -> bool:
    """Decide irreducibility of the normalized associate.

    Over GF(p) this is exact trial division.  Over the rationals it is
    exact through degree three; for higher degrees a surviving
    rational-root screen raises unless the caller asserted irreducibility.
    """
    f = poly.normalize_associate()
    coeffs = f.dense()
    degree = len(coeffs) - 1
    if degree < 1:
        return False
    field = poly.field
    if isinstance(field, PrimeField):
        for d in range(1, degree // 2 + 1):
            for divisor in _gf_monic_polys(field, d):
                if not poly_mod(field, coeffs, divisor):
                    return False
        return True
    if isinstance(field, RationalField):
        if degree == 1:
            return True
        if _rational_root_exists(coeffs):
            return False
        if degree <= 3:
            return True
        if assert_irreducible:
            return True
        raise IrreducibilityUndecided(
            "degree %d over the rationals: no rational root found, but "
            "factor search is only exact through degree 3; pass "
            "assert_irreducible=True to accept" % degree
        )
    raise FieldMismatch("irreducibility undefined over %r" % (field,))


def check_defining_poly(poly: LaurentPoly, assert_irreducible: bool = False) -> LaurentPoly:
    """Normalize and validate a quotient-ring modulus."""
    f = poly.normalize_associate()
    if f.degree() < 1:
        raise ReduciblePolynomial("a defining polynomial needs degree at least 1")
    if not is_irreducible(f, assert_irreducible=assert_irreducible):
        raise ReduciblePolynomial("%s is reducible" % f.format())
    return f


# ------------------------------------------------------------- quotient rings


@dataclass(frozen=True)
class QuotientElement:
    ring: "QuotientField"
    coeffs: tuple  # length deg(modulus), coefficient i belongs to x^i

    def _check(self, other):
        if not isinstance(other, QuotientElement) or other.ring != self.ring:
            raise FieldMismatch("mixed quotient-ring arithmetic")
        return other

    def __add__(self, other):
        other = self._check(other)
        return QuotientElement(
            self.ring, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __sub__(self, other):
        other = self._check(other)
        return QuotientElement(
            self.ring, tuple(a - b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __neg__(self):
        return QuotientElement(self.ring, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        other = self._check(other)
        base = self.ring.base
        prod = poly_mul(base, self.coeffs, other.coeffs)
        rem = poly_mod(base, prod, self.ring.modulus_coeffs)
        return QuotientElement(self.ring, self.ring._pad(rem))

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        return self.ring.format(self)


class QuotientField(Field):
    """K[x]/(f) for K rational or prime, f irreducible with constant term
    one.  The class of x is written xbar; it is invertible because the
    constant term is not zero."""

    def __init__(self, base: Field, modulus: LaurentPoly, assert_irreducible: bool = False):
        if modulus.field != base:
            raise FieldMismatch("modulus lives over a different field")
        f = check_defining_poly(modulus, assert_irreducible=assert_irreducible)
        self.base = base
        self.modulus = f
        self.modulus_coeffs = f.dense()
        self.degree = len(self.modulus_coeffs) - 1

    def _pad(self, coeffs):
        z = self.base.zero()
        out = list(coeffs) + [z] * (self.degree - len(coeffs))
        return tuple(out[: self.degree])

    def coerce(self, x):
        if isinstance(x, QuotientElement):
            if x.ring != self:
                raise FieldMismatch("element of a different quotient ring")
            return x
        base_val = self.base.coerce(x)
        return QuotientElement(self, self._pad((base_val,)))

    def from_base(self, x):
        return self.coerce(self.base.coerce(x))

    def x_bar(self) -> QuotientElement:
        # reduce first: a degree-one modulus folds x into a constant
        raw = (self.base.zero(), self.base.one())
        return QuotientElement(self, self._pad(poly_mod(self.base, raw, self.modulus_coeffs)))

    def invert(self, x):
        x = self.coerce(x)
        if not x:
            raise NotInvertible("division by zero in %r" % (self,))
        g, s, _ = poly_xgcd(self.base, _poly_trim(self.base, x.coeffs), self.modulus_coeffs)
        if len(g) != 1:
            raise NotInvertible("modulus is not irreducible after all")
        ginv = self.base.invert(g[0])
        s_scaled = tuple(c * ginv for c in s)
        return QuotientElement(self, self._pad(poly_mod(self.base, s_scaled, self.modulus_coeffs)))

    def x_bar_inv(self) -> QuotientElement:
        return self.invert(self.x_bar())

    def from_laurent(self, lp: LaurentPoly) -> QuotientElement:
        """Substitute xbar for x; negative exponents go through the inverse."""
        if lp.field != self.base:
            raise FieldMismatch("Laurent polynomial over the wrong base field")
        acc = self.coerce(0)
        xb = self.x_bar()
        xbi = self.x_bar_inv()
        for k, v in lp.items():
            term = self.from_base(v)
            step = xb if k >= 0 else xbi
            for _ in range(abs(k)):
                term = term * step
            acc = acc + term
        return acc

    def characteristic(self):
        return self.base.characteristic()

    def format(self, x) -> str:
        x = self.coerce(x)
        parts = []
        for i, c in enumerate(x.coeffs):
            if not c:
                continue
            if i == 0:
                parts.append(self.base.format(c))
            else:
                xs = "xbar" if i == 1 else "xbar^%d" % i
                if c == self.base.one():
                    parts.append(xs)
                else:
                    parts.append("%s*%s" % (self.base.format(c), xs))
        if not parts:
            return "0"
        return " + ".join(parts)

    def __repr__(self):
        return "%r[x]/(%s)" % (self.base, self.modulus.format())

    def __eq__(self, other):
        return (
            isinstance(other, QuotientField)
            and other.base == self.base
            and other.modulus_coeffs == self.modulus_coeffs
        )

    def __hash__(self):
        return hash(("quotient", self.base, self.modulus_coeffs))


def parse_field(spec: str) -> Field:
    """'rational' or 'gfP' for a prime P."""
    s = spec.strip().lower()
    if s in ("rational", "q", "qq"):
        return QQ
    if s.startswith("gf"):
        try:
            return PrimeField(int(s[2:]))
        except ValueError:
            pass
    raise FieldMismatch("unknown field spec %r (want 'rational' or 'gf<p>')" % (spec,))
