"""Exact polynomial arithmetic over Q and over finite fields.

Provides

* ``QQ`` and :class:`GF` coefficient rings with a uniform ``coerce`` /
  ``zero`` / ``one`` protocol.  Extension fields GF(p^e) are represented as
  residues modulo a fixed irreducible modulus: the lexicographically
  smallest monic irreducible of degree e, coefficients compared
  low-degree-first as integers in [0, p).  That makes every certificate
  reproducible bit for bit.
* :class:`UniPoly`, dense univariate polynomials (lowest degree first).
* :class:`SparsePoly`, sparse polynomials in a fixed number of variables,
  used with two variables for the (a, c) parameter plane and with three
  for the (a, c, gamma) counterexample checks.
* Resultants as Sylvester-matrix determinants computed by fraction-free
  (Bareiss) elimination, so bivariate resultants never leave the
  polynomial ring.
* p-adic Newton polygons with a root-valuation readout: a hull segment of
  slope -s and horizontal length L certifies exactly L roots of valuation
  s; vanishing at 0 is reported as roots of valuation INFINITY.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd, lcm

from .arith import ExtVal, INFINITY, factor, is_prime, val_p
from .errors import DomainError

__all__ = [
    "GF",
    "FieldElem",
    "NewtonPolygon",
    "QQ",
    "Segment",
    "SparsePoly",
    "UniPoly",
    "bivariate_resultant",
    "newton_polygon",
    "resultant",
    "roots_in_field",
]


# ---------------------------------------------------------------------------
# coefficient rings
# ---------------------------------------------------------------------------


class RationalField:
    """The rationals as a coefficient ring (singleton ``QQ``)."""

    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, x) -> Fraction:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        raise DomainError(f"cannot coerce {x!r} into QQ")

    def __repr__(self):
        return "QQ"


QQ = RationalField()


# -- GF(p)[x] helpers on plain int lists (lowest degree first, trimmed) -----


def _gfp_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _gfp_sub(a, b, p):
    n = max(len(a), len(b))
    out = [0] * n
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return _gfp_trim(out)


def _gfp_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] = (out[i + j] + ca * cb) % p
    return _gfp_trim(out)


def _gfp_divmod(a, b, p):
    if not b:
        raise DomainError("polynomial division by zero")
    a = list(a)
    inv_lead = pow(b[-1], p - 2, p)
    q = [0] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        q[shift] = c
        for i, cb in enumerate(b):
            a[shift + i] = (a[shift + i] - c * cb) % p
        _gfp_trim(a)
        if not a:
            break
    return _gfp_trim(q), a


def _gfp_gcd(a, b, p):
    while b:
        _, a = _gfp_divmod(a, b, p)
        a, b = b, a
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [(c * inv) % p for c in a]
    return a


def _gfp_powmod(base, exponent: int, modulus, p):
    result = [1]
    base = _gfp_divmod(base, modulus, p)[1]
    while exponent:
        if exponent & 1:
            result = _gfp_divmod(_gfp_mul(result, base, p), modulus, p)[1]
        exponent >>= 1
        if exponent:
            base = _gfp_divmod(_gfp_mul(base, base, p), modulus, p)[1]
    return result


def _gfp_is_irreducible(f: list[int], p: int) -> bool:
    # Rabin's test: x^(p^e) == x mod f, and gcd(x^(p^(e/q)) - x, f) = 1
    # for every prime q dividing e.
    e = len(f) - 1
    if e == 1:
        return True
    x = [0, 1]
    t = x
    for _ in range(e):
        t = _gfp_powmod(t, p, f, p)
    if _gfp_sub(t, x, p):
        return False
    for q in {q for q, _ in factor(e)}:
        t = x
        for _ in range(e // q):
            t = _gfp_powmod(t, p, f, p)
        g = _gfp_gcd(_gfp_sub(t, x, p), f, p)
        if len(g) - 1 != 0:
            return False
    return True


def _gfp_inverse(a, modulus, p):
    # extended Euclid in GF(p)[x]; modulus irreducible, a nonzero mod modulus
    r0, r1 = list(modulus), list(a)
    s0, s1 = [], [1]
    while r1:
        q, r = _gfp_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _gfp_sub(s0, _gfp_mul(q, s1, p), p)
    if len(r0) != 1:
        raise DomainError("element is not invertible")
    inv_c = pow(r0[0], p - 2, p)
    return [(c * inv_c) % p for c in s0]


def _smallest_irreducible(p: int, e: int) -> tuple[int, ...]:
    for lower in product(range(p), repeat=e):
        cand = list(lower) + [1]
        if cand[0] == 0 and e > 1:
            # divisible by x; cheap skip
            continue
        if _gfp_is_irreducible(cand, p):
            return tuple(cand)
    raise ArithmeticError("no irreducible polynomial found")  # unreachable


class GF:
    """The finite field GF(p^e) with a deterministic modulus.

    Elements are coefficient tuples of length e (lowest degree first)
    reduced modulo the modulus.  ``GF(p)`` is the e = 1 case.
    """

    def __init__(self, p: int, e: int = 1):
        if not is_prime(p):
            raise DomainError(f"{p} is not prime")
        if e < 1:
            raise DomainError("extension degree must be >= 1")
        self.p = p
        self.e = e
        self.order = p**e
        self.modulus: tuple[int, ...] | None = (
            None if e == 1 else _smallest_irreducible(p, e)
        )
        self.zero = FieldElem(self, (0,) * e)
        self.one = FieldElem(self, (1,) + (0,) * (e - 1))

    def elem(self, coeffs) -> "FieldElem":
        if isinstance(coeffs, int):
            coeffs = (coeffs,)
        coeffs = tuple(int(c) % self.p for c in coeffs)
        if len(coeffs) > self.e:
            raise DomainError("too many coefficients for this field")
        return FieldElem(self, coeffs + (0,) * (self.e - len(coeffs)))

    def coerce(self, x) -> "FieldElem":
        if isinstance(x, FieldElem):
            if x.field == self:
                return x
            if x.field.p == self.p and x.field.e == 1:
                return self.elem(x.coeffs[0])
            raise DomainError(f"cannot coerce element of {x.field} into {self}")
        if isinstance(x, int):
            return self.elem(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise DomainError(
                    f"denominator of {x} not invertible modulo {self.p}"
                )
            num = self.elem(x.numerator % self.p)
            den = self.elem(x.denominator % self.p)
            return num / den
        raise DomainError(f"cannot coerce {x!r} into {self}")

    def elements(self):
        """All field elements, in a fixed order (base-p digits, low first)."""
        for digits in product(range(self.p), repeat=self.e):
            yield FieldElem(self, digits)

    def __eq__(self, other):
        return isinstance(other, GF) and (self.p, self.e) == (other.p, other.e)

    def __hash__(self):
        return hash(("GF", self.p, self.e))

    def __repr__(self):
        return f"GF({self.p})" if self.e == 1 else f"GF({self.p}^{self.e})"


class FieldElem:
    """An element of GF(p^e), stored as a reduced coefficient tuple."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: GF, coeffs: tuple[int, ...]):
        self.field = field
        self.coeffs = coeffs

    def __bool__(self):
        return any(self.coeffs)

    def _binop(self, other):
        try:
            return self.field.coerce(other)
        except DomainError:
            return None

    def __add__(self, other):
        o = self._binop(other)
        if o is None:
            return NotImplemented
        p = self.field.p
        return FieldElem(
            self.field, tuple((a + b) % p for a, b in zip(self.coeffs, o.coeffs))
        )

    __radd__ = __add__

    def __sub__(self, other):
        o = self._binop(other)
        if o is None:
            return NotImplemented
        p = self.field.p
        return FieldElem(
            self.field, tuple((a - b) % p for a, b in zip(self.coeffs, o.coeffs))
        )

    def __rsub__(self, other):
        o = self._binop(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        p = self.field.p
        return FieldElem(self.field, tuple((-a) % p for a in self.coeffs))

    def __mul__(self, other):
        o = self._binop(other)
        if o is None:
            return NotImplemented
        fld = self.field
        if fld.e == 1:
            return FieldElem(fld, ((self.coeffs[0] * o.coeffs[0]) % fld.p,))
        prod = _gfp_mul(list(self.coeffs), list(o.coeffs), fld.p)
        _, rem = _gfp_divmod(prod, list(fld.modulus), fld.p)
        rem = rem + [0] * (fld.e - len(rem))
        return FieldElem(fld, tuple(rem))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElem":
        if not self:
            raise DomainError("cannot invert zero")
        fld = self.field
        if fld.e == 1:
            return FieldElem(fld, (pow(self.coeffs[0], fld.p - 2, fld.p),))
        inv = _gfp_inverse(_gfp_trim(list(self.coeffs)), list(fld.modulus), fld.p)
        inv = inv + [0] * (fld.e - len(inv))
        return FieldElem(fld, tuple(inv))

    def __truediv__(self, other):
        o = self._binop(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._binop(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        o = self._binop(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        if self.field.e == 1:
            return f"{self.coeffs[0]}"
        return f"{list(self.coeffs)}"


# ---------------------------------------------------------------------------
# univariate polynomials
# ---------------------------------------------------------------------------


class UniPoly:
    """Dense univariate polynomial; coefficients lowest degree first."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs=(), *, _trusted=False):
        self.ring = ring
        if _trusted:
            self.coeffs = tuple(coeffs)
            return
        cs = [ring.coerce(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls, ring):
        return cls(ring, (), _trusted=True)

    @classmethod
    def constant(cls, ring, value):
        return cls(ring, (value,))

    @classmethod
    def variable(cls, ring):
        return cls(ring, (ring.zero, ring.one), _trusted=True)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def lead(self):
        if self.is_zero:
            raise DomainError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def _coerce_other(self, other):
        if isinstance(other, UniPoly):
            if other.ring != self.ring and other.ring is not self.ring:
                raise DomainError("mixed coefficient domains")
            return other
        return UniPoly(self.ring, (other,))

    def __add__(self, other):
        other = self._coerce_other(other)
        n = max(len(self.coeffs), len(other.coeffs))
        z = self.ring.zero
        out = [z] * n
        for i, c in enumerate(self.coeffs):
            out[i] = c
        for i, c in enumerate(other.coeffs):
            out[i] = out[i] + c
        while out and not out[-1]:
            out.pop()
        return UniPoly(self.ring, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(self.ring, tuple(-c for c in self.coeffs), _trusted=True)

    def __sub__(self, other):
        return self + (-self._coerce_other(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            c = self.ring.coerce(other)
            if not c:
                return UniPoly.zero(self.ring)
            return UniPoly(self.ring, tuple(c * x for x in self.coeffs), _trusted=True)
        other = self._coerce_other(other)
        if self.is_zero or other.is_zero:
            return UniPoly.zero(self.ring)
        z = self.ring.zero
        out = [z] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = out[i + j] + a * b
        while out and not out[-1]:
            out.pop()
        return UniPoly(self.ring, out, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise DomainError("negative polynomial power")
        result = UniPoly(self.ring, (self.ring.one,), _trusted=True)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.ring == other.ring and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ring, self.coeffs))

    def compose(self, inner: "UniPoly") -> "UniPoly":
        """self(inner(x)), by Horner evaluation in the polynomial ring."""
        inner = self._coerce_other(inner)
        result = UniPoly.zero(self.ring)
        for c in reversed(self.coeffs):
            result = result * inner + UniPoly(self.ring, (c,))
        return result

    def derivative(self) -> "UniPoly":
        if self.degree < 1:
            return UniPoly.zero(self.ring)
        out = []
        for i, c in enumerate(self.coeffs[1:], start=1):
            out.append(c * self.ring.coerce(i))
        while out and not out[-1]:
            out.pop()
        return UniPoly(self.ring, out, _trusted=True)

    def evaluate(self, x):
        x = self.ring.coerce(x)
        acc = self.ring.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def divmod(self, other: "UniPoly"):
        other = self._coerce_other(other)
        if other.is_zero:
            raise DomainError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UniPoly.zero(self.ring), self
        quo = [self.ring.zero] * (dq + 1)
        ob = other.coeffs
        while len(rem) >= len(ob):
            c = rem[-1] / ob[-1]
            shift = len(rem) - len(ob)
            quo[shift] = c
            for i, b in enumerate(ob):
                rem[shift + i] = rem[shift + i] - c * b
            while rem and not rem[-1]:
                rem.pop()
            if not rem:
                break
        return (
            UniPoly(self.ring, quo),
            UniPoly(self.ring, rem),
        )

    def exact_div(self, other: "UniPoly") -> "UniPoly":
        q, r = self.divmod(other)
        if not r.is_zero:
            raise DomainError("inexact polynomial division")
        return q

    def trailing_zeros(self) -> int:
        """Order of vanishing at 0 (0 for the zero polynomial)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return 0

    def shifted_down(self, j: int) -> "UniPoly":
        """Divide by x^j (requires vanishing to order >= j at 0)."""
        if any(self.coeffs[:j]):
            raise DomainError("polynomial does not vanish to that order")
        return UniPoly(self.ring, self.coeffs[j:], _trusted=True)

    def content(self) -> Fraction:
        """Positive rational content (QQ coefficients only)."""
        if self.ring is not QQ:
            raise DomainError("content is defined over QQ")
        if self.is_zero:
            return Fraction(0)
        num = 0
        den = 1
        for c in self.coeffs:
            num = gcd(num, c.numerator)
            den = lcm(den, c.denominator)
        return Fraction(num, den)

    def primitive_part(self) -> "UniPoly":
        c = self.content()
        if not c:
            return self
        inv = 1 / c
        return UniPoly(self.ring, tuple(x * inv for x in self.coeffs), _trusted=True)

    def reduce_mod(self, field: GF) -> "UniPoly":
        return UniPoly(field, [field.coerce(c) for c in self.coeffs])

    def render(self, var: str = "x") -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            cs = str(c)
            if mono:
                cs = f"{cs}*{mono}" if cs not in ("1", "-1") else ("-" + mono if cs == "-1" else mono)
            parts.append(cs)
        out = " + ".join(parts)
        return out.replace("+ -", "- ")

    def __repr__(self):
        return f"UniPoly({self.render()})"


# ---------------------------------------------------------------------------
# resultants
# ---------------------------------------------------------------------------


def _sylvester_rows(f_coeffs, g_coeffs, zero):
    """Sylvester matrix with f-rows above g-rows (coefficients low-first)."""
    m = len(f_coeffs) - 1
    n = len(g_coeffs) - 1
    size = m + n
    fh = list(reversed(f_coeffs))
    gh = list(reversed(g_coeffs))
    rows = []
    for i in range(n):
        row = [zero] * size
        for j, c in enumerate(fh):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for j, c in enumerate(gh):
            row[i + j] = c
        rows.append(row)
    return rows


def _bareiss_det(mat, div, is_zero, zero):
    """Determinant by fraction-free (Bareiss) elimination.

    ``div`` must perform exact division in the entry domain; by the Bareiss
    identity every division requested is exact.
    """
    n = len(mat)
    if n == 0:
        raise DomainError("empty matrix")
    sign = 1
    prev = None
    for r in range(n - 1):
        if is_zero(mat[r][r]):
            for i in range(r + 1, n):
                if not is_zero(mat[i][r]):
                    mat[r], mat[i] = mat[i], mat[r]
                    sign = -sign
                    break
            else:
                return zero
        pivot = mat[r][r]
        for i in range(r + 1, n):
            for j in range(r + 1, n):
                t = mat[i][j] * pivot - mat[i][r] * mat[r][j]
                mat[i][j] = t if prev is None else div(t, prev)
            mat[i][r] = zero
        prev = pivot
    det = mat[n - 1][n - 1]
    return -det if sign < 0 else det


def resultant(f: UniPoly, g: UniPoly):
    """Res(f, g): the Sylvester determinant, f-rows above g-rows.

    Vanishes iff f and g share a root in an algebraic closure or both
    leading coefficients vanish (impossible here since stored leading
    coefficients are nonzero).
    """
    if f.is_zero or g.is_zero:
        raise DomainError("resultant of the zero polynomial")
    if f.ring != g.ring:
        raise DomainError("mixed coefficient domains")
    ring = f.ring
    if f.degree + g.degree == 0:
        return ring.one
    mat = _sylvester_rows(list(f.coeffs), list(g.coeffs), ring.zero)
    return _bareiss_det(mat, lambda a, b: a / b, lambda x: not x, ring.zero)


def bivariate_resultant(F: "SparsePoly", G: "SparsePoly", eliminate: int) -> UniPoly:
    """Resultant of two 2-variable polynomials with respect to one variable.

    Entries of the Sylvester matrix are univariate polynomials in the kept
    variable; the determinant is computed by fraction-free elimination, so
    the result is an exact UniPoly in the kept variable.
    """
    if F.nvars != 2 or G.nvars != 2:
        raise DomainError("bivariate resultant needs two-variable polynomials")
    if not F or not G:
        raise DomainError("resultant of the zero polynomial")
    if F.ring != G.ring:
        raise DomainError("mixed coefficient domains")
    ring = F.ring
    keep = 1 - eliminate
    fc = _coeff_unipolys(F, eliminate, keep)
    gc = _coeff_unipolys(G, eliminate, keep)
    if len(fc) + len(gc) == 2:
        return UniPoly(ring, (ring.one,), _trusted=True)
    zero = UniPoly.zero(ring)
    mat = _sylvester_rows(fc, gc, zero)
    return _bareiss_det(
        mat, lambda a, b: a.exact_div(b), lambda u: u.is_zero, zero
    )


def _coeff_unipolys(F: "SparsePoly", eliminate: int, keep: int) -> list[UniPoly]:
    deg_e = F.degree(eliminate)
    buckets: list[dict[int, object]] = [dict() for _ in range(deg_e + 1)]
    for exps, c in F.terms.items():
        buckets[exps[eliminate]][exps[keep]] = c
    out = []
    for bucket in buckets:
        if bucket:
            n = max(bucket) + 1
            coeffs = [F.ring.zero] * n
            for e, c in bucket.items():
                coeffs[e] = c
            out.append(UniPoly(F.ring, coeffs, _trusted=True))
        else:
            out.append(UniPoly.zero(F.ring))
    while out and out[-1].is_zero:
        out.pop()
    return out


# ---------------------------------------------------------------------------
# Newton polygons
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Segment:
    slope: Fraction
    length: int


@dataclass(frozen=True)
class NewtonPolygon:
    """Lower convex hull of (exponent, p-adic coefficient valuation) points.

    ``vanishing_order`` roots of valuation INFINITY (from the x^j factor)
    are reported separately from the hull segments, matching the
    convention val_p(0) = INFINITY.
    """

    p: int
    vanishing_order: int
    points: tuple[tuple[int, Fraction], ...]
    segments: tuple[Segment, ...]

    def root_valuations(self) -> list[tuple[ExtVal, int]]:
        """(valuation, multiplicity) pairs, finite ascending, INFINITY last."""
        out = [(ExtVal(-seg.slope), seg.length) for seg in self.segments]
        out.sort(key=lambda t: t[0]._cmp_key())
        if self.vanishing_order:
            out.append((INFINITY, self.vanishing_order))
        return out

    def all_valuations_nonnegative(self) -> bool:
        return all(v >= 0 for v, _ in self.root_valuations())

    def all_valuations_zero(self) -> bool:
        return all(v == 0 for v, _ in self.root_valuations())


def _lower_hull(points):
    hull = []
    for pt in points:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            x3, y3 = pt
            if (x2 - x1) * (y3 - y1) - (y2 - y1) * (x3 - x1) <= 0:
                hull.pop()
            else:
                break
        hull.append(pt)
    return hull


def newton_polygon(f: UniPoly, p: int) -> NewtonPolygon:
    """Newton polygon of f at p; f must be a nonzero polynomial over QQ."""
    if f.is_zero:
        raise DomainError("Newton polygon of the zero polynomial")
    if f.ring is not QQ:
        raise DomainError("Newton polygon needs rational coefficients")
    pts = [
        (i, val_p(c, p).finite) for i, c in enumerate(f.coeffs) if c
    ]
    ord0 = pts[0][0]
    hull = _lower_hull(pts)
    segments = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        segments.append(Segment(Fraction(y2 - y1, x2 - x1), x2 - x1))
    return NewtonPolygon(p, ord0, tuple(pts), tuple(segments))


def roots_in_field(f: UniPoly) -> list[FieldElem]:
    """All roots of f in its (finite) coefficient field, by exhaustion."""
    if f.is_zero:
        raise DomainError("root search on the zero polynomial")
    if not isinstance(f.ring, GF):
        raise DomainError("roots_in_field needs finite-field coefficients")
    return [x for x in f.ring.elements() if not f.evaluate(x)]


# ---------------------------------------------------------------------------
# sparse multivariate polynomials
# ---------------------------------------------------------------------------


class SparsePoly:
    """Sparse polynomial in a fixed number of variables.

    Terms map exponent tuples to nonzero coefficients.  Two-variable
    instances carry the (a, c) parameter polynomials; three-variable
    instances appear in the (a, c, gamma) rigidity counterexample.
    """

    __slots__ = ("ring", "nvars", "terms")

    def __init__(self, ring, nvars: int, terms=None, *, _trusted=False):
        self.ring = ring
        self.nvars = nvars
        if _trusted:
            self.terms = dict(terms or {})
            return
        clean: dict[tuple[int, ...], object] = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars:
                raise DomainError("exponent tuple has wrong length")
            c = ring.coerce(c)
            if c:
                clean[exps] = c
        self.terms = clean

    @classmethod
    def constant(cls, ring, nvars: int, value):
        value = ring.coerce(value)
        terms = {(0,) * nvars: value} if value else {}
        return cls(ring, nvars, terms, _trusted=True)

    @classmethod
    def variable(cls, ring, nvars: int, index: int):
        exps = tuple(1 if i == index else 0 for i in range(nvars))
        return cls(ring, nvars, {exps: ring.one}, _trusted=True)

    def __bool__(self):
        return bool(self.terms)

    @property
    def num_terms(self) -> int:
        return len(self.terms)

    def degree(self, var: int | None = None) -> int:
        """Degree in one variable, or total degree if var is None; -1 if zero."""
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        return max(e[var] for e in self.terms)

    def coefficient(self, exps) -> object:
        return self.terms.get(tuple(exps), self.ring.zero)

    def _check(self, other: "SparsePoly"):
        if self.ring != other.ring or self.nvars != other.nvars:
            raise DomainError("mixed polynomial domains")

    def __add__(self, other):
        if not isinstance(other, SparsePoly):
            other = SparsePoly.constant(self.ring, self.nvars, other)
        self._check(other)
        out = dict(self.terms)
        for exps, c in other.terms.items():
            s = out.get(exps)
            s = c if s is None else s + c
            if s:
                out[exps] = s
            elif exps in out:
                del out[exps]
        return SparsePoly(self.ring, self.nvars, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return SparsePoly(
            self.ring,
            self.nvars,
            {e: -c for e, c in self.terms.items()},
            _trusted=True,
        )

    def __sub__(self, other):
        if not isinstance(other, SparsePoly):
            other = SparsePoly.constant(self.ring, self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def _mul_qq(self, other: "SparsePoly") -> "SparsePoly":
        # scale both factors to integer coefficients so the accumulation
        # runs on plain ints; one Fraction normalization per output term
        da = 1
        for c in self.terms.values():
            da = lcm(da, c.denominator)
        db = 1
        for c in other.terms.values():
            db = lcm(db, c.denominator)
        ia = [(e, c.numerator * (da // c.denominator)) for e, c in self.terms.items()]
        ib = [(e, c.numerator * (db // c.denominator)) for e, c in other.terms.items()]
        if len(ia) < len(ib):
            ia, ib = ib, ia
        acc: dict[tuple[int, ...], int] = {}
        get = acc.get
        if self.nvars == 2:
            for (a0, a1), va in ia:
                for (b0, b1), vb in ib:
                    key = (a0 + b0, a1 + b1)
                    acc[key] = get(key, 0) + va * vb
        else:
            for ea, va in ia:
                for eb, vb in ib:
                    key = tuple(x + y for x, y in zip(ea, eb))
                    acc[key] = get(key, 0) + va * vb
        den = da * db
        terms = {e: Fraction(v, den) for e, v in acc.items() if v}
        return SparsePoly(self.ring, self.nvars, terms, _trusted=True)

    def __mul__(self, other):
        if not isinstance(other, SparsePoly):
            c = self.ring.coerce(other)
            if not c:
                return SparsePoly(self.ring, self.nvars, {}, _trusted=True)
            return SparsePoly(
                self.ring,
                self.nvars,
                {e: v * c for e, v in self.terms.items()},
                _trusted=True,
            )
        self._check(other)
        if not self.terms or not other.terms:
            return SparsePoly(self.ring, self.nvars, {}, _trusted=True)
        if self.ring is QQ:
            return self._mul_qq(other)
        acc: dict[tuple[int, ...], object] = {}
        for ea, va in self.terms.items():
            for eb, vb in other.terms.items():
                key = tuple(x + y for x, y in zip(ea, eb))
                s = acc.get(key)
                t = va * vb
                acc[key] = t if s is None else s + t
        return SparsePoly(
            self.ring,
            self.nvars,
            {e: c for e, c in acc.items() if c},
            _trusted=True,
        )

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise DomainError("negative polynomial power")
        result = SparsePoly.constant(self.ring, self.nvars, self.ring.one)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def partial(self, var: int) -> "SparsePoly":
        out: dict[tuple[int, ...], object] = {}
        for exps, c in self.terms.items():
            e = exps[var]
            if e == 0:
                continue
            d = c * self.ring.coerce(e)
            if d:
                key = exps[:var] + (e - 1,) + exps[var + 1 :]
                out[key] = d
        return SparsePoly(self.ring, self.nvars, out, _trusted=True)

    def evaluate(self, values, ring=None):
        """Full substitution; values (and coefficients) coerced into ``ring``."""
        ring = ring or self.ring
        vals = [ring.coerce(v) for v in values]
        if len(vals) != self.nvars:
            raise DomainError("wrong number of values")
        maxe = [0] * self.nvars
        for exps in self.terms:
            for i, e in enumerate(exps):
                maxe[i] = max(maxe[i], e)
        powers = []
        for i, v in enumerate(vals):
            row = [ring.one]
            for _ in range(maxe[i]):
                row.append(row[-1] * v)
            powers.append(row)
        acc = ring.zero
        for exps, c in self.terms.items():
            t = ring.coerce(c)
            for i, e in enumerate(exps):
                if e:
                    t = t * powers[i][e]
            acc = acc + t
        return acc

    def reduce_mod(self, field: GF) -> "SparsePoly":
        return SparsePoly(
            field,
            self.nvars,
            {e: field.coerce(c) for e, c in self.terms.items()},
        )

    def render(self, varnames) -> str:
        if not self.terms:
            return "0"
        keys = sorted(self.terms, key=lambda e: (sum(e), e), reverse=True)
        parts = []
        for exps in keys:
            c = self.terms[exps]
            mono = "*".join(
                varnames[i] if e == 1 else f"{varnames[i]}^{e}"
                for i, e in enumerate(exps)
                if e
            )
            cs = str(c)
            if mono:
                if cs == "1":
                    cs = mono
                elif cs == "-1":
                    cs = "-" + mono
                else:
                    cs = f"{cs}*{mono}"
            parts.append(cs)
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        names = ["a", "c", "g", "w"][: self.nvars]
        return f"SparsePoly({self.render(names)})"
