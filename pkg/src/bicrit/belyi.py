"""Normal forms for polynomials with marked critical points.

The bicritical family of degree d with ramification profile (d-k, k+1) is
carried by the polynomial

    B(z) = sum_{i=0}^{k} (-1)^(k-i) / ((k-i)! i!) * prod_{j != i} (d - j) * z^(d-i),

which satisfies B(0) = 0, B(1) = 1 and B'(z) = d*b_0 * z^(d-k-1) (z-1)^k,
so every member a*B(z) + c with a != 0 has affine critical points exactly
{0, 1}.  Replacing k by d-1-k together with c -> 1-a-c gives a conjugate
map, so k can always be normalized into [1, ceil((d-2)/2)].

For n marked critical points 0, 1, gamma_1, ..., gamma_{n-2} the analogous
form integrates  z^(d - sum(k) - 1) * prod (z - gamma_i)^(k_i)  term by
term; :func:`ncritical_form` produces it with either numeric gammas or a
single symbolic gamma (three critical points).  With a single block [k]
the n-critical form equals (-1)^k * k! times B (pinned by brute-force
comparison in the test suite).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb, factorial

from .errors import DomainError
from .polyring import QQ, FieldElem, SparsePoly, UniPoly

__all__ = [
    "BelyiPoly",
    "BicriticalMap",
    "NCriticalForm",
    "belyi_coeffs",
    "canonical_k",
    "conjugate_params",
    "ncritical_form",
    "specialize",
]


def _check_dk(d: int, k: int) -> None:
    if d < 3:
        raise DomainError(f"degree must be >= 3, got {d}")
    if not 1 <= k <= d - 2:
        raise DomainError(f"k must satisfy 1 <= k <= d-2, got k={k} for d={d}")


@dataclass(frozen=True)
class BelyiPoly:
    """The normal form above: b_i is the coefficient of z^(d-i), 0 <= i <= k."""

    d: int
    k: int
    coeffs: tuple[Fraction, ...]

    def polynomial(self) -> UniPoly:
        dense = [Fraction(0)] * (self.d + 1)
        for i, b in enumerate(self.coeffs):
            dense[self.d - i] = b
        return UniPoly(QQ, dense)

    def evaluate(self, x: Fraction) -> Fraction:
        x = Fraction(x)
        # Horner on the top k+1 coefficients, then the z^(d-k) tail
        acc = Fraction(0)
        for b in self.coeffs:
            acc = acc * x + b
        return acc * x ** (self.d - self.k)

    def eval_unipoly(self, inner: UniPoly) -> UniPoly:
        """B(inner) for a univariate inner polynomial over any ring."""
        ring = inner.ring
        acc = UniPoly.zero(ring)
        for b in self.coeffs:
            acc = acc * inner + UniPoly(ring, (ring.coerce(b),))
        return acc * inner ** (self.d - self.k)

    def eval_sparse(self, inner: SparsePoly) -> SparsePoly:
        """B(inner) for a sparse multivariate inner polynomial."""
        ring = inner.ring
        acc = SparsePoly.constant(ring, inner.nvars, ring.zero)
        for b in self.coeffs:
            acc = acc * inner + SparsePoly.constant(ring, inner.nvars, ring.coerce(b))
        return acc * inner ** (self.d - self.k)


def belyi_coeffs(d: int, k: int) -> BelyiPoly:
    """Exact coefficients of the degree-d normal form with parameter k."""
    _check_dk(d, k)
    out = []
    for i in range(k + 1):
        prod_term = 1
        for j in range(k + 1):
            if j != i:
                prod_term *= d - j
        sign = -1 if (k - i) % 2 else 1
        out.append(Fraction(sign * prod_term, factorial(k - i) * factorial(i)))
    return BelyiPoly(d, k, tuple(out))


def canonical_k(d: int, k: int) -> int:
    """Fold k into the canonical range [1, ceil((d-2)/2)] via k -> d-1-k."""
    _check_dk(d, k)
    bound = (d - 1) // 2  # ceil((d-2)/2)
    return k if k <= bound else d - 1 - k


def conjugate_params(a: Fraction, c: Fraction, d: int, k: int):
    """Parameters of the conjugate map with the complementary k.

    (a, c, k) -> (a, 1 - a - c, d - 1 - k); applying twice is the identity.
    """
    _check_dk(d, k)
    a = Fraction(a)
    if a == 0:
        raise DomainError("a = 0 does not define a degree-d map")
    return a, Fraction(1) - a - Fraction(c), d - 1 - k


@dataclass(frozen=True)
class BicriticalMap:
    """The two-parameter family a*B(z) + c with symbolic (a, c)."""

    belyi: BelyiPoly

    @property
    def d(self) -> int:
        return self.belyi.d

    @property
    def k(self) -> int:
        return self.belyi.k


@dataclass(frozen=True)
class NCriticalForm:
    """Degree-d form with critical points 0, 1, gamma_1..gamma_{n-2}.

    ``coeffs`` maps z-exponents to coefficients: Fractions when the gammas
    are numeric, univariate polynomials in gamma when symbolic (gammas is
    None, three critical points only).
    """

    d: int
    profile: tuple[int, ...]
    gammas: tuple[Fraction, ...] | None
    coeffs: tuple[tuple[int, object], ...]

    @property
    def symbolic(self) -> bool:
        return self.gammas is None and len(self.profile) == 2

    def coeff(self, z_exp: int):
        for e, c in self.coeffs:
            if e == z_exp:
                return c
        if self.symbolic:
            return UniPoly.zero(QQ)
        return Fraction(0)

    def polynomial(self) -> UniPoly:
        if self.symbolic:
            raise DomainError("symbolic form has no single-variable polynomial")
        dense = [Fraction(0)] * (self.d + 1)
        for e, c in self.coeffs:
            dense[e] = c
        return UniPoly(QQ, dense)

    def z_gamma_poly(self) -> SparsePoly:
        """The symbolic form as a sparse polynomial in (z, gamma)."""
        if not self.symbolic:
            raise DomainError("form is not symbolic in gamma")
        terms = {}
        for e, cpoly in self.coeffs:
            for g_exp, c in enumerate(cpoly.coeffs):
                if c:
                    terms[(e, g_exp)] = c
        return SparsePoly(QQ, 2, terms)


def ncritical_form(d: int, profile, gammas=None) -> NCriticalForm:
    """Construct the n-critical normal form (a, c wrapper applied outside).

    ``profile`` lists k_0..k_{n-2} (ramification index minus one at
    1, gamma_1, ..., gamma_{n-2}); gammas = None requests a symbolic gamma,
    which is supported exactly when the profile has two blocks.
    """
    profile = tuple(int(k) for k in profile)
    if not profile:
        raise DomainError("profile must be nonempty")
    if any(k < 1 for k in profile):
        raise DomainError("every profile entry must be >= 1")
    total = sum(profile)
    n = len(profile) + 1
    if not (n - 1 <= total <= d - 2):
        raise DomainError(
            f"profile sum {total} violates {n - 1} <= sum <= {d - 2} for d={d}"
        )

    symbolic = False
    if gammas is None:
        if len(profile) == 1:
            gam_vals: tuple[Fraction, ...] | None = ()
        elif len(profile) == 2:
            symbolic = True
            gam_vals = None
        else:
            raise DomainError(
                "symbolic gamma is supported only with three critical points"
            )
    else:
        gam_vals = tuple(Fraction(g) for g in gammas)
        if len(gam_vals) != len(profile) - 1:
            raise DomainError("need one gamma per profile entry beyond the first")
        seen = {Fraction(0), Fraction(1)}
        for g in gam_vals:
            if g in seen:
                raise DomainError("gammas must be distinct and avoid 0 and 1")
            seen.add(g)

    scale = Fraction(factorial(d), factorial(d - total - 1))
    gamma_poly = UniPoly(QQ, (Fraction(0), Fraction(1)))  # the symbol itself

    acc: dict[int, object] = {}
    for jvec in product(*(range(k + 1) for k in profile)):
        z_exp = d + sum(jvec) - total
        base = scale / z_exp
        for k_i, j_i in zip(profile, jvec):
            base *= comb(k_i, j_i)
        # gamma_0 = 1 contributes only its sign
        if (profile[0] - jvec[0]) % 2:
            base = -base
        if symbolic:
            m = profile[1] - jvec[1]
            term: object = (gamma_poly**m) * (base if m % 2 == 0 else -base)
        else:
            term = base
            for g, (k_i, j_i) in zip(gam_vals, zip(profile[1:], jvec[1:])):
                term *= (-g) ** (k_i - j_i)
        prev = acc.get(z_exp)
        acc[z_exp] = term if prev is None else prev + term

    coeffs = tuple(
        (e, c) for e, c in sorted(acc.items()) if (c if symbolic else c != 0)
    )
    return NCriticalForm(d, profile, gam_vals, coeffs)


def specialize(obj, a, c, gammas=None) -> UniPoly:
    """Substitute parameters, returning a concrete polynomial in z.

    The target domain is inferred from ``a``: a FieldElem lands in its
    field, anything else in QQ.  a = 0 degenerates to the constant c.
    """
    if isinstance(a, FieldElem):
        ring = a.field
    else:
        ring = QQ
    a = ring.coerce(a)
    c = ring.coerce(c)

    if isinstance(obj, BelyiPoly):
        obj = BicriticalMap(obj)
    if isinstance(obj, BicriticalMap):
        if gammas is not None:
            raise DomainError("bicritical maps take no gamma values")
        b = obj.belyi
        dense = [ring.zero] * (b.d + 1)
        for i, coeff in enumerate(b.coeffs):
            dense[b.d - i] = a * ring.coerce(coeff)
        poly = UniPoly(ring, dense)
        return poly + UniPoly(ring, (c,))
    if isinstance(obj, NCriticalForm):
        dense = [ring.zero] * (obj.d + 1)
        if obj.symbolic:
            if gammas is None or len(tuple(gammas)) != 1:
                raise DomainError("symbolic form needs exactly one gamma value")
            g = ring.coerce(tuple(gammas)[0])
            for e, cpoly in obj.coeffs:
                val = ring.zero
                for coeff in reversed(cpoly.coeffs):
                    val = val * g + ring.coerce(coeff)
                dense[e] = a * val
        else:
            if gammas is not None:
                raise DomainError("numeric form takes no extra gamma values")
            for e, coeff in obj.coeffs:
                dense[e] = a * ring.coerce(coeff)
        poly = UniPoly(ring, dense)
        return poly + UniPoly(ring, (c,))
    raise DomainError(f"cannot specialize {obj!r}")
