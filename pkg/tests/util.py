"""Shared test oracles, independent of the implementation paths they check."""

from fractions import Fraction

from bicrit.arith import ExtVal
from bicrit.belyi import belyi_coeffs
from bicrit.valdyn import CaseTag, ValParams, classify_case


def prs_resultant(f, g):
    """Resultant by the Euclidean remainder recursion (independent of the
    Sylvester/Bareiss route), pinned to the f-rows-above-g-rows sign."""
    ring = f.ring
    if f.is_zero or g.is_zero:
        raise ValueError("resultant of zero polynomial")

    def rec(a, b):
        da, db = a.degree, b.degree
        if db == 0:
            return b.coeffs[0] ** da
        if da < db:
            swapped = rec(b, a)
            return swapped if (da * db) % 2 == 0 else -swapped
        q, r = a.divmod(b)
        if r.is_zero:
            return ring.zero
        sign = ring.one if (da * db) % 2 == 0 else -ring.one
        return sign * (b.coeffs[-1] ** (da - r.degree)) * rec(b, r)

    return rec(f, g)


def _int_val_fast(n, p):
    """Exact exponent of p in n != 0, stripping p^(2^j) chunks."""
    e = 0
    ladder = [(p, 1)]
    while True:
        pk, kk = ladder[-1]
        q, r = divmod(n, pk)
        if r == 0:
            n = q
            e += kk
            ladder.append((pk * pk, 2 * kk))
        else:
            break
    for pk, kk in reversed(ladder[:-1]):
        q, r = divmod(n, pk)
        if r == 0:
            n = q
            e += kk
    return e


def exact_orbit_valuations(d, k, p, alpha, beta, start, n):
    """v_p of the first n orbit values of the critical point, by exact
    integer iteration on unnormalized numerator/denominator pairs (no gcd
    reduction, so divergent orbits stay tractable)."""
    from math import lcm

    from bicrit.arith import INFINITY

    B = belyi_coeffs(d, k)
    scale = 1
    for c in B.coeffs:
        scale = lcm(scale, c.denominator)
    bi = [int(c * scale) for c in B.coeffs]  # B = sum bi z^(d-i) / scale
    an, ad = alpha.numerator, alpha.denominator
    bn, bd = beta.numerator, beta.denominator
    xn, xd = start, 1
    out = []
    for _ in range(n):
        # B(xn/xd) = P / (scale * xd^d), P = sum_i bi * xn^(d-i) * xd^i
        xd_pows = [1]
        for _i in range(k):
            xd_pows.append(xd_pows[-1] * xd)
        xn_pows = [xn ** (d - k)]
        for _i in range(k):
            xn_pows.append(xn_pows[-1] * xn)
        P = sum(
            bi[i] * xn_pows[k - i] * xd_pows[i] for i in range(k + 1)
        )
        den_b = scale * xd_pows[k] * xd ** (d - k)
        xn = an * P * bd + bn * ad * den_b
        xd = ad * den_b * bd
        if xn == 0:
            out.append(INFINITY)
        else:
            out.append(ExtVal(_int_val_fast(xn, p) - _int_val_fast(xd, p)))
    return out


def rational_with_val(rng, p, v):
    """A random rational with v_p exactly v (unit times p^v)."""
    while True:
        u = rng.randrange(1, 40)
        if u % p:
            break
    while True:
        w = rng.randrange(1, 40)
        if w % p:
            break
    sign = rng.choice((1, -1))
    return Fraction(sign * u, w) * Fraction(p) ** v


def sample_case_valuations(rng, d, k, r, e, case):
    """Integer (v_alpha, v_beta) classified as the requested CaseTag."""
    for _ in range(10_000):
        va = rng.randrange(-4, 7)
        vb = rng.randrange(-4, 7)
        params = ValParams(d, k, r, e, ExtVal(va), ExtVal(vb))
        if classify_case(params) is case:
            return va, vb
    raise AssertionError(f"no sample found for {case} at (d,k)=({d},{k})")


ALL_CASES = (
    CaseTag.CASE1,
    CaseTag.CASE2,
    CaseTag.CASE3,
    CaseTag.CASE4I,
    CaseTag.CASE4II,
    CaseTag.CASE4III,
    CaseTag.INTEGRAL,
)
