import pytest

from bicrit.errors import DomainError, ResourceBudgetError, UnsupportedParametersError
from bicrit.idf import IdfWitness, find_idf_prime
from bicrit.pcf import (
    critical_orbit_poly,
    integrality_certificate,
    jacobian,
    ncrit_counterexamples,
    preperiodic_poly,
    reduce_map,
    solve_mod,
    transversality_check,
)
from bicrit.polyring import GF, QQ, SparsePoly, UniPoly, roots_in_field

A, C = 0, 1


def sp(terms):
    return SparsePoly(QQ, 2, terms)


class TestCriticalOrbitPoly:
    def test_first_iterates(self):
        assert critical_orbit_poly(3, 1, 0, 1).poly == sp({(0, 1): 1})
        assert critical_orbit_poly(3, 1, 1, 1).poly == sp(
            {(1, 0): 1, (0, 1): 1, (0, 0): -1}
        )
        assert critical_orbit_poly(3, 1, 0, 2).poly == sp(
            {(1, 3): -2, (1, 2): 3, (0, 1): 1}
        )

    def test_budget(self):
        with pytest.raises(ResourceBudgetError):
            critical_orbit_poly(10, 1, 0, 6, budget=100)

    def test_validation(self):
        with pytest.raises(DomainError):
            critical_orbit_poly(3, 1, 2, 1)
        with pytest.raises(DomainError):
            critical_orbit_poly(3, 1, 0, 0)


class TestPreperiodicPoly:
    def test_examples(self):
        assert preperiodic_poly(3, 1, 0, 1, 0).poly == sp({(0, 1): 1})
        assert preperiodic_poly(3, 1, 1, 1, 0).poly == sp(
            {(1, 0): 1, (0, 1): 1, (0, 0): -1}
        )
        assert preperiodic_poly(3, 1, 0, 2, 1).poly == sp({(1, 3): -2, (1, 2): 3})

    def test_order(self):
        with pytest.raises(DomainError):
            preperiodic_poly(3, 1, 0, 1, 1)


CERT_CASES = [
    (3, 1, 1, 1),
    (3, 1, 2, 1),
    (3, 1, 1, 2),
    (4, 1, 1, 1),
    (5, 1, 1, 1),
    (5, 2, 1, 1),
    (5, 1, 2, 1),
]


class TestIntegralityCertificate:
    def test_simplest_case(self):
        cert = integrality_certificate(3, 1, 1, 1)
        assert cert.verdict == "PASS"
        assert cert.res_a in (UniPoly(QQ, (-1, 1)), UniPoly(QQ, (1, -1)))
        assert cert.res_c in (UniPoly(QQ, (0, 1)), UniPoly(QQ, (0, -1)))
        # c = 0 shows up as a root of valuation INFINITY, which passes >= 0
        vals = cert.polygon_c.root_valuations()
        assert any(v.is_infinite for v, _ in vals)

    def test_period_two_polynomials(self):
        cert = integrality_certificate(3, 1, 2, 1)
        assert cert.verdict == "PASS"
        # resultants match direct elimination via c = 1 - a resp. the 2x2 det
        z = UniPoly(QQ, (0, 1))
        expected_a = (
            (z - UniPoly(QQ, (1,)))
            * (2 * z**3 - z**2 - z - UniPoly(QQ, (1,)))
        ).primitive_part()
        assert cert.res_a in (expected_a, -expected_a)
        expected_c = (
            z * (2 * z**3 - 5 * z**2 + 3 * z + UniPoly(QQ, (1,)))
        ).primitive_part()
        assert cert.res_c in (expected_c, -expected_c)
        got = sorted(
            (str(v), m) for v, m in cert.polygon_c.root_valuations()
        )
        assert got == [("0", 3), ("inf", 1)]

    @pytest.mark.parametrize("case", CERT_CASES)
    def test_pass_cases(self, case):
        cert = integrality_certificate(*case)
        assert cert.verdict == "PASS"
        assert cert.polygon_a.all_valuations_zero()
        assert cert.polygon_c.all_valuations_nonnegative()
        # verdict is recomputable from the stored polygons
        assert cert.a_valuations_all_zero == cert.polygon_a.all_valuations_zero()
        assert cert.c_valuations_nonnegative == cert.polygon_c.all_valuations_nonnegative()

    def test_unsupported_pair(self):
        with pytest.raises(UnsupportedParametersError):
            integrality_certificate(27, 3, 1, 1)

    def test_budget(self):
        with pytest.raises(ResourceBudgetError):
            integrality_certificate(3, 1, 3, 3)


class TestReduceMap:
    def test_examples(self):
        s, t = reduce_map(3, 1, find_idf_prime(3, 1))
        assert s == GF(3).elem(1) and t == 1
        s, t = reduce_map(5, 1, find_idf_prime(5, 1))
        assert s == GF(5).elem(1) and t == 1
        s, t = reduce_map(8, 2, find_idf_prime(8, 2))
        assert s == GF(3).elem(1) and t == 2

    def test_nontrivial_s(self):
        # (11, 3): witness p = 11, r = 0; s = b_0 mod 11
        w = find_idf_prime(11, 3)
        s, t = reduce_map(11, 3, w)
        assert t * w.p == 11 - w.r
        assert s  # nonzero

    def test_bad_witness(self):
        with pytest.raises(DomainError):
            reduce_map(3, 1, IdfWitness(5, 0, 1))


class TestJacobian:
    def test_hand_example(self):
        F = sp({(0, 1): 1})  # c
        G = sp({(1, 0): 1, (0, 1): 1, (0, 0): -1})  # a + c - 1
        assert jacobian(F, G) == sp({(0, 0): -1})

    def test_equal_inputs(self):
        F = critical_orbit_poly(3, 1, 0, 2).poly
        assert not jacobian(F, F)

    def test_mod3_reduction(self):
        F = critical_orbit_poly(3, 1, 0, 2).poly
        G = critical_orbit_poly(3, 1, 1, 1).poly
        J3 = jacobian(F, G).reduce_mod(GF(3))
        F3 = GF(3)
        assert J3 == SparsePoly(F3, 2, {(0, 3): 1, (0, 0): -1})  # c^3 - 1


class TestSolveMod:
    def test_period_one(self):
        w = find_idf_prime(3, 1)
        res = solve_mod(3, 1, 1, 1, w, 1)
        F3 = GF(3)
        assert [(s.alpha, s.beta, s.jacobian_value) for s in res.solutions] == [
            (F3.elem(1), F3.elem(0), F3.elem(2))
        ]

    def test_period_two(self):
        w = find_idf_prime(3, 1)
        res = solve_mod(3, 1, 2, 1, w, 1)
        F3 = GF(3)
        got = [(s.alpha, s.beta) for s in res.solutions]
        assert got == [(F3.elem(1), F3.elem(0)), (F3.elem(2), F3.elem(2))]
        assert [s.jacobian_value for s in res.solutions] == [F3.elem(2), F3.elem(1)]

    def test_extension_contains_base_solutions(self):
        w = find_idf_prime(3, 1)
        base = solve_mod(3, 1, 1, 1, w, 1)
        ext = solve_mod(3, 1, 1, 1, w, 2)
        F9 = GF(3, 2)
        lifted = {
            (F9.coerce(s.alpha), F9.coerce(s.beta)) for s in base.solutions
        }
        got = {(s.alpha, s.beta) for s in ext.solutions}
        assert lifted <= got
        assert all(s.jacobian_value for s in ext.solutions)

    def test_budget(self):
        w = find_idf_prime(3, 1)
        with pytest.raises(ResourceBudgetError):
            solve_mod(3, 1, 1, 1, w, 9, budget=100)


class TestTransversality:
    def test_examples(self):
        rep = transversality_check(3, 1, 1, 1, e_max=2)
        assert rep.verdict == "PASS"
        assert set(rep.signs) == {-1}

        rep = transversality_check(3, 1, 2, 1, e_max=1)
        assert rep.verdict == "PASS"
        assert rep.signs == (-1, -1)

        rep = transversality_check(4, 1, 1, 1, e_max=1)
        assert rep.verdict == "PASS"
        assert len(rep.signs) == 1  # GF(2): +1 and -1 coincide
        F2 = GF(2)
        (sol,) = rep.per_field[0].solutions
        assert (sol.alpha, sol.beta, sol.jacobian_value) == (
            F2.elem(1),
            F2.elem(0),
            F2.elem(1),
        )

    def test_unit_identity_all_cases(self):
        for case in CERT_CASES:
            rep = transversality_check(*case, e_max=2)
            assert rep.verdict == "PASS"
            assert all(s in (1, -1) for s in rep.signs)

    def test_unsupported(self):
        with pytest.raises(UnsupportedParametersError):
            transversality_check(27, 3, 1, 1)


class TestReductionStructure:
    def test_orbit_reduction_commutes_with_monomial_orbit(self):
        # reducing f^n(0) mod p equals iterating the monomial a*s*z^(t*p) + c
        for d, k in ((3, 1), (5, 1), (5, 2), (8, 2)):
            w = find_idf_prime(d, k)
            field = GF(w.p)
            s, t = reduce_map(d, k, w)
            a = SparsePoly.variable(field, 2, A)
            c = SparsePoly.variable(field, 2, C)
            for which in (0, 1):
                z = SparsePoly.constant(field, 2, field.elem(which))
                for n in range(1, 4):
                    z = a * s * z ** (t * w.p) + c
                    # which = 1 already carries the -1 of G_n = f^n(1) - 1
                    full = critical_orbit_poly(d, k, which, n).poly
                    expected = (
                        z - SparsePoly.constant(field, 2, field.one)
                        if which == 1
                        else z
                    )
                    assert full.reduce_mod(field) == expected

    def test_derivative_collapse(self):
        # d/da fbar^n(0) = s * (fbar^(n-1)(0))^(t p), d/dc fbar^n(0) = 1
        for d, k in ((3, 1), (5, 2)):
            w = find_idf_prime(d, k)
            field = GF(w.p)
            s, t = reduce_map(d, k, w)
            one = SparsePoly.constant(field, 2, field.one)
            for n in range(1, 4):
                fn = critical_orbit_poly(d, k, 0, n).poly.reduce_mod(field)
                prev = (
                    critical_orbit_poly(d, k, 0, n - 1).poly.reduce_mod(field)
                    if n > 1
                    else SparsePoly.constant(field, 2, field.zero)
                )
                assert fn.partial(A) == s * prev ** (t * w.p)
                assert fn.partial(C) == one

    def test_resultant_roots_reduce_into_solution_set(self):
        # rational roots of the stripped resultants land in the mod-p solutions
        cert = integrality_certificate(3, 1, 2, 1)
        w = cert.witness
        field = GF(w.p)
        res = solve_mod(3, 1, 2, 1, w, 1)
        alphas = {s.alpha for s in res.solutions}
        betas = {s.beta for s in res.solutions}
        for root in roots_in_field(cert.res_a.reduce_mod(field)):
            assert root in alphas or root == field.zero
        for root in roots_in_field(cert.res_c.reduce_mod(field)):
            assert root in betas or root == field.zero

    def test_unit_ideal_consequence(self):
        # when both certificates pass, (F, G, J) has no common root with alpha != 0
        for case in ((3, 1, 1, 1), (3, 1, 2, 1), (5, 2, 1, 1)):
            cert = integrality_certificate(*case)
            rep = transversality_check(*case, e_max=2)
            assert cert.verdict == "PASS" and rep.verdict == "PASS"
            for res in rep.per_field:
                for sol in res.solutions:
                    assert sol.jacobian_value


class TestNCritCounterexamples:
    def test_report(self):
        rep = ncrit_counterexamples()
        assert rep.verdict == "CONFIRMED"
        assert rep.degree10_constant_mod7
        assert rep.degree4_coeffs_match
        assert rep.jacobian_identically_zero
        assert len(rep.periods_checked) == 8
