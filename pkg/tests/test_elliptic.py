import itertools
from fractions import Fraction

import pytest

import orbtorsion.elliptic as elliptic_mod
from orbtorsion.algebra import NuPolynomial, PhasePolynomial
from orbtorsion.elliptic import (
    LemmaViolation,
    alternating_sum,
    class_polynomial,
    coefficient_table,
    identity_alternating_sum,
    interpolation_check,
    phase_exponents,
    polynomial_part,
)
from orbtorsion.lie import EllipticClass, RayConfig


def nu(*coeffs):
    return NuPolynomial(coeffs)


def nonincreasing_taus(n, top):
    return [t for t in itertools.product(range(top + 1), repeat=n + 1)
            if all(t[i] >= t[i + 1] for i in range(n))]


CFG0 = RayConfig(2, (0, 0, 0), 0)
CFG1 = RayConfig(2, (0, 0, 0), 1)
QUARTER = EllipticClass(2, (Fraction(1, 4),), Fraction(1))


class TestPolynomialPart:
    def test_empty_product(self):
        assert polynomial_part((9, 9), 1) == NuPolynomial.one()

    def test_single_factor(self):
        assert polynomial_part((5, 3), 2) == nu(-25, 0, -1)

    def test_expanded_with_vandermonde(self):
        # (-nu^2-25)(-nu^2-9)*(25-9), re-expanded by brute force before pinning
        assert polynomial_part((5, 3), 3) == nu(3600, 0, 544, 0, 16)

    def test_rejects_bad_block_count(self):
        with pytest.raises(ValueError):
            polynomial_part((5,), 3)


class TestPhaseExponents:
    def test_cases(self):
        assert phase_exponents((5, 3), 2) == (-3,)
        assert phase_exponents((5, 3), 1) == (-5, -3)
        assert phase_exponents((5, 3), 3) == ()

    def test_rejects_non_integer(self):
        with pytest.raises(ValueError):
            phase_exponents((Fraction(1, 2), 3), 1)


class TestClassPolynomial:
    def test_pinned_k2(self):
        # frozen from an independent 4-element enumeration script
        value = class_polynomial(CFG0, 2, 2).value
        assert value.terms == {
            (-1,): nu(-4, 0, -1), (1,): nu(-4, 0, -1),
            (-2,): nu(1, 0, 1), (2,): nu(1, 0, 1),
        }

    def test_pinned_k0(self):
        value = class_polynomial(CFG0, 0, 2).value
        assert value.terms == {
            (0,): nu(-2, 0, -2), (-1,): nu(0, 0, 1), (1,): nu(0, 0, 1),
        }

    def test_d1_is_nu_free(self):
        for k in range(3):
            assert class_polynomial(CFG1, k, 1).value.max_nu_degree() == 0

    def test_degree_bound_and_evenness(self):
        for n in (1, 2, 3):
            cfg = RayConfig(n, tuple([1] * n + [0]), 2)
            for d in range(1, n + 2):
                for k in range(n + 1):
                    poly = class_polynomial(cfg, k, d).value
                    for v in poly.terms.values():
                        assert v.is_even
                        assert v.degree <= 2 * (d - 1)

    def test_class_angle_arity_enforced(self):
        bad = EllipticClass(1, (Fraction(1, 4),))  # n=2, d=1 needs two angles
        with pytest.raises(ValueError):
            class_polynomial(CFG0, 0, bad)


class TestAlternatingSum:
    def test_pinned_m0(self):
        consts = alternating_sum(CFG0, 2).constants()
        assert consts == {(0,): 6, (1,): -4, (-1,): -4, (2,): 1, (-2,): 1}

    def test_pinned_m1(self):
        consts = alternating_sum(CFG1, 2).constants()
        assert consts == {(1,): 5, (-1,): 5, (2,): -8, (-2,): -8, (3,): 3, (-3,): 3}

    def test_d1_trivially_nu_free(self):
        for m in range(3):
            total = alternating_sum(RayConfig(2, (1, 0, 0), m), 1)
            assert total.is_nu_free

    def test_violation_reported(self, monkeypatch):
        # corrupt one summand's sign structure and expect the runtime check to fire
        real = elliptic_mod.class_polynomial

        def corrupted(cfg, k, cls):
            out = real(cfg, k, cls)
            if k == 0:
                bad = out.value + PhasePolynomial.monomial((0,), nu(0, 0, 1))
                return elliptic_mod.EllipticPolynomial(bad, out.d, out.k, out.m)
            return out

        monkeypatch.setattr(elliptic_mod, "class_polynomial", corrupted)
        with pytest.raises(LemmaViolation):
            elliptic_mod.alternating_sum(CFG0, 2)

    def test_negation_symmetry_even_rank(self):
        for tau in nonincreasing_taus(2, 1):
            for m in range(4):
                for d in (1, 2):
                    total = alternating_sum(RayConfig(2, tau, m), d)
                    assert total.conjugation_defect() == 0

    def test_odd_rank_defect_is_reported_not_asserted(self):
        total = alternating_sum(RayConfig(1, (1, 0), 2), 1)
        assert isinstance(total.conjugation_defect(), Fraction)


class TestIdentityAlternatingSum:
    def test_pinned(self):
        assert identity_alternating_sum(CFG0) == 48
        assert identity_alternating_sum(CFG1) == 480

    def test_rank_one_closed_form(self):
        for m in range(5):
            cfg = RayConfig(1, (0, 0), m)
            val = identity_alternating_sum(cfg)
            assert val == (m + 1) ** 2 - m ** 2


class TestCoefficientTable:
    def test_d1_single_entry(self):
        cls = EllipticClass(1, (Fraction(1, 4), Fraction(1, 2)))
        table = coefficient_table(CFG0, 0, cls)
        assert len(table) == 1

    def test_pinned_quarter_turn(self):
        table = coefficient_table(CFG0, 2, QUARTER)
        assert table[0] == pytest.approx(-2.0, abs=1e-12)
        assert table[1] == pytest.approx(-2.0, abs=1e-12)

    def test_length_bounded_by_block_count(self):
        for n in (2, 3):
            cfg = RayConfig(n, tuple([0] * (n + 1)), 3)
            for d in range(1, n + 1):
                cls = EllipticClass(d, tuple(Fraction(1, p) for p in range(3, 3 + n + 1 - d)))
                for k in range(n + 1):
                    assert len(coefficient_table(cfg, k, cls)) <= d


class TestInterpolationCheck:
    def test_pair(self):
        zeros_ok, value = interpolation_check([2, 1], 2)
        assert zeros_ok and value == 3

    def test_triple(self):
        zeros_ok, value = interpolation_check([3, 2, 1], 3)
        assert zeros_ok and value == 120

    def test_sign_flips_with_position(self):
        _, v_mid = interpolation_check([3, 2, 1], 2)
        assert v_mid == -120
        _, v_low = interpolation_check([3, 2, 1], 1)
        assert v_low == 120

    def test_rejects_duplicates(self):
        with pytest.raises(ValueError):
            interpolation_check([2, 2, 1], 2)

    def test_singleton(self):
        zeros_ok, value = interpolation_check([4], 4)
        assert zeros_ok and value == 1
