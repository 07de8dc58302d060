import itertools
import random

import pytest

from orbtorsion.lie import (
    CapExceeded,
    EllipticClass,
    RayConfig,
    SignedPermutation,
    even_signed_permutations,
    half_sum_roots,
    spectral_shift,
    spectral_shifts,
    weight_vector,
    weyl_dimension,
    weyl_order,
)


def nonincreasing_taus(n, top):
    return [t for t in itertools.product(range(top + 1), repeat=n + 1)
            if all(t[i] >= t[i + 1] for i in range(n))]


class TestRayConfig:
    def test_rejects_increasing_tau(self):
        with pytest.raises(ValueError):
            RayConfig(2, (0, 1, 0))

    def test_rejects_bad_rank(self):
        with pytest.raises(ValueError):
            RayConfig(0, (0,))

    def test_rejects_wrong_tau_length(self):
        with pytest.raises(ValueError):
            RayConfig(2, (1, 0))


class TestHalfSum:
    def test_values(self):
        assert half_sum_roots(2) == (1, 0)
        assert half_sum_roots(1) == (0,)
        assert half_sum_roots(4) == (3, 2, 1, 0)

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            half_sum_roots(0)


class TestSpectralShift:
    def test_direct_substitution(self):
        assert spectral_shift(RayConfig(2, (0, 0, 0), 5), 1) == 6
        assert spectral_shifts(RayConfig(2, (0, 0, 0), 0)) == (2, 1, 0)
        assert spectral_shift(RayConfig(3, (2, 1, 1, 0), 4), 2) == 6

    def test_strictly_decreasing(self):
        for n in (1, 2, 3):
            for tau in nonincreasing_taus(n, 2):
                for m in range(4):
                    shifts = spectral_shifts(RayConfig(n, tau, m))
                    assert all(a > b for a, b in zip(shifts, shifts[1:]))

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            spectral_shift(RayConfig(2, (0, 0, 0)), 3)


class TestWeightVector:
    def test_pinned(self):
        # both routes through the definition agree with the shift list minus one
        assert weight_vector(RayConfig(2, (0, 0, 0), 3), 1) == (5, 3)
        assert weight_vector(RayConfig(2, (0, 0, 0), 0), 0) == (1, 0)
        assert weight_vector(RayConfig(2, (0, 0, 0), 0), 2) == (2, 1)

    def test_multiset_property(self):
        for n in (1, 2, 3, 4):
            for tau in nonincreasing_taus(n, 2):
                for m in range(7):
                    cfg = RayConfig(n, tau, m)
                    shifts = spectral_shifts(cfg)
                    for k in range(n + 1):
                        expected = sorted(shifts[:k] + shifts[k + 1:])
                        assert sorted(weight_vector(cfg, k)) == expected


class TestWeylGroup:
    @pytest.mark.parametrize("n,count", [(1, 1), (2, 4), (3, 24)])
    def test_counts(self, n, count):
        elems = list(even_signed_permutations(n))
        assert len(elems) == count == weyl_order(n)
        assert len({(s.perm, s.signs) for s in elems}) == count

    def test_cap(self, monkeypatch):
        monkeypatch.setenv("TORSION_WEYL_CAP", "2")
        with pytest.raises(CapExceeded):
            list(even_signed_permutations(3))

    def test_invariants(self):
        for s in even_signed_permutations(3):
            assert s.signs.count(-1) % 2 == 0
            prod = 1
            for x in s.signs:
                prod *= x
            assert prod == 1

    def test_rejects_odd_flip_count(self):
        with pytest.raises(ValueError):
            SignedPermutation((0, 1), (1, -1))

    def test_apply_examples(self):
        ident = SignedPermutation.identity(2)
        assert ident.apply((5, 3)) == (5, 3)
        swap = SignedPermutation((1, 0), (1, 1))
        assert swap.apply((5, 3)) == (3, 5)
        assert swap.det == -1
        flip = SignedPermutation((0, 1), (-1, -1))
        assert flip.apply((5, 3)) == (-5, -3)
        assert flip.det == 1

    def test_apply_dimension_mismatch(self):
        with pytest.raises(ValueError):
            SignedPermutation.identity(2).apply((1, 2, 3))

    def test_inverse_roundtrip(self):
        w = (7, -2, 5)
        for s in even_signed_permutations(3):
            assert s.inverse().apply(s.apply(w)) == w

    def test_det_homomorphism_on_sampled_pairs(self):
        elems = list(even_signed_permutations(3))
        rng = random.Random(7)
        w = (3, 1, -4)
        for _ in range(50):
            s, t = rng.choice(elems), rng.choice(elems)
            st = s.compose(t)
            assert st.det == s.det * t.det
            assert st.apply(w) == s.apply(t.apply(w))


class TestWeylDimension:
    def test_trivial(self):
        assert weyl_dimension(RayConfig(2, (0, 0, 0), 0)) == 1

    def test_against_reduced_closed_form(self):
        # hand reduction of the rank-3 product for tau = 0:
        # dim = (2m+1)(2m+2)(2m+3)/6
        for m in range(8):
            expected = (2 * m + 1) * (2 * m + 2) * (2 * m + 3) // 6
            assert weyl_dimension(RayConfig(2, (0, 0, 0), m)) == expected
        assert weyl_dimension(RayConfig(2, (0, 0, 0), 1)) == 10
        assert weyl_dimension(RayConfig(2, (0, 0, 0), 2)) == 35

    def test_strictly_increasing_in_m(self):
        for n in (1, 2, 3):
            for tau in nonincreasing_taus(n, 1):
                dims = [weyl_dimension(RayConfig(n, tau, m)) for m in range(6)]
                assert all(a < b for a, b in zip(dims, dims[1:]))


class TestEllipticClass:
    def test_angle_normalisation(self):
        from fractions import Fraction
        cls = EllipticClass(1, (Fraction(5, 4), Fraction(1, 2)))
        assert cls.angles == (Fraction(1, 4), Fraction(1, 2))
        assert cls.residue_period() == 4

    def test_rejects_zero_angle(self):
        from fractions import Fraction
        with pytest.raises(ValueError):
            EllipticClass(1, (Fraction(2, 1),))

    def test_rejects_duplicates(self):
        from fractions import Fraction
        with pytest.raises(ValueError):
            EllipticClass(1, (Fraction(1, 4), Fraction(5, 4)))
