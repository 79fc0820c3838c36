from fractions import Fraction

import pytest

from semistab.arith import lcm_all, valuation
from semistab.curves import (
    WeierstrassCurve,
    family_curve,
    minimalize_at_p,
    reduction_class_at_p,
)
from semistab.errors import (
    NotTabulatedError,
    SingularCurveError,
    UnsupportedPrimeError,
)
from semistab.monodromy import (
    MonodromyGroup,
    bad_primes,
    phi_family_at_2,
    phi_family_at_3,
    phi_general_curve,
    phi_tame,
    semistability_degree,
)
from conftest import TAME_PRIME_POOL

G = MonodromyGroup


class TestGroupData:
    def test_orders_match_names(self):
        assert [g.order for g in G] == [1, 2, 3, 4, 6, 12, 24]

    def test_orders_divide_24(self):
        assert all(24 % g.order == 0 for g in G)


class TestPhiAt3:
    @pytest.mark.parametrize("s", [1, 8, 10, 17, 216, -1, 19])
    def test_c4_cases(self, s):
        assert phi_family_at_3(s) is G.C4

    @pytest.mark.parametrize("s", [2, 9, 81, 27 * 2, 3, 4, 5, 27 * 4])
    def test_dic3_cases(self, s):
        assert phi_family_at_3(s) is G.DIC3

    def test_rational_unit_congruence(self):
        # 10/7 = 10 * 7^(-1) = 40 = 4 mod 9
        assert phi_family_at_3(Fraction(10, 7)) is G.DIC3
        # 8/17 = 8 * 8 = 64 = 1 mod 9  (17 = -1 mod 9)
        assert phi_family_at_3(Fraction(8, 17)) is G.C4

    @pytest.mark.parametrize("s", [3**5, 3**7, Fraction(1, 3), Fraction(5, 81)])
    def test_untabulated_valuations(self, s):
        with pytest.raises(NotTabulatedError):
            phi_family_at_3(s)

    def test_singular(self):
        with pytest.raises(SingularCurveError):
            phi_family_at_3(0)


class TestPhiAt2:
    @pytest.mark.parametrize("s", [1, 5, 12, -3, 9])
    def test_c3_cases(self, s):
        assert phi_family_at_2(s) is G.C3

    @pytest.mark.parametrize("s", [3, 7, -1])
    def test_c6_cases(self, s):
        assert phi_family_at_2(s) is G.C6

    @pytest.mark.parametrize("s", [2, 6, -2, 10])
    def test_c2_cases(self, s):
        assert phi_family_at_2(s) is G.C2

    @pytest.mark.parametrize("s", [4, 20, 36])
    def test_sl2f3_cases(self, s):
        assert phi_family_at_2(s) is G.SL2F3

    def test_negative_quarter_unit(self):
        # -4/4 = -1 mod 4, the C3 branch of the v2 = 2 case
        assert phi_family_at_2(-4) is G.C3

    @pytest.mark.parametrize("s", [8, 16, Fraction(1, 2), Fraction(3, 4)])
    def test_untabulated_valuations(self, s):
        with pytest.raises(NotTabulatedError):
            phi_family_at_2(s)


class TestPhiTame:
    def test_family_order_formula(self):
        assert phi_tame(family_curve(5), 5) is G.C6
        assert phi_tame(family_curve(7**3), 7) is G.C2
        assert phi_tame(family_curve(7**2), 7) is G.C3

    def test_good_after_minimalization(self):
        minimal, _ = minimalize_at_p(family_curve(5**6), 5)
        assert phi_tame(minimal, 5) is G.C1

    def test_multiplicative_is_trivial(self):
        assert phi_tame(WeierstrassCurve(0, 0, 0, -1, 1), 23) is G.C1

    @pytest.mark.parametrize("p", [2, 3])
    def test_wild_primes_rejected(self, p):
        with pytest.raises(UnsupportedPrimeError):
            phi_tame(family_curve(1), p)

    def test_degree_report_matches_curve_route(self, rng, tabulated_s):
        # The batch path uses a closed form at tame primes; check it against
        # minimalizing the actual curve and applying the tame rule.
        for _ in range(300):
            s = tabulated_s(rng)
            report = semistability_degree(s)
            for entry in report.locals:
                if entry.p < 5:
                    continue
                shift = 6 * (int(valuation(s, entry.p)) // 6)
                curve = family_curve(s / Fraction(entry.p) ** shift)
                assert entry.group is phi_tame(curve, entry.p)

    def test_trivial_iff_good_or_multiplicative(self, rng):
        for _ in range(300):
            p = rng.choice(TAME_PRIME_POOL)
            k = rng.randrange(0, 6)
            unit = rng.randint(1, 500)
            while unit % p == 0:
                unit = rng.randint(1, 500)
            curve = family_curve(unit * p**k)
            klass = reduction_class_at_p(curve, p)
            trivial = phi_tame(curve, p) is G.C1
            assert trivial == (klass in ("good", "multiplicative"))


class TestSemistabilityDegree:
    def test_maximal_example(self):
        report = semistability_degree(4)
        assert report.degree == 24
        assert report.local_at(2).group is G.SL2F3
        assert report.local_at(3).group is G.DIC3
        assert report.divides_bound

    def test_s1(self):
        report = semistability_degree(1)
        assert report.degree == 12
        assert report.local_at(2).group is G.C3
        assert report.local_at(3).group is G.C4

    def test_s2(self):
        report = semistability_degree(2)
        assert report.degree == 12
        assert report.local_at(2).group is G.C2
        assert report.local_at(3).group is G.DIC3

    def test_degree_is_lcm_of_local_orders(self):
        report = semistability_degree(Fraction(5, 7))
        assert report.degree == lcm_all(
            [entry.group.order for entry in report.locals]
        )
        assert {entry.p for entry in report.locals} == {2, 3, 5, 7}

    def test_tame_primes_with_sixth_power_valuation_are_good(self):
        report = semistability_degree(5**6)
        assert report.local_at(5) is None
        assert 5 not in bad_primes(Fraction(5**6))

    def test_not_tabulated_propagates(self):
        with pytest.raises(NotTabulatedError):
            semistability_degree(8)

    def test_singular(self):
        with pytest.raises(SingularCurveError):
            semistability_degree(0)

    def test_divisibility_random(self, rng, tabulated_s):
        for _ in range(2000):
            report = semistability_degree(tabulated_s(rng))
            assert 24 % report.degree == 0
            assert report.degree > 1  # Phi at 3 is never trivial here

    def test_orders_land_in_divisor_set(self, rng, tabulated_s):
        allowed = {1, 2, 3, 4, 6, 12, 24}
        for _ in range(500):
            report = semistability_degree(tabulated_s(rng))
            assert all(e.group.order in allowed for e in report.locals)

    def test_sextic_twist_invariance(self, rng, tabulated_s):
        units = [u for u in TAME_PRIME_POOL] + [25, 35, 49, 55]
        for _ in range(300):
            s = tabulated_s(rng)
            u = rng.choice(units)
            base = semistability_degree(s)
            twisted = semistability_degree(s * Fraction(u) ** 6)
            assert twisted.degree == base.degree
            assert twisted.locals == base.locals

    def test_empty_lcm_convention(self):
        assert lcm_all([]) == 1


class TestPhiGeneralCurve:
    def test_tame_good(self):
        result = phi_general_curve(WeierstrassCurve(0, 0, 0, -1, 0), 5)
        assert result.group is G.C1
        assert result.provenance == "good-reduction"

    def test_family_dispatch_consistency(self):
        result = phi_general_curve(family_curve(4), 3)
        assert result.group is phi_family_at_3(4)
        assert result.provenance == "family-table-3"
        result2 = phi_general_curve(family_curve(4), 2)
        assert result2.group is phi_family_at_2(4)

    def test_non_family_bad_at_2_refused(self):
        curve = WeierstrassCurve(0, 0, 0, -1, 0)  # delta = 64
        with pytest.raises(NotTabulatedError):
            phi_general_curve(curve, 2)

    def test_tame_provenance(self):
        result = phi_general_curve(family_curve(5), 5)
        assert result.provenance == "tame-rule"
        assert result.group is G.C6
