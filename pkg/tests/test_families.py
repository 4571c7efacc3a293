import itertools
from fractions import Fraction

import pytest

from gradedlimits.families import (
    BlockSchedule,
    artin_tau_family,
    check_graded,
    corrupted_sigma_family,
    family_to_semigroup,
    frac_ceil,
    nilpair_sigma_family,
    perturbed_power_family,
    power_family,
    saturation_family,
    symbolic_family,
    valuation_family,
    valuation_gens,
)
from gradedlimits.monomial import MonomialIdeal, max_ideal_power
from gradedlimits.semigroup import check_level_containments


SCHEDULE = BlockSchedule.default(210)


class TestSchedule:
    def test_default_breakpoints(self):
        assert SCHEDULE.breakpoints == (2, 6, 26, 210)

    def test_sigma_values(self):
        assert SCHEDULE.sigma(1) == 1
        assert [SCHEDULE.sigma(n) for n in (2, 5, 6, 25, 26, 209, 210)] == \
            [1, 1, 3, 3, 13, 13, 105]

    def test_sigma_constraints(self):
        for n in range(2, SCHEDULE.limit + 1):
            s = SCHEDULE.sigma(n)
            assert 0 < s <= n / 2
        for n in range(1, SCHEDULE.limit):
            assert SCHEDULE.sigma(n) <= SCHEDULE.sigma(n + 1)

    def test_invalid_breakpoints(self):
        with pytest.raises(ValueError):
            BlockSchedule((4, 10))
        with pytest.raises(ValueError):
            BlockSchedule((2, 3))
        with pytest.raises(ValueError):
            BlockSchedule((2, 4))  # needs > 2^1 * 2

    def test_out_of_range(self):
        with pytest.raises(ValueError, match="covers"):
            SCHEDULE.sigma(SCHEDULE.limit + 1)

    def test_tau_alternates_by_block(self):
        bp = SCHEDULE.breakpoints
        for j in range(len(bp) - 1):
            block = range(bp[j], bp[j + 1])
            vals = {SCHEDULE.tau(n) for n in block}
            assert vals == {(j + 1) % 2}

    def test_sigma_ratio_visits_half_and_zero(self):
        # on each residue class the ratio sigma(n)/n gets within eps of 1/2
        # and of 0 somewhere below the horizon
        eps = Fraction(1, 25)
        horizon = SCHEDULE.limit
        for r in range(1, 5):
            for a in range(r):
                ratios = [Fraction(SCHEDULE.sigma(n), n)
                          for n in range(2, horizon + 1) if n % r == a]
                assert any(abs(x - Fraction(1, 2)) < eps for x in ratios)
                assert any(x < eps for x in ratios)


class TestBuilders:
    def test_power_family(self):
        f = power_family(MonomialIdeal(2, ((2, 0), (0, 3))))
        assert f.ideal(0).is_unit()
        assert f.ideal(2) == MonomialIdeal(2, ((2, 0), (0, 3))) ** 2
        assert f.c == 4 and f.beta == 8

    def test_valuation_gens_fixture(self):
        assert valuation_gens((Fraction(1), Fraction(2)), 3) == ((0, 2), (1, 1), (3, 0))

    def test_valuation_halfspace_description(self):
        lams = (Fraction(1), Fraction(2))
        f = valuation_family(lams)
        for n in range(1, 21):
            i = f.ideal(n)
            for pt in itertools.product(range(2 * n + 2), repeat=2):
                member = sum(l * a for l, a in zip(lams, pt)) >= n
                assert i.contains(pt) == member

    def test_valuation_rejects_floats_and_small_weights(self):
        with pytest.raises(ValueError, match="rational"):
            valuation_family((1.5, 2))
        with pytest.raises(ValueError, match="at least 1"):
            valuation_family((Fraction(1, 2), 1))

    def test_valuation_rational_weights(self):
        f = valuation_family(("3/2", 2))
        assert f.ideal(3) == MonomialIdeal(2, ((2, 0), (0, 2), (1, 1)))

    def test_nilpair_sigma_level(self):
        f = nilpair_sigma_family(1, SCHEDULE)
        pair = f.ideal(6)
        assert pair.base == max_ideal_power(1, 6)
        assert pair.socle == max_ideal_power(1, 3)

    def test_nilpair_lengths(self):
        f = nilpair_sigma_family(1, SCHEDULE)
        assert Fraction(f.length(26), 26) == Fraction(3, 2)
        assert Fraction(f.length(209), 209) == 2 - Fraction(13, 209)
        d2 = nilpair_sigma_family(2, SCHEDULE)
        from math import comb
        assert d2.length(10) == comb(11, 2) + comb(10 - SCHEDULE.sigma(10) + 1, 2)

    def test_perturbed_agrees_with_nilpair(self):
        a = nilpair_sigma_family(3, SCHEDULE)
        b = perturbed_power_family(3, SCHEDULE)
        for n in (0, 1, 2, 7, 30, 100):
            assert a.ideal(n) == b.ideal(n)

    def test_artin_lengths(self):
        f = artin_tau_family(2, SCHEDULE)
        assert f.length(0) == 0
        for n in (1, 6, 210):
            assert f.length(n) == 2
        for n in (2, 5, 26, 209):
            assert f.length(n) == 3

    def test_saturation_family(self):
        f = saturation_family(MonomialIdeal(2, ((2, 0), (1, 1))))
        assert f.ideal(3) == MonomialIdeal(2, ((3, 0),))

    def test_symbolic_family(self):
        f = symbolic_family(MonomialIdeal(2, ((2, 0), (1, 1))),
                            MonomialIdeal(2, ((1, 0), (0, 1))))
        # I^2 = x^2 (x,y)^2 saturates to the bare (x^2)
        assert f.ideal(2) == MonomialIdeal(2, ((2, 0),))


class TestCheckGraded:
    def test_power_family_passes(self):
        report = check_graded(power_family(max_ideal_power(2, 1)), 20)
        assert report.ok and report.checked_pairs == sum(t // 2 for t in range(2, 21))

    def test_builtins_pass(self):
        fams = [power_family(MonomialIdeal(2, ((2, 0), (0, 3)))),
                valuation_family((1, 2)),
                saturation_family(MonomialIdeal(2, ((2, 0), (1, 1)))),
                symbolic_family(MonomialIdeal(2, ((2, 0), (1, 1))),
                                MonomialIdeal(2, ((1, 0), (0, 1)))),
                nilpair_sigma_family(1, SCHEDULE),
                perturbed_power_family(1, SCHEDULE),
                artin_tau_family(2, SCHEDULE)]
        for fam in fams:
            assert check_graded(fam, 40).ok, fam.name

    def test_nilpair_sigma_deep(self):
        assert check_graded(nilpair_sigma_family(1, SCHEDULE), 210).ok

    def test_corrupted_fails_with_witness(self):
        report = check_graded(corrupted_sigma_family(1), 30)
        assert not report.ok
        a, b, witness = report.violations[0]
        assert "escapes" in witness and a + b <= 30


class TestSemigroupBridge:
    def test_power_of_max_ideal(self):
        f = power_family(max_ideal_power(2, 1))
        s, report = family_to_semigroup(f, 12)
        assert report.ok
        assert len(s.level(3)) == report.rows[2][3]

    def test_valuation_identity(self):
        f = valuation_family((1, 2))
        s, report = family_to_semigroup(f, 50)
        assert report.beta == 2
        assert report.ok
        # the levels really form a graded semigroup
        assert check_level_containments(s, 16) == []

    def test_corrupted_beta_flags_failure(self):
        # the complement of (x^2, y^3)^n reaches degree ~2n, so a unit box
        # bound undercounts and the identity must break
        f = power_family(MonomialIdeal(2, ((2, 0), (0, 3))))
        _, report = family_to_semigroup(f, 12, beta=1)
        assert not report.ok

    def test_requires_primary_levels(self):
        f = saturation_family(MonomialIdeal(2, ((2, 0), (1, 1))))
        with pytest.raises(ValueError, match="primary"):
            family_to_semigroup(f, 5, beta=2)

    def test_scaled_counts_approach_limit(self):
        # the bridge semigroup counts recover the length asymptotics:
        # box simplex count minus member count equals the colength
        f = valuation_family((1, 2))
        s, report = family_to_semigroup(f, 40)
        n, ell, box, members, ok = report.rows[-1]
        assert ok and ell == box - members


class TestFracCeil:
    def test_values(self):
        assert frac_ceil(Fraction(7, 2)) == 4
        assert frac_ceil(Fraction(-7, 2)) == -3
        assert frac_ceil(Fraction(4)) == 4
