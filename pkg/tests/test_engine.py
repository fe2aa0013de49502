"""Cutoff solving, success-function evaluation, and translation recovery."""

import numpy as np
import pytest

import oracles
from rpfcontest.distributions import Logistic, Normal, StudentT
from rpfcontest.engine import (
    AdditiveFamily,
    WarpedFamily,
    clearing_residual,
    csf_eval,
    log_warped,
    recover_translation,
    solve_cutoff,
    validate_family,
)
from rpfcontest.errors import BudgetNotBindingError, DomainError
from rpfcontest.measures import EffortMeasure, dirac

# frozen from tests/oracles.py
MIX_CUTOFF = 2.0932410833695028        # two-atom normal mixture, k = 0.3
MIX_W1 = 0.13714398163768604           # 1 - Phi(MIX_CUTOFF - 1)
RESID_AT_2 = 0.029327626965728548      # residual of that mixture at s = 2
NORM_Q70 = 0.5244005127080407

MIX = EffortMeasure.from_atoms([(1.0, 0.5), (2.0, 0.5)])
NORMAL_FAM = AdditiveFamily(Normal())


def test_frozen_values_match_oracle():
    s = oracles.mix_cutoff_normal([1.0, 2.0], [0.5, 0.5], 0.3)
    assert s == pytest.approx(MIX_CUTOFF, abs=1e-13)
    assert 1.0 - oracles.norm_cdf(s - 1.0) == pytest.approx(MIX_W1, abs=1e-13)
    assert 0.5 * (1 - oracles.norm_cdf(1.0)) + 0.5 * 0.5 - 0.3 == pytest.approx(RESID_AT_2, abs=1e-14)
    assert oracles.norm_quantile(0.7) == pytest.approx(NORM_Q70, abs=1e-13)


class TestClearingResidual:
    def test_dirac_clearing_is_root(self):
        s = 2.0 + NORM_Q70
        assert clearing_residual(NORMAL_FAM, dirac(2.0), s, 0.3) == pytest.approx(0.0, abs=1e-12)

    def test_low_threshold_limit(self):
        assert clearing_residual(NORMAL_FAM, MIX, -1e6, 0.3) == pytest.approx(0.7, abs=1e-12)

    def test_high_threshold_limit(self):
        assert clearing_residual(NORMAL_FAM, MIX, 1e6, 0.3) == pytest.approx(-0.3, abs=1e-12)

    def test_mixture_residual_matches_oracle(self):
        assert clearing_residual(NORMAL_FAM, MIX, 2.0, 0.3) == pytest.approx(RESID_AT_2, abs=1e-12)

    def test_strictly_decreasing_in_s(self):
        s = np.linspace(-3, 6, 40)
        vals = [clearing_residual(NORMAL_FAM, MIX, si, 0.3) for si in s]
        assert all(a > b for a, b in zip(vals, vals[1:]))

    def test_mass_not_exceeding_budget_rejected(self):
        thin = EffortMeasure(np.array([1.0]), np.array([0.25]))
        with pytest.raises(BudgetNotBindingError):
            clearing_residual(NORMAL_FAM, thin, 0.0, 0.3)


class TestSolveCutoff:
    @pytest.mark.parametrize("e_bar,k", [(1.0, 0.3), (2.0, 0.5), (0.2, 0.1), (7.0, 0.9)])
    def test_dirac_closed_form(self, e_bar, k):
        res = solve_cutoff(NORMAL_FAM, dirac(e_bar), k)
        assert res.s == pytest.approx(e_bar + Normal().quantile(1.0 - k), abs=1e-9)
        assert abs(res.residual) <= 1e-12

    def test_mixture_matches_oracle(self):
        res = solve_cutoff(NORMAL_FAM, MIX, 0.3)
        assert res.s == pytest.approx(MIX_CUTOFF, abs=1e-9)
        assert abs(res.residual) <= 1e-12
        assert res.iterations > 0

    def test_additive_shift_identity_random(self):
        rng = np.random.default_rng(11)
        for _ in range(100):
            n = rng.integers(1, 5)
            p = EffortMeasure(np.exp(rng.uniform(-2, 2, n)), rng.dirichlet(np.ones(n)) * 0.9)
            a = float(np.exp(rng.uniform(-1, 2)))
            k = float(rng.uniform(0.05, 0.85))
            s0 = solve_cutoff(NORMAL_FAM, p, k).s
            s1 = solve_cutoff(NORMAL_FAM, p.right_shift(a), k).s
            assert abs(s1 - s0 - a) <= 1e-9

    def test_cutoff_monotone_under_domination(self):
        rng = np.random.default_rng(4)
        for _ in range(50):
            n = rng.integers(1, 5)
            locs = np.exp(rng.uniform(-2, 2, n))
            masses = rng.dirichlet(np.ones(n)) * 0.8
            p = EffortMeasure(locs, masses)
            moved = EffortMeasure(locs + rng.uniform(0.01, 2.0, n), masses)
            k = float(rng.uniform(0.1, 0.7))
            assert solve_cutoff(NORMAL_FAM, moved, k).s >= solve_cutoff(NORMAL_FAM, p, k).s - 1e-10

    def test_extreme_budgets_still_bracket(self):
        for k in (0.005, 0.99):
            for fam in (NORMAL_FAM, AdditiveFamily(StudentT(1.0))):
                res = solve_cutoff(fam, MIX, k)
                assert abs(res.residual) <= 1e-10

    def test_segment_measures_clear(self):
        p = EffortMeasure.uniform(0.5, 4.0, mass=0.9, n=513)
        res = solve_cutoff(NORMAL_FAM, p, 0.4)
        assert abs(res.residual) <= 1e-12

    def test_result_serializes(self):
        d = solve_cutoff(NORMAL_FAM, MIX, 0.3).to_dict()
        assert set(d) == {"s", "residual", "iterations"}


class TestCsfEval:
    def test_dirac_evaluates_to_budget(self):
        for e_bar, k in [(1.0, 0.3), (3.3, 0.62), (0.4, 0.05)]:
            assert csf_eval(NORMAL_FAM, dirac(e_bar), k, e_bar) == pytest.approx(k, abs=1e-10)

    def test_everyone_wins_when_budget_covers_mass(self):
        thin = EffortMeasure(np.array([1.0]), np.array([0.25]))
        assert csf_eval(NORMAL_FAM, thin, 0.3, 0.01) == 1.0
        assert np.all(csf_eval(NORMAL_FAM, thin, 0.3, np.array([0.5, 5.0])) == 1.0)

    def test_mixture_value_matches_oracle(self):
        w1 = csf_eval(NORMAL_FAM, MIX, 0.3, 1.0)
        assert w1 == pytest.approx(MIX_W1, abs=1e-9)
        w2 = csf_eval(NORMAL_FAM, MIX, 0.3, 2.0)
        assert 0.5 * w1 + 0.5 * w2 == pytest.approx(0.3, abs=1e-10)

    def test_effort_must_be_positive(self):
        with pytest.raises(DomainError):
            csf_eval(NORMAL_FAM, MIX, 0.3, 0.0)
        with pytest.raises(DomainError):
            csf_eval(NORMAL_FAM, MIX, 0.3, np.array([1.0, -2.0]))

    def test_strictly_increasing_and_limits_to_one(self):
        e = np.array([0.5, 1.0, 2.0, 3.5, 5.0, 7.0])
        w = csf_eval(NORMAL_FAM, dirac(1.0), 0.3, e)
        assert np.all(np.diff(w) > 0)
        assert csf_eval(NORMAL_FAM, dirac(1.0), 0.3, 40.0) > 1.0 - 1e-9

    def test_market_clearing_random_spot(self):
        rng = np.random.default_rng(2)
        fams = [NORMAL_FAM, AdditiveFamily(Logistic(1.0)), AdditiveFamily(StudentT(3.0)),
                log_warped(Normal())]
        for i in range(200):
            fam = fams[i % len(fams)]
            n = rng.integers(1, 5)
            p = EffortMeasure(np.exp(rng.uniform(-2, 2, n)), rng.dirichlet(np.ones(n)))
            k = float(rng.uniform(0.05, 0.9))
            integral = p.integrate(lambda e: csf_eval(fam, p, k, e))
            assert abs(integral - k) <= 1e-8

    def test_range_covers_open_interval(self):
        # every target probability is reached by scaling the dirac mass
        # (above k) or escalating a dirac opponent (below k)
        e0, k = 1.0, 0.3
        noise = Normal()
        for w in np.linspace(0.31, 0.99, 5):
            p = dirac(e0).scale(k / w)
            assert csf_eval(NORMAL_FAM, p, k, e0) == pytest.approx(w, abs=1e-9)
        for w in np.linspace(0.01, 0.29, 5):
            e_bar = e0 + float(noise.quantile(1.0 - w)) - float(noise.quantile(1.0 - k))
            assert csf_eval(NORMAL_FAM, dirac(e_bar), k, e0) == pytest.approx(w, abs=1e-9)


class TestWarpedFamilies:
    def test_log_warp_location(self):
        fam = log_warped(Normal())
        assert fam.location(np.e) == pytest.approx(1.0)

    def test_log_warp_dirac_cutoff(self):
        res = solve_cutoff(log_warped(Normal()), dirac(2.0), 0.3)
        assert res.s == pytest.approx(np.log(2.0) + NORM_Q70, abs=1e-9)

    def test_validate_passes_log_warp(self):
        assert validate_family(log_warped(Normal())) == []

    def test_validate_warns_on_bounded_warp(self):
        fam = WarpedFamily(Normal(), np.arctan, description="bounded")
        with pytest.warns(UserWarning):
            msgs = validate_family(fam)
        assert msgs

    def test_validate_warns_on_nonmonotone_warp(self):
        fam = WarpedFamily(Normal(), np.sin, description="wiggly")
        with pytest.warns(UserWarning):
            msgs = validate_family(fam)
        assert msgs


class TestRecoverTranslation:
    def test_identical_representations(self):
        assert recover_translation(Normal(), Normal(), 0.4) == pytest.approx(0.0, abs=1e-12)

    def test_shifted_pair_recovers_offset(self):
        f1 = Normal()
        f2 = f1.shift(1.5)
        assert recover_translation(f1, f2, 0.4) == pytest.approx(1.5, abs=1e-12)

    def test_different_families_need_csf_verification(self):
        # same 0.5-quantile, so the recovered offset is 0, yet the success
        # functions disagree: the offset alone proves nothing
        f1, f2 = Normal(), Logistic(1.0)
        assert recover_translation(f1, f2, 0.5) == pytest.approx(0.0, abs=1e-12)
        w1 = csf_eval(AdditiveFamily(f1), MIX, 0.3, 1.0)
        w2 = csf_eval(AdditiveFamily(f2), MIX, 0.3, 1.0)
        assert abs(w1 - w2) > 1e-3
