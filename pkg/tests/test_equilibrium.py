"""First-order equilibrium, curvature condition, and best-response cross-checks."""

import math

import numpy as np
import pytest

import oracles
from rpfcontest.distributions import Logistic, Normal, StudentT
from rpfcontest.equilibrium import (
    ContestSpec,
    CustomCost,
    LinearUtility,
    PowerCost,
    PowerUtility,
    best_response,
    foc_equilibrium,
    foc_marginal_benefit,
    payoff,
    soc_check,
    verify_equilibrium,
)
from rpfcontest.errors import DomainError, InputFormatError
from rpfcontest.measures import EffortMeasure, dirac

# frozen from tests/oracles.py
E_STAR_K25 = 0.15888828634205346          # phi(Phi^-1(0.75)) / 2
PAYOFF_12 = -1.0671825841854266           # (1 - Phi(Phi^-1(0.7) - 0.2)) - 1.44

QUAD_NORMAL = ContestSpec(k=0.5, V=1.0, cost=PowerCost(1.0, 2.0), noise=Normal())


def test_frozen_values_match_oracle():
    assert oracles.norm_pdf(oracles.norm_quantile(0.75)) / 2 == pytest.approx(E_STAR_K25, abs=1e-14)
    v = (1 - oracles.norm_cdf(oracles.norm_quantile(0.7) - 0.2)) - 1.44
    assert v == pytest.approx(PAYOFF_12, abs=1e-14)


class TestFirstOrderCondition:
    def test_closed_form_anchor_half(self):
        e = foc_equilibrium(QUAD_NORMAL)
        assert e == pytest.approx(1.0 / (2.0 * math.sqrt(2.0 * math.pi)), abs=1e-9)

    def test_quarter_budget_matches_oracle(self):
        spec = ContestSpec(k=0.25, V=1.0, noise=Normal())
        assert foc_equilibrium(spec) == pytest.approx(E_STAR_K25, abs=1e-12)

    def test_residual_within_tolerance(self):
        for k in (0.1, 0.37, 0.8):
            spec = ContestSpec(k=k, V=2.0, cost=PowerCost(0.7, 2.4), noise=Logistic(1.0))
            e = foc_equilibrium(spec)
            assert float(spec.cost.derivative(e)) == pytest.approx(foc_marginal_benefit(spec),
                                                                   abs=1e-10)

    def test_vanishing_prize_vanishing_effort(self):
        efforts = [foc_equilibrium(ContestSpec(k=0.5, V=v, noise=Normal()))
                   for v in (1.0, 1e-3, 1e-6)]
        assert efforts[0] > efforts[1] > efforts[2]
        assert efforts[2] < 1e-6

    def test_effort_increasing_in_prize(self):
        es = [foc_equilibrium(ContestSpec(k=0.3, V=v, noise=Normal())) for v in (0.5, 1.0, 2.0, 4.0)]
        assert all(a < b for a, b in zip(es, es[1:]))

    def test_custom_cost_inversion(self):
        cost = CustomCost(c=lambda e: np.asarray(e) ** 2 + np.asarray(e) ** 3,
                          c_prime=lambda e: 2 * np.asarray(e) + 3 * np.asarray(e) ** 2,
                          c_second=lambda e: 2 + 6 * np.asarray(e))
        spec = ContestSpec(k=0.5, V=1.0, cost=cost, noise=Normal())
        e = foc_equilibrium(spec)
        assert float(cost.derivative(e)) == pytest.approx(foc_marginal_benefit(spec), abs=1e-10)


class TestPayoff:
    def test_dirac_anchor(self):
        spec = ContestSpec(k=0.3, V=1.0, cost=PowerCost(1.0, 2.0), noise=Normal())
        for e_bar in (0.4, 0.25):
            assert payoff(spec, e_bar, dirac(e_bar)) == pytest.approx(0.3 - e_bar**2, abs=1e-10)

    def test_costs_vanish_at_zero_effort(self):
        spec = ContestSpec(k=0.3, V=1.0, noise=Normal())
        assert payoff(spec, 1e-9, dirac(1.0)) >= 0.0

    def test_off_equilibrium_value_matches_oracle(self):
        spec = ContestSpec(k=0.3, V=1.0, cost=PowerCost(1.0, 2.0), noise=Normal())
        assert payoff(spec, 1.2, dirac(1.0)) == pytest.approx(PAYOFF_12, abs=1e-9)


class TestSecondOrderCondition:
    def test_quadratic_normal_passes(self):
        v = soc_check(QUAD_NORMAL)
        assert v.passed
        # c'' = 2 against max |f'| = phi(1)
        assert v.margin == pytest.approx(2.0 - oracles.norm_pdf(1.0), abs=1e-4)

    def test_soft_cost_heavy_prize_fails(self):
        spec = ContestSpec(k=0.5, V=100.0, cost=PowerCost(0.01, 2.0), noise=Normal())
        v = soc_check(spec)
        assert not v.passed
        assert v.margin < 0.0

    def test_custom_cost_margin_from_grid(self):
        cost = CustomCost(c=lambda e: np.asarray(e) ** 2 + np.asarray(e) ** 3,
                          c_prime=lambda e: 2 * np.asarray(e) + 3 * np.asarray(e) ** 2,
                          c_second=lambda e: 2 + 6 * np.asarray(e))
        v = soc_check(ContestSpec(k=0.5, V=1.0, cost=cost, noise=Normal()))
        assert v.passed
        assert v.min_cost_curvature == pytest.approx(2.0, abs=1e-4)


class TestBestResponse:
    def test_returns_to_first_order_point(self):
        e_star = foc_equilibrium(QUAD_NORMAL)
        br = best_response(QUAD_NORMAL, dirac(e_star))
        assert abs(br.effort - e_star) <= 1e-4
        assert not br.at_boundary

    def test_matches_dense_grid_oracle(self):
        spec = ContestSpec(k=0.25, V=1.0, cost=PowerCost(1.0, 2.0), noise=Normal())
        p = dirac(0.1)
        br = best_response(spec, p)
        grid = np.linspace(1e-6, 3.0, 100_001)
        s = 0.1 + float(Normal().quantile(0.75))
        vals = (1.0 - Normal().cdf(s - grid)) - grid**2
        assert br.payoff >= float(vals.max()) - 1e-9
        assert abs(br.effort - float(grid[vals.argmax()])) <= 1e-4

    def test_tiny_prize_reports_boundary(self):
        spec = ContestSpec(k=0.3, V=1e-12, noise=Normal())
        br = best_response(spec, dirac(1.0))
        assert br.at_boundary
        assert br.effort < 1e-6

    def test_budget_not_binding_stays_at_floor(self):
        spec = ContestSpec(k=0.5, V=1.0, noise=Normal())
        thin = EffortMeasure(np.array([1.0]), np.array([0.4]))
        br = best_response(spec, thin)
        assert br.at_boundary
        assert br.effort <= 1e-12
        assert br.payoff == pytest.approx(1.0, abs=1e-9)


class TestVerifyEquilibrium:
    def test_first_order_point_verifies(self):
        e_star = foc_equilibrium(QUAD_NORMAL)
        v = verify_equilibrium(QUAD_NORMAL, e_star)
        assert v.verified
        assert v.equilibrium_payoff == pytest.approx(0.5 - e_star**2, abs=1e-10)

    def test_perturbed_point_fails(self):
        e_star = foc_equilibrium(QUAD_NORMAL)
        assert not verify_equilibrium(QUAD_NORMAL, e_star + 0.05).verified

    def test_uniqueness_probe_on_dense_grid(self):
        e_star = foc_equilibrium(QUAD_NORMAL)
        p = dirac(e_star)
        grid = np.linspace(1e-6, 2.0, 10_001)
        vals = np.asarray(payoff(QUAD_NORMAL, grid, p))
        peak = grid[vals >= vals.max() - 1e-9]
        assert np.all(np.abs(peak - e_star) <= 1e-3)

    def test_foc_argmax_consistency_random(self):
        rng = np.random.default_rng(21)
        noises = [Normal(), Logistic(1.0), StudentT(3.0)]
        accepted = 0
        while accepted < 20:
            spec = ContestSpec(
                k=float(rng.uniform(0.1, 0.9)),
                V=float(rng.uniform(0.3, 3.0)),
                cost=PowerCost(float(rng.uniform(0.5, 4.0)), 2.0),
                utility=LinearUtility() if rng.random() < 0.5 else PowerUtility(float(rng.uniform(0.5, 1.0))),
                noise=noises[int(rng.integers(len(noises)))],
            )
            if not soc_check(spec).passed:
                continue
            accepted += 1
            e_star = foc_equilibrium(spec)
            assert abs(best_response(spec, dirac(e_star)).effort - e_star) <= 1e-4


class TestSpecValidation:
    def test_json_round_trip_with_prize(self):
        spec = ContestSpec(k=0.4, V=2.0, cost=PowerCost(1.5, 2.0),
                           utility=PowerUtility(0.7), noise=StudentT(3.0))
        clone = ContestSpec.from_json('{"k": 0.4, "V": 2.0,'
                                      ' "cost": {"kind": "power", "A": 1.5, "beta": 2.0},'
                                      ' "utility": {"kind": "power", "rho": 0.7},'
                                      ' "noise": {"kind": "student_t", "nu": 3.0}}')
        assert clone.to_dict() == spec.to_dict()

    def test_purse_spec_divides_budget(self):
        spec = ContestSpec.from_dict({"k": 0.25, "B": 1.0})
        assert spec.V == pytest.approx(4.0)

    def test_missing_budget_rejected(self):
        with pytest.raises(InputFormatError):
            ContestSpec.from_dict({"V": 1.0})

    @pytest.mark.parametrize("bad", [
        dict(k=0.0, V=1.0), dict(k=1.0, V=1.0), dict(k=0.5, V=0.0), dict(k=0.5, V=-2.0),
    ])
    def test_bad_parameters(self, bad):
        with pytest.raises(DomainError):
            ContestSpec(**bad)

    def test_power_cost_validation(self):
        with pytest.raises(DomainError):
            PowerCost(A=-1.0)
        with pytest.raises(DomainError):
            PowerCost(beta=1.0)

    def test_power_utility_validation(self):
        with pytest.raises(DomainError):
            PowerUtility(0.0)
        with pytest.raises(DomainError):
            PowerUtility(1.5)

    def test_custom_cost_standard_conditions_enforced(self):
        linear = CustomCost(c=lambda e: np.asarray(e), c_prime=lambda e: np.ones_like(np.asarray(e)),
                            c_second=lambda e: np.zeros_like(np.asarray(e)))
        with pytest.raises(DomainError):
            ContestSpec(k=0.5, V=1.0, cost=linear, noise=Normal())
