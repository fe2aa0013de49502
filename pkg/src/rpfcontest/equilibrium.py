"""Symmetric equilibrium of the homogeneous contest under additive noise.

Agents pay a strictly convex effort cost, win a prize V with probability
W(e, p), and value it through a concave utility with u(0) = 0.  With an
additive random-performance success function the symmetric equilibrium is a
point mass at the effort where marginal cost equals the noise density at
the clearing quantile times the prize utility:

    c'(e*) = f(F^{-1}(1 - k)) u(V).

The second-order (global concavity) condition requires the cost curvature
to dominate the steepest descent of the noise density scaled by u(V); when
it holds, the first-order effort is the unique best response to itself.
The module computes the first-order point, samples the curvature condition,
and independently maximizes the payoff by grid search plus golden-section
refinement so the two routes can be cross-checked.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np

from .distributions import NoiseDistribution, from_spec as noise_from_spec
from .engine import AdditiveFamily, csf_eval, solve_cutoff
from .errors import DomainError, InputFormatError
from .measures import EffortMeasure

ArrayLike = Union[float, np.ndarray]

#: Efforts below this are treated as staying out (the effort space is open at 0).
PARTICIPATION_FLOOR = 1e-12

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
_INV_PHI2 = (3.0 - math.sqrt(5.0)) / 2.0


# ----------------------------------------------------------------------
# cost and utility primitives
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class PowerCost:
    """c(e) = A e^beta with A > 0, beta > 1."""

    A: float = 1.0
    beta: float = 2.0

    def __post_init__(self):
        if not self.A > 0:
            raise DomainError(f"cost scale A must be positive, got {self.A}")
        if not self.beta > 1:
            raise DomainError(f"cost exponent must exceed 1, got {self.beta}")

    def value(self, e: ArrayLike) -> ArrayLike:
        return self.A * np.asarray(e, dtype=float) ** self.beta if not np.isscalar(e) \
            else self.A * e ** self.beta

    def derivative(self, e: ArrayLike) -> ArrayLike:
        return self.A * self.beta * np.asarray(e, dtype=float) ** (self.beta - 1.0)

    def second_derivative(self, e: ArrayLike) -> ArrayLike:
        b = self.beta
        return self.A * b * (b - 1.0) * np.asarray(e, dtype=float) ** (b - 2.0)

    def invert_derivative(self, y: float) -> float:
        """Effort with c'(e) = y (closed form)."""
        if not y > 0:
            raise DomainError("marginal cost target must be positive")
        return float((y / (self.A * self.beta)) ** (1.0 / (self.beta - 1.0)))

    def spec(self) -> dict:
        return {"kind": "power", "A": self.A, "beta": self.beta}


@dataclass(frozen=True)
class CustomCost:
    """User-supplied (c, c', c'') callables; standard conditions sample-checked."""

    c: Callable[[ArrayLike], ArrayLike]
    c_prime: Callable[[ArrayLike], ArrayLike]
    c_second: Callable[[ArrayLike], ArrayLike]

    def value(self, e):
        return self.c(e)

    def derivative(self, e):
        return self.c_prime(e)

    def second_derivative(self, e):
        return self.c_second(e)

    def invert_derivative(self, y: float) -> float:
        """Solve c'(e) = y by bisection with a doubling upper bracket."""
        if not y > 0:
            raise DomainError("marginal cost target must be positive")
        hi = 1.0
        for _ in range(200):
            if float(self.c_prime(hi)) >= y:
                break
            hi *= 2.0
        lo = 0.0
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if mid <= lo or mid >= hi:
                break
            if float(self.c_prime(mid)) < y:
                lo = mid
            else:
                hi = mid
        return 0.5 * (lo + hi)

    def validate(self, e_grid=None) -> None:
        e = np.logspace(-8, 2, 60) if e_grid is None else np.asarray(e_grid, dtype=float)
        if abs(float(self.c(e[0]))) > 1e-4 or abs(float(self.c_prime(e[0]))) > 1e-4:
            raise DomainError("cost and marginal cost must vanish as effort tends to 0")
        if np.any(np.asarray(self.c_prime(e), dtype=float) <= 0):
            raise DomainError("marginal cost must be strictly positive")
        if np.any(np.asarray(self.c_second(e), dtype=float) <= 0):
            raise DomainError("cost must be strictly convex")

    def spec(self) -> dict:
        return {"kind": "custom"}


CostFunction = Union[PowerCost, CustomCost]


@dataclass(frozen=True)
class LinearUtility:
    """Risk-neutral: u(V) = V."""

    def value(self, v: ArrayLike) -> ArrayLike:
        return v

    def spec(self) -> dict:
        return {"kind": "linear"}


@dataclass(frozen=True)
class PowerUtility:
    """u(V) = V^rho with rho in (0, 1] (concave, u(0) = 0)."""

    rho: float

    def __post_init__(self):
        if not 0.0 < self.rho <= 1.0:
            raise DomainError(f"risk-aversion exponent must lie in (0,1], got {self.rho}")

    def value(self, v: ArrayLike) -> ArrayLike:
        return np.asarray(v, dtype=float) ** self.rho if not np.isscalar(v) else v ** self.rho

    def spec(self) -> dict:
        return {"kind": "power", "rho": self.rho}


Utility = Union[LinearUtility, PowerUtility]


# ----------------------------------------------------------------------
# contest specification
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class ContestSpec:
    """Budget fraction, prize, cost, utility, and additive noise."""

    k: float
    V: float
    cost: CostFunction = PowerCost()
    utility: Utility = LinearUtility()
    noise: NoiseDistribution = None

    def __post_init__(self):
        if not 0.0 < self.k < 1.0:
            raise DomainError(f"budget fraction k must lie in (0,1), got {self.k}")
        if not self.V > 0:
            raise DomainError(f"prize must be positive, got {self.V}")
        if self.noise is None:
            from .distributions import Normal
            object.__setattr__(self, "noise", Normal())
        if isinstance(self.cost, CustomCost):
            self.cost.validate()

    @staticmethod
    def with_purse(B: float, k: float, **kwargs) -> "ContestSpec":
        """Fix the total purse B and pay V = B / k to each winner."""
        if not B > 0:
            raise DomainError(f"purse must be positive, got {B}")
        return ContestSpec(k=k, V=B / k, **kwargs)

    @property
    def family(self) -> AdditiveFamily:
        return AdditiveFamily(self.noise)

    def prize_utility(self) -> float:
        return float(self.utility.value(self.V))

    def to_dict(self) -> dict:
        return {"k": self.k, "V": self.V, "cost": self.cost.spec(),
                "utility": self.utility.spec(), "noise": self.noise.spec()}

    @staticmethod
    def from_dict(d: dict) -> "ContestSpec":
        try:
            cost = cost_from_spec(d.get("cost", {"kind": "power"}))
            util = utility_from_spec(d.get("utility", {"kind": "linear"}))
            noise = noise_from_spec(d.get("noise", {"kind": "normal"}))
            k = float(d["k"])
            if "V" in d:
                return ContestSpec(k=k, V=float(d["V"]), cost=cost, utility=util, noise=noise)
            return ContestSpec.with_purse(float(d["B"]), k, cost=cost, utility=util, noise=noise)
        except KeyError as exc:
            raise InputFormatError(f"contest spec missing field: {exc}") from exc

    @staticmethod
    def from_json(text: str) -> "ContestSpec":
        return ContestSpec.from_dict(json.loads(text))


def cost_from_spec(spec: dict) -> CostFunction:
    kind = spec.get("kind", "power")
    if kind == "power":
        return PowerCost(float(spec.get("A", 1.0)), float(spec.get("beta", 2.0)))
    raise InputFormatError(f"unknown cost kind {kind!r} (custom costs are code-only)")


def utility_from_spec(spec: dict) -> Utility:
    kind = spec.get("kind", "linear")
    if kind == "linear":
        return LinearUtility()
    if kind == "power":
        return PowerUtility(float(spec.get("rho", 1.0)))
    raise InputFormatError(f"unknown utility kind {kind!r}")


# ----------------------------------------------------------------------
# payoffs and equilibrium
# ----------------------------------------------------------------------

def payoff(spec: ContestSpec, e: ArrayLike, p: EffortMeasure) -> ArrayLike:
    """Expected payoff W(e, p) u(V) - c(e)."""
    w = csf_eval(spec.family, p, spec.k, e)
    return np.asarray(w, dtype=float) * spec.prize_utility() - np.asarray(spec.cost.value(e), dtype=float) \
        if not np.isscalar(e) else float(w) * spec.prize_utility() - float(spec.cost.value(e))


def foc_marginal_benefit(spec: ContestSpec) -> float:
    """Right-hand side of the first-order condition: f(F^{-1}(1-k)) u(V)."""
    q = spec.noise.quantile(1.0 - spec.k)
    return float(spec.noise.pdf(q)) * spec.prize_utility()


def foc_equilibrium(spec: ContestSpec) -> float:
    """Effort where marginal cost equals the marginal winning benefit."""
    return spec.cost.invert_derivative(foc_marginal_benefit(spec))


@dataclass(frozen=True)
class SocVerdict:
    """Sampled global-concavity condition c'' > -f' u(V) with its worst margin."""

    passed: bool
    margin: float
    min_cost_curvature: float
    min_density_slope: float
    prize_utility: float

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "margin": self.margin,
            "min_cost_curvature": self.min_cost_curvature,
            "min_density_slope": self.min_density_slope,
            "prize_utility": self.prize_utility,
        }


def soc_check(spec: ContestSpec, e_range=(1e-6, 1e3), s_points: int = 2049,
              e_points: int = 512) -> SocVerdict:
    """Sample c''(e) + f'(s) u(V) > 0 over effort and threshold grids.

    Thresholds are sampled at equispaced noise quantiles so the probe
    concentrates where the density (and its slope extremes) live.
    """
    e_grid = np.logspace(np.log10(e_range[0]), np.log10(e_range[1]), e_points)
    probs = np.linspace(1e-6, 1.0 - 1e-6, s_points)
    s_grid = np.asarray(spec.noise.quantile(probs), dtype=float)
    c2_min = float(np.min(np.asarray(spec.cost.second_derivative(e_grid), dtype=float)))
    fp_min = float(np.min(np.asarray(spec.noise.pdf_derivative(s_grid), dtype=float)))
    uv = spec.prize_utility()
    margin = c2_min + fp_min * uv
    return SocVerdict(passed=bool(margin > 0.0), margin=margin,
                      min_cost_curvature=c2_min, min_density_slope=fp_min,
                      prize_utility=uv)


@dataclass(frozen=True)
class BestResponse:
    effort: float
    payoff: float
    at_boundary: bool


def _golden_max(f, a: float, b: float, tol: float) -> float:
    """Golden-section maximization of a unimodal f on [a, b]."""
    h = b - a
    if h <= tol:
        return 0.5 * (a + b)
    c = a + _INV_PHI2 * h
    d = a + _INV_PHI * h
    yc, yd = f(c), f(d)
    while h > tol:
        if yc > yd:
            b, d, yd = d, c, yc
            h = b - a
            c = a + _INV_PHI2 * h
            yc = f(c)
        else:
            a, c, yc = c, d, yd
            h = b - a
            d = a + _INV_PHI * h
            yd = f(d)
    return 0.5 * (a + b)


def best_response(spec: ContestSpec, p: EffortMeasure, grid_points: int = 1000,
                  refine_tol: float = 1e-7) -> BestResponse:
    """Globally maximize the payoff against a fixed competition.

    A log-spaced grid up to the effort where cost exhausts the prize
    utility locates the basin (robust to non-concavity when the curvature
    condition fails); golden-section then refines the bracket.  If the
    budget is not binding every effort wins, the payoff decreases in e, and
    the response sits at the participation floor.
    """
    uv = spec.prize_utility()
    if p.total_mass <= spec.k:
        return BestResponse(effort=PARTICIPATION_FLOOR,
                            payoff=uv - float(spec.cost.value(PARTICIPATION_FLOOR)),
                            at_boundary=True)
    s = solve_cutoff(spec.family, p, spec.k).s

    def u_of(e):
        w = 1.0 - spec.noise.cdf(s - np.asarray(e, dtype=float))
        return w * uv - np.asarray(spec.cost.value(e), dtype=float)

    e_hi = 1.0
    for _ in range(200):
        if float(spec.cost.value(e_hi)) > uv:
            break
        e_hi *= 2.0
    grid = np.logspace(np.log10(PARTICIPATION_FLOOR * 10), np.log10(e_hi), grid_points)
    vals = u_of(grid)
    i = int(np.argmax(vals))
    lo = grid[max(i - 1, 0)]
    hi = grid[min(i + 1, grid_points - 1)]
    e_star = _golden_max(lambda e: float(u_of(e)), lo, hi, refine_tol)
    candidates = [e_star, grid[i]]
    best = max(candidates, key=lambda e: float(u_of(e)))
    return BestResponse(effort=float(best), payoff=float(u_of(best)),
                        at_boundary=bool(i == 0))


@dataclass(frozen=True)
class EquilibriumVerdict:
    verified: bool
    e_star: float
    best_response_gap: float
    equilibrium_payoff: float

    def to_dict(self) -> dict:
        return {"verified": self.verified, "e_star": self.e_star,
                "best_response_gap": self.best_response_gap,
                "equilibrium_payoff": self.equilibrium_payoff}


def verify_equilibrium(spec: ContestSpec, e_star: float, tol: float = 1e-4) -> EquilibriumVerdict:
    """Check that a point mass at e_star is self-enforcing.

    Passes when the best response to dirac(e_star) returns to e_star within
    ``tol`` and participation yields a nonnegative payoff (staying out would
    otherwise dominate).
    """
    if not e_star > 0:
        raise DomainError("candidate equilibrium effort must be positive")
    p = EffortMeasure.dirac(e_star)
    br = best_response(spec, p)
    gap = abs(br.effort - e_star)
    u_eq = float(payoff(spec, e_star, p))
    return EquilibriumVerdict(verified=bool(gap <= tol and u_eq >= -1e-12),
                              e_star=e_star, best_response_gap=gap,
                              equilibrium_payoff=u_eq)
