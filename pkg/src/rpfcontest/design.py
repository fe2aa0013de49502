"""Prize-structure design: how many winners, how big a prize, at what cost.

With a fixed purse B split as k V = B, equilibrium effort as a function of
the winner fraction k is driven by f(F^{-1}(1-k)) u(B/k).  Under risk
neutrality the k-dependence reduces, after the change of variable
s = F^{-1}(1-k), to the hazard ratio f(s) / (1 - F(s)): noise with an
increasing hazard (normal) rewards ever-smaller winner fractions, while
heavy-tailed noise puts the optimum at an interior k.  For symmetric noise
whose density falls away from zero, awarding more than half the population
is never optimal: equilibrium effort is non-increasing in k on [0.5, 1).

The module also quantifies rent dissipation for the risk-neutral quadratic
specialization: the ratio of aggregate effort cost to aggregate rents kV
scales linearly in V and crosses one at a finite prize threshold.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .distributions import NoiseDistribution
from .equilibrium import (
    ContestSpec,
    CostFunction,
    LinearUtility,
    PowerCost,
    Utility,
    foc_equilibrium,
)
from .errors import DomainError, UnsupportedOperationError
from .measures import EffortMeasure  # noqa: F401  (re-exported for demo scripts)


def default_k_grid(n: int = 512, lo: float = 0.005, hi: float = 0.995) -> np.ndarray:
    """Log-spaced winner fractions; hazard features concentrate near small k."""
    return np.logspace(np.log10(lo), np.log10(hi), n)


@dataclass(frozen=True)
class DesignSpec:
    """Purse, noise, preferences, and the k-grid to sweep."""

    B: float
    noise: NoiseDistribution
    utility: Utility = field(default_factory=LinearUtility)
    cost: CostFunction = field(default_factory=PowerCost)
    k_grid: np.ndarray = field(default_factory=default_k_grid)

    def __post_init__(self):
        if not self.B > 0:
            raise DomainError(f"purse must be positive, got {self.B}")
        grid = np.asarray(self.k_grid, dtype=float)
        if np.any(grid <= 0.0) or np.any(grid >= 1.0):
            raise DomainError("k grid must lie strictly inside (0, 1)")
        object.__setattr__(self, "k_grid", grid)

    def contest_at(self, k: float) -> ContestSpec:
        return ContestSpec.with_purse(self.B, k, cost=self.cost,
                                      utility=self.utility, noise=self.noise)


def effort_curve(spec: DesignSpec, k_grid: Optional[np.ndarray] = None) -> np.ndarray:
    """Equilibrium effort e*(k) with V = B / k; returns rows (k, e*)."""
    grid = spec.k_grid if k_grid is None else np.asarray(k_grid, dtype=float)
    efforts = np.array([foc_equilibrium(spec.contest_at(float(k))) for k in grid])
    return np.column_stack([grid, efforts])


@dataclass(frozen=True)
class OptimalK:
    k: float
    e_star: float
    at_boundary: bool

    def to_dict(self) -> dict:
        return {"k": self.k, "e_star": self.e_star, "at_boundary": self.at_boundary}


def optimal_k(spec: DesignSpec, refine_tol: float = 1e-10) -> OptimalK:
    """Winner fraction maximizing equilibrium effort on the spec's grid.

    Grid argmax refined by golden-section on the bracketing interval; a
    maximum at either grid endpoint is reported with a boundary flag
    instead of being passed off as interior.
    """
    curve = effort_curve(spec)
    i = int(np.argmax(curve[:, 1]))
    grid = curve[:, 0]
    if i == 0 or i == grid.size - 1:
        return OptimalK(k=float(grid[i]), e_star=float(curve[i, 1]), at_boundary=True)

    def e_of(k: float) -> float:
        return foc_equilibrium(spec.contest_at(k))

    lo, hi = float(grid[i - 1]), float(grid[i + 1])
    inv = (np.sqrt(5.0) - 1.0) / 2.0
    c = hi - inv * (hi - lo)
    d = lo + inv * (hi - lo)
    yc, yd = e_of(c), e_of(d)
    while hi - lo > refine_tol:
        if yc > yd:
            hi, d, yd = d, c, yc
            c = hi - inv * (hi - lo)
            yc = e_of(c)
        else:
            lo, c, yc = c, d, yd
            d = lo + inv * (hi - lo)
            yd = e_of(d)
    k_star = 0.5 * (lo + hi)
    return OptimalK(k=float(k_star), e_star=float(e_of(k_star)), at_boundary=False)


def hazard_ratio(noise: NoiseDistribution, s: float) -> float:
    """f(s) / (1 - F(s)): the density of marginal winners per surviving mass."""
    return float(noise.pdf(s)) / (1.0 - float(noise.cdf(s)))


def incentive_curve(noise: NoiseDistribution, k_grid: Optional[np.ndarray] = None) -> np.ndarray:
    """Marginal effort incentive per unit purse: rows (k, (1/k) f(F^{-1}(1-k))).

    Equals the hazard ratio evaluated at the clearing quantile s = F^{-1}(1-k),
    so its argmax is the risk-neutral optimal winner fraction.
    """
    grid = default_k_grid() if k_grid is None else np.asarray(k_grid, dtype=float)
    q = np.asarray(noise.quantile(1.0 - grid), dtype=float)
    vals = np.asarray(noise.pdf(q), dtype=float) / grid
    return np.column_stack([grid, vals])


# ----------------------------------------------------------------------
# top-half optimality check
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class TopHalfVerdict:
    """Outcome of the never-award-more-than-half check.

    ``applicable`` is False when the noise fails the hypotheses (symmetry
    and a density falling away from zero); that is not a failure of the
    claim, just no verdict.
    """

    applicable: bool
    passed: bool
    reason: str = ""
    worst_increase: float = 0.0

    def to_dict(self) -> dict:
        return {"applicable": self.applicable, "passed": self.passed,
                "reason": self.reason, "worst_increase": self.worst_increase}


def _symmetry_holds(noise: NoiseDistribution, tol: float = 1e-9) -> bool:
    if not noise.symmetric:
        return False
    x = np.linspace(0.0, 8.0, 64)
    lhs = np.asarray(noise.cdf(-x), dtype=float)
    rhs = 1.0 - np.asarray(noise.cdf(x), dtype=float)
    return bool(np.max(np.abs(lhs - rhs)) <= tol)


def density_falls_from_center(noise: NoiseDistribution, tol: float = 1e-9) -> bool:
    """Sampled check of s f'(s) <= 0 on a +-10 sigma-equivalent range."""
    try:
        sigma_eq = 0.5 * (float(noise.quantile(0.8413447460685429))
                          - float(noise.quantile(0.15865525393145707)))
        s = np.linspace(-10.0 * sigma_eq, 10.0 * sigma_eq, 4097)
        prod = s * np.asarray(noise.pdf_derivative(s), dtype=float)
    except UnsupportedOperationError:
        return False
    return bool(np.max(prod) <= tol)


def check_top_half_suboptimal(spec: DesignSpec, k_grid: Optional[np.ndarray] = None,
                              tol: float = 1e-12) -> TopHalfVerdict:
    """Verify e*(k) is non-increasing on [0.5, 1) for qualifying noise.

    Requires the noise to be symmetric with s f'(s) <= 0; asymmetric or
    density-free noise makes the check inapplicable rather than failed.
    """
    if not _symmetry_holds(spec.noise):
        return TopHalfVerdict(False, False, reason="noise is not symmetric")
    if not density_falls_from_center(spec.noise):
        return TopHalfVerdict(False, False,
                              reason="density does not fall monotonically away from zero")
    grid = np.linspace(0.5, 0.99, 64) if k_grid is None else np.asarray(k_grid, dtype=float)
    if np.any(grid < 0.5) or np.any(grid >= 1.0):
        raise DomainError("top-half check grid must lie in [0.5, 1)")
    curve = effort_curve(spec, grid)
    increases = np.diff(curve[:, 1])
    worst = float(np.max(increases)) if increases.size else 0.0
    return TopHalfVerdict(True, bool(worst <= tol), worst_increase=worst)


# ----------------------------------------------------------------------
# rent dissipation (risk-neutral, quadratic cost)
# ----------------------------------------------------------------------

def rent_dissipation_ratio(V: float, A: float, k: float, noise: NoiseDistribution) -> float:
    """Aggregate effort cost over aggregate rents: V f(F^{-1}(1-k))^2 / (4 A k).

    Specialization to u(V) = V and c(e) = A e^2, where equilibrium effort is
    e* = (V / 2A) f(F^{-1}(1-k)) and costs are A e*^2 against rents k V.
    """
    if not (V > 0 and A > 0 and 0.0 < k < 1.0):
        raise DomainError("need V > 0, A > 0 and k in (0,1)")
    fq = float(noise.pdf(noise.quantile(1.0 - k)))
    return V * fq * fq / (4.0 * A * k)


def dissipation_threshold(A: float, k: float, noise: NoiseDistribution) -> float:
    """Prize V* at which costs exactly exhaust rents (ratio one).

    Below V* rents are under-dissipated, above it over-dissipated; the
    ratio is linear in V.
    """
    if not (A > 0 and 0.0 < k < 1.0):
        raise DomainError("need A > 0 and k in (0,1)")
    fq = float(noise.pdf(noise.quantile(1.0 - k)))
    return 4.0 * A * k / (fq * fq)
