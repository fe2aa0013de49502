"""Random-performance contest success functions and the market-clearing cutoff.

A performance family ``{F_e}`` assigns each effort level a continuous,
strictly increasing cdf of performance, decreasing in ``e`` pointwise.  Given
a competition ``p`` (an :class:`~rpfcontest.measures.EffortMeasure`) and a
budget fraction ``k``, the engine solves for the performance threshold ``s``
at which the mass of agents whose performance exceeds ``s`` equals ``k``:

    integral of [1 - F_e(s)] dp(e)  =  k.

The integrand is continuous and strictly decreasing in ``s`` with limits
``p(E) - k > 0`` and ``-k``, so a sign-changing bracket always exists and the
root is unique.  The success function is then ``W(e, p) = 1 - F_e(s(p))``.
When ``p(E) <= k`` the budget can cover every participant and ``W`` is
identically one by convention.

Families here are location families ``F_e(x) = F(x - g(e))``: additive ones
use ``g(e) = e``; warped ones accept any continuous, strictly increasing,
unbounded ``g``.  Both are stateless and safe for concurrent use; ``k`` is a
per-call parameter so budget sweeps can share one family object.

No condition is imposed at the bottom of the effort range: as e -> 0 the
winning probability may approach any value in [0, 1) depending on the
family and the competition.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np
from scipy import optimize

from .distributions import NoiseDistribution, from_spec as noise_from_spec
from .errors import BudgetNotBindingError, DomainError, InputFormatError, NumericalError
from .measures import EffortMeasure

ArrayLike = Union[float, np.ndarray]

#: Bisection/Brent convergence width for the cutoff.
CUTOFF_XTOL = 1e-12


@dataclass(frozen=True)
class AdditiveFamily:
    """Performance = effort + noise: F_e(x) = F(x - e)."""

    noise: NoiseDistribution

    def location(self, e: ArrayLike) -> ArrayLike:
        return e

    def cdf(self, e: ArrayLike, x: ArrayLike) -> ArrayLike:
        """F_e(x), vectorized over either argument."""
        return self.noise.cdf(x - np.asarray(e, dtype=float)) if not np.isscalar(e) else self.noise.cdf(x - e)

    def spec(self) -> dict:
        return {"kind": "additive", "noise": self.noise.spec()}


@dataclass(frozen=True)
class WarpedFamily:
    """Performance = warp(effort) + noise: F_e(x) = F(x - warp(e)).

    ``warp`` must be continuous, strictly increasing, and unbounded above;
    this is sanity-checked by sampling (see :func:`validate_family`), since
    unboundedness is not decidable from finitely many samples.
    """

    noise: NoiseDistribution
    warp: Callable[[ArrayLike], ArrayLike]
    description: str = "warped"

    def location(self, e: ArrayLike) -> ArrayLike:
        return self.warp(e)

    def cdf(self, e: ArrayLike, x: ArrayLike) -> ArrayLike:
        return self.noise.cdf(x - np.asarray(self.warp(e), dtype=float))

    def spec(self) -> dict:
        return {"kind": self.description, "noise": self.noise.spec()}


PerformanceFamily = Union[AdditiveFamily, WarpedFamily]


def log_warped(noise: NoiseDistribution) -> WarpedFamily:
    """Family with logarithmic effort-to-location map (diminishing returns)."""
    return WarpedFamily(noise, np.log, description="log_warped")


def family_from_spec(spec: dict) -> PerformanceFamily:
    """Build a family from JSON: {"kind": "additive"|"log_warped", "noise": {...}}."""
    if not isinstance(spec, dict) or "noise" not in spec:
        raise InputFormatError(f"family spec must carry a 'noise' object, got {spec!r}")
    noise = noise_from_spec(spec["noise"])
    kind = spec.get("kind", "additive")
    if kind == "additive":
        return AdditiveFamily(noise)
    if kind == "log_warped":
        return log_warped(noise)
    raise InputFormatError(f"unknown family kind {kind!r}")


def validate_family(fam: PerformanceFamily, efforts=None) -> list[str]:
    """Sample-based sanity check of the family axioms; returns warnings.

    Checks that e -> F_e(x) is strictly decreasing on a log grid of efforts
    and that the location map keeps growing at the top of the grid.  A flat
    tail cannot be distinguished from slow growth, so that case produces a
    warning rather than an error.
    """
    msgs = []
    e = np.logspace(-3, 6, 40) if efforts is None else np.asarray(efforts, dtype=float)
    loc = np.asarray(fam.location(e), dtype=float)
    if np.any(~np.isfinite(loc)):
        msgs.append("location map produced non-finite values on the probe grid")
    elif np.any(np.diff(loc) <= 0):
        msgs.append("location map is not strictly increasing on the probe grid")
    elif loc[-1] - loc[-2] <= 1e-6 * (loc[-1] - loc[0]):
        msgs.append("location map growth is vanishing at the top of the probe grid; unboundedness unconfirmed")
    for m in msgs:
        warnings.warn(m, stacklevel=2)
    return msgs


@dataclass(frozen=True)
class CutoffResult:
    """Solved market-clearing threshold with its diagnostics."""

    s: float
    residual: float
    iterations: int

    def to_dict(self) -> dict:
        return {"s": self.s, "residual": self.residual, "iterations": self.iterations}


def _require_binding(p: EffortMeasure, k: float) -> None:
    if not 0.0 < k < 1.0:
        raise DomainError(f"budget fraction k must lie in (0,1), got {k}")
    if p.total_mass <= k:
        raise BudgetNotBindingError(
            f"total mass {p.total_mass:.6g} does not exceed budget k={k:.6g}; every effort wins"
        )


def clearing_residual(fam: PerformanceFamily, p: EffortMeasure, s: float, k: float) -> float:
    """Mass of winners at threshold s minus the budget: ∫[1 - F_e(s)]dp - k.

    Strictly decreasing in ``s``; positive for very low thresholds (everyone
    wins, mass p(E) > k) and negative for very high ones (nobody wins).
    """
    _require_binding(p, k)
    return p.integrate(lambda e: 1.0 - fam.cdf(e, s)) - k


def solve_cutoff(fam: PerformanceFamily, p: EffortMeasure, k: float, xtol: float = CUTOFF_XTOL) -> CutoffResult:
    """Find the unique threshold clearing the prize budget.

    Brackets the root by exponential expansion around the location of the
    mean effort, then converges with Brent's method (bracketed, hence
    unconditionally convergent on this monotone residual).
    """
    _require_binding(p, k)
    evals = 0

    def residual(s: float) -> float:
        nonlocal evals
        evals += 1
        return p.integrate(lambda e: 1.0 - fam.cdf(e, s)) - k

    s0 = float(fam.location(p.mean_effort()))
    step = 1.0
    lo = hi = s0
    rlo = rhi = residual(s0)
    for _ in range(200):
        if rlo > 0.0 and rhi < 0.0:
            break
        if rlo <= 0.0:
            lo -= step
            rlo = residual(lo)
        if rhi >= 0.0:
            hi += step
            rhi = residual(hi)
        step *= 2.0
    else:
        raise NumericalError("failed to bracket the clearing threshold after 200 expansions")

    if rlo == 0.0:
        root = lo
    elif rhi == 0.0:
        root = hi
    else:
        root, info = optimize.brentq(residual, lo, hi, xtol=xtol, rtol=8.9e-16, full_output=True)
        evals = max(evals, info.function_calls)
    return CutoffResult(s=float(root), residual=residual(root), iterations=evals)


def csf_eval(fam: PerformanceFamily, p: EffortMeasure, k: float, e: ArrayLike) -> ArrayLike:
    """Winning probability W(e, p) = 1 - F_e(s(p)) at budget ``k``.

    Accepts a scalar effort or an array of efforts (one cutoff solve either
    way).  If the budget is not binding (total mass <= k) every effort wins
    with probability one.
    """
    earr = np.asarray(e, dtype=float)
    if np.any(earr <= 0.0):
        raise DomainError(f"effort must be strictly positive, got {e!r}")
    if not 0.0 < k < 1.0:
        raise DomainError(f"budget fraction k must lie in (0,1), got {k}")
    if p.total_mass <= k:
        return 1.0 if np.isscalar(e) else np.ones_like(earr)
    s = solve_cutoff(fam, p, k).s
    return 1.0 - fam.cdf(e, s)


def recover_translation(f1: NoiseDistribution, f2: NoiseDistribution, k: float) -> float:
    """Translation t with F2(x) = F1(x + t), read off the 1-k quantiles.

    Two additive representations of the same success function can differ
    only by a translation of the noise; the offset is the difference of
    their (1-k)-quantiles.  If the distributions do not actually represent
    the same W, the returned number is meaningless: callers must verify
    agreement of the success functions separately.
    """
    if not 0.0 < k < 1.0:
        raise DomainError(f"budget fraction k must lie in (0,1), got {k}")
    return float(f1.quantile(1.0 - k)) - float(f2.quantile(1.0 - k))
