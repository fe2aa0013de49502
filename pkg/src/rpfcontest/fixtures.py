"""Planted success functions that violate specific properties.

These are deliberate counterexamples used to exercise the falsification
harness: each one clears or breaks a known subset of the checks, so the
harness can be validated in both directions (no false alarms on genuine
random-performance functions, reliable detection of the planted flaws).
"""

from __future__ import annotations

import numpy as np

from .axioms import BlackBoxCSF
from .engine import PerformanceFamily, csf_eval
from .measures import EffortMeasure


def constant_share_csf(k: float) -> BlackBoxCSF:
    """W = k / p(E), independent of effort: clears the budget, never increases."""

    def w(e, p: EffortMeasure):
        val = k / p.total_mass
        return val if np.isscalar(e) else np.full(np.shape(e), val)

    return BlackBoxCSF(w, k, name="constant_share")


def capped_linear_share_csf(k: float) -> BlackBoxCSF:
    """W = min(1, k e / ∫e' dp): proportional shares whose cap breaks clearing.

    When the cap binds for some atom the integral falls short of k.
    """

    def w(e, p: EffortMeasure):
        denom = p.integrate(lambda x: x)
        return np.minimum(1.0, k * np.asarray(e, dtype=float) / denom) if not np.isscalar(e) \
            else min(1.0, k * e / denom)

    return BlackBoxCSF(w, k, name="capped_linear_share")


def mean_gated_share_csf(k: float, threshold: float = 1.5,
                         exponents: tuple[float, float] = (1.0, 3.0)) -> BlackBoxCSF:
    """Power shares whose exponent jumps with the competition's mean effort.

    W(e, p) = k e^t / ∫ e'^t dp with t = exponents[0] below the mean
    threshold and exponents[1] at or above it.  The gate makes competition
    rankings flip across effort levels, breaking co-monotonicity (and the
    mixing-path continuity) while still clearing the budget wherever the
    unit cap does not bind.
    """

    def w(e, p: EffortMeasure):
        t = exponents[0] if p.mean_effort() < threshold else exponents[1]
        denom = p.integrate(lambda x: np.asarray(x, dtype=float) ** t)
        val = k * np.asarray(e, dtype=float) ** t / denom
        out = np.minimum(1.0, val)
        return float(out) if np.isscalar(e) else out

    return BlackBoxCSF(w, k, name="mean_gated_share")


def effort_jump_csf(fam: PerformanceFamily, k: float, at: float = 1.0,
                    height: float = 0.2) -> BlackBoxCSF:
    """Engine-backed W with a planted jump of ``height`` at effort ``at``."""

    def w(e, p: EffortMeasure):
        base = csf_eval(fam, p, k, e)
        bump = np.asarray(e, dtype=float) > at
        out = (1.0 - height) * np.asarray(base, dtype=float) + height * bump
        return float(out) if np.isscalar(e) else out

    return BlackBoxCSF(w, k, name="effort_jump")


def mean_jump_csf(fam: PerformanceFamily, k: float, at: float = 1.5,
                  height: float = 0.2) -> BlackBoxCSF:
    """Engine-backed W with a jump when the competition's mean crosses ``at``."""

    def w(e, p: EffortMeasure):
        base = csf_eval(fam, p, k, e)
        bump = 1.0 if p.mean_effort() > at else 0.0
        out = (1.0 - height) * np.asarray(base, dtype=float) + height * bump
        return float(out) if np.isscalar(e) else out

    return BlackBoxCSF(w, k, name="mean_jump")


FIXTURES = {
    "constant_share": constant_share_csf,
    "capped_linear_share": capped_linear_share_csf,
    "mean_gated_share": mean_gated_share_csf,
}
