"""Prize-structure design: how many winners should a fixed purse reward?

Splitting a purse B as k V = B trades prize size against winner count.
Equilibrium effort tracks (1/k) f(F^{-1}(1-k)) under risk neutrality, which
is the hazard ratio of the noise at the clearing quantile: noise with an
increasing hazard (normal) favors ever-fewer winners, heavy tails put the
optimum at an interior winner fraction.  Saves a three-panel figure to
demos/output/.
"""

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from rpfcontest import Logistic, Normal, StudentT
from rpfcontest.design import (
    DesignSpec,
    check_top_half_suboptimal,
    default_k_grid,
    dissipation_threshold,
    effort_curve,
    hazard_ratio,
    incentive_curve,
    optimal_k,
    rent_dissipation_ratio,
)

grid = default_k_grid()
noises = [("standard normal", Normal()), ("Student t, 3 dof", StudentT(3.0)),
          ("Student t, 1 dof", StudentT(1.0))]

fig, axes = plt.subplots(1, 3, figsize=(12, 3.2))
for ax_, (label, noise) in zip(axes, noises):
    curve = incentive_curve(noise, grid)
    ax_.plot(curve[:, 0], curve[:, 1])
    ax_.set_title(label)
    ax_.set_xlabel("winner fraction k")
    i = int(np.argmax(curve[:, 1]))
    if 0 < i < grid.size - 1:
        ax_.axvline(grid[i], ls="--", lw=0.8, color="grey")
axes[0].set_ylabel("(1/k) f(F$^{-1}$(1-k))")
out = Path(__file__).parent / "output"
out.mkdir(exist_ok=True)
fig.tight_layout()
fig.savefig(out / "incentive_curves.png", dpi=150)
print(f"wrote {out / 'incentive_curves.png'}")

# The interior optima and their ordering across tail weights:
for label, noise in noises:
    spec = DesignSpec(B=1.0, noise=noise)
    best = optimal_k(spec)
    where = "boundary" if best.at_boundary else "interior"
    print(f"  {label:18s}: k* = {best.k:.4f} ({where}), e*(k*) = {best.e_star:.4f}")

# The curve is the hazard ratio in disguise: same numbers either way.
k = 0.25
s = float(StudentT(1.0).quantile(1 - k))
print(f"\nhazard check at k={k}: curve {incentive_curve(StudentT(1.0), np.array([k]))[0, 1]:.12f}"
      f" = hazard {hazard_ratio(StudentT(1.0), s):.12f} (2/pi = {2 / math.pi:.12f})")

# Awarding more than half the population never maximizes effort for
# symmetric noise whose density falls away from zero.
for label, noise in [("normal", Normal()), ("logistic", Logistic(1.0))]:
    verdict = check_top_half_suboptimal(DesignSpec(B=1.0, noise=noise))
    print(f"top-half check ({label}): applicable={verdict.applicable}, passed={verdict.passed}")

spec = DesignSpec(B=1.0, noise=Normal())
curve = effort_curve(spec, np.linspace(0.5, 0.99, 8))
print("  e*(k) on [0.5, 0.99]:", np.array2string(curve[:, 1], precision=4))

# Rent dissipation under risk neutrality with quadratic costs: the ratio of
# aggregate effort cost to rents is linear in the prize and crosses 1 at V*.
A, k = 1.0, 0.5
v_star = dissipation_threshold(A, k, Normal())
print(f"\nrent dissipation (A={A}, k={k}, normal): threshold V* = {v_star:.4f} (= 4 pi)")
for v in (0.25 * v_star, v_star, 4.0 * v_star):
    r = rent_dissipation_ratio(v, A, k, Normal())
    if abs(r - 1.0) < 1e-9:
        regime = "full"
    else:
        regime = "over" if r > 1 else "under"
    print(f"  V = {v:7.3f}: cost/rents = {r:.4f}  ({regime}-dissipation)")
