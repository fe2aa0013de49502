"""Symmetric equilibrium of the contest game.

Each agent pays a convex effort cost and wins a prize V with probability
given by the additive success function.  In the symmetric equilibrium all
agents sit at the effort where marginal cost equals the noise density at
the clearing quantile times the prize utility.
"""

import math

import numpy as np

from rpfcontest import Normal
from rpfcontest.equilibrium import (
    ContestSpec,
    PowerCost,
    best_response,
    foc_equilibrium,
    payoff,
    soc_check,
    verify_equilibrium,
)
from rpfcontest.measures import dirac

spec = ContestSpec(k=0.5, V=1.0, cost=PowerCost(A=1.0, beta=2.0), noise=Normal())

e_star = foc_equilibrium(spec)
print(f"k={spec.k}, V={spec.V}, quadratic cost, standard normal noise")
print(f"  first-order effort e* = {e_star:.9f}")
print(f"  closed form 1/(2 sqrt(2 pi)) = {1 / (2 * math.sqrt(2 * math.pi)):.9f}")

soc = soc_check(spec)
print(f"  curvature condition: margin {soc.margin:.4f} "
      f"(cost curvature {soc.min_cost_curvature:.3f} vs density slope {soc.min_density_slope:.3f})")

# An equilibrium must be its own best response.
br = best_response(spec, dirac(e_star))
print(f"  best response to everyone at e*: {br.effort:.9f} (gap {abs(br.effort - e_star):.2e})")
print(f"  verified: {verify_equilibrium(spec, e_star).verified}")

# The payoff landscape against the equilibrium crowd is single-peaked at e*.
grid = np.linspace(0.01, 0.8, 9)
print("\n  payoff against dirac(e*):")
for e in grid:
    bar = "#" * max(0, int(40 * (payoff(spec, float(e), dirac(e_star)) + 0.2)))
    print(f"    e={e:4.2f}  U={payoff(spec, float(e), dirac(e_star)):+.4f} {bar}")

# Comparative statics: a richer prize pulls effort up, a bigger winner
# fraction (with the prize fixed) relaxes the contest.
print("\n  effort as the prize grows (k = 0.3):")
for v in (0.5, 1.0, 2.0, 4.0):
    print(f"    V={v:3.1f}: e* = {foc_equilibrium(ContestSpec(k=0.3, V=v, noise=Normal())):.5f}")
print("  effort as the winner fraction grows (V = 1):")
for kk in (0.1, 0.3, 0.5, 0.7, 0.9):
    print(f"    k={kk:3.1f}: e* = {foc_equilibrium(ContestSpec(k=kk, V=1.0, noise=Normal())):.5f}")
