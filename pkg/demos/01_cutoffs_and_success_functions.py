"""Market-clearing cutoffs and success functions, step by step.

A continuum of agents chooses efforts; performance is effort plus noise.
The organizer admits the top performers until a fraction k of the whole
population has won.  This script builds effort distributions, solves the
clearing threshold, and evaluates winning probabilities.
"""

import numpy as np

from rpfcontest import AdditiveFamily, EffortMeasure, Normal, csf_eval, dirac, solve_cutoff
from rpfcontest.engine import log_warped

k = 0.3
fam = AdditiveFamily(Normal())

# --- a single effort level -------------------------------------------------
# When everyone exerts effort 2, the threshold sits at 2 + F^-1(1-k): exactly
# a fraction k of the noise draws land above it.
p = dirac(2.0)
res = solve_cutoff(fam, p, k)
print(f"everyone at e=2, k={k}: cutoff s = {res.s:.6f} (residual {res.residual:.1e})")
print(f"  win probability at e=2:   {csf_eval(fam, p, k, 2.0):.6f}  (= k)")
print(f"  win probability at e=2.5: {csf_eval(fam, p, k, 2.5):.6f}  (free-riding upward)")
print(f"  win probability at e=1.5: {csf_eval(fam, p, k, 1.5):.6f}")

# --- a two-point competition -------------------------------------------------
mix = EffortMeasure.from_atoms([(1.0, 0.5), (2.0, 0.5)])
res = solve_cutoff(fam, mix, k)
w1, w2 = csf_eval(fam, mix, k, np.array([1.0, 2.0]))
print(f"\nhalf at e=1, half at e=2: cutoff s = {res.s:.6f}")
print(f"  W(1) = {w1:.6f}, W(2) = {w2:.6f}")
print(f"  budget check: 0.5 W(1) + 0.5 W(2) = {0.5 * w1 + 0.5 * w2:.6f}  (= k)")

# --- the budget always clears ------------------------------------------------
rng = np.random.default_rng(0)
print("\nrandom competitions, integral of W against the measure:")
for _ in range(4):
    n = rng.integers(1, 5)
    q = EffortMeasure(np.exp(rng.uniform(-2, 2, n)), rng.dirichlet(np.ones(n)))
    integral = q.integrate(lambda e: csf_eval(fam, q, k, e))
    print(f"  {n} atoms: integral = {integral:.12f}")

# --- shifting the whole contest ----------------------------------------------
# Under additive noise, translating every effort moves the cutoff one-for-one
# and leaves relative winning odds unchanged.
a = 1.7
s0 = solve_cutoff(fam, mix, k).s
s1 = solve_cutoff(fam, mix.right_shift(a), k).s
print(f"\nright-shift by {a}: s(p+a) - s(p) = {s1 - s0:.12f}")
print(f"  W(1, p) = {csf_eval(fam, mix, k, 1.0):.9f}")
print(f"  W(1+a, p+a) = {csf_eval(fam, mix.right_shift(a), k, 1.0 + a):.9f}  (equal)")

# With diminishing returns to effort (performance = log effort + noise) the
# shift identity breaks: the same translation now changes relative standing.
warped = log_warped(Normal())
w0 = csf_eval(warped, dirac(2.0), k, 1.0)
w1 = csf_eval(warped, dirac(2.0).right_shift(a), k, 1.0 + a)
print(f"\nlog-warped family: W(1, p) = {w0:.6f} vs W(1+a, p+a) = {w1:.6f}  (not equal)")

# --- partial participation ----------------------------------------------------
# If the participating mass is below the budget, every effort level wins.
thin = EffortMeasure.from_atoms([(1.0, 0.25)])
print(f"\nparticipation 0.25 < k={k}: W = {csf_eval(fam, thin, k, 0.5)} for any effort")
