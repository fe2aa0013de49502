"""Auditing a black-box success function against the structural axioms.

The harness treats a candidate W(e, p) as a black box and hunts for
counterexamples to the properties that characterize threshold-based
success functions: market clearing, monotonicity, competitiveness,
co-monotonicity, and continuity in both arguments.  Two extra shift
invariances single out the additive (effort + noise) subclass.
"""

from rpfcontest import AdditiveFamily, Normal
from rpfcontest.axioms import (
    SHIFT_AXIOMS,
    STRUCTURAL_AXIOMS,
    SamplerConfig,
    reevaluate_witness,
    rpf_csf,
    run_suite,
)
from rpfcontest.engine import log_warped
from rpfcontest.fixtures import capped_linear_share_csf, constant_share_csf, mean_gated_share_csf


def show(report):
    for r in report.results:
        mark = "pass" if r.passed else "FAIL"
        extra = ""
        if r.witness is not None:
            keys = [k for k in ("e", "e_prime", "a", "violation") if k in r.witness]
            extra = "  witness: " + ", ".join(f"{k}={r.witness[k]:.4g}" for k in keys)
        print(f"  {r.axiom:<26s} {mark}{extra}")


cfg = SamplerConfig(n_samples=400, seed=0)

# --- a genuine threshold success function passes everything -------------------
print("additive normal engine, k = 0.3:")
engine = rpf_csf(AdditiveFamily(Normal()), 0.3)
show(run_suite(engine, cfg, STRUCTURAL_AXIOMS + SHIFT_AXIOMS))

# --- proportional shares with a cap: the budget leaks -------------------------
print("\ncapped linear share rule, k = 0.5:")
show(run_suite(capped_linear_share_csf(0.5), SamplerConfig(n_samples=400, seed=0),
               ["market_clearing"]))

# --- effort-blind shares clear the budget but reward nothing ------------------
print("\nconstant share rule, k = 0.3:")
show(run_suite(constant_share_csf(0.3), cfg, ["market_clearing", "monotonicity"]))

# --- rankings that flip with the competition's mean ----------------------------
# The exponent gate makes one competition look weaker at low efforts but
# stronger at high efforts: co-monotonicity pins this down with a witness.
print("\nmean-gated exponent shares, k = 0.3:")
gated = mean_gated_share_csf(0.3)
gate_cfg = SamplerConfig(n_samples=400, seed=3, effort_low=1.0, effort_high=2.0)
rep = run_suite(gated, gate_cfg, ["comonotonicity"])
show(rep)
res = rep.result("comonotonicity")
print(f"  witness re-evaluates to violation {reevaluate_witness(gated, res):.4g}"
      f" (tolerance {res.tolerance:g})")

# --- additive vs warped: separated by the shift axioms -------------------------
print("\nlog-warped normal engine, k = 0.3 (structure holds, shifts break):")
warped = rpf_csf(log_warped(Normal()), 0.3)
warped_cfg = SamplerConfig(n_samples=400, seed=0, effort_low=0.1, effort_high=1.5)
show(run_suite(warped, warped_cfg, STRUCTURAL_AXIOMS + SHIFT_AXIOMS))
