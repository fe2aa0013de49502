"""Property-based certification and falsification of success functions.

A candidate success function is treated as a black box ``W(e, p)`` with a
declared budget ``k``.  Each check samples efforts and competitions from a
seeded generator, evaluates the box, and either certifies the property at
the sampled size or returns a concrete counterexample witness that
re-evaluates to a violation beyond tolerance.

Five checks cover the structural properties a random-performance
representation needs (market clearing, monotonicity, competitiveness,
co-monotonicity, continuity in both arguments); two more cover the shift
invariances that single out the additive subclass.  Passing a check means
"no violation found at this sample size and resolution", never a proof:
continuity in particular is certified only down to a finite increment, and
the limit checks use finite escalation ladders.

All checks are independent, own their RNG streams (derived from the suite
seed and the check name), and can run in parallel; reports merge
deterministically in canonical check order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .engine import PerformanceFamily, csf_eval
from .errors import DomainError
from .measures import EffortMeasure

ArrayLike = Union[float, np.ndarray]

#: Canonical ordering of checks; also fixes per-check RNG substreams.
AXIOM_NAMES = (
    "market_clearing",
    "monotonicity",
    "competitiveness",
    "comonotonicity",
    "e_continuity",
    "p_continuity",
    "invariance_common_shifts",
    "invariance_p_shifts",
)

STRUCTURAL_AXIOMS = AXIOM_NAMES[:6]
SHIFT_AXIOMS = AXIOM_NAMES[6:]


@dataclass(frozen=True)
class BlackBoxCSF:
    """A success function under audit: an evaluator plus its declared budget.

    ``evaluate`` must accept a scalar or 1-d array of efforts together with
    an :class:`EffortMeasure` and return winning probabilities in [0, 1].
    Nothing else is assumed; market clearing itself is one of the checks.
    """

    evaluate: Callable[[ArrayLike, EffortMeasure], ArrayLike]
    k: float
    name: str = "csf"

    def __call__(self, e: ArrayLike, p: EffortMeasure) -> ArrayLike:
        return self.evaluate(e, p)


def rpf_csf(fam: PerformanceFamily, k: float, name: Optional[str] = None) -> BlackBoxCSF:
    """Wrap an engine-backed family as a black box for auditing."""
    label = name if name is not None else fam.spec().get("kind", "rpf")
    return BlackBoxCSF(lambda e, p: csf_eval(fam, p, k, e), k, name=label)


@dataclass(frozen=True)
class SamplerConfig:
    """Sampling plan and tolerances shared by the checks.

    Efforts are drawn log-uniformly from [effort_low, effort_high];
    competitions are mixtures of 1..max_atoms atoms whose total mass is
    uniform on (k, 1].  The escalation ladders are offsets added on top of
    the relevant sampled effort (so they always dominate it), paired with
    decreasing slack thresholds.  Continuity is probed by halving the scan
    increment ``halvings`` times from ``h0``: the largest single-step
    change must keep shrinking (halving ratio at most ``continuity_ratio``
    on the finest scales, or below ``continuity_floor`` outright), with up
    to ``max_zooms`` adaptive refinements into any window that stalls.
    """

    n_samples: int = 1000
    seed: int = 0
    tolerance: float = 1e-6
    effort_low: float = 0.1
    effort_high: float = 10.0
    max_atoms: int = 4
    ladder: tuple = (10.0, 100.0, 1000.0)
    ladder_slack: tuple = (0.1, 0.01, 0.001)
    h0: float = 0.5
    halvings: int = 6
    continuity_ratio: float = 0.8
    continuity_floor: float = 5e-4
    max_zooms: int = 6
    comono_gap: float = 1e-3
    sweep_points: int = 17
    match_residual: float = 1e-9
    match_band: tuple = (0.01, 0.99)

    def rng_for(self, axiom: str) -> np.random.Generator:
        return np.random.default_rng(np.random.SeedSequence((self.seed, AXIOM_NAMES.index(axiom))))


@dataclass(frozen=True)
class AxiomResult:
    """Outcome of one check: verdict plus a re-evaluatable witness on failure."""

    axiom: str
    passed: bool
    n_samples: int
    n_checked: int
    tolerance: float
    seed: int
    witness: Optional[dict] = None
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "axiom": self.axiom,
            "passed": self.passed,
            "n_samples": self.n_samples,
            "n_checked": self.n_checked,
            "tolerance": self.tolerance,
            "seed": self.seed,
            "witness": self.witness,
            "note": self.note,
        }


@dataclass(frozen=True)
class AxiomReport:
    """Merged results of a suite run, ordered canonically."""

    csf_name: str
    k: float
    seed: int
    results: tuple[AxiomResult, ...] = ()

    def __post_init__(self):
        ordered = tuple(sorted(self.results, key=lambda r: AXIOM_NAMES.index(r.axiom)))
        object.__setattr__(self, "results", ordered)

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.results)

    def result(self, axiom: str) -> AxiomResult:
        for r in self.results:
            if r.axiom == axiom:
                return r
        raise KeyError(axiom)

    def to_dict(self) -> dict:
        return {
            "csf": self.csf_name,
            "k": self.k,
            "seed": self.seed,
            "all_passed": self.all_passed,
            "results": [r.to_dict() for r in self.results],
        }

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)


# ----------------------------------------------------------------------
# samplers
# ----------------------------------------------------------------------

def _log_uniform(rng, lo, hi, size=None):
    return np.exp(rng.uniform(np.log(lo), np.log(hi), size=size))


def sample_measure(rng: np.random.Generator, cfg: SamplerConfig, k: float) -> EffortMeasure:
    """Mixture of 1..max_atoms atoms with total mass uniform on (k, 1]."""
    n_atoms = int(rng.integers(1, cfg.max_atoms + 1))
    efforts = _log_uniform(rng, cfg.effort_low, cfg.effort_high, n_atoms)
    shares = rng.dirichlet(np.ones(n_atoms))
    total = k + (1.0 - k) * rng.uniform(0.05, 1.0)
    return EffortMeasure(efforts, shares * total)


def _measure_witness(p: EffortMeasure) -> dict:
    return p.to_dict()


# ----------------------------------------------------------------------
# individual checks
# ----------------------------------------------------------------------

def check_market_clearing(csf: BlackBoxCSF, cfg: SamplerConfig) -> AxiomResult:
    """∫ W(e, p) dp(e) must equal the declared budget for every sampled p."""
    rng = cfg.rng_for("market_clearing")
    for i in range(cfg.n_samples):
        p = sample_measure(rng, cfg, csf.k)
        integral = p.integrate(lambda e: csf(e, p))
        gap = abs(integral - csf.k)
        if gap > cfg.tolerance:
            witness = {
                "p": _measure_witness(p),
                "integral": integral,
                "k": csf.k,
                "violation": gap,
                "sample_index": i,
            }
            return AxiomResult("market_clearing", False, cfg.n_samples, i + 1,
                               cfg.tolerance, cfg.seed, witness)
    return AxiomResult("market_clearing", True, cfg.n_samples, cfg.n_samples,
                       cfg.tolerance, cfg.seed)


def check_monotonicity(csf: BlackBoxCSF, cfg: SamplerConfig) -> AxiomResult:
    """W strictly increasing in effort, approaching 1 along the ladder."""
    rng = cfg.rng_for("monotonicity")
    n_ladder = max(1, cfg.n_samples // 10)
    for i in range(cfg.n_samples):
        p = sample_measure(rng, cfg, csf.k)
        e_lo, e_hi = np.sort(_log_uniform(rng, cfg.effort_low, cfg.effort_high, 2))
        if e_hi - e_lo < 1e-12:
            continue
        w_lo, w_hi = float(csf(e_lo, p)), float(csf(e_hi, p))
        if w_lo - w_hi > cfg.tolerance:
            witness = {
                "e": e_lo, "e_prime": e_hi, "p": _measure_witness(p),
                "w_e": w_lo, "w_e_prime": w_hi, "violation": w_lo - w_hi,
                "sample_index": i,
            }
            return AxiomResult("monotonicity", False, cfg.n_samples, i + 1,
                               cfg.tolerance, cfg.seed, witness)
        if i < n_ladder:
            base = p.max_effort
            for offset, slack in zip(cfg.ladder, cfg.ladder_slack):
                w_top = float(csf(base + offset, p))
                if w_top < 1.0 - slack:
                    witness = {
                        "e_max": base + offset, "p": _measure_witness(p),
                        "w": w_top, "required": 1.0 - slack,
                        "violation": (1.0 - slack) - w_top, "sample_index": i,
                    }
                    return AxiomResult("monotonicity", False, cfg.n_samples, i + 1,
                                       cfg.tolerance, cfg.seed, witness,
                                       note="limit ladder")
    return AxiomResult("monotonicity", True, cfg.n_samples, cfg.n_samples,
                       cfg.tolerance, cfg.seed)


def check_competitiveness(csf: BlackBoxCSF, cfg: SamplerConfig) -> AxiomResult:
    """W(e, dirac(e_bar)) must vanish as the opposing effort escalates."""
    rng = cfg.rng_for("competitiveness")
    e_cap = min(1.0, cfg.effort_high)  # keep the fixed effort below the ladder
    for i in range(cfg.n_samples):
        e = float(_log_uniform(rng, cfg.effort_low, e_cap))
        for offset, slack in zip(cfg.ladder, cfg.ladder_slack):
            e_bar = e + offset
            w = float(csf(e, EffortMeasure.dirac(e_bar)))
            if w > slack:
                witness = {
                    "e": e, "e_bar": e_bar, "w": w, "allowed": slack,
                    "violation": w - slack, "sample_index": i,
                }
                return AxiomResult("competitiveness", False, cfg.n_samples, i + 1,
                                   cfg.tolerance, cfg.seed, witness)
    return AxiomResult("competitiveness", True, cfg.n_samples, cfg.n_samples,
                       cfg.tolerance, cfg.seed)


def check_comonotonicity(csf: BlackBoxCSF, cfg: SamplerConfig) -> AxiomResult:
    """If p beats p' at one effort, it must do so at every effort.

    Sampled triples qualify when the anchor-effort gap exceeds
    ``comono_gap``; the ordering is then verified on a log grid of efforts.
    """
    rng = cfg.rng_for("comonotonicity")
    sweep = np.exp(np.linspace(np.log(cfg.effort_low), np.log(cfg.effort_high), cfg.sweep_points))
    checked = 0
    for i in range(cfg.n_samples):
        e = float(_log_uniform(rng, cfg.effort_low, cfg.effort_high))
        p = sample_measure(rng, cfg, csf.k)
        q = sample_measure(rng, cfg, csf.k)
        w_p, w_q = float(csf(e, p)), float(csf(e, q))
        if w_p < w_q:
            p, q = q, p
            w_p, w_q = w_q, w_p
        if w_p - w_q <= cfg.comono_gap:
            continue
        checked += 1
        diffs = np.asarray(csf(sweep, p), dtype=float) - np.asarray(csf(sweep, q), dtype=float)
        j = int(np.argmin(diffs))
        if diffs[j] < -cfg.tolerance:
            witness = {
                "e": e, "w_e_p": w_p, "w_e_q": w_q,
                "p": _measure_witness(p), "q": _measure_witness(q),
                "e_prime": float(sweep[j]), "w_eprime_p": float(np.asarray(csf(sweep[j], p))),
                "w_eprime_q": float(np.asarray(csf(sweep[j], q))),
                "violation": float(-diffs[j]), "sample_index": i,
            }
            return AxiomResult("comonotonicity", False, cfg.n_samples, checked,
                               cfg.tolerance, cfg.seed, witness)
    return AxiomResult("comonotonicity", True, cfg.n_samples, checked,
                       cfg.tolerance, cfg.seed)


def _max_step_deltas(values: np.ndarray, halvings: int) -> list[float]:
    """Largest one-step |change| of a fine scan at each dyadic resolution.

    ``values`` holds evaluations on a uniform grid of 2**halvings + 1
    points; stride 2**(halvings - j) recovers the grid with increment
    h0 / 2**j.
    """
    out = []
    n = values.size - 1
    for j in range(halvings + 1):
        stride = n >> j
        sub = values[::stride]
        out.append(float(np.max(np.abs(np.diff(sub)))))
    return out


def _continuity_verdict(deltas: Sequence[float], cfg: SamplerConfig) -> bool:
    """True when the step changes keep shrinking as the increment halves.

    A continuous W halves its largest step change along with the increment
    (ratio near 0.5); a jump pins the step change at the jump height at
    every scale (ratio near 1).  Both of the finest two halving ratios must
    stall before the window is considered suspicious, so one anomalous
    scale cannot raise an alarm.
    """
    if deltas[-1] <= cfg.continuity_floor:
        return True
    if len(deltas) < 3:
        raise DomainError("continuity scan needs at least 2 halvings")
    tiny = 1e-300
    r_last = deltas[-1] / max(deltas[-2], tiny)
    r_prev = deltas[-2] / max(deltas[-3], tiny)
    return min(r_last, r_prev) <= cfg.continuity_ratio


def _scan_for_jump(f, lo: float, hi: float, cfg: SamplerConfig) -> Optional[dict]:
    """Dyadic halving scan with adaptive zoom; None when no jump survives.

    A window whose step changes stall is re-scanned on the offending
    sub-interval (padded by one step): genuinely continuous but steep
    stretches resolve after a few zooms, while a true jump stalls at every
    depth and is reported with the final bracketing interval.  ``f`` must
    map an array of scan points to an array of values.
    """
    n_fine = 2 ** cfg.halvings
    for depth in range(cfg.max_zooms + 1):
        grid = np.linspace(lo, hi, n_fine + 1)
        vals = np.asarray(f(grid), dtype=float)
        deltas = _max_step_deltas(vals, cfg.halvings)
        if _continuity_verdict(deltas, cfg):
            return None
        steps = np.abs(np.diff(vals))
        j = int(np.argmax(steps))
        if depth == cfg.max_zooms or (hi - lo) < 1e-13 * max(1.0, abs(hi)):
            return {
                "left": float(grid[j]), "right": float(grid[j + 1]),
                "w_left": float(vals[j]), "w_right": float(vals[j + 1]),
                "coarse_delta": deltas[0], "fine_delta": deltas[-1],
                "prev_delta": deltas[-2],
                "threshold": max(cfg.continuity_ratio * deltas[-2], cfg.continuity_floor),
                "resolution": float(grid[1] - grid[0]),
                "zooms": depth,
            }
        lo_next = float(grid[max(j - 1, 0)])
        hi_next = float(grid[min(j + 2, n_fine)])
        lo, hi = lo_next, hi_next
    return None  # unreachable


def check_e_continuity(csf: BlackBoxCSF, cfg: SamplerConfig) -> AxiomResult:
    """Scan W in effort at dyadic resolutions; step changes must shrink."""
    rng = cfg.rng_for("e_continuity")
    for i in range(cfg.n_samples):
        p = sample_measure(rng, cfg, csf.k)
        e0 = float(_log_uniform(rng, cfg.effort_low, cfg.effort_high))
        jump = _scan_for_jump(lambda x: csf(x, p), e0, e0 + cfg.h0, cfg)
        if jump is not None:
            witness = {"p": _measure_witness(p), "sample_index": i,
                       "e_left": jump.pop("left"), "e_right": jump.pop("right"), **jump}
            return AxiomResult("e_continuity", False, cfg.n_samples, i + 1,
                               cfg.tolerance, cfg.seed, witness,
                               note=f"discontinuity at resolution {witness['resolution']:g}")
    base_res = cfg.h0 / 2 ** cfg.halvings
    return AxiomResult("e_continuity", True, cfg.n_samples, cfg.n_samples,
                       cfg.tolerance, cfg.seed,
                       note=f"no discontinuity detected at resolution {base_res:g}")


def check_p_continuity(csf: BlackBoxCSF, cfg: SamplerConfig) -> AxiomResult:
    """Scan W along the mixing path alpha -> alpha*p + (1-alpha)*p'."""
    rng = cfg.rng_for("p_continuity")
    for i in range(cfg.n_samples):
        p = sample_measure(rng, cfg, csf.k)
        q = sample_measure(rng, cfg, csf.k)
        e = float(_log_uniform(rng, cfg.effort_low, cfg.effort_high))

        def path(alphas):
            return [float(csf(e, p.mix(float(a), q))) for a in alphas]

        jump = _scan_for_jump(path, 0.0, 1.0, cfg)
        if jump is not None:
            witness = {"e": e, "p": _measure_witness(p), "q": _measure_witness(q),
                       "sample_index": i,
                       "alpha_left": jump.pop("left"), "alpha_right": jump.pop("right"), **jump}
            return AxiomResult("p_continuity", False, cfg.n_samples, i + 1,
                               cfg.tolerance, cfg.seed, witness,
                               note=f"discontinuity at alpha resolution {witness['resolution']:g}")
    base_res = 1.0 / 2 ** cfg.halvings
    return AxiomResult("p_continuity", True, cfg.n_samples, cfg.n_samples,
                       cfg.tolerance, cfg.seed,
                       note=f"no discontinuity detected at alpha resolution {base_res:g}")


def check_invariance_common_shifts(csf: BlackBoxCSF, cfg: SamplerConfig) -> AxiomResult:
    """W(e, p) must equal W(e + a, p right-shifted by a)."""
    rng = cfg.rng_for("invariance_common_shifts")
    for i in range(cfg.n_samples):
        p = sample_measure(rng, cfg, csf.k)
        e = float(_log_uniform(rng, cfg.effort_low, cfg.effort_high))
        a = float(_log_uniform(rng, cfg.effort_low, cfg.effort_high))
        w0 = float(csf(e, p))
        w1 = float(csf(e + a, p.right_shift(a)))
        if abs(w0 - w1) > cfg.tolerance:
            witness = {
                "e": e, "a": a, "p": _measure_witness(p),
                "w": w0, "w_shifted": w1, "violation": abs(w0 - w1),
                "sample_index": i,
            }
            return AxiomResult("invariance_common_shifts", False, cfg.n_samples, i + 1,
                               cfg.tolerance, cfg.seed, witness)
    return AxiomResult("invariance_common_shifts", True, cfg.n_samples, cfg.n_samples,
                       cfg.tolerance, cfg.seed)


def _match_effort(csf: BlackBoxCSF, q: EffortMeasure, target: float,
                  lo: float, hi: float) -> Optional[float]:
    """Solve W(e', q) = target for e' by bisection on the monotone slice."""
    w_lo = float(csf(lo, q))
    if w_lo > target:
        return None
    w_hi = float(csf(hi, q))
    for _ in range(60):  # expand until the target is bracketed
        if w_hi >= target:
            break
        hi *= 2.0
        w_hi = float(csf(hi, q))
    else:
        return None
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if float(csf(mid, q)) < target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def check_invariance_p_shifts(csf: BlackBoxCSF, cfg: SamplerConfig) -> AxiomResult:
    """Equal winning odds must stay equal after shifting both competitions.

    Pairs with W(e, p) = W(e', p') are manufactured by solving for e' on
    the (already monotone-checked) effort slice of p'; samples where no
    match exists within the bracket are skipped.
    """
    rng = cfg.rng_for("invariance_p_shifts")
    checked = 0
    for i in range(cfg.n_samples):
        p = sample_measure(rng, cfg, csf.k)
        q = sample_measure(rng, cfg, csf.k)
        e = float(_log_uniform(rng, cfg.effort_low, cfg.effort_high))
        a = float(_log_uniform(rng, cfg.effort_low, cfg.effort_high))
        target = float(csf(e, p))
        if not cfg.match_band[0] <= target <= cfg.match_band[1]:
            continue  # saturated probabilities make the match ill-conditioned
        e_match = _match_effort(csf, q, target, lo=cfg.effort_low * 1e-3, hi=cfg.effort_high)
        if e_match is None:
            continue
        if abs(float(csf(e_match, q)) - target) > cfg.match_residual:
            continue
        checked += 1
        w_p = float(csf(e, p.right_shift(a)))
        w_q = float(csf(e_match, q.right_shift(a)))
        if abs(w_p - w_q) > cfg.tolerance:
            witness = {
                "e": e, "e_prime": e_match, "a": a,
                "p": _measure_witness(p), "q": _measure_witness(q),
                "w_equal": target, "w_p_shifted": w_p, "w_q_shifted": w_q,
                "violation": abs(w_p - w_q), "sample_index": i,
            }
            return AxiomResult("invariance_p_shifts", False, cfg.n_samples, checked,
                               cfg.tolerance, cfg.seed, witness)
    return AxiomResult("invariance_p_shifts", True, cfg.n_samples, checked,
                       cfg.tolerance, cfg.seed)


_CHECKS = {
    "market_clearing": check_market_clearing,
    "monotonicity": check_monotonicity,
    "competitiveness": check_competitiveness,
    "comonotonicity": check_comonotonicity,
    "e_continuity": check_e_continuity,
    "p_continuity": check_p_continuity,
    "invariance_common_shifts": check_invariance_common_shifts,
    "invariance_p_shifts": check_invariance_p_shifts,
}


def run_suite(csf: BlackBoxCSF, cfg: SamplerConfig,
              axioms: Sequence[str] = STRUCTURAL_AXIOMS) -> AxiomReport:
    """Run the named checks and merge their results into one report."""
    unknown = set(axioms) - set(AXIOM_NAMES)
    if unknown:
        raise DomainError(f"unknown axioms requested: {sorted(unknown)}")
    results = tuple(_CHECKS[name](csf, cfg) for name in axioms)
    return AxiomReport(csf_name=csf.name, k=csf.k, seed=cfg.seed, results=results)


def run_full_suite(csf: BlackBoxCSF, cfg: SamplerConfig) -> AxiomReport:
    """All structural checks plus both shift-invariance checks."""
    return run_suite(csf, cfg, AXIOM_NAMES)


# ----------------------------------------------------------------------
# auditing tabulated win-rate data
# ----------------------------------------------------------------------

def audit_tabulated(winrates: Sequence[tuple[float, str, float]],
                    measures: dict[str, EffortMeasure],
                    k: float,
                    tolerance: float = 1e-6,
                    comono_gap: float = 1e-3) -> AxiomReport:
    """Audit empirical (effort, measure id, win rate) records.

    Only the checks decidable from a finite table run: market clearing
    (for measures whose atoms all carry win rates), monotonicity along each
    measure's effort column, and co-monotonicity across measure pairs on
    their common efforts.  Limit and continuity checks need function access
    and are omitted.
    """
    table: dict[str, dict[float, float]] = {}
    for e, mid, w in winrates:
        if mid not in measures:
            raise DomainError(f"win-rate row references unknown measure id {mid!r}")
        table.setdefault(mid, {})[float(e)] = float(w)

    results = []
    # market clearing on fully covered atomic measures
    clearing_witness = None
    n_checked = 0
    for mid, p in sorted(measures.items()):
        rates = table.get(mid, {})
        if not p.is_atomic():
            continue
        if not all(any(abs(e - ee) <= 1e-9 for ee in rates) for e in p.locations):
            continue
        n_checked += 1
        lookup = np.array([rates[min(rates, key=lambda ee, e=e: abs(ee - e))] for e in p.locations])
        integral = float(np.dot(p.masses, lookup))
        if abs(integral - k) > tolerance and clearing_witness is None:
            clearing_witness = {"measure_id": mid, "integral": integral, "k": k,
                                "violation": abs(integral - k)}
    results.append(AxiomResult("market_clearing", clearing_witness is None,
                               len(measures), n_checked, tolerance, 0, clearing_witness,
                               note="tabulated data"))

    # monotonicity along each effort column
    mono_witness = None
    for mid in sorted(table):
        efforts = np.array(sorted(table[mid]))
        w = np.array([table[mid][e] for e in efforts])
        drops = w[:-1] - w[1:]
        j = int(np.argmax(drops)) if drops.size else 0
        if drops.size and drops[j] > tolerance:
            mono_witness = {"measure_id": mid, "e": float(efforts[j]),
                            "e_prime": float(efforts[j + 1]), "w_e": float(w[j]),
                            "w_e_prime": float(w[j + 1]), "violation": float(drops[j])}
            break
    results.append(AxiomResult("monotonicity", mono_witness is None, len(table),
                               len(table), tolerance, 0, mono_witness,
                               note="tabulated data; limit not testable"))

    # co-monotonicity across measure pairs on shared efforts
    co_witness = None
    mids = sorted(table)
    pairs = 0
    for idx, m1 in enumerate(mids):
        for m2 in mids[idx + 1:]:
            common = sorted(set(table[m1]) & set(table[m2]))
            if len(common) < 2:
                continue
            pairs += 1
            diffs = np.array([table[m1][e] - table[m2][e] for e in common])
            if diffs.max() > comono_gap and diffs.min() < -comono_gap:
                co_witness = {
                    "measure_ids": [m1, m2],
                    "e": float(common[int(np.argmax(diffs))]),
                    "e_prime": float(common[int(np.argmin(diffs))]),
                    "gap_up": float(diffs.max()), "gap_down": float(diffs.min()),
                    "violation": float(min(diffs.max(), -diffs.min())),
                }
                break
        if co_witness:
            break
    results.append(AxiomResult("comonotonicity", co_witness is None, pairs, pairs,
                               comono_gap, 0, co_witness, note="tabulated data"))

    return AxiomReport(csf_name="tabulated", k=k, seed=0, results=tuple(results))


def reevaluate_witness(csf: BlackBoxCSF, result: AxiomResult) -> float:
    """Recompute a failed check's violation magnitude from its witness.

    Returns the violation (positive means the witness still violates the
    axiom).  Supports the sampled checks whose witnesses carry measures.
    """
    if result.passed or result.witness is None:
        raise DomainError("result carries no witness to re-evaluate")
    w = result.witness
    ax = result.axiom
    if ax == "market_clearing":
        p = EffortMeasure.from_dict(w["p"])
        return abs(p.integrate(lambda e: csf(e, p)) - csf.k)
    if ax == "monotonicity":
        p = EffortMeasure.from_dict(w["p"])
        if "e_max" in w:
            return w["required"] - float(csf(w["e_max"], p))
        return float(csf(w["e"], p)) - float(csf(w["e_prime"], p))
    if ax == "competitiveness":
        return float(csf(w["e"], EffortMeasure.dirac(w["e_bar"]))) - w["allowed"]
    if ax == "comonotonicity":
        p = EffortMeasure.from_dict(w["p"])
        q = EffortMeasure.from_dict(w["q"])
        return float(csf(w["e_prime"], q)) - float(csf(w["e_prime"], p))
    if ax == "e_continuity":
        p = EffortMeasure.from_dict(w["p"])
        fine = abs(float(csf(w["e_right"], p)) - float(csf(w["e_left"], p)))
        return fine - w["threshold"]
    if ax == "p_continuity":
        p = EffortMeasure.from_dict(w["p"])
        q = EffortMeasure.from_dict(w["q"])
        lhs = float(csf(w["e"], p.mix(w["alpha_left"], q)))
        rhs = float(csf(w["e"], p.mix(w["alpha_right"], q)))
        return abs(rhs - lhs) - w["threshold"]
    if ax == "invariance_common_shifts":
        p = EffortMeasure.from_dict(w["p"])
        return abs(float(csf(w["e"], p)) - float(csf(w["e"] + w["a"], p.right_shift(w["a"]))))
    if ax == "invariance_p_shifts":
        p = EffortMeasure.from_dict(w["p"])
        q = EffortMeasure.from_dict(w["q"])
        return abs(float(csf(w["e"], p.right_shift(w["a"])))
                   - float(csf(w["e_prime"], q.right_shift(w["a"]))))
    raise DomainError(f"no re-evaluation rule for axiom {ax!r}")
