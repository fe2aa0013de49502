"""Finite-population oracle for the continuum contest model.

Simulates n agents whose efforts are drawn from a (normalized) atomic
effort measure, with the remaining probability mass staying out of the
contest.  Each participant's performance is their effort location plus an
inverse-transform draw from the noise; the top floor(k n) performances win.
Non-participants occupy population slots but never win, so the budget
fraction k applies to the whole unit population exactly as in the
continuum model.

Replications run on independent child streams spawned from the master
seed, and aggregation order is fixed, so results are bit-identical for a
given configuration.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .engine import PerformanceFamily, csf_eval, solve_cutoff
from .errors import DomainError
from .measures import EffortMeasure


@dataclass(frozen=True)
class SimConfig:
    """Population size, seed, family, competition, budget, replications."""

    n: int
    seed: int
    fam: PerformanceFamily
    p: EffortMeasure
    k: float
    replications: int = 1

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("population size must be at least 1")
        if not 0.0 < self.k < 1.0:
            raise DomainError(f"budget fraction k must lie in (0,1), got {self.k}")
        if self.replications < 1:
            raise DomainError("need at least one replication")
        if not self.p.is_atomic():
            raise DomainError("simulation needs an atomic measure; "
                              "discretize density segments first (EffortMeasure.discretize)")
        if int(self.k * self.n) < 1:
            raise DomainError("floor(k n) must be at least 1 prize")


@dataclass(frozen=True)
class AtomOutcome:
    effort: float
    empirical_w: float
    model_w: float
    abs_err: float
    draws: int

    def to_dict(self) -> dict:
        return {"atom_e": self.effort, "empirical_W": self.empirical_w,
                "model_W": self.model_w, "abs_err": self.abs_err, "draws": self.draws}


@dataclass(frozen=True)
class SimResult:
    n: int
    k: float
    seed: int
    replications: int
    atoms: tuple[AtomOutcome, ...]
    cutoff_estimate: float
    model_cutoff: float
    winners_per_replication: tuple[int, ...]
    per_replication_max_err: tuple[float, ...]

    @property
    def max_abs_err(self) -> float:
        return max(a.abs_err for a in self.atoms)

    @property
    def mean_abs_err(self) -> float:
        return sum(a.abs_err for a in self.atoms) / len(self.atoms)

    def to_dict(self) -> dict:
        return {
            "n": self.n, "k": self.k, "seed": self.seed,
            "replications": self.replications,
            "atoms": [a.to_dict() for a in self.atoms],
            "cutoff_estimate": self.cutoff_estimate,
            "model_cutoff": self.model_cutoff,
            "winners_per_replication": list(self.winners_per_replication),
        }

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    def csv_rows(self) -> list[tuple]:
        return [(a.effort, a.empirical_w, a.model_w, a.abs_err) for a in self.atoms]


def _one_replication(cfg: SimConfig, rng: np.random.Generator):
    """Per-atom (wins, draws), winner count, and realized cutoff for one run."""
    locs = cfg.p.locations
    masses = cfg.p.masses
    edges = np.cumsum(masses)  # assignment bins; beyond edges[-1] = non-participant
    u = rng.random(cfg.n)
    assignment = np.searchsorted(edges, u)
    participating = assignment < locs.size
    idx = assignment[participating]
    n_part = idx.size

    n_win = int(cfg.k * cfg.n)
    draws = np.bincount(idx, minlength=locs.size)
    if n_part == 0:
        return np.zeros(locs.size), draws, 0, np.nan

    shock = np.asarray(cfg.fam.noise.quantile(rng.random(n_part)), dtype=float)
    perf = np.asarray(cfg.fam.location(locs[idx]), dtype=float) + shock

    # seeded shuffle before a stable sort implements the tie-breaking rule
    perm = rng.permutation(n_part)
    order = np.argsort(-perf[perm], kind="stable")
    n_win_eff = min(n_win, n_part)
    winner_rows = perm[order[:n_win_eff]]
    cutoff = float(perf[winner_rows[-1]])

    wins = np.bincount(idx[winner_rows], minlength=locs.size)
    return wins, draws, n_win_eff, cutoff


def simulate(cfg: SimConfig) -> SimResult:
    """Run all replications and compare empirical win rates to the model."""
    streams = [np.random.default_rng(s) for s in np.random.SeedSequence(cfg.seed).spawn(cfg.replications)]
    locs = cfg.p.locations
    model_w = np.atleast_1d(np.asarray(csf_eval(cfg.fam, cfg.p, cfg.k, locs), dtype=float))
    if cfg.p.total_mass > cfg.k:
        model_cutoff = solve_cutoff(cfg.fam, cfg.p, cfg.k).s
    else:
        model_cutoff = float("nan")

    wins_total = np.zeros(locs.size)
    draws_total = np.zeros(locs.size, dtype=int)
    winners = []
    cutoffs = []
    per_rep_max_err = []
    for rng in streams:
        wins, draws, n_win, cutoff = _one_replication(cfg, rng)
        wins_total += wins
        draws_total += draws
        winners.append(n_win)
        cutoffs.append(cutoff)
        with np.errstate(invalid="ignore"):
            rates = np.where(draws > 0, wins / np.maximum(draws, 1), np.nan)
        per_rep_max_err.append(float(np.nanmax(np.abs(rates - model_w))))

    with np.errstate(invalid="ignore"):
        emp = np.where(draws_total > 0, wins_total / np.maximum(draws_total, 1), np.nan)
    atoms = tuple(
        AtomOutcome(effort=float(e), empirical_w=float(w), model_w=float(m),
                    abs_err=float(abs(w - m)), draws=int(d))
        for e, w, m, d in zip(locs, emp, model_w, draws_total)
    )
    return SimResult(
        n=cfg.n, k=cfg.k, seed=cfg.seed, replications=cfg.replications,
        atoms=atoms,
        cutoff_estimate=float(np.nanmean(cutoffs)),
        model_cutoff=model_cutoff,
        winners_per_replication=tuple(winners),
        per_replication_max_err=tuple(per_rep_max_err),
    )


def convergence_table(cfg: SimConfig, ns=(100, 1000, 10_000, 100_000)) -> list[dict]:
    """Win-rate error versus population size; rows (n, mean_err, sd).

    The error of one replication is its worst per-atom deviation from the
    continuum win rate; rows aggregate across the config's replications.
    """
    rows = []
    for n in ns:
        sub = SimConfig(n=int(n), seed=cfg.seed, fam=cfg.fam, p=cfg.p, k=cfg.k,
                        replications=cfg.replications)
        res = simulate(sub)
        errs = np.asarray(res.per_replication_max_err)
        rows.append({"n": int(n), "mean_err": float(errs.mean()),
                     "sd": float(errs.std(ddof=1)) if errs.size > 1 else 0.0})
    return rows


def error_decay_slope(rows) -> float:
    """Least-squares slope of log mean error against log n."""
    n = np.array([r["n"] for r in rows], dtype=float)
    err = np.array([max(r["mean_err"], 1e-300) for r in rows], dtype=float)
    return float(np.polyfit(np.log(n), np.log(err), 1)[0])
