"""Finite effort measures on E = (0, inf): weighted atoms plus gridded densities.

The representation is closed under mixing and right-shifts, and supports
integration of arbitrary (vectorized) functions: atoms contribute mass-weighted
point evaluations, density segments are integrated by the trapezoid rule on
their grids.  Total mass must lie in (0, 1]; whether the mass also exceeds a
budget fraction k is checked by the consumers that need it.

Measures are immutable; every operation returns a new measure.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, InputFormatError

_MASS_EPS = 1e-12


@dataclass(frozen=True)
class DensitySegment:
    """Nonnegative density values on a strictly increasing effort grid."""

    grid: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        g = np.asarray(self.grid, dtype=float)
        w = np.asarray(self.weights, dtype=float)
        if g.ndim != 1 or g.shape != w.shape or g.size < 2:
            raise DomainError("segment needs matching 1-d grid/weights of length >= 2")
        if np.any(np.diff(g) <= 0):
            raise DomainError("segment grid must be strictly increasing")
        if g[0] <= 0:
            raise DomainError("segment grid must lie in (0, inf)")
        if np.any(w < 0):
            raise DomainError("segment weights must be nonnegative")
        object.__setattr__(self, "grid", g)
        object.__setattr__(self, "weights", w)

    @property
    def mass(self) -> float:
        return float(np.trapezoid(self.weights, self.grid))

    def integrate(self, g) -> float:
        return float(np.trapezoid(self.weights * np.asarray(g(self.grid), dtype=float), self.grid))


@dataclass(frozen=True)
class EffortMeasure:
    """Finite measure on (0, inf): atoms (locations, masses) plus segments."""

    locations: np.ndarray = field(default_factory=lambda: np.empty(0))
    masses: np.ndarray = field(default_factory=lambda: np.empty(0))
    segments: tuple[DensitySegment, ...] = ()

    def __post_init__(self):
        loc = np.atleast_1d(np.asarray(self.locations, dtype=float))
        m = np.atleast_1d(np.asarray(self.masses, dtype=float))
        if loc.shape != m.shape:
            raise DomainError("locations and masses must have equal length")
        if np.any(loc <= 0):
            raise DomainError("atom locations must be strictly positive")
        if np.any(m <= 0):
            raise DomainError("atom masses must be strictly positive")
        # Canonical form: sorted locations, co-located atoms merged.
        if loc.size:
            order = np.argsort(loc, kind="stable")
            loc, m = loc[order], m[order]
            uniq, inverse = np.unique(loc, return_inverse=True)
            if uniq.size != loc.size:
                m = np.bincount(inverse, weights=m)
                loc = uniq
        object.__setattr__(self, "locations", loc)
        object.__setattr__(self, "masses", m)
        object.__setattr__(self, "segments", tuple(self.segments))
        total = self.total_mass
        if not (_MASS_EPS < total <= 1.0 + 1e-9):
            raise DomainError(f"total mass must lie in (0, 1], got {total}")

    # ------------------------------------------------------------------
    # constructors
    # ------------------------------------------------------------------
    @staticmethod
    def dirac(e: float, mass: float = 1.0) -> "EffortMeasure":
        """Point mass at effort e > 0."""
        if not e > 0:
            raise DomainError(f"effort must be strictly positive, got {e}")
        return EffortMeasure(np.array([e]), np.array([mass]))

    @staticmethod
    def from_atoms(atoms) -> "EffortMeasure":
        """Build from an iterable of (effort, mass) pairs."""
        pairs = list(atoms)
        if not pairs:
            raise DomainError("need at least one atom")
        loc = np.array([p[0] for p in pairs], dtype=float)
        m = np.array([p[1] for p in pairs], dtype=float)
        return EffortMeasure(loc, m)

    @staticmethod
    def uniform(a: float, b: float, mass: float = 1.0, n: int = 2**12) -> "EffortMeasure":
        """Uniform density on [a, b] carrying the given mass, on an n-point grid."""
        if not 0 < a < b:
            raise DomainError("need 0 < a < b")
        grid = np.linspace(a, b, n)
        w = np.full(n, mass / (b - a))
        return EffortMeasure(segments=(DensitySegment(grid, w),))

    # ------------------------------------------------------------------
    # queries
    # ------------------------------------------------------------------
    @property
    def total_mass(self) -> float:
        return float(self.masses.sum()) + sum(s.mass for s in self.segments)

    @property
    def max_effort(self) -> float:
        hi = self.locations[-1] if self.locations.size else 0.0
        for s in self.segments:
            hi = max(hi, s.grid[-1])
        return float(hi)

    @property
    def min_effort(self) -> float:
        lo = self.locations[0] if self.locations.size else np.inf
        for s in self.segments:
            lo = min(lo, s.grid[0])
        return float(lo)

    def integrate(self, g) -> float:
        """∫ g dp.  ``g`` must accept numpy arrays of efforts."""
        total = 0.0
        if self.locations.size:
            total += float(np.dot(self.masses, np.asarray(g(self.locations), dtype=float)))
        for s in self.segments:
            total += s.integrate(g)
        return total

    def mean_effort(self) -> float:
        return self.integrate(lambda e: e) / self.total_mass

    def is_atomic(self) -> bool:
        return not self.segments

    # ------------------------------------------------------------------
    # algebra
    # ------------------------------------------------------------------
    def scale(self, factor: float) -> "EffortMeasure":
        if not factor > 0:
            raise DomainError("scale factor must be positive")
        segs = tuple(DensitySegment(s.grid, s.weights * factor) for s in self.segments)
        locs = self.locations if self.locations.size else np.empty(0)
        return EffortMeasure(locs, self.masses * factor if self.masses.size else np.empty(0), segs)

    def mix(self, alpha: float, other: "EffortMeasure") -> "EffortMeasure":
        """Convex combination alpha * self + (1 - alpha) * other."""
        if not 0.0 <= alpha <= 1.0:
            raise DomainError(f"mixing weight must lie in [0,1], got {alpha}")
        if alpha == 1.0:
            return self
        if alpha == 0.0:
            return other
        locs = np.concatenate([self.locations, other.locations])
        ms = np.concatenate([self.masses * alpha, other.masses * (1.0 - alpha)])
        segs = tuple(DensitySegment(s.grid, s.weights * alpha) for s in self.segments) + tuple(
            DensitySegment(s.grid, s.weights * (1.0 - alpha)) for s in other.segments
        )
        return EffortMeasure(locs, ms, segs)

    def right_shift(self, a: float) -> "EffortMeasure":
        """Translate every effort upward by a > 0; mass is preserved."""
        if not a > 0:
            raise DomainError(f"shift must be strictly positive, got {a}")
        segs = tuple(DensitySegment(s.grid + a, s.weights) for s in self.segments)
        return EffortMeasure(self.locations + a, self.masses.copy(), segs)

    def discretize(self, points_per_segment: int = 64) -> "EffortMeasure":
        """Collapse density segments into atoms (trapezoid node weights)."""
        if not self.segments:
            return self
        locs = [self.locations]
        ms = [self.masses]
        for s in self.segments:
            grid, w = s.grid, s.weights
            if grid.size > points_per_segment:
                idx = np.linspace(0, grid.size - 1, points_per_segment).round().astype(int)
                grid, w = grid[idx], w[idx]
            dx = np.diff(grid)
            node = np.zeros_like(grid)
            node[:-1] += 0.5 * dx * w[:-1]
            node[1:] += 0.5 * dx * w[1:]
            keep = node > 0
            locs.append(grid[keep])
            ms.append(node[keep])
        return EffortMeasure(np.concatenate(locs), np.concatenate(ms))

    # ------------------------------------------------------------------
    # serialization
    # ------------------------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "atoms": [[float(e), float(m)] for e, m in zip(self.locations, self.masses)],
            "segments": [
                {"grid": s.grid.tolist(), "weights": s.weights.tolist()} for s in self.segments
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @staticmethod
    def from_dict(d: dict) -> "EffortMeasure":
        try:
            atoms = d.get("atoms", [])
            segs = tuple(
                DensitySegment(np.asarray(s["grid"], dtype=float), np.asarray(s["weights"], dtype=float))
                for s in d.get("segments", [])
            )
        except (KeyError, TypeError) as exc:
            raise InputFormatError(f"malformed measure object: {exc}") from exc
        locs = np.array([a[0] for a in atoms], dtype=float)
        ms = np.array([a[1] for a in atoms], dtype=float)
        return EffortMeasure(locs, ms, segs)

    @staticmethod
    def from_json(text: str) -> "EffortMeasure":
        return EffortMeasure.from_dict(json.loads(text))

    @staticmethod
    def from_csv(path) -> "EffortMeasure":
        """Load an atom list from a two-column CSV of (effort, mass) rows."""
        atoms = []
        with open(path, newline="") as fh:
            for lineno, row in enumerate(csv.reader(fh), start=1):
                if not row or row[0].lstrip().startswith("#"):
                    continue
                if len(row) < 2:
                    raise InputFormatError(f"{path}:{lineno}: expected two columns")
                try:
                    atoms.append((float(row[0]), float(row[1])))
                except ValueError:
                    if lineno == 1:
                        continue
                    raise InputFormatError(f"{path}:{lineno}: non-numeric entry {row!r}")
        if not atoms:
            raise InputFormatError(f"{path}: no atom rows found")
        return EffortMeasure.from_atoms(atoms)

    def allclose(self, other: "EffortMeasure", tol: float = 1e-12) -> bool:
        """Atom-by-atom and segment-by-segment comparison (canonical forms)."""
        if self.locations.size != other.locations.size or len(self.segments) != len(other.segments):
            return False
        if not (
            np.allclose(self.locations, other.locations, atol=tol, rtol=0)
            and np.allclose(self.masses, other.masses, atol=tol, rtol=0)
        ):
            return False
        for a, b in zip(self.segments, other.segments):
            if a.grid.shape != b.grid.shape:
                return False
            if not (
                np.allclose(a.grid, b.grid, atol=tol, rtol=0)
                and np.allclose(a.weights, b.weights, atol=tol, rtol=0)
            ):
                return False
        return True


def dirac(e: float) -> EffortMeasure:
    """Unit point mass at effort e (module-level convenience)."""
    return EffortMeasure.dirac(e)
