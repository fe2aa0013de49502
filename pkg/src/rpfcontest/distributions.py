"""Continuous, strictly increasing cdfs used as performance noise.

Every distribution exposes the triple (cdf, pdf, quantile) plus the pdf
derivative where it exists.  All evaluators accept scalars or numpy arrays
and return the matching shape; scalars come back as plain floats.

Instances are immutable after construction and safe to share across
threads or parallel parameter sweeps.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np
from scipy import special

from .errors import DomainError, InputFormatError, UnsupportedOperationError

ArrayLike = Union[float, np.ndarray]

SQRT_2PI = math.sqrt(2.0 * math.pi)

#: Default absolute tolerances; individual call sites may override.
CDF_TOL = 1e-10
PDF_TOL = 1e-8


def _wrap(x, value):
    """Return a float for scalar input, ndarray otherwise."""
    if np.isscalar(x) or (isinstance(x, np.ndarray) and x.ndim == 0):
        return float(value)
    return np.asarray(value, dtype=float)


def _check_prob_open(q) -> None:
    qa = np.asarray(q, dtype=float)
    if np.any(qa <= 0.0) or np.any(qa >= 1.0):
        raise DomainError(f"quantile argument must lie in (0,1), got {q!r}")


class NoiseDistribution:
    """Interface: continuous strictly increasing cdf on the real line."""

    symmetric: bool = False

    def cdf(self, x: ArrayLike) -> ArrayLike:
        raise NotImplementedError

    def pdf(self, x: ArrayLike) -> ArrayLike:
        raise NotImplementedError

    def pdf_derivative(self, x: ArrayLike) -> ArrayLike:
        raise NotImplementedError

    def quantile(self, q: ArrayLike) -> ArrayLike:
        raise NotImplementedError

    def shift(self, t: float) -> "NoiseDistribution":
        """Distribution with cdf x -> self.cdf(x + t)."""
        if t == 0.0:
            return self
        return Shifted(self, float(t))

    def has_density(self) -> bool:
        return True

    def spec(self) -> dict:
        """JSON-serializable description understood by :func:`from_spec`."""
        raise NotImplementedError


@dataclass(frozen=True)
class Normal(NoiseDistribution):
    """Standard normal shock."""

    symmetric: bool = field(default=True, init=False)

    def cdf(self, x):
        return _wrap(x, special.ndtr(np.asarray(x, dtype=float)))

    def pdf(self, x):
        xa = np.asarray(x, dtype=float)
        return _wrap(x, np.exp(-0.5 * xa * xa) / SQRT_2PI)

    def pdf_derivative(self, x):
        xa = np.asarray(x, dtype=float)
        return _wrap(x, -xa * np.exp(-0.5 * xa * xa) / SQRT_2PI)

    def quantile(self, q):
        _check_prob_open(q)
        return _wrap(q, special.ndtri(np.asarray(q, dtype=float)))

    def spec(self):
        return {"kind": "normal"}


@dataclass(frozen=True)
class StudentT(NoiseDistribution):
    """Student's t shock with ``nu`` degrees of freedom.

    nu = 1 and nu = 2 use exact closed forms (arctan/tan and the
    algebraic cdf); other degrees of freedom go through the regularized
    incomplete beta function.
    """

    nu: float
    symmetric: bool = field(default=True, init=False)

    def __post_init__(self):
        if not self.nu > 0:
            raise DomainError(f"degrees of freedom must be positive, got {self.nu}")

    def _log_norm(self) -> float:
        nu = self.nu
        return (
            math.lgamma((nu + 1.0) / 2.0)
            - math.lgamma(nu / 2.0)
            - 0.5 * math.log(nu * math.pi)
        )

    def cdf(self, x):
        xa = np.asarray(x, dtype=float)
        if self.nu == 1.0:
            val = 0.5 + np.arctan(xa) / math.pi
        elif self.nu == 2.0:
            val = 0.5 + xa / (2.0 * np.sqrt(2.0 + xa * xa))
        else:
            val = special.stdtr(self.nu, xa)
        return _wrap(x, val)

    def pdf(self, x):
        xa = np.asarray(x, dtype=float)
        nu = self.nu
        val = np.exp(self._log_norm() - 0.5 * (nu + 1.0) * np.log1p(xa * xa / nu))
        return _wrap(x, val)

    def pdf_derivative(self, x):
        xa = np.asarray(x, dtype=float)
        nu = self.nu
        f = np.exp(self._log_norm() - 0.5 * (nu + 1.0) * np.log1p(xa * xa / nu))
        return _wrap(x, f * (-(nu + 1.0) * xa / (nu + xa * xa)))

    def quantile(self, q):
        _check_prob_open(q)
        qa = np.asarray(q, dtype=float)
        if self.nu == 1.0:
            val = np.tan(math.pi * (qa - 0.5))
        elif self.nu == 2.0:
            u = 2.0 * qa - 1.0
            val = u * np.sqrt(2.0 / (1.0 - u * u))
        else:
            # stdtrit round-trips only to ~1e-11; two Newton polishes on the
            # exact cdf/pdf bring it to machine precision
            val = np.asarray(special.stdtrit(self.nu, qa), dtype=float)
            for _ in range(2):
                f = np.asarray(self.pdf(val), dtype=float)
                step = np.where(f > 0.0, (special.stdtr(self.nu, val) - qa) / np.where(f > 0.0, f, 1.0), 0.0)
                val = val - step
        return _wrap(q, val)

    def spec(self):
        return {"kind": "student_t", "nu": self.nu}


@dataclass(frozen=True)
class Logistic(NoiseDistribution):
    """Logistic shock with the given scale (location fixed at zero)."""

    scale: float = 1.0
    symmetric: bool = field(default=True, init=False)

    def __post_init__(self):
        if not self.scale > 0:
            raise DomainError(f"scale must be positive, got {self.scale}")

    def cdf(self, x):
        xa = np.asarray(x, dtype=float)
        return _wrap(x, special.expit(xa / self.scale))

    def pdf(self, x):
        # evaluate on the negative side: expit(-|z|) keeps full precision
        # where expit(|z|) rounds to 1 and would zero the product
        xa = np.asarray(x, dtype=float)
        c = special.expit(-np.abs(xa) / self.scale)
        return _wrap(x, c * (1.0 - c) / self.scale)

    def pdf_derivative(self, x):
        xa = np.asarray(x, dtype=float)
        c = special.expit(-np.abs(xa) / self.scale)
        f = c * (1.0 - c) / self.scale
        sign = np.where(xa >= 0, 1.0, -1.0)
        return _wrap(x, -sign * f * (1.0 - 2.0 * c) / self.scale)

    def quantile(self, q):
        _check_prob_open(q)
        qa = np.asarray(q, dtype=float)
        return _wrap(q, self.scale * special.logit(qa))

    def spec(self):
        return {"kind": "logistic", "scale": self.scale}


@dataclass(frozen=True)
class Shifted(NoiseDistribution):
    """Base distribution composed with a translation: cdf(x) = base.cdf(x + t)."""

    base: NoiseDistribution
    t: float

    def __post_init__(self):
        # Flatten nested shifts so repeated shifting stays O(1) per eval.
        if isinstance(self.base, Shifted):
            object.__setattr__(self, "t", self.t + self.base.t)
            object.__setattr__(self, "base", self.base.base)
        object.__setattr__(self, "symmetric", self.t == 0.0 and self.base.symmetric)

    def cdf(self, x):
        return self.base.cdf(np.asarray(x, dtype=float) + self.t) if not np.isscalar(x) else self.base.cdf(x + self.t)

    def pdf(self, x):
        return self.base.pdf(np.asarray(x, dtype=float) + self.t) if not np.isscalar(x) else self.base.pdf(x + self.t)

    def pdf_derivative(self, x):
        arg = x + self.t if np.isscalar(x) else np.asarray(x, dtype=float) + self.t
        return self.base.pdf_derivative(arg)

    def quantile(self, q):
        return self.base.quantile(q) - self.t

    def has_density(self) -> bool:
        return self.base.has_density()

    def spec(self):
        return {"kind": "shifted", "base": self.base.spec(), "t": self.t}


class Tabulated(NoiseDistribution):
    """Empirical cdf given on a finite grid, monotone-cubic interpolated.

    The cdf is only declared continuous and strictly increasing on the
    tabulated range; outside the grid it is clamped to the boundary
    values.  No density is exposed (``pdf`` raises), and quantiles are
    restricted to the tabulated probability range.
    """

    symmetric = False

    def __init__(self, x, cdf_values):
        from scipy.interpolate import PchipInterpolator

        x = np.asarray(x, dtype=float)
        c = np.asarray(cdf_values, dtype=float)
        if x.ndim != 1 or x.shape != c.shape or x.size < 2:
            raise InputFormatError("tabulated grid needs matching 1-d arrays of length >= 2")
        if np.any(np.diff(x) <= 0):
            i = int(np.argmax(np.diff(x) <= 0))
            raise InputFormatError(f"grid x values not strictly increasing at index {i + 1}")
        if np.any(np.diff(c) <= 0):
            i = int(np.argmax(np.diff(c) <= 0))
            raise InputFormatError(f"cdf values not strictly increasing at index {i + 1}")
        if c[0] < 0.0 or c[-1] > 1.0:
            raise InputFormatError("cdf values must lie within [0, 1]")
        self.x = x
        self.c = c
        self._interp = PchipInterpolator(x, c, extrapolate=False)

    @classmethod
    def from_csv(cls, path) -> "Tabulated":
        """Load a two-column CSV of (x, cdf) rows, both strictly increasing."""
        xs, cs = [], []
        with open(path, newline="") as fh:
            for lineno, row in enumerate(csv.reader(fh), start=1):
                if not row or row[0].lstrip().startswith("#"):
                    continue
                if len(row) < 2:
                    raise InputFormatError(f"{path}:{lineno}: expected two columns, got {len(row)}")
                try:
                    xv, cv = float(row[0]), float(row[1])
                except ValueError:
                    if lineno == 1:
                        continue  # header row
                    raise InputFormatError(f"{path}:{lineno}: non-numeric entry {row!r}")
                if xs and xv <= xs[-1]:
                    raise InputFormatError(f"{path}:{lineno}: x column not strictly increasing")
                if cs and cv <= cs[-1]:
                    raise InputFormatError(f"{path}:{lineno}: cdf column not strictly increasing")
                xs.append(xv)
                cs.append(cv)
        if len(xs) < 2:
            raise InputFormatError(f"{path}: need at least two data rows")
        return cls(xs, cs)

    def cdf(self, x):
        xa = np.clip(np.asarray(x, dtype=float), self.x[0], self.x[-1])
        return _wrap(x, self._interp(xa))

    def pdf(self, x):
        raise UnsupportedOperationError("tabulated distribution carries no density")

    def pdf_derivative(self, x):
        raise UnsupportedOperationError("tabulated distribution carries no density")

    def has_density(self) -> bool:
        return False

    def quantile(self, q):
        _check_prob_open(q)
        qa = np.atleast_1d(np.asarray(q, dtype=float))
        if np.any(qa < self.c[0]) or np.any(qa > self.c[-1]):
            raise DomainError(
                f"quantile outside tabulated range [{self.c[0]}, {self.c[-1]}]"
            )
        out = np.empty_like(qa)
        for i, qi in enumerate(qa):
            lo, hi = self.x[0], self.x[-1]
            for _ in range(100):  # bisection on the monotone interpolant
                mid = 0.5 * (lo + hi)
                if float(self._interp(mid)) < qi:
                    lo = mid
                else:
                    hi = mid
            out[i] = 0.5 * (lo + hi)
        return _wrap(q, out if not np.isscalar(q) else out[0])

    def spec(self):
        return {"kind": "tabulated", "x": self.x.tolist(), "cdf": self.c.tolist()}


def from_spec(spec: dict) -> NoiseDistribution:
    """Build a distribution from its JSON description.

    Recognized kinds: ``normal``, ``student_t`` (field ``nu``),
    ``logistic`` (field ``scale``), ``shifted`` (fields ``base``, ``t``),
    ``tabulated`` (either inline ``x``/``cdf`` arrays or a ``csv`` path).
    """
    if not isinstance(spec, dict) or "kind" not in spec:
        raise InputFormatError(f"noise spec must be an object with a 'kind' field, got {spec!r}")
    kind = spec["kind"]
    if kind == "normal":
        return Normal()
    if kind == "student_t":
        return StudentT(float(spec["nu"]))
    if kind == "logistic":
        return Logistic(float(spec.get("scale", 1.0)))
    if kind == "shifted":
        return Shifted(from_spec(spec["base"]), float(spec["t"]))
    if kind == "tabulated":
        if "csv" in spec:
            return Tabulated.from_csv(spec["csv"])
        return Tabulated(spec["x"], spec["cdf"])
    raise InputFormatError(f"unknown noise kind {kind!r}")
