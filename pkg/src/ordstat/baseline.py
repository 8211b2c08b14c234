"""Baseline distributions F_b for the exponentiated location-scale model.

Each family exposes the distribution function, survival, density, hazard
``r = f / (1 - F)``, reversed hazard ``f / F`` and the ratio
``g = r / reversed_hazard = F / (1 - F)`` together with the derivatives the
hazard-order machinery needs.  Below ``support_lo`` every family has
``F = 0``, ``f = 0`` and zero hazard.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from typing import ClassVar

import numpy as np
from scipy.interpolate import PchipInterpolator

from ._checks import (
    CheckResult,
    DomainError,
    bisect_increasing,
    check_properties,
    richardson_derivative,
    scalar_or_array,
)


def _positive(name, value):
    value = float(value)
    if not np.isfinite(value) or value <= 0:
        raise ValueError(f"{name} must be a positive real, got {value!r}")
    return value


class Baseline:
    """Common machinery; subclasses supply the analytic pieces.

    Subclasses implement ``_cdf``, ``_sf``, ``_pdf`` and ``_ppf`` for points
    strictly inside the support, and optionally ``_hazard`` and
    ``_dlogpdf`` (derivative of the log density).
    """

    tag: ClassVar[str]
    support_lo: float = 0.0
    support_hi: float = np.inf

    # -- helpers -----------------------------------------------------------
    def _inside(self, x):
        return (x > self.support_lo) & (x < self.support_hi)

    def _eval(self, fn, x, below, above):
        x = np.asarray(x, dtype=float)
        inside = self._inside(x)
        safe = np.where(inside, x, self._probe)
        with np.errstate(divide="ignore", over="ignore", invalid="ignore",
                         under="ignore"):
            val = fn(safe)
        out = np.where(inside, val, np.where(x <= self.support_lo, below, above))
        return scalar_or_array(out)

    @property
    def _probe(self):
        return self.support_lo + 1.0

    # -- distribution ------------------------------------------------------
    def cdf(self, x):
        """F_b(x); zero at and below ``support_lo``."""
        return self._eval(self._cdf, x, 0.0, 1.0)

    def sf(self, x):
        return self._eval(self._sf, x, 1.0, 0.0)

    def pdf(self, x):
        return self._eval(self._pdf, x, 0.0, 0.0)

    def ppf(self, u):
        """Quantile function on [0, 1)."""
        u = np.asarray(u, dtype=float)
        if np.any((u < 0) | (u > 1)):
            raise ValueError("probabilities must lie in [0, 1]")
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            q = self._ppf(np.where(u > 0, u, 0.5))
        return scalar_or_array(np.where(u > 0, q, self.support_lo))

    def hazard(self, x):
        """Hazard rate f/(1-F).

        Zero below ``support_lo``; at ``support_lo`` itself the right-hand
        limit is returned.

        Raises
        ------
        DomainError
            If the survival function is numerically zero inside the
            support.
        """
        x = np.asarray(x, dtype=float)
        s = np.asarray(self.sf(x))
        if np.any((s <= 0) & (x > self.support_lo)):
            raise DomainError(f"{self.tag}: survival underflows at some x")
        out = np.asarray(self._eval(self._hazard, x, 0.0, np.nan))
        at_lo = x == self.support_lo
        if np.any(at_lo):
            with np.errstate(divide="ignore", invalid="ignore"):
                edge = self._hazard(np.full(1, self.support_lo))[0]
            out = np.where(at_lo, edge, out)
        return scalar_or_array(out)

    def _hazard(self, x):
        return self._pdf(x) / self._sf(x)

    def reversed_hazard(self, x):
        x = np.asarray(x, dtype=float)
        if np.any(x <= self.support_lo):
            raise DomainError(f"{self.tag}: reversed hazard needs F(x) > 0")
        return self._eval(lambda t: self._pdf(t) / self._cdf(t), x, np.nan, 0.0)

    def g_ratio(self, x):
        """g = r / reversed_hazard, which equals F / (1 - F)."""
        return self._eval(lambda t: self._cdf(t) / self._sf(t), x, 0.0, np.inf)

    def g_prime(self, x):
        # d/dx F/(1-F) = f/(1-F)^2 = r/(1-F)
        return self._eval(lambda t: self._hazard(t) / self._sf(t), x, 0.0, np.inf)

    def hazard_prime(self, x):
        """r_b'(x), analytic via r' = r (f'/f + r) when the family has it."""
        if hasattr(self, "_dlogpdf"):
            def fn(t):
                r = self._hazard(t)
                return r * (self._dlogpdf(t) + r)
            return self._eval(fn, x, 0.0, np.nan)
        return self._numeric_derivative(self._hazard, x)

    def g_second(self, x):
        # g'' = (r' + r^2) / (1 - F)
        x = np.asarray(x, dtype=float)
        rp = np.asarray(self.hazard_prime(x), dtype=float)
        r = np.asarray(self._eval(self._hazard, x, 0.0, np.nan), dtype=float)
        s = np.asarray(self.sf(x), dtype=float)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            out = np.where(self._inside(x), (rp + r * r) / s, 0.0)
        return scalar_or_array(out)

    def _numeric_derivative(self, fn, x):
        x = np.asarray(x, dtype=float)
        h = 1e-4 * np.maximum(1.0, np.abs(x))
        room = np.minimum(x - self.support_lo, self.support_hi - x)
        h = np.minimum(h, 0.5 * np.where(room > 0, room, 1.0))
        return self._eval(lambda t: richardson_derivative(fn, t, h), x, 0.0, np.nan)

    # -- description -------------------------------------------------------
    def params(self) -> dict:
        raise NotImplementedError

    def to_dict(self) -> dict:
        return {"family": self.tag, "params": self.params()}


@dataclass(frozen=True)
class Pareto(Baseline):
    """F(x) = 1 - x^(-a) on x >= 1."""

    a: float
    tag: ClassVar[str] = "pareto"
    support_lo: ClassVar[float] = 1.0

    def __post_init__(self):
        object.__setattr__(self, "a", _positive("a", self.a))

    def _sf(self, x):
        return np.exp(-self.a * np.log(x))

    def _cdf(self, x):
        return -np.expm1(-self.a * np.log(x))

    def _pdf(self, x):
        return self.a * np.exp(-(self.a + 1) * np.log(x))

    def _hazard(self, x):
        return self.a / x

    def _dlogpdf(self, x):
        return -(self.a + 1) / x

    def _ppf(self, u):
        return np.exp(-np.log1p(-u) / self.a)

    def params(self):
        return {"a": self.a}


@dataclass(frozen=True)
class Burr(Baseline):
    """Burr XII: F(x) = 1 - (1 + x^c)^(-k) on x > 0."""

    c: float
    k: float
    tag: ClassVar[str] = "burr"

    def __post_init__(self):
        object.__setattr__(self, "c", _positive("c", self.c))
        object.__setattr__(self, "k", _positive("k", self.k))

    def _sf(self, x):
        return np.exp(-self.k * np.log1p(x ** self.c))

    def _cdf(self, x):
        return -np.expm1(-self.k * np.log1p(x ** self.c))

    def _hazard(self, x):
        xc = x ** self.c
        return self.c * self.k * xc / (x * (1 + xc))

    def _pdf(self, x):
        return self._hazard(x) * self._sf(x)

    def _dlogpdf(self, x):
        xc = x ** self.c
        return (self.c - 1) / x - (self.k + 1) * self.c * xc / (x * (1 + xc))

    def _ppf(self, u):
        return np.expm1(-np.log1p(-u) / self.k) ** (1 / self.c)

    def params(self):
        return {"c": self.c, "k": self.k}


@dataclass(frozen=True)
class PowerGenWeibull(Baseline):
    """Power generalised Weibull: F(x) = 1 - exp(1 - (1 + x^c)^(1/k))."""

    c: float
    k: float
    tag: ClassVar[str] = "pgw"

    def __post_init__(self):
        object.__setattr__(self, "c", _positive("c", self.c))
        object.__setattr__(self, "k", _positive("k", self.k))

    def _cumhaz(self, x):
        return np.expm1(np.log1p(x ** self.c) / self.k)

    def _sf(self, x):
        return np.exp(-self._cumhaz(x))

    def _cdf(self, x):
        return -np.expm1(-self._cumhaz(x))

    def _hazard(self, x):
        xc = x ** self.c
        return (self.c / self.k) * (xc / x) * (1 + xc) ** (1 / self.k - 1)

    def _pdf(self, x):
        return self._hazard(x) * self._sf(x)

    def _dlogpdf(self, x):
        xc = x ** self.c
        return ((self.c - 1) / x
                + (1 / self.k - 1) * self.c * xc / (x * (1 + xc))
                - self._hazard(x))

    def _ppf(self, u):
        H = -np.log1p(-u)
        return np.expm1(self.k * np.log1p(H)) ** (1 / self.c)

    def params(self):
        return {"c": self.c, "k": self.k}


@dataclass(frozen=True)
class ExpWeibull(Baseline):
    """Exponentiated Weibull: F(x) = (1 - exp(-x^d))^c on x > 0."""

    d: float
    c: float
    tag: ClassVar[str] = "expweibull"

    def __post_init__(self):
        object.__setattr__(self, "d", _positive("d", self.d))
        object.__setattr__(self, "c", _positive("c", self.c))

    def _log_cdf(self, x):
        return self.c * np.log(-np.expm1(-x ** self.d))

    def _cdf(self, x):
        return np.exp(self._log_cdf(x))

    def _sf(self, x):
        return -np.expm1(self._log_cdf(x))

    def _pdf(self, x):
        xd = x ** self.d
        return (self.c * self.d * xd / x * np.exp(-xd)
                * np.exp((self.c - 1) * np.log(-np.expm1(-xd))))

    def _dlogpdf(self, x):
        xd = x ** self.d
        return ((self.d - 1) / x - self.d * xd / x
                + (self.c - 1) * self.d * xd / x / np.expm1(xd))

    def _ppf(self, u):
        return (-np.log1p(-u ** (1 / self.c))) ** (1 / self.d)

    def params(self):
        return {"d": self.d, "c": self.c}


@dataclass(frozen=True)
class TruncWeibull(Baseline):
    """Lower-truncated Weibull: F(x) = 1 - exp(1 - x^a) on x >= 1."""

    a: float
    tag: ClassVar[str] = "truncweibull"
    support_lo: ClassVar[float] = 1.0

    def __post_init__(self):
        object.__setattr__(self, "a", _positive("a", self.a))

    def _cumhaz(self, x):
        return np.expm1(self.a * np.log(x))

    def _sf(self, x):
        return np.exp(-self._cumhaz(x))

    def _cdf(self, x):
        return -np.expm1(-self._cumhaz(x))

    def _hazard(self, x):
        return self.a * x ** (self.a - 1)

    def _pdf(self, x):
        return self._hazard(x) * self._sf(x)

    def _dlogpdf(self, x):
        return (self.a - 1) / x - self._hazard(x)

    def _ppf(self, u):
        return np.exp(np.log1p(-np.log1p(-u)) / self.a)

    def params(self):
        return {"a": self.a}


@dataclass(frozen=True)
class RatioPareto(Baseline):
    """F(x) = (x - 1) / (x + 1) on x >= 1."""

    tag: ClassVar[str] = "ratio"
    support_lo: ClassVar[float] = 1.0

    def _cdf(self, x):
        return (x - 1) / (x + 1)

    def _sf(self, x):
        return 2 / (x + 1)

    def _pdf(self, x):
        return 2 / (x + 1) ** 2

    def _hazard(self, x):
        return 1 / (x + 1)

    def _dlogpdf(self, x):
        return -2 / (x + 1)

    def _ppf(self, u):
        return (1 + u) / (1 - u)

    def params(self):
        return {}


class Tabulated(Baseline):
    """Baseline given by (x, F) pairs, interpolated by a monotone cubic.

    The table must start at F = 0 and end at F = 1, strictly increasing in
    both coordinates.  The hazard comes from the interpolant's derivative.
    """

    tag: ClassVar[str] = "tabulated"

    def __init__(self, x, F):
        x = np.asarray(x, dtype=float)
        F = np.asarray(F, dtype=float)
        if x.ndim != 1 or x.shape != F.shape or x.size < 3:
            raise ValueError("tabulated baseline needs matching 1-d x and F, >= 3 points")
        if np.any(np.diff(x) <= 0) or np.any(np.diff(F) <= 0):
            raise ValueError("tabulated grid must be strictly increasing in x and F")
        if F[0] != 0.0 or F[-1] != 1.0:
            raise ValueError("tabulated F must start at 0 and end at 1")
        self.x = tuple(x.tolist())
        self.F = tuple(F.tolist())
        self.support_lo = float(x[0])
        self.support_hi = float(x[-1])

    def __eq__(self, other):
        return isinstance(other, Tabulated) and (self.x, self.F) == (other.x, other.F)

    def __hash__(self):
        return hash((self.x, self.F))

    def __repr__(self):
        return f"Tabulated(n={len(self.x)}, lo={self.support_lo}, hi={self.support_hi})"

    @property
    def _probe(self):
        return 0.5 * (self.support_lo + self.support_hi)

    @cached_property
    def _interp(self):
        return PchipInterpolator(np.array(self.x), np.array(self.F), extrapolate=False)

    @cached_property
    def _d1(self):
        return self._interp.derivative(1)

    @cached_property
    def _d2(self):
        return self._interp.derivative(2)

    def _cdf(self, x):
        return np.clip(self._interp(x), 0.0, 1.0)

    def _sf(self, x):
        return 1.0 - self._cdf(x)

    def _pdf(self, x):
        return np.maximum(self._d1(x), 0.0)

    def _dlogpdf(self, x):
        return self._d2(x) / self._d1(x)

    def _ppf(self, u):
        return bisect_increasing(self._cdf, u, self.support_lo, self.support_hi)

    def params(self):
        return {"x": list(self.x), "F": list(self.F)}


BASELINES = {
    cls.tag: cls
    for cls in (Pareto, Burr, PowerGenWeibull, ExpWeibull, TruncWeibull,
                RatioPareto, Tabulated)
}


def make_baseline(family: str, params: dict | None = None) -> Baseline:
    """Build a baseline from its scenario-file tag and parameter map."""
    try:
        cls = BASELINES[family]
    except KeyError:
        raise ValueError(f"unknown baseline family {family!r}; "
                         f"expected one of {sorted(BASELINES)}") from None
    return cls(**(params or {}))


# -- shape conditions ----------------------------------------------------------


class ShapeCondition(str, enum.Enum):
    HAZARD_DECREASING = "hazard_decreasing"
    W_HAZARD_DECREASING = "w_hazard_decreasing"
    W2_HAZARD_DECREASING = "w2_hazard_decreasing"
    HAZARD_DECREASING_CONVEX = "hazard_decreasing_convex"
    W2_HAZARD_PRIME_INCREASING = "w2_hazard_prime_increasing"
    G_INCREASING_CONVEX = "g_increasing_convex"
    G_SECOND_DECREASING = "g_second_decreasing"
    W2_G_SECOND_DECREASING = "w2_g_second_decreasing"
    W_HAZARD_INCREASING_CONCAVE = "w_hazard_increasing_concave"
    G_INCREASING_CONCAVE = "g_increasing_concave"
    W_G_PRIME_CONVEX = "w_g_prime_convex"


_SC = ShapeCondition
_SHAPE_TABLE = {
    _SC.HAZARD_DECREASING: (lambda b, w: b.hazard(w), ("decreasing",)),
    _SC.W_HAZARD_DECREASING: (lambda b, w: w * b.hazard(w), ("decreasing",)),
    _SC.W2_HAZARD_DECREASING: (lambda b, w: w * w * b.hazard(w), ("decreasing",)),
    _SC.HAZARD_DECREASING_CONVEX: (lambda b, w: b.hazard(w), ("decreasing", "convex")),
    _SC.W2_HAZARD_PRIME_INCREASING: (lambda b, w: w * w * b.hazard_prime(w), ("increasing",)),
    _SC.G_INCREASING_CONVEX: (lambda b, w: b.g_ratio(w), ("increasing", "convex")),
    _SC.G_SECOND_DECREASING: (lambda b, w: b.g_second(w), ("decreasing",)),
    _SC.W2_G_SECOND_DECREASING: (lambda b, w: w * w * b.g_second(w), ("decreasing",)),
    _SC.W_HAZARD_INCREASING_CONCAVE: (lambda b, w: w * b.hazard(w), ("increasing", "concave")),
    _SC.G_INCREASING_CONCAVE: (lambda b, w: b.g_ratio(w), ("increasing", "concave")),
    _SC.W_G_PRIME_CONVEX: (lambda b, w: w * b.g_prime(w), ("convex",)),
}


SHAPE_TAIL_LEVEL = 1e-12


def default_shape_grid(family: Baseline, n: int = 128, span: float = 50.0):
    """Log-spaced offsets from ``support_lo`` covering (lo + 1e-6, lo + span).

    The span is cut where the survival function reaches 1e-12, so that
    hazard-based conditions stay computable.
    """
    tail = float(family.ppf(1.0 - SHAPE_TAIL_LEVEL)) - family.support_lo
    width = min(span, 0.999 * (family.support_hi - family.support_lo), tail)
    return family.support_lo + np.geomspace(1e-6, width, n)


def check_shape(family: Baseline, cond, grid=None, slack: float = 1e-9) -> CheckResult:
    """Check one shape condition of the baseline on a grid.

    Parameters
    ----------
    family : Baseline
    cond : ShapeCondition or str
    grid : array_like, optional
        Increasing abscissae strictly inside the support, at least 32 of
        them.  Defaults to :func:`default_shape_grid`.
    slack : float
        Relative tolerance for the finite-difference tests.

    Returns
    -------
    CheckResult
        With the first violating abscissa as witness.
    """
    cond = ShapeCondition(cond)
    grid = default_shape_grid(family) if grid is None else np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size < 32:
        raise ValueError("shape checks need a 1-d grid of at least 32 points")
    if np.any(np.diff(grid) <= 0):
        raise ValueError("grid must be strictly increasing")
    if grid[0] <= family.support_lo or grid[-1] >= family.support_hi:
        raise ValueError("grid must lie strictly inside the baseline support")
    if cond is _SC.W2_HAZARD_PRIME_INCREASING and isinstance(family, Tabulated):
        return CheckResult(cond.value, False, None,
                           "unsupported: needs an analytic hazard derivative")
    fn, props = _SHAPE_TABLE[cond]
    with np.errstate(over="ignore", invalid="ignore"):
        values = np.asarray(fn(family, grid), dtype=float)
    return check_properties(cond.value, grid, values, props, slack)
