"""Archimedean generators and the generator-level hypothesis checks.

A generator ``psi`` maps [0, inf) onto (0, 1] with ``psi(0) = 1``; its
inverse ``phi`` maps (0, 1] back.  ``phi(0)`` is infinite; it is represented
by the finite sentinel :data:`SATURATED` and ``psi`` sends anything at or
beyond the sentinel to exactly 0, so sums of inverses may carry the
sentinel through without producing NaN.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import ClassVar

import numpy as np
from scipy.interpolate import PchipInterpolator

from ._checks import CheckResult, DomainError, check_properties, grid_meta, scalar_or_array

SATURATED = 1e300


def _check_v(v):
    v = np.asarray(v, dtype=float)
    if np.any(v > 1) or np.any(v < 0) or np.any(np.isnan(v)):
        raise ValueError("phi is defined for values in [0, 1]")
    return v


class Generator:
    """Base class.  Subclasses implement ``_psi`` and ``_phi`` on the open domain."""

    tag: ClassVar[str]

    def psi(self, x):
        """Generator value at ``x >= 0``; exactly 0 at or beyond the sentinel."""
        x = np.asarray(x, dtype=float)
        if np.any(x < 0):
            raise DomainError("psi is defined for x >= 0")
        sat = x >= SATURATED
        with np.errstate(over="ignore", under="ignore", invalid="ignore"):
            val = self._psi(np.where(sat, 0.0, x))
        return scalar_or_array(np.where(sat, 0.0, val))

    def phi(self, v):
        """Inverse generator on (0, 1]; ``phi(0)`` returns :data:`SATURATED`."""
        v = _check_v(v)
        zero = v <= 0
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            val = self._phi(np.where(zero, 0.5, v))
        val = np.where(np.isfinite(val), np.maximum(val, 0.0), SATURATED)
        return scalar_or_array(np.where(zero, SATURATED, np.minimum(val, SATURATED)))

    @property
    def is_independence(self) -> bool:
        return False

    def params(self) -> dict:
        return {}

    def to_dict(self) -> dict:
        return {"family": self.tag, "params": self.params()}


@dataclass(frozen=True)
class Independence(Generator):
    """psi(x) = exp(-x); the copula is the product copula."""

    tag: ClassVar[str] = "independence"

    def _psi(self, x):
        return np.exp(-x)

    def _phi(self, v):
        return -np.log(v)

    @property
    def is_independence(self):
        return True


@dataclass(frozen=True)
class GumbelFrailty(Generator):
    """psi(x) = exp((1 - e^x) / a), 0 < a <= 1."""

    a: float
    tag: ClassVar[str] = "gumbel_frailty"

    def __post_init__(self):
        a = float(self.a)
        if not 0 < a <= 1:
            raise ValueError(f"GumbelFrailty needs 0 < a <= 1, got {a}")
        object.__setattr__(self, "a", a)

    def _psi(self, x):
        return np.exp(-np.expm1(x) / self.a)

    def _phi(self, v):
        return np.log1p(-self.a * np.log(v))

    def params(self):
        return {"a": self.a}


@dataclass(frozen=True)
class GumbelHougaard(Generator):
    """psi(x) = exp(-x^(1/a)), a >= 1."""

    a: float
    tag: ClassVar[str] = "gumbel_hougaard"

    def __post_init__(self):
        a = float(self.a)
        if not (np.isfinite(a) and a >= 1):
            raise ValueError(f"GumbelHougaard needs a >= 1, got {a}")
        object.__setattr__(self, "a", a)

    def _psi(self, x):
        return np.exp(-x ** (1 / self.a))

    def _phi(self, v):
        return (-np.log(v)) ** self.a

    def params(self):
        return {"a": self.a}


@dataclass(frozen=True)
class Clayton(Generator):
    """psi(x) = (1 + c x)^(-1/c), c > 0."""

    c: float
    tag: ClassVar[str] = "clayton"

    def __post_init__(self):
        c = float(self.c)
        if not (np.isfinite(c) and c > 0):
            raise ValueError(f"Clayton needs c > 0, got {c}")
        object.__setattr__(self, "c", c)

    def _psi(self, x):
        return np.exp(-np.log1p(self.c * x) / self.c)

    def _phi(self, v):
        return np.expm1(-self.c * np.log(v)) / self.c

    def params(self):
        return {"c": self.c}


class TabulatedGenerator(Generator):
    """Generator given by samples of psi on an increasing x grid.

    ``log psi`` is interpolated by a monotone cubic and extended linearly
    beyond the last node using the final slope.  The inverse is found by
    bracketing: the bracket ``[0, X]`` is doubled until ``psi(X) <= v`` and
    then bisected.
    """

    tag: ClassVar[str] = "tabulated"

    def __init__(self, x, psi):
        x = np.asarray(x, dtype=float)
        p = np.asarray(psi, dtype=float)
        if x.ndim != 1 or x.shape != p.shape or x.size < 3:
            raise ValueError("tabulated generator needs matching 1-d arrays, >= 3 points")
        if x[0] != 0 or p[0] != 1:
            raise ValueError("tabulated generator must start at psi(0) = 1")
        if np.any(np.diff(x) <= 0) or np.any(np.diff(p) >= 0) or p[-1] <= 0:
            raise ValueError("tabulated psi must be strictly decreasing and positive")
        self.x = tuple(x.tolist())
        self.values = tuple(p.tolist())
        self._logpsi = PchipInterpolator(x, np.log(p), extrapolate=False)
        self._tail_slope = float(np.log(p[-1] / p[-2]) / (x[-1] - x[-2]))

    def __eq__(self, other):
        return (isinstance(other, TabulatedGenerator)
                and (self.x, self.values) == (other.x, other.values))

    def __hash__(self):
        return hash((self.x, self.values))

    def __repr__(self):
        return f"TabulatedGenerator(n={len(self.x)})"

    def _psi(self, x):
        x = np.asarray(x, dtype=float)
        xmax = self.x[-1]
        inner = self._logpsi(np.minimum(x, xmax))
        tail = np.log(self.values[-1]) + self._tail_slope * (x - xmax)
        return np.exp(np.where(x <= xmax, inner, tail))

    def _phi(self, v):
        shape = np.shape(v)
        v = np.atleast_1d(np.asarray(v, dtype=float))
        hi = np.full(v.shape, max(self.x[-1], 1.0))
        for _ in range(2000):
            short = self._psi(hi) > v
            if not np.any(short):
                break
            hi = np.where(short, 2 * hi, hi)
        lo = np.zeros_like(hi)
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            above = self._psi(mid) > v
            lo = np.where(above, mid, lo)
            hi = np.where(above, hi, mid)
        return (0.5 * (lo + hi)).reshape(shape)

    def params(self):
        return {"x": list(self.x), "psi": list(self.values)}


GENERATORS = {
    cls.tag: cls
    for cls in (Independence, GumbelFrailty, GumbelHougaard, Clayton, TabulatedGenerator)
}


def make_generator(family: str, params: dict | None = None) -> Generator:
    """Build a generator from its scenario-file tag and parameter map."""
    try:
        cls = GENERATORS[family]
    except KeyError:
        raise ValueError(f"unknown generator family {family!r}; "
                         f"expected one of {sorted(GENERATORS)}") from None
    return cls(**(params or {}))


# -- hypothesis checks ---------------------------------------------------------

TAIL_LEVEL = 1e-6


def default_generator_grid(gen: Generator, n: int = 256, spacing: str = "log"):
    """Grid on (0, phi(1e-6)], the range where psi is not saturated.

    Log spacing (six decades below the upper end) resolves curvature near
    the origin; linear spacing is needed for finite-difference sign tests.
    """
    x_hi = float(gen.phi(TAIL_LEVEL))
    if spacing == "log":
        return np.geomspace(x_hi * 1e-6, x_hi, n)
    return np.linspace(x_hi / n, x_hi, n)


def check_log_concave(gen: Generator, grid=None, slack: float = 1e-9) -> CheckResult:
    """Test concavity of ``log psi`` by second differences.

    Parameters
    ----------
    gen : Generator
    grid : array_like, optional
        At least 32 increasing points in (0, x_hi) with ``psi(x_hi) > 1e-12``.
        Defaults to :func:`default_generator_grid`.
    slack : float
        Relative tolerance on the slope comparisons.

    Returns
    -------
    CheckResult
    """
    grid = default_generator_grid(gen) if grid is None else np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size < 32:
        raise ValueError("log-concavity check needs at least 32 grid points")
    if grid[0] <= 0 or np.any(np.diff(grid) <= 0):
        raise ValueError("grid must be increasing and strictly positive")
    values = np.asarray(gen.psi(grid))
    if np.any(values <= 1e-12):
        raise ValueError("grid reaches the saturated tail of psi")
    return check_properties("log_concave_psi", grid, np.log(values), ("concave",), slack)


def check_d_monotone(gen: Generator, order: int = 3, grid=None,
                     slack: float = 1e-7) -> CheckResult:
    """Sign checks ``(-1)^k Delta^k psi >= 0`` for k = 1..order.

    Finite differences on a uniform grid stand in for derivatives; this is a
    necessary-condition screen, not a proof of d-monotonicity.
    """
    if not 1 <= order <= 3:
        raise ValueError("order must be 1, 2 or 3")
    if grid is None:
        grid = default_generator_grid(gen, spacing="linear")
    grid = np.asarray(grid, dtype=float)
    steps = np.diff(grid)
    if not np.allclose(steps, steps[0], rtol=1e-9, atol=0):
        raise ValueError("d-monotone check needs a uniform grid")
    v = np.asarray(gen.psi(grid), dtype=float)
    scale = slack * np.max(np.abs(v))
    for k in range(1, order + 1):
        d = (-1) ** k * np.diff(v, n=k)
        bad = np.nonzero(d < -scale)[0]
        if bad.size:
            return CheckResult(f"{k}-monotone", False, float(grid[bad[0]]),
                               f"order-{k} difference has the wrong sign",
                               grid_meta(grid))
    return CheckResult(f"{order}-monotone", True, None, "", grid_meta(grid))


def composition(outer: Generator, inner: Generator):
    """``f = phi_outer o psi_inner`` as a vectorised callable."""
    def f(x):
        return np.asarray(outer.phi(np.asarray(inner.psi(x))), dtype=float)
    return f


def additivity_grid(inner: Generator, m: int = 24):
    """Triangular grid {(x_i, x_j): i + j <= m - 1} on [0, phi_inner(1e-6)].

    Returns two flat arrays.  With ``m = 24`` there are 300 pairs, all
    three corners of the triangle included.
    """
    x_hi = float(inner.phi(TAIL_LEVEL))
    pts = np.linspace(0.0, x_hi, m)
    i, j = np.nonzero(np.add.outer(np.arange(m), np.arange(m)) <= m - 1)
    return pts[i], pts[j]


def check_additivity(outer: Generator, inner: Generator, mode: str,
                     grid=None, slack: float = 1e-9) -> CheckResult:
    """Test super- or sub-additivity of ``phi_outer o psi_inner``.

    Parameters
    ----------
    outer, inner : Generator
        The composition is ``phi_outer(psi_inner(x))``.
    mode : {"super", "sub"}
        ``super`` requires ``f(x + y) >= f(x) + f(y)``.
    grid : tuple of arrays, optional
        Paired ``(x, y)`` abscissae, at least 64 pairs.  Defaults to
        :func:`additivity_grid`.
    slack : float
        Relative tolerance, scaled by ``1 + |f(x + y)|``.

    Returns
    -------
    CheckResult
        Witness is the first violating ``(x, y)`` pair.
    """
    if mode not in ("super", "sub"):
        raise ValueError("mode must be 'super' or 'sub'")
    xs, ys = additivity_grid(inner) if grid is None else map(np.asarray, grid)
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if xs.shape != ys.shape or xs.size < 64:
        raise ValueError("additivity check needs at least 64 (x, y) pairs")
    if np.any(xs < 0) or np.any(ys < 0):
        raise ValueError("additivity pairs must be nonnegative")
    f = composition(outer, inner)
    fxy, fx, fy = f(xs + ys), f(xs), f(ys)
    if np.any(fxy >= SATURATED) or np.any(np.asarray(inner.psi(xs + ys)) <= 0):
        raise DomainError("composition leaves the positive range of psi")
    gap = fxy - fx - fy if mode == "super" else fx + fy - fxy
    tol = slack * (1 + np.abs(fxy))
    bad = np.nonzero(gap < -tol)[0]
    meta = {"lo": 0.0, "hi": float(np.max(xs + ys)), "n": int(xs.size)}
    name = f"{mode}_additive_composition"
    if bad.size:
        k = bad[0]
        return CheckResult(name, False, (float(xs[k]), float(ys[k])),
                           f"gap {gap[k]:.3g}", meta)
    return CheckResult(name, True, None, "", meta)
