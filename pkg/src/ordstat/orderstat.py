"""Survival and hazard of the second-smallest lifetime in an ELS batch.

A component with location ``lam``, scale ``theta`` and shape ``alpha`` has
distribution ``F_b((x - lam) / theta) ** alpha``.  The second-smallest of
``n`` lifetimes exceeds ``x`` exactly when at most one component has
failed by ``x``.

Independent batches use the cancellation-free form

    prod_k S_k + sum_l F_l prod_{k != l} S_k,

which equals the usual alternating sum but never subtracts nearly equal
numbers.  Archimedean batches use the analogous form in generator space,

    psi(T) + sum_l [psi(T - t_l) - psi(T)],   t_k = phi(S_k), T = sum t_k,

with the leave-one-out sums ``T - t_l`` built from prefix and suffix sums so
that saturated terms never get subtracted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from ._checks import DomainError, bisect_increasing
from .baseline import Baseline
from .copula import Generator, Independence


@dataclass(frozen=True)
class ElsMarginal:
    """One exponentiated location-scale component.

    Parameters
    ----------
    lam : float
        Location, strictly positive.
    theta : float
        Scale, strictly positive.
    alpha : float
        Shape (power applied to the baseline distribution function).
    baseline : Baseline
    """

    lam: float
    theta: float
    alpha: float
    baseline: Baseline

    def __post_init__(self):
        for name in ("lam", "theta", "alpha"):
            v = float(getattr(self, name))
            if not np.isfinite(v) or v <= 0:
                raise ValueError(f"{name} must be a positive real, got {v!r}")
            object.__setattr__(self, name, v)

    def standardized(self, x):
        return (np.asarray(x, dtype=float) - self.lam) / self.theta

    def cdf(self, x):
        return _power_cdf(self.baseline, self.standardized(x), self.alpha)[0]

    def sf(self, x):
        """Survival ``1 - F_b(w) ** alpha``; 1 wherever ``F_b(w) = 0``."""
        return _power_cdf(self.baseline, self.standardized(x), self.alpha)[1]


def _power_cdf(baseline, w, alpha):
    """Return ``(F_b(w)**alpha, 1 - F_b(w)**alpha)`` without cancellation.

    ``log F_b`` switches to ``log1p(-S_b)`` in the upper tail, where the
    survival carries the precision.
    """
    w = np.asarray(w, dtype=float)
    Fb = np.asarray(baseline.cdf(w), dtype=float)
    Sb = np.asarray(baseline.sf(w), dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        logF = np.where(Sb < 0.5, np.log1p(-Sb), np.log(np.where(Fb > 0, Fb, 1.0)))
    live = Fb > 0
    a = np.asarray(alpha, dtype=float)
    F = np.where(live, np.exp(a * logF), 0.0)
    S = np.where(live, -np.expm1(a * logF), 1.0)
    return F, S


@dataclass(frozen=True)
class ElsBatch:
    """``n >= 2`` ELS components sharing one baseline.

    ``generator = None`` means mutually independent components; otherwise
    the survival copula is Archimedean with that generator.
    """

    marginals: tuple
    generator: Optional[Generator] = None

    def __post_init__(self):
        ms = tuple(self.marginals)
        if len(ms) < 2:
            raise ValueError("a batch needs at least two components")
        base = ms[0].baseline
        if any(m.baseline != base for m in ms[1:]):
            raise ValueError("all components must share one baseline")
        object.__setattr__(self, "marginals", ms)

    @classmethod
    def from_vectors(cls, lam, theta, alpha, baseline: Baseline,
                     generator: Optional[Generator] = None, n: Optional[int] = None):
        """Build a batch from parameter vectors; scalars are broadcast.

        ``n`` is required only when all three parameters are scalars.
        """
        arrays = [np.atleast_1d(np.asarray(v, dtype=float)) for v in (lam, theta, alpha)]
        sizes = {a.size for a in arrays if a.size > 1}
        if len(sizes) > 1:
            raise ValueError(f"parameter vectors have different lengths {sorted(sizes)}")
        size = sizes.pop() if sizes else n
        if size is None:
            raise ValueError("batch size n is required when all parameters are scalars")
        if n is not None and size != n:
            raise ValueError(f"vectors have length {size}, expected {n}")
        lam, theta, alpha = (np.broadcast_to(a, (size,)) for a in arrays)
        ms = tuple(ElsMarginal(l, t, a, baseline) for l, t, a in zip(lam, theta, alpha))
        return cls(ms, generator)

    @property
    def n(self) -> int:
        return len(self.marginals)

    @property
    def baseline(self) -> Baseline:
        return self.marginals[0].baseline

    @property
    def lam(self) -> np.ndarray:
        return np.array([m.lam for m in self.marginals])

    @property
    def theta(self) -> np.ndarray:
        return np.array([m.theta for m in self.marginals])

    @property
    def alpha(self) -> np.ndarray:
        return np.array([m.alpha for m in self.marginals])

    @property
    def is_independent(self) -> bool:
        return self.generator is None or self.generator.is_independence

    @property
    def support_start(self) -> float:
        """Smallest x at which every component can already have failed."""
        return float(np.max(self.lam + self.theta * self.baseline.support_lo))

    @property
    def second_start(self) -> float:
        """Smallest x at which two components can have failed.

        The second-smallest lifetime survives with probability one up to
        here.
        """
        starts = np.sort(self.lam + self.theta * self.baseline.support_lo)
        return float(starts[1] if starts.size > 1 else starts[0])

    def standardized(self, x):
        """Array of shape ``(n,) + x.shape`` holding ``(x - lam_k) / theta_k``."""
        x = np.asarray(x, dtype=float)
        lam = self.lam.reshape((-1,) + (1,) * x.ndim)
        theta = self.theta.reshape((-1,) + (1,) * x.ndim)
        return (x[None, ...] - lam) / theta

    def component_cdf_sf(self, x):
        """Component distribution and survival values, each of shape ``(n,) + x.shape``."""
        x = np.asarray(x, dtype=float)
        alpha = self.alpha.reshape((-1,) + (1,) * x.ndim)
        return _power_cdf(self.baseline, self.standardized(x), alpha)

    def with_generator(self, generator: Optional[Generator]) -> "ElsBatch":
        return ElsBatch(self.marginals, generator)

    def to_dict(self) -> dict:
        out = {"lambda": self.lam.tolist(), "theta": self.theta.tolist(),
               "alpha": self.alpha.tolist()}
        if self.generator is not None:
            out["generator"] = self.generator.to_dict()
        return out


def _leave_one_out(values, op, identity):
    """``out[l] = op over k != l`` along axis 0 via prefix/suffix scans."""
    ident = np.full_like(values[:1], identity)
    prefix = np.concatenate([ident, op.accumulate(values[:-1], axis=0)], axis=0)
    suffix = np.concatenate([op.accumulate(values[::-1][:-1], axis=0)[::-1], ident], axis=0)
    return op(prefix, suffix)


def _clamp(p):
    return np.clip(p, 0.0, 1.0)


def _out(v):
    v = np.asarray(v, dtype=float)
    return v[()] if v.ndim == 0 else v


def sf_second_indep(batch: ElsBatch, x):
    """Survival of the second-smallest lifetime for independent components.

    Parameters
    ----------
    batch : ElsBatch
        Must be independent (no generator, or the independence generator).
    x : array_like

    Returns
    -------
    ndarray or float
        ``P(X_(2) > x)``, in [0, 1].
    """
    if not batch.is_independent:
        raise ValueError("batch has a dependence generator; use sf_second_dep")
    F, S = batch.component_cdf_sf(x)
    others = _leave_one_out(S, np.multiply, 1.0)
    val = np.prod(S, axis=0) + np.sum(F * others, axis=0)
    return _out(_clamp(val))


def sf_second_indep_alternating(batch: ElsBatch, x):
    """The textbook alternating form, kept as a cross-check.

    ``sum_l prod_{k != l} S_k - (n - 1) prod_k S_k``.
    """
    _, S = batch.component_cdf_sf(x)
    others = _leave_one_out(S, np.multiply, 1.0)
    return _out(np.sum(others, axis=0) - (batch.n - 1) * np.prod(S, axis=0))


def sf_second_dep(batch: ElsBatch, x):
    """Survival of the second-smallest lifetime under an Archimedean copula.

    Without a generator the batch is treated as independent.
    """
    gen = batch.generator or Independence()
    _, S = batch.component_cdf_sf(x)
    t = np.asarray(gen.phi(S), dtype=float)
    total = np.sum(t, axis=0)
    loo = _leave_one_out(t, np.add, 0.0)
    all_alive = np.asarray(gen.psi(total))
    val = all_alive + np.sum(np.asarray(gen.psi(loo)) - all_alive, axis=0)
    return _out(_clamp(val))


def sf_second(batch: ElsBatch, x):
    """Dispatch to the independent or the copula formula."""
    if batch.is_independent:
        return sf_second_indep(batch, x)
    return sf_second_dep(batch, x)


def hazard_second_indep_unitshape(batch: ElsBatch, x):
    """Closed-form hazard of the second-smallest lifetime when every alpha is 1.

    Uses ``sum r_b(w_i)/theta_i - [sum g'(w_i)/theta_i] / [sum g(w_i) + 1]``
    with ``w_i = (x - lam_i) / theta_i`` and ``g = F_b / (1 - F_b)``.
    Components that cannot yet have failed (``w_i <= support_lo``)
    contribute zero to every sum.

    Raises
    ------
    ValueError
        If the batch is dependent or some ``alpha != 1``.
    DomainError
        If a component survival underflows to zero.
    """
    if not batch.is_independent:
        raise ValueError("closed-form hazard needs independent components")
    if np.any(np.abs(batch.alpha - 1.0) > 1e-12):
        raise ValueError("closed-form hazard needs alpha = 1 for every component; "
                         "use hazard_numeric")
    x = np.asarray(x, dtype=float)
    w = batch.standardized(x)
    b = batch.baseline
    if np.any(np.asarray(b.sf(w)) <= 0):
        raise DomainError("component survival underflows on the grid")
    inv_theta = (1.0 / batch.theta).reshape((-1,) + (1,) * x.ndim)
    active = w > b.support_lo
    r = np.where(active, b.hazard(np.where(active, w, b._probe)), 0.0)
    g = np.where(active, b.g_ratio(w), 0.0)
    gp = np.where(active, b.g_prime(w), 0.0)
    val = np.sum(inv_theta * r, axis=0) - np.sum(inv_theta * gp, axis=0) / (np.sum(g, axis=0) + 1)
    return _out(val)


def hazard_numeric(sf: Callable, x, h=None):
    """Hazard ``-d/dx log sf`` by a central difference.

    Parameters
    ----------
    sf : callable
        Vectorised survival function.
    x : array_like
    h : float or array_like, optional
        Step; defaults to ``1e-5 * max(1, |x|)``.

    Raises
    ------
    DomainError
        If ``sf`` is at or below 1e-12 at a stencil point.
    """
    x = np.asarray(x, dtype=float)
    h = 1e-5 * np.maximum(1.0, np.abs(x)) if h is None else np.asarray(h, dtype=float)
    hi = np.asarray(sf(x + h), dtype=float)
    lo = np.asarray(sf(x - h), dtype=float)
    if np.any(hi <= 1e-12) or np.any(lo <= 1e-12):
        raise DomainError("survival too small for a numeric hazard")
    return _out(-(np.log(hi) - np.log(lo)) / (2 * h))


def hazard_second(batch: ElsBatch, x):
    """Hazard of the second-smallest lifetime, closed form when available."""
    if batch.is_independent and np.all(np.abs(batch.alpha - 1.0) <= 1e-12):
        return hazard_second_indep_unitshape(batch, x)
    return hazard_numeric(lambda t: sf_second(batch, t), x)


# -- default evaluation grid ---------------------------------------------------

TAIL_LEVEL = 1e-4


def survival_tail_point(sf: Callable, start: float, level: float = TAIL_LEVEL) -> float:
    """Smallest x > start (to bisection accuracy) with ``sf(x) <= level``."""
    step = max(1.0, abs(start))
    hi = start + step
    for _ in range(2000):
        if float(sf(np.array([hi]))[0]) <= level:
            break
        step *= 2.0
        hi = start + step
    else:
        raise DomainError("survival never drops to the tail level")

    def decreasing(t):
        return -np.asarray(sf(np.atleast_1d(t)), dtype=float).reshape(np.shape(t))

    return float(bisect_increasing(decreasing, -level, start, hi))


GRID_DOMAINS = ("union", "common")


def default_grid(*batches: ElsBatch, n: int = 512, offset: float = 1e-3, domain: str = "union"):
    """Log-spaced grid from the start of the comparison domain to the tail.

    Parameters
    ----------
    *batches : ElsBatch
    n : int
        Number of points.
    offset : float
        Gap between the domain start and the first point.
    domain : {"union", "common"}
        ``"union"`` starts at ``min_b second_start(b)``: below it every
        survival is exactly one, so nothing is skipped.  ``"common"``
        starts at ``max_b support_start(b)``, where every component of
        every batch is inside its support; this is the range on which the
        survival and hazard formulas are derived.

    Returns
    -------
    numpy.ndarray
        ``lo + geomspace(offset, x_hi - lo, n)`` with ``x_hi`` the point
        where the larger survival first reaches 1e-4.
    """
    if domain == "union":
        lo = min(b.second_start for b in batches)
    elif domain == "common":
        lo = max(b.support_start for b in batches)
    else:
        raise ValueError(f"domain must be one of {GRID_DOMAINS}")

    def upper(t):
        return np.max([np.asarray(sf_second(b, t)) for b in batches], axis=0)

    x_hi = survival_tail_point(upper, lo + offset)
    x_hi = max(x_hi, lo + 100 * offset)
    return lo + np.geomspace(offset, x_hi - lo, n)


# -- closed-form bounds -------------------------------------------------------


@dataclass(frozen=True)
class BoundCurve:
    """A closed-form bound evaluated on a grid.

    ``unmet`` lists preconditions that failed; the values are still
    computed so callers can inspect them.
    """

    x: np.ndarray
    values: np.ndarray
    unmet: tuple = field(default_factory=tuple)

    @property
    def supported(self) -> bool:
        return not self.unmet


def cor31_location(mu: Sequence[float]) -> float:
    """``max_i (1 + mu_i) / 2``, the common location of the dominating batch."""
    mu = np.asarray(mu, dtype=float)
    return float(np.max((1 + mu) / 2))


def homogeneous(batch: ElsBatch, lam=None, theta=None) -> ElsBatch:
    """Copy of ``batch`` with every location and/or scale replaced by a scalar."""
    lam = batch.lam if lam is None else lam
    theta = batch.theta if theta is None else theta
    return ElsBatch.from_vectors(lam, theta, batch.alpha, batch.baseline,
                                 batch.generator, n=batch.n)


def bound_cor31(batch: ElsBatch, x) -> BoundCurve:
    """Upper bound on the survival of a heterogeneous batch.

    The bound is the survival of the homogeneous batch located at
    :func:`cor31_location`; it requires common scale, ``alpha <= 1``,
    ascending locations and ``max mu <= 1``.
    """
    x = np.asarray(x, dtype=float)
    unmet = []
    if np.ptp(batch.theta) > 1e-12 * np.max(batch.theta):
        unmet.append("common scale")
    if np.any(batch.alpha > 1 + 1e-12) or np.ptp(batch.alpha) > 1e-12:
        unmet.append("common alpha <= 1")
    if np.any(np.diff(batch.lam) < 0):
        unmet.append("locations ascending")
    if np.max(batch.lam) > 1:
        unmet.append("max location <= 1")
    if not batch.is_independent:
        unmet.append("independent components")
    top = homogeneous(batch, lam=cor31_location(batch.lam))
    return BoundCurve(x, np.asarray(sf_second(top, x), dtype=float), tuple(unmet))


def bound_cor35(batch: ElsBatch, x) -> BoundCurve:
    """Lower bound on the hazard: the homogeneous batch at the mean location."""
    x = np.asarray(x, dtype=float)
    unmet = []
    if np.ptp(batch.theta) > 1e-12 * np.max(batch.theta):
        unmet.append("common scale")
    if np.any(np.abs(batch.alpha - 1) > 1e-12):
        unmet.append("alpha = 1")
    if not batch.is_independent:
        unmet.append("independent components")
    flat = homogeneous(batch, lam=float(np.mean(batch.lam)))
    vals = hazard_second(flat, x)
    return BoundCurve(x, np.asarray(vals, dtype=float), tuple(unmet))


def pareto_hazard_lower(n: int, a: float, lam: float, theta: float, x):
    """Hazard of ``n`` iid Pareto(a) components located at ``lam``, in closed form.

    ``n (n - 1) a (w^a - 1) / (theta w (n w^a - n + 1))`` with
    ``w = (x - lam) / theta``; zero for ``w <= 1``.
    """
    w = (np.asarray(x, dtype=float) - lam) / theta
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        wa = np.power(np.where(w > 1, w, 2.0), a)
        val = n * (n - 1) * a * (wa - 1) / (theta * np.where(w > 1, w, 2.0) * (n * wa - n + 1))
    return _out(np.where(w > 1, val, 0.0))
