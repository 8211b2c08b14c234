"""Random batch pairs that satisfy a registry entry's hypotheses by construction.

Preorder constructions (all preserve positivity):

* ``x`` majorized by ``y``: repeated Robin-Hood transfers
  ``(y_i, y_j) -> (y_i - t d, y_j + t d)`` with ``d = y_i - y_j``.
* ``x`` weakly submajorized by ``y``: a majorized vector shrunk
  componentwise by factors in (0.5, 1].
* ``x`` weakly supermajorized by ``y``: a majorized vector inflated
  componentwise by factors in [1, 2).
* ``1/theta`` reciprocally dominating ``1/delta`` is the same as ``delta``
  weakly submajorized by ``theta``, so it reuses the second construction.

Vectors that must lie jointly in I+ or D+ are sorted in one randomly chosen
orientation after construction; the preorders are permutation invariant.
"""

from __future__ import annotations

import numpy as np

from .baseline import (
    Burr,
    ExpWeibull,
    Pareto,
    PowerGenWeibull,
    RatioPareto,
    ShapeCondition,
    TruncWeibull,
    check_shape,
)
from .copula import GumbelFrailty, GumbelHougaard, Independence, check_additivity, check_log_concave
from .orderstat import ElsBatch, cor31_location
from .theorems import get_theorem


def robin_hood(y, rng, steps=None):
    """A random vector majorized by ``y``."""
    x = np.array(y, dtype=float)
    n = x.size
    for _ in range(steps or 2 * n):
        i, j = rng.choice(n, size=2, replace=False)
        d = x[i] - x[j]
        t = rng.uniform(0, 1)
        x[i], x[j] = x[i] - t * d, x[j] + t * d
    return x


def weak_sub_below(y, rng):
    """A random vector weakly submajorized by ``y``."""
    return robin_hood(y, rng) * rng.uniform(0.5, 1.0, size=len(y))


def weak_sup_below(y, rng):
    """A random vector weakly supermajorized by ``y``."""
    return robin_hood(y, rng) * rng.uniform(1.0, 2.0, size=len(y))


def _orient(v, ascending):
    v = np.sort(np.asarray(v, dtype=float))
    return v if ascending else v[::-1]


def _hazard_decreasing_baseline(rng):
    """A random baseline with decreasing hazard, confirmed by the shape check."""
    for _ in range(100):
        kind = rng.integers(5)
        if kind == 0:
            b = Pareto(rng.uniform(0.5, 4))
        elif kind == 1:
            b = Burr(rng.uniform(0.2, 1.0), rng.uniform(0.5, 3))
        elif kind == 2:
            k = rng.uniform(0.5, 3)
            b = PowerGenWeibull(rng.uniform(0.2, min(1.0, k)), k)
        elif kind == 3:
            d = rng.uniform(0.2, 1.0)
            b = ExpWeibull(d, rng.uniform(0.1, 1.0 / d))
        else:
            b = TruncWeibull(rng.uniform(0.1, 1.0))
        if check_shape(b, ShapeCondition.HAZARD_DECREASING).satisfied:
            return b
    raise RuntimeError("could not draw a decreasing-hazard baseline")


def _baseline_for(shapes, rng):
    shapes = set(shapes)
    if shapes & {ShapeCondition.W_HAZARD_INCREASING_CONCAVE.value}:
        return RatioPareto()
    if ShapeCondition.W2_G_SECOND_DECREASING.value in shapes:
        return Pareto(1.0)
    if ShapeCondition.G_SECOND_DECREASING.value in shapes:
        return Pareto(rng.uniform(1.05, 1.95))
    if shapes & {ShapeCondition.W_HAZARD_DECREASING.value,
                 ShapeCondition.W2_HAZARD_DECREASING.value}:
        # only the Pareto family has w r_b(w) decreasing; w^2 r_b(w) decreasing
        # is out of reach for any proper distribution, so that clause fails
        return Pareto(rng.uniform(0.5, 4))
    return _hazard_decreasing_baseline(rng)


def _log_concave_generator(rng):
    if rng.random() < 0.3:
        return Independence()
    return GumbelFrailty(rng.uniform(0.05, 1.0))


def _generator_pair(mode, rng):
    """``(psi_1, psi_2)`` with ``phi_2 o psi_1`` sub- or super-additive and one log-concave."""
    for _ in range(100):
        kind = rng.integers(3)
        if kind == 0:
            a1, a2 = rng.uniform(0.05, 1.0, size=2)
            lo, hi = min(a1, a2), max(a1, a2)
            # phi_2 o psi_1 is convex when a_1 >= a_2 and concave otherwise
            g1, g2 = (GumbelFrailty(hi), GumbelFrailty(lo)) if mode == "super" else \
                (GumbelFrailty(lo), GumbelFrailty(hi))
        elif kind == 1:
            a = rng.uniform(1.0, 3.0)
            # psi_1 = exp(-x): phi_2 o psi_1 = x^a, convex
            # psi_2 = exp(-x): phi_2 o psi_1 = x^(1/a), concave
            g1, g2 = (Independence(), GumbelHougaard(a)) if mode == "super" else \
                (GumbelHougaard(a), Independence())
        else:
            g1 = g2 = _log_concave_generator(rng)
        if (check_additivity(g2, g1, mode).satisfied
                and (check_log_concave(g1).satisfied or check_log_concave(g2).satisfied)):
            return g1, g2
    raise RuntimeError("could not draw a generator pair")


def _positive(rng, n, lo, hi):
    return rng.uniform(lo, hi, size=n)


def random_scenario(theorem_id: str, rng, n=None):
    """Draw ``(A, B)`` satisfying the parameter, chain, preorder and generator
    clauses of ``theorem_id``.

    Baseline shape clauses are satisfied where a built-in family can do so;
    see :func:`_baseline_for`.
    """
    spec = get_theorem(theorem_id)
    n = int(n or rng.integers(2, 6))
    asc = bool(rng.random() < 0.5)
    alpha = float(rng.uniform(0.05, 1.0))
    shapes = spec.shape_conditions
    base = _baseline_for(shapes, rng)
    tid = spec.id

    lam = _positive(rng, n, 0.5, 10)
    theta = _positive(rng, n, 0.5, 5)
    mu, delta = lam.copy(), theta.copy()

    if tid in ("T3.1", "T3.8", "T3.15i"):
        mu = weak_sub_below(lam, rng)
        lam, theta, mu = (_orient(v, asc) for v in (lam, theta, mu))
        delta = theta
    elif tid in ("T3.15ii",):
        lam = weak_sub_below(mu, rng)
        lam, theta, mu = (_orient(v, asc) for v in (lam, theta, mu))
        delta = theta
    elif tid in ("T3.1*", "T3.8*"):
        mu = weak_sub_below(lam, rng)
        lam, mu = _orient(lam, asc), _orient(mu, asc)
        theta = delta = np.full(n, theta[0])
    elif tid == "T3.17":
        lam = weak_sub_below(mu, rng)
        lam, mu = _orient(lam, asc), _orient(mu, asc)
        theta = delta = np.full(n, theta[0])
    elif tid in ("T3.2", "T3.10", "T3.16i"):
        delta = 1 / weak_sup_below(1 / theta, rng)
        lam, theta, delta = (_orient(v, asc) for v in (lam, theta, delta))
        mu = lam
    elif tid == "T3.16ii":
        theta = 1 / weak_sup_below(1 / delta, rng)
        lam, theta, delta = (_orient(v, asc) for v in (lam, theta, delta))
        mu = lam
    elif tid in ("T3.2*", "T3.14"):
        delta = 1 / weak_sup_below(1 / theta, rng)
        theta, delta = _orient(theta, asc), _orient(delta, asc)
        lam = mu = np.full(n, lam[0])
    elif tid == "T3.18":
        theta = 1 / weak_sup_below(1 / delta, rng)
        theta, delta = _orient(theta, asc), _orient(delta, asc)
        lam = mu = np.full(n, lam[0])
    elif tid in ("T3.3", "T3.9"):
        delta = weak_sub_below(theta, rng)
        lam, theta, delta = (_orient(v, asc) for v in (lam, theta, delta))
        mu = lam
    elif tid == "T3.4i":
        mu = weak_sub_below(lam, rng)
        delta = 1 / weak_sup_below(1 / theta, rng)
        lam, mu, theta, delta = (_orient(v, asc) for v in (lam, mu, theta, delta))
    elif tid == "T3.4ii":
        mu = weak_sub_below(lam, rng)
        delta = weak_sub_below(theta, rng)
        lam, mu, theta, delta = (_orient(v, asc) for v in (lam, mu, theta, delta))
    elif tid == "T3.5":
        alpha = 1.0
        mu = robin_hood(lam, rng)
        lam, mu = _orient(lam, asc), _orient(mu, asc)
        theta = delta = np.full(n, theta[0])
    elif tid == "T3.6":
        alpha = 1.0
        mu = robin_hood(lam, rng)
        lam, theta, mu = (_orient(v, asc) for v in (lam, theta, mu))
        delta = theta
    elif tid == "T3.7":
        alpha = 1.0
        delta = 1 / robin_hood(1 / theta, rng)
        theta, delta = _orient(theta, asc), _orient(delta, asc)
        lam = mu = np.full(n, lam[0])
    elif tid == "C3.1":
        mu = _orient(_positive(rng, n, 0.05, 1.0), True)
        lam = np.full(n, cor31_location(mu))
        theta = delta = np.full(n, theta[0])
    elif tid == "C3.2":
        lam, theta = _orient(lam, asc), _orient(theta, asc)
        mu = np.full(n, np.sum(lam) / n * rng.uniform(0.5, 1.0))
        delta = theta
    elif tid == "C3.3":
        lam = mu = np.full(n, lam[0])
        theta = _orient(theta, asc)
        delta = np.full(n, n / np.sum(1 / theta) * rng.uniform(0.5, 1.0))
    elif tid == "C3.4":
        lam, theta = _orient(lam, asc), _orient(theta, asc)
        mu = lam
        delta = np.full(n, np.sum(theta) / n * rng.uniform(0.5, 1.0))
    elif tid == "C3.5":
        alpha = 1.0
        lam = _orient(lam, asc)
        mu = np.full(n, np.mean(lam))
        theta = delta = np.full(n, theta[0])
    elif tid == "C3.6":
        alpha = 1.0
        lam = mu = np.full(n, lam[0])
        theta = _orient(theta, asc)
        delta = np.full(n, 1 / np.mean(1 / theta))
    else:
        raise ValueError(f"no scenario generator for {tid}")

    if spec.dependence == "independent":
        g1 = g2 = None
    elif spec.dependence == "common_copula":
        g1 = g2 = _log_concave_generator(rng)
    else:
        mode = "super" if any("super" in c for c in spec.generator_conditions) else "sub"
        g1, g2 = _generator_pair(mode, rng)

    A = ElsBatch.from_vectors(lam, theta, alpha, base, g1, n=n)
    B = ElsBatch.from_vectors(mu, delta, alpha, base, g2, n=n)
    return A, B
