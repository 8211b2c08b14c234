"""Grid-based shape tests shared by the baseline and copula modules."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Optional

import numpy as np

EPS = np.finfo(float).eps


class DomainError(ValueError):
    """A function was evaluated outside the region where it is defined."""


@dataclass(frozen=True)
class CheckResult:
    """Outcome of a grid check.

    ``witness`` is the first abscissa (or pair of abscissae) where the
    property was violated, ``None`` when satisfied.
    """

    name: str
    satisfied: bool
    witness: Any = None
    detail: str = ""
    grid: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.satisfied

    def to_dict(self) -> dict:
        w = self.witness
        if isinstance(w, np.ndarray):
            w = w.tolist()
        elif isinstance(w, tuple):
            w = [float(v) for v in w]
        elif w is not None:
            w = float(w)
        return {
            "name": self.name,
            "satisfied": self.satisfied,
            "witness": w,
            "detail": self.detail,
            "grid": self.grid,
        }


def scalar_or_array(a):
    a = np.asarray(a, dtype=float)
    return a[()] if a.ndim == 0 else a


def first_decrease(x, v, slack):
    """Index i of the first step where ``v`` drops by more than the slack."""
    d = np.diff(v)
    tol = slack * np.maximum(1.0, np.maximum(np.abs(v[:-1]), np.abs(v[1:])))
    bad = np.nonzero(d < -tol)[0]
    return int(bad[0]) + 1 if bad.size else None


def first_increase(x, v, slack):
    return first_decrease(x, -np.asarray(v), slack)


def first_nonconvex(x, v, slack):
    """Index of the first interior point where divided slopes decrease.

    The tolerance is the relative slack plus a rounding floor: values that
    carry relative error ``eps`` produce slope noise ``eps * |v| / dx``.
    """
    x = np.asarray(x, dtype=float)
    v = np.asarray(v, dtype=float)
    dx = np.diff(x)
    s = np.diff(v) / dx
    ds = np.diff(s)
    vmag = np.maximum(np.abs(v[:-1]), np.abs(v[1:]))
    noise = 8 * EPS * vmag / dx
    tol = slack * np.maximum(1.0, np.maximum(np.abs(s[:-1]), np.abs(s[1:])))
    tol = tol + noise[:-1] + noise[1:]
    bad = np.nonzero(ds < -tol)[0]
    return int(bad[0]) + 1 if bad.size else None


def first_nonconcave(x, v, slack):
    return first_nonconvex(x, -np.asarray(v), slack)


_PROPERTY_TESTS: dict[str, Callable] = {
    # a decreasing sequence is violated by its first increase, and vice versa
    "decreasing": first_increase,
    "increasing": first_decrease,
    "convex": first_nonconvex,
    "concave": first_nonconcave,
}


def check_properties(name, x, v, properties, slack=1e-9) -> CheckResult:
    """Test ``v(x)`` on the grid for every named property.

    Returns the earliest violating abscissa across all properties.
    """
    x = np.asarray(x, dtype=float)
    v = np.asarray(v, dtype=float)
    if not np.all(np.isfinite(v)):
        i = int(np.nonzero(~np.isfinite(v))[0][0])
        return CheckResult(name, False, float(x[i]), "non-finite value",
                           grid_meta(x))
    worst: Optional[int] = None
    failed = []
    for prop in properties:
        idx = _PROPERTY_TESTS[prop](x, v, slack)
        if idx is not None:
            failed.append(prop)
            worst = idx if worst is None else min(worst, idx)
    if worst is None:
        return CheckResult(name, True, None, "", grid_meta(x))
    return CheckResult(name, False, float(x[worst]),
                       "not " + " and not ".join(failed), grid_meta(x))


def grid_meta(x) -> dict:
    x = np.asarray(x, dtype=float)
    return {"lo": float(x[0]), "hi": float(x[-1]), "n": int(x.size)}


def richardson_derivative(f, x, h):
    """Central difference with one level of Richardson extrapolation."""
    x = np.asarray(x, dtype=float)
    d1 = (f(x + h) - f(x - h)) / (2 * h)
    d2 = (f(x + h / 2) - f(x - h / 2)) / h
    return (4 * d2 - d1) / 3


def bisect_increasing(f, target, lo, hi, iters=200):
    """Vectorised bisection for an increasing ``f`` with f(lo) <= target <= f(hi)."""
    target = np.asarray(target, dtype=float)
    lo = np.broadcast_to(np.asarray(lo, dtype=float), target.shape).copy()
    hi = np.broadcast_to(np.asarray(hi, dtype=float), target.shape).copy()
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        below = f(mid) < target
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
        if np.all(hi - lo <= 4 * EPS * np.maximum(1.0, np.abs(hi))):
            break
    return 0.5 * (lo + hi)
