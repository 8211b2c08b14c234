"""Vector preorders: majorization, weak sub/super-majorization and
reciprocal majorization, plus chain-class membership (I+ / D+).

All relations take ``(y, x)`` and answer whether ``x`` is below ``y``.  The
comparisons use partial sums of the ascending rearrangement, with an
absolute-plus-relative tolerance of ``1e-12 * (1 + |sum|)``.
"""

from __future__ import annotations

import numpy as np

TOL = 1e-12


def as_positive_vector(v, name="vector"):
    """Validate a 1-d vector of strictly positive finite reals."""
    arr = np.asarray(v, dtype=float)
    if arr.ndim != 1 or arr.size < 1:
        raise ValueError(f"{name} must be a non-empty 1-d sequence")
    if not np.all(np.isfinite(arr)) or np.any(arr <= 0):
        raise ValueError(f"{name} entries must be finite and strictly positive")
    return arr


def _pair(y, x):
    y = as_positive_vector(y, "y")
    x = as_positive_vector(x, "x")
    if x.shape != y.shape:
        raise ValueError(f"length mismatch: {x.size} vs {y.size}")
    return np.sort(y), np.sort(x)


def _tol(a, b):
    return TOL * (1 + np.maximum(np.abs(a), np.abs(b)))


def _first(mask):
    idx = np.nonzero(mask)[0]
    return int(idx[0]) + 1 if idx.size else None


def majorization_violation(y, x):
    """First 1-based index l where ``x`` fails to be majorized by ``y``.

    Index ``n`` flags unequal totals.  Returns ``None`` when ``x`` is
    majorized by ``y``.
    """
    ys, xs = _pair(y, x)
    px, py = np.cumsum(xs), np.cumsum(ys)
    bad = _first(px[:-1] < py[:-1] - _tol(px[:-1], py[:-1]))
    if bad is not None:
        return bad
    if abs(px[-1] - py[-1]) > _tol(px[-1], py[-1]):
        return xs.size
    return None


def weak_sub_violation(y, x):
    """First index l (counting from the largest entry) where a top-l sum of x exceeds y's."""
    ys, xs = _pair(y, x)
    sx = np.cumsum(xs[::-1])
    sy = np.cumsum(ys[::-1])
    return _first(sx > sy + _tol(sx, sy))


def weak_sup_violation(y, x):
    """First index l where the ascending prefix sum of x falls below y's."""
    ys, xs = _pair(y, x)
    px, py = np.cumsum(xs), np.cumsum(ys)
    return _first(px < py - _tol(px, py))


def reciprocal_violation(y, x):
    """First index l where sum_{i<=l} 1/x_(i) exceeds sum_{i<=l} 1/y_(i).

    Entries are sorted ascending before taking reciprocals.
    """
    ys, xs = _pair(y, x)
    rx, ry = np.cumsum(1 / xs), np.cumsum(1 / ys)
    return _first(rx > ry + _tol(rx, ry))


def majorizes(y, x) -> bool:
    """True when ``x`` is majorized by ``y``.

    Parameters
    ----------
    y, x : array_like
        Positive vectors of equal length.

    Returns
    -------
    bool
        Ascending prefix sums of ``x`` dominate those of ``y`` for
        ``l < n`` and the totals agree within tolerance.

    Examples
    --------
    >>> majorizes([2.9, 0.1], [2, 1])
    True
    """
    return majorization_violation(y, x) is None


def weak_submajorizes(y, x) -> bool:
    """True when ``x`` is weakly submajorized by ``y``.

    Every sum of the ``l`` largest entries of ``x`` is at most the
    corresponding sum for ``y``.
    """
    return weak_sub_violation(y, x) is None


def weak_supermajorizes(y, x) -> bool:
    """True when ``x`` is weakly supermajorized by ``y``.

    Every sum of the ``l`` smallest entries of ``x`` is at least the
    corresponding sum for ``y``.
    """
    return weak_sup_violation(y, x) is None


def reciprocal_majorizes(y, x) -> bool:
    """True when ``x`` is reciprocally majorized by ``y``."""
    return reciprocal_violation(y, x) is None


RELATIONS = {
    "m": (majorizes, majorization_violation),
    "w_sub": (weak_submajorizes, weak_sub_violation),
    "w_sup": (weak_supermajorizes, weak_sup_violation),
    "rm": (reciprocal_majorizes, reciprocal_violation),
}


def chain_class(v) -> str:
    """Return ``"ascending"`` (I+), ``"descending"`` (D+) or ``"neither"``.

    A constant vector belongs to both chains and is reported as
    ``"ascending"``; use :func:`in_chain` to test a specific chain.
    """
    v = as_positive_vector(v)
    d = np.diff(v)
    if np.all(d >= 0):
        return "ascending"
    if np.all(d <= 0):
        return "descending"
    return "neither"


def in_chain(v, chain: str) -> bool:
    v = as_positive_vector(v)
    d = np.diff(v)
    if chain == "ascending":
        return bool(np.all(d >= 0))
    if chain == "descending":
        return bool(np.all(d <= 0))
    raise ValueError("chain must be 'ascending' or 'descending'")


def jointly_ordered(*vectors) -> bool:
    """True when all vectors lie together in I+ or together in D+.

    Constant vectors belong to both chains.
    """
    vs = [as_positive_vector(v) for v in vectors]
    return (all(in_chain(v, "ascending") for v in vs)
            or all(in_chain(v, "descending") for v in vs))
