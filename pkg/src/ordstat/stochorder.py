"""Grid-certified stochastic and hazard-rate order verdicts, plus oracles.

``direction = "A_ge_B"`` means batch A's second-smallest lifetime is the
larger one in the named order: for ``st`` its survival dominates, for
``hr`` its hazard is the smaller.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ._checks import DomainError
from .copula import Independence
from .orderstat import ElsBatch, default_grid, hazard_numeric, hazard_second_indep_unitshape, sf_second

ST_SLACK = 1e-9
HR_ABS_SLACK = 1e-7
HR_REL_SLACK = 1e-4
MIN_ST_POINTS = 128
HR_TRIM_LEVEL = 1e-12

DIRECTIONS = ("A_ge_B", "B_ge_A", "equal")


@dataclass(frozen=True)
class OrderVerdict:
    """Result of comparing two batches on a grid.

    Attributes
    ----------
    relation : {"st", "hr"}
    direction : {"A_ge_B", "B_ge_A", "equal"}
        The direction that holds, or the one that came closest when the
        status is ``"fails"``.
    status : {"holds", "fails", "indeterminate"}
    witness : tuple or None
        ``(x, value_A, value_B)`` at the worst violation.
    grid : dict
        ``lo``, ``hi``, ``n`` and ``trimmed`` (points dropped before the
        comparison).
    max_violation : float
        Largest shortfall against the reported direction, before slack.
    seed : int or None
        Seed of any Monte Carlo step that fed the verdict.
    """

    relation: str
    direction: str
    status: str
    witness: Optional[tuple] = None
    grid: dict = field(default_factory=dict)
    max_violation: float = 0.0
    seed: Optional[int] = None

    @property
    def holds(self) -> bool:
        return self.status == "holds"

    def to_dict(self) -> dict:
        out = {
            "relation": self.relation,
            "direction": self.direction,
            "status": self.status,
            "witness": None if self.witness is None else {
                "x": float(self.witness[0]),
                "value_A": float(self.witness[1]),
                "value_B": float(self.witness[2]),
            },
            "grid": dict(self.grid),
            "max_violation": float(self.max_violation),
        }
        if self.seed is not None:
            out["seed"] = int(self.seed)
        return out


def _grid_meta(x, trimmed=0):
    x = np.asarray(x, dtype=float)
    if x.size == 0:
        return {"lo": None, "hi": None, "n": 0, "trimmed": int(trimmed)}
    return {"lo": float(x[0]), "hi": float(x[-1]), "n": int(x.size), "trimmed": int(trimmed)}


def _decide(relation, x, vA, vB, gap, tol, direction, trimmed):
    """Shared verdict logic.

    ``gap`` is positive where A is ahead in the order; ``tol`` is the
    pointwise slack.
    """
    meta = _grid_meta(x, trimmed)
    short_A = -gap   # shortfall against A_ge_B
    short_B = gap    # shortfall against B_ge_A
    ok_A = bool(np.all(short_A <= tol))
    ok_B = bool(np.all(short_B <= tol))

    def verdict(d, status, shortfall):
        k = int(np.argmax(shortfall))
        worst = float(max(shortfall[k], 0.0)) + 0.0
        wit = (float(x[k]), float(vA[k]), float(vB[k])) if status == "fails" else None
        return OrderVerdict(relation, d, status, wit, meta, worst)

    if direction is None:
        if ok_A and ok_B:
            return verdict("equal", "holds", np.maximum(short_A, short_B))
        if ok_A:
            return verdict("A_ge_B", "holds", short_A)
        if ok_B:
            return verdict("B_ge_A", "holds", short_B)
        excess_A = np.max(short_A - tol)
        excess_B = np.max(short_B - tol)
        if excess_A <= excess_B:
            return verdict("A_ge_B", "fails", short_A)
        return verdict("B_ge_A", "fails", short_B)
    if direction not in DIRECTIONS:
        raise ValueError(f"direction must be one of {DIRECTIONS}")
    if direction == "A_ge_B":
        return verdict(direction, "holds" if ok_A else "fails", short_A)
    if direction == "B_ge_A":
        return verdict(direction, "holds" if ok_B else "fails", short_B)
    both = np.maximum(short_A, short_B)
    return verdict(direction, "holds" if ok_A and ok_B else "fails", both)


def sign_changes(x, diff, slack: float = ST_SLACK):
    """Brackets ``(x_left, x_right)`` where ``diff`` changes strict sign.

    Values within ``slack`` of zero carry no sign; a bracket joins the
    last signed point to the next point of opposite sign.
    """
    x = np.asarray(x, dtype=float)
    sign = np.where(np.asarray(diff) > slack, 1, np.where(np.asarray(diff) < -slack, -1, 0))
    idx = np.nonzero(sign)[0]
    flips = np.nonzero(np.diff(sign[idx]))[0]
    return [(float(x[idx[k]]), float(x[idx[k + 1]])) for k in flips]


def _as_grid(grid, a, b):
    if grid is None:
        return default_grid(a, b)
    x = np.asarray(grid, dtype=float)
    if x.ndim != 1 or np.any(np.diff(x) <= 0):
        raise ValueError("grid must be a strictly increasing 1-d array")
    return x


def check_st(a: ElsBatch, b: ElsBatch, grid=None, direction: Optional[str] = None,
             slack: float = ST_SLACK) -> OrderVerdict:
    """Usual stochastic order between the second-smallest lifetimes.

    Parameters
    ----------
    a, b : ElsBatch
    grid : array_like, optional
        At least 128 increasing points; defaults to
        :func:`ordstat.orderstat.default_grid`.
    direction : str, optional
        Test one direction only.  When omitted the holding direction is
        detected; on failure the verdict reports the direction with the
        smaller violation.
    slack : float
        Absolute tolerance on survival differences.

    Returns
    -------
    OrderVerdict
    """
    x = _as_grid(grid, a, b)
    if x.size < MIN_ST_POINTS:
        raise ValueError(f"st verdicts need at least {MIN_ST_POINTS} grid points")
    vA = np.asarray(sf_second(a, x), dtype=float)
    vB = np.asarray(sf_second(b, x), dtype=float)
    return _decide("st", x, vA, vB, vA - vB, np.full(x.shape, slack), direction, 0)


def _hazard_on(batch, x):
    if batch.is_independent and np.all(np.abs(batch.alpha - 1.0) <= 1e-12):
        try:
            return np.asarray(hazard_second_indep_unitshape(batch, x), dtype=float)
        except DomainError:
            pass
    return np.asarray(hazard_numeric(lambda t: sf_second(batch, t), x), dtype=float)


def check_hr(a: ElsBatch, b: ElsBatch, grid=None, direction: Optional[str] = None) -> OrderVerdict:
    """Hazard rate order between the second-smallest lifetimes.

    Points where either survival (or a difference-stencil neighbour) is
    below 1e-12 are trimmed and counted in ``grid["trimmed"]``.  The
    pointwise slack is ``max(1e-7, 1e-4 * max(|r_A|, |r_B|))``.
    """
    x = _as_grid(grid, a, b)
    h = 1e-5 * np.maximum(1.0, np.abs(x))
    keep = np.ones(x.shape, dtype=bool)
    for batch in (a, b):
        for shift in (-h, 0.0, h):
            keep &= np.asarray(sf_second(batch, x + shift)) > HR_TRIM_LEVEL
    xs = x[keep]
    trimmed = int(x.size - xs.size)
    if xs.size < 2:
        return OrderVerdict("hr", direction or "equal", "indeterminate", None,
                            _grid_meta(xs, trimmed), float("nan"))
    rA = _hazard_on(a, xs)
    rB = _hazard_on(b, xs)
    if not (np.all(np.isfinite(rA)) and np.all(np.isfinite(rB))):
        return OrderVerdict("hr", direction or "equal", "indeterminate", None,
                            _grid_meta(xs, trimmed), float("nan"))
    tol = np.maximum(HR_ABS_SLACK, HR_REL_SLACK * np.maximum(np.abs(rA), np.abs(rB)))
    # A ahead in hr means a smaller hazard
    return _decide("hr", xs, rA, rB, rB - rA, tol, direction, trimmed)


# -- oracles -------------------------------------------------------------------

MC_BLOCK = 1 << 16


@dataclass(frozen=True)
class MonteCarloEstimate:
    estimate: np.ndarray
    stderr: np.ndarray
    n_samples: int
    seed: int


def _sample_lifetimes(batch: ElsBatch, rng, size):
    u = rng.random((size, batch.n))
    with np.errstate(divide="ignore", over="ignore"):
        q = batch.baseline.ppf(u ** (1.0 / batch.alpha))
    return batch.lam + batch.theta * np.asarray(q)


def mc_sf_second(batch: ElsBatch, x, N: int = 1_000_000, seed: int = 0) -> MonteCarloEstimate:
    """Monte Carlo estimate of the survival of the second-smallest lifetime.

    Components are drawn by inversion, ``lam + theta * F_b^{-1}(U^(1/alpha))``.
    Samples are produced in fixed blocks of 65536, each with its own child
    of ``SeedSequence(seed)``, so the estimate does not depend on how the
    blocks are scheduled.

    Parameters
    ----------
    batch : ElsBatch
        Independent batch.
    x : array_like
        Evaluation points; all share the same samples.
    N : int
        Number of samples, at least 10^4.
    seed : int
        Non-negative seed, recorded in the result.

    Returns
    -------
    MonteCarloEstimate
        Proportion of samples with at most one component failed by ``x``,
        and its binomial standard error from that proportion.
    """
    if not batch.is_independent:
        raise ValueError("Monte Carlo oracle supports independent batches only")
    if N < 10_000:
        raise ValueError("N must be at least 10^4")
    x = np.atleast_1d(np.asarray(x, dtype=float))
    nblocks = -(-N // MC_BLOCK)
    children = np.random.SeedSequence(seed).spawn(nblocks)
    hits = np.zeros(x.shape, dtype=np.int64)
    for i, child in enumerate(children):
        size = min(MC_BLOCK, N - i * MC_BLOCK)
        life = _sample_lifetimes(batch, np.random.default_rng(child), size)
        failed = (life[:, :, None] <= x[None, None, :]).sum(axis=1)
        hits += (failed <= 1).sum(axis=0)
    p = hits / N
    return MonteCarloEstimate(p, np.sqrt(p * (1 - p) / N), int(N), int(seed))


MAX_ORACLE_N = 12


def alive_probabilities(batch: ElsBatch, x):
    """``P(all components in U survive x)`` for every subset bitmask U.

    Returns an array of shape ``(2**n, len(x))``.
    """
    n = batch.n
    if n > MAX_ORACLE_N:
        raise ValueError(f"subset oracle supports n <= {MAX_ORACLE_N}")
    x = np.atleast_1d(np.asarray(x, dtype=float))
    _, S = batch.component_cdf_sf(x)
    masks = np.arange(1 << n)
    member = ((masks[:, None] >> np.arange(n)[None, :]) & 1).astype(bool)
    gen = batch.generator
    if gen is None or isinstance(gen, Independence):
        return np.prod(np.where(member[:, :, None], S[None, :, :], 1.0), axis=1)
    t = np.asarray(gen.phi(S), dtype=float)
    sums = np.sum(np.where(member[:, :, None], t[None, :, :], 0.0), axis=1)
    return np.asarray(gen.psi(sums), dtype=float)


def oracle_sf_order_stat(batch: ElsBatch, x, k: int = 2):
    """``P(X_(k) > x)`` via inclusion-exclusion on the subset lattice.

    Probabilities of "exactly the set T alive" come from the superset
    Moebius transform of the subset survivals; the order statistic
    survives when at least ``n - k + 1`` components are alive.
    """
    n = batch.n
    if not 1 <= k <= n:
        raise ValueError("k must lie in 1..n")
    f = alive_probabilities(batch, x).copy()
    masks = np.arange(1 << n)
    for i in range(n):
        bit = 1 << i
        lower = masks[(masks & bit) == 0]
        f[lower] -= f[lower | bit]
    popcount = np.array([bin(m).count("1") for m in masks])
    val = f[popcount >= n - k + 1].sum(axis=0)
    return val[0] if np.ndim(x) == 0 else val


def oracle_sf_second_dep(batch: ElsBatch, x):
    """Subset-lattice oracle for the second-smallest lifetime."""
    return oracle_sf_order_stat(batch, x, 2)
