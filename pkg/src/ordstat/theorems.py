"""Registry of ordering results for second-smallest lifetimes.

Each entry bundles hypothesis clauses (parameter equalities, chain
membership, vector preorders, baseline shape conditions, generator
conditions) with a conclusion: a stochastic or hazard-rate order in a
stated direction.  Batch A plays the role of ``X`` (parameters
``lambda, theta, alpha``, generator ``psi_1``) and batch B the role of
``Y`` (``mu, delta, beta``, generator ``psi_2``).

:func:`verify` always evaluates every clause and the conclusion.  A report
is *inconsistent* only when every clause passes and the conclusion fails
on the grid.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np

from .baseline import ShapeCondition, check_shape
from .copula import Independence, check_additivity, check_log_concave
from .majorize import (
    jointly_ordered,
    majorizes,
    reciprocal_majorizes,
    weak_submajorizes,
    weak_supermajorizes,
)
from .orderstat import (
    ElsBatch,
    bound_cor31,
    bound_cor35,
    default_grid,
    hazard_second,
    homogeneous,
    pareto_hazard_lower,
    sf_second,
)
from .stochorder import OrderVerdict, check_hr, check_st
from .baseline import Pareto

EQ_TOL = 1e-12

SC = ShapeCondition


class TheoremNotFound(KeyError):
    pass


@dataclass(frozen=True)
class ClauseResult:
    clause: str
    passed: bool
    witness: object = None
    detail: str = ""

    def to_dict(self) -> dict:
        w = self.witness
        if isinstance(w, tuple):
            w = [float(v) for v in w]
        elif isinstance(w, (np.floating, float, int)):
            w = float(w)
        return {"clause": self.clause, "passed": bool(self.passed),
                "witness": w, "detail": self.detail}


@dataclass(frozen=True)
class Clause:
    name: str
    kind: str
    fn: Callable

    def __call__(self, ctx) -> ClauseResult:
        out = self.fn(ctx)
        if isinstance(out, ClauseResult):
            return out
        passed, witness, detail = out
        return ClauseResult(self.name, bool(passed), witness, detail)


@dataclass(frozen=True)
class TheoremSpec:
    """One registry record.

    ``dependence`` is ``"independent"``, ``"common_copula"`` or
    ``"two_copulas"``; ``conclusion`` is ``(relation, direction)`` with
    the direction in terms of batch A (X) against batch B (Y).
    """

    id: str
    dependence: str
    clauses: tuple
    conclusion: tuple
    summary: str
    caveat: str = ""

    def clauses_of(self, kind):
        return tuple(c.name for c in self.clauses if c.kind == kind)

    @property
    def param_constraints(self):
        return self.clauses_of("param")

    @property
    def chain_requirement(self):
        return self.clauses_of("chain")

    @property
    def major_relation(self):
        return self.clauses_of("major")

    @property
    def shape_conditions(self):
        return tuple(c.name for c in self.clauses if c.kind == "shape")

    @property
    def generator_conditions(self):
        return self.clauses_of("generator")

    def describe(self) -> dict:
        return {
            "id": self.id,
            "dependence": self.dependence,
            "param_constraints": list(self.param_constraints),
            "chain_requirement": list(self.chain_requirement),
            "major_relation": list(self.major_relation),
            "shape_conditions": list(self.shape_conditions),
            "generator_conditions": list(self.generator_conditions),
            "conclusion": {"relation": self.conclusion[0], "direction": self.conclusion[1]},
            "summary": self.summary,
            "caveat": self.caveat,
        }


@dataclass(frozen=True)
class TheoremReport:
    id: str
    hypothesis_results: tuple
    hypotheses_all_pass: bool
    conclusion_verdict: OrderVerdict
    consistent: bool
    notes: tuple = field(default_factory=tuple)

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "hypothesis_results": [r.to_dict() for r in self.hypothesis_results],
            "hypotheses_all_pass": self.hypotheses_all_pass,
            "conclusion_verdict": self.conclusion_verdict.to_dict(),
            "consistent": self.consistent,
            "notes": list(self.notes),
        }


# -- clause context ------------------------------------------------------------


@dataclass
class _Context:
    A: ElsBatch
    B: ElsBatch
    shape_grid: Optional[np.ndarray] = None

    def vec(self, name):
        base = {"lambda": self.A.lam, "mu": self.B.lam,
                "theta": self.A.theta, "delta": self.B.theta,
                "alpha": self.A.alpha, "beta": self.B.alpha}
        if name.startswith("1/"):
            return 1.0 / base[name[2:]]
        return base[name]

    @property
    def psi1(self):
        return self.A.generator or Independence()

    @property
    def psi2(self):
        return self.B.generator or Independence()


def _close(u, v):
    u, v = np.asarray(u, float), np.asarray(v, float)
    return u.shape == v.shape and bool(np.all(np.abs(u - v) <= EQ_TOL * np.maximum(1, np.abs(v))))


def _constant(v):
    v = np.asarray(v, float)
    return bool(np.all(np.abs(v - v[0]) <= EQ_TOL * max(1.0, abs(v[0]))))


def _first_diff(u, v):
    idx = np.nonzero(np.abs(np.asarray(u) - np.asarray(v)) > EQ_TOL * np.maximum(1, np.abs(v)))[0]
    return int(idx[0]) if idx.size else None


# -- clause builders -----------------------------------------------------------


def equal(a, b):
    def fn(ctx):
        u, v = ctx.vec(a), ctx.vec(b)
        return _close(u, v), _first_diff(u, v), ""
    return Clause(f"{a} = {b}", "param", fn)


def common_scalar(a, b):
    def fn(ctx):
        u, v = ctx.vec(a), ctx.vec(b)
        ok = _close(u, v) and _constant(u)
        return ok, None, "" if ok else f"{a}={u.tolist()}, {b}={v.tolist()}"
    return Clause(f"{a} = {b} = scalar", "param", fn)


def scalar(a):
    def fn(ctx):
        u = ctx.vec(a)
        return _constant(u), None, "" if _constant(u) else f"{a}={u.tolist()}"
    return Clause(f"{a} scalar", "param", fn)


def alpha_common_at_most_one():
    def fn(ctx):
        a, b = ctx.vec("alpha"), ctx.vec("beta")
        ok = _close(a, b) and _constant(a) and a[0] <= 1 + EQ_TOL
        return ok, None, "" if ok else f"alpha={a.tolist()}, beta={b.tolist()}"
    return Clause("alpha = beta = scalar <= 1", "param", fn)


def alpha_unit():
    def fn(ctx):
        a, b = ctx.vec("alpha"), ctx.vec("beta")
        ok = _close(a, np.ones_like(a)) and _close(b, np.ones_like(b))
        return ok, None, "" if ok else f"alpha={a.tolist()}, beta={b.tolist()}"
    return Clause("alpha = beta = 1", "param", fn)


def chain(*names):
    def fn(ctx):
        vs = [ctx.vec(n) for n in names]
        ok = jointly_ordered(*vs)
        return ok, None, "" if ok else "not jointly in I+ or D+"
    return Clause("(" + ", ".join(names) + ") jointly ordered", "chain", fn)


_RELATIONS = {
    "w_sub": (weak_submajorizes, "_w"),
    "w_sup": (weak_supermajorizes, "^w"),
    "m": (majorizes, "^m"),
    "rm": (reciprocal_majorizes, "^rm"),
}


def major(relation, upper, lower):
    """``upper`` dominates ``lower`` in the named preorder."""
    test, sym = _RELATIONS[relation]

    def fn(ctx):
        return test(ctx.vec(upper), ctx.vec(lower)), None, ""
    return Clause(f"{upper} >={sym} {lower}", "major", fn)


def shape(cond: ShapeCondition):
    def fn(ctx):
        res = check_shape(ctx.A.baseline, cond, ctx.shape_grid)
        return res.satisfied, res.witness, res.detail
    return Clause(cond.value, "shape", fn)


def log_concave_common():
    def fn(ctx):
        res = check_log_concave(ctx.psi1)
        return res.satisfied, res.witness, res.detail
    return Clause("psi log-concave", "generator", fn)


def log_concave_either():
    def fn(ctx):
        r1, r2 = check_log_concave(ctx.psi1), check_log_concave(ctx.psi2)
        detail = f"psi_1: {r1.satisfied}, psi_2: {r2.satisfied}"
        return r1.satisfied or r2.satisfied, r1.witness if not r1.satisfied else None, detail
    return Clause("psi_1 or psi_2 log-concave", "generator", fn)


def additive(mode):
    def fn(ctx):
        res = check_additivity(ctx.psi2, ctx.psi1, mode)
        return res.satisfied, res.witness, res.detail
    return Clause(f"phi_2 o psi_1 {mode}-additive", "generator", fn)


def predicate(name, test, kind="param"):
    def fn(ctx):
        ok, detail = test(ctx)
        return ok, None, detail
    return Clause(name, kind, fn)


# -- registry ------------------------------------------------------------------


def _spec(id, dependence, clauses, relation, direction, summary):
    return TheoremSpec(id, dependence, tuple(clauses), (relation, direction), summary)


def _cor31_location(ctx):
    mu = ctx.vec("mu")
    target = float(np.max((1 + mu) / 2))
    lam = ctx.vec("lambda")
    ok = _close(lam, np.full_like(lam, target))
    return ok, f"mu_m = {target:.17g}"


# Raising the survival copula lowers the survival of the second-smallest
# lifetime (n = 2: S1 + S2 - C(S1, S2)), so the copula step of these results
# runs the wrong way; equal parameters with psi_1 = exp(-x) and a
# Gumbel-Hougaard psi_2 meet every clause and break the super-additive form.
COPULA_SWAP_CAVEAT = (
    "the copula comparison is not monotone in the claimed direction; "
    "inconsistent reports are expected for strongly dependent generator pairs"
)


def _build_registry():
    ind, com, two = "independent", "common_copula", "two_copulas"
    st, hr = "st", "hr"
    whd, hd = shape(SC.W_HAZARD_DECREASING), shape(SC.HAZARD_DECREASING)
    w2hd = shape(SC.W2_HAZARD_DECREASING)
    t35_shapes = [shape(SC.HAZARD_DECREASING_CONVEX), shape(SC.G_INCREASING_CONVEX),
                  shape(SC.G_SECOND_DECREASING)]
    t36_shapes = [hd, shape(SC.W2_HAZARD_PRIME_INCREASING), shape(SC.G_INCREASING_CONVEX),
                  shape(SC.W2_G_SECOND_DECREASING)]
    t37_shapes = [shape(SC.W_HAZARD_INCREASING_CONCAVE), shape(SC.G_INCREASING_CONCAVE),
                  shape(SC.W_G_PRIME_CONVEX)]
    a1 = alpha_common_at_most_one()
    specs = [
        _spec("T3.1", ind, [equal("theta", "delta"), a1, chain("lambda", "theta", "mu"),
                            whd, major("w_sub", "lambda", "mu")], st, "A_ge_B",
              "lambda >=_w mu, common scale vector, alpha <= 1, w r_b decreasing"),
        _spec("T3.1*", ind, [common_scalar("theta", "delta"), a1, chain("lambda", "mu"),
                             hd, major("w_sub", "lambda", "mu")], st, "A_ge_B",
              "lambda >=_w mu, common scalar scale, alpha <= 1, r_b decreasing"),
        _spec("T3.2", ind, [equal("lambda", "mu"), a1, chain("lambda", "theta", "delta"),
                            whd, major("w_sup", "1/theta", "1/delta")], st, "A_ge_B",
              "1/theta >=^w 1/delta, common locations, alpha <= 1, w r_b decreasing"),
        _spec("T3.2*", ind, [common_scalar("lambda", "mu"), a1, chain("theta", "delta"),
                             hd, major("w_sup", "1/theta", "1/delta")], st, "A_ge_B",
              "1/theta >=^w 1/delta, common scalar location, alpha <= 1, r_b decreasing"),
        _spec("T3.3", ind, [equal("lambda", "mu"), a1, chain("lambda", "theta", "delta"),
                            w2hd, major("rm", "1/theta", "1/delta")], st, "A_ge_B",
              "1/theta >=^rm 1/delta, common locations, alpha <= 1, w^2 r_b decreasing"),
        _spec("T3.4i", ind, [a1, chain("lambda", "mu", "theta", "delta"), whd,
                             major("w_sub", "lambda", "mu"),
                             major("w_sup", "1/theta", "1/delta")], st, "A_ge_B",
              "lambda >=_w mu and 1/theta >=^w 1/delta, alpha <= 1, w r_b decreasing"),
        _spec("T3.4ii", ind, [a1, chain("lambda", "mu", "theta", "delta"), whd, w2hd,
                              major("w_sub", "lambda", "mu"),
                              major("rm", "1/theta", "1/delta")], st, "A_ge_B",
              "lambda >=_w mu and 1/theta >=^rm 1/delta, alpha <= 1, w^2 r_b decreasing"),
        _spec("T3.5", ind, [common_scalar("theta", "delta"), alpha_unit(),
                            chain("lambda", "mu"), *t35_shapes,
                            major("m", "lambda", "mu")], hr, "B_ge_A",
              "lambda >=^m mu, common scalar scale, alpha = 1 => X <=_hr Y"),
        _spec("T3.6", ind, [equal("theta", "delta"), alpha_unit(),
                            chain("lambda", "theta", "mu"), *t36_shapes,
                            major("m", "lambda", "mu")], hr, "B_ge_A",
              "lambda >=^m mu, common scale vector, alpha = 1 => X <=_hr Y"),
        _spec("T3.7", ind, [common_scalar("lambda", "mu"), alpha_unit(),
                            chain("theta", "delta"), *t37_shapes,
                            major("m", "1/theta", "1/delta")], hr, "A_ge_B",
              "1/theta >=^m 1/delta, common scalar location, alpha = 1 => X >=_hr Y"),
        _spec("T3.8", com, [equal("theta", "delta"), a1, chain("lambda", "theta", "mu"),
                            whd, log_concave_common(), major("w_sub", "lambda", "mu")],
              st, "A_ge_B", "copula version of T3.1; psi log-concave"),
        _spec("T3.8*", com, [common_scalar("theta", "delta"), a1, chain("lambda", "mu"),
                             hd, log_concave_common(), major("w_sub", "lambda", "mu")],
              st, "A_ge_B", "copula version of T3.1*; psi log-concave"),
        _spec("T3.9", com, [equal("lambda", "mu"), a1, chain("lambda", "theta", "delta"),
                            w2hd, log_concave_common(), major("rm", "1/theta", "1/delta")],
              st, "A_ge_B", "copula version of T3.3; psi log-concave"),
        _spec("T3.10", com, [equal("lambda", "mu"), a1, chain("lambda", "theta", "delta"),
                             whd, log_concave_common(), major("w_sup", "1/theta", "1/delta")],
              st, "A_ge_B", "copula version of T3.2; psi log-concave"),
        _spec("T3.14", com, [common_scalar("lambda", "mu"), a1, chain("theta", "delta"),
                             hd, log_concave_common(), major("w_sup", "1/theta", "1/delta")],
              st, "A_ge_B", "copula version of T3.2*; psi log-concave"),
        _spec("T3.15i", two, [equal("theta", "delta"), a1, chain("lambda", "theta", "mu"),
                              whd, log_concave_either(), additive("sub"),
                              major("w_sub", "lambda", "mu")], st, "A_ge_B",
              "lambda >=_w mu, phi_2 o psi_1 sub-additive"),
        _spec("T3.15ii", two, [equal("theta", "delta"), a1, chain("lambda", "theta", "mu"),
                               whd, log_concave_either(), additive("super"),
                               major("w_sub", "mu", "lambda")], st, "B_ge_A",
              "mu >=_w lambda, phi_2 o psi_1 super-additive => X <=_st Y"),
        _spec("T3.16i", two, [equal("lambda", "mu"), a1, chain("lambda", "theta", "delta"),
                              whd, log_concave_either(), additive("sub"),
                              major("w_sup", "1/theta", "1/delta")], st, "A_ge_B",
              "1/theta >=^w 1/delta, phi_2 o psi_1 sub-additive"),
        _spec("T3.16ii", two, [equal("lambda", "mu"), a1, chain("lambda", "theta", "delta"),
                               whd, log_concave_either(), additive("super"),
                               major("w_sup", "1/delta", "1/theta")], st, "B_ge_A",
              "1/delta >=^w 1/theta, phi_2 o psi_1 super-additive => X <=_st Y"),
        _spec("T3.17", two, [common_scalar("theta", "delta"), a1, chain("lambda", "mu"),
                             hd, additive("super"), log_concave_either(),
                             major("w_sub", "mu", "lambda")], st, "B_ge_A",
              "mu >=_w lambda, common scalar scale, super-additive => X <=_st Y"),
        _spec("T3.18", two, [common_scalar("lambda", "mu"), a1, chain("theta", "delta"),
                             hd, additive("super"), log_concave_either(),
                             major("w_sup", "1/delta", "1/theta")], st, "B_ge_A",
              "1/delta >=^w 1/theta, common scalar location, super-additive => X <=_st Y"),
        _spec("C3.1", ind, [
            predicate("lambda = max((1 + mu_i) / 2) for all i", _cor31_location),
            common_scalar("theta", "delta"), a1, chain("mu"),
            predicate("max mu <= 1", lambda c: (bool(np.max(c.vec("mu")) <= 1), "")),
            whd], st, "A_ge_B",
            "homogeneous batch at max((1 + mu_i) / 2) dominates, for max mu <= 1"),
        _spec("C3.2", ind, [equal("theta", "delta"), a1, chain("lambda", "theta"), scalar("mu"),
                            predicate("n mu <= sum lambda",
                                      lambda c: (bool(c.B.n * c.vec("mu")[0]
                                                      <= np.sum(c.vec("lambda")) * (1 + EQ_TOL)), "")),
                            whd], st, "A_ge_B",
              "constant mu with n mu <= sum lambda"),
        _spec("C3.3", ind, [common_scalar("lambda", "mu"), a1, chain("theta"), scalar("delta"),
                            predicate("n / delta >= sum 1/theta",
                                      lambda c: (bool(c.B.n / c.vec("delta")[0] * (1 + EQ_TOL)
                                                      >= np.sum(1 / c.vec("theta"))), "")),
                            whd], st, "A_ge_B",
              "homogeneous scale delta with n / delta >= sum 1/theta_i"),
        _spec("C3.4", ind, [equal("lambda", "mu"), a1, chain("lambda", "theta"), scalar("delta"),
                            predicate("n delta <= sum theta",
                                      lambda c: (bool(c.B.n * c.vec("delta")[0]
                                                      <= np.sum(c.vec("theta")) * (1 + EQ_TOL)), "")),
                            w2hd], st, "A_ge_B",
              "homogeneous scale delta with n delta <= sum theta_i"),
        _spec("C3.5", ind, [common_scalar("theta", "delta"), alpha_unit(), chain("lambda"),
                            predicate("mu = mean(lambda)",
                                      lambda c: (_close(c.vec("mu"), np.full(c.B.n, np.mean(c.vec("lambda")))), "")),
                            *t35_shapes], hr, "B_ge_A",
              "homogeneous batch at the mean location has the smaller hazard"),
        _spec("C3.6", ind, [common_scalar("lambda", "mu"), alpha_unit(), chain("theta"),
                            predicate("1/delta = mean(1/theta)",
                                      lambda c: (_close(1 / c.vec("delta"),
                                                        np.full(c.B.n, np.mean(1 / c.vec("theta")))), "")),
                            *t37_shapes], hr, "A_ge_B",
              "homogeneous scale with 1/delta = mean(1/theta_i) has the larger hazard"),
    ]
    for tid in ("T3.15i", "T3.15ii", "T3.16i", "T3.16ii", "T3.17", "T3.18"):
        specs = [replace(s, caveat=COPULA_SWAP_CAVEAT) if s.id == tid else s for s in specs]
    return {s.id: s for s in specs}


REGISTRY = _build_registry()


def list_theorems() -> list:
    """All registry records, in registry order."""
    return list(REGISTRY.values())


def get_theorem(theorem_id: str) -> TheoremSpec:
    try:
        return REGISTRY[theorem_id]
    except KeyError:
        raise TheoremNotFound(
            f"unknown theorem id {theorem_id!r}; valid ids: {', '.join(REGISTRY)}") from None


def _resolve(spec):
    return get_theorem(spec) if isinstance(spec, str) else spec


def _check_dependence(spec: TheoremSpec, A: ElsBatch, B: ElsBatch):
    if A.baseline != B.baseline:
        raise ValueError("both batches must share one baseline")
    if A.n != B.n:
        raise ValueError("both batches must have the same size")
    if spec.dependence == "independent":
        if not (A.is_independent and B.is_independent):
            raise ValueError(f"{spec.id} is stated for independent components")
    elif spec.dependence == "common_copula":
        g1 = A.generator or Independence()
        g2 = B.generator or Independence()
        if g1 != g2:
            raise ValueError(f"{spec.id} needs one generator shared by both batches")


def check_hypotheses(spec, A: ElsBatch, B: ElsBatch, shape_grid=None) -> list:
    """Evaluate every hypothesis clause; nothing short-circuits.

    Raises
    ------
    ValueError
        If the batches do not fit the record's dependence mode.
    """
    spec = _resolve(spec)
    _check_dependence(spec, A, B)
    ctx = _Context(A, B, None if shape_grid is None else np.asarray(shape_grid, float))
    return [clause(ctx) for clause in spec.clauses]


def verify(spec, A: ElsBatch, B: ElsBatch, grid=None, shape_grid=None) -> TheoremReport:
    """Check hypotheses, then the conclusion, and combine them.

    Parameters
    ----------
    spec : TheoremSpec or str
    A, B : ElsBatch
        The batches in the roles of X and Y.
    grid : array_like, optional
        Grid for the conclusion check; defaults to
        :func:`ordstat.orderstat.default_grid` over both batches on the
        ``"common"`` domain, where every component is inside its support.
    shape_grid : array_like, optional
        Grid for baseline shape clauses.

    Returns
    -------
    TheoremReport
    """
    spec = _resolve(spec)
    results = check_hypotheses(spec, A, B, shape_grid)
    all_pass = all(r.passed for r in results)
    relation, direction = spec.conclusion
    x = default_grid(A, B, domain="common") if grid is None else np.asarray(grid, dtype=float)
    if relation == "st":
        verdict = check_st(A, B, x, direction=direction)
    else:
        verdict = check_hr(A, B, x, direction=direction)
    consistent = not (all_pass and verdict.status == "fails")
    notes = []
    if verdict.status == "indeterminate":
        notes.append("conclusion indeterminate on the grid")
    if any(c.name == "psi_1 or psi_2 log-concave" for c in spec.clauses):
        notes.append("log-concavity clause passes if either generator qualifies")
    if spec.caveat and not consistent:
        notes.append(spec.caveat)
    return TheoremReport(spec.id, tuple(results), all_pass, verdict, consistent, tuple(notes))


# -- bounds --------------------------------------------------------------------


@dataclass(frozen=True)
class BoundReport:
    kind: str
    x: np.ndarray
    bound: np.ndarray
    exact: np.ndarray
    dominates: bool
    witness: Optional[tuple]
    unmet: tuple

    @property
    def supported(self):
        return not self.unmet

    def to_dict(self) -> dict:
        return {"kind": self.kind, "dominates": self.dominates,
                "witness": None if self.witness is None else list(self.witness),
                "unmet_preconditions": list(self.unmet),
                "grid": {"lo": float(self.x[0]), "hi": float(self.x[-1]), "n": int(self.x.size)}}


BOUND_KINDS = ("cor31_sf_upper", "cor35_hazard_lower", "cor35_pareto_lower")


def eval_bound(kind: str, batch: ElsBatch, grid=None) -> BoundReport:
    """Evaluate a closed-form bound and test it against the exact curve.

    ``cor31_sf_upper`` bounds the survival from above;
    ``cor35_hazard_lower`` and ``cor35_pareto_lower`` bound the hazard from
    below.  Precondition failures are listed in ``unmet``; the dominance
    check still runs.
    """
    if kind not in BOUND_KINDS:
        raise ValueError(f"kind must be one of {BOUND_KINDS}")
    if kind == "cor31_sf_upper":
        from .orderstat import cor31_location
        ref = homogeneous(batch, lam=cor31_location(batch.lam))
    else:
        ref = homogeneous(batch, lam=float(np.mean(batch.lam)))
    x = default_grid(batch, ref, domain="common") if grid is None else np.asarray(grid, dtype=float)
    if kind == "cor31_sf_upper":
        curve = bound_cor31(batch, x)
        exact = np.asarray(sf_second(batch, x), dtype=float)
        gap = curve.values - exact
        tol = np.full(x.shape, 1e-9)
        unmet = curve.unmet
        values = curve.values
    else:
        exact = np.asarray(hazard_second(batch, x), dtype=float)
        if kind == "cor35_hazard_lower":
            curve = bound_cor35(batch, x)
            values, unmet = curve.values, curve.unmet
        else:
            unmet = list(bound_cor35(batch, x).unmet)
            b = batch.baseline
            if not isinstance(b, Pareto) or not 1 < b.a < 2:
                unmet.append("Pareto baseline with 1 < a < 2")
            a = getattr(b, "a", np.nan)
            values = np.asarray(pareto_hazard_lower(batch.n, a, float(np.mean(batch.lam)),
                                                    float(batch.theta[0]), x), dtype=float)
            unmet = tuple(unmet)
        gap = exact - values
        tol = 1e-9 * np.maximum(1.0, np.abs(exact))
    bad = np.nonzero(gap < -tol)[0]
    witness = None
    if bad.size:
        k = int(bad[0])
        witness = (float(x[k]), float(values[k]), float(exact[k]))
    return BoundReport(kind, x, np.asarray(values), exact, not bad.size, witness, tuple(unmet))


# -- omega ---------------------------------------------------------------------


def omega(alpha, t):
    """``alpha (1 - t) t^(alpha - 1) / (1 - t^alpha)`` for 0 < t < 1.

    It reduces to 1 at ``alpha = 1`` and is decreasing in ``alpha``;
    decreasing in ``t`` for ``alpha <= 1`` and increasing for
    ``alpha >= 1``.  ``t * omega`` is the companion form
    ``alpha (1 - t) t^alpha / (1 - t^alpha)``.
    """
    alpha = np.asarray(alpha, dtype=float)
    t = np.asarray(t, dtype=float)
    if np.any(alpha <= 0):
        raise ValueError("alpha must be positive")
    if np.any((t <= 0) | (t >= 1)):
        raise ValueError("t must lie strictly between 0 and 1")
    # -expm1(alpha log t) = 1 - t^alpha without cancellation near t = 1
    val = alpha * (1 - t) * np.exp((alpha - 1) * np.log(t)) / -np.expm1(alpha * np.log(t))
    return val[()] if val.ndim == 0 else val


def t_omega(alpha, t):
    """``t * omega(alpha, t) = alpha (1 - t) t^alpha / (1 - t^alpha)``.

    Decreasing in ``alpha`` like :func:`omega`, but increasing in ``t`` at
    ``alpha = 1`` where it equals ``t``; the monotonicity-in-``t`` claims
    belong to :func:`omega`.
    """
    return np.asarray(t, dtype=float)[()] * omega(alpha, t)
