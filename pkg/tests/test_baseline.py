import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from ordstat import DomainError
from ordstat.baseline import (
    BASELINES,
    Burr,
    ExpWeibull,
    Pareto,
    PowerGenWeibull,
    RatioPareto,
    ShapeCondition,
    Tabulated,
    TruncWeibull,
    check_shape,
    default_shape_grid,
    make_baseline,
)

SC = ShapeCondition

FAMILIES = [
    Pareto(2.0),
    Pareto(0.7),
    Burr(0.5, 2.0),
    Burr(2.0, 1.5),
    PowerGenWeibull(0.5, 2.0),
    PowerGenWeibull(2.0, 0.5),
    ExpWeibull(0.5, 0.2),
    ExpWeibull(2.0, 1.5),
    TruncWeibull(0.12),
    TruncWeibull(1.7),
    RatioPareto(),
]
IDS = [repr(b) for b in FAMILIES]


def interior(b, n=200):
    return default_shape_grid(b, n=n, span=20.0)


@pytest.mark.parametrize("b", FAMILIES, ids=IDS)
def test_cdf_sf_complement(b):
    x = interior(b)
    assert_allclose(b.cdf(x) + b.sf(x), 1.0, atol=1e-15)


@pytest.mark.parametrize("b", FAMILIES, ids=IDS)
def test_cdf_zero_at_and_below_support(b):
    lo = b.support_lo
    assert b.cdf(lo) == 0.0
    assert b.cdf(lo - 1.0) == 0.0
    assert b.sf(lo - 1.0) == 1.0


@pytest.mark.parametrize("b", FAMILIES, ids=IDS)
def test_pdf_matches_cdf_derivative(b):
    x = interior(b)[20:-20]
    x = x[x - b.support_lo > 1e-4]
    h = 1e-6 * (x - b.support_lo)
    fd = (b.cdf(x + h) - b.cdf(x - h)) / (2 * h)
    assert_allclose(b.pdf(x), fd, rtol=1e-5, atol=1e-10)


@pytest.mark.parametrize("b", FAMILIES, ids=IDS)
def test_hazard_is_density_over_survival(b):
    x = interior(b)
    s = b.sf(x)
    keep = s > 1e-8
    assert_allclose(b.hazard(x)[keep], (b.pdf(x) / s)[keep], rtol=1e-10)


@pytest.mark.parametrize("b", FAMILIES, ids=IDS)
def test_reversed_hazard_and_g_ratio(b):
    x = interior(b)[5:]
    assert_allclose(b.reversed_hazard(x), b.pdf(x) / b.cdf(x), rtol=1e-10)
    assert_allclose(b.g_ratio(x), b.cdf(x) / b.sf(x), rtol=1e-9)


@pytest.mark.parametrize("b", FAMILIES, ids=IDS)
def test_hazard_prime_matches_finite_difference(b):
    x = interior(b)[30:-30]
    h = 1e-5 * (x - b.support_lo)
    fd = (b.hazard(x + h) - b.hazard(x - h)) / (2 * h)
    assert_allclose(b.hazard_prime(x), fd, rtol=1e-4, atol=1e-9)


@pytest.mark.parametrize("b", FAMILIES, ids=IDS)
def test_g_prime_and_second(b):
    x = interior(b)[30:-60]
    h = 1e-5 * (x - b.support_lo)
    fd1 = (b.g_ratio(x + h) - b.g_ratio(x - h)) / (2 * h)
    assert_allclose(b.g_prime(x), fd1, rtol=1e-4, atol=1e-9)
    fd2 = (b.g_prime(x + h) - b.g_prime(x - h)) / (2 * h)
    assert_allclose(b.g_second(x), fd2, rtol=1e-3, atol=1e-8)


@pytest.mark.parametrize("b", FAMILIES, ids=IDS)
@given(u=st.floats(min_value=1e-9, max_value=1 - 1e-9))
def test_ppf_inverts_cdf(b, u):
    x = b.ppf(u)
    assert_allclose(b.cdf(x), u, rtol=1e-7, atol=1e-12)


def test_hazard_right_limit_at_support_start():
    # (x - 1)/(x + 1): density 2/(x+1)^2, survival 2/(x+1), hazard 1/(x+1)
    assert_allclose(RatioPareto().hazard(1.0), 0.5)
    assert RatioPareto().hazard(0.5) == 0.0
    assert_allclose(Pareto(2.0).hazard(1.0), 2.0)


@pytest.mark.parametrize("a", [0.5, 1.0, 3.0])
def test_pareto_closed_forms(a):
    x = np.array([1.5, 2.0, 10.0])
    assert_allclose(Pareto(a).sf(x), x ** -a)
    assert_allclose(Pareto(a).hazard(x), a / x)


def test_hazard_raises_when_survival_underflows():
    with pytest.raises(DomainError):
        TruncWeibull(1.7).hazard(1e4)


@pytest.mark.parametrize("cls,args", [(Pareto, (0.0,)), (Pareto, (-1.0,)), (Burr, (1.0, 0.0)),
                                      (PowerGenWeibull, (np.nan, 1.0)), (ExpWeibull, (1.0, -2.0)),
                                      (TruncWeibull, (np.inf,))])
def test_invalid_parameters(cls, args):
    with pytest.raises(ValueError):
        cls(*args)


def test_make_baseline_round_trip():
    for b in FAMILIES:
        d = b.to_dict()
        assert make_baseline(d["family"], d["params"]) == b
    with pytest.raises(ValueError):
        make_baseline("nope", {})
    assert set(BASELINES) >= {"pareto", "burr", "pgw", "expweibull", "truncweibull", "ratio"}


# expected verdicts follow from the closed forms of each hazard
SHAPE_CASES = [
    (Pareto(2.0), SC.HAZARD_DECREASING, True),
    (Pareto(2.0), SC.W_HAZARD_DECREASING, True),
    (Pareto(2.0), SC.W2_HAZARD_DECREASING, False),
    (Burr(0.5, 2.0), SC.HAZARD_DECREASING, True),
    (Burr(2.0, 1.5), SC.HAZARD_DECREASING, False),
    (PowerGenWeibull(0.5, 2.0), SC.HAZARD_DECREASING, True),
    (ExpWeibull(0.5, 0.2), SC.HAZARD_DECREASING, True),
    (ExpWeibull(2.0, 1.5), SC.HAZARD_DECREASING, False),
    (TruncWeibull(0.12), SC.HAZARD_DECREASING, True),
    (TruncWeibull(1.7), SC.HAZARD_DECREASING, False),
    (RatioPareto(), SC.HAZARD_DECREASING, True),
    (RatioPareto(), SC.W_HAZARD_INCREASING_CONCAVE, True),
]


@pytest.mark.parametrize("b,cond,expected", SHAPE_CASES,
                         ids=[f"{b!r}-{c.value}" for b, c, _ in SHAPE_CASES])
def test_shape_conditions(b, cond, expected):
    res = check_shape(b, cond)
    assert res.satisfied is expected
    if not expected:
        assert res.witness is not None


@pytest.mark.parametrize("a", [1.2, 1.5, 1.9])
def test_pareto_between_one_and_two_meets_hazard_order_shapes(a):
    for cond in (SC.HAZARD_DECREASING_CONVEX, SC.G_INCREASING_CONVEX, SC.G_SECOND_DECREASING):
        assert check_shape(Pareto(a), cond).satisfied


def test_check_shape_grid_validation():
    b = Pareto(2.0)
    with pytest.raises(ValueError):
        check_shape(b, SC.HAZARD_DECREASING, grid=np.linspace(1.1, 2, 10))
    with pytest.raises(ValueError):
        check_shape(b, SC.HAZARD_DECREASING, grid=np.linspace(0.5, 2, 64))
    with pytest.raises(ValueError):
        check_shape(b, "not_a_condition")


def test_default_shape_grid_stays_where_survival_is_positive():
    for b in FAMILIES:
        g = default_shape_grid(b)
        assert np.all(b.sf(g) > 0)


def test_tabulated_tracks_analytic():
    ref = Burr(0.5, 2.0)
    x = np.concatenate([[0.0], np.geomspace(1e-4, 1e4, 400)])
    F = ref.cdf(x)
    F[-1] = 1.0
    tab = Tabulated(x, F)
    probe = np.geomspace(1e-2, 1e2, 50)
    assert_allclose(tab.cdf(probe), ref.cdf(probe), atol=2e-4)
    assert_allclose(tab.cdf(tab.ppf(0.3)), 0.3, atol=1e-9)
    res = check_shape(tab, SC.W2_HAZARD_PRIME_INCREASING, grid=np.geomspace(0.1, 10, 40))
    assert not res.satisfied and "unsupported" in res.detail


def test_tabulated_rejects_non_monotone():
    with pytest.raises(ValueError):
        Tabulated([0, 1, 2], [0.0, 0.6, 0.5])
