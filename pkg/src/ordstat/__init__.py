"""Second-smallest lifetimes of exponentiated location-scale batches.

Survival and hazard formulas for independent and Archimedean-dependent
batches, grid-certified stochastic and hazard-rate order verdicts,
vector preorders, and a registry of sufficient conditions with
hypothesis checkers.
"""

from ._checks import CheckResult, DomainError
from .baseline import (
    BASELINES,
    Baseline,
    Burr,
    ExpWeibull,
    Pareto,
    PowerGenWeibull,
    RatioPareto,
    ShapeCondition,
    Tabulated,
    TruncWeibull,
    check_shape,
    make_baseline,
)
from .copula import (
    GENERATORS,
    Clayton,
    Generator,
    GumbelFrailty,
    GumbelHougaard,
    Independence,
    TabulatedGenerator,
    check_additivity,
    check_d_monotone,
    check_log_concave,
    make_generator,
)
from .majorize import (
    chain_class,
    jointly_ordered,
    majorizes,
    reciprocal_majorizes,
    weak_submajorizes,
    weak_supermajorizes,
)
from .orderstat import (
    ElsBatch,
    ElsMarginal,
    default_grid,
    hazard_second,
    hazard_second_indep_unitshape,
    sf_second,
    sf_second_dep,
    sf_second_indep,
)
from .scenario import Scenario, load_fixture, load_scenario
from .stochorder import OrderVerdict, check_hr, check_st, mc_sf_second, oracle_sf_second_dep
from .theorems import (
    TheoremReport,
    TheoremSpec,
    eval_bound,
    get_theorem,
    list_theorems,
    omega,
    t_omega,
    verify,
)

__version__ = "0.1.0"
