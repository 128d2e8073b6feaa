"""Scale estimation with the standard deviation, mean deviation and Gini's
mean difference: population values, asymptotic efficiencies, influence
functions and seeded finite-sample simulation."""
from .closedform import PopulationSummary, are, asv, integral_J, lomnicki_var, population_value, summarize
from .curves import Pair, RootNotFound, are_surface, epsilon_star, iso_curve
from .distributions import (
    DomainError,
    Laplace,
    Normal,
    NormalMixture,
    StudentT,
    Uniform,
    make_rng,
    parse_distribution,
)
from .estimators import (
    MeanDevScaling,
    ScaleKind,
    estimate,
    gini_n,
    iqr_n,
    mean_dev_n,
    sample_median,
    sd_n,
)
from .influence import influence_curve, influence_value
from .montecarlo import StudyConfig, run_cell, run_study
from .oracle import AccuracyError

__version__ = "0.1.0"

__all__ = [
    "AccuracyError",
    "DomainError",
    "Laplace",
    "MeanDevScaling",
    "Normal",
    "NormalMixture",
    "Pair",
    "PopulationSummary",
    "RootNotFound",
    "ScaleKind",
    "StudentT",
    "StudyConfig",
    "Uniform",
    "are",
    "are_surface",
    "asv",
    "epsilon_star",
    "estimate",
    "gini_n",
    "influence_curve",
    "influence_value",
    "integral_J",
    "iqr_n",
    "iso_curve",
    "lomnicki_var",
    "make_rng",
    "mean_dev_n",
    "parse_distribution",
    "population_value",
    "run_cell",
    "run_study",
    "sample_median",
    "sd_n",
    "summarize",
]
