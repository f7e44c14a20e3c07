"""Fractional Bayes factor variable selection for linear regression,
with Savage-Dickey evaluation and multiple imputation for missing predictors."""

from .dataset import Dataset
from .fbf import (
    SelectionResult,
    direct_log_fbf,
    enumerate_models,
    inclusion_probs,
    posterior_model_probs,
    savage_dickey_log_fbf,
    select,
)
from .impute import GibbsConfig, ImputationSet, impute, listwise_delete
from .linmodel import FractionConfig, fit_sufficient_stats, fractional_t, minimal_fraction, posterior_t
from .mifbf import averaged_log_density, mi_log_fbf, mi_select
from .mvt import MvT, marginal, mvt_logpdf

__version__ = "0.1.0"

__all__ = [
    "Dataset",
    "FractionConfig",
    "GibbsConfig",
    "ImputationSet",
    "MvT",
    "SelectionResult",
    "averaged_log_density",
    "direct_log_fbf",
    "enumerate_models",
    "fit_sufficient_stats",
    "fractional_t",
    "impute",
    "inclusion_probs",
    "listwise_delete",
    "marginal",
    "mi_log_fbf",
    "mi_select",
    "minimal_fraction",
    "mvt_logpdf",
    "posterior_model_probs",
    "posterior_t",
    "savage_dickey_log_fbf",
    "select",
]
