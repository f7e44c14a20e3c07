"""Fractional Bayes factors from multiply imputed data.

For each model the full-model posterior density and fractional-prior density
of the excluded slopes at zero are averaged (on the natural scale) over the
completed copies, and the log FBF is the log ratio of the two averages. The
fractional prior of a copy raises the completed-data likelihood to ``b``;
the copies themselves always come from the full-data predictive.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from .errors import FBFError, NumericalError
from .fbf import (
    SelectionResult,
    enumerate_models,
    full_model,
    inclusion_probs,
    null_log_density,
    posterior_model_probs,
)
from .linmodel import fit_sufficient_stats, fractional_t, minimal_fraction, posterior_t

WHICH = ("posterior", "fractional-prior")


class ImputationFitError(NumericalError):
    """A completed copy could not be fitted; carries the copy index."""

    def __init__(self, index, cause):
        self.index = index
        self.cause = cause
        super().__init__(f"imputation {index}: {cause}")


@dataclass
class AveragedDensities:
    log_avg_post: np.ndarray
    log_avg_prior: np.ndarray
    m: int

    @property
    def log_fbf(self):
        return self.log_avg_post - self.log_avg_prior


def _laws(imps, f):
    for i, (X, y) in enumerate(imps.completed):
        try:
            s = fit_sufficient_stats(X, y)
            yield posterior_t(s), fractional_t(s, f)
        except FBFError as exc:
            raise ImputationFitError(i, exc) from exc


def _log_mean(values):
    return float(logsumexp(values) - math.log(len(values)))


def rubin_log_ratio(log_post, log_prior):
    """Log ratio of averages of per-imputation densities given in logs.

    This is the combining rule: densities are averaged first, then divided.
    Averaging per-imputation ratios is a different (wrong) estimator.
    """
    return _log_mean(np.asarray(log_post, dtype=float)) - _log_mean(np.asarray(log_prior, dtype=float))


def default_fraction(imps):
    n, p = imps.completed[0][0].shape
    return minimal_fraction(n, p + 1)


def averaged_log_density(gamma, imps, which, f=None):
    """Log of the imputation average of one null density.

    ``which`` is ``"posterior"`` or ``"fractional-prior"``. The full model
    has nothing to evaluate and returns 0.0.
    """
    if which not in WHICH:
        raise ValueError(f"which must be one of {WHICH}, got {which!r}")
    if imps.m < 1:
        raise ValueError("empty imputation set")
    f = f or default_fraction(imps)
    p = imps.completed[0][0].shape[1]
    if gamma == full_model(p):
        return 0.0
    pick = 0 if which == "posterior" else 1
    vals = [null_log_density(gamma, laws[pick], p) for laws in _laws(imps, f)]
    return _log_mean(vals)


def mi_log_fbf(gamma, imps, f=None):
    """Ratio of the averaged posterior and fractional-prior null densities, in logs."""
    f = f or default_fraction(imps)
    return averaged_log_density(gamma, imps, "posterior", f) - averaged_log_density(
        gamma, imps, "fractional-prior", f
    )


def averaged_densities(imps, f=None):
    """Both averages for every model, fitting each copy once."""
    if imps.m < 1:
        raise ValueError("empty imputation set")
    f = f or default_fraction(imps)
    p = imps.completed[0][0].shape[1]
    models = enumerate_models(p)
    post = np.empty((imps.m, len(models)))
    prior = np.empty((imps.m, len(models)))
    for i, (pt, ft) in enumerate(_laws(imps, f)):
        for g in models:
            post[i, g] = null_log_density(g, pt, p)
            prior[i, g] = null_log_density(g, ft, p)
    log_post = np.array([_log_mean(post[:, g]) for g in models])
    log_prior = np.array([_log_mean(prior[:, g]) for g in models])
    log_post[-1] = log_prior[-1] = 0.0
    return AveragedDensities(log_post, log_prior, imps.m)


def mi_select(imps, fraction=None, model_prior="uniform", names=None):
    """Variable selection from an imputation set."""
    avg = averaged_densities(imps, fraction)
    log_fbf = avg.log_fbf
    probs = posterior_model_probs(log_fbf, model_prior)
    return SelectionResult(log_fbf, probs, inclusion_probs(probs), model_prior, list(names or []))
