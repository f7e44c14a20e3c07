"""Complete-data fractional Bayes factors against the full model.

Models are integer bitmasks over the ``p`` predictors: bit ``j`` set means
predictor ``j`` is included. The intercept is part of every model and is never
tested. ``log_fbf[gamma]`` is the log fractional Bayes factor of ``gamma``
against the full model ``2**p - 1``, so pairwise factors follow by
subtraction and are coherent by construction.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, IncompleteModelSet, TooManyPredictors
from .linmodel import (
    FractionConfig,
    fit_sufficient_stats,
    fractional_t,
    minimal_fraction,
    posterior_t,
)
from .mvt import marginal, mvt_logpdf

MAX_PREDICTORS = 25
MODEL_PRIORS = ("uniform", "scott-berger")


@dataclass
class SelectionResult:
    log_fbf: np.ndarray
    post_prob: np.ndarray
    inclusion: np.ndarray
    model_prior: str = "uniform"
    names: list = field(default_factory=list)

    @property
    def p(self):
        return self.inclusion.size

    def pairwise_log_bf(self, g1, g2):
        """log B_{g1, g2}; both factors are taken against the same full model."""
        return self.log_fbf[g1] - self.log_fbf[g2]


def full_model(p):
    return (1 << p) - 1


def enumerate_models(p):
    """All ``2**p`` bitmasks in ascending order."""
    if not 1 <= p <= MAX_PREDICTORS:
        raise TooManyPredictors(f"exhaustive enumeration supports 1..{MAX_PREDICTORS} predictors, got {p}")
    return list(range(1 << p))


def excluded_indices(gamma, p):
    """Design coordinates (intercept at 0) of the predictors that ``gamma`` drops."""
    if not 0 <= gamma < (1 << p):
        raise ValueError(f"model {gamma} is not a bitmask over {p} predictors")
    return [j + 1 for j in range(p) if not (gamma >> j) & 1]


def null_log_density(gamma, t, p):
    """Log-density of the marginal of ``t`` over the excluded slopes at zero.

    Returns 0.0 for the full model (nothing excluded).
    """
    drop = excluded_indices(gamma, p)
    if not drop:
        return 0.0
    return mvt_logpdf(np.zeros(len(drop)), marginal(t, drop))


def savage_dickey_log_fbf(gamma, post, fprior):
    """Log FBF of ``gamma`` vs the full model as a posterior/prior density ratio.

    ``post`` and ``fprior`` are the full-model t laws over ``(alpha, beta)``.
    """
    if post.dim != fprior.dim:
        raise DimensionMismatch(f"posterior has {post.dim} coordinates, fractional prior {fprior.dim}")
    p = post.dim - 1
    if not excluded_indices(gamma, p):
        return 0.0
    return null_log_density(gamma, post, p) - null_log_density(gamma, fprior, p)


def log_fractional_marginal(s, b):
    """Log marginal likelihood of the data with the likelihood raised to ``b``.

    Closed form under the prior ``1 / sigma^2``; ``b = 1`` gives the ordinary
    marginal likelihood. All terms are kept, none cancelled.
    """
    a = s.n * b - s.k
    return (
        -0.5 * a * math.log(math.pi)
        - 0.5 * s.k * math.log(b)
        - 0.5 * s.logdet_xtx()
        + math.lgamma(0.5 * a)
        - 0.5 * a * math.log(b * s.rss)
    )


def direct_log_fbf(gamma, X, y, f):
    """Log FBF from the four marginal likelihoods, independent of any t law.

    ``f`` is the single fraction shared by every model (computed from the full
    design).
    """
    X = np.asarray(X, dtype=float)
    p = X.shape[1]
    full = full_model(p)
    if gamma == full or f.b == 1.0:
        return 0.0
    sub = fit_sufficient_stats(X, y, gamma)
    top = fit_sufficient_stats(X, y, full)
    return (
        log_fractional_marginal(sub, 1.0)
        - log_fractional_marginal(sub, f.b)
        - log_fractional_marginal(top, 1.0)
        + log_fractional_marginal(top, f.b)
    )


def _log_model_weights(p, prior):
    if prior == "uniform":
        return np.zeros(1 << p)
    if prior == "scott-berger":
        sizes = np.array([bin(g).count("1") for g in range(1 << p)])
        log_binom = np.array([math.log(math.comb(p, s)) for s in sizes])
        return -math.log(p + 1) - log_binom
    raise ValueError(f"unknown model prior {prior!r}; expected one of {MODEL_PRIORS}")


def _as_model_array(values):
    if isinstance(values, dict):
        size = len(values)
        p = size.bit_length() - 1
        if size < 2 or (1 << p) != size or set(values) != set(range(size)):
            raise IncompleteModelSet(f"{size} entries do not cover all models of any p")
        return np.array([values[g] for g in range(size)], dtype=float), p
    arr = np.asarray(values, dtype=float)
    size = arr.size
    p = size.bit_length() - 1
    if arr.ndim != 1 or size < 2 or (1 << p) != size:
        raise IncompleteModelSet(f"{size} entries do not cover all models of any p")
    return arr, p


def posterior_model_probs(log_fbfs, prior="uniform"):
    """Posterior model probabilities from log FBFs against the full model.

    ``log_fbfs`` is an array indexed by model bitmask, or a dict covering
    every model. Normalization is done with log-sum-exp.
    """
    arr, p = _as_model_array(log_fbfs)
    if not np.all(np.isfinite(arr)):
        raise ValueError("log FBFs must be finite")
    logw = arr + _log_model_weights(p, prior)
    logw -= logw.max()
    probs = np.exp(logw)
    return probs / math.fsum(probs)


def inclusion_probs(probs):
    """Per-predictor sum of probabilities over the models that include it."""
    arr, p = _as_model_array(probs)
    models = np.arange(arr.size)
    return np.array([arr[(models >> j) & 1 == 1].sum() for j in range(p)])


def log_fbfs_from_laws(post, fprior, executor=None):
    """Log FBFs for every model given the full-model t laws.

    ``executor`` may be any ``concurrent.futures`` executor; results are
    gathered in model order either way.
    """
    models = enumerate_models(post.dim - 1)

    def one(g):
        return savage_dickey_log_fbf(g, post, fprior)

    values = executor.map(one, models) if executor is not None else map(one, models)
    return np.fromiter(values, dtype=float, count=len(models))


def select(X, y, fraction=None, model_prior="uniform", names=None, executor=None):
    """Complete-data variable selection by Savage-Dickey FBFs.

    Parameters
    ----------
    X : ndarray (n, p)
        Complete predictors.
    y : ndarray (n,)
    fraction : FractionConfig, optional
        Defaults to the minimal fraction of the full design.
    model_prior : {"uniform", "scott-berger"}

    Returns
    -------
    SelectionResult
    """
    X = np.asarray(X, dtype=float)
    n, p = X.shape
    enumerate_models(p)
    s = fit_sufficient_stats(X, y)
    f = fraction if fraction is not None else minimal_fraction(n, s.k)
    log_fbf = log_fbfs_from_laws(posterior_t(s), fractional_t(s, f), executor)
    probs = posterior_model_probs(log_fbf, model_prior)
    return SelectionResult(log_fbf, probs, inclusion_probs(probs), model_prior, list(names or []))


__all__ = [
    "FractionConfig",
    "SelectionResult",
    "direct_log_fbf",
    "enumerate_models",
    "excluded_indices",
    "full_model",
    "inclusion_probs",
    "log_fbfs_from_laws",
    "log_fractional_marginal",
    "null_log_density",
    "posterior_model_probs",
    "savage_dickey_log_fbf",
    "select",
]
