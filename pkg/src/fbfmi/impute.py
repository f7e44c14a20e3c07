"""Bayesian multiple imputation of missing predictor cells.

The rows ``v_i = (x_i1, ..., x_ip, y_i)`` are modeled as i.i.d. multivariate
normal with the prior ``|Sigma|^(-(p + 2) / 2)`` on ``(mu, Sigma)``. Data
augmentation alternates

1. ``Sigma ~ InvWishart(n - 1, S)`` and ``mu | Sigma ~ N(vbar, Sigma / n)``
   given the current completed data (``S`` is the centered scatter matrix);
2. for every row, the missing coordinates from their Gaussian conditional
   given the row's observed coordinates.

The response takes part in the joint model so imputations condition on it.

Random numbers come from a Philox (counter-based) generator seeded with
``numpy.random.SeedSequence(seed)``; one chain owns one generator.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy import stats

from .dataset import Dataset
from .errors import AllMissingRow, DegenerateCovariance, InsufficientRows

DEFAULT_BURN_IN = 200
DEFAULT_SPACING = 50
DEFAULT_M = 20


@dataclass(frozen=True)
class GibbsConfig:
    burn_in: int = DEFAULT_BURN_IN
    spacing: int = DEFAULT_SPACING
    m: int = DEFAULT_M
    seed: int = 0

    def __post_init__(self):
        if self.burn_in < 0 or self.spacing < 1 or self.m < 1:
            raise ValueError(f"invalid sampler settings {self}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")


@dataclass
class ImputationSet:
    """Completed copies ``(X, y)`` of one dataset, in chain order."""

    completed: list
    chain_meta: dict = field(default_factory=dict)

    @property
    def m(self):
        return len(self.completed)


def make_rng(seed):
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))


def listwise_delete(d, k_full=None):
    """Keep the rows with every predictor observed, in their original order.

    Raises :class:`InsufficientRows` if no more than ``k_full + 1`` rows
    survive (``k_full`` defaults to ``p + 1``, the full design size).
    """
    k_full = d.p + 1 if k_full is None else k_full
    keep = np.flatnonzero(d.mask.all(axis=1))
    if keep.size <= k_full + 1:
        raise InsufficientRows(
            f"list-wise deletion leaves {keep.size} of {d.n} rows; need more than {k_full + 1}"
        )
    return d.rows(keep)


def _draw_parameters(V, rng):
    n, dim = V.shape
    vbar = V.mean(axis=0)
    C = V - vbar
    S = C.T @ C
    try:
        np.linalg.cholesky(S)
    except np.linalg.LinAlgError as exc:
        raise DegenerateCovariance("scatter matrix of the completed data is singular") from exc
    Sigma = np.atleast_2d(stats.invwishart.rvs(df=n - 1, scale=S, random_state=rng))
    mu = rng.multivariate_normal(vbar, Sigma / n, method="cholesky")
    return mu, Sigma


def _patterns(miss):
    """Group rows by missingness pattern, with the index grids each needs."""
    groups = {}
    for i in np.flatnonzero(miss.any(axis=1)):
        groups.setdefault(miss[i].tobytes(), []).append(i)
    out = []
    for rows in groups.values():
        rows = np.asarray(rows)
        m = np.flatnonzero(miss[rows[0]])
        o = np.flatnonzero(~miss[rows[0]])
        out.append({
            "m": m,
            "o": o,
            "oo": np.ix_(o, o),
            "mo": np.ix_(m, o),
            "mm": np.ix_(m, m),
            "rows_o": np.ix_(rows, o),
            "rows_m": np.ix_(rows, m),
            "size": (rows.size, m.size),
        })
    return out


def _impute_rows(V, patterns, mu, Sigma, rng):
    for pat in patterns:
        S_mo = Sigma[pat["mo"]]
        coef = np.linalg.solve(Sigma[pat["oo"]], S_mo.T).T
        cond_cov = Sigma[pat["mm"]] - coef @ S_mo.T
        chol = np.linalg.cholesky(0.5 * (cond_cov + cond_cov.T))
        mean = mu[pat["m"]] + (V[pat["rows_o"]] - mu[pat["o"]]) @ coef.T
        z = rng.standard_normal(pat["size"])
        V[pat["rows_m"]] = mean + z @ chol.T


def impute(d, cfg=None):
    """Draw ``cfg.m`` completed copies of ``d`` from the posterior predictive.

    Parameters
    ----------
    d : Dataset
    cfg : GibbsConfig, optional

    Returns
    -------
    ImputationSet
        Copies are emitted every ``spacing`` sweeps after ``burn_in`` sweeps.
        Observed cells are copied verbatim into every copy.
    """
    cfg = cfg or GibbsConfig()
    n, p = d.n, d.p
    if n <= p + 1:
        raise DegenerateCovariance(f"{n} rows cannot identify a {p + 1}-variate covariance")
    miss = ~d.mask
    empty = np.flatnonzero(miss.all(axis=1) & ~np.isfinite(d.y))
    if empty.size:
        raise AllMissingRow(f"row {int(empty[0])} has no observed cell")
    if miss.all(axis=0).any():
        col = d.names[int(np.flatnonzero(miss.all(axis=0))[0])]
        raise DegenerateCovariance(f"predictor {col!r} has no observed values")

    V = np.column_stack([d.X, d.y])
    for j in range(p):
        V[miss[:, j], j] = V[d.mask[:, j], j].mean()
    patterns = _patterns(np.column_stack([miss, np.zeros(n, dtype=bool)]))
    rng = make_rng(cfg.seed)

    completed = []
    sweeps = cfg.burn_in + cfg.spacing * cfg.m
    for sweep in range(1, sweeps + 1):
        mu, Sigma = _draw_parameters(V, rng)
        _impute_rows(V, patterns, mu, Sigma, rng)
        if sweep > cfg.burn_in and (sweep - cfg.burn_in) % cfg.spacing == 0:
            X = np.where(d.mask, d.X, V[:, :p])
            X.setflags(write=False)
            completed.append((X, d.y))
    meta = {"burn_in": cfg.burn_in, "spacing": cfg.spacing, "seed": cfg.seed, "rng": "Philox"}
    return ImputationSet(completed, meta)


def complete_copies(d, m):
    """``m`` references to a complete dataset, shaped like an imputation set."""
    if not d.is_complete:
        raise ValueError("dataset has missing cells")
    return ImputationSet([(d.X, d.y)] * m, {"burn_in": 0, "spacing": 1, "seed": None, "rng": None})


__all__ = ["Dataset", "GibbsConfig", "ImputationSet", "complete_copies", "impute", "listwise_delete"]
