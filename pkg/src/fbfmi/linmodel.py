"""Regression sufficient statistics and the closed-form Student-t laws of the
coefficient vector.

Every design is ``[1 | X_c]`` where ``X_c`` holds the selected predictor
columns centered at their sample means, so the intercept is orthogonal to the
slopes. The noninformative prior is ``p(theta, sigma^2) ~ 1 / sigma^2``.

With the likelihood raised to a fraction ``b`` the joint is proportional to

    (sigma^2)^(-n b / 2 - 1) exp(-b (rss + Q(theta)) / (2 sigma^2)),

with ``Q(theta) = (theta - theta_hat)' X'X (theta - theta_hat)``. Integrating
``sigma^2`` out leaves ``(1 + Q / rss)^(-n b / 2)``, a k-variate t with
``n b - k`` degrees of freedom and scale ``rss / (n b - k) * inv(X'X)``.
The fraction drops out of the scale except through the degrees of freedom.
"""

from dataclasses import dataclass

import numpy as np

from .errors import FractionTooSmall, InsufficientRows, RankDeficient
from .mvt import MvT

PIVOT_TOL = 1e-10


@dataclass(frozen=True)
class SuffStats:
    xtx: np.ndarray
    xty: np.ndarray
    theta_hat: np.ndarray
    rss: float
    n: int
    k: int
    chol: np.ndarray  # lower Cholesky factor of xtx
    degenerate: bool = False

    def xtx_inv(self):
        eye = np.eye(self.k)
        linv = np.linalg.solve(self.chol, eye)
        return linv.T @ linv

    def logdet_xtx(self):
        return 2.0 * float(np.sum(np.log(np.diag(self.chol))))


@dataclass(frozen=True)
class FractionConfig:
    """Likelihood fraction ``b`` in (0, 1].

    ``mode`` is ``"minimal"`` when ``b`` came from :func:`minimal_fraction`
    and ``"explicit"`` when it was supplied by the caller.
    """

    b: float
    mode: str = "explicit"

    def __post_init__(self):
        if not 0.0 < self.b <= 1.0:
            raise ValueError(f"fraction must lie in (0, 1], got {self.b}")
        if self.mode not in ("minimal", "explicit"):
            raise ValueError(f"unknown fraction mode {self.mode!r}")


def select_columns(gamma, p):
    """Predictor indices (0-based) included by bitmask ``gamma``."""
    return [j for j in range(p) if (gamma >> j) & 1]


def design_matrix(X, gamma=None):
    """Return ``[1 | centered X_gamma]``; ``gamma=None`` selects every column."""
    X = np.asarray(X, dtype=float)
    if X.ndim == 1:
        X = X[:, None]
    n, p = X.shape
    cols = list(range(p)) if gamma is None else select_columns(gamma, p)
    Xs = X[:, cols]
    if Xs.size and not np.all(np.isfinite(Xs)):
        raise ValueError("selected predictor columns contain missing cells")
    Xs = Xs - Xs.mean(axis=0)
    return np.hstack([np.ones((n, 1)), Xs])


def cholesky_checked(a):
    """Cholesky factor of ``a`` without jitter.

    Raises :class:`RankDeficient` when a squared pivot falls below
    ``PIVOT_TOL`` times its own diagonal entry, i.e. when a column is
    explained by the preceding ones up to ``1 - R^2 < PIVOT_TOL``. Comparing
    each pivot with its own diagonal keeps the check invariant to column
    scaling.
    """
    a = np.asarray(a, dtype=float)
    diag = np.diag(a)
    if a.size == 0 or np.any(diag <= 0.0):
        raise RankDeficient("cross-product matrix has a zero diagonal")
    try:
        chol = np.linalg.cholesky(a)
    except np.linalg.LinAlgError as exc:
        raise RankDeficient("cross-product matrix is not positive definite") from exc
    ratio = np.diag(chol) ** 2 / diag
    if np.min(ratio) < PIVOT_TOL:
        j = int(np.argmin(ratio))
        raise RankDeficient(f"design column {j} is numerically collinear (relative pivot {ratio[j]:.3g})")
    return chol


def fit_sufficient_stats(X, y, gamma=None):
    """Least-squares sufficient statistics for the design ``[1 | X_gamma]``.

    Parameters
    ----------
    X : ndarray (n, p)
        Complete predictor matrix; only the columns selected by ``gamma`` are
        read. May have zero columns.
    y : ndarray (n,)
        Response.
    gamma : int, optional
        Bitmask of included predictors. ``None`` includes all of them.

    Returns
    -------
    SuffStats
        ``degenerate`` is set when the fit is exact (``rss == 0``).
    """
    y = np.asarray(y, dtype=float)
    Z = design_matrix(np.asarray(X, dtype=float).reshape(len(y), -1), gamma)
    n, k = Z.shape
    if n <= k:
        raise InsufficientRows(f"{n} rows cannot support a design with {k} columns")
    xtx = Z.T @ Z
    xtx = 0.5 * (xtx + xtx.T)
    xty = Z.T @ y
    chol = cholesky_checked(xtx)
    theta_hat = np.linalg.solve(chol.T, np.linalg.solve(chol, xty))
    resid = y - Z @ theta_hat
    rss = float(resid @ resid)
    degenerate = rss <= 1e-20 * max(float(y @ y), 1.0)
    if degenerate:
        rss = 0.0
    return SuffStats(xtx, xty, theta_hat, rss, n, k, chol, degenerate)


def _t_law(s, dof):
    if s.degenerate:
        raise RankDeficient("response is an exact linear function of the design")
    sigma = (s.rss / dof) * s.xtx_inv()
    return MvT(s.theta_hat.copy(), 0.5 * (sigma + sigma.T), float(dof))


def posterior_t(s):
    """Marginal posterior of ``(alpha, beta)``: t with ``n - k`` df."""
    dof = s.n - s.k
    if dof < 1:
        raise InsufficientRows(f"n - k = {dof} < 1")
    return _t_law(s, dof)


def fractional_t(s, f):
    """Marginal fractional prior of ``(alpha, beta)``: t with ``n b - k`` df."""
    dof = s.n * f.b - s.k
    if dof < 1.0 - 1e-12:
        raise FractionTooSmall(f"n b - k = {dof:.6g} < 1 (n={s.n}, b={f.b}, k={s.k})")
    if abs(dof - 1.0) <= 1e-12:
        dof = 1.0
    return _t_law(s, dof)


def minimal_fraction(n, k):
    """Minimal training fraction ``b = (k + 1) / n``, giving one df."""
    if n < k + 2:
        raise InsufficientRows(f"minimal fraction needs n >= k + 2 (n={n}, k={k})")
    return FractionConfig((k + 1) / n, "minimal")
