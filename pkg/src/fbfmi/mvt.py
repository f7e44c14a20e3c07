"""Multivariate Student-t log-density and marginals."""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, EmptyIndexSet, IndexOutOfRange, NotPositiveDefinite

LOG_PI = math.log(math.pi)


@dataclass(frozen=True)
class MvT:
    """Multivariate t with location ``mu``, scale ``sigma`` and ``nu`` df."""

    mu: np.ndarray
    sigma: np.ndarray
    nu: float

    def __post_init__(self):
        mu = np.atleast_1d(np.asarray(self.mu, dtype=float))
        sigma = np.atleast_2d(np.asarray(self.sigma, dtype=float))
        if sigma.shape != (mu.size, mu.size):
            raise DimensionMismatch(
                f"scale of shape {sigma.shape} does not match location of length {mu.size}"
            )
        if not self.nu > 0:
            raise ValueError(f"degrees of freedom must be positive, got {self.nu}")
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "sigma", sigma)

    @property
    def dim(self):
        return self.mu.size


def _chol(sigma):
    if not np.allclose(sigma, sigma.T, rtol=1e-10, atol=0.0):
        raise NotPositiveDefinite("scale matrix is not symmetric")
    try:
        return np.linalg.cholesky(sigma)
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefinite("scale matrix is not positive definite") from exc


def mvt_logpdf(x, t):
    """Log-density of ``t`` at ``x``, via a Cholesky factor of the scale."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if x.shape != t.mu.shape:
        raise DimensionMismatch(f"point of length {x.size} for a {t.dim}-variate law")
    q = t.dim
    nu = float(t.nu)
    chol = _chol(t.sigma)
    z = np.linalg.solve(chol, x - t.mu)
    delta = float(z @ z)
    half_logdet = float(np.sum(np.log(np.diag(chol))))
    return (
        math.lgamma(0.5 * (nu + q))
        - math.lgamma(0.5 * nu)
        - 0.5 * q * (math.log(nu) + LOG_PI)
        - half_logdet
        - 0.5 * (nu + q) * math.log1p(delta / nu)
    )


def marginal(t, keep):
    """Marginal law of the coordinates in ``keep`` (same df, sub-blocks)."""
    keep = [int(i) for i in keep]
    if not keep:
        raise EmptyIndexSet("cannot marginalize onto an empty index set")
    if len(set(keep)) != len(keep):
        raise ValueError(f"duplicate indices in {keep}")
    for i in keep:
        if not 0 <= i < t.dim:
            raise IndexOutOfRange(f"index {i} outside 0..{t.dim - 1}")
    idx = np.asarray(keep)
    return MvT(t.mu[idx], t.sigma[np.ix_(idx, idx)], t.nu)
