"""The observed-data container shared by every stage."""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, MissingResponse


@dataclass(frozen=True)
class Dataset:
    """Response ``y``, predictors ``X`` and the observed-cell ``mask``.

    ``mask[i, j]`` is True when ``X[i, j]`` was observed. Unobserved cells
    hold NaN and are never read. The response is always fully observed.
    """

    y: np.ndarray
    X: np.ndarray
    mask: np.ndarray
    names: tuple

    def __post_init__(self):
        y = np.asarray(self.y, dtype=float).reshape(-1)
        X = np.asarray(self.X, dtype=float)
        if X.ndim == 1:
            X = X[:, None]
        mask = np.asarray(self.mask, dtype=bool)
        names = tuple(self.names) if self.names is not None else ()
        if not names:
            names = tuple(f"x{j + 1}" for j in range(X.shape[1]))
        if X.shape[0] != y.size or mask.shape != X.shape or len(names) != X.shape[1]:
            raise DimensionMismatch(
                f"y has {y.size} rows, X {X.shape}, mask {mask.shape}, {len(names)} names"
            )
        if y.size < 1 or X.shape[1] < 1:
            raise DimensionMismatch("a dataset needs at least one row and one predictor")
        bad = np.flatnonzero(~np.isfinite(y))
        if bad.size:
            raise MissingResponse(int(bad[0]))
        X = np.where(mask, X, np.nan)
        if not np.all(np.isfinite(X[mask])):
            raise ValueError("observed predictor cells must be finite")
        for name, value in (("y", y), ("X", X), ("mask", mask)):
            value.setflags(write=False)
            object.__setattr__(self, name, value)
        object.__setattr__(self, "names", names)

    @classmethod
    def from_arrays(cls, X, y, names=None):
        """Build a dataset treating NaN cells of ``X`` as missing."""
        X = np.asarray(X, dtype=float)
        if X.ndim == 1:
            X = X[:, None]
        return cls(y, X, np.isfinite(X), names)

    @property
    def n(self):
        return self.y.size

    @property
    def p(self):
        return self.X.shape[1]

    @property
    def is_complete(self):
        return bool(self.mask.all())

    def rows(self, index):
        index = np.asarray(index)
        return Dataset(self.y[index], self.X[index], self.mask[index], self.names)

    def with_mask(self, mask):
        return Dataset(self.y, self.X, np.asarray(mask, dtype=bool) & self.mask, self.names)
