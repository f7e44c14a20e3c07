"""Write the synthetic Ozone-style fixture used by the experiment recipe.

The real Ozone35 table is not redistributed here. This script draws a
surrogate with the same shape as its seven base meteorological predictors
(x4..x10, n = 178) and a strongly correlated block of temperature-like
columns, then a response driven by a few of them. Output is deterministic.

    python scripts/make_ozone_surrogate.py src/fbfmi/data/ozone_surrogate.csv
"""

import csv
import sys

import numpy as np

NAMES = ["x4", "x5", "x6", "x7", "x8", "x9", "x10"]
N = 178
SEED = 20250614

# x4 pressure height, x5 wind speed, x6 humidity, x7/x8 temperatures,
# x9 inversion base height, x10 pressure gradient
CORR = np.array([
    [1.00, -0.10, 0.10, 0.80, 0.75, -0.50, -0.20],
    [-0.10, 1.00, 0.10, -0.05, -0.10, 0.20, 0.25],
    [0.10, 0.10, 1.00, 0.35, 0.40, -0.25, 0.55],
    [0.80, -0.05, 0.35, 1.00, 0.90, -0.65, 0.10],
    [0.75, -0.10, 0.40, 0.90, 1.00, -0.60, 0.15],
    [-0.50, 0.20, -0.25, -0.65, -0.60, 1.00, 0.10],
    [-0.20, 0.25, 0.55, 0.10, 0.15, 0.10, 1.00],
])
MEANS = np.array([5750.0, 5.0, 58.0, 62.0, 57.0, 2600.0, 17.0])
SDS = np.array([100.0, 2.2, 20.0, 14.0, 10.0, 1800.0, 35.0])
# effects on the standardized scale
COEF = np.array([0.0, 0.0, 1.5, 4.5, 0.0, -1.6, -0.9])
INTERCEPT = 11.5
NOISE_SD = 4.0


def main(path):
    rng = np.random.default_rng(SEED)
    z = rng.multivariate_normal(np.zeros(len(NAMES)), CORR, size=N)
    X = MEANS + z * SDS
    y = INTERCEPT + z @ COEF + rng.normal(0.0, NOISE_SD, size=N)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["y", *NAMES])
        for yi, row in zip(y, X):
            w.writerow([f"{yi:.4f}", *(f"{v:.4f}" for v in row)])


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "ozone_surrogate.csv")
