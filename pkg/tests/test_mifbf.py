import math

import numpy as np
import pytest

from fbfmi.dataset import Dataset
from fbfmi.fbf import enumerate_models, savage_dickey_log_fbf, select
from fbfmi.impute import GibbsConfig, ImputationSet, complete_copies, impute
from fbfmi.linmodel import FractionConfig, fit_sufficient_stats, fractional_t, minimal_fraction, posterior_t
from fbfmi.mifbf import (
    ImputationFitError,
    averaged_densities,
    averaged_log_density,
    mi_log_fbf,
    mi_select,
    rubin_log_ratio,
)


def _dataset(seed=0, n=40, p=3, rate=0.15):
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(n, p))
    X[:, 1] += 0.6 * X[:, 0]
    y = X @ np.r_[1.0, np.zeros(p - 2), 0.5] + rng.normal(size=n)
    Xm = X.copy()
    if rate:
        Xm[rng.random(X.shape) < rate] = np.nan
    return Dataset.from_arrays(Xm, y)


def test_ratio_of_averages_not_average_of_ratios():
    got = rubin_log_ratio(np.log([0.2, 0.4]), np.log([0.1, 0.4]))
    assert got == pytest.approx(math.log(0.3 / 0.25), abs=1e-15)
    assert got == pytest.approx(0.1823215567939546, abs=1e-12)
    assert abs(got - math.log(1.5)) > 0.2


def test_two_value_average():
    assert rubin_log_ratio(np.log([0.2, 0.4]), [0.0]) == pytest.approx(math.log(0.3))


def test_single_imputation_is_complete_data_value():
    d = _dataset(1)
    imps = impute(d, GibbsConfig(burn_in=10, spacing=2, m=1, seed=3))
    X, y = imps.completed[0]
    s = fit_sufficient_stats(X, y)
    f = minimal_fraction(d.n, s.k)
    post, prior = posterior_t(s), fractional_t(s, f)
    for g in enumerate_models(3):
        assert mi_log_fbf(g, imps, f) == pytest.approx(savage_dickey_log_fbf(g, post, prior), abs=1e-12)


def test_uses_same_copies_for_both_averages():
    d = _dataset(2)
    imps = impute(d, GibbsConfig(burn_in=10, spacing=2, m=6, seed=4))
    f = minimal_fraction(d.n, 4)
    per_post, per_prior = [], []
    for X, y in imps.completed:
        s = fit_sufficient_stats(X, y)
        from fbfmi.fbf import null_log_density
        per_post.append(null_log_density(0b010, posterior_t(s), 3))
        per_prior.append(null_log_density(0b010, fractional_t(s, f), 3))
    expected = rubin_log_ratio(per_post, per_prior)
    assert mi_log_fbf(0b010, imps, f) == pytest.approx(expected, abs=1e-13)
    assert averaged_log_density(0b010, imps, "posterior", f) == pytest.approx(
        math.log(np.mean(np.exp(per_post))), abs=1e-12)
    # differs from the mean of per-copy log ratios
    assert abs(expected - np.mean(np.subtract(per_post, per_prior))) > 1e-6


def test_full_model_is_zero():
    imps = impute(_dataset(3), GibbsConfig(burn_in=10, spacing=2, m=3, seed=1))
    assert mi_log_fbf(0b111, imps) == 0.0
    assert averaged_log_density(0b111, imps, "fractional-prior") == 0.0


@pytest.mark.parametrize("m", [1, 5, 20])
def test_reduces_to_complete_data(m):
    d = _dataset(4, rate=0.0)
    ref = select(d.X, d.y).log_fbf
    imps = impute(d, GibbsConfig(burn_in=5, spacing=1, m=m, seed=7))
    got = averaged_densities(imps).log_fbf
    assert np.max(np.abs(got - ref)) <= 1e-12


def test_vectorized_matches_per_model():
    d = _dataset(5)
    imps = impute(d, GibbsConfig(burn_in=10, spacing=2, m=4, seed=2))
    avg = averaged_densities(imps)
    for g in enumerate_models(3):
        assert avg.log_fbf[g] == pytest.approx(mi_log_fbf(g, imps), abs=1e-12)


def test_failed_copy_aborts():
    d = _dataset(6, rate=0.0)
    bad = d.X.copy()
    bad[:, 2] = bad[:, 0] * 2.0
    imps = ImputationSet([(d.X, d.y), (bad, d.y)])
    with pytest.raises(ImputationFitError) as info:
        mi_log_fbf(0, imps)
    assert info.value.index == 1


def test_coherence_of_mi_factors():
    res = mi_select(impute(_dataset(7), GibbsConfig(burn_in=10, spacing=2, m=5, seed=8)))
    rng = np.random.default_rng(0)
    for g1, g2, g3 in rng.integers(0, 8, size=(30, 3)):
        b13 = math.exp(res.pairwise_log_bf(g1, g3))
        chain = math.exp(res.pairwise_log_bf(g1, g2)) * math.exp(res.pairwise_log_bf(g2, g3))
        assert b13 == pytest.approx(chain, rel=1e-12)


def test_estimates_stabilize_as_m_grows():
    # one long chain; the first M copies of a longer run are the M-copy run
    d = _dataset(8, n=50, rate=0.25)
    ms = [10, 20, 40, 80, 160]
    spreads = np.zeros(len(ms))
    seeds = range(4)
    for seed in seeds:
        imps = impute(d, GibbsConfig(burn_in=50, spacing=3, m=320, seed=seed))
        ref = averaged_densities(imps).log_fbf
        for i, m in enumerate(ms):
            sub = ImputationSet(imps.completed[:m])
            spreads[i] += np.mean(np.abs(averaged_densities(sub).log_fbf - ref)) / len(seeds)
    shrinks = np.sum(np.diff(spreads) < 0)
    assert shrinks >= 3, spreads


def test_complete_copies_helper():
    d = _dataset(9, rate=0.0)
    imps = complete_copies(d, 3)
    assert imps.m == 3
    np.testing.assert_allclose(mi_select(imps).log_fbf, select(d.X, d.y).log_fbf, atol=1e-12)


def test_explicit_fraction_is_used():
    d = _dataset(10, rate=0.0)
    f = FractionConfig(0.5)
    imps = complete_copies(d, 2)
    np.testing.assert_allclose(mi_select(imps, f).log_fbf, select(d.X, d.y, f).log_fbf, atol=1e-12)
