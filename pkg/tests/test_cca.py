"""Tests for canonical correlation analysis against the delayed companion."""

import numpy as np
import pytest
import scipy.linalg

from wpdenoise import CompanionCCA, build_delayed, pearson


def make_three_source_mix(seed=0, n=6000):
    """Sinusoid + AR(1) + white noise pushed through a known 3x3 mixing."""
    rng = np.random.default_rng(seed)
    t = np.arange(n)
    sources = np.empty((n, 3))
    sources[:, 0] = np.sin(2 * np.pi * t / 50.0)
    ar = np.empty(n)
    ar[0] = rng.standard_normal()
    for i in range(1, n):
        ar[i] = 0.95 * ar[i - 1] + 0.3 * rng.standard_normal()
    sources[:, 1] = ar
    sources[:, 2] = rng.standard_normal(n)
    mixing = np.array([[1.0, 0.4, 0.2],
                       [0.3, 1.0, 0.5],
                       [0.2, 0.3, 1.0]])
    return sources @ mixing.T, sources


# --------------------------------------------------------------- build_delayed

def test_build_delayed_hand_example():
    np.testing.assert_allclose(build_delayed([1.0, 2.0, 3.0, 4.0]),
                               [2.0, 4.0, 6.0, 3.0])


def test_build_delayed_of_a_sinusoid_is_a_scalar_multiple():
    t = np.arange(500, dtype=np.float64)
    x = np.sin(2 * np.pi * t / 100.0)
    y = build_delayed(x)
    gain = 2.0 * np.cos(2 * np.pi / 100.0)
    np.testing.assert_allclose(y[1:-1], gain * x[1:-1], atol=1e-12)


def test_build_delayed_of_a_constant_doubles_the_interior():
    y = build_delayed(np.full(10, 3.0))
    np.testing.assert_allclose(y[1:-1], 6.0)
    assert y[0] == 3.0 and y[-1] == 3.0


def test_build_delayed_keeps_matrix_shape():
    x = np.arange(12, dtype=np.float64).reshape(6, 2)
    y = build_delayed(x)
    assert y.shape == x.shape
    np.testing.assert_allclose(y[:, 0], build_delayed(x[:, 0]))


def test_build_delayed_rejects_short_input():
    with pytest.raises(ValueError, match="at least 3 samples"):
        build_delayed([1.0, 2.0])


# ------------------------------------------------------------------------ fit

def test_first_source_recovers_the_sinusoid_from_noise():
    rng = np.random.default_rng(5)
    n = 5000
    t = np.arange(n)
    X = np.column_stack([np.sin(2 * np.pi * t / 64.0),
                         rng.standard_normal(n)])
    model = CompanionCCA().fit(X)
    sources = model.transform(X)
    assert abs(pearson(sources[:, 0], X[:, 0])) > 0.99
    assert model.correlations_[0] > model.correlations_[1]


def test_each_source_matches_one_distinct_generator():
    X, generators = make_three_source_mix(seed=1)
    model = CompanionCCA().fit(X)
    sources = model.transform(X)
    matched = set()
    for i in range(3):
        rhos = [abs(pearson(sources[:, i], generators[:, j])) for j in range(3)]
        best = int(np.argmax(rhos))
        assert rhos[best] > 0.99, f"source {i} best match {rhos[best]:.4f}"
        matched.add(best)
    assert matched == {0, 1, 2}


def test_sixteen_channels_give_sixteen_components():
    rng = np.random.default_rng(2)
    X = rng.standard_normal((400, 16))
    model = CompanionCCA().fit(X)
    assert model.unmixing_.shape == (16, 16)
    assert model.correlations_.shape == (16,)
    assert model.transform(X).shape == (400, 16)


def test_twin_slow_sinusoids_reach_correlation_one():
    rng = np.random.default_rng(3)
    n = 4000
    t = np.arange(n)
    slow = np.sin(2 * np.pi * t / 400.0)
    X = np.column_stack([slow + 1e-4 * rng.standard_normal(n),
                         slow + 1e-4 * rng.standard_normal(n)])
    model = CompanionCCA().fit(X)
    assert abs(model.correlations_[0] - 1.0) < 1e-3


def test_correlations_are_sorted_and_bounded():
    X, _ = make_three_source_mix(seed=4)
    rho = CompanionCCA().fit(X).correlations_
    assert np.all(rho >= 0.0) and np.all(rho <= 1.0 + 1e-9)
    assert np.all(np.diff(rho) <= 0.0)


def test_sources_are_mutually_uncorrelated():
    X, _ = make_three_source_mix(seed=6)
    model = CompanionCCA().fit(X)
    sources = model.transform(X)
    centered = sources - sources.mean(axis=0)
    corr = np.corrcoef(centered, rowvar=False)
    off = corr - np.diag(np.diag(corr))
    assert np.abs(off).max() < 1e-6


def test_source_lag1_autocorrelations_are_non_increasing():
    X, _ = make_three_source_mix(seed=7)
    sources = CompanionCCA().fit(X).transform(X)
    lag1 = []
    for i in range(sources.shape[1]):
        s = sources[:, i] - sources[:, i].mean()
        lag1.append(float((s[:-1] @ s[1:]) / (s @ s)))
    assert np.all(np.diff(lag1) <= 1e-9)


def test_canonical_correlations_ignore_channel_scaling():
    X, _ = make_three_source_mix(seed=8)
    base = CompanionCCA().fit(X).correlations_
    scaled = CompanionCCA().fit(X * np.array([1e-4, 1.0, 1e5])).correlations_
    np.testing.assert_allclose(scaled, base, atol=1e-8)


def test_second_eigenproblem_gives_the_same_spectrum():
    # solving on the companion side must reproduce the squared correlations
    X, _ = make_three_source_mix(seed=9)
    n, m = X.shape
    xc = X - X.mean(axis=0)
    yc = build_delayed(X)
    yc = yc - yc.mean(axis=0)
    cxx = xc.T @ xc / n
    cyy = yc.T @ yc / n
    cxy = xc.T @ yc / n
    sx = np.sqrt(np.diag(cxx))
    sy = np.sqrt(np.diag(cyy))
    cxx /= np.outer(sx, sx)
    cyy /= np.outer(sy, sy)
    cxy /= np.outer(sx, sy)
    cxx += np.eye(m) * (1e-10 * np.trace(cxx) / m)
    cyy += np.eye(m) * (1e-10 * np.trace(cyy) / m)
    second = scipy.linalg.solve(cyy, cxy.T) @ scipy.linalg.solve(cxx, cxy)
    eigvals = np.sort(np.linalg.eigvals(second).real)[::-1]
    rho = CompanionCCA().fit(X).correlations_
    np.testing.assert_allclose(np.sqrt(np.clip(eigvals, 0.0, None)), rho,
                               atol=1e-8)


def test_unmixing_times_mixing_is_identity():
    X, _ = make_three_source_mix(seed=10)
    model = CompanionCCA().fit(X)
    np.testing.assert_allclose(model.unmixing_ @ model.mixing_, np.eye(3),
                               atol=1e-6)


def test_fit_rejects_too_few_channels():
    with pytest.raises(ValueError, match="at least 2 channels"):
        CompanionCCA().fit(np.ones((100, 1)))


def test_fit_rejects_more_channels_than_samples():
    with pytest.raises(ValueError, match="more samples than channels"):
        CompanionCCA().fit(np.ones((3, 5)))


def test_fit_names_a_constant_channel_on_failure():
    rng = np.random.default_rng(11)
    X = np.column_stack([rng.standard_normal(200),
                         np.full(200, 2.0),
                         rng.standard_normal(200)])
    with pytest.raises(ValueError, match="channel"):
        CompanionCCA().fit(X)


# ------------------------------------------------- sources / reconstruction

def test_identity_unmixing_returns_the_input_unchanged():
    rng = np.random.default_rng(12)
    X = rng.standard_normal((50, 2))
    model = CompanionCCA()
    model.n_features_in_ = 2
    model.channel_means_ = np.zeros(2)
    model.unmixing_ = np.eye(2)
    model.mixing_ = np.eye(2)
    np.testing.assert_allclose(model.transform(X), X)


def test_round_trip_recovers_the_input():
    X, _ = make_three_source_mix(seed=13)
    model = CompanionCCA().fit(X)
    out = model.reconstruct(X, np.ones(3, dtype=bool))
    assert np.linalg.norm(out - X) / np.linalg.norm(X) < 1e-6


def test_all_false_mask_returns_the_channel_means():
    X, _ = make_three_source_mix(seed=14)
    model = CompanionCCA().fit(X)
    out = model.reconstruct(X, np.zeros(3, dtype=bool))
    np.testing.assert_allclose(out, np.broadcast_to(model.channel_means_,
                                                    X.shape), atol=1e-9)


def test_dropping_one_source_subtracts_its_rank_one_contribution():
    X, _ = make_three_source_mix(seed=15)
    model = CompanionCCA().fit(X)
    sources = model.transform(X)
    keep = np.array([True, True, False])
    out = model.reconstruct(X, keep)
    dropped = np.outer(sources[:, 2], model.mixing_[:, 2])
    np.testing.assert_allclose(X - out, dropped, atol=1e-8)


def test_transform_rejects_wrong_channel_count():
    X, _ = make_three_source_mix(seed=16)
    model = CompanionCCA().fit(X)
    with pytest.raises(ValueError, match="channels"):
        model.transform(X[:, :2])


def test_reconstruct_rejects_wrong_mask_length():
    X, _ = make_three_source_mix(seed=17)
    model = CompanionCCA().fit(X)
    with pytest.raises(ValueError, match="keep_mask"):
        model.reconstruct(X, np.ones(4, dtype=bool))


def test_unfitted_model_refuses_to_transform():
    from sklearn.exceptions import NotFittedError
    with pytest.raises(NotFittedError):
        CompanionCCA().transform(np.ones((10, 2)))


def test_estimator_params_round_trip():
    model = CompanionCCA(ridge=1e-9)
    assert model.get_params() == {"ridge": 1e-9}
    model.set_params(ridge=1e-7)
    assert model.ridge == 1e-7
