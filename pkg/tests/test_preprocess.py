"""Tests for decimation, powerline notch filtering, and detrending."""

import numpy as np
import pytest

from wpdenoise import Signal, decimate, detrend_poly, notch, pearson


def rms(x):
    return float(np.sqrt(np.mean(np.square(x))))


def bin_power(x, fs, freq):
    spectrum = np.abs(np.fft.rfft(x)) ** 2
    idx = int(round(freq * x.size / fs))
    return float(spectrum[idx])


# ------------------------------------------------------------------ decimate

def test_factor_one_is_the_identity():
    sig = Signal(np.arange(100, dtype=np.float64), 2048.0)
    out = decimate(sig, 1)
    np.testing.assert_array_equal(out.samples, sig.samples)
    assert out.fs == 2048.0


def test_factor_eight_maps_2048_to_256_hz():
    sig = Signal(np.random.default_rng(0).standard_normal(4096), 2048.0)
    out = decimate(sig, 8)
    assert out.fs == 256.0
    assert out.samples.size == 512


def test_tone_above_the_new_nyquist_is_suppressed():
    fs = 2048.0
    t = np.arange(int(4 * fs)) / fs
    tone = np.sin(2 * np.pi * 200.0 * t)  # 200 Hz > new Nyquist 128 Hz
    out = decimate(Signal(tone, fs), 8)
    assert rms(out.samples) < 0.01 * rms(tone)


def test_in_band_tone_survives_decimation():
    fs = 2048.0
    t = np.arange(int(4 * fs)) / fs
    tone = np.sin(2 * np.pi * 5.0 * t)
    out = decimate(Signal(tone, fs), 8)
    expected = np.sin(2 * np.pi * 5.0 * np.arange(out.samples.size) / 256.0)
    assert pearson(out.samples, expected) > 0.999


def test_non_dividing_length_rounds_up():
    sig = Signal(np.ones(103), 1000.0)
    out = decimate(sig, 4)
    assert out.samples.size == 26  # ceil(103 / 4)


def test_non_positive_factor_is_rejected():
    with pytest.raises(ValueError, match="positive"):
        decimate(Signal(np.ones(10), 100.0), 0)


# --------------------------------------------------------------------- notch

def test_50hz_tone_is_attenuated_by_40db():
    fs = 256.0
    t = np.arange(int(8 * fs)) / fs
    tone = np.sin(2 * np.pi * 50.0 * t)
    out = notch(Signal(tone, fs), 50.0)
    before = bin_power(tone, fs, 50.0)
    after = bin_power(out.samples, fs, 50.0)
    assert 10 * np.log10(before / after) > 40.0


def test_100hz_harmonic_is_also_attenuated():
    fs = 256.0
    t = np.arange(int(8 * fs)) / fs
    tone = np.sin(2 * np.pi * 100.0 * t)
    out = notch(Signal(tone, fs), 50.0)
    before = bin_power(tone, fs, 100.0)
    after = bin_power(out.samples, fs, 100.0)
    assert 10 * np.log10(before / after) > 40.0


def test_base_at_or_above_nyquist_is_the_identity():
    sig = Signal(np.random.default_rng(1).standard_normal(500), 25.0)
    out = notch(sig, 50.0)
    np.testing.assert_array_equal(out.samples, sig.samples)


def test_passband_tone_is_preserved():
    fs = 256.0
    t = np.arange(int(8 * fs)) / fs
    tone = np.sin(2 * np.pi * 10.0 * t)
    out = notch(Signal(tone, fs), 50.0)
    assert abs(rms(out.samples) - rms(tone)) < 0.01 * rms(tone)


def test_zero_phase_notch_has_no_group_delay():
    rng = np.random.default_rng(2)
    fs = 256.0
    x = rng.standard_normal(int(8 * fs))
    out = notch(Signal(x, fs), 50.0, zero_phase=True).samples
    xc = x - x.mean()
    yc = out - out.mean()
    lags = np.arange(-20, 21)
    cross = [np.dot(xc[max(0, -l):x.size - max(0, l)],
                    yc[max(0, l):x.size + min(0, l)]) for l in lags]
    assert lags[int(np.argmax(cross))] == 0


def test_notch_rejects_bad_parameters():
    sig = Signal(np.ones(100), 256.0)
    with pytest.raises(ValueError, match="positive"):
        notch(sig, 0.0)
    with pytest.raises(ValueError, match="order"):
        notch(sig, 50.0, order=0)


# ------------------------------------------------------------- detrend_poly

def test_exact_cubic_is_removed_completely():
    idx = np.linspace(-1, 1, 400)
    cubic = 3.0 * idx ** 3 - 2.0 * idx ** 2 + idx - 5.0
    out = detrend_poly(Signal(cubic, 100.0), 3)
    assert np.abs(out.samples).max() < 1e-8 * np.abs(cubic).max()


def test_linear_ramp_is_removed_from_a_sinusoid():
    t = np.arange(2000) / 256.0
    sinusoid = np.sin(2 * np.pi * 6.0 * t)
    ramped = sinusoid + 3.0 * t
    out = detrend_poly(Signal(ramped, 256.0), 1)
    assert pearson(out.samples, sinusoid) > 0.999


def test_order_zero_removes_the_mean():
    x = np.array([1.0, 2.0, 3.0, 10.0])
    out = detrend_poly(Signal(x, 1.0), 0)
    np.testing.assert_allclose(out.samples, x - x.mean(), atol=1e-12)


def test_detrending_is_idempotent():
    rng = np.random.default_rng(3)
    x = rng.standard_normal(500) + np.linspace(0, 4, 500) ** 2
    once = detrend_poly(Signal(x, 1.0), 5)
    twice = detrend_poly(once, 5)
    np.testing.assert_allclose(twice.samples, once.samples, atol=1e-10)


def test_order_at_or_above_length_is_rejected():
    with pytest.raises(ValueError, match="below the signal length"):
        detrend_poly(Signal(np.ones(5), 1.0), 5)


def test_negative_order_is_rejected():
    with pytest.raises(ValueError, match="non-negative"):
        detrend_poly(Signal(np.ones(5), 1.0), -1)
