"""Preprocessing chain: anti-aliased decimation, powerline notch, detrending."""

import logging

import numpy as np
import scipy.signal

from .signals import Signal, as_finite_array

logger = logging.getLogger(__name__)


def decimate(signal, factor):
    """Lowpass-filter and keep every ``factor``-th sample.

    The anti-alias filter is a linear-phase Hamming-windowed FIR lowpass of
    length ``8 * factor + 1`` with cutoff at 0.8x the new Nyquist frequency,
    applied with group-delay compensation so features stay aligned.  A factor
    of 1 returns the input unchanged.
    """
    factor = int(factor)
    if factor <= 0:
        raise ValueError(f"decimation factor must be positive, got {factor}")
    x = as_finite_array(signal.samples, "signal")
    if factor == 1:
        return Signal(x, signal.fs)
    taps = scipy.signal.firwin(8 * factor + 1, 0.8 / factor)
    delay = 4 * factor  # (numtaps - 1) / 2
    smoothed = np.convolve(x, taps, mode="full")[delay:delay + x.size]
    return Signal(smoothed[::factor], signal.fs / factor)


def notch(signal, base_hz, order=3, zero_phase=True):
    """Butterworth band-stop at ``base_hz`` and every harmonic below Nyquist.

    Each stop band spans the harmonic center +/- 1 Hz; harmonics at or above
    Nyquist are skipped.  With ``zero_phase`` the cascade runs forward and
    backward so the output has no group delay.
    """
    if base_hz <= 0:
        raise ValueError(f"notch base frequency must be positive, got {base_hz}")
    if order < 1:
        raise ValueError(f"notch order must be >= 1, got {order}")
    x = as_finite_array(signal.samples, "signal")
    nyquist = signal.fs / 2
    if base_hz >= nyquist:
        logger.info("notch base %g Hz is at/above Nyquist %g Hz; returning input",
                    base_hz, nyquist)
        return Signal(x, signal.fs)
    out = x
    center = base_hz
    while center < nyquist:
        low = max(center - 1.0, 1e-6)
        high = min(center + 1.0, nyquist * (1 - 1e-9))
        sos = scipy.signal.butter(order, [low, high], btype="bandstop",
                                  fs=signal.fs, output="sos")
        out = scipy.signal.sosfiltfilt(sos, out) if zero_phase \
            else scipy.signal.sosfilt(sos, out)
        center += base_hz
    return Signal(out, signal.fs)


def detrend_poly(signal, order):
    """Subtract the least-squares polynomial of the given degree.

    The sample index is mapped to [-1, 1] before fitting so high orders stay
    well conditioned.  Fitting a polynomial of degree >= signal length is
    rejected (it would interpolate the data exactly).
    """
    order = int(order)
    if order < 0:
        raise ValueError(f"polynomial order must be non-negative, got {order}")
    x = as_finite_array(signal.samples, "signal")
    if order >= x.size:
        raise ValueError(
            f"polynomial order {order} must be below the signal length {x.size}")
    idx = np.arange(x.size, dtype=np.float64)
    fit = np.polynomial.Polynomial.fit(idx, x, deg=order)
    return Signal(x - fit(idx), signal.fs)
