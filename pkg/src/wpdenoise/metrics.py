"""Denoising quality metrics: Pearson correlation, delta-SNR, artifact reduction."""

from dataclasses import dataclass

import numpy as np

_VAR_FLOOR = 1e-30


def _paired(a, b, name_a, name_b):
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape or a.ndim != 1:
        raise ValueError(
            f"{name_a} and {name_b} must be 1-D arrays of equal length, "
            f"got {a.shape} and {b.shape}")
    return a, b


def pearson(a, b):
    """Sample Pearson correlation of two equal-length signals.

    Constant inputs have zero variance and no defined correlation; they are
    rejected rather than silently returning NaN.
    """
    a, b = _paired(a, b, "a", "b")
    if a.size < 2:
        raise ValueError("need at least 2 samples to correlate")
    ac = a - a.mean()
    bc = b - b.mean()
    va = ac @ ac
    vb = bc @ bc
    if va <= 0 or vb <= 0:
        which = "first" if va <= 0 else "second"
        raise ValueError(f"correlation undefined: {which} input is constant")
    return float((ac @ bc) / np.sqrt(va * vb))


def delta_snr(truth, corrupted, cleaned, mode="residual"):
    """Improvement in signal-to-noise ratio, in dB.

    In the default ``residual`` mode the error variances are those of the
    residuals against ground truth:
    ``10*log10(Var(truth - corrupted) / Var(truth - cleaned))``.
    The ``raw`` mode compares the plain signal variances instead
    (``10*log10(Var(corrupted) / Var(cleaned))``), which measures variance
    shrinkage rather than denoising; it exists for auditability.
    """
    truth, corrupted = _paired(truth, corrupted, "truth", "corrupted")
    _, cleaned = _paired(truth, cleaned, "truth", "cleaned")
    if mode == "residual":
        var_before = float(np.var(truth - corrupted))
        var_after = float(np.var(truth - cleaned))
        if var_after < _VAR_FLOOR:
            raise ValueError("perfect reconstruction, delta-SNR unbounded")
        if var_before < _VAR_FLOOR:
            raise ValueError("corrupted signal equals ground truth, delta-SNR unbounded")
    elif mode == "raw":
        var_before = float(np.var(corrupted))
        var_after = float(np.var(cleaned))
        if var_after < _VAR_FLOOR:
            raise ValueError("cleaned signal is constant, raw delta-SNR unbounded")
        if var_before < _VAR_FLOOR:
            raise ValueError("corrupted signal is constant, raw delta-SNR unbounded")
    else:
        raise ValueError(f"unknown delta-SNR mode {mode!r}; use 'residual' or 'raw'")
    return float(10.0 * np.log10(var_before / var_after))


def eta_from_correlations(rho_before, rho_after, rho_clean=1.0):
    """Percentage artifact reduction from correlation values.

    eta = 100 * (1 - (rho_clean - rho_after) / (rho_clean - rho_before)).
    """
    if rho_clean == rho_before:
        raise ValueError(
            "artifact reduction undefined: corrupted signal already reaches the "
            f"clean correlation {rho_clean}")
    return float(100.0 * (1.0 - (rho_clean - rho_after) / (rho_clean - rho_before)))


def eta(truth, corrupted, cleaned):
    """Percentage artifact reduction assuming a perfectly clean target.

    Uses ``rho_clean = 1``: the fraction of the corrupted signal's correlation
    deficit against ground truth that the cleaning recovered, as a percentage.
    """
    return eta_general(truth, corrupted, cleaned, rho_clean=1.0)


def eta_general(truth, corrupted, cleaned, rho_clean):
    """Percentage artifact reduction against an explicit clean-correlation level."""
    rho_before = pearson(truth, corrupted)
    rho_after = pearson(truth, cleaned)
    return eta_from_correlations(rho_before, rho_after, rho_clean)


@dataclass(frozen=True)
class ScorePair:
    """Bundled per-record metrics."""

    delta_snr_db: float
    eta_percent: float
    rho_before: float
    rho_after: float


def score(truth, corrupted, cleaned, snr_mode="residual"):
    """Compute the full metric bundle for one denoised record.

    Degenerate inputs are mapped to neutral values instead of raising, so a
    batch run over many records cannot be aborted by one artifact-free pair:
    a record with no artifact (corrupted identical to truth) scores
    ``eta = 0`` and ``delta_snr = 0``.
    """
    rho_before = pearson(truth, corrupted)
    rho_after = pearson(truth, cleaned)
    if 1.0 - rho_before < 1e-15:
        eta_percent = 0.0
    else:
        eta_percent = eta_from_correlations(rho_before, rho_after)
    truth_arr = np.asarray(truth, dtype=np.float64)
    corrupted_arr = np.asarray(corrupted, dtype=np.float64)
    cleaned_arr = np.asarray(cleaned, dtype=np.float64)
    if snr_mode == "residual" and np.var(truth_arr - corrupted_arr) < _VAR_FLOOR \
            and np.var(truth_arr - cleaned_arr) < _VAR_FLOOR:
        snr = 0.0
    else:
        snr = delta_snr(truth, corrupted, cleaned, mode=snr_mode)
    return ScorePair(delta_snr_db=snr, eta_percent=eta_percent,
                     rho_before=rho_before, rho_after=rho_after)
