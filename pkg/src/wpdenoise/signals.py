"""Signal container and input validation helpers shared across the package."""

from dataclasses import dataclass, field

import numpy as np


def as_finite_array(values, name="signal"):
    """Coerce to a 1-D float64 array, rejecting empty or non-finite input."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if arr.size == 0:
        raise ValueError(f"{name} must be nonempty")
    if not np.all(np.isfinite(arr)):
        bad = int(np.flatnonzero(~np.isfinite(arr))[0])
        raise ValueError(f"{name} contains a non-finite value at index {bad}")
    return arr


def as_finite_matrix(values, name="X"):
    """Coerce to a 2-D float64 array of finite values."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be two-dimensional, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite values")
    return arr


@dataclass(frozen=True)
class Signal:
    """A uniformly sampled real signal.

    Parameters
    ----------
    samples : array_like
        Sample values (microvolts for EEG, optical density for fNIRS,
        arbitrary units for synthetic data).
    fs : float
        Sampling rate in Hz, strictly positive.
    """

    samples: np.ndarray
    fs: float

    def __post_init__(self):
        arr = as_finite_array(self.samples, "samples")
        arr.flags.writeable = False
        object.__setattr__(self, "samples", arr)
        if not (self.fs > 0):
            raise ValueError(f"fs must be positive, got {self.fs}")

    def __len__(self):
        return self.samples.size

    def with_samples(self, samples):
        """Return a new Signal at the same rate with different samples."""
        return Signal(np.asarray(samples, dtype=np.float64), self.fs)
