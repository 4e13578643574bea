"""Orthogonal wavelet filter pairs used by the packet decomposition.

Twelve filters are supported: db1/db2/db3 (Daubechies), sym4/sym5/sym6
(Symlets), coif1/coif2/coif3 (Coiflets) and fk4/fk6/fk8 (Fejer-Korovkin).
Lowpass coefficients are fixed constants embedded at build time (see
tools/generate_filter_coefficients.py); the highpass half of each pair is
derived through the quadrature mirror relation.

Conventions: sum(h) = sqrt(2), sum(h**2) = 1, and h[0] is the tap applied to
the earliest sample during analysis.
"""

from dataclasses import dataclass

import numpy as np

from ._coefficients import SCALING_FILTERS


@dataclass(frozen=True)
class WaveletFilter:
    """An orthogonal lowpass/highpass analysis pair."""

    name: str
    h: np.ndarray  # lowpass (scaling) coefficients
    g: np.ndarray  # highpass (wavelet) coefficients, same length

    def __post_init__(self):
        for attr in ("h", "g"):
            arr = np.asarray(getattr(self, attr), dtype=np.float64)
            arr.flags.writeable = False
            object.__setattr__(self, attr, arr)

    def __len__(self):
        return self.h.size


def highpass_from_lowpass(h):
    """Quadrature mirror relation: g[k] = (-1)**k * h[L-1-k].

    Applying the relation twice to an even-length filter returns the negated
    original, so the pair (h, g) is recovered up to sign.
    """
    h = np.asarray(h, dtype=np.float64)
    if h.size == 0:
        raise ValueError("lowpass filter must be nonempty")
    if h.size % 2:
        raise ValueError(f"lowpass filter must have even length, got {h.size}")
    signs = np.where(np.arange(h.size) % 2 == 0, 1.0, -1.0)
    return signs * h[::-1]


def list_filters():
    """Names of the supported wavelet filters."""
    return tuple(SCALING_FILTERS)


def get_filter(name):
    """Look up a supported filter pair by its string name (e.g. ``"db2"``).

    Raises
    ------
    ValueError
        If the name is not one of the twelve supported filters.
    """
    try:
        h = SCALING_FILTERS[name]
    except KeyError:
        options = ", ".join(list_filters())
        raise ValueError(f"unsupported wavelet {name!r}; choose one of: {options}") from None
    h = np.array(h, dtype=np.float64)
    return WaveletFilter(name=name, h=h, g=highpass_from_lowpass(h))


def resolve_filter(wavelet):
    """Accept either a WaveletFilter or a filter name and return the filter."""
    if isinstance(wavelet, WaveletFilter):
        return wavelet
    return get_filter(wavelet)
