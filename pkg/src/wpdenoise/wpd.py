"""Wavelet packet analysis and synthesis with periodic boundary handling.

The packet tree applies both the lowpass and the highpass branch recursively
to every node, so level ``j`` produces ``2**j`` equal-bandwidth leaves.  The
input is padded to the next multiple of ``2**j`` by periodic (wrap-around)
extension, which keeps the filter bank exactly orthogonal: the sum of the
per-leaf sub-band components reproduces the analyzed signal to machine
precision, and total coefficient energy equals padded-signal energy.
"""

from dataclasses import dataclass

import numpy as np

from .filters import WaveletFilter, resolve_filter
from .signals import Signal, as_finite_array


def _analyze_step(x, f):
    """Periodic correlation a[n] = sum_k f[k] * x[(2n + k) mod N], N even."""
    n = x.size
    ext = np.resize(x, n + f.size - 1)
    return np.convolve(ext, f[::-1], mode="valid")[::2]


def _synthesize_step(coeffs, f, n):
    """Adjoint of `_analyze_step`: upsample by 2 and periodically convolve."""
    up = np.zeros(n, dtype=np.float64)
    up[::2] = coeffs
    full = np.convolve(up, f, mode="full")
    out = full[:n].copy()
    for start in range(n, full.size, n):  # fold the linear tail back (wrap)
        seg = full[start:start + n]
        out[:seg.size] += seg
    return out


@dataclass(frozen=True)
class WpdTree:
    """Coefficients of a full wavelet packet decomposition.

    ``leaves`` holds the ``2**level`` coefficient arrays in natural (Paley)
    order: the children of node ``i`` are ``2i`` (lowpass) and ``2i + 1``
    (highpass).  Total coefficient count equals the padded input length.
    """

    level: int
    leaves: tuple
    filter: WaveletFilter
    original_length: int
    padded_length: int
    fs: float


@dataclass(frozen=True)
class SubbandSet:
    """Full-rate band-limited components that sum to the analyzed signal.

    Components are ordered by descending center frequency, so index
    ``2**level - 1`` is the lowest-frequency approximation sub-band.
    """

    components: np.ndarray  # shape (2**level, original_length)
    fs: float
    filter: WaveletFilter
    level: int

    def __post_init__(self):
        arr = np.asarray(self.components, dtype=np.float64)
        arr.flags.writeable = False
        object.__setattr__(self, "components", arr)

    @property
    def n_components(self):
        return self.components.shape[0]

    @property
    def approximation_index(self):
        return self.n_components - 1


def _paley_from_frequency_rank(rank):
    """Leaf index (Paley order) of the sub-band with ascending frequency rank."""
    return rank ^ (rank >> 1)


def decompose(signal, wavelet, level=4):
    """Run the full packet analysis of a signal down to ``level``.

    Parameters
    ----------
    signal : Signal
        Input signal; must be at least as long as the filter.
    wavelet : str or WaveletFilter
        One of the supported orthogonal filters.
    level : int
        Tree depth ``j >= 1``; produces ``2**level`` leaves.
    """
    filt = resolve_filter(wavelet)
    x = as_finite_array(signal.samples, "signal")
    if level < 1:
        raise ValueError(f"level must be >= 1, got {level}")
    if x.size < filt.h.size:
        raise ValueError(
            f"signal length {x.size} is shorter than the {filt.name} filter "
            f"({filt.h.size} taps)")

    block = 1 << level
    padded = -(-x.size // block) * block
    x = np.resize(x, padded)  # wrap-around extension

    nodes = [x]
    for _ in range(level):
        nxt = []
        for node in nodes:
            nxt.append(_analyze_step(node, filt.h))
            nxt.append(_analyze_step(node, filt.g))
        nodes = nxt
    return WpdTree(level=level, leaves=tuple(nodes), filter=filt,
                   original_length=signal.samples.size, padded_length=padded,
                   fs=signal.fs)


def _synthesize_leaf(tree, leaf_index):
    """Inverse transform with every leaf but one zeroed; returns padded length."""
    filt = tree.filter
    level = tree.level
    coeffs = tree.leaves[leaf_index]
    path = [(leaf_index >> (level - 1 - d)) & 1 for d in range(level)]
    for depth in range(level - 1, -1, -1):
        f = filt.g if path[depth] else filt.h
        coeffs = _synthesize_step(coeffs, f, 2 * coeffs.size)
    return coeffs


def subband_components(tree):
    """Synthesize one full-rate component per leaf, frequency-descending.

    Each component is the inverse filter bank applied with all other leaves
    zeroed, cropped back to the original signal length.  The pointwise sum of
    the components equals the analyzed signal.
    """
    n_leaves = 1 << tree.level
    top = n_leaves - 1
    comps = np.empty((n_leaves, tree.original_length), dtype=np.float64)
    for pos in range(n_leaves):
        rank = top - pos  # ascending frequency rank of this row
        leaf = _paley_from_frequency_rank(rank)
        comps[pos] = _synthesize_leaf(tree, leaf)[:tree.original_length]
    return SubbandSet(components=comps, fs=tree.fs, filter=tree.filter,
                      level=tree.level)


def reconstruct(subbands, keep_mask):
    """Sum the components flagged in ``keep_mask`` into a Signal.

    An all-false mask yields the zero signal; callers decide whether that is
    meaningful.
    """
    mask = np.asarray(keep_mask, dtype=bool)
    if mask.shape != (subbands.n_components,):
        raise ValueError(
            f"keep_mask must have {subbands.n_components} entries, "
            f"got shape {mask.shape}")
    out = subbands.components[mask].sum(axis=0) if mask.any() else \
        np.zeros(subbands.components.shape[1])
    return Signal(out, subbands.fs)
