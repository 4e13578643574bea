"""Single-stage and two-stage denoisers with oracle or blind component selection.

The single-stage path decomposes the corrupted signal into ``2**level``
sub-band components and drops the ones whose removal raises the Pearson
correlation against a reference recording (oracle selection), or drops the
lowest-frequency approximation sub-band unconditionally (blind selection).
The two-stage path feeds the sub-band components into CCA first and applies
the same oracle selection to the per-source contributions.
"""

from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator

from .cca import CompanionCCA
from .filters import resolve_filter
from .metrics import pearson
from .signals import Signal, as_finite_array
from .wpd import decompose, subband_components

TIE_EPSILON = 1e-12

# families allowed in the two-stage pipeline
CCA_WAVELETS = ("db1", "db2", "db3", "fk4", "fk6", "fk8")


@dataclass(frozen=True)
class CleanResult:
    """Outcome of one denoising run."""

    cleaned: Signal
    removed_components: tuple
    selector_trace: tuple  # (component index, correlation after its removal)


def select_greedy_oracle(contributions, reference, offset=0.0):
    """Iterated best-improvement removal of additive signal contributions.

    ``contributions`` is an (m, n) array whose rows sum (plus ``offset``) to
    the signal under reconstruction.  At each step the single row whose
    removal most increases the Pearson correlation with ``reference`` is
    dropped; the search stops when no removal improves the correlation by
    more than ``TIE_EPSILON``.  Ties go to the lowest row index.

    Returns
    -------
    keep : ndarray of bool, shape (m,)
    trace : tuple of (index, correlation) pairs, strictly increasing in
        correlation.
    """
    contributions = np.asarray(contributions, dtype=np.float64)
    if contributions.ndim != 2 or contributions.shape[0] < 2:
        raise ValueError("need an (m >= 2, n) array of contributions")
    reference = as_finite_array(reference, "reference")
    if reference.size != contributions.shape[1]:
        raise ValueError(
            f"reference length {reference.size} does not match contribution "
            f"length {contributions.shape[1]}")

    keep = np.ones(contributions.shape[0], dtype=bool)
    current = contributions.sum(axis=0) + offset
    rho = pearson(current, reference)
    trace = []
    while keep.sum() > 1:
        best_idx = -1
        best_rho = -np.inf
        for i in np.flatnonzero(keep):
            candidate = current - contributions[i]
            try:
                r = pearson(candidate, reference)
            except ValueError:  # removal left a constant signal
                continue
            if r > best_rho:
                best_rho = r
                best_idx = i
        if best_idx < 0 or best_rho <= rho + TIE_EPSILON:
            break
        keep[best_idx] = False
        current = current - contributions[best_idx]
        rho = best_rho
        trace.append((int(best_idx), float(rho)))
    return keep, tuple(trace)


def _validate_pair(corrupted, reference):
    if reference is not None:
        if len(reference) != len(corrupted):
            raise ValueError(
                f"reference length {len(reference)} does not match corrupted "
                f"length {len(corrupted)}")
        if reference.fs != corrupted.fs:
            raise ValueError("reference and corrupted sampling rates differ")


def denoise_wpd(corrupted, reference=None, wavelet="db1", level=4,
                selector="oracle"):
    """Single-stage sub-band denoising.

    With ``selector="oracle"`` a reference recording is required and the
    greedy correlation-guided selection decides which sub-bands to drop.
    With ``selector="blind"`` only the approximation sub-band (the
    lowest-frequency component, where motion artifacts concentrate) is
    dropped, and no reference is needed.
    """
    _validate_pair(corrupted, reference)
    subbands = subband_components(decompose(corrupted, wavelet, level))
    comps = subbands.components
    if selector == "oracle":
        if reference is None:
            raise ValueError("oracle selection requires a reference signal")
        keep, trace = select_greedy_oracle(comps, reference.samples)
    elif selector == "blind":
        keep = np.ones(subbands.n_components, dtype=bool)
        keep[subbands.approximation_index] = False
        trace = ()
    else:
        raise ValueError(f"unknown selector {selector!r}; use 'oracle' or 'blind'")
    cleaned = comps[keep].sum(axis=0)
    removed = tuple(int(i) for i in np.flatnonzero(~keep))
    return CleanResult(cleaned=Signal(cleaned, corrupted.fs),
                       removed_components=removed, selector_trace=trace)


def denoise_wpd_cca(corrupted, reference, wavelet="db1", level=4):
    """Two-stage denoising: sub-band channels, CCA sources, oracle selection.

    The ``2**level`` sub-band components become the channels of a multichannel
    signal; CCA against its delayed companion separates them into sources
    ordered by autocorrelation.  Each source's additive contribution to the
    channel-sum signal is then subject to the same greedy oracle selection,
    and the kept contributions are summed back into a single channel.
    """
    filt = resolve_filter(wavelet)
    if filt.name not in CCA_WAVELETS:
        raise ValueError(
            f"two-stage denoising supports wavelets {CCA_WAVELETS}, "
            f"got {filt.name!r}")
    if reference is None:
        raise ValueError("two-stage denoising requires a reference signal")
    _validate_pair(corrupted, reference)

    subbands = subband_components(decompose(corrupted, filt, level))
    channels = subbands.components.T  # time-major (n, m)
    model = CompanionCCA().fit(channels)
    sources = model.transform(channels)

    # contribution of source i to the channel-sum signal: sum over channels of
    # mixing column i, times the source; channel means add a constant offset
    column_sums = model.mixing_.sum(axis=0)
    contributions = sources.T * column_sums[:, None]
    offset = float(model.channel_means_.sum())

    keep, trace = select_greedy_oracle(contributions, reference.samples,
                                       offset=offset)
    cleaned = contributions[keep].sum(axis=0) + offset
    removed = tuple(int(i) for i in np.flatnonzero(~keep))
    return CleanResult(cleaned=Signal(cleaned, corrupted.fs),
                       removed_components=removed, selector_trace=trace)


class WpdDenoiser(BaseEstimator):
    """Estimator wrapper around :func:`denoise_wpd`.

    ``fit(corrupted, reference)`` runs the selector and stores the removal
    recipe; ``transform(corrupted)`` applies it to a signal decomposed the
    same way.  Both arguments are 1-D sample arrays at the configured rate.
    """

    def __init__(self, wavelet="db1", level=4, selector="oracle", fs=256.0):
        self.wavelet = wavelet
        self.level = level
        self.selector = selector
        self.fs = fs

    def fit(self, X, y=None):
        corrupted = Signal(np.asarray(X, dtype=np.float64), self.fs)
        reference = None if y is None else Signal(np.asarray(y, dtype=np.float64), self.fs)
        result = self._run(corrupted, reference)
        self.removed_components_ = result.removed_components
        self.selector_trace_ = result.selector_trace
        return self

    def _run(self, corrupted, reference):
        return denoise_wpd(corrupted, reference, wavelet=self.wavelet,
                           level=self.level, selector=self.selector)

    def transform(self, X):
        if not hasattr(self, "removed_components_"):
            raise ValueError("denoiser is not fitted; call fit first")
        corrupted = Signal(np.asarray(X, dtype=np.float64), self.fs)
        subbands = subband_components(
            decompose(corrupted, self.wavelet, self.level))
        keep = np.ones(subbands.n_components, dtype=bool)
        keep[list(self.removed_components_)] = False
        return subbands.components[keep].sum(axis=0)

    def fit_transform(self, X, y=None):
        return self.fit(X, y).transform(X)


class WpdCcaDenoiser(BaseEstimator):
    """Estimator wrapper around :func:`denoise_wpd_cca`.

    The CCA un-mixing is data-dependent, so ``transform`` is only meaningful
    for the signal the denoiser was fitted on; the fitted attributes expose
    the removal recipe and the cleaned output.
    """

    def __init__(self, wavelet="db1", level=4, fs=256.0):
        self.wavelet = wavelet
        self.level = level
        self.fs = fs

    def fit(self, X, y):
        corrupted = Signal(np.asarray(X, dtype=np.float64), self.fs)
        reference = Signal(np.asarray(y, dtype=np.float64), self.fs)
        result = denoise_wpd_cca(corrupted, reference, wavelet=self.wavelet,
                                 level=self.level)
        self.removed_components_ = result.removed_components
        self.selector_trace_ = result.selector_trace
        self.n_sources_ = 1 << self.level
        self.cleaned_ = result.cleaned.samples
        return self

    def fit_transform(self, X, y):
        return self.fit(X, y).cleaned_

    def transform(self, X):
        if not hasattr(self, "cleaned_"):
            raise ValueError("denoiser is not fitted; call fit first")
        return self.cleaned_
