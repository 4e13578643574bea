"""Canonical correlation analysis against a delayed companion signal.

Correlating a multichannel signal with the sum of its immediate past and
future samples extracts sources ordered by temporal smoothness: the first
canonical source is the most autocorrelated linear combination of channels,
the last the least.  Zeroing selected sources and inverting the un-mixing
matrix removes their contribution from every channel.
"""

import numpy as np
import scipy.linalg
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .signals import as_finite_matrix

_RIDGE_EPS = 1e-10
_RIDGE_EPS_RETRY = 1e-8
_TIE_TOL = 2e-2


def build_delayed(x):
    """Companion signal y(t) = x(t-1) + x(t+1) along the time axis.

    Boundary samples fall back to the single available neighbor:
    y(0) = x(1) and y(n-1) = x(n-2).  Works on 1-D signals and on
    (n_samples, n_channels) matrices.
    """
    x = np.asarray(x, dtype=np.float64)
    n = x.shape[0]
    if n < 3:
        raise ValueError(f"need at least 3 samples to build the companion, got {n}")
    y = np.empty_like(x)
    y[1:-1] = x[:-2] + x[2:]
    y[0] = x[1]
    y[-1] = x[-2]
    return y


def _rotate_tied_blocks(lx, gxy, k, u, v, rho):
    """Pick a deterministic basis inside blocks of (near-)equal correlations.

    Narrowband content makes many directions equally predictable from the
    companion (a pure tone at angular frequency w satisfies y = 2*cos(w)*x
    exactly), so whole groups of canonical correlations tie at the same
    value and the SVD basis inside each group is an arbitrary rotation.
    The correlation is blind to the gain 2*cos(w), but the gain itself
    distinguishes frequencies: re-diagonalizing the whitened symmetric
    companion gain ``gxy`` within each tied block separates the directions
    by frequency, lowest first.  Outside ties this is a no-op.
    """
    m = rho.shape[0]
    gain = None
    start = 0
    while start < m:
        stop = start + 1
        while stop < m and rho[start] - rho[stop] <= _TIE_TOL:
            stop += 1
        if stop - start > 1 and rho[start] > _TIE_TOL:
            if gain is None:
                half = scipy.linalg.solve_triangular(lx, gxy, lower=True)
                gain = scipy.linalg.solve_triangular(lx, half.T, lower=True)
                gain = (gain + gain.T) / 2.0
            block = u[:, start:stop]
            _, rot = scipy.linalg.eigh(block.T @ gain @ block)
            block = block @ rot[:, ::-1]
            u[:, start:stop] = block
            paired = k.T @ block / rho[start]
            paired /= np.linalg.norm(paired, axis=0, keepdims=True)
            v[:, start:stop] = paired
        start = stop
    return u, v


def _solve_canonical(cxx, cxy, cyy, gxy):
    """Canonical directions of inv(Cxx) Cxy inv(Cyy) Cyx w = rho^2 w.

    Solved as an SVD of the whitened cross-covariance Lx^-1 Cxy Ly^-T
    (Cholesky factors Lx, Ly).  This is algebraically the same eigenproblem
    but keeps full precision when the covariances are badly conditioned,
    which sub-band stacks of narrowband signals routinely are.  ``gxy`` is
    the symmetric companion gain (the lagged covariance expressed on the
    x scale) used to resolve tied correlations.  Returns (rho, wx, wy)
    with correlations sorted non-increasing and weight vectors in the rows.
    """
    lx = scipy.linalg.cholesky(cxx, lower=True)
    ly = scipy.linalg.cholesky(cyy, lower=True)
    k = scipy.linalg.solve_triangular(lx, cxy, lower=True)
    k = scipy.linalg.solve_triangular(ly, k.T, lower=True).T
    u, rho, vt = scipy.linalg.svd(k)
    u, v = _rotate_tied_blocks(lx, gxy, k, u, vt.T, rho)
    wx = scipy.linalg.solve_triangular(lx, u, lower=True, trans="T").T
    wy = scipy.linalg.solve_triangular(ly, v, lower=True, trans="T").T
    return rho, wx, wy


class CompanionCCA(BaseEstimator, TransformerMixin):
    """Blind source separation via CCA with the delayed-companion signal.

    Parameters
    ----------
    ridge : float
        Relative diagonal loading added to the channel covariances before
        inversion; retried at 1e-8 if the first solve fails.

    Attributes
    ----------
    unmixing_ : ndarray of shape (m, m)
        Rows are the canonical weight vectors; sources = centered X @ unmixing_.T.
    mixing_ : ndarray of shape (m, m)
        Inverse (or pseudo-inverse) of ``unmixing_``.
    correlations_ : ndarray of shape (m,)
        Canonical correlations, sorted non-increasing, in [0, 1].
    weights_x_, weights_y_ : ndarray of shape (m, m)
        Canonical weights for the signal and its companion (rows).
    channel_means_ : ndarray of shape (m,)
        Per-channel means removed before fitting.
    """

    def __init__(self, ridge=_RIDGE_EPS):
        self.ridge = ridge

    def fit(self, X, y=None):
        """Fit on time-major data X of shape (n_samples, n_channels)."""
        X = as_finite_matrix(X, "X")
        n, m = X.shape
        if m < 2:
            raise ValueError(f"need at least 2 channels, got {m}")
        if n <= m:
            raise ValueError(f"need more samples than channels, got {n} x {m}")

        means = X.mean(axis=0)
        xc = X - means
        yc = build_delayed(X)
        yc = yc - yc.mean(axis=0)

        cxx = xc.T @ xc / n
        cyy = yc.T @ yc / n
        cxy = xc.T @ yc / n

        dead = np.flatnonzero((np.diag(cxx) <= 0.0) | (np.diag(cyy) <= 0.0))
        if dead.size:
            raise ValueError(f"channel {dead[0]} is constant; every channel "
                             "needs nonzero variance")

        # standardize channels so the ridge loading (and hence the canonical
        # correlations) is exactly invariant under per-channel rescaling
        scale_x = np.sqrt(np.diag(cxx))
        scale_y = np.sqrt(np.diag(cyy))
        cxx = cxx / np.outer(scale_x, scale_x)
        cyy = cyy / np.outer(scale_y, scale_y)
        cxy = cxy / np.outer(scale_x, scale_y)

        # companion gain on the signal's own scale: a narrowband channel's
        # companion is ~2*cos(w) times the channel, so this matrix (unlike
        # the correlations) tells equally-predictable frequencies apart
        gxy = cxy * (scale_y / scale_x)[None, :]
        gxy = (gxy + gxy.T) / 2.0

        last_err = None
        for eps in (self.ridge, _RIDGE_EPS_RETRY):
            rxx = cxx + np.eye(m) * (eps * np.trace(cxx) / m)
            ryy = cyy + np.eye(m) * (eps * np.trace(cyy) / m)
            try:
                rho, wx, wy = _solve_canonical(rxx, cxy, ryy, gxy)
                break
            except (scipy.linalg.LinAlgError, ValueError) as err:
                last_err = err
        else:
            variances = np.diag(cxx)
            degenerate = np.flatnonzero(variances <= 1e-12 * max(variances.max(), 1e-300))
            detail = (f"channels {degenerate.tolist()} are (near-)constant"
                      if degenerate.size else "covariance is rank-deficient")
            raise ValueError(
                f"CCA fit failed even with ridge {_RIDGE_EPS_RETRY}: {detail}"
            ) from last_err

        if rho.max() > 1.0 + 1e-9:
            raise ValueError(f"canonical correlation {rho.max()!r} exceeds 1")

        wx = wx / scale_x
        wy = wy / scale_y

        # deterministic orientation: unit norm, largest-magnitude entry positive
        wx /= np.linalg.norm(wx, axis=1, keepdims=True)
        flips = np.sign(wx[np.arange(m), np.abs(wx).argmax(axis=1)])
        wx *= flips[:, None]

        wy /= np.linalg.norm(wy, axis=1, keepdims=True)
        wy *= np.sign(wy[np.arange(m), np.abs(wy).argmax(axis=1)])[:, None]

        try:
            mixing = np.linalg.inv(wx)
        except np.linalg.LinAlgError:
            mixing = np.linalg.pinv(wx)

        self.n_features_in_ = m
        self.channel_means_ = means
        self.unmixing_ = wx
        self.mixing_ = mixing
        self.weights_x_ = wx
        self.weights_y_ = wy
        self.correlations_ = rho
        return self

    def transform(self, X):
        """Estimated sources, shape (n_samples, m), descending correlation order."""
        check_is_fitted(self, "unmixing_")
        X = as_finite_matrix(X, "X")
        if X.shape[1] != self.n_features_in_:
            raise ValueError(
                f"X has {X.shape[1]} channels; model was fitted with "
                f"{self.n_features_in_}")
        return (X - self.channel_means_) @ self.unmixing_.T

    def inverse_transform(self, S):
        """Map sources back to channel space and restore channel means."""
        check_is_fitted(self, "unmixing_")
        S = as_finite_matrix(S, "S")
        if S.shape[1] != self.n_features_in_:
            raise ValueError(
                f"S has {S.shape[1]} sources; model was fitted with "
                f"{self.n_features_in_}")
        return S @ self.mixing_.T + self.channel_means_

    def reconstruct(self, X, keep_mask):
        """Round-trip X through source space with masked-out sources zeroed."""
        keep = np.asarray(keep_mask, dtype=bool)
        if keep.shape != (self.n_features_in_,):
            raise ValueError(
                f"keep_mask must have {self.n_features_in_} entries, got "
                f"shape {keep.shape}")
        sources = self.transform(X)
        sources[:, ~keep] = 0.0
        return self.inverse_transform(sources)
