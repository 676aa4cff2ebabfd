"""
Periodic log-spaced frequency grid.  The observed band is tiled by n_sub
subbands of width b_sub; inside every subband the same unit-interval template
places m_sub points.  The "edge" template packs points near the subband
edges, "center" is its mirror image packing them near the subband centre,
and "uniform" is a plain linear canvas.
"""
import math
from dataclasses import dataclass

import numpy as np

from . import log
from .stft import SpectrogramKind
from specsense import util
from specsense.exceptions import _log_raise, _log_raise_if, ValidationError

TEMPLATES = ('edge', 'center', 'uniform')


@dataclass(frozen=True, eq=False)
class WarpGrid:
    n_sub: int
    m_sub: int
    b_sub_hz: float
    alpha1: float
    alpha2: float
    f_min_hz: float
    template: str
    template_values: np.ndarray
    points_hz: np.ndarray

    @property
    def n_points(self):
        return len(self.points_hz)

    @property
    def f_max_hz(self):
        return self.f_min_hz + self.n_sub * self.b_sub_hz

    @property
    def delta(self):
        return (self.alpha2 - self.alpha1) / (self.m_sub // 2 - 1)


def log_template(m_sub, alpha1, alpha2, template='edge'):
    """
    Returns (b, b_tilde): the half template
        b_i = (10**(alpha1 + i delta) - 10**alpha1) / (10**alpha2 - 10**alpha1)
    for i < m_sub/2 with delta = (alpha2 - alpha1) / (m_sub/2 - 1), and the
    mirrored unit-interval template b_tilde of length m_sub.
    """
    half = m_sub // 2
    delta = (alpha2 - alpha1) / (half - 1)
    i = np.arange(half)
    b = (10.0 ** (alpha1 + i * delta) - 10.0 ** alpha1) / \
        (10.0 ** alpha2 - 10.0 ** alpha1)
    b[0] = 0.0
    b[-1] = 1.0
    bt = np.empty(m_sub)
    if template == 'edge':
        bt[:half] = b / 2
        bt[half:] = 1 - b[::-1] / 2
    elif template == 'center':
        bt[:half] = 0.5 - b[::-1] / 2
        bt[half:] = 0.5 + b / 2
    elif template == 'uniform':
        bt = np.arange(m_sub) / m_sub
    else:
        _log_raise(
            "unknown warp template %r.  Expected one of %s" % (
                template, TEMPLATES),
            extra=dict(template=template), exception_kls=ValidationError)
    return b, bt


@util.cached
def build_warp_grid(f_min_hz, b_obs_hz, n_sub, m_sub, alpha1=1.0,
                    alpha2=4.0, template='edge'):
    """
    Points f[k M_sub + j] = f_min + k B_sub + b_tilde_j B_sub with
    B_sub = b_obs / n_sub.  Grids are immutable and cached.
    """
    ld = dict(f_min_hz=f_min_hz, b_obs_hz=b_obs_hz, n_sub=n_sub,
              m_sub=m_sub, alpha1=alpha1, alpha2=alpha2, template=template)
    _log_raise_if(
        int(m_sub) != m_sub or m_sub % 2 or m_sub < 4,
        "m_sub must be an even integer >= 4", extra=ld,
        exception_kls=ValidationError)
    _log_raise_if(
        not alpha2 > alpha1, "alpha2 must be greater than alpha1", extra=ld,
        exception_kls=ValidationError)
    _log_raise_if(
        int(n_sub) != n_sub or n_sub < 1, "n_sub must be a positive integer",
        extra=ld, exception_kls=ValidationError)
    _log_raise_if(
        not b_obs_hz > 0, "b_obs_hz must be positive", extra=ld,
        exception_kls=ValidationError)
    n_sub, m_sub = int(n_sub), int(m_sub)
    b_sub = b_obs_hz / n_sub
    _, bt = log_template(m_sub, alpha1, alpha2, template)
    k = np.arange(n_sub)[:, None]
    points = (f_min_hz + k * b_sub + bt[None, :] * b_sub).ravel()
    bt.flags.writeable = False
    points.flags.writeable = False
    log.debug("built warp grid", extra=dict(n_points=len(points), **ld))
    return WarpGrid(
        n_sub=n_sub, m_sub=m_sub, b_sub_hz=b_sub, alpha1=alpha1,
        alpha2=alpha2, f_min_hz=f_min_hz, template=template,
        template_values=bt, points_hz=points)


def uniform_grid(f_min_hz, b_obs_hz, n_sub, m_sub):
    """A linear canvas with the same number of points as a warped grid"""
    return build_warp_grid(f_min_hz, b_obs_hz, n_sub, m_sub, 1.0, 4.0,
                           template='uniform')


def grid_for_sample_rate(sample_rate_hz, b_sub_hz=1e6, m_sub=128,
                         alpha1=1.0, alpha2=4.0, template='edge',
                         n_sub=None):
    """The grid centred on DC covering n_sub whole subbands.  `n_sub`
    defaults to floor(F_s / b_sub_hz), at least 1"""
    if n_sub is None:
        n_sub = max(1, int(math.floor(sample_rate_hz / b_sub_hz + 1e-9)))
    b_obs = n_sub * b_sub_hz
    return build_warp_grid(
        -b_obs / 2, b_obs, n_sub, m_sub, alpha1, alpha2, template)


def _tolerance(grid):
    return 1e-9 * (grid.points_hz[-1] - grid.points_hz[0])


def warp_to_hz(grid, warped_bin):
    """Piecewise-linear map from a (fractional) grid index to Hz"""
    idx = np.asarray(warped_bin, dtype=float)
    last = grid.n_points - 1
    _log_raise_if(
        np.any(idx < -1e-9) or np.any(idx > last + 1e-9),
        "warped bin out of range [0, %s]" % last,
        extra=dict(warped_bin=warped_bin), exception_kls=ValidationError)
    rv = np.interp(np.clip(idx, 0, last), np.arange(grid.n_points),
                   grid.points_hz)
    return float(rv) if rv.ndim == 0 else rv


def hz_to_warp(grid, f_hz):
    """
    Inverse of warp_to_hz.  A frequency sitting on a duplicated grid point
    (subband boundaries, template centre) maps half way between the two
    copies.
    """
    f = np.asarray(f_hz, dtype=float)
    p = grid.points_hz
    tol = _tolerance(grid)
    _log_raise_if(
        np.any(f < p[0] - tol) or np.any(f > p[-1] + tol),
        "frequency outside the grid range [%s, %s]" % (p[0], p[-1]),
        extra=dict(f_hz=f_hz), exception_kls=ValidationError)
    fc = np.clip(np.atleast_1d(f), p[0], p[-1])
    last = len(p) - 1
    j = np.clip(np.searchsorted(p, fc, side='right') - 1, 0, last)
    jn = np.minimum(j + 1, last)
    denom = p[jn] - p[j]
    frac = np.where(denom > 0, (fc - p[j]) / np.where(denom > 0, denom, 1), 0)
    out = j + frac
    dup = (j > 0) & (fc == p[j]) & (p[np.maximum(j - 1, 0)] == p[j])
    out = np.where(dup, j - 0.5, out)
    return float(out[0]) if f.ndim == 0 else out


def _periodic_extension(X):
    """Append the -F_s/2 column again at +F_s/2 when the linear axis is a
    full fft-shifted DFT band"""
    axis = X.freq_axis_hz
    values = X.values
    fs = X.sample_rate_hz
    if fs and X.n_bins > 1:
        df = axis[1] - axis[0]
        full = np.isclose(axis[0], -fs / 2, rtol=0, atol=1e-9 * fs) and \
            np.isclose(df * X.n_bins, fs, rtol=1e-9)
        if full:
            axis = np.append(axis, axis[0] + fs)
            values = np.concatenate([values, values[:, :1]], axis=1)
    return axis, values


def warp_spectrogram(X, grid, eps=1e-10, interpolation='complex'):
    """
    Resample each frame of a complex LINEAR spectrogram at the grid points
    by linear interpolation along frequency, then take log(|X| + eps).

    `interpolation` - "complex" interpolates real and imaginary parts,
        "magnitude" interpolates |X|
    """
    ld = dict(n_points=grid.n_points, interpolation=interpolation)
    _log_raise_if(
        X.kind is not SpectrogramKind.LINEAR,
        "warp_spectrogram needs a linear spectrogram", extra=ld,
        exception_kls=ValidationError)
    _log_raise_if(
        interpolation not in ('complex', 'magnitude'),
        "interpolation must be 'complex' or 'magnitude'", extra=ld,
        exception_kls=ValidationError)
    axis, values = _periodic_extension(X)
    df = axis[1] - axis[0]
    tol = 1e-9 * (axis[-1] - axis[0])
    _log_raise_if(
        grid.points_hz[0] < axis[0] - tol
        or grid.points_hz[-1] > axis[-1] + tol,
        "warp grid [%s, %s] Hz lies outside the linear axis [%s, %s] Hz" % (
            grid.points_hz[0], grid.points_hz[-1], axis[0], axis[-1]),
        extra=ld, exception_kls=ValidationError)
    pos = (grid.points_hz - axis[0]) / df
    nearest = np.round(pos)
    pos = np.where(np.abs(pos - nearest) < 1e-9, nearest, pos)
    pos = np.clip(pos, 0, len(axis) - 1)
    i0 = np.minimum(np.floor(pos).astype(int), len(axis) - 2)
    w = pos - i0
    if interpolation == 'magnitude' or not np.iscomplexobj(values):
        values = np.abs(values)
    warped = values[:, i0] * (1 - w) + values[:, i0 + 1] * w
    log.debug("warped spectrogram", extra=dict(n_frames=X.n_frames, **ld))
    return X.with_values(
        np.log(np.abs(warped) + eps), freq_axis_hz=grid.points_hz,
        kind=SpectrogramKind.WARPED)
