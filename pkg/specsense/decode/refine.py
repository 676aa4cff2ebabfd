"""
Envelope refiner: a deterministic classical stand-in for a learned
refinement network.  The active span comes from the smoothed energy
envelope, the bandwidth from the 99% occupied band of a Welch periodogram.
Both are expressed as grid distributions and decoded by expectation.
"""
from dataclasses import dataclass

import numpy as np
from scipy import ndimage, signal

from . import log
from .heads import (
    RefinedDetection, decode_bandwidth, decode_time, normalized_grid,
    two_point_distribution)
from specsense.exceptions import (
    _log_raise_if, DegenerateSegment, ValidationError)

OCCUPIED_FRACTION = 0.99
# envelope percentiles of the quiet and the active part of a segment
_LOW_PCT, _HIGH_PCT = 5, 90


@dataclass(frozen=True)
class DecodeParams:
    grid_length: int = 64
    eps_clamp: float = 1e-3
    smooth_samples: int = 32

    def __post_init__(self):
        ld = dict(grid_length=self.grid_length, eps_clamp=self.eps_clamp,
                  smooth_samples=self.smooth_samples)
        _log_raise_if(
            int(self.grid_length) != self.grid_length or self.grid_length < 2,
            "grid_length must be an integer >= 2", extra=ld,
            exception_kls=ValidationError)
        _log_raise_if(
            not 0 < self.eps_clamp <= 1e-3, "eps_clamp must be in (0, 1e-3]",
            extra=ld, exception_kls=ValidationError)
        _log_raise_if(
            int(self.smooth_samples) != self.smooth_samples
            or self.smooth_samples < 1,
            "smooth_samples must be a positive integer", extra=ld,
            exception_kls=ValidationError)
        object.__setattr__(self, 'grid_length', int(self.grid_length))
        object.__setattr__(self, 'eps_clamp', float(self.eps_clamp))
        object.__setattr__(self, 'smooth_samples', int(self.smooth_samples))


def energy_envelope(u, smooth_samples):
    power = np.abs(u) ** 2
    return ndimage.uniform_filter1d(
        power, size=min(smooth_samples, len(power)), mode='nearest')


def active_span(u, smooth_samples=32):
    """
    (first, last) sample index of the active part of `u`.  When the
    envelope's high percentile is less than twice its low percentile the
    whole segment counts as active; otherwise samples above the midpoint
    of the two are active.
    """
    env = energy_envelope(u, smooth_samples)
    lo, hi = np.percentile(env, [_LOW_PCT, _HIGH_PCT])
    if hi < 2 * lo:
        return 0, len(u) - 1
    active = np.nonzero(env > (lo + hi) / 2)[0]
    if not len(active):
        return 0, len(u) - 1
    return int(active[0]), int(active[-1])


def occupied_band(u, sample_rate_hz, fraction=OCCUPIED_FRACTION):
    """(f_low, f_high) holding `fraction` of the power of `u`, from a
    two-sided Welch periodogram"""
    nperseg = min(256, len(u))
    f, pxx = signal.welch(
        u, fs=sample_rate_hz, window='hann', nperseg=nperseg,
        return_onesided=False, detrend=False)
    f, pxx = np.fft.fftshift(f), np.fft.fftshift(pxx)
    cum = np.cumsum(pxx) / np.sum(pxx)
    tail = (1 - fraction) / 2
    i_lo = int(np.searchsorted(cum, tail))
    i_hi = min(int(np.searchsorted(cum, 1 - tail)), len(f) - 1)
    df = sample_rate_hz / nperseg
    return f[i_lo] - df / 2, f[i_hi] + df / 2


def refine_stub(seg, params=None):
    """RefinedDetection for one purified segment; class_probs stay empty"""
    params = params or DecodeParams()
    u = seg.samples
    n = len(u)
    ld = dict(n_start=seg.n_start, n_out=n)
    _log_raise_if(
        n < 8, "segment too short to refine: %s samples" % n, extra=ld,
        exception_kls=DegenerateSegment)
    _log_raise_if(
        not np.any(np.abs(u) > 0), "cannot refine an all-zero segment",
        extra=ld, exception_kls=ValidationError)
    xi = normalized_grid(params.grid_length)
    eps = params.eps_clamp

    first, last = active_span(u, params.smooth_samples)
    t_start = min(first / n, 1 - 2 * eps)
    duration = min(1.0, (last + 1) / n - t_start)
    t_start, _, t_end = decode_time(
        two_point_distribution(t_start, xi),
        two_point_distribution(duration, xi), eps)

    active = u[first:last + 1] if last - first + 1 >= 16 else u
    f_lo, f_hi = occupied_band(active, seg.out_rate_hz)
    f_lo = max(f_lo, -seg.out_rate_hz / 2)
    f_hi = min(f_hi, seg.out_rate_hz / 2)
    bw_norm = min(1.0, (f_hi - f_lo) / seg.out_rate_hz)
    bw_norm = decode_bandwidth(two_point_distribution(bw_norm, xi))
    offset = (f_lo + f_hi) / 2 / seg.out_rate_hz

    log.debug("refined segment", extra=dict(
        t_start_norm=t_start, t_end_norm=t_end, bandwidth_norm=bw_norm,
        center_offset_norm=offset, **ld))
    return RefinedDetection(
        t_start_norm=t_start, t_end_norm=t_end, bandwidth_norm=bw_norm,
        center_offset_norm=offset, eps_clamp=eps)


def refine(seg, params):
    return refine_stub(seg, params)
