"""
Proposal-conditioned purification: cut the proposal's time span out of
the recording, mix its centre frequency down to DC, low-pass to the guarded
bandwidth and decimate as far as the Nyquist condition allows.
"""
import math

import numpy as np
from scipy import signal

from . import log
from .types import PurifiedSegment
from specsense.exceptions import (
    _log_raise_if, DegenerateSegment, InvariantViolation, ValidationError)

MIN_SEGMENT_SAMPLES = 8
# Hamming normalized transition width: N ~ 3.3 F_s / transition
HAMMING_TRANSITION = 3.3
_INDEX_TOL = 1e-6


def segment_indices(t_start_s, t_end_s, sample_rate_hz, start_time_s=0.0,
                    n_samples=None):
    """
    (n_start, n_end, n_seg) with n_start = ceil(t_start F_s),
    n_end = floor(t_end F_s) and n_seg = n_end - n_start + 1.  Times are
    taken relative to `start_time_s`; with `n_samples` the span is clipped
    to the recording.

    >>> segment_indices(0.5e-3, 1.5e-3, 1e6)
    (500, 1500, 1001)
    """
    ld = dict(t_start_s=t_start_s, t_end_s=t_end_s,
              sample_rate_hz=sample_rate_hz)
    _log_raise_if(
        not t_end_s > t_start_s, "t_end_s must be greater than t_start_s",
        extra=ld, exception_kls=ValidationError)
    _log_raise_if(
        not sample_rate_hz > 0, "sample_rate_hz must be positive", extra=ld,
        exception_kls=ValidationError)
    n_start = math.ceil((t_start_s - start_time_s) * sample_rate_hz
                        - _INDEX_TOL)
    n_end = math.floor((t_end_s - start_time_s) * sample_rate_hz
                       + _INDEX_TOL)
    if n_samples is not None:
        n_start, n_end = max(n_start, 0), min(n_end, n_samples - 1)
    n_seg = n_end - n_start + 1
    _log_raise_if(
        n_seg < MIN_SEGMENT_SAMPLES,
        "degenerate segment: %s samples, need at least %s" % (
            n_seg, MIN_SEGMENT_SAMPLES),
        extra=dict(n_start=n_start, n_end=n_end, **ld),
        exception_kls=DegenerateSegment)
    return n_start, n_end, n_seg


def heterodyne(r, n_start, n_seg, f_c_hz):
    """
    y[n] = r[n_start + n] exp(-j 2 pi f_c (n_start + n) / F_s).

    The phase uses the absolute sample index, so mixing back up by +f_c
    with the same convention recovers the segment.
    """
    fs = r.sample_rate_hz
    ld = dict(n_start=n_start, n_seg=n_seg, f_c_hz=f_c_hz,
              n_samples=r.n_samples)
    _log_raise_if(
        abs(f_c_hz) > fs / 2, "|f_c_hz| must not exceed F_s/2", extra=ld,
        exception_kls=ValidationError)
    _log_raise_if(
        n_start < 0 or n_seg < 1 or n_start + n_seg > r.n_samples,
        "segment lies outside the recording", extra=ld,
        exception_kls=ValidationError)
    idx = np.arange(n_start, n_start + n_seg)
    return r.samples[n_start:n_start + n_seg] * \
        np.exp(-2j * np.pi * f_c_hz * idx / fs)


def cutoff_frequency(bandwidth_hz, conf, kappa):
    """f_lp = (1 + kappa (1 - conf)) B / 2

    >>> cutoff_frequency(4e6, 0.5, 0.2)
    2200000.0
    """
    ld = dict(bandwidth_hz=bandwidth_hz, conf=conf, kappa=kappa)
    _log_raise_if(
        not bandwidth_hz > 0, "bandwidth must be positive", extra=ld,
        exception_kls=ValidationError)
    _log_raise_if(
        not 0 <= conf <= 1, "confidence must be in [0, 1]", extra=ld,
        exception_kls=ValidationError)
    beta = 1 + kappa * (1 - conf)
    return beta * bandwidth_hz / 2


def n_taps_for(sample_rate_hz, transition_hz, max_taps):
    n = int(math.ceil(HAMMING_TRANSITION * sample_rate_hz / transition_hz))
    if n % 2 == 0:
        n += 1
    return min(max_taps, n), n


def design_lowpass(f_lp_hz, sample_rate_hz, params):
    """
    Linear-phase windowed-sinc low-pass.  The ideal cutoff sits at
    f_lp + transition/2 with transition = eta f_lp, so the stopband starts
    at f_lp + transition.  Taps are exactly symmetric and sum to 1.
    """
    fs = sample_rate_hz
    ld = dict(f_lp_hz=f_lp_hz, sample_rate_hz=fs, eta=params.eta)
    limit = fs / 2 * (1 - params.eta)
    _log_raise_if(
        not 0 < f_lp_hz < limit,
        "cutoff %s Hz leaves no room for the transition band: f_lp must be"
        " in (0, F_s/2 (1 - eta)) = (0, %s) Hz" % (f_lp_hz, limit),
        extra=ld, exception_kls=ValidationError)
    transition = params.eta * f_lp_hz
    n_taps, wanted = n_taps_for(fs, transition, params.max_taps)
    if n_taps < wanted:
        log.warning("FIR length capped by max_taps", extra=dict(
            wanted=wanted, max_taps=params.max_taps, **ld))
    h = signal.firwin(
        n_taps, f_lp_hz + transition / 2, window=params.window, fs=fs)
    h = (h + h[::-1]) / 2
    return h / np.sum(h)


def lowpass_filter(y, h):
    """Convolve and remove the (N_taps - 1)/2 group delay so output index n
    lines up with input index n.  Output has the input's length"""
    y = np.asarray(y)
    delay = (len(h) - 1) // 2
    full = signal.convolve(y, h, mode='full', method='auto')
    return full[delay:delay + len(y)]


def safe_decim_factor(sample_rate_hz, f_lp_hz):
    """Largest integer D with F_s / D >= 2 f_lp, at least 1

    >>> safe_decim_factor(20e6, 0.6e6)
    16
    """
    _log_raise_if(
        not f_lp_hz > 0, "f_lp_hz must be positive",
        extra=dict(f_lp_hz=f_lp_hz), exception_kls=ValidationError)
    d = max(1, int(math.floor(sample_rate_hz / (2 * f_lp_hz) + 1e-9)))
    while d > 1 and sample_rate_hz / d < 2 * f_lp_hz:
        d -= 1
    return d


def decimate(z, decim_factor):
    """u[m] = z[m D]

    >>> decimate(list(range(10)), 3)
    array([0, 3, 6, 9])
    """
    _log_raise_if(
        int(decim_factor) != decim_factor or decim_factor < 1,
        "decimation factor must be a positive integer",
        extra=dict(decim_factor=decim_factor), exception_kls=ValidationError)
    return np.asarray(z)[::int(decim_factor)]


def guarded_cutoff(proposal, sample_rate_hz, params):
    """Cutoff for a proposal and whether it had to be reduced so that
    f_c +- f_lp stays inside the recorded band"""
    fs = sample_rate_hz
    f_lp = cutoff_frequency(
        proposal.bandwidth_hz, proposal.confidence, params.kappa)
    margin = min(fs / 2 - abs(proposal.f_c_hz),
                 fs / 2 * (1 - params.eta) * (1 - 1e-9))
    if f_lp > margin:
        log.warning("cutoff clipped to the recorded band", extra=dict(
            f_c_hz=proposal.f_c_hz, f_lp_hz=f_lp, clipped_to_hz=margin))
        return margin, True
    return f_lp, False


def purify(r, proposal, params):
    """
    segment_indices -> heterodyne -> cutoff -> design_lowpass ->
    lowpass_filter -> safe_decim_factor -> decimate
    """
    fs = r.sample_rate_hz
    r.ensure_nonempty()
    n_start, _, n_seg = segment_indices(
        proposal.t_start_s, proposal.t_end_s, fs, r.start_time_s,
        r.n_samples)
    f_c = proposal.f_c_hz
    y = heterodyne(r, n_start, n_seg, f_c)
    f_lp, clipped = guarded_cutoff(proposal, fs, params)
    h = design_lowpass(f_lp, fs, params)
    z = lowpass_filter(y, h)
    d = safe_decim_factor(fs, f_lp)
    _log_raise_if(
        fs / d < 2 * f_lp, "decimation broke the Nyquist condition",
        extra=dict(decim_factor=d, f_lp_hz=f_lp, sample_rate_hz=fs),
        exception_kls=InvariantViolation)
    u = decimate(z, d)
    log.debug("purified segment", extra=dict(
        n_start=n_start, n_seg=n_seg, f_c_hz=f_c, f_lp_hz=f_lp,
        n_taps=len(h), decim_factor=d, clipped=clipped))
    return PurifiedSegment(
        samples=u, decim_factor=d, out_rate_hz=fs / d, f_c_hz=f_c,
        f_lp_hz=f_lp, n_start=n_start, source_conf=proposal.confidence,
        n_samples=n_seg, sample_rate_hz=fs, start_time_s=r.start_time_s,
        clipped=clipped, n_taps=len(h))
