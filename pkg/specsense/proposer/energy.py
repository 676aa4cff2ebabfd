"""
Energy proposer: compare the warped spectrogram with a per-bin noise floor,
outline 4-connected components at a low seed excess and keep those with
enough bins above the detection threshold.
"""
import numpy as np
from scipy import ndimage

from . import log
from .types import BwTier, Proposal
from specsense import util
from specsense.exceptions import _log_raise_if, ValidationError
from specsense.specfront import SpectrogramKind, warp_to_hz

# S holds log(|X|) in nepers; excess in dB is 20 log10 of the amplitude ratio
DB_PER_NEPER = 20 / np.log(10)

_FOUR_CONNECTED = ndimage.generate_binary_structure(2, 1)


def _check_real_warped(S):
    ld = dict(kind=S.kind.value, n_frames=S.n_frames, n_bins=S.n_bins)
    _log_raise_if(
        S.is_complex, "the proposer needs a real log-magnitude spectrogram",
        extra=ld, exception_kls=ValidationError)
    _log_raise_if(
        S.kind is not SpectrogramKind.WARPED,
        "the proposer needs a warped spectrogram", extra=ld,
        exception_kls=ValidationError)


def estimate_noise_floor(S):
    """Per-bin median of S over frames"""
    _check_real_warped(S)
    _log_raise_if(
        S.n_frames < 8, "estimating a noise floor needs at least 8 frames",
        extra=dict(n_frames=S.n_frames), exception_kls=ValidationError)
    return np.median(S.values, axis=0)


def smooth_frames(values, n_frames):
    """Moving average of power along time, returned as log magnitude"""
    if n_frames <= 1:
        return np.asarray(values, dtype=float)
    power = np.exp(2 * np.asarray(values, dtype=float))
    power = ndimage.uniform_filter1d(
        power, size=n_frames, axis=0, mode='nearest')
    return 0.5 * np.log(power)


def excess_db(S, params):
    """dB by which each (frame, bin) of the smoothed spectrogram exceeds the
    noise floor.  The per-bin floor is capped at its band-wide median so a
    bin occupied for most of the recording does not hide itself"""
    smoothed = S.with_values(smooth_frames(S.values, params.smooth_frames))
    floor = estimate_noise_floor(smoothed)
    floor = np.minimum(floor, np.median(floor))
    return (smoothed.values - floor[None, :]) * DB_PER_NEPER


def component_mask(excess, params):
    """Labels of the dilated 4-connected components of the seed mask
    (excess > seed_db) and the mask of bins above threshold_db.

    The labels do not depend on threshold_db, so raising it can only drop
    components, never split them.
    """
    seed = excess > params.seed_db
    grown = seed
    if params.dilation_bins > 0 and seed.any():
        grown = ndimage.binary_dilation(
            seed, structure=_FOUR_CONNECTED, iterations=params.dilation_bins)
    labels, n_components = ndimage.label(grown, structure=_FOUR_CONNECTED)
    return excess > params.threshold_db, labels, n_components


def _time_span(S, first, last):
    centers = S.frame_centers_s
    half_hop = (S.hop_s or 0.0) / 2
    t_lo, t_hi = S.time_extent_s
    t0 = t_lo if first == 0 else max(t_lo, centers[first] - half_hop)
    t1 = t_hi if last == S.n_frames - 1 else \
        min(t_hi, centers[last] + half_hop)
    return float(t0), float(t1)


def _freq_span(grid, j0, j1):
    last = grid.n_points - 1
    f0 = warp_to_hz(grid, max(0.0, j0 - 0.5))
    f1 = warp_to_hz(grid, min(float(last), j1 + 0.5))
    return f0, f1


def propose(S, grid, params):
    """
    Proposals from one warped spectrogram, sorted by confidence (then
    earlier start time, then lower start frequency).

    A component is kept when at least min_area_bins of its bins exceed
    threshold_db; its box spans those bins.  Confidence is their mean
    excess over the threshold divided by 20 dB, clamped to [0, 1].
    """
    _check_real_warped(S)
    _log_raise_if(
        S.n_bins != grid.n_points,
        "spectrogram bins do not match the warp grid",
        extra=dict(n_bins=S.n_bins, n_points=grid.n_points),
        exception_kls=ValidationError)
    excess = excess_db(S, params)
    mask, labels, n_components = component_mask(excess, params)
    rv = []
    n_small = 0
    for label, slices in enumerate(ndimage.find_objects(labels), 1):
        if slices is None:
            continue
        sub = mask[slices] & (labels[slices] == label)
        area = int(sub.sum())
        if area < params.min_area_bins:
            n_small += 1
            continue
        frames, bins = np.nonzero(sub)
        l0 = int(frames.min() + slices[0].start)
        l1 = int(frames.max() + slices[0].start)
        j0 = int(bins.min() + slices[1].start)
        j1 = int(bins.max() + slices[1].start)
        t0, t1 = _time_span(S, l0, l1)
        f0, f1 = _freq_span(grid, j0, j1)
        if not (t1 > t0 and f1 > f0):
            continue
        conf = util.clamp01(
            np.mean(excess[slices][sub] - params.threshold_db) / 20.0)
        rv.append(Proposal(
            t_start_s=t0, t_end_s=t1, f_start_hz=f0, f_end_hz=f1,
            bw_tier=BwTier.for_bandwidth(f1 - f0, params.tier_edges_hz),
            confidence=conf, warped_box=(l0, l1, j0, j1)))
    rv.sort(key=lambda p: (-p.confidence, p.t_start_s, p.f_start_hz))
    log.debug("energy proposals", extra=dict(
        n_components=n_components, n_small=n_small, n_proposals=len(rv),
        threshold_db=params.threshold_db))
    return rv
