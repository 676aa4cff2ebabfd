"""
Expectation decoding of interval and bandwidth distributions defined on a
normalized grid xi in [0, 1], and the mapping between normalized segment
coordinates and absolute seconds / Hz.
"""
import math
from dataclasses import dataclass

import numpy as np

from . import log
from specsense.exceptions import _log_raise, _log_raise_if, ValidationError
from specsense.iqcore import Detection, ModulationClass

NORM_TOL = 1e-6
# order of class_probs entries
CLASS_ORDER = tuple(ModulationClass)


def normalized_grid(grid_length=64):
    """L uniformly spaced points on [0, 1]

    >>> normalized_grid(4).tolist()
    [0.0, 0.3333333333333333, 0.6666666666666666, 1.0]
    """
    _log_raise_if(
        int(grid_length) != grid_length or grid_length < 2,
        "grid_length must be an integer >= 2",
        extra=dict(grid_length=grid_length), exception_kls=ValidationError)
    return np.linspace(0.0, 1.0, int(grid_length))


@dataclass(frozen=True, eq=False)
class GridDistribution:
    probs: np.ndarray
    grid: np.ndarray

    def __post_init__(self):
        probs = np.array(self.probs, dtype=float).ravel()
        grid = np.array(self.grid, dtype=float).ravel()
        ld = dict(n_probs=len(probs), n_grid=len(grid))
        _log_raise_if(
            len(probs) != len(grid) or len(grid) < 1,
            "probs and grid must have the same non-zero length", extra=ld,
            exception_kls=ValidationError)
        _log_raise_if(
            not np.all(np.isfinite(probs)) or np.any(probs < 0),
            "probabilities must be finite and non-negative", extra=ld,
            exception_kls=ValidationError)
        total = float(np.sum(probs))
        _log_raise_if(
            abs(total - 1) > NORM_TOL,
            "distribution is not normalized: sums to %s" % total,
            extra=ld, exception_kls=ValidationError)
        _log_raise_if(
            np.any(grid < 0) or np.any(grid > 1) or np.any(np.diff(grid) < 0),
            "grid must be non-decreasing inside [0, 1]", extra=ld,
            exception_kls=ValidationError)
        probs.flags.writeable = False
        grid.flags.writeable = False
        object.__setattr__(self, 'probs', probs)
        object.__setattr__(self, 'grid', grid)

    def __len__(self):
        return len(self.probs)

    def expectation(self):
        return float(np.dot(self.grid, self.probs))


def two_point_distribution(x, grid):
    """The distribution on `grid` whose mass sits on the two points around
    `x` and whose expectation is `x`"""
    grid = np.asarray(grid, dtype=float)
    _log_raise_if(
        not grid[0] <= x <= grid[-1],
        "value %s lies outside the grid [%s, %s]" % (x, grid[0], grid[-1]),
        extra=dict(x=x), exception_kls=ValidationError)
    probs = np.zeros(len(grid))
    j = min(int(np.searchsorted(grid, x, side='right')) - 1, len(grid) - 1)
    if grid[j] == x or j == len(grid) - 1:
        probs[j] = 1.0
    else:
        w = (x - grid[j]) / (grid[j + 1] - grid[j])
        probs[j] = 1 - w
        probs[j + 1] = w
    return GridDistribution(probs, grid)


def _check_eps(eps_clamp):
    _log_raise_if(
        not 0 < eps_clamp <= 1e-3, "eps_clamp must be in (0, 1e-3]",
        extra=dict(eps_clamp=eps_clamp), exception_kls=ValidationError)


def decode_time(p_start, p_dur, eps_clamp=1e-3):
    """
    (t_start, duration, t_end) with t_start = sum xi p_start,
    duration = sum xi p_dur and t_end = min(1 - eps, t_start + duration)
    """
    _check_eps(eps_clamp)
    _log_raise_if(
        len(p_start) != len(p_dur),
        "start and duration distributions need the same grid length",
        extra=dict(n_start=len(p_start), n_dur=len(p_dur)),
        exception_kls=ValidationError)
    t_start = min(1.0, max(0.0, p_start.expectation()))
    duration = min(1.0, max(0.0, p_dur.expectation()))
    return t_start, duration, min(1 - eps_clamp, t_start + duration)


def decode_bandwidth(p_bw):
    return min(1.0, max(0.0, p_bw.expectation()))


@dataclass(frozen=True)
class RefinedDetection:
    """
    Segment-normalized refinement of one proposal.  Times are fractions of
    the segment duration, bandwidth and centre offset fractions of the
    segment's output rate.  `class_probs` follows CLASS_ORDER
    """
    t_start_norm: float
    t_end_norm: float
    bandwidth_norm: float
    class_probs: tuple = None
    center_offset_norm: float = 0.0
    eps_clamp: float = 1e-3

    def __post_init__(self):
        ld = dict(t_start_norm=self.t_start_norm, t_end_norm=self.t_end_norm,
                  bandwidth_norm=self.bandwidth_norm)
        _check_eps(self.eps_clamp)
        _log_raise_if(
            not 0 <= self.t_start_norm < self.t_end_norm
            <= 1 - self.eps_clamp + 1e-12,
            "refined span must satisfy 0 <= t_start < t_end <= 1 - eps",
            extra=ld, exception_kls=ValidationError)
        _log_raise_if(
            not 0 < self.bandwidth_norm <= 1,
            "bandwidth_norm must be in (0, 1]", extra=ld,
            exception_kls=ValidationError)
        _log_raise_if(
            not -0.5 <= self.center_offset_norm <= 0.5,
            "center_offset_norm must be in [-0.5, 0.5]",
            extra=dict(center_offset_norm=self.center_offset_norm),
            exception_kls=ValidationError)
        if self.class_probs is not None:
            probs = tuple(float(p) for p in self.class_probs)
            _log_raise_if(
                len(probs) != len(CLASS_ORDER) or min(probs) < 0
                or abs(sum(probs) - 1) > NORM_TOL,
                "class_probs must be a distribution over %s classes" % (
                    len(CLASS_ORDER)),
                extra=dict(class_probs=probs), exception_kls=ValidationError)
            object.__setattr__(self, 'class_probs', probs)

    def class_label(self):
        if self.class_probs is None:
            return ModulationClass.UNKNOWN
        return CLASS_ORDER[int(np.argmax(self.class_probs))]


def _check_segment(seg):
    fs = seg.sample_rate_hz
    _log_raise_if(
        not (fs > 0 and seg.out_rate_hz > 0 and seg.n_samples > 0
             and math.isclose(seg.out_rate_hz * seg.decim_factor, fs,
                              rel_tol=1e-9)),
        "segment metadata is inconsistent",
        extra=dict(sample_rate_hz=fs, out_rate_hz=seg.out_rate_hz,
                   decim_factor=seg.decim_factor, n_samples=seg.n_samples),
        exception_kls=ValidationError)


def denormalize(refined, seg):
    """Detection in absolute seconds and Hz.  Time 0 of the segment is
    sample n_start of the recording; its duration is n_samples / F_s.

    f_c is the segment centre (the proposal's) moved by
    center_offset_norm * out_rate_hz.  Refiners that do not estimate an
    offset leave it at 0, and f_c is then copied unchanged.
    """
    _check_segment(seg)
    t0 = seg.t_start_s + refined.t_start_norm * seg.duration_s
    t1 = seg.t_start_s + refined.t_end_norm * seg.duration_s
    try:
        return Detection(
            t_start_s=t0, t_end_s=t1,
            f_c_hz=seg.f_c_hz + refined.center_offset_norm * seg.out_rate_hz,
            bandwidth_hz=refined.bandwidth_norm * seg.out_rate_hz,
            class_label=refined.class_label(),
            confidence=seg.source_conf, refined=True,
            class_probs=refined.class_probs)
    except ValidationError as err:
        _log_raise(
            "cannot denormalize refined detection: %s" % err,
            extra=dict(n_start=seg.n_start), exception_kls=ValidationError)


def normalize(detection, seg, eps_clamp=1e-3):
    """Inverse of denormalize"""
    _check_segment(seg)
    rv = RefinedDetection(
        t_start_norm=(detection.t_start_s - seg.t_start_s) / seg.duration_s,
        t_end_norm=(detection.t_end_s - seg.t_start_s) / seg.duration_s,
        bandwidth_norm=detection.bandwidth_hz / seg.out_rate_hz,
        class_probs=detection.class_probs,
        center_offset_norm=(detection.f_c_hz - seg.f_c_hz) / seg.out_rate_hz,
        eps_clamp=eps_clamp)
    log.debug("normalized detection", extra=dict(n_start=seg.n_start))
    return rv
