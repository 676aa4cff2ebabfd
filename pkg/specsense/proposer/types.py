import enum
import math
from dataclasses import dataclass

from specsense.exceptions import _log_raise_if, ValidationError


class BwTier(enum.Enum):
    NARROW = 'narrow'
    MID = 'mid'
    WIDE = 'wide'

    @classmethod
    def for_bandwidth(cls, bandwidth_hz, tier_edges_hz=(1e6, 10e6)):
        low, high = tier_edges_hz
        if bandwidth_hz < low:
            return cls.NARROW
        if bandwidth_hz < high:
            return cls.MID
        return cls.WIDE


@dataclass(frozen=True)
class Proposal:
    """
    A coarse time-frequency box.  `warped_box` optionally records the
    (first frame, last frame, first bin, last bin) the box was built from
    """
    t_start_s: float
    t_end_s: float
    f_start_hz: float
    f_end_hz: float
    bw_tier: BwTier
    confidence: float
    warped_box: tuple = None

    def __post_init__(self):
        object.__setattr__(self, 'bw_tier', BwTier(self.bw_tier))
        for name in ('t_start_s', 't_end_s', 'f_start_hz', 'f_end_hz',
                     'confidence'):
            object.__setattr__(self, name, float(getattr(self, name)))
        ld = dict(t_start_s=self.t_start_s, t_end_s=self.t_end_s,
                  f_start_hz=self.f_start_hz, f_end_hz=self.f_end_hz,
                  confidence=self.confidence)
        _log_raise_if(
            not all(math.isfinite(v) for v in ld.values()),
            "proposal fields must be finite", extra=ld,
            exception_kls=ValidationError)
        _log_raise_if(
            not self.t_end_s > self.t_start_s,
            "proposal: t_end_s must be greater than t_start_s", extra=ld,
            exception_kls=ValidationError)
        _log_raise_if(
            not self.f_end_hz > self.f_start_hz,
            "proposal: f_end_hz must be greater than f_start_hz", extra=ld,
            exception_kls=ValidationError)
        _log_raise_if(
            not 0 <= self.confidence <= 1,
            "proposal confidence must be in [0, 1]", extra=ld,
            exception_kls=ValidationError)

    @property
    def f_c_hz(self):
        return (self.f_start_hz + self.f_end_hz) / 2

    @property
    def bandwidth_hz(self):
        return self.f_end_hz - self.f_start_hz

    @property
    def box(self):
        return (self.t_start_s, self.t_end_s, self.f_start_hz, self.f_end_hz)


@dataclass(frozen=True)
class ProposerParams:
    """
    `threshold_db` - required excess over the noise floor
    `seed_db` - excess that outlines components.  Components never depend
        on `threshold_db`
    `min_area_bins` - fewest bins of a component that must exceed
        `threshold_db` for it to be kept
    `dilation_bins` - iterations of 4-connected dilation before labeling
    `smooth_frames` - length of the moving average of power along time.
        1 disables smoothing
    `tier_edges_hz` - NARROW / MID / WIDE boundaries
    `nms_iou` - suppression threshold on the frequency-weighted IoU
    """
    threshold_db: float = 6.0
    seed_db: float = 3.0
    min_area_bins: int = 6
    dilation_bins: int = 1
    smooth_frames: int = 24
    tier_edges_hz: tuple = (1e6, 10e6)
    nms_iou: float = 0.45

    def __post_init__(self):
        object.__setattr__(
            self, 'tier_edges_hz', tuple(float(e) for e in self.tier_edges_hz))
        ld = dict(threshold_db=self.threshold_db, seed_db=self.seed_db,
                  min_area_bins=self.min_area_bins,
                  dilation_bins=self.dilation_bins,
                  smooth_frames=self.smooth_frames,
                  tier_edges_hz=self.tier_edges_hz, nms_iou=self.nms_iou)
        _log_raise_if(
            not (math.isfinite(self.threshold_db)
                 and math.isfinite(self.seed_db)),
            "threshold_db and seed_db must be finite", extra=ld,
            exception_kls=ValidationError)
        _log_raise_if(
            int(self.min_area_bins) != self.min_area_bins
            or self.min_area_bins < 1,
            "min_area_bins must be a positive integer", extra=ld,
            exception_kls=ValidationError)
        _log_raise_if(
            int(self.dilation_bins) != self.dilation_bins
            or self.dilation_bins < 0,
            "dilation_bins must be a non-negative integer", extra=ld,
            exception_kls=ValidationError)
        _log_raise_if(
            int(self.smooth_frames) != self.smooth_frames
            or self.smooth_frames < 1,
            "smooth_frames must be a positive integer", extra=ld,
            exception_kls=ValidationError)
        _log_raise_if(
            len(self.tier_edges_hz) != 2
            or not 0 < self.tier_edges_hz[0] < self.tier_edges_hz[1],
            "tier_edges_hz must be two ascending positive values", extra=ld,
            exception_kls=ValidationError)
        _log_raise_if(
            not 0 < self.nms_iou < 1, "nms_iou must be in (0, 1)", extra=ld,
            exception_kls=ValidationError)
        for name in ('min_area_bins', 'dilation_bins', 'smooth_frames'):
            object.__setattr__(self, name, int(getattr(self, name)))
        object.__setattr__(self, 'threshold_db', float(self.threshold_db))
        object.__setattr__(self, 'seed_db', float(self.seed_db))
        object.__setattr__(self, 'nms_iou', float(self.nms_iou))
