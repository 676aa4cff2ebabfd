import enum
import math
from dataclasses import dataclass, field

import numpy as np

from specsense.exceptions import _log_raise, _log_raise_if, ValidationError


class ModulationClass(enum.Enum):
    """Modulation tags used by annotations and detections.  The value is the
    label written to json documents"""
    TONE = 'Tone'
    NBFM = 'NBFM'
    LORA = 'LoRa'
    ZIGBEE = 'Zigbee'
    QPSK = 'QPSK'
    QAM16 = '16QAM'
    AM = 'AM'
    UNKNOWN = 'Unknown'

    @classmethod
    def parse(cls, label):
        if isinstance(label, cls):
            return label
        lookup = {m.value.lower(): m for m in cls}
        lookup.update({m.name.lower(): m for m in cls})
        try:
            return lookup[str(label).strip().lower()]
        except KeyError:
            _log_raise(
                "unknown class label %r.  Expected one of %s" % (
                    label, [m.value for m in cls]),
                extra=dict(label=label), exception_kls=ValidationError)


def _finite(name, value):
    value = float(value)
    _log_raise_if(
        not math.isfinite(value), "%s must be finite" % name,
        extra={name: value}, exception_kls=ValidationError)
    return value


def _check_span(kind, t_start_s, t_end_s):
    _log_raise_if(
        not t_end_s > t_start_s,
        "%s: t_end_s must be greater than t_start_s" % kind,
        extra=dict(t_start_s=t_start_s, t_end_s=t_end_s),
        exception_kls=ValidationError)


def as_box(obj):
    """(t_start_s, t_end_s, f_start_hz, f_end_hz) of anything box-like"""
    if hasattr(obj, 'box'):
        return obj.box
    t0, t1, f0, f1 = obj
    return (float(t0), float(t1), float(f0), float(f1))


@dataclass(frozen=True, eq=False)
class IqRecording:
    """Complex baseband samples plus the metadata needed to interpret them.

    `samples` is stored as a read-only complex128 array.  `metadata` carries
    extra sidecar keys (ie the provenance of a purified segment).
    """
    samples: np.ndarray
    sample_rate_hz: float
    start_time_s: float = 0.0
    label: str = ''
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        samples = np.array(self.samples, dtype=np.complex128).ravel()
        _log_raise_if(
            not np.all(np.isfinite(samples)),
            "recording contains non-finite samples",
            extra=dict(label=self.label), exception_kls=ValidationError)
        samples.flags.writeable = False
        object.__setattr__(self, 'samples', samples)
        rate = _finite('sample_rate_hz', self.sample_rate_hz)
        _log_raise_if(
            rate <= 0, "sample_rate_hz must be positive",
            extra=dict(sample_rate_hz=rate), exception_kls=ValidationError)
        object.__setattr__(self, 'sample_rate_hz', rate)
        object.__setattr__(
            self, 'start_time_s', _finite('start_time_s', self.start_time_s))
        object.__setattr__(self, 'metadata', dict(self.metadata))

    def __len__(self):
        return len(self.samples)

    @property
    def n_samples(self):
        return len(self.samples)

    @property
    def duration_s(self):
        return self.n_samples / self.sample_rate_hz

    @property
    def end_time_s(self):
        return self.start_time_s + self.duration_s

    def __eq__(self, other):
        if not isinstance(other, IqRecording):
            return NotImplemented
        return (
            self.sample_rate_hz == other.sample_rate_hz
            and self.start_time_s == other.start_time_s
            and self.label == other.label
            and self.metadata == other.metadata
            and np.array_equal(self.samples, other.samples))

    def ensure_nonempty(self):
        _log_raise_if(
            self.n_samples == 0, "empty recording",
            extra=dict(label=self.label), exception_kls=ValidationError)


def _normalize_taps(taps):
    rv = []
    for tap in taps:
        delay, gain = tap
        _log_raise_if(
            int(delay) != delay or delay < 0,
            "tap delays must be non-negative integers",
            extra=dict(delay=delay), exception_kls=ValidationError)
        gain = complex(gain)
        _log_raise_if(
            not (math.isfinite(gain.real) and math.isfinite(gain.imag)),
            "tap gains must be finite", extra=dict(gain=gain),
            exception_kls=ValidationError)
        rv.append((int(delay), gain))
    return tuple(rv)


@dataclass(frozen=True)
class EmitterTruth:
    """Ground truth of one emitter: what it is, where it sits in time and
    frequency, and the channel impairments applied to it"""
    class_label: ModulationClass
    f_c_hz: float
    bandwidth_hz: float
    t_start_s: float
    t_end_s: float
    snr_db: float = 0.0
    cfo_hz: float = 0.0
    phase_noise_var: float = 0.0
    taps: tuple = ()
    phase0_rad: float = None

    def __post_init__(self):
        object.__setattr__(
            self, 'class_label', ModulationClass.parse(self.class_label))
        for name in ('f_c_hz', 'bandwidth_hz', 't_start_s', 't_end_s',
                     'snr_db', 'cfo_hz', 'phase_noise_var'):
            object.__setattr__(self, name, _finite(name, getattr(self, name)))
        if self.phase0_rad is not None:
            object.__setattr__(
                self, 'phase0_rad', _finite('phase0_rad', self.phase0_rad))
        _check_span('emitter', self.t_start_s, self.t_end_s)
        _log_raise_if(
            self.bandwidth_hz <= 0, "emitter bandwidth_hz must be positive",
            extra=dict(bandwidth_hz=self.bandwidth_hz),
            exception_kls=ValidationError)
        object.__setattr__(self, 'taps', _normalize_taps(self.taps))

    @property
    def f_start_hz(self):
        return self.f_c_hz - self.bandwidth_hz / 2

    @property
    def f_end_hz(self):
        return self.f_c_hz + self.bandwidth_hz / 2

    @property
    def box(self):
        return (self.t_start_s, self.t_end_s, self.f_start_hz, self.f_end_hz)

    def check_band(self, sample_rate_hz):
        """The occupied band must fit inside [-F_s/2, F_s/2]"""
        nyquist = sample_rate_hz / 2
        _log_raise_if(
            self.f_start_hz < -nyquist * (1 + 1e-12)
            or self.f_end_hz > nyquist * (1 + 1e-12),
            "emitter band f_c_hz +- bandwidth_hz/2 exceeds +-F_s/2",
            extra=dict(f_c_hz=self.f_c_hz, bandwidth_hz=self.bandwidth_hz,
                       sample_rate_hz=sample_rate_hz),
            exception_kls=ValidationError)


@dataclass(frozen=True)
class Detection:
    """One detected emitter in absolute seconds and baseband Hz"""
    t_start_s: float
    t_end_s: float
    f_c_hz: float
    bandwidth_hz: float
    class_label: ModulationClass = ModulationClass.UNKNOWN
    confidence: float = 1.0
    refined: bool = False
    class_probs: tuple = None

    def __post_init__(self):
        object.__setattr__(
            self, 'class_label', ModulationClass.parse(self.class_label))
        for name in ('t_start_s', 't_end_s', 'f_c_hz', 'bandwidth_hz',
                     'confidence'):
            object.__setattr__(self, name, _finite(name, getattr(self, name)))
        _check_span('detection', self.t_start_s, self.t_end_s)
        _log_raise_if(
            self.bandwidth_hz <= 0, "detection bandwidth_hz must be positive",
            extra=dict(bandwidth_hz=self.bandwidth_hz),
            exception_kls=ValidationError)
        _log_raise_if(
            not 0 <= self.confidence <= 1,
            "detection confidence must be in [0, 1]",
            extra=dict(confidence=self.confidence),
            exception_kls=ValidationError)
        if self.class_probs is not None:
            object.__setattr__(
                self, 'class_probs', tuple(float(p) for p in self.class_probs))

    @property
    def f_start_hz(self):
        return self.f_c_hz - self.bandwidth_hz / 2

    @property
    def f_end_hz(self):
        return self.f_c_hz + self.bandwidth_hz / 2

    @property
    def box(self):
        return (self.t_start_s, self.t_end_s, self.f_start_hz, self.f_end_hz)
