import math
from dataclasses import dataclass

import numpy as np
from scipy import signal

from specsense.exceptions import _log_raise, _log_raise_if, ValidationError


@dataclass(frozen=True)
class PurifierParams:
    """
    `kappa` - guard factor: the cutoff widens by kappa * (1 - confidence)
    `eta` - transition width as a fraction of the cutoff
    `window` - scipy window name used for the FIR design
    `max_taps` - odd cap on the FIR length
    `workers` - thread pool size for batches; None lets the executor choose
    """
    kappa: float = 0.2
    eta: float = 0.1
    window: str = 'hamming'
    max_taps: int = 8191
    workers: int = None

    def __post_init__(self):
        ld = dict(kappa=self.kappa, eta=self.eta, window=self.window,
                  max_taps=self.max_taps, workers=self.workers)
        _log_raise_if(
            not 0.1 <= self.kappa <= 0.3, "kappa must be in [0.1, 0.3]",
            extra=ld, exception_kls=ValidationError)
        _log_raise_if(
            not 0 < self.eta < 1, "eta must be in (0, 1)", extra=ld,
            exception_kls=ValidationError)
        _log_raise_if(
            int(self.max_taps) != self.max_taps or self.max_taps < 1
            or self.max_taps % 2 == 0,
            "max_taps must be a positive odd integer", extra=ld,
            exception_kls=ValidationError)
        _log_raise_if(
            self.workers is not None
            and (int(self.workers) != self.workers or self.workers < 1),
            "workers must be a positive integer or None", extra=ld,
            exception_kls=ValidationError)
        try:
            signal.get_window(self.window, 3, fftbins=False)
        except ValueError:
            _log_raise(
                "unknown FIR window %r" % (self.window, ), extra=ld,
                exception_kls=ValidationError)
        object.__setattr__(self, 'kappa', float(self.kappa))
        object.__setattr__(self, 'eta', float(self.eta))
        object.__setattr__(self, 'max_taps', int(self.max_taps))
        if self.workers is not None:
            object.__setattr__(self, 'workers', int(self.workers))


@dataclass(frozen=True, eq=False)
class PurifiedSegment:
    """
    Baseband, low-passed and decimated samples of one proposal.

    `n_start` - absolute index of the first input sample in the recording
    `n_samples` - input samples covered, before decimation
    `sample_rate_hz`, `start_time_s` - of the recording the segment came from
    `clipped` - the cutoff was reduced to stay inside the recorded band
    """
    samples: np.ndarray
    decim_factor: int
    out_rate_hz: float
    f_c_hz: float
    f_lp_hz: float
    n_start: int
    source_conf: float
    n_samples: int
    sample_rate_hz: float
    start_time_s: float = 0.0
    clipped: bool = False
    n_taps: int = None

    def __post_init__(self):
        samples = np.array(self.samples, dtype=np.complex128).ravel()
        samples.flags.writeable = False
        object.__setattr__(self, 'samples', samples)
        ld = dict(decim_factor=self.decim_factor,
                  out_rate_hz=self.out_rate_hz, f_lp_hz=self.f_lp_hz,
                  n_start=self.n_start, n_samples=self.n_samples)
        _log_raise_if(
            len(samples) == 0, "purified segment has no samples", extra=ld,
            exception_kls=ValidationError)
        _log_raise_if(
            int(self.decim_factor) != self.decim_factor
            or self.decim_factor < 1,
            "decim_factor must be a positive integer", extra=ld,
            exception_kls=ValidationError)
        _log_raise_if(
            not self.out_rate_hz >= 2 * self.f_lp_hz,
            "out_rate_hz must be at least 2 f_lp_hz", extra=ld,
            exception_kls=ValidationError)
        _log_raise_if(
            not math.isclose(
                self.out_rate_hz * self.decim_factor, self.sample_rate_hz,
                rel_tol=1e-12),
            "out_rate_hz * decim_factor must equal sample_rate_hz",
            extra=ld, exception_kls=ValidationError)
        _log_raise_if(
            self.n_start < 0 or self.n_samples < 1,
            "segment offsets must be non-negative", extra=ld,
            exception_kls=ValidationError)
        object.__setattr__(self, 'decim_factor', int(self.decim_factor))
        object.__setattr__(self, 'n_start', int(self.n_start))
        object.__setattr__(self, 'n_samples', int(self.n_samples))

    @property
    def t_start_s(self):
        return self.start_time_s + self.n_start / self.sample_rate_hz

    @property
    def duration_s(self):
        return self.n_samples / self.sample_rate_hz

    def __eq__(self, other):
        if not isinstance(other, PurifiedSegment):
            return NotImplemented
        names = ('decim_factor', 'out_rate_hz', 'f_c_hz', 'f_lp_hz',
                 'n_start', 'source_conf', 'n_samples', 'sample_rate_hz',
                 'start_time_s', 'clipped', 'n_taps')
        return all(getattr(self, n) == getattr(other, n) for n in names) \
            and np.array_equal(self.samples, other.samples)
