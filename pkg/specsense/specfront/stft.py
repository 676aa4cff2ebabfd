import enum
from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from scipy import signal

from . import log
from specsense.exceptions import _log_raise_if, ValidationError

WINDOWS = {'hann': 'hann', 'hamming': 'hamming', 'rect': 'boxcar'}


@dataclass(frozen=True)
class StftParams:
    """
    `window` - analysis taper g: "hann", "hamming" or "rect"
    `n_window` - N_w, samples per frame
    `hop` - H, samples between frame starts
    `n_fft` - M >= N_w, a power of two; frames are zero padded to M
    `eps` - added to magnitudes before taking the log
    """
    window: str = 'hann'
    n_window: int = 1024
    hop: int = 256
    n_fft: int = 1024
    eps: float = 1e-10

    def __post_init__(self):
        ld = dict(window=self.window, n_window=self.n_window, hop=self.hop,
                  n_fft=self.n_fft, eps=self.eps)
        _log_raise_if(
            self.window not in WINDOWS,
            "unknown window %r.  Expected one of %s" % (
                self.window, sorted(WINDOWS)),
            extra=ld, exception_kls=ValidationError)
        _log_raise_if(
            int(self.n_window) != self.n_window or self.n_window < 1,
            "n_window must be a positive integer", extra=ld,
            exception_kls=ValidationError)
        _log_raise_if(
            int(self.hop) != self.hop or not 1 <= self.hop <= self.n_window,
            "hop must be an integer in [1, n_window]", extra=ld,
            exception_kls=ValidationError)
        _log_raise_if(
            int(self.n_fft) != self.n_fft or self.n_fft < self.n_window
            or self.n_fft & (self.n_fft - 1),
            "n_fft must be a power of two no smaller than n_window",
            extra=ld, exception_kls=ValidationError)
        _log_raise_if(
            not self.eps > 0, "eps must be positive", extra=ld,
            exception_kls=ValidationError)
        for name in ('n_window', 'hop', 'n_fft'):
            object.__setattr__(self, name, int(getattr(self, name)))

    def taper(self):
        return signal.get_window(WINDOWS[self.window], self.n_window)

    def n_frames(self, n_samples):
        if n_samples < self.n_window:
            return 0
        return (n_samples - self.n_window) // self.hop + 1


class SpectrogramKind(enum.Enum):
    LINEAR = 'linear'
    WARPED = 'warped'


@dataclass(frozen=True, eq=False)
class Spectrogram:
    """
    A frames x bins matrix.  `values` is complex before taking magnitudes
    and real (log-magnitude) afterwards.

    `time_extent_s` - (start, end) of the recording the frames came from
    `hop_s`, `window_s` - frame hop and frame length in seconds
    """
    values: np.ndarray
    frame_times_s: np.ndarray
    freq_axis_hz: np.ndarray
    kind: SpectrogramKind
    sample_rate_hz: float = None
    hop_s: float = None
    window_s: float = None
    time_extent_s: tuple = None

    def __post_init__(self):
        for name in ('values', 'frame_times_s', 'freq_axis_hz'):
            arr = np.array(getattr(self, name))
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)
        object.__setattr__(self, 'kind', SpectrogramKind(self.kind))
        ld = dict(shape=self.values.shape, kind=self.kind.value)
        _log_raise_if(
            self.values.ndim != 2
            or self.values.shape != (len(self.frame_times_s),
                                     len(self.freq_axis_hz)),
            "spectrogram dimensions are inconsistent with its axes",
            extra=ld, exception_kls=ValidationError)
        _log_raise_if(
            np.any(np.diff(self.freq_axis_hz) < 0),
            "freq_axis_hz must be non-decreasing", extra=ld,
            exception_kls=ValidationError)
        if self.kind is SpectrogramKind.LINEAR and self.n_bins > 2:
            steps = np.diff(self.freq_axis_hz)
            _log_raise_if(
                not np.allclose(steps, steps[0], rtol=1e-9, atol=0),
                "a linear spectrogram needs a uniform frequency axis",
                extra=ld, exception_kls=ValidationError)
        if self.time_extent_s is None and self.n_frames:
            end = self.frame_times_s[-1] + (self.window_s or 0.0)
            object.__setattr__(
                self, 'time_extent_s', (float(self.frame_times_s[0]), end))

    @property
    def n_frames(self):
        return self.values.shape[0]

    @property
    def n_bins(self):
        return self.values.shape[1]

    @property
    def is_complex(self):
        return np.iscomplexobj(self.values)

    @property
    def frame_centers_s(self):
        return self.frame_times_s + (self.window_s or 0.0) / 2

    def with_values(self, values, **kwargs):
        fields = dict(
            values=values, frame_times_s=self.frame_times_s,
            freq_axis_hz=self.freq_axis_hz, kind=self.kind,
            sample_rate_hz=self.sample_rate_hz, hop_s=self.hop_s,
            window_s=self.window_s, time_extent_s=self.time_extent_s)
        fields.update(kwargs)
        return Spectrogram(**fields)


def unitary_dft(r):
    """R[q] = N**-0.5 * sum_n r[n] exp(-j 2 pi q n / N)"""
    r = np.asarray(r, dtype=np.complex128)
    _log_raise_if(
        r.ndim != 1 or len(r) < 1, "unitary_dft needs a non-empty sequence",
        extra=dict(shape=r.shape), exception_kls=ValidationError)
    return np.fft.fft(r, norm='ortho')


def stft(recording, params):
    """
    X[l, m] = sum_tau r[tau + l H] g[tau] exp(-j 2 pi m tau / M)

    Columns are fft-shifted so the frequency axis ascends over
    [-F_s/2, F_s/2).  Frame l starts at start_time + l H / F_s.
    """
    r = recording.samples
    fs = recording.sample_rate_hz
    ld = dict(n_samples=len(r), n_window=params.n_window)
    _log_raise_if(
        len(r) < params.n_window,
        "recording is shorter than one analysis window", extra=ld,
        exception_kls=ValidationError)
    frames = sliding_window_view(r, params.n_window)[::params.hop]
    X = np.fft.fft(frames * params.taper(), n=params.n_fft, axis=1)
    X = np.fft.fftshift(X, axes=1)
    m = params.n_fft
    freq_axis = (np.arange(m) - m // 2) * fs / m
    frame_times = recording.start_time_s + \
        np.arange(X.shape[0]) * params.hop / fs
    log.debug("computed stft", extra=dict(
        n_frames=X.shape[0], n_fft=m, **ld))
    return Spectrogram(
        values=X, frame_times_s=frame_times, freq_axis_hz=freq_axis,
        kind=SpectrogramKind.LINEAR, sample_rate_hz=fs,
        hop_s=params.hop / fs, window_s=params.n_window / fs,
        time_extent_s=(recording.start_time_s, recording.end_time_s))


def log_magnitude(X, eps=1e-10):
    """S = log(|X| + eps), elementwise"""
    _log_raise_if(
        not eps > 0, "eps must be positive", extra=dict(eps=eps),
        exception_kls=ValidationError)
    return X.with_values(np.log(np.abs(X.values) + eps))
