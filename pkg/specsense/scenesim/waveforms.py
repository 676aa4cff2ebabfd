"""
Baseband waveform families.  Each kind generates a complex sequence centred
on 0 Hz; `synth_emitter` places it in time and normalizes its power.

The waveforms reproduce the time-frequency shape of their protocols (bursty
O-QPSK chips, linear chirps, FM traces, pulse-shaped PSK/QAM), not their
framing or coding.
"""
import math
from dataclasses import dataclass, asdict
from fractions import Fraction

import numpy as np
from scipy import signal

from . import log
from specsense.configuration import JSONMapping
from specsense.exceptions import _log_raise, _log_raise_if, ValidationError
from specsense.iqcore import ModulationClass


def _positive(kind, **values):
    for name, value in values.items():
        _log_raise_if(
            not (value > 0 and math.isfinite(value)),
            "%s: %s must be positive" % (kind, name),
            extra={name: value}, exception_kls=ValidationError)


@dataclass(frozen=True)
class Tone:
    """Unmodulated carrier"""
    kind = 'tone'

    @property
    def occupied_bandwidth_hz(self):
        return 0.0

    def generate(self, n, sample_rate_hz, rng):
        return np.ones(n, dtype=np.complex128)


@dataclass(frozen=True)
class Nbfm:
    """Narrowband FM by a single audio tone.  Occupied bandwidth follows
    Carson's rule 2*(deviation + audio rate)"""
    deviation_hz: float
    audio_rate_hz: float
    kind = 'nbfm'

    def __post_init__(self):
        _positive(self.kind, deviation_hz=self.deviation_hz,
                  audio_rate_hz=self.audio_rate_hz)

    @property
    def occupied_bandwidth_hz(self):
        return 2 * (self.deviation_hz + self.audio_rate_hz)

    def generate(self, n, sample_rate_hz, rng):
        t = np.arange(n) / sample_rate_hz
        phi = rng.uniform(0, 2 * np.pi)
        beta = self.deviation_hz / self.audio_rate_hz
        return np.exp(
            1j * beta * np.sin(2 * np.pi * self.audio_rate_hz * t + phi))


@dataclass(frozen=True)
class Chirp:
    """Repeating linear up-chirp from sweep_low_hz to sweep_high_hz every
    symbol_s seconds"""
    sweep_low_hz: float
    sweep_high_hz: float
    symbol_s: float
    kind = 'chirp'

    def __post_init__(self):
        _positive(self.kind, symbol_s=self.symbol_s,
                  sweep_width_hz=self.sweep_high_hz - self.sweep_low_hz)

    @property
    def occupied_bandwidth_hz(self):
        return self.sweep_high_hz - self.sweep_low_hz

    @property
    def slope_hz_per_s(self):
        return self.occupied_bandwidth_hz / self.symbol_s

    def generate(self, n, sample_rate_hz, rng):
        t = np.mod(np.arange(n) / sample_rate_hz, self.symbol_s)
        phase = 2 * np.pi * (
            self.sweep_low_hz * t + self.slope_hz_per_s / 2 * t ** 2)
        return np.exp(1j * phase)


@dataclass(frozen=True)
class BurstOqpsk:
    """Half-sine offset-QPSK chips with a constant envelope.

    `burst_duty` - fraction of the active span (or of each burst period)
        during which the transmitter is on
    `burst_period_s` - when given, bursts repeat with this period
    """
    chip_rate_hz: float
    burst_duty: float = 1.0
    burst_period_s: float = None
    kind = 'burst_oqpsk'

    def __post_init__(self):
        _positive(self.kind, chip_rate_hz=self.chip_rate_hz)
        _log_raise_if(
            not 0 < self.burst_duty <= 1,
            "burst_oqpsk: burst_duty must be in (0, 1]",
            extra=dict(burst_duty=self.burst_duty),
            exception_kls=ValidationError)
        if self.burst_period_s is not None:
            _positive(self.kind, burst_period_s=self.burst_period_s)

    @property
    def occupied_bandwidth_hz(self):
        return 1.2 * self.chip_rate_hz

    def generate(self, n, sample_rate_hz, rng):
        t = np.arange(n) / sample_rate_hz
        tc = 1.0 / self.chip_rate_hz
        # each rail carries every other chip, pulses last 2 chips
        n_rail = int(math.ceil(n / sample_rate_hz / (2 * tc))) + 2
        chips_i = rng.choice((-1.0, 1.0), size=n_rail)
        chips_q = rng.choice((-1.0, 1.0), size=n_rail)
        ti = t
        tq = t + tc
        ki = np.floor(ti / (2 * tc)).astype(int)
        kq = np.floor(tq / (2 * tc)).astype(int)
        pi_ = np.sin(np.pi * (ti - 2 * tc * ki) / (2 * tc))
        pq = np.sin(np.pi * (tq - 2 * tc * kq) / (2 * tc))
        s = chips_i[ki] * pi_ + 1j * chips_q[kq] * pq
        if self.burst_period_s is not None:
            on = np.mod(t, self.burst_period_s) < \
                self.burst_duty * self.burst_period_s
            s = s * on
        elif self.burst_duty < 1:
            s = s * (t < self.burst_duty * n / sample_rate_hz)
        return s


def srrc_taps(samples_per_symbol, span, rolloff):
    """Square-root raised-cosine pulse with unit energy.

    `samples_per_symbol` - integer oversampling of the pulse
    `span` - pulse length in symbols
    """
    n_taps = span * samples_per_symbol + 1
    t = (np.arange(n_taps) - (n_taps - 1) / 2) / samples_per_symbol
    beta = rolloff
    h = np.empty(n_taps)
    at_zero = np.isclose(t, 0)
    at_sing = np.isclose(np.abs(t), 1 / (4 * beta))
    rest = ~(at_zero | at_sing)
    tr = t[rest]
    h[rest] = (
        np.sin(np.pi * tr * (1 - beta))
        + 4 * beta * tr * np.cos(np.pi * tr * (1 + beta))
    ) / (np.pi * tr * (1 - (4 * beta * tr) ** 2))
    h[at_zero] = 1 + beta * (4 / np.pi - 1)
    h[at_sing] = (beta / np.sqrt(2)) * (
        (1 + 2 / np.pi) * np.sin(np.pi / (4 * beta))
        + (1 - 2 / np.pi) * np.cos(np.pi / (4 * beta)))
    return h / np.sqrt(np.sum(h ** 2))


def _constellation(order):
    if order == 4:
        pts = np.array([1 + 1j, -1 + 1j, -1 - 1j, 1 - 1j])
    else:
        levels = np.array([-3.0, -1.0, 1.0, 3.0])
        pts = (levels[:, None] + 1j * levels[None, :]).ravel()
    return pts / np.sqrt(np.mean(np.abs(pts) ** 2))


@dataclass(frozen=True)
class SrrcPskQam:
    """QPSK (order 4) or 16QAM (order 16) symbols shaped by a
    square-root raised-cosine pulse"""
    order: int
    symbol_rate_hz: float
    rolloff: float = 0.35
    kind = 'srrc'
    span = 8
    oversample = 8

    def __post_init__(self):
        _log_raise_if(
            self.order not in (4, 16), "srrc: order must be 4 or 16",
            extra=dict(order=self.order), exception_kls=ValidationError)
        _positive(self.kind, symbol_rate_hz=self.symbol_rate_hz)
        _log_raise_if(
            not 0 < self.rolloff <= 1, "srrc: rolloff must be in (0, 1]",
            extra=dict(rolloff=self.rolloff), exception_kls=ValidationError)

    @property
    def occupied_bandwidth_hz(self):
        return (1 + self.rolloff) * self.symbol_rate_hz

    def generate(self, n, sample_rate_hz, rng):
        sps = sample_rate_hz / self.symbol_rate_hz
        n_sym = int(math.ceil(n / sps)) + 2 * self.span + 2
        symbols = _constellation(self.order)[
            rng.integers(0, self.order, n_sym)]
        up = np.zeros(n_sym * self.oversample, dtype=np.complex128)
        up[::self.oversample] = symbols
        x = signal.convolve(
            up, srrc_taps(self.oversample, self.span, self.rolloff))
        ratio = Fraction(sps / self.oversample).limit_denominator(1000)
        if ratio != 1:
            x = signal.resample_poly(x, ratio.numerator, ratio.denominator)
        offset = int(round(self.span * sps))
        return x[offset:offset + n]


@dataclass(frozen=True)
class Am:
    """Double-sideband AM with carrier by a single audio tone"""
    mod_index: float
    audio_rate_hz: float
    kind = 'am'

    def __post_init__(self):
        _positive(self.kind, mod_index=self.mod_index,
                  audio_rate_hz=self.audio_rate_hz)

    @property
    def occupied_bandwidth_hz(self):
        return 2 * self.audio_rate_hz

    def generate(self, n, sample_rate_hz, rng):
        t = np.arange(n) / sample_rate_hz
        phi = rng.uniform(0, 2 * np.pi)
        return (1 + self.mod_index * np.cos(
            2 * np.pi * self.audio_rate_hz * t + phi)).astype(np.complex128)


WAVEFORM_KINDS = {
    k.kind: k for k in (Tone, Nbfm, Chirp, BurstOqpsk, SrrcPskQam, Am)}


def waveform_to_document(kind):
    doc = asdict(kind)
    doc['kind'] = kind.kind
    return doc


def waveform_from_document(doc):
    """Build a waveform kind from {"kind": name, <parameters>}"""
    if not isinstance(doc, JSONMapping):
        doc = JSONMapping(doc)
    name = doc.get_str('kind')
    if name not in WAVEFORM_KINDS:
        doc.schema_error('kind', "unknown waveform kind %r.  Expected one of"
                         " %s" % (name, sorted(WAVEFORM_KINDS)))
    kls = WAVEFORM_KINDS[name]
    params = [f for f in kls.__dataclass_fields__]
    doc.check_keys(['kind'] + params)
    kwargs = {}
    for p in params:
        if p == 'order':
            value = doc.get_int(p, None)
        else:
            value = doc.get_number(p, None)
        if value is not None:
            kwargs[p] = value
    try:
        return kls(**kwargs)
    except TypeError as err:
        doc.schema_error('kind', "missing waveform parameter: %s" % err)


def default_waveform(truth):
    """Protocol-shaped waveform whose occupied bandwidth equals the labeled
    bandwidth of `truth`"""
    bw = truth.bandwidth_hz
    label = truth.class_label
    if label is ModulationClass.TONE:
        return Tone()
    elif label is ModulationClass.NBFM:
        return Nbfm(deviation_hz=0.4 * bw, audio_rate_hz=0.1 * bw)
    elif label is ModulationClass.LORA:
        # spreading factor 7: 2**7 chips per symbol at a chip rate of bw
        return Chirp(-bw / 2, bw / 2, symbol_s=2 ** 7 / bw)
    elif label is ModulationClass.ZIGBEE:
        return BurstOqpsk(chip_rate_hz=bw / 1.2)
    elif label is ModulationClass.QAM16:
        return SrrcPskQam(16, symbol_rate_hz=bw / 1.35, rolloff=0.35)
    elif label is ModulationClass.AM:
        return Am(mod_index=0.5, audio_rate_hz=bw / 2)
    return SrrcPskQam(4, symbol_rate_hz=bw / 1.35, rolloff=0.35)


def active_mask(n, truth, sample_rate_hz):
    """Samples n with t_start <= n/F_s < t_end"""
    t = np.arange(n) / sample_rate_hz
    return (t >= truth.t_start_s) & (t < truth.t_end_s)


def synth_emitter(kind, truth, sample_rate_hz, rng, n_samples=None):
    """
    Returns s_k[n] for n in [0, n_samples): the waveform with unit average
    power over the active span [t_start_s, t_end_s) and zeros elsewhere.

    `n_samples` - defaults to the first sample after t_end_s
    """
    ld = dict(kind=kind.kind, class_label=truth.class_label.value,
              bandwidth_hz=truth.bandwidth_hz)
    occupied = kind.occupied_bandwidth_hz
    _log_raise_if(
        occupied > sample_rate_hz / 2,
        "waveform occupied bandwidth exceeds half the sample rate",
        extra=dict(occupied_bandwidth_hz=occupied,
                   sample_rate_hz=sample_rate_hz, **ld),
        exception_kls=ValidationError)
    if occupied > 0 and abs(occupied - truth.bandwidth_hz) > \
            0.2 * truth.bandwidth_hz:
        log.warning(
            "waveform bandwidth differs from the labeled bandwidth by more"
            " than 20%", extra=dict(occupied_bandwidth_hz=occupied, **ld))
    if n_samples is None:
        n_samples = int(math.ceil(truth.t_end_s * sample_rate_hz))
    active = active_mask(n_samples, truth, sample_rate_hz)
    n_active = int(np.count_nonzero(active))
    s = np.zeros(n_samples, dtype=np.complex128)
    if n_active == 0:
        log.warning("emitter has no active samples", extra=ld)
        return s
    body = np.asarray(kind.generate(n_active, sample_rate_hz, rng),
                      dtype=np.complex128)
    power = np.mean(np.abs(body) ** 2)
    if power == 0:
        _log_raise("waveform generated no energy", extra=ld,
                   exception_kls=ValidationError)
    s[active] = body / np.sqrt(power)
    return s
