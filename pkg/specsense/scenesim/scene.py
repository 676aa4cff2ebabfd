"""
Multi-emitter scenes:

    r[n] = sum_k impaired(s_k)[n] exp(j 2 pi f_k n / F_s) + interferers + w[n]

Every emitter draws from its own random stream, keyed by the scene seed and
a digest of the emitter record, so the same emitter renders identically in
any scene built with the same seed.
"""
import math
import zlib
from dataclasses import dataclass

import numpy as np
from scipy import signal
import simplejson

from . import log
from .impairments import apply_impairments
from .waveforms import (
    synth_emitter, default_waveform, waveform_from_document,
    waveform_to_document, active_mask, BurstOqpsk, Chirp, Nbfm)
from specsense.configuration import JSONMapping, load_document
from specsense.exceptions import _log_raise, _log_raise_if, ValidationError
from specsense.iqcore import EmitterTruth, IqRecording, ModulationClass
from specsense.iqcore.annotations import (
    truth_from_document, truth_to_document, EMITTER_FIELDS)

MIN_SCENE_SAMPLES = 64
_NOISE_STREAM = 0x6e6f697365


@dataclass(frozen=True)
class SceneSpec:
    """
    `noise_power` - variance of the complex white noise.  Zero gives a
        noiseless scene, in which case emitter SNRs are relative to a
        reference noise power of 1
    `waveforms` - optional waveform kinds aligned with `emitters`; None
        entries use default_waveform(truth)
    `interferer_waveforms` - the same for `interferers`
    """
    sample_rate_hz: float
    duration_s: float
    emitters: tuple = ()
    noise_power: float = 1.0
    interferers: tuple = ()
    rng_seed: int = 0
    waveforms: tuple = ()
    interferer_waveforms: tuple = ()

    def __post_init__(self):
        for name in ('emitters', 'interferers', 'waveforms',
                     'interferer_waveforms'):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        ld = dict(sample_rate_hz=self.sample_rate_hz,
                  duration_s=self.duration_s)
        _log_raise_if(
            not self.sample_rate_hz > 0, "sample_rate_hz must be positive",
            extra=ld, exception_kls=ValidationError)
        _log_raise_if(
            not self.duration_s > 0, "duration_s must be positive",
            extra=ld, exception_kls=ValidationError)
        _log_raise_if(
            self.n_samples < MIN_SCENE_SAMPLES,
            "a scene needs at least %s samples" % MIN_SCENE_SAMPLES,
            extra=ld, exception_kls=ValidationError)
        _log_raise_if(
            not self.noise_power >= 0, "noise_power must be non-negative",
            extra=dict(noise_power=self.noise_power),
            exception_kls=ValidationError)
        _log_raise_if(
            not 0 <= int(self.rng_seed) < 2 ** 64,
            "rng_seed must be a 64-bit unsigned integer",
            extra=dict(rng_seed=self.rng_seed), exception_kls=ValidationError)
        for group, kinds in ((self.emitters, self.waveforms),
                             (self.interferers, self.interferer_waveforms)):
            _log_raise_if(
                kinds and len(kinds) != len(group),
                "waveforms must align with their emitters",
                extra=ld, exception_kls=ValidationError)
            for i, truth in enumerate(group):
                _log_raise_if(
                    truth.t_start_s < 0 or truth.t_end_s > self.duration_s,
                    "emitter %s span does not fit in [0, duration_s]" % i,
                    extra=dict(t_start_s=truth.t_start_s,
                               t_end_s=truth.t_end_s, **ld),
                    exception_kls=ValidationError)
                truth.check_band(self.sample_rate_hz)

    @property
    def n_samples(self):
        return int(round(self.duration_s * self.sample_rate_hz))

    @property
    def reference_noise_power(self):
        return self.noise_power if self.noise_power > 0 else 1.0

    def waveform_for(self, index, interferer=False):
        kinds = self.interferer_waveforms if interferer else self.waveforms
        group = self.interferers if interferer else self.emitters
        kind = kinds[index] if kinds else None
        return kind if kind is not None else default_waveform(group[index])


def emitter_stream(seed, truth, kind):
    """The random generator owned by one emitter of a scene"""
    record = simplejson.dumps(
        dict(truth=truth_to_document(truth), waveform=waveform_to_document(
            kind)), sort_keys=True)
    digest = zlib.crc32(record.encode('utf8'))
    return np.random.default_rng(np.random.SeedSequence([int(seed), digest]))


def render_emitter(truth, kind, spec):
    """One impaired, power-calibrated, frequency-shifted emitter"""
    fs = spec.sample_rate_hz
    n = spec.n_samples
    rng = emitter_stream(spec.rng_seed, truth, kind)
    s = synth_emitter(kind, truth, fs, rng, n_samples=n)
    s = apply_impairments(s, truth, fs, rng)
    active = active_mask(n, truth, fs)
    power = np.mean(np.abs(s[active]) ** 2) if active.any() else 0.0
    if power > 0:
        # in-band SNR: signal power over the noise power inside bandwidth_hz
        target = 10 ** (truth.snr_db / 10) * spec.reference_noise_power \
            * truth.bandwidth_hz / fs
        s = s * np.sqrt(target / power)
    return s * np.exp(2j * np.pi * truth.f_c_hz * np.arange(n) / fs)


def synth_scene(spec):
    """
    Returns (IqRecording, list of EmitterTruth).  Interferers are rendered
    but left out of the returned truth list.
    """
    n = spec.n_samples
    r = np.zeros(n, dtype=np.complex128)
    for group, is_interferer in ((spec.emitters, False),
                                 (spec.interferers, True)):
        for i, truth in enumerate(group):
            kind = spec.waveform_for(i, interferer=is_interferer)
            r += render_emitter(truth, kind, spec)
    if spec.noise_power > 0:
        rng = np.random.default_rng(
            np.random.SeedSequence([int(spec.rng_seed), _NOISE_STREAM]))
        sigma = np.sqrt(spec.noise_power / 2)
        r += sigma * (rng.standard_normal(n) + 1j * rng.standard_normal(n))
    log.info("synthesized scene", extra=dict(
        n_samples=n, n_emitters=len(spec.emitters),
        n_interferers=len(spec.interferers), seed=spec.rng_seed))
    rec = IqRecording(
        samples=r, sample_rate_hz=spec.sample_rate_hz,
        label='scene-seed%s' % spec.rng_seed)
    return rec, list(spec.emitters)


def triplet_spec(sample_rate_hz=5e6, snr_db=20.0, rng_seed=0, duration_s=0.02,
                 noise_power=1.0, subband_hz=1e6):
    """
    A bursty O-QPSK packet, a repeating chirp and a continuous NB-FM trace,
    each centred in its own subband of width `subband_hz` counted from
    -F_s/2 (subbands 1, 2 and 3).
    """
    _log_raise_if(
        sample_rate_hz < 5e6, "the three-emitter preset needs F_s >= 5 MHz",
        extra=dict(sample_rate_hz=sample_rate_hz),
        exception_kls=ValidationError)
    scale = duration_s / 0.02
    f_min = -sample_rate_hz / 2

    def center(k):
        return f_min + (k + 0.5) * subband_hz

    emitters = (
        EmitterTruth(
            ModulationClass.ZIGBEE, f_c_hz=center(1), bandwidth_hz=600e3,
            t_start_s=0.004 * scale, t_end_s=0.009 * scale, snr_db=snr_db),
        EmitterTruth(
            ModulationClass.LORA, f_c_hz=center(2), bandwidth_hz=250e3,
            t_start_s=0.002 * scale, t_end_s=0.014 * scale, snr_db=snr_db),
        EmitterTruth(
            ModulationClass.NBFM, f_c_hz=center(3), bandwidth_hz=150e3,
            t_start_s=0.0, t_end_s=duration_s, snr_db=snr_db),
    )
    waveforms = (
        BurstOqpsk(chip_rate_hz=500e3),
        Chirp(-125e3, 125e3, symbol_s=0.512e-3),
        Nbfm(deviation_hz=60e3, audio_rate_hz=15e3),
    )
    return SceneSpec(
        sample_rate_hz=sample_rate_hz, duration_s=duration_s,
        emitters=emitters, noise_power=noise_power, rng_seed=rng_seed,
        waveforms=waveforms)


def triplet_scene(sample_rate_hz=5e6, snr_db=20.0, rng_seed=0, **kwargs):
    """Returns (IqRecording, truths) of the three-emitter preset"""
    return synth_scene(triplet_spec(
        sample_rate_hz=sample_rate_hz, snr_db=snr_db, rng_seed=rng_seed,
        **kwargs))


_SCENE_FIELDS = (
    'sample_rate_hz', 'duration_s', 'noise_power', 'seed', 'emitters',
    'interferers')
_PRESET_FIELDS = (
    'preset', 'sample_rate_hz', 'duration_s', 'noise_power', 'seed', 'snr_db')


def _emitters_with_waveforms(doc, key):
    truths, kinds = [], []
    seq = doc.get_sequence(key, default=())
    for i in range(len(seq)):
        item = seq[i]
        if not isinstance(item, JSONMapping):
            seq.schema_error(i, "expected an object")
        truths.append(truth_from_document(
            item, allowed=EMITTER_FIELDS + ('waveform', )))
        wf = item.get_mapping('waveform', None)
        kinds.append(None if wf is None else waveform_from_document(wf))
    if not any(k is not None for k in kinds):
        kinds = []
    return truths, kinds


def scene_from_document(doc, seed=None):
    """
    Build a SceneSpec from a scene document.  Either

        {"sample_rate_hz", "duration_s", "noise_power"?, "seed"?,
         "emitters": [<annotation fields>, "waveform"?: {"kind", ...}],
         "interferers"?: [...]}

    or the preset form {"preset": "triplet", "sample_rate_hz"?, ...}.

    `seed` - when given, overrides the seed of the document
    """
    if not isinstance(doc, JSONMapping):
        doc = JSONMapping(doc)
    if 'preset' in doc:
        doc.check_keys(_PRESET_FIELDS)
        preset = doc.get_str('preset')
        if preset != 'triplet':
            doc.schema_error('preset', "unknown preset %r" % preset)
        return triplet_spec(
            sample_rate_hz=doc.get_number('sample_rate_hz', 5e6),
            snr_db=doc.get_number('snr_db', 20.0),
            duration_s=doc.get_number('duration_s', 0.02),
            noise_power=doc.get_number('noise_power', 1.0),
            rng_seed=seed if seed is not None else doc.get_int('seed', 0))
    doc.check_keys(_SCENE_FIELDS)
    emitters, kinds = _emitters_with_waveforms(doc, 'emitters')
    interferers, ikinds = _emitters_with_waveforms(doc, 'interferers')
    if 'emitters' not in doc:
        doc.schema_error('emitters', "missing required field")
    return SceneSpec(
        sample_rate_hz=doc.get_number('sample_rate_hz'),
        duration_s=doc.get_number('duration_s'),
        emitters=emitters,
        noise_power=doc.get_number('noise_power', 1.0),
        interferers=interferers,
        rng_seed=seed if seed is not None else doc.get_int('seed', 0),
        waveforms=kinds,
        interferer_waveforms=ikinds)


def load_scene(path, seed=None):
    spec = scene_from_document(load_document(path), seed=seed)
    log.debug("loaded scene document", extra=dict(
        path=path, n_emitters=len(spec.emitters)))
    return spec


def band_power_db(samples, sample_rate_hz, f_lo_hz, f_hi_hz, nperseg=1024):
    """Mean Welch power spectral density in dB over [f_lo_hz, f_hi_hz]"""
    samples = np.asarray(samples)
    freqs, psd = signal.welch(
        samples, fs=sample_rate_hz, nperseg=min(nperseg, len(samples)),
        return_onesided=False, detrend=False)
    sel = (freqs >= f_lo_hz) & (freqs <= f_hi_hz)
    ld = dict(f_lo_hz=f_lo_hz, f_hi_hz=f_hi_hz)
    if not sel.any():
        _log_raise("empty frequency band", extra=ld,
                   exception_kls=ValidationError)
    power = float(np.mean(psd[sel]))
    _log_raise_if(
        not power > 0, "no power in band", extra=ld,
        exception_kls=ValidationError)
    return 10 * math.log10(power)
