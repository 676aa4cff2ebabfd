"""
Small synthetic inputs for tests: noise, tones and single-emitter scenes
"""
import numpy as np

from specsense.iqcore import EmitterTruth, IqRecording, ModulationClass
from specsense.proposer import BwTier, Proposal
from specsense.scenesim import SceneSpec, Tone, synth_scene


def complex_noise(n, rng, power=1.0):
    """Circular complex white Gaussian noise of variance `power`"""
    sigma = np.sqrt(power / 2)
    return sigma * (rng.standard_normal(n) + 1j * rng.standard_normal(n))


def tone(n, sample_rate_hz, f_hz, amplitude=1.0, phase=0.0):
    k = np.arange(n)
    return amplitude * np.exp(1j * (2 * np.pi * f_hz * k / sample_rate_hz
                                    + phase))


def recording(samples, sample_rate_hz, **kwargs):
    return IqRecording(samples=samples, sample_rate_hz=sample_rate_hz,
                       **kwargs)


def noise_recording(n, sample_rate_hz, rng, power=1.0):
    return recording(complex_noise(n, rng, power), sample_rate_hz)


def proposal_for(f_c_hz, bandwidth_hz, t_start_s, t_end_s, confidence=1.0):
    return Proposal(
        t_start_s=t_start_s, t_end_s=t_end_s,
        f_start_hz=f_c_hz - bandwidth_hz / 2,
        f_end_hz=f_c_hz + bandwidth_hz / 2,
        bw_tier=BwTier.for_bandwidth(bandwidth_hz), confidence=confidence)


def random_proposal(rng, duration_s=1.0, f_span_hz=1e6):
    t0, t1 = np.sort(rng.uniform(0, duration_s, 2))
    f0, f1 = np.sort(rng.uniform(-f_span_hz / 2, f_span_hz / 2, 2))
    return Proposal(
        t_start_s=t0, t_end_s=t1 + 1e-6, f_start_hz=f0, f_end_hz=f1 + 1.0,
        bw_tier=BwTier.NARROW, confidence=float(rng.uniform()))


def single_emitter_scene(class_label, f_c_hz, bandwidth_hz, t_start_s,
                         t_end_s, sample_rate_hz=5e6, duration_s=0.02,
                         snr_db=15.0, seed=0, noise_power=1.0,
                         waveform=None):
    """(IqRecording, [EmitterTruth]) with one emitter in white noise"""
    truth = EmitterTruth(
        ModulationClass.parse(class_label), f_c_hz=f_c_hz,
        bandwidth_hz=bandwidth_hz, t_start_s=t_start_s, t_end_s=t_end_s,
        snr_db=snr_db)
    spec = SceneSpec(
        sample_rate_hz=sample_rate_hz, duration_s=duration_s,
        emitters=(truth, ), noise_power=noise_power, rng_seed=seed,
        waveforms=(waveform, ) if waveform is not None else ())
    return synth_scene(spec)


def noiseless_tone_scene(f_c_hz, sample_rate_hz=1e6, duration_s=1e-3,
                         seed=0):
    truth = EmitterTruth(
        ModulationClass.TONE, f_c_hz=f_c_hz, bandwidth_hz=1e3,
        t_start_s=0.0, t_end_s=duration_s, snr_db=0.0, phase0_rad=0.0)
    spec = SceneSpec(
        sample_rate_hz=sample_rate_hz, duration_s=duration_s,
        emitters=(truth, ), noise_power=0.0, rng_seed=seed,
        waveforms=(Tone(), ))
    return synth_scene(spec)
