import numpy as np
import pytest
from scipy import signal

from specsense import testing_tools as tt
from specsense.exceptions import SchemaError, ValidationError
from specsense.iqcore import EmitterTruth, ModulationClass
from specsense.scenesim import (
    Chirp, SceneSpec, SrrcPskQam, Tone, apply_impairments, triplet_scene,
    scene_from_document, synth_emitter, synth_scene, wiener_phase)
from specsense.scenesim.scene import band_power_db


def _truth(label='QPSK', f_c_hz=0.0, bandwidth_hz=1e5, t_start_s=0.0,
           t_end_s=1e-2, **kwargs):
    return EmitterTruth(label, f_c_hz, bandwidth_hz, t_start_s, t_end_s,
                        **kwargs)


def _occupied_99(x, fs):
    f, p = signal.welch(x, fs=fs, nperseg=1024, return_onesided=False)
    f, p = np.fft.fftshift(f), np.fft.fftshift(p)
    c = np.cumsum(p) / np.sum(p)
    lo = f[np.searchsorted(c, 0.005)]
    hi = f[np.searchsorted(c, 0.995)]
    return hi - lo


@tt.with_setup
def test_tone_is_constant_over_its_span(rng):
    truth = _truth('Tone', bandwidth_hz=1e3, t_start_s=0.0, t_end_s=1e-3)
    s = synth_emitter(Tone(), truth, 1e6, rng, n_samples=1500)
    np.testing.assert_array_equal(s[:1000], np.ones(1000))
    np.testing.assert_array_equal(s[1000:], np.zeros(500))


@tt.with_setup
def test_chirp_instantaneous_frequency_is_linear(rng):
    fs, bw, t_sym = 1e6, 200e3, 1e-3
    truth = _truth('LoRa', bandwidth_hz=bw, t_end_s=t_sym)
    s = synth_emitter(Chirp(-bw / 2, bw / 2, t_sym), truth, fs, rng)
    f_inst = np.diff(np.unwrap(np.angle(s))) * fs / (2 * np.pi)
    n = np.arange(len(f_inst))
    slope = np.polyfit(n / fs, f_inst, 1)[0]
    assert slope == pytest.approx(bw / t_sym, rel=0.01)


@tt.with_setup
def test_srrc_qpsk_occupied_bandwidth(rng):
    fs, rs = 1e6, 100e3
    kind = SrrcPskQam(4, symbol_rate_hz=rs, rolloff=0.35)
    truth = _truth('QPSK', bandwidth_hz=kind.occupied_bandwidth_hz,
                   t_end_s=0.2)
    s = synth_emitter(kind, truth, fs, rng)
    assert np.mean(np.abs(s) ** 2) == pytest.approx(1.0)
    # the 99% band of an ideal root raised cosine with rolloff 0.35 is
    # 1.169 Rs, a little inside the (1 + rolloff) Rs edge
    bw = _occupied_99(s, fs)
    assert bw == pytest.approx(1.169 * rs, rel=0.1)
    assert bw < 1.35 * rs * 1.05


def test_synth_emitter_rejects_oversized_waveforms():
    truth = _truth('QPSK', bandwidth_hz=4e5)
    with pytest.raises(ValidationError):
        synth_emitter(SrrcPskQam(4, 4e5), truth, 1e6,
                      np.random.default_rng(0))


@tt.with_setup
def test_identity_channel_only_rotates(rng):
    s = tt.complex_noise(1000, rng)
    y = apply_impairments(s, _truth(), 1e6, rng)
    ratio = y / s
    np.testing.assert_allclose(np.abs(ratio), 1.0, rtol=1e-12)
    np.testing.assert_allclose(ratio, ratio[0], rtol=1e-9)

    y = apply_impairments(s, _truth(phase0_rad=0.0), 1e6, rng)
    np.testing.assert_allclose(y, s, rtol=1e-12)


@tt.with_setup
def test_cfo_moves_the_periodogram_peak(rng):
    fs, n = 1e6, 10000
    y = apply_impairments(
        np.ones(n), _truth(cfo_hz=1e3), fs, rng)
    spec = np.abs(np.fft.fft(y))
    freqs = np.fft.fftfreq(n, 1 / fs)
    assert abs(freqs[np.argmax(spec)] - 1e3) <= fs / n


def test_wiener_phase_statistics():
    rng = np.random.default_rng(7)
    var, n, trials = 1e-6, 10000, 4000
    checkpoints = np.arange(999, n, 1000)
    theta = np.array([wiener_phase(n, var, rng)[checkpoints]
                      for _ in range(trials)])
    last = theta[:, -1]
    assert abs(np.mean(last)) < 0.01
    assert np.var(last) == pytest.approx(n * var, rel=0.1)
    slope = np.polyfit(checkpoints + 1, np.var(theta, axis=0), 1)[0]
    assert slope == pytest.approx(var, rel=0.1)

    with pytest.raises(ValidationError):
        wiener_phase(10, -1.0, rng)


def test_noise_only_scene_variance():
    spec = SceneSpec(sample_rate_hz=1e6, duration_s=0.1, noise_power=2.0,
                     rng_seed=3)
    rec, truths = synth_scene(spec)
    assert truths == []
    assert rec.n_samples == 100000
    assert np.var(rec.samples) == pytest.approx(2.0, rel=0.05)


def test_noiseless_tone_scene_is_the_tone():
    rec, _ = tt.noiseless_tone_scene(0.0)
    np.testing.assert_allclose(
        rec.samples, np.full(rec.n_samples, np.sqrt(1e-3)), rtol=1e-12)

    rec, _ = tt.noiseless_tone_scene(1e4)
    expected = tt.tone(rec.n_samples, 1e6, 1e4, amplitude=np.sqrt(1e-3))
    np.testing.assert_allclose(rec.samples, expected, rtol=1e-9, atol=1e-12)


def test_scene_determinism():
    a, _ = triplet_scene(rng_seed=11)
    b, _ = triplet_scene(rng_seed=11)
    c, _ = triplet_scene(rng_seed=12)
    assert a.samples.tobytes() == b.samples.tobytes()
    assert not np.array_equal(a.samples, c.samples)


def test_scene_linearity():
    fs = 2e6
    set_a = (_truth('QPSK', -4e5, 1e5, 0.0, 5e-3, snr_db=10),
             _truth('NBFM', 2e5, 5e4, 1e-3, 8e-3, snr_db=5))
    set_b = (_truth('AM', -1e5, 2e4, 2e-3, 9e-3, snr_db=12,
                    cfo_hz=300.0, phase_noise_var=1e-6,
                    taps=((0, 1), (3, 0.2j))), )

    def render(emitters):
        return synth_scene(SceneSpec(
            sample_rate_hz=fs, duration_s=1e-2, emitters=emitters,
            noise_power=0.0, rng_seed=5))[0].samples

    union = render(set_a + set_b)
    parts = render(set_a) + render(set_b)
    err = np.linalg.norm(union - parts) / np.linalg.norm(union)
    assert err < 1e-6


def test_in_band_snr_calibration():
    fs, bw, snr_db = 1e6, 2e5, 10.0
    emitter = _truth('QPSK', 1e5, bw, 0.0, 0.2, snr_db=snr_db)
    kwargs = dict(sample_rate_hz=fs, duration_s=0.2, noise_power=1.0,
                  rng_seed=21)
    r = synth_scene(SceneSpec(emitters=(emitter, ), **kwargs))[0].samples
    w = synth_scene(SceneSpec(**kwargs))[0].samples
    s = r - w
    n = len(w)
    freqs = np.fft.fftfreq(n, 1 / fs)
    band = np.abs(freqs - emitter.f_c_hz) <= bw / 2
    noise_in_band = np.sum(np.abs(np.fft.fft(w)[band]) ** 2) / n ** 2
    measured = 10 * np.log10(np.mean(np.abs(s) ** 2) / noise_in_band)
    assert abs(measured - snr_db) <= 0.5


def test_triplet_preset():
    rec, truths = triplet_scene()
    assert len(truths) == 3
    assert [t.class_label for t in truths] == [
        ModulationClass.ZIGBEE, ModulationClass.LORA, ModulationClass.NBFM]
    assert all(t.bandwidth_hz < 1e6 for t in truths)
    subbands = {int((t.f_c_hz + 2.5e6) // 1e6) for t in truths}
    assert len(subbands) == 3
    with pytest.raises(ValidationError):
        triplet_scene(sample_rate_hz=4e6)


def test_triplet_band_power_at_high_snr():
    rec, truths = triplet_scene(snr_db=40.0, rng_seed=2)
    fs = rec.sample_rate_hz
    for t in truths:
        emitter = band_power_db(rec.samples, fs, t.f_start_hz, t.f_end_hz)
        # subband 4, [1.5, 2.5] MHz, holds nothing
        empty = band_power_db(
            rec.samples, fs, 2e6 - t.bandwidth_hz / 2,
            2e6 + t.bandwidth_hz / 2)
        assert emitter - empty >= 30


@tt.with_setup
def test_band_power_of_white_noise(rng):
    fs = 1e6
    r = tt.noise_recording(2 ** 16, fs, rng, power=2.0)
    level = band_power_db(r.samples, fs, -2e5, 2e5)
    assert abs(level - 10 * np.log10(2.0 / fs)) < 0.5


def test_band_power_of_silent_band():
    rec, _ = synth_scene(SceneSpec(
        sample_rate_hz=1e6, duration_s=0.004, noise_power=0.0))
    with pytest.raises(ValidationError):
        band_power_db(rec.samples, 1e6, -1e5, 1e5)
    with pytest.raises(ValidationError):
        band_power_db(np.ones(1024), 1e6, 6e5, 7e5)


def test_scene_documents():
    spec = scene_from_document(
        {'preset': 'triplet', 'snr_db': 10, 'seed': 4})
    assert spec.rng_seed == 4
    assert spec.emitters[0].snr_db == 10
    assert scene_from_document({'preset': 'triplet'}, seed=9).rng_seed == 9

    doc = {
        'sample_rate_hz': 1e6, 'duration_s': 1e-3, 'noise_power': 0,
        'emitters': [{
            'class': 'Tone', 'f_c_hz': 0, 'bandwidth_hz': 1e3,
            't_start_s': 0, 't_end_s': 1e-3, 'waveform': {'kind': 'tone'}}]}
    spec = scene_from_document(doc)
    assert spec.waveforms == (Tone(), )

    doc['emitters'][0]['waveform'] = {'kind': 'sawtooth'}
    with pytest.raises(SchemaError, match=r"emitters\[0\]\.waveform\.kind"):
        scene_from_document(doc)
    with pytest.raises(SchemaError, match="emitters"):
        scene_from_document({'sample_rate_hz': 1e6, 'duration_s': 1e-3})


def test_scene_spec_validation():
    with pytest.raises(ValidationError):
        SceneSpec(sample_rate_hz=1e3, duration_s=1e-2)
    with pytest.raises(ValidationError):
        SceneSpec(sample_rate_hz=1e6, duration_s=1e-3,
                  emitters=(_truth(t_end_s=2e-3), ))
