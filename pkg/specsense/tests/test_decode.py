from types import SimpleNamespace

import numpy as np
import pytest

from specsense import testing_tools as tt
from specsense.decode import (
    CLASS_ORDER, DecodeParams, GridDistribution, RefinedDetection,
    active_span, decode_bandwidth, decode_time, denormalize,
    normalized_grid, normalize, refine_stub, two_point_distribution)
from specsense.decode import refine as envelope_refiner
from specsense.exceptions import DegenerateSegment, ValidationError
from specsense.iqcore import ModulationClass
from specsense.purifier import PurifiedSegment, PurifierParams, purify


def _one_hot(index, grid):
    probs = np.zeros(len(grid))
    probs[index] = 1
    return GridDistribution(probs, grid)


def _random_distribution(rng, grid):
    probs = rng.uniform(size=len(grid))
    return GridDistribution(probs / probs.sum(), grid)


def _segment(samples=None, n_start=5000, source_conf=0.8):
    if samples is None:
        samples = np.ones(100, dtype=complex)
    return PurifiedSegment(
        samples=samples, decim_factor=10, out_rate_hz=1e5, f_c_hz=2e5,
        f_lp_hz=4e4, n_start=n_start, source_conf=source_conf,
        n_samples=10 * len(samples), sample_rate_hz=1e6, start_time_s=0.25)


def test_grid_distribution_validation():
    grid = normalized_grid(4)
    with pytest.raises(ValidationError):
        GridDistribution([0.5, 0.5, 0.5, 0.0], grid)
    with pytest.raises(ValidationError):
        GridDistribution([1.5, -0.5, 0.0, 0.0], grid)
    with pytest.raises(ValidationError):
        GridDistribution([1.0, 0.0, 0.0], grid)
    with pytest.raises(ValidationError):
        GridDistribution([1.0, 0.0], [0.5, 0.2])
    with pytest.raises(ValidationError):
        normalized_grid(1)
    d = GridDistribution([0.25] * 4, grid)
    assert len(d) == 4
    assert not d.probs.flags.writeable


def test_decode_time():
    grid = normalized_grid(4)
    t_start, duration, t_end = decode_time(
        _one_hot(2, grid), _one_hot(1, grid), 1e-3)
    assert t_start == pytest.approx(2 / 3)
    assert duration == pytest.approx(1 / 3)
    assert t_end == 0.999

    grid = normalized_grid(64)
    uniform = GridDistribution(np.full(64, 1 / 64), grid)
    assert uniform.expectation() == pytest.approx(0.5, abs=1e-12)
    assert decode_bandwidth(uniform) == pytest.approx(0.5, abs=1e-12)

    with pytest.raises(ValidationError):
        decode_time(uniform, uniform, 2e-3)
    with pytest.raises(ValidationError):
        decode_time(uniform, uniform, 0.0)
    with pytest.raises(ValidationError):
        decode_time(uniform, _one_hot(1, normalized_grid(4)))


@tt.with_setup
def test_decode_matches_weighted_sums(rng):
    grid = normalized_grid(64)
    for trial in range(100):
        p_start = _random_distribution(rng, grid)
        p_dur = _random_distribution(rng, grid)
        p_bw = _random_distribution(rng, grid)
        t_start, duration, t_end = decode_time(p_start, p_dur, 1e-3)
        expected_start = sum(x * p for x, p in zip(grid, p_start.probs))
        expected_dur = sum(x * p for x, p in zip(grid, p_dur.probs))
        assert abs(t_start - expected_start) < 1e-12
        assert abs(duration - expected_dur) < 1e-12
        assert t_end == pytest.approx(min(0.999, t_start + duration))
        assert 0 <= t_start <= 1 and 0 <= duration <= 1 and t_end <= 0.999
        expected_bw = sum(x * p for x, p in zip(grid, p_bw.probs))
        assert abs(decode_bandwidth(p_bw) - expected_bw) < 1e-12


@tt.with_setup
def test_expectation_is_linear(rng):
    grid = normalized_grid(64)
    for trial in range(50):
        p = _random_distribution(rng, grid)
        q = _random_distribution(rng, grid)
        lam = float(rng.uniform())
        mix = GridDistribution(lam * p.probs + (1 - lam) * q.probs, grid)
        assert abs(mix.expectation() - (
            lam * p.expectation() + (1 - lam) * q.expectation())) < 1e-12


def test_decode_bandwidth_one_hot():
    grid = normalized_grid(5)
    assert decode_bandwidth(_one_hot(1, grid)) == 0.25


@tt.with_setup
def test_two_point_distribution(rng):
    grid = normalized_grid(64)
    for x in np.concatenate([[0.0, 1.0, grid[5]], rng.uniform(size=100)]):
        d = two_point_distribution(x, grid)
        assert abs(d.expectation() - x) < 1e-12
        assert np.count_nonzero(d.probs) <= 2
    with pytest.raises(ValidationError):
        two_point_distribution(1.5, grid)


def test_refined_detection_validation():
    RefinedDetection(0.0, 0.999, 1.0)
    for bad in (dict(t_start_norm=0.5, t_end_norm=0.5),
                dict(t_end_norm=1.0), dict(bandwidth_norm=0.0),
                dict(center_offset_norm=0.6),
                dict(class_probs=(1.0, 0.0))):
        kw = dict(t_start_norm=0.1, t_end_norm=0.9, bandwidth_norm=0.5)
        kw.update(bad)
        with pytest.raises(ValidationError):
            RefinedDetection(**kw)
    assert RefinedDetection(0.1, 0.9, 0.5).class_label() is \
        ModulationClass.UNKNOWN
    probs = [0.0] * len(CLASS_ORDER)
    probs[CLASS_ORDER.index(ModulationClass.LORA)] = 1.0
    assert RefinedDetection(0.1, 0.9, 0.5, class_probs=probs).class_label() \
        is ModulationClass.LORA


def test_denormalize_anchors():
    seg = _segment()
    det = denormalize(RefinedDetection(0.0, 0.5, 1.0), seg)
    assert det.t_start_s == 0.25 + 5000 / 1e6
    assert det.t_end_s == pytest.approx(0.25 + 5000 / 1e6 + 0.5 * 1e-3)
    assert det.bandwidth_hz == 1e5
    assert det.f_c_hz == 2e5
    assert det.confidence == 0.8
    assert det.refined
    assert det.class_label is ModulationClass.UNKNOWN
    det = denormalize(RefinedDetection(
        0.0, 0.5, 0.5, center_offset_norm=0.1), seg)
    assert det.f_c_hz == pytest.approx(2.1e5)
    broken = SimpleNamespace(
        sample_rate_hz=1e6, out_rate_hz=1e5, decim_factor=3, n_samples=100,
        n_start=0, t_start_s=0.0, duration_s=1e-4, f_c_hz=0.0,
        source_conf=1.0)
    with pytest.raises(ValidationError):
        denormalize(RefinedDetection(0.0, 0.5, 0.5), broken)


@tt.with_setup
def test_normalize_round_trip(rng):
    seg = _segment()
    for trial in range(100):
        t0 = float(rng.uniform(0, 0.5))
        refined = RefinedDetection(
            t_start_norm=t0, t_end_norm=float(rng.uniform(t0 + 0.01, 0.999)),
            bandwidth_norm=float(rng.uniform(0.01, 1.0)),
            center_offset_norm=float(rng.uniform(-0.5, 0.5)))
        back = normalize(denormalize(refined, seg), seg)
        for name in ('t_start_norm', 't_end_norm', 'bandwidth_norm',
                     'center_offset_norm'):
            assert abs(getattr(back, name) - getattr(refined, name)) < 1e-9


def test_refine_constant_segment():
    n = 640
    seg = _segment(np.exp(1j * 0.3) * np.ones(n))
    refined = refine_stub(seg)
    cell = 1 / 63
    assert refined.t_start_norm <= cell
    assert refined.t_end_norm >= 0.999 - cell
    assert refined.t_end_norm <= 0.999
    assert refined.class_probs is None


@tt.with_setup
def test_refine_burst_in_middle_third(rng):
    n = 600
    u = tt.complex_noise(n, rng, power=1e-4)
    u[200:400] += np.exp(1j * rng.uniform(0, 2 * np.pi, 200))
    assert active_span(u, 32)[0] == pytest.approx(200, abs=16)
    refined = refine_stub(_segment(u), DecodeParams())
    cell = 1 / 63
    assert refined.t_start_norm == pytest.approx(1 / 3, abs=1.5 * cell)
    assert refined.t_end_norm == pytest.approx(2 / 3, abs=1.5 * cell)
    assert refine_stub(_segment(u)) == refined


@tt.with_setup
def test_refine_bandwidth_of_purified_signal(rng):
    fs, n, bw = 1e6, 2 ** 15, 1e5
    spectrum = np.fft.fft(tt.complex_noise(n, rng))
    spectrum[np.abs(np.fft.fftfreq(n, 1 / fs)) > bw / 2] = 0
    f_c = -2e5
    x = np.fft.ifft(spectrum) * np.exp(2j * np.pi * f_c * np.arange(n) / fs)
    r = tt.recording(x, fs)
    p = tt.proposal_for(f_c, bw, 0.0, n / fs, confidence=0.5)
    seg = purify(r, p, PurifierParams())
    refined = envelope_refiner.refine(seg, DecodeParams())
    assert refined.bandwidth_norm * seg.out_rate_hz == pytest.approx(
        bw, rel=0.25)
    assert abs(refined.center_offset_norm) < 0.05
    det = denormalize(refined, seg)
    assert det.f_c_hz == pytest.approx(f_c, abs=0.05 * bw)


def test_refine_rejects_bad_segments():
    with pytest.raises(ValidationError):
        refine_stub(_segment(np.zeros(100, dtype=complex)))
    with pytest.raises(DegenerateSegment):
        refine_stub(_segment(np.ones(5, dtype=complex)))
    with pytest.raises(ValidationError):
        DecodeParams(eps_clamp=0.01)
    with pytest.raises(ValidationError):
        DecodeParams(smooth_samples=0)
