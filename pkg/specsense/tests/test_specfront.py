import os

import numpy as np
import pytest

from specsense import testing_tools as tt
from specsense.exceptions import ValidationError
from specsense.specfront import (
    Spectrogram, SpectrogramKind, StftParams, build_warp_grid,
    dump_spectrogram, grid_for_sample_rate, hz_to_warp, load_spectrogram,
    log_magnitude, log_template, render_spectrogram, stft, to_graymap,
    uniform_grid, unitary_dft, warp_spectrogram, warp_to_hz)


def _linear(values, fs):
    m = values.shape[1]
    return Spectrogram(
        values=values, frame_times_s=np.arange(values.shape[0]) * 1e-3,
        freq_axis_hz=(np.arange(m) - m // 2) * fs / m,
        kind=SpectrogramKind.LINEAR, sample_rate_hz=fs, window_s=1e-3)


def test_unitary_dft_impulse_and_dc():
    delta = np.zeros(8)
    delta[0] = 1
    np.testing.assert_allclose(unitary_dft(delta), np.full(8, 8 ** -0.5))
    R = unitary_dft(np.ones(8))
    assert R[0] == pytest.approx(np.sqrt(8))
    assert np.max(np.abs(R[1:])) < 1e-12
    with pytest.raises(ValidationError):
        unitary_dft([])


@tt.with_setup
def test_unitary_dft_matches_direct_sum(rng):
    r = tt.complex_noise(64, rng)
    R = unitary_dft(r)
    np.testing.assert_allclose(R, tt.oracles.naive_dft(r), atol=1e-9)
    energy = np.sum(np.abs(r) ** 2)
    assert abs(np.sum(np.abs(R) ** 2) - energy) / energy < 1e-9


def test_stft_dc_tone_rect_window():
    params = StftParams(window='rect', n_window=64, hop=16, n_fft=64)
    X = stft(tt.recording(np.ones(256), 1e3), params)
    mags = np.abs(X.values)
    center = 32
    assert X.freq_axis_hz[center] == 0
    np.testing.assert_allclose(mags[:, center], 64)
    assert np.max(np.delete(mags, center, axis=1)) < 1e-9


def test_stft_bin_aligned_tone():
    fs, m, b = 1024.0, 128, 9
    params = StftParams(window='hann', n_window=128, hop=32, n_fft=m)
    x = tt.tone(1024, fs, b * fs / m)
    X = stft(tt.recording(x, fs), params)
    peaks = np.argmax(np.abs(X.values), axis=1)
    assert np.all(X.freq_axis_hz[peaks] == b * fs / m)


@tt.with_setup
def test_stft_matches_direct_sum(rng):
    params = StftParams(window='hamming', n_window=48, hop=20, n_fft=64)
    x = tt.complex_noise(500, rng)
    rec = tt.recording(x, 2e3, start_time_s=1.5)
    X = stft(rec, params)
    n_frames = (500 - 48) // 20 + 1
    assert X.n_frames == n_frames == params.n_frames(500)
    np.testing.assert_allclose(
        X.frame_times_s, 1.5 + np.arange(n_frames) * 20 / 2e3)
    g = params.taper()
    tau = np.arange(48)
    for frame in (0, 7, n_frames - 1):
        seg = x[frame * 20:frame * 20 + 48] * g
        direct = np.array([
            np.sum(seg * np.exp(-2j * np.pi * m * tau / 64))
            for m in range(64)])
        np.testing.assert_allclose(
            X.values[frame], np.fft.fftshift(direct), atol=1e-6)
    with pytest.raises(ValidationError):
        stft(tt.recording(x[:40], 2e3), params)


def test_stft_params_validation():
    with pytest.raises(ValidationError):
        StftParams(n_window=1024, n_fft=1000)
    with pytest.raises(ValidationError):
        StftParams(n_window=64, hop=65, n_fft=64)
    with pytest.raises(ValidationError):
        StftParams(window='kaiser')


@tt.with_setup
def test_log_magnitude(rng):
    eps = 1e-10
    values = np.zeros((2, 3), dtype=complex)
    values[1, 1] = 1 - eps
    S = log_magnitude(_linear(values, 3.0), eps)
    assert S.values[0, 0] == np.log(eps)
    assert abs(S.values[1, 1]) < 1e-12
    X = _linear(tt.complex_noise(400, rng).reshape(20, 20), 20.0)
    S = log_magnitude(X)
    order = np.argsort(np.abs(X.values).ravel())
    assert np.all(np.diff(S.values.ravel()[order]) >= 0)
    with pytest.raises(ValidationError):
        log_magnitude(X, eps=0)


def test_log_template_endpoints_and_symmetry():
    b, bt = log_template(128, 1.0, 4.0)
    assert len(b) == 64 and len(bt) == 128
    assert b[0] == 0 and b[63] == 1
    assert bt[0] == 0 and bt[127] == 1
    assert bt[63] == bt[64] == 0.5
    assert np.max(np.abs(bt + bt[::-1] - 1)) < 1e-12
    assert np.all(np.diff(bt) >= 0)


def test_build_warp_grid():
    grid = build_warp_grid(0.0, 4e6, 4, 128, 1.0, 4.0)
    assert grid.delta == 3 / 63
    assert grid.b_sub_hz == 1e6
    assert grid.n_points == 512
    assert grid.points_hz[3 * 128 + 63] == 3.5e6
    assert np.all(np.diff(grid.points_hz) >= 0)
    for k in range(4):
        sub = grid.points_hz[k * 128:(k + 1) * 128]
        assert sub[0] == k * 1e6
        assert sub[-1] == (k + 1) * 1e6
        assert np.all((sub >= k * 1e6) & (sub <= (k + 1) * 1e6))
    with pytest.raises(ValidationError):
        build_warp_grid(0.0, 4e6, 4, 127)
    with pytest.raises(ValidationError):
        build_warp_grid(0.0, 4e6, 4, 128, 4.0, 4.0)
    with pytest.raises(ValidationError):
        build_warp_grid(0.0, 4e6, 0, 128)


def test_grid_orientations():
    edge = build_warp_grid(0.0, 1e6, 1, 128, template='edge')
    center = build_warp_grid(0.0, 1e6, 1, 128, template='center')
    steps_edge = np.diff(edge.points_hz)
    steps_center = np.diff(center.points_hz)
    # the verbatim template is densest at the subband edges, the mirrored
    # one at the centre
    assert steps_edge[0] < steps_edge[62]
    assert steps_center[62] < steps_center[0]
    assert steps_edge[63] == steps_center[63] == 0
    uniform = uniform_grid(0.0, 1e6, 1, 128)
    np.testing.assert_allclose(np.diff(uniform.points_hz), 1e6 / 128)


@tt.with_setup
def test_warp_coordinates_round_trip(rng):
    grid = grid_for_sample_rate(5e6)
    assert warp_to_hz(grid, 0) == grid.f_min_hz == -2.5e6
    assert warp_to_hz(grid, grid.n_points - 1) == pytest.approx(2.5e6)
    f = rng.uniform(-2.5e6, 2.5e6, 1000)
    back = warp_to_hz(grid, hz_to_warp(grid, f))
    np.testing.assert_allclose(back, f, rtol=0, atol=1e-9 * 5e6)
    idx = rng.uniform(0, grid.n_points - 1, 1000)
    assert np.all(np.diff(warp_to_hz(grid, np.sort(idx))) >= 0)
    # grid points themselves, duplicates included
    np.testing.assert_allclose(
        warp_to_hz(grid, hz_to_warp(grid, grid.points_hz)), grid.points_hz,
        rtol=0, atol=1e-9 * 5e6)
    with pytest.raises(ValidationError):
        hz_to_warp(grid, 2.6e6)
    with pytest.raises(ValidationError):
        warp_to_hz(grid, grid.n_points)


@tt.with_setup
def test_warp_on_linear_nodes_is_log_magnitude(rng):
    fs, m = 1e6, 1024
    X = _linear(tt.complex_noise(5 * m, rng).reshape(5, m), fs)
    grid = build_warp_grid(-fs / 2, fs, 8, 128, template='uniform')
    np.testing.assert_allclose(grid.points_hz, X.freq_axis_hz, rtol=0,
                               atol=1e-6)
    S = warp_spectrogram(X, grid)
    assert S.kind is SpectrogramKind.WARPED
    np.testing.assert_array_equal(S.values, log_magnitude(X).values)
    np.testing.assert_array_equal(S.frame_times_s, X.frame_times_s)
    np.testing.assert_array_equal(S.freq_axis_hz, grid.points_hz)


def test_warp_reproduces_affine_ramps():
    fs, m = 5e6, 512
    axis = (np.arange(m) - m // 2) * fs / m

    def ramp(f):
        return 1 + 10 * (f + fs / 2) / fs
    X = _linear(np.tile(ramp(axis), (3, 1)).astype(complex), fs)
    grid = build_warp_grid(-2e6, 3e6, 3, 128)
    S = warp_spectrogram(X, grid, eps=1e-10)
    expected = np.log(ramp(grid.points_hz) + 1e-10)
    np.testing.assert_allclose(S.values, np.tile(expected, (3, 1)),
                               rtol=0, atol=1e-9)


@tt.with_setup
def test_warp_matches_scalar_interpolation(rng):
    grid = grid_for_sample_rate(5e6, m_sub=64)
    for trial in range(10):
        X = _linear(tt.complex_noise(4 * 256, rng).reshape(4, 256), 5e6)
        for mode in ('complex', 'magnitude'):
            S = warp_spectrogram(X, grid, interpolation=mode)
            expected = tt.oracles.scalar_interp_warp(
                X, grid, interpolation=mode)
            assert np.max(np.abs(S.values - expected)) < 1e-9


def test_warp_rejects_bad_inputs():
    X = _linear(np.ones((2, 64), dtype=complex), 1e6)
    with pytest.raises(ValidationError):
        warp_spectrogram(X, build_warp_grid(-1e6, 2e6, 2, 16))
    with pytest.raises(ValidationError):
        warp_spectrogram(log_magnitude(X).with_values(
            np.zeros((2, 64)), kind=SpectrogramKind.WARPED),
            grid_for_sample_rate(1e6, m_sub=16))
    with pytest.raises(ValidationError):
        warp_spectrogram(X, grid_for_sample_rate(1e6, m_sub=16),
                         interpolation='cubic')


def _band_noise(rng, n, fs, f_c, bw, snr_db):
    spectrum = np.fft.fft(tt.complex_noise(n, rng))
    freqs = np.fft.fftfreq(n, 1 / fs)
    spectrum[np.abs(freqs) > bw / 2] = 0
    s = np.fft.ifft(spectrum)
    s *= np.sqrt(10 ** (snr_db / 10) * bw / fs / np.mean(np.abs(s) ** 2))
    return s * np.exp(2j * np.pi * f_c * np.arange(n) / fs)


def _footprint(S):
    power = np.mean(np.exp(2 * S.values), axis=0)
    return np.count_nonzero(power > 4 * np.median(power))


@tt.with_setup
def test_narrowband_footprint_amplification(rng):
    fs, n, bw = 5e6, 2 ** 16, 40e3
    params = StftParams(n_fft=8192)
    warped = grid_for_sample_rate(fs)
    canvas = uniform_grid(warped.f_min_hz, fs, warped.n_sub, warped.m_sub)
    edges = warped.f_min_hz + warped.b_sub_hz * np.arange(1, warped.n_sub)
    counts_warped, counts_linear = [], []
    for trial in range(20):
        f_c = rng.choice(edges) + rng.uniform(-15e3, 15e3)
        x = _band_noise(rng, n, fs, f_c, bw, 20.0) + \
            tt.complex_noise(n, rng)
        X = stft(tt.recording(x, fs), params)
        counts_warped.append(_footprint(warp_spectrogram(X, warped)))
        counts_linear.append(_footprint(warp_spectrogram(X, canvas)))
    assert min(counts_linear) > 0
    assert np.mean(counts_warped) >= 1.5 * np.mean(counts_linear)


@tt.with_setup
def test_narrowband_footprint_mid_subband(rng):
    """The edge template is sparse at subband centres; the mirrored
    template is dense there"""
    fs, n, bw = 5e6, 2 ** 16, 40e3
    params = StftParams(n_fft=8192)
    edge = grid_for_sample_rate(fs)
    center = grid_for_sample_rate(fs, template='center')
    canvas = uniform_grid(edge.f_min_hz, fs, edge.n_sub, edge.m_sub)
    mids = edge.f_min_hz + edge.b_sub_hz * (np.arange(edge.n_sub) + 0.5)
    counts = {'edge': [], 'center': [], 'linear': []}
    for trial in range(20):
        f_c = rng.choice(mids) + rng.uniform(-15e3, 15e3)
        x = _band_noise(rng, n, fs, f_c, bw, 20.0) + \
            tt.complex_noise(n, rng)
        X = stft(tt.recording(x, fs), params)
        for name, grid in (('edge', edge), ('center', center),
                           ('linear', canvas)):
            counts[name].append(_footprint(warp_spectrogram(X, grid)))
    assert min(counts['linear']) > 0
    assert np.mean(counts['edge']) < np.mean(counts['linear'])
    assert np.mean(counts['center']) >= 1.5 * np.mean(counts['linear'])


def test_graymap_scaling():
    S = _linear(np.array([[0.0, 1.0], [1.0, 0.0]]), 2.0)
    np.testing.assert_array_equal(to_graymap(S), [[255, 0], [0, 255]])
    S = _linear(np.full((3, 4), 7.0), 4.0)
    img = to_graymap(S)
    assert img.shape == (4, 3)
    assert np.all(img == 128)


@tt.with_setup
def test_render_spectrogram(tmpdir):
    S = _linear(np.array([[0.0, 1.0], [1.0, 0.0]]), 2.0)
    fp = os.path.join(tmpdir, 'checker.pgm')
    render_spectrogram(S, fp)
    with open(fp, 'rb') as fin:
        raw = fin.read()
    assert raw.startswith(b'P5')
    assert raw == b'P5\n2 2\n255\n' + bytes([255, 0, 0, 255])

    S = _linear(np.zeros((10, 8)), 8.0)
    render_spectrogram(S, fp, boxes=[(0.0, 1.0, -4.0, 3.0)])
    with open(fp, 'rb') as fin:
        img = np.frombuffer(fin.read()[len(b'P5\n10 8\n255\n'):],
                            dtype=np.uint8).reshape(8, 10)
    assert img[0, 0] == 255 and img[-1, 0] == 255
    assert img[4, 4] == 128


@tt.with_setup
def test_spectrogram_dump_round_trip(tmpdir, rng):
    X = _linear(tt.complex_noise(6 * 16, rng).reshape(6, 16), 16.0)
    S = log_magnitude(X)
    prefix = os.path.join(tmpdir, 'dump')
    dump_spectrogram(S, prefix)
    back = load_spectrogram(prefix)
    np.testing.assert_array_equal(back.values, S.values.astype(np.float32))
    np.testing.assert_array_equal(back.freq_axis_hz, S.freq_axis_hz)
    assert back.kind is S.kind
    with open(prefix + '.f32', 'ab') as fout:
        fout.write(b'\x00')
    with pytest.raises(ValidationError):
        load_spectrogram(prefix)
