"""
Spectrogram front end: unitary DFT, the linear STFT, the periodic
log-spaced frequency grid and the warping of linear spectrograms onto it,
and grayscale image rendering.
"""
import logging
log = logging.getLogger('specsense.specfront')

from .stft import (
    StftParams, Spectrogram, SpectrogramKind, WINDOWS, unitary_dft, stft,
    log_magnitude)
StftParams, Spectrogram, SpectrogramKind, WINDOWS, unitary_dft, stft
log_magnitude

from .warp import (
    WarpGrid, TEMPLATES, log_template, build_warp_grid, uniform_grid,
    grid_for_sample_rate, warp_spectrogram, warp_to_hz, hz_to_warp)
WarpGrid, TEMPLATES, log_template, build_warp_grid, uniform_grid
grid_for_sample_rate, warp_spectrogram, warp_to_hz, hz_to_warp

from .render import (
    render_spectrogram, to_graymap, dump_spectrogram, load_spectrogram)
render_spectrogram, to_graymap, dump_spectrogram, load_spectrogram
