"""
Spectrogram images (binary PGM, "P5") and raw float32 dumps
"""
import numpy as np

from . import log
from .stft import Spectrogram, SpectrogramKind
from specsense import util
from specsense.configuration import load_document
from specsense.exceptions import (
    _log_raise, _log_raise_if, FileAccessError, StructuralError)
from specsense.iqcore import as_box


def to_graymap(S):
    """8-bit image with rows = frequency bins (highest first) and columns =
    frames.  Values are min-max scaled; a constant matrix maps to mid gray."""
    values = S.values
    if np.iscomplexobj(values):
        values = np.log(np.abs(values) + 1e-10)
    img = np.asarray(values, dtype=float).T[::-1]
    lo, hi = np.min(img), np.max(img)
    if hi == lo:
        return np.full(img.shape, 128, dtype=np.uint8)
    return np.round((img - lo) / (hi - lo) * 255).astype(np.uint8)


def _bin_span(axis, f0, f1):
    lo = int(np.clip(np.searchsorted(axis, f0, side='left'), 0, len(axis) - 1))
    hi = int(np.clip(
        np.searchsorted(axis, f1, side='right') - 1, 0, len(axis) - 1))
    return lo, max(lo, hi)


def _burn_box(img, S, box):
    t0, t1, f0, f1 = as_box(box)
    c0, c1 = _bin_span(S.frame_centers_s, t0, t1)
    b0, b1 = _bin_span(S.freq_axis_hz, f0, f1)
    n_bins = img.shape[0]
    r0, r1 = n_bins - 1 - b1, n_bins - 1 - b0
    img[r0, c0:c1 + 1] = 255
    img[r1, c0:c1 + 1] = 255
    img[r0:r1 + 1, c0] = 255
    img[r0:r1 + 1, c1] = 255


def render_spectrogram(S, path, boxes=None):
    """Write `S` as a binary PGM with optional box outlines burned in at
    maximum intensity"""
    img = to_graymap(S)
    for box in boxes or ():
        _burn_box(img, S, box)
    height, width = img.shape
    util.ensure_parent_dir(path)
    try:
        with open(path, 'wb') as fout:
            fout.write(b'P5\n%d %d\n255\n' % (width, height))
            fout.write(np.ascontiguousarray(img).tobytes())
    except (IOError, OSError) as err:
        _log_raise(
            "Could not write image: %s" % err, extra=dict(path=path),
            exception_kls=FileAccessError)
    log.info("wrote spectrogram image", extra=dict(
        path=path, width=width, height=height, kind=S.kind.value,
        n_boxes=len(boxes or ())))


def dump_spectrogram(S, prefix):
    """Write `<prefix>.f32` (row-major float32 LE; complex values as I/Q
    pairs) and a `<prefix>.json` header describing it"""
    values = np.ascontiguousarray(S.values)
    is_complex = np.iscomplexobj(values)
    payload = values.astype('<c8' if is_complex else '<f4')
    header = dict(
        n_frames=S.n_frames, n_bins=S.n_bins, kind=S.kind.value,
        complex=bool(is_complex), dtype='float32le',
        frame_times_s=[float(t) for t in S.frame_times_s],
        freq_axis_hz=[float(f) for f in S.freq_axis_hz],
        sample_rate_hz=S.sample_rate_hz, hop_s=S.hop_s, window_s=S.window_s,
        time_extent_s=list(S.time_extent_s) if S.time_extent_s else None)
    util.ensure_parent_dir(prefix)
    try:
        with open('%s.f32' % prefix, 'wb') as fout:
            fout.write(payload.tobytes())
    except (IOError, OSError) as err:
        _log_raise(
            "Could not write spectrogram dump: %s" % err,
            extra=dict(prefix=prefix), exception_kls=FileAccessError)
    util.write_json('%s.json' % prefix, header)


def load_spectrogram(prefix):
    doc = load_document('%s.json' % prefix)
    n_frames, n_bins = doc.get_int('n_frames'), doc.get_int('n_bins')
    is_complex = doc.get_field('complex', bool, False)
    dtype = np.dtype('<c8' if is_complex else '<f4')
    try:
        with open('%s.f32' % prefix, 'rb') as fin:
            raw = fin.read()
    except (IOError, OSError) as err:
        _log_raise(
            "Could not read spectrogram dump: %s" % err,
            extra=dict(prefix=prefix), exception_kls=FileAccessError)
    _log_raise_if(
        len(raw) != n_frames * n_bins * dtype.itemsize,
        "spectrogram dump size does not match its header",
        extra=dict(prefix=prefix, n_bytes=len(raw)),
        exception_kls=StructuralError)
    values = np.frombuffer(raw, dtype=dtype).reshape(n_frames, n_bins)
    extent = doc.get_sequence('time_extent_s', None)
    return Spectrogram(
        values=values.astype(np.complex128 if is_complex else float),
        frame_times_s=np.array(doc.get_sequence('frame_times_s').to_list()),
        freq_axis_hz=np.array(doc.get_sequence('freq_axis_hz').to_list()),
        kind=SpectrogramKind(doc.get_str('kind')),
        sample_rate_hz=doc.get_number('sample_rate_hz', None),
        hop_s=doc.get_number('hop_s', None),
        window_s=doc.get_number('window_s', None),
        time_extent_s=tuple(extent.to_list()) if extent else None)
