"""
Binary I/Q recordings: `<name>.iq` holds interleaved little-endian float32
pairs (I then Q) and nothing else.  `<name>.meta.json` holds the sample rate,
start time, label and any extra provenance keys.
"""
import os

import numpy as np

from . import log
from .types import IqRecording
from specsense import util
from specsense.exceptions import (
    _log_raise, _log_raise_if, FileAccessError, StructuralError,
    ValidationError)

SAMPLE_DTYPE = np.dtype('<c8')
_META_KEYS = ('sample_rate_hz', 'start_time_s', 'label')


def sidecar_path(path):
    root, ext = os.path.splitext(path)
    if ext != '.iq':
        root = path
    return '%s.meta.json' % root


def write_iq(recording, path):
    """Write `recording` to `path` and its metadata to the sidecar"""
    ld = dict(path=path, n_samples=recording.n_samples)
    recording.ensure_nonempty()
    payload = recording.samples.astype(SAMPLE_DTYPE)
    # values beyond float32 range overflow to inf during the cast
    _log_raise_if(
        not np.all(np.isfinite(payload)),
        "recording has samples that are not finite as float32", extra=ld,
        exception_kls=ValidationError)
    util.ensure_parent_dir(path)
    try:
        with open(path, 'wb') as fout:
            fout.write(payload.tobytes())
    except (IOError, OSError) as err:
        _log_raise(
            "Could not write iq file: %s" % err, extra=ld,
            exception_kls=FileAccessError)
    meta = dict(recording.metadata)
    meta.update(
        sample_rate_hz=recording.sample_rate_hz,
        start_time_s=recording.start_time_s,
        label=recording.label)
    util.write_json(sidecar_path(path), meta)
    log.info("wrote iq recording", extra=ld)


def _read_sidecar(path):
    meta_fp = sidecar_path(path)
    if not os.path.exists(meta_fp):
        return None
    meta = util.read_json(meta_fp)
    _log_raise_if(
        not isinstance(meta, dict), "sidecar must hold a json object",
        extra=dict(path=meta_fp), exception_kls=StructuralError)
    return meta


def read_iq(path, sample_rate_hz=None):
    """Read a recording.  `sample_rate_hz` takes precedence over the rate
    stored in the sidecar; one of the two must be available."""
    ld = dict(path=path)
    try:
        with open(path, 'rb') as fin:
            raw = fin.read()
    except (IOError, OSError) as err:
        _log_raise(
            "Could not read iq file: %s" % err, extra=ld,
            exception_kls=FileAccessError)
    _log_raise_if(
        len(raw) % SAMPLE_DTYPE.itemsize != 0,
        "truncated iq file: %s bytes is not a multiple of %s" % (
            len(raw), SAMPLE_DTYPE.itemsize),
        extra=dict(n_bytes=len(raw), **ld), exception_kls=StructuralError)
    samples = np.frombuffer(raw, dtype=SAMPLE_DTYPE)
    _log_raise_if(
        not np.all(np.isfinite(samples)), "iq file contains NaN or Inf",
        extra=ld, exception_kls=StructuralError)

    meta = _read_sidecar(path) or {}
    if sample_rate_hz is None:
        sample_rate_hz = meta.get('sample_rate_hz')
        _log_raise_if(
            sample_rate_hz is None,
            "no sample rate given and no sidecar metadata found",
            extra=ld, exception_kls=ValidationError)
    elif 'sample_rate_hz' in meta and \
            float(meta['sample_rate_hz']) != float(sample_rate_hz):
        log.warning(
            "sample rate overrides the sidecar value", extra=dict(
                sidecar_rate_hz=meta['sample_rate_hz'],
                sample_rate_hz=sample_rate_hz, **ld))
    extras = {k: v for k, v in meta.items() if k not in _META_KEYS}
    rec = IqRecording(
        samples=samples,
        sample_rate_hz=sample_rate_hz,
        start_time_s=meta.get('start_time_s', 0.0),
        label=meta.get('label', ''),
        metadata=extras)
    log.debug("read iq recording", extra=dict(n_samples=rec.n_samples, **ld))
    return rec
