"""
Purified segments as ordinary recordings.  The sidecar gains the keys
decim_factor, f_c_hz, f_lp_hz, n_start and source_conf (plus n_samples,
clipped and source_rate_hz) so a segment can be re-anchored in the
original recording after it was written out.
"""
from . import log
from .types import PurifiedSegment
from specsense.exceptions import _log_raise, ValidationError
from specsense.iqcore import IqRecording, read_iq, write_iq

SEGMENT_KEYS = (
    'decim_factor', 'f_c_hz', 'f_lp_hz', 'n_start', 'source_conf',
    'n_samples', 'clipped', 'source_rate_hz', 'source_start_time_s')


def segment_to_recording(seg, label=''):
    meta = dict(
        decim_factor=seg.decim_factor, f_c_hz=seg.f_c_hz,
        f_lp_hz=seg.f_lp_hz, n_start=seg.n_start,
        source_conf=seg.source_conf, n_samples=seg.n_samples,
        clipped=seg.clipped, source_rate_hz=seg.sample_rate_hz,
        source_start_time_s=seg.start_time_s)
    return IqRecording(
        samples=seg.samples, sample_rate_hz=seg.out_rate_hz,
        start_time_s=seg.t_start_s, label=label, metadata=meta)


def write_segment(seg, path, label=''):
    write_iq(segment_to_recording(seg, label), path)


def read_segment(path):
    """Inverse of write_segment.  Samples come back at float32 precision"""
    r = read_iq(path)
    meta = r.metadata
    missing = [k for k in SEGMENT_KEYS if k not in meta]
    if missing:
        _log_raise(
            "%s is not a purified segment; sidecar lacks %s" % (
                path, missing),
            extra=dict(path=path), exception_kls=ValidationError)
    seg = PurifiedSegment(
        samples=r.samples, decim_factor=meta['decim_factor'],
        out_rate_hz=r.sample_rate_hz, f_c_hz=meta['f_c_hz'],
        f_lp_hz=meta['f_lp_hz'], n_start=meta['n_start'],
        source_conf=meta['source_conf'], n_samples=meta['n_samples'],
        sample_rate_hz=meta['source_rate_hz'],
        start_time_s=meta['source_start_time_s'], clipped=meta['clipped'])
    log.debug("read purified segment", extra=dict(path=path))
    return seg
