"""
Purification of proposals: heterodyne to DC, bandwidth-matched FIR
low-pass and Nyquist-safe decimation, one proposal at a time or as a
thread-pooled batch.
"""
import logging
log = logging.getLogger('specsense.purifier')

from .types import PurifierParams, PurifiedSegment
PurifierParams, PurifiedSegment

from .operator import (
    segment_indices, heterodyne, cutoff_frequency, design_lowpass,
    lowpass_filter, safe_decim_factor, decimate, guarded_cutoff, purify,
    MIN_SEGMENT_SAMPLES)
segment_indices, heterodyne, cutoff_frequency, design_lowpass
lowpass_filter, safe_decim_factor, decimate, guarded_cutoff, purify
MIN_SEGMENT_SAMPLES

from .batch import purify_batch
purify_batch

from .export import segment_to_recording, write_segment, read_segment
segment_to_recording, write_segment, read_segment
