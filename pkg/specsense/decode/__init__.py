"""
Refinement of purified segments: expectation decoding heads, the mapping
between segment-normalized and absolute coordinates, and pluggable refiner
backends (--refiner).
"""
import logging
log = logging.getLogger('specsense.decode')

from specsense import argparse_shared as at

from .heads import (
    GridDistribution, RefinedDetection, CLASS_ORDER, normalized_grid,
    two_point_distribution, decode_time, decode_bandwidth, denormalize,
    normalize)
GridDistribution, RefinedDetection, CLASS_ORDER, normalized_grid
two_point_distribution, decode_time, decode_bandwidth, denormalize, normalize

from .refine import (
    DecodeParams, refine_stub, active_span, occupied_band, energy_envelope)
DecodeParams, refine_stub, active_span, occupied_band, energy_envelope


build_arg_parser = at.build_arg_parser([at.group(
    "Refiner",
    at.backend(
        backend_type='refiner',
        default='envelope',
        help=(
            'Select how purified segments are refined into detections.'
            ' You can supply your own refiner as a python import path or'
            ' choose from the following supported options:'
            ' {known_backends}')),
)])
