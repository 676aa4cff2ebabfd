"""
Coarse time-frequency proposals.  A proposer backend (--proposer) turns a
warped spectrogram into candidate boxes; nms() removes redundant ones using
IoU measured in warped-grid units.
"""
import logging
log = logging.getLogger('specsense.proposer')

from specsense import argparse_shared as at

from .types import BwTier, Proposal, ProposerParams
BwTier, Proposal, ProposerParams

from .overlap import tf_iou, tf_iou_weighted, warped_box, nms
tf_iou, tf_iou_weighted, warped_box, nms

from .energy import estimate_noise_floor, propose, excess_db, DB_PER_NEPER
estimate_noise_floor, propose, excess_db, DB_PER_NEPER

from .proposals_file import read_proposals, write_proposals
read_proposals, write_proposals


build_arg_parser = at.build_arg_parser([at.group(
    "Proposer",
    at.backend(
        backend_type='proposer',
        default='energy',
        help=(
            'Select the detector that produces coarse proposals.'
            ' You can supply your own proposer as a python import path or'
            ' choose from the following supported options:'
            ' {known_backends}')),
)])
