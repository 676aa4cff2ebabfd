"""
The coarse-to-fine detection chain, stage by stage:

    stft -> warp -> propose -> nms -> purify_batch -> refine -> denormalize

Each function takes a recording (or the previous stage's output) and a
PipelineConfig.  Backends may be given as loaded modules or by the short
names of `argparse_shared.KNOWN_BACKENDS`.
"""
import contextlib
import logging

from specsense import argparse_shared as at
from specsense.decode import denormalize
from specsense.exceptions import DegenerateSegment, SpecSenseException
from specsense.proposer import nms
from specsense.purifier import purify_batch
from specsense.specfront import stft, log_magnitude, warp_spectrogram

log = logging.getLogger('specsense.sensing')

DEFAULT_PROPOSER = 'energy'
DEFAULT_REFINER = 'envelope'


@contextlib.contextmanager
def stage(name, **extra):
    """Log entry into a pipeline stage and tag any failure with its name"""
    log.debug("entering stage", extra=dict(stage=name, **extra))
    try:
        yield
    except SpecSenseException as err:
        log.error("stage failed", extra=dict(
            stage=name, err_kls=type(err).__name__, err=str(err)))
        err.stage = name
        raise


def _backend(backend_type, backend, default):
    return at.load_backend(backend_type, backend or default)


def spectrogram(r, cfg, warped=True):
    """
    Returns (Spectrogram, WarpGrid or None).  The linear representation
    keeps the STFT's own frequency axis and has no grid.
    """
    X = stft(r, cfg.stft)
    if not warped:
        return log_magnitude(X, cfg.stft.eps), None
    grid = cfg.warp.grid_for(r.sample_rate_hz)
    S = warp_spectrogram(X, grid, cfg.stft.eps, cfg.warp.interpolation)
    return S, grid


def propose(r, cfg, proposer=None):
    """Proposals of the warped spectrogram of `r` after NMS"""
    proposer = _backend('proposer', proposer, DEFAULT_PROPOSER)
    with stage('spectrogram'):
        S, grid = spectrogram(r, cfg, warped=True)
    with stage('propose'):
        raw = proposer.propose(S, grid, cfg.proposer)
    with stage('nms'):
        kept = nms(raw, cfg.proposer.nms_iou, grid)
    log.info("proposed", extra=dict(n_raw=len(raw), n_kept=len(kept)))
    return kept


def purify(r, proposals, cfg):
    """Purified segments, in proposal order.  Proposals that cannot be
    purified are dropped with a warning"""
    segments = purify_batch(r, proposals, cfg.purifier, raise_on_error=False)
    kept = [s for s in segments if s is not None]
    if len(kept) < len(segments):
        log.warning("dropped proposals during purification", extra=dict(
            n_dropped=len(segments) - len(kept)))
    return kept


def refine(segments, cfg, refiner=None):
    """Detections in absolute coordinates, one per refinable segment"""
    refiner = _backend('refiner', refiner, DEFAULT_REFINER)
    rv = []
    for seg in segments:
        try:
            refined = refiner.refine(seg, cfg.decode)
        except DegenerateSegment as err:
            log.warning("skipped degenerate segment", extra=dict(
                n_start=seg.n_start, err=str(err)))
            continue
        rv.append(denormalize(refined, seg))
    return rv


def detect(r, cfg, proposer=None, refiner=None, proposals=None):
    """
    Run the whole chain on one recording.
    Returns (proposals, detections).

    `proposals` - when given, the proposer is bypassed and these are
        purified as they are
    """
    if proposals is None:
        proposals = propose(r, cfg, proposer)
    else:
        proposals = list(proposals)
    with stage('purify', n_proposals=len(proposals)):
        segments = purify(r, proposals, cfg)
    with stage('refine', n_segments=len(segments)):
        detections = refine(segments, cfg, refiner)
    log.info("detected", extra=dict(
        n_proposals=len(proposals), n_detections=len(detections)))
    return proposals, detections
