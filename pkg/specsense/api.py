from specsense.initializer import initialize as _initialize
from specsense import configuration as _configuration
from specsense import proposer as _proposer
from specsense import decode as _decode
from specsense import argparse_shared as _at

from specsense.iqcore import (
    IqRecording, EmitterTruth, Detection, ModulationClass,
    read_iq, write_iq, read_annotations, write_annotations)
# linting
IqRecording, EmitterTruth, Detection, ModulationClass
read_iq, write_iq, read_annotations, write_annotations

from specsense.scenesim import (
    SceneSpec, synth_scene, triplet_scene, load_scene)
SceneSpec, synth_scene, triplet_scene, load_scene

from specsense.specfront import (
    stft, log_magnitude, warp_spectrogram, grid_for_sample_rate,
    render_spectrogram)
stft, log_magnitude, warp_spectrogram, grid_for_sample_rate
render_spectrogram

from specsense.proposer import nms, tf_iou, read_proposals, write_proposals
nms, tf_iou, read_proposals, write_proposals

from specsense.purifier import purify, purify_batch
purify, purify_batch

from specsense.decode import refine_stub, denormalize
refine_stub, denormalize

from specsense.evalkit import (
    evaluate, map_50_95, read_detections, write_detections)
evaluate, map_50_95, read_detections, write_detections

from specsense.configuration.pipeline import (
    PipelineConfig, load_pipeline_config)
PipelineConfig, load_pipeline_config

from specsense.sensing import spectrogram, propose, detect
spectrogram, propose, detect

from specsense.util import configure_logging
configure_logging  # can be used to modify how specsense logs things.


def initialize(args=None):
    """
    Initialize specsense's command-line options (--config, --seed and the
    --proposer / --refiner backends).  The library functions above take
    explicit parameters and work without it; backends that read their own
    options (ie the "file" proposer) need it.

    `args` - (optional).  Define command-line arguments to use.
        Default to sys.argv (which is what argparse does).
        Explicitly pass args=[] to not read command-line arguments, and instead
        expect that all arguments are passed in as environment variables.
        Example:  args=['--seed', '3', ...]
    """
    _initialize(
        [_configuration, _proposer, _decode, _injection_parser()], args=args,
        backends=('proposer', 'refiner'))


_injection_parser = _at.build_arg_parser([_at.group(
    "Injected proposals",
    _at.proposals,
)])


def get_backends():
    """Returns the (proposer, refiner) backends chosen at initialization"""
    from specsense import get_NS
    ns = get_NS()
    return ns.proposer, ns.refiner
