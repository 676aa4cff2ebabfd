"""
Synthetic wideband scenes: protocol-shaped waveforms, channel impairments
(carrier offset, Wiener phase noise, sparse multipath) and the superposition
of several emitters in complex Gaussian noise, with ground truth.
"""
import logging
log = logging.getLogger('specsense.scenesim')

from .waveforms import (
    Tone, Nbfm, Chirp, BurstOqpsk, SrrcPskQam, Am, WAVEFORM_KINDS,
    srrc_taps, synth_emitter, default_waveform, waveform_from_document)
Tone, Nbfm, Chirp, BurstOqpsk, SrrcPskQam, Am, WAVEFORM_KINDS
srrc_taps, synth_emitter, default_waveform, waveform_from_document

from .impairments import apply_impairments, wiener_phase
apply_impairments, wiener_phase

from .scene import (
    SceneSpec, synth_scene, triplet_spec, triplet_scene, scene_from_document,
    load_scene)
SceneSpec, synth_scene, triplet_spec, triplet_scene, scene_from_document
load_scene
