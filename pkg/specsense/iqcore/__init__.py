"""
Core domain types and file formats shared by every other sub-package:
complex baseband recordings, ground-truth emitter records and detections.
"""
import logging
log = logging.getLogger('specsense.iqcore')

from .types import (
    ModulationClass, IqRecording, EmitterTruth, Detection, as_box)
ModulationClass, IqRecording, EmitterTruth, Detection, as_box

from .iq_io import write_iq, read_iq, sidecar_path
write_iq, read_iq, sidecar_path

from .annotations import (
    read_annotations, write_annotations, truth_from_document,
    truth_to_document, emitters_from_document)
read_annotations, write_annotations, truth_from_document, truth_to_document
emitters_from_document
