"""
The configuration package reads json documents (pipeline configs, scene
documents, annotations, proposals and detections) through read-only mapping
and sequence views that remember where in the document they came from, so
every validation error can name the offending field path.

This code doesn't know what is stored in a document; the pipeline config
lives in `specsense.configuration.pipeline`.
"""
import logging
log = logging.getLogger('specsense.configuration')

import specsense
from specsense import argparse_shared as at

from .document_base import (
    DocumentBaseMapping, DocumentBaseSequence, REQUIRED)
DocumentBaseMapping, DocumentBaseSequence, REQUIRED

from .json_document import JSONMapping, JSONSequence, load_document
JSONMapping, JSONSequence, load_document


def get_pipeline_config():
    """
    Returns the PipelineConfig selected by the --config and --seed options
    """
    from .pipeline import load_pipeline_config
    ns = specsense.get_NS()
    return load_pipeline_config(ns.config, seed=ns.seed)


build_arg_parser = at.build_arg_parser([at.group(
    "Pipeline Configuration",
    at.config,
    at.seed,
)])
