"""
Detection documents: `<name>.det.json` = {"detections": [{"t_start_s",
"t_end_s", "f_c_hz", "bandwidth_hz", "class", "conf"}, ...]}.  Refined
detections also carry "refined": true and may carry "class_probs".
"""
from . import log
from specsense import util
from specsense.configuration import JSONMapping, load_document
from specsense.exceptions import _log_raise, ValidationError
from specsense.iqcore import Detection, ModulationClass

DETECTION_FIELDS = (
    't_start_s', 't_end_s', 'f_c_hz', 'bandwidth_hz', 'class', 'conf',
    'refined', 'class_probs')


def detection_to_document(d):
    doc = dict(
        t_start_s=d.t_start_s, t_end_s=d.t_end_s, f_c_hz=d.f_c_hz,
        bandwidth_hz=d.bandwidth_hz, conf=d.confidence)
    doc['class'] = d.class_label.value
    if d.refined:
        doc['refined'] = True
    if d.class_probs is not None:
        doc['class_probs'] = list(d.class_probs)
    return doc


def detection_from_document(doc):
    doc.check_keys(DETECTION_FIELDS)
    label = doc.get_str('class', ModulationClass.UNKNOWN.value)
    try:
        class_label = ModulationClass.parse(label)
    except ValidationError as err:
        doc.schema_error('class', str(err))
    probs = doc.get_sequence('class_probs', None)
    try:
        return Detection(
            t_start_s=doc.get_number('t_start_s'),
            t_end_s=doc.get_number('t_end_s'),
            f_c_hz=doc.get_number('f_c_hz'),
            bandwidth_hz=doc.get_number('bandwidth_hz'),
            class_label=class_label,
            confidence=doc.get_number('conf'),
            refined=doc.get_field('refined', bool, False),
            class_probs=probs.to_list() if probs is not None else None)
    except (ValidationError, TypeError) as err:
        _log_raise(
            "%s: %s" % (doc.path, err), extra=dict(field=doc.path),
            exception_kls=ValidationError)


def read_detections(path):
    doc = load_document(path)
    doc.check_keys(('detections', ))
    seq = doc.get_sequence('detections')
    rv = []
    for i in range(len(seq)):
        item = seq[i]
        if not isinstance(item, JSONMapping):
            seq.schema_error(i, "expected an object")
        rv.append(detection_from_document(item))
    log.debug("read detections", extra=dict(path=path, n=len(rv)))
    return rv


def write_detections(dets, path):
    util.ensure_parent_dir(path)
    util.write_json(
        path, dict(detections=[detection_to_document(d) for d in dets]))
    log.info("wrote detections", extra=dict(path=path, n=len(dets)))
