"""
Annotation documents: `<name>.ann.json` = {"emitters": [...]}
"""
from . import log
from .types import EmitterTruth, ModulationClass
from specsense import util
from specsense.configuration import JSONMapping, load_document
from specsense.exceptions import _log_raise, ValidationError

EMITTER_FIELDS = (
    'class', 'f_c_hz', 'bandwidth_hz', 't_start_s', 't_end_s', 'snr_db',
    'cfo_hz', 'phase_noise_var', 'taps', 'phase0_rad')


def _taps_from_document(doc):
    seq = doc.get_sequence('taps', default=())
    taps = []
    for i, tap in enumerate(seq):
        if not hasattr(tap, 'to_list') or len(tap) != 3:
            seq.schema_error(i, "a tap is written as [delay, re, im]")
        delay, re, im = tap.to_list()
        if isinstance(delay, bool) or not isinstance(delay, (int, float)) \
                or int(delay) != delay or delay < 0:
            seq.schema_error(i, "tap delay must be a non-negative integer")
        for part in (re, im):
            if isinstance(part, bool) or not isinstance(part, (int, float)):
                seq.schema_error(i, "tap gain parts must be numbers")
        taps.append((int(delay), complex(re, im)))
    return tuple(taps)


def truth_from_document(doc, allowed=EMITTER_FIELDS):
    """Build an EmitterTruth from a json object view.  Errors name the
    field path of the offending value"""
    if not isinstance(doc, JSONMapping):
        doc = JSONMapping(doc)
    doc.check_keys(allowed)
    label = doc.get_str('class')
    try:
        class_label = ModulationClass.parse(label)
    except ValidationError as err:
        doc.schema_error('class', str(err))
    kwargs = dict(
        class_label=class_label,
        f_c_hz=doc.get_number('f_c_hz'),
        bandwidth_hz=doc.get_number('bandwidth_hz'),
        t_start_s=doc.get_number('t_start_s'),
        t_end_s=doc.get_number('t_end_s'),
        snr_db=doc.get_number('snr_db', 0.0),
        cfo_hz=doc.get_number('cfo_hz', 0.0),
        phase_noise_var=doc.get_number('phase_noise_var', 0.0),
        taps=_taps_from_document(doc),
        phase0_rad=doc.get_number('phase0_rad', None),
    )
    try:
        return EmitterTruth(**kwargs)
    except ValidationError as err:
        _log_raise(
            "%s: %s" % (doc.path or '<root>', err),
            extra=dict(field=doc.path), exception_kls=ValidationError)


def truth_to_document(truth):
    doc = dict(
        f_c_hz=truth.f_c_hz,
        bandwidth_hz=truth.bandwidth_hz,
        t_start_s=truth.t_start_s,
        t_end_s=truth.t_end_s,
        snr_db=truth.snr_db,
        cfo_hz=truth.cfo_hz,
        phase_noise_var=truth.phase_noise_var,
        taps=[[d, g.real, g.imag] for d, g in truth.taps],
    )
    doc['class'] = truth.class_label.value
    if truth.phase0_rad is not None:
        doc['phase0_rad'] = truth.phase0_rad
    return doc


def emitters_from_document(doc, key='emitters', allowed=EMITTER_FIELDS):
    seq = doc.get_sequence(key)
    rv = []
    for i in range(len(seq)):
        item = seq[i]
        if not isinstance(item, JSONMapping):
            seq.schema_error(i, "expected an object")
        rv.append(truth_from_document(item, allowed=allowed))
    return rv


def read_annotations(path):
    """Returns the list of EmitterTruth stored in an annotation document"""
    doc = load_document(path)
    doc.check_keys(('emitters', ))
    truths = emitters_from_document(doc)
    log.debug("read annotations", extra=dict(path=path, n=len(truths)))
    return truths


def write_annotations(truths, path):
    util.ensure_parent_dir(path)
    util.write_json(
        path, dict(emitters=[truth_to_document(t) for t in truths]))
    log.info("wrote annotations", extra=dict(path=path, n=len(truths)))
