"""
Proposal documents: `<name>.prop.json` = {"proposals": [{"t_start_s",
"t_end_s", "f_start_hz", "f_end_hz", "tier", "conf"}, ...]}.

This module is also a proposer backend: it ignores the spectrogram and
returns the proposals stored in the file named by --proposals, which is how
an external detector plugs into the pipeline.
"""
from . import log
from .types import BwTier, Proposal
from specsense import util
from specsense.configuration import JSONMapping, load_document
from specsense.exceptions import _log_raise, _log_raise_if, ValidationError

PROPOSAL_FIELDS = (
    't_start_s', 't_end_s', 'f_start_hz', 'f_end_hz', 'tier', 'conf')


def proposal_to_document(p):
    return dict(
        t_start_s=p.t_start_s, t_end_s=p.t_end_s,
        f_start_hz=p.f_start_hz, f_end_hz=p.f_end_hz,
        tier=p.bw_tier.value, conf=p.confidence)


def proposal_from_document(doc, tier_edges_hz=(1e6, 10e6)):
    doc.check_keys(PROPOSAL_FIELDS)
    f0, f1 = doc.get_number('f_start_hz'), doc.get_number('f_end_hz')
    tier = doc.get_str('tier', None)
    if tier is None:
        tier = BwTier.for_bandwidth(f1 - f0, tier_edges_hz)
    elif tier not in [t.value for t in BwTier]:
        doc.schema_error('tier', "expected one of %s" % (
            [t.value for t in BwTier]))
    try:
        return Proposal(
            t_start_s=doc.get_number('t_start_s'),
            t_end_s=doc.get_number('t_end_s'),
            f_start_hz=f0, f_end_hz=f1, bw_tier=tier,
            confidence=doc.get_number('conf'))
    except ValidationError as err:
        _log_raise(
            "%s: %s" % (doc.path, err), extra=dict(field=doc.path),
            exception_kls=ValidationError)


def read_proposals(path, tier_edges_hz=(1e6, 10e6)):
    """Proposals stored in `path`, in file order.  A missing "tier" is
    derived from the bandwidth"""
    doc = load_document(path)
    doc.check_keys(('proposals', ))
    seq = doc.get_sequence('proposals')
    rv = []
    for i in range(len(seq)):
        item = seq[i]
        if not isinstance(item, JSONMapping):
            seq.schema_error(i, "expected an object")
        rv.append(proposal_from_document(item, tier_edges_hz))
    log.debug("read proposals", extra=dict(path=path, n=len(rv)))
    return rv


def write_proposals(proposals, path):
    util.ensure_parent_dir(path)
    util.write_json(
        path, dict(proposals=[proposal_to_document(p) for p in proposals]))
    log.info("wrote proposals", extra=dict(path=path, n=len(proposals)))


def propose(S, grid, params):
    import specsense
    path = getattr(specsense.get_NS(), 'proposals', None)
    _log_raise_if(
        not path, "the file proposer needs --proposals", extra=dict(),
        exception_kls=ValidationError)
    rv = read_proposals(path, params.tier_edges_hz)
    return sorted(rv, key=lambda p: (-p.confidence, p.t_start_s,
                                     p.f_start_hz))
