"""
Purify proposals into narrowband segments, one `<out>.seg<i>.iq` (with its
sidecar) per proposal.  Without --proposals the recording is proposed first.
"""
from specsense.commands import at, api, log, load_config, stage
from specsense import proposer
from specsense.purifier import write_segment


def main(ns):
    cfg = load_config(ns)
    recording = api.read_iq(ns.iq)
    if ns.proposals:
        proposals = api.read_proposals(
            ns.proposals, cfg.proposer.tier_edges_hz)
    else:
        proposals = api.propose(recording, cfg, ns.proposer)
    with stage('purify', n_proposals=len(proposals)):
        segments = api.purify_batch(
            recording, proposals, cfg.purifier, raise_on_error=False)
    n_written = 0
    for i, seg in enumerate(segments):
        if seg is None:
            continue
        write_segment(seg, '%s.seg%03d.iq' % (ns.out, i), label='seg%03d' % i)
        n_written += 1
    log.info("wrote purified segments", extra=dict(
        out=ns.out, n_proposals=len(proposals), n_segments=n_written))


build_arg_parser = at.build_arg_parser([at.group(
    "Purify options",
    at.iq,
    at.out,
    at.proposals,
)], parents=[proposer.build_arg_parser()])
